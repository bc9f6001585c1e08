#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "paucity/intpoly.hpp"

namespace paucity {

// Outcome of one symbolic identity check. `holds` is true exactly when the
// fully expanded difference of the two sides is the zero polynomial.
struct IdentityReport {
    std::string name;
    bool holds;
    MultiPoly residual;
};

enum class NamedIdentity {
    CubicUnivariate,        // s1^4 + 3 s2^2 - 4 s1 s3 == 0
    CubicMultiplicative,    // sigma analogue factoring through 12 prod (x_i - y_j)
    QuarticUnivariate,      // s2^3 + s1^4 s2 - 2 s1^2 s4 == 0
    QuarticMultiplicative,  // sigma analogue factoring through 8 prod (x_i - y_j) tau
};

// s_j(x, y) = x^j - y^j, in variables (x, y).
MultiPoly sj_poly(unsigned j);

// sigma_j = x1^j + x2^j - y1^j - y2^j, in variables (x1, x2, y1, y2).
MultiPoly sigma_poly(unsigned j);

// tau = (x1^2 + x1 x2 + x2^2) - (y1^2 + y1 y2 + y2^2), same context.
MultiPoly tau_poly();

IdentityReport verify_identity(NamedIdentity which);
std::vector<IdentityReport> verify_all_identities();

// Discriminants separating structured from generic coefficient tuples.
Int psi(const Int& h1, const Int& h2, const Int& h3);   // h1^4 + 3 h2^2 - 4 h1 h3
Int phi(const Int& h1, const Int& h2, const Int& h4);   // h2^3 + h1^4 h2 - 2 h1^2 h4

// Relation polynomial for odd power sums: Upsilon_kappa in z_1..z_kappa
// vanishes identically when z_j is replaced by the (2j-1)-th power sum of
// kappa-1 variables, and on kappa+1 variables the same substitution
// factors as c_constant * prod_{i<j} (x_i + x_j).
struct UpsilonData {
    unsigned kappa = 0;
    MultiPoly upsilon{0};  // primitive, positive coefficient on z1^{kappa(kappa+1)/2}
    Int c_constant;
    int kernel_dim = 0;
};

// Weights (1, 3, ..., 2*kappa-1) grading the relation polynomial.
WeightVector odd_weights(unsigned kappa);

// Sum of the (2j-1)-th powers of nvars variables.
MultiPoly odd_power_sum(std::size_t nvars, unsigned j);

// Builds Upsilon_kappa by exact integer linear algebra over the full
// symbolic expansion, certifies it, and caches the result per kappa.
// Throws KernelDimensionError if the relation is not unique up to scale.
const UpsilonData& construct_upsilon(unsigned kappa);

Int upsilon_value(unsigned kappa, std::span<const Int> h);

std::string upsilon_text(const UpsilonData& u);
nlohmann::ordered_json upsilon_json(const UpsilonData& u);

}  // namespace paucity
