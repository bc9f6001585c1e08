#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "paucity/bigint.hpp"

namespace paucity {

// Exponent vector of a power product; one slot per variable.
class Monomial {
public:
    explicit Monomial(std::vector<uint32_t> exps) : exps_(std::move(exps)) {}

    static Monomial unit(std::size_t nvars) {
        return Monomial(std::vector<uint32_t>(nvars, 0));
    }
    static Monomial var(std::size_t nvars, std::size_t index, uint32_t e = 1);

    std::size_t nvars() const { return exps_.size(); }
    uint32_t exponent(std::size_t i) const { return exps_[i]; }
    const std::vector<uint32_t>& exponents() const { return exps_; }
    uint64_t total_degree() const;

    Monomial operator*(const Monomial& o) const;
    bool divides(const Monomial& o) const;   // componentwise <=
    Monomial quotient(const Monomial& o) const;  // this / o

    bool operator==(const Monomial& o) const { return exps_ == o.exps_; }
    // Graded lexicographic: total degree first, then lex on exponents.
    std::strong_ordering operator<=>(const Monomial& o) const;

private:
    std::vector<uint32_t> exps_;
};

// Weights for a weighted-degree grading, one positive weight per variable.
struct WeightVector {
    std::vector<uint32_t> weights;
};

struct WeightedDegree {
    // Empty for the zero polynomial (degree "-inf").
    std::optional<long long> degree;
    bool homogeneous = true;  // all terms share the degree; vacuously true for 0
};

// Sparse multivariate polynomial with exact integer coefficients.
// Canonical form: the term map never stores a zero coefficient, so two
// polynomials are equal iff their term maps are equal; identity checks
// reduce to "term map empty".
class MultiPoly {
public:
    using TermMap = std::map<Monomial, Int>;

    explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

    static MultiPoly zero(std::size_t nvars) { return MultiPoly(nvars); }
    static MultiPoly constant(std::size_t nvars, Int c);
    static MultiPoly variable(std::size_t nvars, std::size_t index);
    static MultiPoly from_terms(std::size_t nvars,
                                std::vector<std::pair<Monomial, Int>> terms);

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }
    Int coeff(const Monomial& m) const;
    bool is_constant() const;
    Int constant_value() const;  // 0 for the zero polynomial

    void add_term(const Monomial& m, const Int& c);  // accumulate, canonicalize

    MultiPoly operator-() const;
    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly operator*(const Int& c) const;
    MultiPoly pow(unsigned e) const;

    Int eval(std::span<const Int> point) const;

    // Composition: variable index -> replacement polynomial. Replacements
    // share one target variable context; unassigned variables map to the
    // variable of the same index in that context.
    MultiPoly substitute(const std::map<std::size_t, MultiPoly>& assignments) const;

    // gcd of all coefficients (non-negative; 0 for the zero polynomial)
    Int content() const;

    // Leading term under the graded-lex order.
    const std::pair<const Monomial, Int>& leading_term() const;

    // Canonical text, leading term first, e.g. "z1^6 - 5*z1^3*z2 + 9*z1*z3".
    std::string to_string(std::span<const std::string> names = {}) const;

    bool operator==(const MultiPoly& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }

private:
    std::size_t nvars_;
    TermMap terms_;
    void check_same_context(const MultiPoly& o) const;
};

inline MultiPoly operator*(const Int& c, const MultiPoly& p) { return p * c; }

// Exact quotient p / q over the integers. Throws NotDivisibleError when no
// polynomial r with q*r == p exists, DivisionByZeroPolyError for q == 0.
MultiPoly exact_div(const MultiPoly& p, const MultiPoly& q);

WeightedDegree weighted_degree(const MultiPoly& p, const WeightVector& w);

}  // namespace paucity
