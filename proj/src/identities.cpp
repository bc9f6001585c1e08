#include "paucity/identities.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace paucity {

namespace {

// Variable layout of the 4-variable context: (x1, x2, y1, y2).
constexpr std::size_t kX1 = 0, kX2 = 1, kY1 = 2, kY2 = 3;

MultiPoly pair_product_4var() {
    auto v = [](std::size_t i) { return MultiPoly::variable(4, i); };
    return (v(kX1) - v(kY1)) * (v(kX1) - v(kY2)) * (v(kX2) - v(kY1)) *
           (v(kX2) - v(kY2));
}

}  // namespace

MultiPoly sj_poly(unsigned j) {
    if (j < 1) throw Error("sj_poly requires j >= 1");
    MultiPoly p(2);
    p.add_term(Monomial::var(2, 0, j), 1);
    p.add_term(Monomial::var(2, 1, j), -1);
    return p;
}

MultiPoly sigma_poly(unsigned j) {
    if (j < 1) throw Error("sigma_poly requires j >= 1");
    MultiPoly p(4);
    p.add_term(Monomial::var(4, kX1, j), 1);
    p.add_term(Monomial::var(4, kX2, j), 1);
    p.add_term(Monomial::var(4, kY1, j), -1);
    p.add_term(Monomial::var(4, kY2, j), -1);
    return p;
}

MultiPoly tau_poly() {
    auto v = [](std::size_t i) { return MultiPoly::variable(4, i); };
    return v(kX1) * v(kX1) + v(kX1) * v(kX2) + v(kX2) * v(kX2) -
           v(kY1) * v(kY1) - v(kY1) * v(kY2) - v(kY2) * v(kY2);
}

IdentityReport verify_identity(NamedIdentity which) {
    switch (which) {
        case NamedIdentity::CubicUnivariate: {
            MultiPoly s1 = sj_poly(1), s2 = sj_poly(2), s3 = sj_poly(3);
            MultiPoly residual = s1.pow(4) + Int(3) * s2.pow(2) - Int(4) * s1 * s3;
            return {"cubic_univariate", residual.is_zero(), residual};
        }
        case NamedIdentity::CubicMultiplicative: {
            MultiPoly s1 = sigma_poly(1), s2 = sigma_poly(2), s3 = sigma_poly(3);
            MultiPoly lhs = s1.pow(4) + Int(3) * s2.pow(2) - Int(4) * s1 * s3;
            MultiPoly residual = lhs - Int(12) * pair_product_4var();
            return {"cubic_multiplicative", residual.is_zero(), residual};
        }
        case NamedIdentity::QuarticUnivariate: {
            MultiPoly s1 = sj_poly(1), s2 = sj_poly(2), s4 = sj_poly(4);
            MultiPoly residual = s2.pow(3) + s1.pow(4) * s2 - Int(2) * s1.pow(2) * s4;
            return {"quartic_univariate", residual.is_zero(), residual};
        }
        case NamedIdentity::QuarticMultiplicative: {
            MultiPoly s1 = sigma_poly(1), s2 = sigma_poly(2), s4 = sigma_poly(4);
            MultiPoly lhs = s2.pow(3) + s1.pow(4) * s2 - Int(2) * s1.pow(2) * s4;
            MultiPoly residual = lhs - Int(8) * pair_product_4var() * tau_poly();
            return {"quartic_multiplicative", residual.is_zero(), residual};
        }
    }
    throw Error("unknown identity");
}

std::vector<IdentityReport> verify_all_identities() {
    return {verify_identity(NamedIdentity::CubicUnivariate),
            verify_identity(NamedIdentity::CubicMultiplicative),
            verify_identity(NamedIdentity::QuarticUnivariate),
            verify_identity(NamedIdentity::QuarticMultiplicative)};
}

Int psi(const Int& h1, const Int& h2, const Int& h3) {
    return h1 * h1 * h1 * h1 + 3 * h2 * h2 - 4 * h1 * h3;
}

Int phi(const Int& h1, const Int& h2, const Int& h4) {
    return h2 * h2 * h2 + h1 * h1 * h1 * h1 * h2 - 2 * h1 * h1 * h4;
}

WeightVector odd_weights(unsigned kappa) {
    WeightVector w;
    for (unsigned i = 0; i < kappa; ++i) w.weights.push_back(2 * i + 1);
    return w;
}

MultiPoly odd_power_sum(std::size_t nvars, unsigned j) {
    MultiPoly p(nvars);
    for (std::size_t i = 0; i < nvars; ++i)
        p.add_term(Monomial::var(nvars, i, 2 * j - 1), 1);
    return p;
}

namespace {

// Exponent tuples alpha with sum_i (2i-1) alpha_i == target, descending
// graded-lex so that z1^target comes first.
std::vector<Monomial> weighted_monomials(unsigned kappa, unsigned target) {
    std::vector<Monomial> out;
    std::vector<uint32_t> alpha(kappa, 0);
    auto rec = [&](auto&& self, unsigned i, unsigned remaining) -> void {
        if (i + 1 == kappa) {
            unsigned w = 2 * i + 1;
            if (remaining % w == 0) {
                alpha[i] = remaining / w;
                out.push_back(Monomial(alpha));
                alpha[i] = 0;
            }
            return;
        }
        unsigned w = 2 * i + 1;
        for (unsigned e = 0; e * w <= remaining; ++e) {
            alpha[i] = e;
            self(self, i + 1, remaining - e * w);
        }
        alpha[i] = 0;
    };
    rec(rec, 0, target);
    std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
        return b < a;
    });
    return out;
}

// Fraction-free (Bareiss) row echelon reduction in place. Returns the
// pivot row count (rank); rows [0, rank) end up as the staircase rows.
int bareiss_echelon(std::vector<std::vector<Int>>& M) {
    if (M.empty()) return 0;
    const std::size_t rows = M.size(), cols = M[0].size();
    Int prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && M[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(M[r], M[pivot]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                M[i][j] = exact_quot(M[r][c] * M[i][j] - M[i][c] * M[r][j], prev);
            M[i][c] = 0;
        }
        prev = M[r][c];
        ++r;
    }
    return static_cast<int>(r);
}

Int bareiss_determinant(std::vector<std::vector<Int>> M) {
    const std::size_t n = M.size();
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && M[pivot][k] == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != k) {
            std::swap(M[k], M[pivot]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                M[i][j] = exact_quot(M[k][k] * M[i][j] - M[i][k] * M[k][j], prev);
        prev = M[k][k];
    }
    return sign < 0 ? Int(-M[n - 1][n - 1]) : M[n - 1][n - 1];
}

std::unique_ptr<UpsilonData> build_upsilon(unsigned kappa) {
    if (kappa < 2) throw Error("relation polynomial requires kappa >= 2");
    if (kappa > 8) throw BudgetExceededError("kappa beyond desk-scale guard");
    const unsigned target = kappa * (kappa + 1) / 2;
    const std::vector<Monomial> cols = weighted_monomials(kappa, target);
    const std::size_t n = cols.size();

    // Expand each candidate monomial on the power sums of kappa-1 variables.
    std::vector<MultiPoly> tj;
    for (unsigned j = 1; j <= kappa; ++j) tj.push_back(odd_power_sum(kappa - 1, j));
    std::vector<std::vector<MultiPoly>> tpow(kappa);
    for (unsigned j = 0; j < kappa; ++j) {
        uint32_t maxe = 0;
        for (const auto& m : cols) maxe = std::max(maxe, m.exponent(j));
        tpow[j].push_back(MultiPoly::constant(kappa - 1, 1));
        for (uint32_t e = 1; e <= maxe; ++e) tpow[j].push_back(tpow[j][e - 1] * tj[j]);
    }
    std::vector<MultiPoly> expansions;
    expansions.reserve(n);
    for (const auto& m : cols) {
        MultiPoly t = MultiPoly::constant(kappa - 1, 1);
        for (unsigned j = 0; j < kappa; ++j)
            if (m.exponent(j) > 0) t = t * tpow[j][m.exponent(j)];
        expansions.push_back(std::move(t));
    }

    // One linear equation per monomial in the expansion variables.
    std::map<Monomial, std::size_t> row_index;
    for (const auto& e : expansions)
        for (const auto& [m, c] : e.terms())
            row_index.emplace(m, row_index.size());
    std::vector<std::vector<Int>> M(row_index.size(), std::vector<Int>(n, Int(0)));
    for (std::size_t col = 0; col < n; ++col)
        for (const auto& [m, c] : expansions[col].terms()) M[row_index[m]][col] = c;

    auto original = M;
    int rank = bareiss_echelon(M);
    int kernel_dim = static_cast<int>(n) - rank;
    if (kernel_dim != 1) throw KernelDimensionError(kappa, kernel_dim);

    // Kernel vector of the (n-1) x n staircase via signed maximal minors.
    std::vector<Int> v(n);
    for (std::size_t skip = 0; skip < n; ++skip) {
        std::vector<std::vector<Int>> B(rank, std::vector<Int>(n - 1));
        for (int i = 0; i < rank; ++i) {
            std::size_t jj = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != skip) B[i][jj++] = M[i][j];
        }
        Int d = bareiss_determinant(std::move(B));
        v[skip] = (skip % 2 == 0) ? d : Int(-d);
    }

    // Normalize: primitive with positive coefficient on z1^target.
    Int content = 0;
    for (const auto& c : v) content = igcd(content, c);
    if (content == 0) throw Error("kernel vector vanished");
    for (auto& c : v) c = exact_quot(c, content);
    Int lead = 0;
    for (std::size_t col = 0; col < n; ++col)
        if (cols[col].exponent(0) == target) lead = v[col];
    if (lead == 0) throw Error("relation has no pure z1 term");
    if (lead < 0)
        for (auto& c : v) c = -c;

    // Certificates. First: the relation annihilates the power sums.
    MultiPoly residual(kappa - 1);
    for (std::size_t col = 0; col < n; ++col) residual += expansions[col] * v[col];
    if (!residual.is_zero()) throw Error("relation failed to certify");
    for (const auto& row : original) {
        Int dot = 0;
        for (std::size_t col = 0; col < n; ++col) dot += row[col] * v[col];
        if (dot != 0) throw Error("kernel vector check failed");
    }

    auto data = std::make_unique<UpsilonData>();
    data->kappa = kappa;
    data->kernel_dim = kernel_dim;
    MultiPoly upsilon(kappa);
    for (std::size_t col = 0; col < n; ++col) upsilon.add_term(cols[col], v[col]);
    data->upsilon = std::move(upsilon);

    // Second: on kappa+1 variables the substituted relation must equal an
    // exact integer constant times prod_{i<j} (x_i + x_j).
    std::map<std::size_t, MultiPoly> assign;
    for (unsigned j = 1; j <= kappa; ++j)
        assign.emplace(j - 1, odd_power_sum(kappa + 1, j));
    MultiPoly composed = data->upsilon.substitute(assign);
    MultiPoly prod = MultiPoly::constant(kappa + 1, 1);
    for (std::size_t i = 0; i < kappa + 1; ++i)
        for (std::size_t j = i + 1; j < kappa + 1; ++j)
            prod = prod * (MultiPoly::variable(kappa + 1, i) +
                           MultiPoly::variable(kappa + 1, j));
    MultiPoly quotient = exact_div(composed, prod);
    if (!quotient.is_constant())
        throw NotDivisibleError("relation quotient is not a constant");
    data->c_constant = quotient.constant_value();
    if (data->c_constant == 0) throw Error("relation constant vanished");
    return data;
}

}  // namespace

const UpsilonData& construct_upsilon(unsigned kappa) {
    static std::mutex mu;
    static std::map<unsigned, std::unique_ptr<UpsilonData>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(kappa);
    if (it == cache.end()) it = cache.emplace(kappa, build_upsilon(kappa)).first;
    return *it->second;
}

Int upsilon_value(unsigned kappa, std::span<const Int> h) {
    const UpsilonData& u = construct_upsilon(kappa);
    return u.upsilon.eval(h);
}

std::string upsilon_text(const UpsilonData& u) {
    return u.upsilon.to_string();
}

nlohmann::ordered_json upsilon_json(const UpsilonData& u) {
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    // Leading term first, matching the canonical text form.
    const auto& map = u.upsilon.terms();
    for (auto it = map.rbegin(); it != map.rend(); ++it) {
        nlohmann::ordered_json term;
        term["alpha"] = it->first.exponents();
        term["coeff"] = it->second.get_str();
        terms.push_back(std::move(term));
    }
    nlohmann::ordered_json out;
    out["kappa"] = u.kappa;
    out["terms"] = std::move(terms);
    out["c_constant"] = u.c_constant.get_str();
    out["kernel_dim"] = u.kernel_dim;
    out["weighted_degree"] = u.kappa * (u.kappa + 1) / 2;
    return out;
}

}  // namespace paucity
