#include "paucity/intpoly.hpp"

#include <algorithm>
#include <sstream>

namespace paucity {

Monomial Monomial::var(std::size_t nvars, std::size_t index, uint32_t e) {
    if (index >= nvars) throw VariableMismatchError("variable index out of range");
    std::vector<uint32_t> exps(nvars, 0);
    exps[index] = e;
    return Monomial(std::move(exps));
}

uint64_t Monomial::total_degree() const {
    uint64_t d = 0;
    for (uint32_t e : exps_) d += e;
    return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
    std::vector<uint32_t> exps(exps_);
    for (std::size_t i = 0; i < exps.size(); ++i) exps[i] += o.exps_[i];
    return Monomial(std::move(exps));
}

bool Monomial::divides(const Monomial& o) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] > o.exps_[i]) return false;
    return true;
}

Monomial Monomial::quotient(const Monomial& o) const {
    std::vector<uint32_t> exps(exps_);
    for (std::size_t i = 0; i < exps.size(); ++i) exps[i] -= o.exps_[i];
    return Monomial(std::move(exps));
}

std::strong_ordering Monomial::operator<=>(const Monomial& o) const {
    uint64_t da = total_degree(), db = o.total_degree();
    if (da != db) return da <=> db;
    // Same degree: lex with earlier variables dominating, so that e.g.
    // x^2 > x*y > y^2.
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] != o.exps_[i]) return exps_[i] <=> o.exps_[i];
    return std::strong_ordering::equal;
}

MultiPoly MultiPoly::constant(std::size_t nvars, Int c) {
    MultiPoly p(nvars);
    if (c != 0) p.terms_.emplace(Monomial::unit(nvars), std::move(c));
    return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t index) {
    MultiPoly p(nvars);
    p.terms_.emplace(Monomial::var(nvars, index), Int(1));
    return p;
}

MultiPoly MultiPoly::from_terms(std::size_t nvars,
                                std::vector<std::pair<Monomial, Int>> terms) {
    MultiPoly p(nvars);
    for (auto& [m, c] : terms) {
        if (m.nvars() != nvars)
            throw VariableMismatchError("monomial width does not match context");
        p.add_term(m, c);
    }
    return p;
}

Int MultiPoly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Int(0) : it->second;
}

bool MultiPoly::is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_.begin()->first.total_degree() == 0);
}

Int MultiPoly::constant_value() const {
    return coeff(Monomial::unit(nvars_));
}

void MultiPoly::add_term(const Monomial& m, const Int& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void MultiPoly::check_same_context(const MultiPoly& o) const {
    if (nvars_ != o.nvars_)
        throw VariableMismatchError("operands have different variable counts");
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(nvars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    check_same_context(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    check_same_context(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    MultiPoly r(*this);
    r += o;
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    MultiPoly r(*this);
    r -= o;
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    check_same_context(o);
    MultiPoly r(nvars_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

MultiPoly MultiPoly::operator*(const Int& c) const {
    MultiPoly r(nvars_);
    if (c == 0) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
    MultiPoly acc = MultiPoly::constant(nvars_, 1);
    MultiPoly base(*this);
    while (e > 0) {
        if (e & 1u) acc = acc * base;
        e >>= 1u;
        if (e > 0) base = base * base;
    }
    return acc;
}

Int MultiPoly::eval(std::span<const Int> point) const {
    if (point.size() != nvars_)
        throw VariableMismatchError("evaluation point length does not match");
    // Power cache per variable up to the largest exponent used.
    std::vector<uint32_t> maxe(nvars_, 0);
    for (const auto& [m, c] : terms_)
        for (std::size_t i = 0; i < nvars_; ++i)
            maxe[i] = std::max(maxe[i], m.exponent(i));
    std::vector<std::vector<Int>> pows(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) {
        pows[i].resize(maxe[i] + 1);
        pows[i][0] = 1;
        for (uint32_t e = 1; e <= maxe[i]; ++e) pows[i][e] = pows[i][e - 1] * point[i];
    }
    Int total = 0;
    for (const auto& [m, c] : terms_) {
        Int term = c;
        for (std::size_t i = 0; i < nvars_; ++i)
            if (m.exponent(i) > 0) term *= pows[i][m.exponent(i)];
        total += term;
    }
    return total;
}

MultiPoly MultiPoly::substitute(const std::map<std::size_t, MultiPoly>& assignments) const {
    std::size_t target_nvars = nvars_;
    for (const auto& [idx, q] : assignments) {
        if (idx >= nvars_) throw VariableMismatchError("substitution index out of range");
        target_nvars = q.nvars();
    }
    for (const auto& [idx, q] : assignments)
        if (q.nvars() != target_nvars)
            throw VariableMismatchError("substitution polynomials disagree on context");
    if (assignments.size() < nvars_) {
        // Unassigned variables survive; their slots must exist in the target.
        for (std::size_t i = 0; i < nvars_; ++i)
            if (!assignments.count(i) && i >= target_nvars)
                throw VariableMismatchError("unassigned variable outside target context");
    }

    // Cache powers of each replacement polynomial.
    std::vector<uint32_t> maxe(nvars_, 0);
    for (const auto& [m, c] : terms_)
        for (std::size_t i = 0; i < nvars_; ++i)
            maxe[i] = std::max(maxe[i], m.exponent(i));
    std::vector<std::vector<MultiPoly>> pows(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) {
        MultiPoly base = MultiPoly::zero(target_nvars);
        auto it = assignments.find(i);
        if (it != assignments.end())
            base = it->second;
        else if (maxe[i] > 0)
            base = MultiPoly::variable(target_nvars, i);
        pows[i].push_back(MultiPoly::constant(target_nvars, 1));
        for (uint32_t e = 1; e <= maxe[i]; ++e) pows[i].push_back(pows[i][e - 1] * base);
    }

    MultiPoly result(target_nvars);
    for (const auto& [m, c] : terms_) {
        MultiPoly term = MultiPoly::constant(target_nvars, c);
        for (std::size_t i = 0; i < nvars_; ++i)
            if (m.exponent(i) > 0) term = term * pows[i][m.exponent(i)];
        result += term;
    }
    return result;
}

Int MultiPoly::content() const {
    Int g = 0;
    for (const auto& [m, c] : terms_) {
        g = igcd(g, c);
        if (g == 1) break;
    }
    return g;
}

const std::pair<const Monomial, Int>& MultiPoly::leading_term() const {
    if (terms_.empty()) throw Error("zero polynomial has no leading term");
    return *terms_.rbegin();
}

MultiPoly exact_div(const MultiPoly& p, const MultiPoly& q) {
    if (q.is_zero()) throw DivisionByZeroPolyError("exact_div by zero polynomial");
    if (p.nvars() != q.nvars())
        throw VariableMismatchError("operands have different variable counts");
    MultiPoly quotient(p.nvars());
    MultiPoly rem(p);
    const auto& [qm, qc] = q.leading_term();
    // Long division against a single divisor; every step must be exact.
    while (!rem.is_zero()) {
        const auto& [rm, rc] = rem.leading_term();
        if (!qm.divides(rm) || !paucity::divides(qc, rc))
            throw NotDivisibleError("polynomial division is not exact");
        Monomial m = rm.quotient(qm);
        Int c = exact_quot(rc, qc);
        MultiPoly t = MultiPoly::from_terms(p.nvars(), {{m, c}});
        quotient += t;
        rem -= t * q;
    }
    return quotient;
}

WeightedDegree weighted_degree(const MultiPoly& p, const WeightVector& w) {
    if (w.weights.size() != p.nvars())
        throw VariableMismatchError("weight vector length does not match");
    WeightedDegree out;
    for (const auto& [m, c] : p.terms()) {
        long long d = 0;
        for (std::size_t i = 0; i < p.nvars(); ++i)
            d += static_cast<long long>(w.weights[i]) * m.exponent(i);
        if (!out.degree) {
            out.degree = d;
        } else if (d != *out.degree) {
            out.homogeneous = false;
            out.degree = std::max(*out.degree, d);
        }
    }
    return out;
}

std::string MultiPoly::to_string(std::span<const std::string> names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Leading term first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Int a = c < 0 ? Int(-c) : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        bool printed = false;
        if (a != 1 || m.total_degree() == 0) {
            os << a.get_str();
            printed = true;
        }
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (m.exponent(i) == 0) continue;
            if (printed) os << "*";
            if (i < names.size())
                os << names[i];
            else
                os << "z" << (i + 1);
            if (m.exponent(i) > 1) os << "^" << m.exponent(i);
            printed = true;
        }
    }
    return os.str();
}

}  // namespace paucity
