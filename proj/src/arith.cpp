#include "paucity/arith.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>

namespace paucity {

namespace {

constexpr uint32_t kTrialLimit = 1'000'000;
constexpr uint64_t kRhoBudget = 1ull << 23;  // iterations per factorize call

const std::vector<uint32_t>& small_primes() {
    static const std::vector<uint32_t> primes = [] {
        std::vector<bool> composite(kTrialLimit + 1, false);
        std::vector<uint32_t> out;
        for (uint32_t i = 2; i <= kTrialLimit; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (uint64_t j = uint64_t(i) * i; j <= kTrialLimit; j += i)
                composite[j] = true;
        }
        return out;
    }();
    return primes;
}

bool miller_rabin_witness(const Int& n, unsigned long a) {
    Int base(static_cast<unsigned long>(a));
    if (mpz_divisible_p(base.get_mpz_t(), n.get_mpz_t())) return true;
    Int d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    d >>= s;
    Int x;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) return true;
    for (unsigned long i = 0; i + 1 < s; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return true;
    }
    return false;
}

// Bound below which the fixed 13-base Miller-Rabin test is deterministic.
const Int& deterministic_mr_limit() {
    static const Int limit("3317044064679887385961981");
    return limit;
}

Int pollard_brent(const Int& n, unsigned long c, uint64_t& budget) {
    Int x = 2, y = 2, ys = 2, d = 1, q = 1, diff;
    unsigned long r = 1;
    const unsigned long batch = 128;
    while (d == 1) {
        x = y;
        for (unsigned long i = 0; i < r; ++i) {
            if (budget == 0) throw FactorizationBudgetError("rho budget exhausted");
            --budget;
            y = (y * y + c) % n;
        }
        unsigned long k = 0;
        while (k < r && d == 1) {
            ys = y;
            unsigned long lim = std::min(batch, r - k);
            for (unsigned long i = 0; i < lim; ++i) {
                if (budget == 0) throw FactorizationBudgetError("rho budget exhausted");
                --budget;
                y = (y * y + c) % n;
                diff = x - y;
                mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
                q = (q * diff) % n;
            }
            d = igcd(q, n);
            k += lim;
        }
        r *= 2;
    }
    if (d == n) {
        // Backtrack to the first collision.
        do {
            if (budget == 0) throw FactorizationBudgetError("rho budget exhausted");
            --budget;
            ys = (ys * ys + c) % n;
            diff = x - ys;
            mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
            d = igcd(diff, n);
        } while (d == 1);
    }
    return d;  // may equal n; caller retries with another c
}

}  // namespace

bool is_prime(const Int& n) {
    if (n < 2) return false;
    static const unsigned long bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    for (unsigned long b : bases) {
        if (n == Int(b)) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), b)) return false;
    }
    if (n < deterministic_mr_limit()) {
        for (unsigned long b : bases)
            if (!miller_rabin_witness(n, b)) return false;
        return true;
    }
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

Int FactoredInt::value() const {
    Int v = abs_value();
    return sign < 0 ? Int(-v) : v;
}

Int FactoredInt::abs_value() const {
    Int v = 1;
    for (const auto& [p, e] : prime_powers) v *= ipow(p, e);
    return v;
}

unsigned long long FactoredInt::divisor_count() const {
    unsigned long long c = 1;
    for (const auto& [p, e] : prime_powers) c *= (e + 1ull);
    return c;
}

FactoredInt factorize(const Int& n) {
    if (n == 0) throw ZeroInputError("factorize(0)");
    static const Int desk_guard = Int(1) << 96;
    Int m = abs(n);
    if (m > desk_guard)
        throw FactorizationBudgetError("input exceeds 2^96 desk-scale guard");

    FactoredInt out;
    out.sign = sign_of(n);
    std::map<Int, unsigned> factors;

    for (uint32_t p : small_primes()) {
        if (Int(p) * p > m) break;
        if (!mpz_divisible_ui_p(m.get_mpz_t(), p)) continue;
        unsigned e = 0;
        do {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            ++e;
        } while (mpz_divisible_ui_p(m.get_mpz_t(), p));
        factors[Int(p)] += e;
    }

    uint64_t budget = kRhoBudget;
    std::vector<Int> pending;
    if (m > 1) pending.push_back(m);
    while (!pending.empty()) {
        Int c = pending.back();
        pending.pop_back();
        if (c <= kTrialLimit || is_prime(c)) {
            // Cofactors at or below the trial bound are prime: every smaller
            // prime has already been divided out.
            factors[c] += 1;
            continue;
        }
        Int d = c;
        for (unsigned long seed = 1; d == c || d == 1; ++seed) {
            if (seed > 64) throw FactorizationBudgetError("rho restarts exhausted");
            d = pollard_brent(c, seed, budget);
        }
        pending.push_back(d);
        pending.push_back(exact_quot(c, d));
    }

    // Merge repeated prime cofactors.
    out.prime_powers.assign(factors.begin(), factors.end());
    return out;
}

std::vector<Int> divisors(const FactoredInt& f) {
    std::vector<Int> out{Int(1)};
    for (const auto& [p, e] : f.prime_powers) {
        std::size_t base = out.size();
        Int pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct TupleEnumerator {
    std::size_t m;
    int target_sign;
    std::span<const PairSumConstraint> constraints;
    const std::function<bool(const DivisorTuple&)>* visit;
    std::vector<Int> primes;
    DivisorTuple tuple;
    bool stopped = false;

    // Divisors of the remaining cofactor, ascending, with their exponents.
    std::vector<std::pair<Int, std::vector<unsigned>>> divisors_of(
        const std::vector<unsigned>& rem) const {
        std::vector<std::pair<Int, std::vector<unsigned>>> out;
        out.push_back({Int(1), std::vector<unsigned>(primes.size(), 0)});
        for (std::size_t pi = 0; pi < primes.size(); ++pi) {
            std::size_t base = out.size();
            Int pk = 1;
            for (unsigned e = 1; e <= rem[pi]; ++e) {
                pk *= primes[pi];
                for (std::size_t j = 0; j < base; ++j) {
                    auto entry = out[j];
                    entry.first *= pk;
                    entry.second[pi] = e;
                    out.push_back(std::move(entry));
                }
            }
        }
        std::sort(out.begin(), out.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return out;
    }

    // Exponent vector of |v| against the prime list; empty when |v| is not
    // a product of those primes within the remaining multiplicities.
    std::optional<std::vector<unsigned>> exponents_within(
        const Int& v, const std::vector<unsigned>& rem) const {
        Int a = abs(v);
        std::vector<unsigned> exps(primes.size(), 0);
        for (std::size_t pi = 0; pi < primes.size() && a > 1; ++pi) {
            while (exps[pi] < rem[pi] &&
                   mpz_divisible_p(a.get_mpz_t(), primes[pi].get_mpz_t())) {
                a = exact_quot(a, primes[pi]);
                ++exps[pi];
            }
        }
        if (a != 1) return std::nullopt;
        return exps;
    }

    bool constraints_satisfied() const {
        for (const auto& c : constraints)
            if (tuple.entries[c.i] + tuple.entries[c.j] != c.sum) return false;
        return true;
    }

    void emit() {
        if (!constraints_satisfied()) return;
        if (!(*visit)(tuple)) stopped = true;
    }

    // Value forced at `depth` by a constraint whose partner is already set.
    std::optional<Int> forced_value(std::size_t depth) const {
        std::optional<Int> forced;
        for (const auto& c : constraints) {
            if (c.j != depth) continue;
            Int v = c.sum - tuple.entries[c.i];
            if (forced && *forced != v) return Int(0);  // conflicting, dead below
            forced = v;
        }
        return forced;
    }

    void recurse(std::size_t depth, const std::vector<unsigned>& rem, const Int& rem_value,
                 int sign_acc) {
        if (stopped) return;
        if (depth == m - 1) {
            // Last slot: absolute value and sign both forced.
            tuple.entries[depth] = target_sign * sign_acc < 0 ? Int(-rem_value) : rem_value;
            emit();
            return;
        }
        if (auto forced = forced_value(depth)) {
            if (*forced == 0) return;
            auto exps = exponents_within(*forced, rem);
            if (!exps) return;
            std::vector<unsigned> next(rem);
            for (std::size_t pi = 0; pi < next.size(); ++pi) next[pi] -= (*exps)[pi];
            tuple.entries[depth] = *forced;
            recurse(depth + 1, next, exact_quot(rem_value, abs(*forced)),
                    sign_acc * sign_of(*forced));
            return;
        }
        for (const auto& [d, exps] : divisors_of(rem)) {
            std::vector<unsigned> next(rem);
            for (std::size_t pi = 0; pi < next.size(); ++pi) next[pi] -= exps[pi];
            Int next_value = exact_quot(rem_value, d);
            for (int s : {+1, -1}) {
                tuple.entries[depth] = s > 0 ? d : Int(-d);
                recurse(depth + 1, next, next_value, sign_acc * s);
                if (stopped) return;
            }
        }
    }
};

}  // namespace

void for_each_signed_tuple(const Int& N, std::size_t m,
                           std::span<const PairSumConstraint> constraints,
                           const std::function<bool(const DivisorTuple&)>& visit) {
    if (N == 0) throw ZeroInputError("signed tuples of 0");
    if (m < 2) throw Error("tuple length must be at least 2");
    for (const auto& c : constraints)
        if (c.i >= c.j || c.j >= m) throw Error("malformed pair-sum constraint");

    FactoredInt f = factorize(N);
    TupleEnumerator en;
    en.m = m;
    en.target_sign = f.sign;
    en.constraints = constraints;
    en.visit = &visit;
    for (const auto& [p, e] : f.prime_powers) en.primes.push_back(p);
    en.tuple.entries.assign(m, Int(0));
    std::vector<unsigned> rem;
    for (const auto& [p, e] : f.prime_powers) rem.push_back(e);
    en.recurse(0, rem, f.abs_value(), +1);
}

std::vector<DivisorTuple> signed_tuples(const Int& N, std::size_t m,
                                        std::span<const PairSumConstraint> constraints) {
    std::vector<DivisorTuple> out;
    for_each_signed_tuple(N, m, constraints, [&](const DivisorTuple& t) {
        out.push_back(t);
        return true;
    });
    return out;
}

}  // namespace paucity
