#include "paucity/counters.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "paucity/arith.hpp"
#include "paucity/identities.hpp"
#include "paucity/util.hpp"

namespace paucity {

namespace {

constexpr double kBruteBudget = 1e9;       // elementary checks
constexpr long long kThreePairMaxP = 1024; // P^2 two-pair invocations guard

void require(bool cond, const char* msg) {
    if (!cond) throw Error(msg);
}

}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::Vino: return "vino";
        case Family::Quartic: return "quartic";
        case Family::Odd: return "odd";
    }
    return "?";
}

std::optional<Family> family_from_name(const std::string& name) {
    if (name == "vino") return Family::Vino;
    if (name == "quartic") return Family::Quartic;
    if (name == "odd") return Family::Odd;
    return std::nullopt;
}

std::string method_name(CountResult::Method m) {
    return m == CountResult::Method::Brute ? "brute" : "fast";
}

CoeffTuple CoeffTuple::vino(Int h1, Int h2, Int h3) {
    CoeffTuple t;
    t.family = Family::Vino;
    t.exponents = {1, 2, 3};
    t.values = {std::move(h1), std::move(h2), std::move(h3)};
    return t;
}

CoeffTuple CoeffTuple::quartic(Int h1, Int h2, Int h4) {
    CoeffTuple t;
    t.family = Family::Quartic;
    t.exponents = {1, 2, 4};
    t.values = {std::move(h1), std::move(h2), std::move(h4)};
    return t;
}

CoeffTuple CoeffTuple::odd(std::vector<Int> h) {
    require(!h.empty(), "odd tuple needs at least one entry");
    CoeffTuple t;
    t.family = Family::Odd;
    for (unsigned j = 1; j <= h.size(); ++j) t.exponents.push_back(2 * j - 1);
    t.values = std::move(h);
    return t;
}

CoeffTuple CoeffTuple::make(Family family, std::vector<Int> h) {
    if (family == Family::Odd) return odd(std::move(h));
    require(h.size() == 3, "vino/quartic tuples have three entries");
    return family == Family::Vino ? vino(h[0], h[1], h[2]) : quartic(h[0], h[1], h[2]);
}

bool CoeffTuple::is_zero() const {
    return std::all_of(values.begin(), values.end(), [](const Int& v) { return v == 0; });
}

SystemSpec SystemSpec::vino(unsigned t, long long P) {
    return {Family::Vino, t, P, BoxKind::OneToP};
}
SystemSpec SystemSpec::quartic(unsigned t, long long P) {
    return {Family::Quartic, t, P, BoxKind::OneToP};
}
SystemSpec SystemSpec::odd(unsigned s, long long P) {
    return {Family::Odd, s, P, BoxKind::Symmetric};
}

// ---------------------------------------------------------------------------
// Brute engines
// ---------------------------------------------------------------------------

namespace {

using int128 = __int128;

int128 pow128(long long v, unsigned e) {
    int128 r = 1;
    for (unsigned i = 0; i < e; ++i) r *= v;
    return r;
}

// Converts after the caller has bounded |v| well inside 127 bits.
int128 to_i128(const Int& v) {
    bool neg = v < 0;
    Int a = abs(v);
    Int hi = a >> 64;
    Int lo = a - (hi << 64);
    int128 r = (int128(mpz_get_ui(hi.get_mpz_t())) << 64) +
               int128(mpz_get_ui(lo.get_mpz_t()));
    return neg ? -r : r;
}

const Int& int128_guard() {
    static const Int lim = Int(1) << 126;
    return lim;
}

// Counter for the paired systems sum_i (x_i^j - y_i^j) = h_j over
// 1 <= x_i, y_i <= P; y_t is eliminated through the linear equation.
long long brute_pairs(unsigned t, long long P, const std::vector<Int>& hv,
                      unsigned last_exp, unsigned threads) {
    require(t >= 1 && P >= 1, "need t >= 1 and P >= 1");
    const unsigned exps[3] = {1, 2, last_exp};
    for (int j = 0; j < 3; ++j) {
        Int bound = Int(static_cast<unsigned long>(t)) * (ipow(to_int(P), exps[j]) - 1);
        if (abs(hv[j]) > bound) return 0;  // value out of reach of the box
    }
    if (std::pow(double(P), double(2 * t - 1)) > kBruteBudget)
        throw BudgetExceededError("brute volume exceeds budget");
    if (Int(static_cast<unsigned long>(t)) * ipow(to_int(P), last_exp) >= int128_guard())
        throw BudgetExceededError("brute value range exceeds 128 bits");

    const int128 h1 = to_i128(hv[0]), h2 = to_i128(hv[1]), he = to_i128(hv[2]);
    const unsigned slots = 2 * t - 1;  // x_1..x_t, y_1..y_{t-1}
    auto chunk = [&](long long xb, long long xe) -> long long {
        long long cnt = 0;
        std::function<void(unsigned, int128, int128, int128)> rec =
            [&](unsigned pos, int128 s1, int128 s2, int128 se) {
                if (pos == slots) {
                    int128 yt = s1 - h1;
                    if (yt >= 1 && yt <= P) {
                        long long y = static_cast<long long>(yt);
                        if (s2 - pow128(y, 2) == h2 && se - pow128(y, last_exp) == he)
                            ++cnt;
                    }
                    return;
                }
                if (pos < t) {
                    for (long long v = 1; v <= P; ++v)
                        rec(pos + 1, s1 + v, s2 + pow128(v, 2), se + pow128(v, last_exp));
                } else {
                    for (long long v = 1; v <= P; ++v)
                        rec(pos + 1, s1 - v, s2 - pow128(v, 2), se - pow128(v, last_exp));
                }
            };
        for (long long x1 = xb; x1 < xe; ++x1)
            rec(1, x1, pow128(x1, 2), pow128(x1, last_exp));
        return cnt;
    };
    long long total = 0;
    for (long long part : run_chunks<long long>(1, P + 1, threads, chunk)) total += part;
    return total;
}

struct OddBruteOut {
    std::map<unsigned, long long> by_type;
    long long total = 0;
};

// Counter for sum_i x_i^{2j-1} = h_j (j = 1..k) over |x_i| <= P with the
// last variable eliminated; every solution is bucketed by its type.
OddBruteOut brute_odd(unsigned k, unsigned s, long long P, const std::vector<Int>& hv,
                      unsigned threads) {
    require(k >= 1 && s >= 1 && P >= 1, "need k, s, P >= 1");
    OddBruteOut out;
    for (unsigned j = 0; j < k; ++j) {
        Int bound = Int(static_cast<unsigned long>(s)) * ipow(to_int(P), 2 * j + 1);
        if (abs(hv[j]) > bound) return out;
    }
    if (std::pow(double(2 * P + 1), double(s - 1)) > kBruteBudget)
        throw BudgetExceededError("brute volume exceeds budget");
    if (Int(static_cast<unsigned long>(s)) * ipow(to_int(P), 2 * k - 1) >= int128_guard())
        throw BudgetExceededError("brute value range exceeds 128 bits");

    std::vector<int128> h(k);
    for (unsigned j = 0; j < k; ++j) h[j] = to_i128(hv[j]);
    auto odd_pow = [](long long v, unsigned j) { return pow128(v, 2 * j + 1); };

    auto merge_solution = [&](std::map<unsigned, long long>& local,
                              std::span<const long long> cur) {
        ++local[type_of(cur)];
    };

    if (s == 1) {
        std::map<unsigned, long long> local;
        int128 x = h[0];
        if (x >= -P && x <= P) {
            long long xl = static_cast<long long>(x);
            bool ok = true;
            for (unsigned j = 1; j < k; ++j)
                if (odd_pow(xl, j) != h[j]) ok = false;
            if (ok) {
                long long cur[1] = {xl};
                merge_solution(local, cur);
            }
        }
        out.by_type = std::move(local);
    } else {
        auto chunk = [&](long long b, long long e) {
            std::map<unsigned, long long> local;
            std::vector<long long> cur(s);
            std::vector<int128> sums(k, 0);
            std::function<void(unsigned)> rec = [&](unsigned pos) {
                if (pos == s - 1) {
                    int128 xs = h[0] - sums[0];
                    if (xs < -P || xs > P) return;
                    long long xl = static_cast<long long>(xs);
                    for (unsigned j = 1; j < k; ++j)
                        if (sums[j] + odd_pow(xl, j) != h[j]) return;
                    cur[s - 1] = xl;
                    merge_solution(local, cur);
                    return;
                }
                long long lo = pos == 0 ? b : -P;
                long long hi = pos == 0 ? e : P + 1;
                for (long long v = lo; v < hi; ++v) {
                    cur[pos] = v;
                    for (unsigned j = 0; j < k; ++j) sums[j] += odd_pow(v, j);
                    rec(pos + 1);
                    for (unsigned j = 0; j < k; ++j) sums[j] -= odd_pow(v, j);
                }
            };
            rec(0);
            return local;
        };
        for (auto& part :
             run_chunks<std::map<unsigned, long long>>(-P, P + 1, threads, chunk))
            for (const auto& [j, c] : part) out.by_type[j] += c;
    }
    for (const auto& [j, c] : out.by_type) out.total += c;
    return out;
}

}  // namespace

unsigned type_of(std::span<const long long> x) {
    std::map<long long, long long> counts;
    long long zeros = 0;
    for (long long v : x) {
        if (v == 0)
            ++zeros;
        else
            ++counts[v];
    }
    unsigned j = static_cast<unsigned>(zeros / 2);
    for (const auto& [v, c] : counts) {
        if (v <= 0) continue;
        auto it = counts.find(-v);
        if (it != counts.end()) j += static_cast<unsigned>(std::min(c, it->second));
    }
    return j;
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

Classification classify(Family family, const CoeffTuple& h, long long P) {
    require(family != Family::Odd, "classification applies to vino/quartic tuples");
    require(h.family == family, "tuple family mismatch");
    const Int &h1 = h.values[0], &h2 = h.values[1], &hlast = h.values[2];
    Classification c;
    c.discriminant = family == Family::Vino ? psi(h1, h2, hlast) : phi(h1, h2, hlast);
    if (h.is_zero()) {
        c.verdict = Classification::Verdict::Zero;
        return c;
    }
    c.verdict = Classification::Verdict::Generic;
    if (h1 == 0 || !divides(h1, h2)) return c;
    Int q = exact_quot(h2, h1);
    Int two_a = q + h1;
    if (mpz_odd_p(two_a.get_mpz_t())) return c;
    Int a = exact_quot(two_a, 2);
    Int b = a - h1;
    Int Pz = to_int(P);
    if (a < 1 || a > Pz || b < 1 || b > Pz || a == b) return c;
    unsigned last_exp = h.exponents.back();
    if (ipow(a, last_exp) - ipow(b, last_exp) != hlast) return c;
    c.verdict = Classification::Verdict::Pair;
    c.a = to_ll(a);
    c.b = to_ll(b);
    return c;
}

namespace {

// Ordered count of the structured family {x} = {a,z}, {y} = {b,z} over
// z in [1, P]; orderings collapse where z hits a or b.
long long structured_family_count(long long P, long long a, long long b) {
    long long total = 0;
    for (long long z = 1; z <= P; ++z)
        total += (2 - (z == a ? 1 : 0)) * (2 - (z == b ? 1 : 0));
    return total;
}

std::string pair_note(long long P, long long a, long long b, long long family_total) {
    std::ostringstream os;
    os << "structured pair (a,b)=(" << a << "," << b << "): exact ordered family count "
       << family_total << " = sum_z (2-[z==a])(2-[z==b]); the headline 4P = " << 4 * P
       << " overcounts by " << 4 * P - family_total
       << " (orderings collapse at z==a and z==b)";
    return os.str();
}

using Solution = std::array<long long, 4>;

bool in_box(const Int& v, const Int& P) { return v >= 1 && v <= P; }

// Reconstructs (y1, y2, x2) from x1 and the difference tuple, then checks
// the box and all three equations exactly.
bool check_pair_solution(long long P, const CoeffTuple& h, unsigned last_exp,
                         const Int& x1, const Int& d1, const Int& d2, const Int& d3,
                         Solution& out) {
    Int Pz = to_int(P);
    Int y1 = x1 - d1, y2 = x1 - d2, x2 = x1 - d1 + d3;
    if (!in_box(x1, Pz) || !in_box(x2, Pz) || !in_box(y1, Pz) || !in_box(y2, Pz))
        return false;
    if (x1 + x2 - y1 - y2 != h.values[0]) return false;
    if (x1 * x1 + x2 * x2 - y1 * y1 - y2 * y2 != h.values[1]) return false;
    if (ipow(x1, last_exp) + ipow(x2, last_exp) - ipow(y1, last_exp) -
            ipow(y2, last_exp) !=
        h.values[2])
        return false;
    out = {to_ll(x1), to_ll(x2), to_ll(y1), to_ll(y2)};
    return true;
}

Int tau_value(const Int& x1, const Int& x2, const Int& y1, const Int& y2) {
    return x1 * x1 + x1 * x2 + x2 * x2 - y1 * y1 - y1 * y2 - y2 * y2;
}

std::set<Solution> collect_solutions(const std::vector<DivisorTuple>& tuples,
                                     unsigned threads,
                                     const std::function<void(const DivisorTuple&,
                                                              std::set<Solution>&)>& solve) {
    auto chunks = run_chunks<std::set<Solution>>(
        0, static_cast<long long>(tuples.size()), threads,
        [&](long long b, long long e) {
            std::set<Solution> local;
            for (long long i = b; i < e; ++i) solve(tuples[i], local);
            return local;
        });
    std::set<Solution> all;
    for (auto& part : chunks) all.merge(part);
    return all;
}

}  // namespace

// ---------------------------------------------------------------------------
// Fast two-pair counters
// ---------------------------------------------------------------------------

CountResult fast_count_S2(long long P, const CoeffTuple& h, unsigned threads) {
    require(h.family == Family::Vino, "fast_count_S2 takes a vino tuple");
    require(P >= 1, "P >= 1");
    Timer timer;
    CountResult r;
    r.method = CountResult::Method::Fast;
    Classification c = classify(Family::Vino, h, P);
    const Int &h1 = h.values[0], &h2 = h.values[1], &h3 = h.values[2];

    if (c.verdict == Classification::Verdict::Zero) {
        r.total = 2 * P * P - P;
        r.breakdown = {{"zero_diagonal", r.total}};
    } else if (c.verdict == Classification::Verdict::Pair) {
        r.total = structured_family_count(P, c.a, c.b);
        r.breakdown = {{"pair_family", r.total}};
        r.notes.push_back(pair_note(P, c.a, c.b, r.total));
    } else if (c.discriminant == 0) {
        // Any solution would force a structured pair; there is none.
        r.breakdown = {{"generic_discriminant_zero", 0}};
    } else if (!divides(Int(12), c.discriminant)) {
        r.breakdown = {{"indivisible_by_12", 0}};
    } else {
        Int N = exact_quot(c.discriminant, 12);
        std::vector<PairSumConstraint> cons{{0, 3, h1}, {1, 2, h1}};
        auto tuples = signed_tuples(N, 4, cons);
        auto solve = [&](const DivisorTuple& t, std::set<Solution>& sols) {
            const Int &d1 = t.entries[0], &d2 = t.entries[1], &d3 = t.entries[2];
            Int x1;
            if (h1 != 0) {
                Int num = h2 - (d1 - d3) * (d1 - d3) + d1 * d1 + d2 * d2;
                Int den = 2 * h1;  // d2 + d3 == h1 on every admissible tuple
                if (!divides(den, num)) return;
                x1 = exact_quot(num, den);
            } else {
                // d3 == -d2; the quadratic equation degenerates into the
                // consistency condition 2 d1 d2 == h2 and the cubic one
                // pins x1.
                if (2 * d1 * d2 != h2) return;
                Int sum = d1 + d2;
                Int num = h3 + sum * sum * sum - d1 * d1 * d1 - d2 * d2 * d2;
                Int den = 6 * d1 * d2;
                if (!divides(den, num)) return;
                x1 = exact_quot(num, den);
            }
            Solution sol;
            if (check_pair_solution(P, h, 3, x1, d1, d2, d3, sol)) sols.insert(sol);
        };
        auto sols = collect_solutions(tuples, threads, solve);
        r.total = static_cast<long long>(sols.size());
        r.breakdown = {{"divisor_enumeration", r.total}};
    }
    r.elapsed_ms = timer.elapsed_ms();
    return r;
}

CountResult fast_count_T2(long long P, const CoeffTuple& h, unsigned threads) {
    require(h.family == Family::Quartic, "fast_count_T2 takes a quartic tuple");
    require(P >= 1, "P >= 1");
    Timer timer;
    CountResult r;
    r.method = CountResult::Method::Fast;
    Classification c = classify(Family::Quartic, h, P);
    const Int &h1 = h.values[0], &h2 = h.values[1], &h4 = h.values[2];

    if (c.verdict == Classification::Verdict::Zero) {
        r.total = 2 * P * P - P;
        r.breakdown = {{"zero_diagonal", r.total}};
    } else if (c.discriminant != 0) {
        if (!divides(Int(8), c.discriminant)) {
            r.breakdown = {{"indivisible_by_8", 0}};
        } else {
            Int N = exact_quot(c.discriminant, 8);
            std::vector<PairSumConstraint> cons{{0, 3, h1}, {1, 2, h1}};
            auto tuples = signed_tuples(N, 5, cons);
            auto solve = [&](const DivisorTuple& t, std::set<Solution>& sols) {
                const Int &d1 = t.entries[0], &d2 = t.entries[1], &d3 = t.entries[2];
                const Int& e = t.entries[4];
                std::vector<Int> candidates;
                if (h1 != 0) {
                    Int num = h2 - (d1 - d3) * (d1 - d3) + d1 * d1 + d2 * d2;
                    Int den = 2 * h1;
                    if (!divides(den, num)) return;
                    candidates.push_back(exact_quot(num, den));
                } else {
                    if (2 * d1 * d2 != h2) return;
                    // Quartic equation becomes a quadratic in x1 with at
                    // most two integer roots.
                    Int sum = d1 + d2;
                    Int A = 12 * d1 * d2;
                    Int B = -4 * (sum * sum * sum - d1 * d1 * d1 - d2 * d2 * d2);
                    Int C0 = sum * sum * sum * sum - d1 * d1 * d1 * d1 -
                             d2 * d2 * d2 * d2 - h4;
                    Int disc = B * B - 4 * A * C0;
                    if (disc < 0) return;
                    if (!mpz_perfect_square_p(disc.get_mpz_t())) return;
                    Int s;
                    mpz_sqrt(s.get_mpz_t(), disc.get_mpz_t());
                    for (const Int& root_num : {Int(-B + s), Int(-B - s)}) {
                        Int den = 2 * A;
                        if (divides(den, root_num))
                            candidates.push_back(exact_quot(root_num, den));
                    }
                }
                for (const Int& x1 : candidates) {
                    Solution sol;
                    if (!check_pair_solution(P, h, 4, x1, d1, d2, d3, sol)) continue;
                    if (tau_value(x1, x1 - d1 + d3, x1 - d1, x1 - d2) != e) continue;
                    sols.insert(sol);
                }
            };
            auto sols = collect_solutions(tuples, threads, solve);
            r.total = static_cast<long long>(sols.size());
            r.breakdown = {{"divisor_enumeration", r.total}};
        }
    } else {
        // Discriminant zero with h != 0: solutions either share a
        // coordinate across sides (structured family) or have tau == 0
        // (sporadic difference-of-squares enumeration).
        std::set<Solution> sporadic;
        Int Pz = to_int(P);
        if (h1 != 0 && h2 != 0) {
            Int M = 12 * h2 * h1 * h1;
            for (const auto& t : signed_tuples(M, 2)) {
                const Int &e1 = t.entries[0], &e2 = t.entries[1];
                Int s = e1 + e2;
                if (mpz_odd_p(s.get_mpz_t())) continue;
                Int A = exact_quot(s, 2);
                Int B = exact_quot(e2 - e1, 2);
                Int den4 = 4 * h1, den2 = 2 * h1;
                Int numx = A + h1 * h1 - h2;
                if (!divides(den4, numx)) continue;
                Int x1 = exact_quot(numx, den4);
                Int numy = B - h1 * h1 - h2;
                if (!divides(den4, numy)) continue;
                Int y1 = exact_quot(numy, den4);
                Int numx2 = h1 * h1 - h2 - den2 * x1;
                if (!divides(den2, numx2)) continue;
                Int x2 = exact_quot(numx2, den2);
                Int numy2 = -(h1 * h1 + h2) - den2 * y1;
                if (!divides(den2, numy2)) continue;
                Int y2 = exact_quot(numy2, den2);
                if (!in_box(x1, Pz) || !in_box(x2, Pz) || !in_box(y1, Pz) || !in_box(y2, Pz))
                    continue;
                if (x1 + x2 - y1 - y2 != h1) continue;
                if (x1 * x1 + x2 * x2 - y1 * y1 - y2 * y2 != h2) continue;
                if (ipow(x1, 4) + ipow(x2, 4) - ipow(y1, 4) - ipow(y2, 4) != h4) continue;
                if (tau_value(x1, x2, y1, y2) != 0) continue;
                sporadic.insert({to_ll(x1), to_ll(x2), to_ll(y1), to_ll(y2)});
            }
        }
        if (c.verdict == Classification::Verdict::Pair) {
            long long fam = structured_family_count(P, c.a, c.b);
            auto in_family = [&](const Solution& sol) {
                auto match = [&](long long za, long long y1, long long y2) {
                    return (y1 == c.b && y2 == za) || (y1 == za && y2 == c.b);
                };
                if (sol[0] == c.a && match(sol[1], sol[2], sol[3])) return true;
                if (sol[1] == c.a && match(sol[0], sol[2], sol[3])) return true;
                return false;
            };
            long long extra = 0;
            for (const auto& sol : sporadic)
                if (!in_family(sol)) ++extra;
            r.total = fam + extra;
            r.breakdown = {{"pair_family", fam}, {"tau_zero_sporadic", extra}};
            r.notes.push_back(pair_note(P, c.a, c.b, fam));
        } else {
            r.total = static_cast<long long>(sporadic.size());
            r.breakdown = {{"tau_zero_sporadic", r.total}};
        }
    }
    r.elapsed_ms = timer.elapsed_ms();
    return r;
}

// ---------------------------------------------------------------------------
// Three-pair counters by shifted summation
// ---------------------------------------------------------------------------

namespace {

CountResult fast_count_three(long long P, const CoeffTuple& h, unsigned threads,
                             bool quartic) {
    require(P >= 1, "P >= 1");
    if (P > kThreePairMaxP)
        throw BudgetExceededError("P^2 two-pair invocations exceed budget");
    Timer timer;
    const unsigned e = quartic ? 4 : 3;
    const Int &h1 = h.values[0], &h2 = h.values[1], &he = h.values[2];

    // Multiplicity of every shifted tuple h'_j = h_j - u^j + v^j. The
    // diagonal u == v collapses onto h itself, which is where the
    // memoization pays.
    std::map<std::array<Int, 3>, long long> mult;
    for (long long u = 1; u <= P; ++u) {
        for (long long v = 1; v <= P; ++v) {
            Int uu = to_int(u), vv = to_int(v);
            std::array<Int, 3> key = {h1 - uu + vv, h2 - uu * uu + vv * vv,
                                      he - ipow(uu, e) + ipow(vv, e)};
            ++mult[key];
        }
    }
    std::vector<std::pair<std::array<Int, 3>, long long>> items(mult.begin(), mult.end());

    struct Partial {
        long long total = 0;
        std::map<std::string, long long> branches;
    };
    auto chunks = run_chunks<Partial>(
        0, static_cast<long long>(items.size()), threads, [&](long long b, long long en) {
            Partial part;
            for (long long i = b; i < en; ++i) {
                const auto& [key, m] = items[i];
                CountResult sub =
                    quartic ? fast_count_T2(P, CoeffTuple::quartic(key[0], key[1], key[2]), 1)
                            : fast_count_S2(P, CoeffTuple::vino(key[0], key[1], key[2]), 1);
                part.total += m * sub.total;
                for (const auto& [label, cnt] : sub.breakdown)
                    part.branches[label] += m * cnt;
            }
            return part;
        });

    CountResult r;
    r.method = CountResult::Method::Fast;
    std::map<std::string, long long> branches;
    for (const auto& part : chunks) {
        r.total += part.total;
        for (const auto& [label, cnt] : part.branches) branches[label] += cnt;
    }
    for (const auto& [label, cnt] : branches) r.breakdown.emplace_back(label, cnt);
    r.elapsed_ms = timer.elapsed_ms();
    return r;
}

}  // namespace

CountResult fast_count_S3(long long P, const CoeffTuple& h, unsigned threads) {
    require(h.family == Family::Vino, "fast_count_S3 takes a vino tuple");
    return fast_count_three(P, h, threads, false);
}

CountResult fast_count_T3(long long P, const CoeffTuple& h, unsigned threads) {
    require(h.family == Family::Quartic, "fast_count_T3 takes a quartic tuple");
    return fast_count_three(P, h, threads, true);
}

// ---------------------------------------------------------------------------
// Odd systems
// ---------------------------------------------------------------------------

CountResult brute_count(const SystemSpec& spec, const CoeffTuple& h, unsigned threads) {
    require(spec.family == h.family, "spec and tuple families differ");
    if (spec.family == Family::Odd)
        return count_U(h.k(), spec.t_or_s, spec.P, h, threads);
    Timer timer;
    CountResult r;
    r.method = CountResult::Method::Brute;
    r.total = brute_pairs(spec.t_or_s, spec.P, h.values, h.exponents.back(), threads);
    r.breakdown = {{"enumerated", r.total}};
    r.elapsed_ms = timer.elapsed_ms();
    return r;
}

CountResult count_U(unsigned k, unsigned s, long long P, const CoeffTuple& h,
                    unsigned threads) {
    require(h.family == Family::Odd, "count_U takes an odd tuple");
    require(h.k() == k, "tuple length does not match k");
    Timer timer;
    OddBruteOut o = brute_odd(k, s, P, h.values, threads);
    CountResult r;
    r.method = CountResult::Method::Brute;
    r.total = o.total;
    for (const auto& [j, c] : o.by_type)
        r.breakdown.emplace_back("type_" + std::to_string(j), c);
    r.elapsed_ms = timer.elapsed_ms();
    return r;
}

TypeDecomposition type_decompose(unsigned k, unsigned s, long long P, const CoeffTuple& h,
                                 unsigned threads) {
    require(h.family == Family::Odd, "type_decompose takes an odd tuple");
    require(h.k() == k, "tuple length does not match k");
    OddBruteOut o = brute_odd(k, s, P, h.values, threads);
    TypeDecomposition d;
    d.counts = std::move(o.by_type);
    for (const auto& [j, c] : d.counts)
        if (c > 0) d.i_k = d.i_k ? std::max(*d.i_k, j) : j;
    return d;
}

// ---------------------------------------------------------------------------
// Minimal representation length and growth exponent
// ---------------------------------------------------------------------------

namespace {

bool odd_representation_exists(unsigned k, long long P, const std::vector<Int>& hv,
                               unsigned r) {
    Int Pz = to_int(P);
    auto vpow = [](long long v, unsigned j) { return ipow(to_int(v), 2 * j + 1); };
    if (r == 1) {
        // The linear equation pins the single summand to h_1.
        if (abs(hv[0]) > Pz) return false;
        long long a = to_ll(hv[0]);
        for (unsigned j = 1; j < k; ++j)
            if (vpow(a, j) != hv[j]) return false;
        return true;
    }
    if (r == 2) {
        if (double(2 * P + 1) > kBruteBudget)
            throw BudgetExceededError("representation search exceeds budget");
        for (long long a1 = -P; a1 <= P; ++a1) {
            Int a2 = hv[0] - to_int(a1);
            if (a2 < -Pz || a2 > Pz) continue;
            long long a2l = to_ll(a2);
            bool ok = true;
            for (unsigned j = 1; j < k && ok; ++j)
                ok = vpow(a1, j) + vpow(a2l, j) == hv[j];
            if (ok) return true;
        }
        return false;
    }
    // Meet in the middle: hash all power-sum vectors of the left half.
    unsigned left = r / 2, right = r - left;
    double side = std::pow(double(2 * P + 1), double(left));
    if (side > 4e6 || std::pow(double(2 * P + 1), double(right)) > kBruteBudget)
        throw BudgetExceededError("representation search exceeds budget");
    std::set<std::vector<Int>> seen;
    std::function<void(unsigned, std::vector<Int>&)> rec_left =
        [&](unsigned pos, std::vector<Int>& sums) {
            if (pos == left) {
                seen.insert(sums);
                return;
            }
            for (long long v = -P; v <= P; ++v) {
                for (unsigned j = 0; j < k; ++j) sums[j] += vpow(v, j);
                rec_left(pos + 1, sums);
                for (unsigned j = 0; j < k; ++j) sums[j] -= vpow(v, j);
            }
        };
    std::vector<Int> sums(k, Int(0));
    rec_left(0, sums);
    bool found = false;
    std::function<void(unsigned, std::vector<Int>&)> rec_right =
        [&](unsigned pos, std::vector<Int>& acc) {
            if (found) return;
            if (pos == right) {
                std::vector<Int> need(k);
                for (unsigned j = 0; j < k; ++j) need[j] = hv[j] - acc[j];
                if (seen.count(need)) found = true;
                return;
            }
            for (long long v = -P; v <= P && !found; ++v) {
                for (unsigned j = 0; j < k; ++j) acc[j] += vpow(v, j);
                rec_right(pos + 1, acc);
                for (unsigned j = 0; j < k; ++j) acc[j] -= vpow(v, j);
            }
        };
    std::fill(sums.begin(), sums.end(), Int(0));
    rec_right(0, sums);
    return found;
}

}  // namespace

std::optional<unsigned> r0(unsigned k, long long P, const CoeffTuple& h) {
    require(h.family == Family::Odd, "r0 takes an odd tuple");
    require(h.k() == k, "tuple length does not match k");
    require(P >= 1, "P >= 1");
    if (h.is_zero()) return 0u;
    for (unsigned r = 1; r <= k + 1; ++r)
        if (odd_representation_exists(k, P, h.values, r)) return r;
    return std::nullopt;
}

std::optional<long long> tau_k(unsigned k, const CoeffTuple& h, long long P) {
    auto r = r0(k, P, h);
    if (!r) return std::nullopt;
    return static_cast<long long>((k + 1 - *r) / 2);
}

// ---------------------------------------------------------------------------
// Type-0 fast counter
// ---------------------------------------------------------------------------

CountResult fast_count_type0(unsigned kappa, long long P, const CoeffTuple& h) {
    require(h.family == Family::Odd, "fast_count_type0 takes an odd tuple");
    require(h.k() == kappa, "tuple length does not match kappa");
    require(kappa >= 2, "kappa >= 2");
    Timer timer;
    CountResult r;
    r.method = CountResult::Method::Fast;
    const UpsilonData& u = construct_upsilon(kappa);
    Int value = u.upsilon.eval(h.values);
    if (value == 0) {
        // Type-0 solutions force a nonzero relation value.
        r.breakdown = {{"upsilon_zero", 0}};
    } else if (!divides(u.c_constant, value)) {
        r.breakdown = {{"indivisible_by_c", 0}};
    } else if (kappa <= 3) {
        Int N = exact_quot(value, u.c_constant);
        const unsigned n = kappa + 1;
        std::vector<std::pair<unsigned, unsigned>> pairs;
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
        const Int& h1 = h.values[0];
        const Int denom(kappa - 1);
        const Int Pz = to_int(P);
        long long count = 0;
        for_each_signed_tuple(N, pairs.size(), {}, [&](const DivisorTuple& t) {
            std::vector<Int> x(n);
            for (unsigned i = 0; i < n; ++i) {
                Int sum = 0;
                for (std::size_t p = 0; p < pairs.size(); ++p)
                    if (pairs[p].first == i || pairs[p].second == i)
                        sum += t.entries[p];
                Int num = sum - h1;
                if (!divides(denom, num)) return true;
                x[i] = exact_quot(num, denom);
                if (x[i] < -Pz || x[i] > Pz) return true;
            }
            for (std::size_t p = 0; p < pairs.size(); ++p)
                if (x[pairs[p].first] + x[pairs[p].second] != t.entries[p]) return true;
            for (unsigned j = 1; j <= kappa; ++j) {
                Int sum = 0;
                for (unsigned i = 0; i < n; ++i) sum += ipow(x[i], 2 * j - 1);
                if (sum != h.values[j - 1]) return true;
            }
            ++count;
            return true;
        });
        r.total = count;
        r.breakdown = {{"divisor_enumeration", count}};
    } else {
        OddBruteOut o = brute_odd(kappa, kappa + 1, P, h.values, 1);
        long long v0 = o.by_type.count(0) ? o.by_type.at(0) : 0;
        r.total = v0;
        r.breakdown = {{"brute_fallback_type0", v0}};
    }
    r.elapsed_ms = timer.elapsed_ms();
    return r;
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

bool fast_available(Family family, unsigned t_or_s) {
    return (family == Family::Vino || family == Family::Quartic) &&
           (t_or_s == 2 || t_or_s == 3);
}

CountResult run_count(Family family, unsigned t_or_s, long long P, const CoeffTuple& h,
                      CountResult::Method method, unsigned threads) {
    require(h.family == family, "tuple family mismatch");
    if (method == CountResult::Method::Brute) {
        SystemSpec spec = family == Family::Vino    ? SystemSpec::vino(t_or_s, P)
                          : family == Family::Quartic ? SystemSpec::quartic(t_or_s, P)
                                                      : SystemSpec::odd(t_or_s, P);
        return brute_count(spec, h, threads);
    }
    if (!fast_available(family, t_or_s))
        throw Error("fast counter only defined for vino/quartic with t in {2,3}");
    if (family == Family::Vino)
        return t_or_s == 2 ? fast_count_S2(P, h, threads) : fast_count_S3(P, h, threads);
    return t_or_s == 2 ? fast_count_T2(P, h, threads) : fast_count_T3(P, h, threads);
}

}  // namespace paucity
