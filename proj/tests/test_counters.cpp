#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include "paucity/counters.hpp"
#include "paucity/identities.hpp"

using namespace paucity;

namespace {

long long breakdown_sum(const CountResult& r) {
    long long s = 0;
    for (const auto& [label, c] : r.breakdown) s += c;
    return s;
}

// Maximum matching of the zero-sum graph by bitmask DP; independent of the
// counting formula used by type_of.
unsigned matching_oracle(std::span<const long long> x) {
    unsigned n = static_cast<unsigned>(x.size());
    std::vector<int> memo(1u << n, -1);
    std::function<int(unsigned)> f = [&](unsigned mask) -> int {
        if (mask == 0) return 0;
        int& m = memo[mask];
        if (m >= 0) return m;
        unsigned i = static_cast<unsigned>(__builtin_ctz(mask));
        unsigned rest = mask & ~(1u << i);
        int best = f(rest);
        for (unsigned j = i + 1; j < n; ++j)
            if (((rest >> j) & 1u) && x[i] + x[j] == 0)
                best = std::max(best, 1 + f(rest & ~(1u << j)));
        m = best;
        return best;
    };
    return static_cast<unsigned>(f((1u << n) - 1));
}

}  // namespace

TEST_CASE("brute counts, closed forms and empty cases") {
    CHECK(brute_count(SystemSpec::vino(2, 3), CoeffTuple::vino(0, 0, 0)).total == 15);
    CHECK(brute_count(SystemSpec::vino(2, 10), CoeffTuple::vino(1, 0, 0)).total == 0);
    CHECK(brute_count(SystemSpec::odd(3, 2), CoeffTuple::odd({0, 0})).total == 13);
    CHECK(brute_count(SystemSpec::quartic(2, 3), CoeffTuple::quartic(0, 0, 0)).total == 15);
}

TEST_CASE("brute budget guard") {
    CHECK_THROWS_AS(brute_count(SystemSpec::vino(2, 100000), CoeffTuple::vino(1, 2, 3)),
                    BudgetExceededError);
}

TEST_CASE("classification verdicts") {
    Classification z = classify(Family::Vino, CoeffTuple::vino(0, 0, 0), 5);
    CHECK(z.verdict == Classification::Verdict::Zero);
    CHECK(z.discriminant == 0);

    Classification p = classify(Family::Vino, CoeffTuple::vino(1, 3, 7), 10);
    CHECK(p.verdict == Classification::Verdict::Pair);
    CHECK(p.a == 2);
    CHECK(p.b == 1);
    CHECK(p.discriminant == 0);

    // A valid pair needs the box: at P = 1 the same tuple is generic.
    Classification small = classify(Family::Vino, CoeffTuple::vino(1, 3, 7), 1);
    CHECK(small.verdict == Classification::Verdict::Generic);

    Classification g = classify(Family::Quartic, CoeffTuple::quartic(1, 1, 1), 100);
    CHECK(g.verdict == Classification::Verdict::Generic);
    CHECK(g.discriminant == 0);  // vanishing discriminant without a pair

    Classification q = classify(Family::Quartic, CoeffTuple::quartic(1, 3, 15), 10);
    CHECK(q.verdict == Classification::Verdict::Pair);
    CHECK(q.a == 2);
    CHECK(q.b == 1);
}

TEST_CASE("structured pairs always have vanishing discriminant") {
    std::mt19937_64 rng(42);
    for (int iter = 0; iter < 200; ++iter) {
        long a = 1 + (long)(rng() % 50);
        long b = 1 + (long)(rng() % 50);
        if (a == b) continue;
        CoeffTuple hv = CoeffTuple::vino(a - b, a * a - b * b, a * a * a - b * b * b);
        Classification cv = classify(Family::Vino, hv, 50);
        CHECK(cv.verdict == Classification::Verdict::Pair);
        CHECK(cv.discriminant == 0);
        Int a4 = ipow(Int(a), 4), b4 = ipow(Int(b), 4);
        CoeffTuple hq = CoeffTuple::quartic(a - b, a * a - b * b, a4 - b4);
        Classification cq = classify(Family::Quartic, hq, 50);
        CHECK(cq.verdict == Classification::Verdict::Pair);
        CHECK(cq.discriminant == 0);
    }
}

TEST_CASE("fast two-pair counter, named cases") {
    CHECK(fast_count_S2(3, CoeffTuple::vino(0, 0, 0)).total == 15);

    CountResult pair = fast_count_S2(10, CoeffTuple::vino(1, 3, 7));
    CHECK(pair.total == 36);  // 4P - 4 at P = 10
    REQUIRE(pair.breakdown.size() == 1);
    CHECK(pair.breakdown[0].first == "pair_family");
    CHECK(!pair.notes.empty());  // 4P headline discrepancy recorded

    CountResult gen = fast_count_S2(10, CoeffTuple::vino(0, 4, 30));
    CountResult gen_brute = brute_count(SystemSpec::vino(2, 10), CoeffTuple::vino(0, 4, 30));
    CHECK(gen.total == gen_brute.total);
    CHECK(gen.total >= 4);  // contains the four orderings of {1,4} vs {2,3}

    CHECK(fast_count_T2(3, CoeffTuple::quartic(0, 0, 0)).total == 15);
    for (long long P : {4, 8, 12})
        CHECK(fast_count_T2(P, CoeffTuple::quartic(1, 1, 1)).total == 0);
    CountResult tp = fast_count_T2(10, CoeffTuple::quartic(1, 3, 15));
    CHECK(tp.total == 36);
}

TEST_CASE("quartic sporadic branch counts genuine tau = 0 solutions") {
    // 91 = 1 + 9 + 81 = 25 + 30 + 36, so x = {1,9}, y = {5,6} solves the
    // quartic system with tau(x, y) = 0 and no shared coordinate. The
    // tuple is generic with vanishing discriminant.
    CoeffTuple h = CoeffTuple::quartic(-1, 21, 4641);
    Classification c = classify(Family::Quartic, h, 9);
    CHECK(c.verdict == Classification::Verdict::Generic);
    CHECK(c.discriminant == 0);
    CountResult fast = fast_count_T2(9, h);
    CHECK(fast.total == 4);
    REQUIRE(fast.breakdown.size() == 1);
    CHECK(fast.breakdown[0].first == "tau_zero_sporadic");
    CHECK(fast.total == brute_count(SystemSpec::quartic(2, 9), h).total);
    // Shrinking the box below the solutions empties the count.
    CHECK(fast_count_T2(8, h).total == 0);
}

TEST_CASE("quartic divisor enumeration with vanishing linear coefficient") {
    // x = {1,4}, y = {2,3}: equal sums, so x1 is pinned by the quadratic
    // root route rather than the linear one.
    CoeffTuple h = CoeffTuple::quartic(0, 4, 160);
    CountResult fast = fast_count_T2(10, h);
    CHECK(fast.total == 4);
    CHECK(fast.breakdown[0].first == "divisor_enumeration");
    CHECK(fast.total == brute_count(SystemSpec::quartic(2, 10), h).total);
}

TEST_CASE("closed form 2P^2 - P at h = 0 for all P <= 12, fast and brute") {
    for (long long P = 1; P <= 12; ++P) {
        long long expect = 2 * P * P - P;
        CHECK(fast_count_S2(P, CoeffTuple::vino(0, 0, 0)).total == expect);
        CHECK(fast_count_T2(P, CoeffTuple::quartic(0, 0, 0)).total == expect);
        CHECK(brute_count(SystemSpec::vino(2, P), CoeffTuple::vino(0, 0, 0)).total == expect);
        CHECK(brute_count(SystemSpec::quartic(2, P), CoeffTuple::quartic(0, 0, 0)).total ==
              expect);
    }
}

TEST_CASE("fast equals brute over a small exhaustive grid") {
    for (long long P : {4, 6}) {
        for (long a = -2; a <= 2; ++a)
            for (long b = -2; b <= 2; ++b)
                for (long c = -2; c <= 2; ++c) {
                    CoeffTuple hv = CoeffTuple::vino(a, b, c);
                    INFO("vino h = (", a, ",", b, ",", c, ") P = ", P);
                    CountResult f = fast_count_S2(P, hv);
                    CHECK(f.total ==
                          brute_count(SystemSpec::vino(2, P), hv).total);
                    CHECK(breakdown_sum(f) == f.total);
                    CoeffTuple hq = CoeffTuple::quartic(a, b, c);
                    INFO("quartic h = (", a, ",", b, ",", c, ") P = ", P);
                    CountResult g = fast_count_T2(P, hq);
                    CHECK(g.total ==
                          brute_count(SystemSpec::quartic(2, P), hq).total);
                    CHECK(breakdown_sum(g) == g.total);
                }
    }
}

TEST_CASE("equal linear and square sums force equal multisets") {
    const long long P = 6;
    for (long long x1 = 1; x1 <= P; ++x1)
        for (long long x2 = 1; x2 <= P; ++x2)
            for (long long y1 = 1; y1 <= P; ++y1)
                for (long long y2 = 1; y2 <= P; ++y2) {
                    if (x1 + x2 != y1 + y2) continue;
                    if (x1 * x1 + x2 * x2 != y1 * y1 + y2 * y2) continue;
                    bool same = (x1 == y1 && x2 == y2) || (x1 == y2 && x2 == y1);
                    CHECK(same);
                }
}

TEST_CASE("three-pair counters agree with brute enumeration") {
    CHECK(fast_count_S3(4, CoeffTuple::vino(0, 0, 0)).total ==
          brute_count(SystemSpec::vino(3, 4), CoeffTuple::vino(0, 0, 0)).total);
    CHECK(fast_count_S3(6, CoeffTuple::vino(1, 3, 7)).total ==
          brute_count(SystemSpec::vino(3, 6), CoeffTuple::vino(1, 3, 7)).total);
    CHECK(fast_count_S3(6, CoeffTuple::vino(0, 4, 30)).total ==
          brute_count(SystemSpec::vino(3, 6), CoeffTuple::vino(0, 4, 30)).total);
    CHECK(fast_count_T3(5, CoeffTuple::quartic(0, 0, 0)).total ==
          brute_count(SystemSpec::quartic(3, 5), CoeffTuple::quartic(0, 0, 0)).total);
    CHECK(fast_count_T3(5, CoeffTuple::quartic(1, 3, 15)).total ==
          brute_count(SystemSpec::quartic(3, 5), CoeffTuple::quartic(1, 3, 15)).total);
}

TEST_CASE("type of a tuple") {
    std::vector<long long> a = {1, -1, 5};
    CHECK(type_of(a) == 1);
    std::vector<long long> b = {0, 0, 0};
    CHECK(type_of(b) == 1);
    std::vector<long long> c = {1, 2, 0};
    CHECK(type_of(c) == 0);
}

TEST_CASE("type formula equals maximum matching, exhaustively") {
    for (unsigned len = 1; len <= 7; ++len) {
        std::vector<long long> cur(len);
        std::function<void(unsigned)> rec = [&](unsigned pos) {
            if (pos == len) {
                CHECK(type_of(cur) == matching_oracle(cur));
                return;
            }
            for (long long v = -3; v <= 3; ++v) {
                cur[pos] = v;
                rec(pos + 1);
            }
        };
        rec(0);
    }
}

TEST_CASE("type decompositions") {
    TypeDecomposition d = type_decompose(2, 3, 2, CoeffTuple::odd({0, 0}));
    REQUIRE(d.counts.size() == 1);
    CHECK(d.counts.at(1) == 13);  // the all-zero tuple also has type 1
    CHECK(d.i_k == 1);

    TypeDecomposition e = type_decompose(2, 3, 5, CoeffTuple::odd({3, 9}));
    REQUIRE(e.counts.size() == 1);
    CHECK(e.counts.at(0) == 6);  // permutations of (1, 2, 0)
    CHECK(e.i_k == 0);

    TypeDecomposition f = type_decompose(2, 3, 8, CoeffTuple::odd({1, 2}));
    CHECK(f.counts.empty());
    CHECK_FALSE(f.i_k.has_value());
}

TEST_CASE("count_U totals and type sums") {
    CountResult r = count_U(2, 3, 5, CoeffTuple::odd({0, 0}));
    CHECK(r.total == 31);  // 6P + 1
    CHECK(breakdown_sum(r) == r.total);

    CountResult s = count_U(2, 4, 4, CoeffTuple::odd({1, 1}));
    CHECK(breakdown_sum(s) == s.total);
    TypeDecomposition d = type_decompose(2, 4, 4, CoeffTuple::odd({1, 1}));
    long long dsum = 0;
    for (const auto& [j, c] : d.counts) dsum += c;
    CHECK(dsum == s.total);

    // U >= P^{I_k} whenever I_k is defined.
    CountResult t = count_U(3, 4, 3, CoeffTuple::odd({0, 0, 0}));
    TypeDecomposition td = type_decompose(3, 4, 3, CoeffTuple::odd({0, 0, 0}));
    REQUIRE(td.i_k.has_value());
    long long bound = 1;
    for (unsigned i = 0; i < *td.i_k; ++i) bound *= 3;
    CHECK(t.total >= bound);
}

TEST_CASE("minimal representation length r0 and growth exponent") {
    CHECK(r0(2, 5, CoeffTuple::odd({0, 0})) == 0u);
    CHECK(r0(2, 5, CoeffTuple::odd({2, 8})) == 1u);
    CHECK(r0(2, 5, CoeffTuple::odd({3, 9})) == 2u);
    CHECK_FALSE(r0(2, 8, CoeffTuple::odd({1, 2})).has_value());
    CHECK(r0(3, 6, CoeffTuple::odd({3, 9, 33})) == 2u);  // 1 and 2

    CHECK(tau_k(2, CoeffTuple::odd({3, 9}), 5) == 0);
    CHECK(tau_k(3, CoeffTuple::odd({0, 0, 0}), 5) == 2);
    CHECK(tau_k(2, CoeffTuple::odd({2, 8}), 5) == 1);
    CHECK_FALSE(tau_k(2, CoeffTuple::odd({1, 2}), 8).has_value());
}

TEST_CASE("type-0 fast counter") {
    CountResult r = fast_count_type0(2, 5, CoeffTuple::odd({3, 9}));
    CHECK(r.total == 6);

    CountResult z = fast_count_type0(2, 5, CoeffTuple::odd({0, 0}));
    CHECK(z.total == 0);
    CHECK(z.breakdown[0].first == "upsilon_zero");

    CHECK(fast_count_type0(2, 8, CoeffTuple::odd({1, 2})).total == 0);
}

TEST_CASE("type-0 fast counter agrees with the brute decomposition") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 30; ++iter) {
        std::vector<Int> h = {Int((long)(rng() % 13) - 6), Int((long)(rng() % 41) - 20)};
        CoeffTuple t = CoeffTuple::odd(h);
        TypeDecomposition d = type_decompose(2, 3, 6, t);
        long long v0 = d.counts.count(0) ? d.counts.at(0) : 0;
        INFO("h = (", h[0].get_str(), ",", h[1].get_str(), ")");
        CHECK(fast_count_type0(2, 6, t).total == v0);
    }
    for (int iter = 0; iter < 10; ++iter) {
        std::vector<Int> h = {Int((long)(rng() % 9) - 4), Int((long)(rng() % 21) - 10),
                              Int((long)(rng() % 81) - 40)};
        CoeffTuple t = CoeffTuple::odd(h);
        TypeDecomposition d = type_decompose(3, 4, 4, t);
        long long v0 = d.counts.count(0) ? d.counts.at(0) : 0;
        INFO("h = (", h[0].get_str(), ",", h[1].get_str(), ",", h[2].get_str(), ")");
        CHECK(fast_count_type0(3, 4, t).total == v0);
    }
}

TEST_CASE("worker count does not change any count") {
    for (const auto& hv : {CoeffTuple::vino(0, 0, 0), CoeffTuple::vino(1, 3, 7),
                           CoeffTuple::vino(0, 4, 30), CoeffTuple::vino(2, -1, 5)}) {
        CHECK(fast_count_S2(8, hv, 1).total == fast_count_S2(8, hv, 4).total);
        CHECK(brute_count(SystemSpec::vino(2, 8), hv, 1).total ==
              brute_count(SystemSpec::vino(2, 8), hv, 4).total);
    }
    CHECK(count_U(2, 3, 10, CoeffTuple::odd({0, 0}), 1).total ==
          count_U(2, 3, 10, CoeffTuple::odd({0, 0}), 4).total);
    CHECK(fast_count_S3(5, CoeffTuple::vino(1, 3, 7), 1).total ==
          fast_count_S3(5, CoeffTuple::vino(1, 3, 7), 4).total);
}

TEST_CASE("dispatch helper") {
    CHECK(fast_available(Family::Vino, 2));
    CHECK(fast_available(Family::Quartic, 3));
    CHECK_FALSE(fast_available(Family::Vino, 4));
    CHECK_FALSE(fast_available(Family::Odd, 2));
    CHECK(run_count(Family::Odd, 3, 5, CoeffTuple::odd({0, 0}),
                    CountResult::Method::Brute)
              .total == 31);
    CHECK_THROWS_AS(run_count(Family::Odd, 3, 5, CoeffTuple::odd({0, 0}),
                              CountResult::Method::Fast),
                    Error);
}
