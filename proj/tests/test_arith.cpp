#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "paucity/arith.hpp"

using namespace paucity;

namespace {

std::vector<std::vector<long long>> tuple_set(const std::vector<DivisorTuple>& ts) {
    std::vector<std::vector<long long>> out;
    for (const auto& t : ts) {
        std::vector<long long> row;
        for (const auto& v : t.entries) row.push_back(to_ll(v));
        out.push_back(row);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Independent oracle: nested loops over signed candidates |d_i| <= |N|,
// keeping tuples whose product is N and whose constraints hold. Values
// that already overshoot the target product cannot recover, so each loop
// level caps at |N| / |prefix product|.
std::vector<std::vector<long long>> brute_tuples(long long N, unsigned m,
                                                 const std::vector<PairSumConstraint>& cons) {
    std::vector<std::vector<long long>> out;
    long long A = std::llabs(N);
    std::vector<long long> cur(m);
    auto rec = [&](auto&& self, unsigned pos, long long prod) -> void {
        if (pos == m) {
            if (prod != N) return;
            for (const auto& c : cons)
                if (cur[c.i] + cur[c.j] != to_ll(c.sum)) return;
            out.push_back(cur);
            return;
        }
        long long cap = A / std::llabs(prod);
        for (long long v = -cap; v <= cap; ++v) {
            if (v == 0) continue;
            cur[pos] = v;
            self(self, pos + 1, prod * v);
        }
    };
    rec(rec, 0, 1);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("factorize basics") {
    FactoredInt f = factorize(12);
    CHECK(f.sign == 1);
    CHECK(f.prime_powers ==
          std::vector<std::pair<Int, unsigned>>{{Int(2), 2u}, {Int(3), 1u}});

    FactoredInt g = factorize(-6);
    CHECK(g.sign == -1);
    CHECK(g.prime_powers ==
          std::vector<std::pair<Int, unsigned>>{{Int(2), 1u}, {Int(3), 1u}});

    FactoredInt h = factorize(48);
    CHECK(h.sign == 1);
    CHECK(h.prime_powers ==
          std::vector<std::pair<Int, unsigned>>{{Int(2), 4u}, {Int(3), 1u}});

    CHECK(factorize(1).prime_powers.empty());
    CHECK(factorize(-1).sign == -1);
    CHECK_THROWS_AS(factorize(0), ZeroInputError);
}

TEST_CASE("factorize handles large semiprimes via rho") {
    Int p("1000003"), q("1000033");
    FactoredInt f = factorize(p * q);
    REQUIRE(f.prime_powers.size() == 2);
    CHECK(f.prime_powers[0].first == p);
    CHECK(f.prime_powers[1].first == q);

    // Two primes just above the trial-division bound, squared.
    Int r("10000019");
    FactoredInt g = factorize(r * r);
    REQUIRE(g.prime_powers.size() == 1);
    CHECK(g.prime_powers[0] == std::pair<Int, unsigned>{r, 2u});
}

TEST_CASE("factorize round-trips on random inputs") {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 300; ++i) {
        long long n = static_cast<long long>(rng() % 2000000) - 1000000;
        if (n == 0) continue;
        FactoredInt f = factorize(to_int(n));
        CHECK(f.value() == to_int(n));
        for (std::size_t j = 1; j < f.prime_powers.size(); ++j)
            CHECK(f.prime_powers[j - 1].first < f.prime_powers[j].first);
        for (const auto& [p, e] : f.prime_powers) {
            CHECK(is_prime(p));
            CHECK(e >= 1);
        }
    }
}

TEST_CASE("divisors") {
    CHECK(divisors(factorize(12)) ==
          std::vector<Int>{1, 2, 3, 4, 6, 12});
    CHECK(divisors(factorize(1)) == std::vector<Int>{1});
    FactoredInt f = factorize(48);
    CHECK(divisors(f).size() == 10);
    CHECK(f.divisor_count() == 10);
}

TEST_CASE("divisor count multiplies exponent-plus-one factors") {
    std::mt19937_64 rng(78);
    for (int i = 0; i < 100; ++i) {
        long long n = 1 + static_cast<long long>(rng() % 100000);
        FactoredInt f = factorize(to_int(n));
        CHECK(divisors(f).size() == f.divisor_count());
    }
}

TEST_CASE("signed tuples, small cases") {
    auto one = signed_tuples(1, 2);
    CHECK(tuple_set(one) == std::vector<std::vector<long long>>{{-1, -1}, {1, 1}});

    auto neg2 = signed_tuples(-2, 2);
    CHECK(tuple_set(neg2) == std::vector<std::vector<long long>>{
                                 {-2, 1}, {-1, 2}, {1, -2}, {2, -1}});
}

TEST_CASE("signed tuples match the brute oracle for all |N| <= 60") {
    for (long long A = 1; A <= 60; ++A) {
        for (long long N : {A, -A}) {
            for (unsigned m : {2u, 3u, 4u}) {
                INFO("N = ", N, ", m = ", m);
                CHECK(tuple_set(signed_tuples(to_int(N), m)) == brute_tuples(N, m, {}));
            }
        }
    }
}

TEST_CASE("signed tuples honor pair-sum constraints") {
    std::vector<PairSumConstraint> cons{{0, 3, Int(0)}, {1, 2, Int(0)}};
    for (long long N : {4, -4, 12, 36, 60}) {
        auto got = tuple_set(signed_tuples(to_int(N), 4, cons));
        auto want = brute_tuples(N, 4, cons);
        CHECK(got == want);
        for (const auto& row : got) {
            CHECK(row[0] + row[3] == 0);
            CHECK(row[1] + row[2] == 0);
        }
    }
    // Nonzero target sums.
    std::vector<PairSumConstraint> cons2{{0, 3, Int(3)}, {1, 2, Int(3)}};
    for (long long N : {4, -18, 30}) {
        CHECK(tuple_set(signed_tuples(to_int(N), 4, cons2)) == brute_tuples(N, 4, cons2));
    }
}

TEST_CASE("signed tuple stream is deterministic and duplicate-free") {
    auto a = signed_tuples(-60, 3);
    auto b = signed_tuples(-60, 3);
    REQUIRE(a.size() == b.size());
    std::set<std::vector<long long>> seen;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::vector<long long> row;
        for (const auto& v : a[i].entries) row.push_back(to_ll(v));
        CHECK(seen.insert(row).second);  // exactly-once
        CHECK(a[i].entries == b[i].entries);
    }
}

TEST_CASE("primality certification") {
    CHECK(is_prime(2));
    CHECK(is_prime(1000003));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(1000001));  // 101 * 9901
    CHECK(is_prime(Int("2305843009213693951")));        // 2^61 - 1
    CHECK_FALSE(is_prime(Int("2305843009213693953")));
}
