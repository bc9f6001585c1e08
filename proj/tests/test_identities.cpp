#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "paucity/identities.hpp"

using namespace paucity;

namespace {

MultiPoly var(std::size_t nvars, std::size_t i) { return MultiPoly::variable(nvars, i); }

MultiPoly pair_product() {
    auto v = [](std::size_t i) { return MultiPoly::variable(4, i); };
    return (v(0) - v(2)) * (v(0) - v(3)) * (v(1) - v(2)) * (v(1) - v(3));
}

}  // namespace

TEST_CASE("s_j, sigma_j and tau building blocks") {
    CHECK(sj_poly(1) == var(2, 0) - var(2, 1));
    CHECK(sj_poly(3) == var(2, 0).pow(3) - var(2, 1).pow(3));
    std::vector<Int> same = {2, 2};
    CHECK(sj_poly(2).eval(same) == 0);

    std::vector<Int> ones = {1, 1, 1, 1};
    CHECK(sigma_poly(1).eval(ones) == 0);
    std::vector<Int> pt = {1, 4, 2, 3};
    CHECK(sigma_poly(3).eval(pt) == 30);  // 1 + 64 - 8 - 27

    std::vector<Int> sym = {1, 2, 1, 2};
    CHECK(tau_poly().eval(sym) == 0);
    std::vector<Int> swapped = {1, 2, 2, 1};
    CHECK(tau_poly().eval(swapped) == 0);
    CHECK(tau_poly().eval(pt) == 2);  // 21 - 19
}

TEST_CASE("all four multiplicative identities certify") {
    for (const auto& report : verify_all_identities()) {
        INFO(report.name);
        CHECK(report.holds);
        CHECK(report.residual.is_zero());
    }
}

TEST_CASE("perturbed constant breaks the cubic multiplicative identity") {
    MultiPoly s1 = sigma_poly(1), s2 = sigma_poly(2), s3 = sigma_poly(3);
    MultiPoly lhs = s1.pow(4) + Int(3) * s2.pow(2) - Int(4) * s1 * s3;
    MultiPoly residual = lhs - Int(13) * pair_product();
    CHECK_FALSE(residual.is_zero());
}

TEST_CASE("psi and phi discriminants") {
    CHECK(psi(0, 0, 0) == 0);
    CHECK(psi(1, 3, 7) == 0);   // structured pair (2, 1)
    CHECK(psi(0, 4, 30) == 48);

    CHECK(phi(0, 0, 0) == 0);
    CHECK(phi(1, 3, 15) == 0);  // structured pair (2, 1)
    CHECK(phi(1, 1, 1) == 0);   // vanishes without a structured pair
}

TEST_CASE("psi and phi agree with their symbolic polynomials") {
    // Two routes, one answer: direct arithmetic vs evaluating the
    // expanded discriminant polynomial in (h1, h2, hlast).
    MultiPoly h1 = var(3, 0), h2 = var(3, 1), hl = var(3, 2);
    MultiPoly psi_sym = h1.pow(4) + Int(3) * h2.pow(2) - Int(4) * h1 * hl;
    MultiPoly phi_sym = h2.pow(3) + h1.pow(4) * h2 - Int(2) * h1.pow(2) * hl;
    std::mt19937_64 rng(321);
    for (int i = 0; i < 100; ++i) {
        std::vector<Int> h = {Int((long)(rng() % 2001) - 1000),
                              Int((long)(rng() % 2001) - 1000),
                              Int((long)(rng() % 2001) - 1000)};
        CHECK(psi(h[0], h[1], h[2]) == psi_sym.eval(h));
        CHECK(phi(h[0], h[1], h[2]) == phi_sym.eval(h));
    }
}

TEST_CASE("relation polynomial for kappa = 2") {
    const UpsilonData& u = construct_upsilon(2);
    CHECK(u.kernel_dim == 1);
    CHECK(u.upsilon == var(2, 0).pow(3) - var(2, 1));
    CHECK(u.c_constant == 3);
}

TEST_CASE("relation polynomial for kappa = 3 matches the hand solve") {
    // Expanding t1 = e1, t2 = e1^3 - 3 e1 e2, t3 = e1^5 - 5 e1^3 e2 + 5 e1 e2^2
    // and equating coefficients of e1^6, e1^4 e2, e1^2 e2^2 to zero gives
    // (1, -5, -5, 9) on (z1^6, z1^3 z2, z2^2, z1 z3).
    const UpsilonData& u = construct_upsilon(3);
    CHECK(u.kernel_dim == 1);
    MultiPoly expect = var(3, 0).pow(6) - Int(5) * var(3, 0).pow(3) * var(3, 1) -
                       Int(5) * var(3, 1).pow(2) + Int(9) * var(3, 0) * var(3, 2);
    CHECK(u.upsilon == expect);
    CHECK(u.c_constant == 45);
}

TEST_CASE("relation certificates for kappa = 2..5") {
    for (unsigned kappa = 2; kappa <= 5; ++kappa) {
        const UpsilonData& u = construct_upsilon(kappa);
        INFO("kappa = ", kappa);
        CHECK(u.kernel_dim == 1);

        // Weighted-homogeneous of degree kappa(kappa+1)/2.
        auto wd = weighted_degree(u.upsilon, odd_weights(kappa));
        REQUIRE(wd.degree.has_value());
        CHECK(*wd.degree == kappa * (kappa + 1) / 2);
        CHECK(wd.homogeneous);

        // Primitive with positive coefficient on z1^{kappa(kappa+1)/2}.
        CHECK(u.upsilon.content() == 1);
        CHECK(u.upsilon.coeff(Monomial::var(kappa, 0, kappa * (kappa + 1) / 2)) > 0);

        // Vanishes identically on the odd power sums of kappa-1 variables.
        std::map<std::size_t, MultiPoly> on_t;
        for (unsigned j = 1; j <= kappa; ++j)
            on_t.emplace(j - 1, odd_power_sum(kappa - 1, j));
        CHECK(u.upsilon.substitute(on_t).is_zero());

        // On kappa+1 variables it factors as C * prod (x_i + x_j), exactly.
        std::map<std::size_t, MultiPoly> on_tau;
        for (unsigned j = 1; j <= kappa; ++j)
            on_tau.emplace(j - 1, odd_power_sum(kappa + 1, j));
        MultiPoly composed = u.upsilon.substitute(on_tau);
        MultiPoly prod = MultiPoly::constant(kappa + 1, u.c_constant);
        for (std::size_t i = 0; i < kappa + 1; ++i)
            for (std::size_t j = i + 1; j < kappa + 1; ++j)
                prod = prod * (MultiPoly::variable(kappa + 1, i) +
                               MultiPoly::variable(kappa + 1, j));
        CHECK(composed == prod);
    }
}

TEST_CASE("kappa = 4 relation annihilates power sums of three variables") {
    const UpsilonData& u = construct_upsilon(4);
    auto wd = weighted_degree(u.upsilon, odd_weights(4));
    CHECK(wd.degree == 10);
    CHECK(wd.homogeneous);
    std::map<std::size_t, MultiPoly> on_t;
    for (unsigned j = 1; j <= 4; ++j) on_t.emplace(j - 1, odd_power_sum(3, j));
    CHECK(u.upsilon.substitute(on_t).is_zero());
}

TEST_CASE("relation value vanishes numerically when some x_i + x_j = 0") {
    std::mt19937_64 rng(654);
    for (unsigned kappa : {2u, 3u, 4u}) {
        for (int iter = 0; iter < 20; ++iter) {
            std::vector<Int> x(kappa + 1);
            for (auto& v : x) v = Int((long)(rng() % 41) - 20);
            x[1] = -x[0];  // force a vanishing pair sum
            std::vector<Int> h(kappa);
            for (unsigned j = 1; j <= kappa; ++j) {
                Int sum = 0;
                for (const auto& v : x) sum += ipow(v, 2 * j - 1);
                h[j - 1] = sum;
            }
            CHECK(upsilon_value(kappa, h) == 0);
        }
    }
}

TEST_CASE("upsilon_value examples") {
    std::vector<Int> h23 = {3, 9};
    CHECK(upsilon_value(2, h23) == 18);
    std::vector<Int> z2 = {0, 0};
    CHECK(upsilon_value(2, z2) == 0);
    std::vector<Int> z3 = {0, 0, 0};
    CHECK(upsilon_value(3, z3) == 0);
}

TEST_CASE("upsilon JSON and text forms") {
    const UpsilonData& u = construct_upsilon(2);
    CHECK(upsilon_text(u) == "z1^3 - z2");
    auto j = upsilon_json(u);
    CHECK(j["kappa"] == 2);
    CHECK(j["c_constant"] == "3");
    CHECK(j["terms"].size() == 2);
    CHECK(j["terms"][0]["alpha"] == std::vector<uint32_t>{3, 0});
    CHECK(j["terms"][0]["coeff"] == "1");
    CHECK(j["terms"][1]["alpha"] == std::vector<uint32_t>{0, 1});
    CHECK(j["terms"][1]["coeff"] == "-1");
}
