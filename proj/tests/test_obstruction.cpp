#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <tuple>

#include <thetalocus/obstruction.hpp>
#include <thetalocus/search.hpp>

using namespace thetalocus;

TEST_CASE("subbundle degree bound: pinned values") {
    CHECK(lms_min_subbundle_degree(1, 9, 6) == 9);  // a line bundle is its own subbundle
    CHECK(lms_min_subbundle_degree(2, 6, 6) == 0);  // g=6, n=3: f = 2(6-1-2)
    CHECK(lms_min_subbundle_degree(2, 2, 4) == -1); // g=4, n=2: f = 2(4-1-2)
    CHECK_THROWS_AS(lms_min_subbundle_degree(0, 5, 4), std::domain_error);
}

TEST_CASE("strange duality instances: pinned verdicts") {
    const ObstructionInstance yes = strange_duality_instance(6, 3, 2);
    CHECK(yes.feasible);
    CHECK(yes.lms_bound == 0);
    CHECK(yes.min_subbundle_degree == 0);
    CHECK(yes.mu == 2);
    REQUIRE(yes.predicted.has_value());
    CHECK(yes.predicted->moduli_rank == 729);
    CHECK(yes.predicted->theta_multiple == 2);
    CHECK(yes.predicted->conditional_on == "strange duality");

    const ObstructionInstance no = strange_duality_instance(4, 2, 2);
    CHECK_FALSE(no.feasible);
    CHECK(no.lms_bound == -1);
    CHECK(no.min_subbundle_degree == -1);
    CHECK_FALSE(no.predicted.has_value());

    const ObstructionInstance k1 = strange_duality_instance(6, 2, 1);
    CHECK(k1.feasible);
    CHECK(k1.lms_bound == 2);

    CHECK_THROWS_AS(strange_duality_instance(6, 5, 2), std::domain_error);
    CHECK_THROWS_AS(strange_duality_instance(6, 1, 2), std::domain_error);
    CHECK_THROWS_AS(strange_duality_instance(6, 3, 0), std::domain_error);
}

TEST_CASE("bound closed form and feasibility equivalence, symbolically") {
    for (long long g = 2; g <= 60; ++g)
        for (long long n = 2; n <= g; ++n) {
            if (g % n != 0)
                continue;
            for (long long k = 1; k <= 12; ++k) {
                const ObstructionInstance inst =
                    strange_duality_instance(g, n, k);
                // (k(g-1-g/n) - (k-1)g)/k == g/k - g/n - 1 as exact rationals
                const Rational closed = make_rational(g, k) -
                                        make_rational(g, n) - 1;
                REQUIRE(inst.lms_bound == closed);
                REQUIRE(inst.feasible ==
                        (make_rational(g, k) >= 1 + make_rational(g, n)));
                REQUIRE(inst.feasible == (inst.lms_bound >= 0));
                REQUIRE(inst.min_subbundle_degree == ceil_of(inst.lms_bound));
                if (inst.feasible) {
                    REQUIRE(inst.predicted->moduli_rank ==
                            boost::multiprecision::pow(
                                BigInt(n), static_cast<unsigned>(g)));
                    REQUIRE(inst.mu == make_rational(g, n));
                }
            }
        }
}

TEST_CASE("k = 1 is always feasible") {
    for (long long g = 2; g <= 40; ++g)
        for (long long n = 2; n <= g; ++n) {
            if (g % n != 0)
                continue;
            const ObstructionInstance inst = strange_duality_instance(g, n, 1);
            REQUIRE(inst.feasible);
            REQUIRE(inst.lms_bound >= make_rational(g, 2) - 1);
        }
}

TEST_CASE("ceiling of a strictly fractional bound") {
    // g=9, n=3, k=2: bound = 9/2 - 3 - 1 = 1/2, so the integer guarantee is 1
    const ObstructionInstance inst = strange_duality_instance(9, 3, 2);
    CHECK(inst.lms_bound == make_rational(1, 2));
    CHECK(inst.min_subbundle_degree == 1);
}

TEST_CASE("scan membership and ordering") {
    const auto instances = sd_scan(6, 2);
    auto contains = [&](long long g, long long n, long long k) {
        for (const auto& inst : instances)
            if (inst.g == g && inst.n == n && inst.k == k)
                return true;
        return false;
    };
    CHECK(contains(6, 3, 2));
    CHECK_FALSE(contains(4, 2, 2));
    CHECK(contains(4, 2, 1));
    for (const auto& inst : instances)
        REQUIRE(inst.feasible);
    for (std::size_t i = 1; i < instances.size(); ++i) {
        const auto key = [](const ObstructionInstance& x) {
            return std::tuple(x.g, x.n, x.k);
        };
        REQUIRE(key(instances[i - 1]) < key(instances[i]));
    }

    const auto tiny = sd_scan(2, 2);
    REQUIRE(tiny.size() == 1);
    CHECK(tiny[0].g == 2);
    CHECK(tiny[0].n == 2);
    CHECK(tiny[0].k == 1);

    // k = 1 rows appear for every (g, n) with n | g
    const auto k1 = sd_scan(12, 2);
    for (long long g = 2; g <= 12; ++g)
        for (long long n = 2; n <= g; ++n)
            if (g % n == 0) {
                bool found = false;
                for (const auto& inst : k1)
                    if (inst.g == g && inst.n == n && inst.k == 1)
                        found = true;
                REQUIRE(found);
            }

    // a k_max of 1 is a valid box: every (g, n, 1) with n | g shows up
    const auto only_k1 = sd_scan(8, 1);
    for (const auto& inst : only_k1)
        REQUIRE(inst.k == 1);
    CHECK(only_k1.size() == 12);  // divisor pairs (g, n) for g in [2, 8]

    CHECK_THROWS_AS(sd_scan(1, 2), std::domain_error);
    CHECK_THROWS_AS(sd_scan(6, 0), std::domain_error);
}

TEST_CASE("theta check on the exterior kernel class: pinned verdicts") {
    const FlThetaVerdict ok = fl_theta_check(4, 12);
    CHECK(ok.holds);
    CHECK(ok.failed.empty());
    CHECK(*ok.moduli_rank == 28);
    CHECK(ok.det->exponent == 7);
    CHECK(ok.det->base_degree == 12);

    const FlThetaVerdict bad = fl_theta_check(6, 16);
    CHECK_FALSE(bad.holds);
    CHECK(bad.mu == make_rational(24, 5));
    REQUIRE(bad.failed.size() == 1);
    CHECK_THAT(bad.failed[0],
               Catch::Matchers::ContainsSubstring("not an integer"));

    const FlThetaVerdict ok2 = fl_theta_check(6, 15);
    CHECK(ok2.holds);
    CHECK(*ok2.moduli_rank == 84);
    CHECK(ok2.det->exponent == 28);  // C(8, 2)

    CHECK_THROWS_AS(fl_theta_check(6, 12), slope_bound_error);
}

TEST_CASE("theta check reports the slope bound failure alone") {
    // g=3, d=9: slope 2*9/6 = 3 is integral but exceeds g-1 = 2.
    const FlThetaVerdict v = fl_theta_check(3, 9);
    CHECK_FALSE(v.holds);
    CHECK(v.mu == 3);
    REQUIRE(v.failed.size() == 1);
    CHECK_THAT(v.failed[0], Catch::Matchers::ContainsSubstring("exceeds g-1"));
}

TEST_CASE("theta check reports both failures at once") {
    const FlThetaVerdict v = fl_theta_check(6, 13);  // slope 39/7, fractional and > 5
    CHECK_FALSE(v.holds);
    REQUIRE(v.failed.size() == 2);
    CHECK_THAT(v.failed[0],
               Catch::Matchers::ContainsSubstring("not an integer"));
    CHECK_THAT(v.failed[1], Catch::Matchers::ContainsSubstring("exceeds g-1"));
}

TEST_CASE("theta check agrees with the feasible-degree search at p = gamma") {
    for (long long g = 4; g <= 10; ++g) {
        const auto feasible = feasible_degrees(g, gamma_index(g));
        const long long d_max = 10 * g * gamma_index(g);
        for (long long d = 2 * g + 1; d <= d_max; ++d) {
            const bool in_search =
                std::find_if(feasible.begin(), feasible.end(),
                             [d](const auto& f) { return f.first == d; }) !=
                feasible.end();
            REQUIRE(fl_theta_check(g, d).holds == in_search);
        }
    }
}
