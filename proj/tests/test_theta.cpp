#include <doctest.h>

#include <cmath>

#include "divsum/theta.hpp"
#include "divsum/rational.hpp"

using namespace divsum;

TEST_CASE("theta_u basics") {
    SUBCASE("theta(2, 100) is 1 to within the first correction") {
        ThetaValue tv = theta_u(2, 100, 0);
        CHECK(std::abs(tv.value - 1.0L) < 1e-50L);
        CHECK(tv.truncation_radius >= 1);
    }
    SUBCASE("drift periodicity u -> u + d") {
        for (long long d : {3, 7, 12}) {
            ThetaValue a = theta_u(d, 25, 4);
            ThetaValue b = theta_u(d, 25, 4 + d);
            CHECK(a.value == b.value);
        }
    }
    SUBCASE("certified truncation: radius + 5 changes nothing above tol") {
        for (long long d : {5, 17, 40}) {
            for (long long n : {4, 50, 300}) {
                const long double tol = 1e-16L;
                ThetaValue tv = theta_u(d, n, 3, tol);
                // re-sum with a larger radius by tightening the tolerance
                ThetaValue finer = theta_u(d, n, 3, tol * 1e-12L);
                CHECK(finer.truncation_radius > tv.truncation_radius);
                CHECK(std::abs(finer.value - tv.value) < tol);
                CHECK(tv.tail_bound < tol);
            }
        }
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(theta_u(1, 10, 0), validation_error);
        CHECK_THROWS_AS(theta_u(3, 0, 0), validation_error);
        CHECK_THROWS_AS(theta_u(3, 10, 0, 0.0L), validation_error);
    }
}

TEST_CASE("gaussian residue sum bridges to theta") {
    SUBCASE("u = 0 identity") {
        for (long long d : {2, 5, 10, 33}) {
            for (long long n : {2, 10, 100}) {
                const long double lhs = theta_u(d, n, 0).value / static_cast<long double>(d);
                CHECK(std::abs(lhs - gaussian_residue_sum(d, n, 0)) < 1e-12L);
            }
        }
    }
    SUBCASE("d = 2 mass on the even integers is about 1/2") {
        CHECK(gaussian_residue_sum(2, 40, 0) == doctest::Approx(0.5).epsilon(1e-6));
    }
    SUBCASE("drifted identity") {
        for (long long u : {1, 7, 29}) {
            for (long long d : {3, 11, 24}) {
                const long double lhs =
                    theta_u(d, 60, u).value / static_cast<long double>(d);
                CHECK(std::abs(lhs - gaussian_residue_sum(d, 60, u)) < 1e-12L);
            }
        }
    }
}

TEST_CASE("poisson summation check") {
    SUBCASE("x = 1, delta = 0") {
        PoissonPair p = poisson_check(1.0L, 0.0L);
        CHECK(p.lhs == doctest::Approx(1.0864348112133080).epsilon(1e-14));
        CHECK(p.rhs == doctest::Approx(1.0864348112133080).epsilon(1e-14));
    }
    SUBCASE("delta = 1 reduces to delta = 0") {
        PoissonPair a = poisson_check(2.5L, 0.0L);
        PoissonPair b = poisson_check(2.5L, 1.0L);
        CHECK(std::abs(a.lhs - b.lhs) < 1e-15L);
        CHECK(std::abs(a.rhs - b.rhs) < 1e-15L);
    }
    SUBCASE("identity over the grid") {
        for (long double x : {0.1L, 0.5L, 1.0L, 3.0L, 10.0L, 100.0L})
            for (long double delta : {0.0L, 0.25L, 0.5L, 0.75L}) {
                PoissonPair p = poisson_check(x, delta);
                CHECK(std::abs(p.lhs - p.rhs) <= 1e-12L);
            }
    }
}

TEST_CASE("theta tail remainder") {
    SUBCASE("d = 2, n = 10") {
        ThetaTail t = theta_tail_bound(2, 10);
        CHECK(t.remainder == doctest::Approx(4.38638338213259e-6).epsilon(1e-10));
    }
    SUBCASE("d = 100, n = 8 stays far below the reference") {
        ThetaTail t = theta_tail_bound(100, 8);
        CHECK(t.remainder == doctest::Approx(1.5275521117680e-4).epsilon(1e-9));
        CHECK(t.reference == doctest::Approx(0.33399718598613).epsilon(1e-12));
        CHECK(t.ratio < 1e-2);
    }
    SUBCASE("decreasing in n for fixed d") {
        for (long long d : {2, 9, 50}) {
            long double prev = theta_tail_bound(d, 4).remainder;
            for (long long n : {8, 16, 64, 256}) {
                const long double cur = theta_tail_bound(d, n).remainder;
                CHECK(cur <= prev);
                prev = cur;
            }
        }
    }
}
