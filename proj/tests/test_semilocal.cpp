#include <doctest.h>

#include <cmath>

#include "divsum/semilocal.hpp"
#include "divsum/theta.hpp"

using namespace divsum;

namespace {

LatticeLaw law_t() {
    return LatticeLaw(0, 1, {{0, Rat(1, 2)}, {1, Rat(3, 10)}, {2, Rat(1, 5)}});
}

constexpr long double kPi = 3.14159265358979323846L;

}  // namespace

TEST_CASE("s_of_t") {
    CouplingSpec spec = coupling_from_theta(law_t(), Rat(2, 5));
    SUBCASE("s(0) is the total mu mass") {
        const auto v = s_of_t(spec.mu(), 0, 1, 0.0L);
        CHECK(std::abs(v - std::complex<long double>{0.6L, 0.0L}) < 1e-18L);
    }
    SUBCASE("bernoulli default: s(t) = (3/10)(1 + e^{2 i pi t})") {
        CouplingSpec bern = coupling_from_theta(LatticeLaw::bernoulli_half(), Rat(2, 5));
        for (long double t : {0.2L, 0.5L, 0.77L}) {
            const auto expected =
                0.3L * (1.0L + std::exp(std::complex<long double>{0.0L, 2.0L * kPi * t}));
            CHECK(std::abs(s_of_t(bern.mu(), 0, 1, t) - expected) < 1e-17L);
        }
    }
    SUBCASE("T at half-integer t alternates signs") {
        const auto v = s_of_t(spec.mu(), 0, 1, 0.5L);
        // 19/50 - 1/10 + 3/25 = 2/5
        CHECK(std::abs(v - std::complex<long double>{0.4L, 0.0L}) < 1e-17L);
    }
}

TEST_CASE("per-factor symbol") {
    CouplingSpec spec = coupling_from_theta(law_t(), Rat(2, 5));
    SUBCASE("a(0) = vartheta + mu = 1") {
        CHECK(std::abs(per_factor_symbol(spec, 0.0L) -
                       std::complex<long double>{1.0L, 0.0L}) < 1e-15L);
    }
    SUBCASE("bernoulli structure: a(t) = (2/5) e^{i pi t - pi^2 t^2/2} + (3/10)(1 + e^{2 i pi t})") {
        CouplingSpec bern = coupling_from_theta(LatticeLaw::bernoulli_half(), Rat(2, 5));
        for (long double t : {0.1L, 0.5L, 0.83L}) {
            const auto expected =
                0.4L * std::exp(std::complex<long double>{-kPi * kPi * t * t / 2.0L,
                                                          kPi * t}) +
                0.3L * (1.0L + std::exp(std::complex<long double>{0.0L, 2.0L * kPi * t}));
            CHECK(std::abs(per_factor_symbol(bern, t) - expected) < 1e-16L);
        }
    }
    SUBCASE("|a(t)| stays below 1.3 on a dense grid") {
        for (int i = 0; i < 1000; ++i) {
            const long double t = static_cast<long double>(i) / 1000.0L;
            CHECK(std::abs(per_factor_symbol(spec, t)) <= 1.3L);
        }
    }
}

TEST_CASE("approximant") {
    CouplingSpec bern = coupling_from_theta(LatticeLaw::bernoulli_half(), Rat(2, 5));
    SUBCASE("d = 2 collapses to 1/2 with tiny error") {
        const long double a = approximant(bern, {20, 2, 0});
        CHECK(std::abs(a - 0.5L) < 1e-15L);
    }
    SUBCASE("drift periodicity") {
        CouplingSpec spec = coupling_from_theta(law_t(), Rat(2, 5));
        CHECK(approximant(spec, {50, 7, 3}) == approximant(spec, {50, 7, 10}));
    }
    SUBCASE("T law matches the exact probability at n = 200") {
        CouplingSpec spec = coupling_from_theta(law_t(), Rat(2, 5));
        const DivisibilityQuery q{200, 7, 3};
        const long double exact = to_ld(prob_divisible_convolution(spec.base(), q));
        CHECK(std::abs(approximant(spec, q) - exact) < 1e-4L);
    }
    SUBCASE("bernoulli specialization: full extraction reduces to the theta sum") {
        CouplingSpec full = coupling_from_tau(LatticeLaw::bernoulli_half(), {{0, Rat(1)}});
        for (long long d : {2, 3, 5, 11, 29})
            for (long long n : {8, 40, 150})
                for (long long u : {0, 3}) {
                    const long double via_theta =
                        theta_u(d, n, u).value / static_cast<long double>(d);
                    const long double tail = theta_tail_bound(d, std::max<long long>(n, 2))
                                                 .remainder *
                                             2.0L / static_cast<long double>(d);
                    const long double approx = approximant(full, {n, d, u});
                    CHECK(std::abs(approx - via_theta) <= tail + 1e-13L);
                }
    }
}

TEST_CASE("discrepancy scan") {
    SUBCASE("bernoulli at d = 2 only: errors vanish for n >= 60") {
        CouplingSpec bern = coupling_from_theta(LatticeLaw::bernoulli_half(), Rat(2, 5));
        ScanSummary scan = discrepancy_scan(bern, {60, 80, 100}, 2, 2, {0, 1}, 0.9);
        for (const auto& rec : scan.records) CHECK(rec.abs_error <= 1e-15L);
    }
    SUBCASE("records carry the bound terms and sup tracking") {
        CouplingSpec spec = coupling_from_theta(law_t(), Rat(2, 5));
        ScanSummary scan = discrepancy_scan(spec, {50, 100}, 2, 6, {0, 3}, 0.85, 2);
        CHECK(scan.records.size() == 2 * 5 * 2);
        CHECK(scan.sup_by_n.at(100) <= scan.sup_by_n.at(50));
        for (const auto& rec : scan.records) {
            CHECK(rec.abs_error == std::abs(to_ld(rec.exact) - rec.approx));
            CHECK(rec.bound_smooth > 0.0L);
            CHECK(rec.bound_chernoff > 0.0L);
        }
        CHECK(scan.c_emp > 0.0);
        // deterministic under a different worker count
        ScanSummary scan1 = discrepancy_scan(spec, {50, 100}, 2, 6, {0, 3}, 0.85, 1);
        REQUIRE(scan1.records.size() == scan.records.size());
        for (std::size_t i = 0; i < scan.records.size(); ++i) {
            CHECK(scan.records[i].exact == scan1.records[i].exact);
            CHECK(scan.records[i].approx == scan1.records[i].approx);
        }
    }
    SUBCASE("empty d range yields no records") {
        CouplingSpec spec = coupling_from_theta(law_t(), Rat(2, 5));
        ScanSummary scan = discrepancy_scan(spec, {10}, 2, 1, {0}, 0.85);
        CHECK(scan.records.empty());
    }
    SUBCASE("rho must exceed 1 - vartheta") {
        CouplingSpec spec = coupling_from_theta(law_t(), Rat(2, 5));
        CHECK_THROWS_AS(discrepancy_scan(spec, {10}, 2, 4, {0}, 0.5), validation_error);
    }
}
