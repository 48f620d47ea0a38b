#include <doctest.h>

#include <random>

#include "divsum/exactprob.hpp"
#include "test_helpers.hpp"

using namespace divsum;

namespace {

LatticeLaw law_t() {
    return LatticeLaw(0, 1, {{0, Rat(1, 2)}, {1, Rat(3, 10)}, {2, Rat(1, 5)}});
}

}  // namespace

TEST_CASE("query validation") {
    CHECK_THROWS_AS(prob_divisible_convolution(law_t(), {0, 3, 0}), validation_error);
    CHECK_THROWS_AS(prob_divisible_convolution(law_t(), {2, 1, 0}), validation_error);
    CHECK_THROWS_AS(prob_divisible_convolution(law_t(), {2, 3, -1}), validation_error);
}

TEST_CASE("enumerate oracle") {
    const LatticeLaw bern = LatticeLaw::bernoulli_half();
    CHECK(enumerate_oracle(bern, {4, 3, 0}) == Rat(5, 16));
    CHECK(enumerate_oracle(bern, {4, 3, 1}) == Rat(3, 8));
    CHECK(enumerate_oracle(bern, {2, 3, 0}) == Rat(1, 4));
    CHECK(enumerate_oracle(law_t(), {1, 2, 0}) == Rat(7, 10));
    CHECK_THROWS_AS(enumerate_oracle(law_t(), {30, 3, 0}, 1000), enumeration_cap_error);
}

TEST_CASE("convolution route") {
    const LatticeLaw bern = LatticeLaw::bernoulli_half();
    SUBCASE("matches enumeration exactly on random instances") {
        std::mt19937_64 gen(41);
        std::uniform_int_distribution<long long> d_dist(2, 20);
        std::uniform_int_distribution<long long> u_dist(0, 10);
        for (int rep = 0; rep < 40; ++rep) {
            LatticeLaw law = testing::random_law(gen, 4, false);
            const long long n = 1 + static_cast<long long>(gen() % 7);
            const DivisibilityQuery q{n, d_dist(gen), u_dist(gen)};
            CHECK(prob_divisible_convolution(law, q) == enumerate_oracle(law, q));
        }
    }
    SUBCASE("residue completeness") {
        std::mt19937_64 gen(43);
        for (int rep = 0; rep < 20; ++rep) {
            LatticeLaw law = testing::random_law(gen, 5, false);
            ResidueDistribution dist(law, 9, 7);
            CHECK(dist.mass_complete());
            Rat total = 0;
            for (long long r = 0; r < 7; ++r) total += dist.prob_residue(r);
            CHECK(total == Rat(1));
        }
    }
    SUBCASE("u enters mod d") {
        CHECK(prob_divisible_convolution(bern, {6, 5, 2}) ==
              prob_divisible_convolution(bern, {6, 5, 7}));
        CHECK(prob_divisible_convolution(law_t(), {5, 4, 1}) ==
              prob_divisible_convolution(law_t(), {5, 4, 9}));
    }
    SUBCASE("walker agrees with square-and-multiply") {
        const LatticeLaw law = law_t();
        ResidueWalker walker(law, 7);
        for (long long n = 1; n <= 40; ++n) {
            walker.step();
            if (n % 10 == 0 || n < 4) {
                ResidueDistribution dist(law, n, 7);
                CHECK(walker.prob_divisible(3) == dist.prob_divisible(3));
            }
        }
        CHECK(walker.n() == 40);
    }
}

TEST_CASE("character-sum route") {
    const LatticeLaw bern = LatticeLaw::bernoulli_half();
    SUBCASE("bernoulli spot values") {
        CHECK(std::abs(prob_divisible_charsum(bern, {2, 3, 0}) - 0.25L) < 1e-15L);
        for (long long n : {1, 5, 12})
            for (long long u : {0, 3})
                CHECK(std::abs(prob_divisible_charsum(bern, {n, 2, u}) - 0.5L) < 1e-15L);
    }
    SUBCASE("agrees with convolution on random instances") {
        std::mt19937_64 gen(47);
        std::uniform_int_distribution<long long> d_dist(2, 20);
        std::uniform_int_distribution<long long> u_dist(0, 1000000);
        for (int rep = 0; rep < 40; ++rep) {
            LatticeLaw law = testing::random_law(gen, 5, false);
            const long long n = 1 + static_cast<long long>(gen() % 12);
            const DivisibilityQuery q{n, d_dist(gen), u_dist(gen)};
            const long double exact = to_ld(prob_divisible_convolution(law, q));
            CHECK(std::abs(prob_divisible_charsum(law, q) - exact) < 1e-11L);
        }
    }
}

TEST_CASE("bernoulli closed form") {
    CHECK(std::abs(bernoulli_closed_form({4, 3, 0}) - 0.3125L) < 1e-16L);
    CHECK(std::abs(bernoulli_closed_form({4, 3, 1}) - 0.375L) < 1e-16L);
    CHECK(bernoulli_closed_form({9, 2, 0}) == 0.5L);
    CHECK(bernoulli_closed_form({9, 2, 123456}) == 0.5L);

    SUBCASE("equals the character sum for the fair Bernoulli") {
        const LatticeLaw bern = LatticeLaw::bernoulli_half();
        std::mt19937_64 gen(53);
        for (int rep = 0; rep < 50; ++rep) {
            const DivisibilityQuery q{1 + static_cast<long long>(gen() % 64),
                                      2 + static_cast<long long>(gen() % 39),
                                      static_cast<long long>(gen() % 1000001)};
            CHECK(std::abs(bernoulli_closed_form(q) - prob_divisible_charsum(bern, q)) <
                  1e-12L);
        }
    }
}

TEST_CASE("gaussian point mass") {
    CHECK(llt_gaussian_pointmass(100, 50) == doctest::Approx(0.0797885).epsilon(1e-5));
    CHECK(llt_gaussian_pointmass(64, 32) ==
          doctest::Approx(std::sqrt(2.0 / (64.0 * 3.14159265358979))).epsilon(1e-12));
    SUBCASE("symmetry about n/2") {
        for (long long z : {0, 10, 37})
            CHECK(llt_gaussian_pointmass(100, z) ==
                  doctest::Approx(llt_gaussian_pointmass(100, 100 - z)).epsilon(1e-15));
    }
}

TEST_CASE("probabilities stay in [0, 1]") {
    std::mt19937_64 gen(59);
    for (int rep = 0; rep < 30; ++rep) {
        LatticeLaw law = testing::random_law(gen, 4, false);
        const DivisibilityQuery q{1 + static_cast<long long>(gen() % 20),
                                  2 + static_cast<long long>(gen() % 30),
                                  static_cast<long long>(gen() % 50)};
        const Rat p = prob_divisible_convolution(law, q);
        CHECK(p >= 0);
        CHECK(p <= 1);
        const long double c = prob_divisible_charsum(law, q);
        CHECK(c >= 0.0L);
        CHECK(c <= 1.0L);
    }
}
