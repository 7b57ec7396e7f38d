#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include "tracelab/binomials.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("real binomial coefficients", "[binomials]") {
    CHECK(tracelab::binom_real(10.0L, 3) == 120.0L);
    CHECK(tracelab::binom_real(3.5L, 2) == 4.375L);
    CHECK(tracelab::binom_real(7.25L, 0) == 1.0L);
    CHECK(tracelab::binom_real(-3.0L, 0) == 1.0L);
    CHECK(tracelab::binom_real(2.0L, 5) == 0.0L);
    CHECK(tracelab::binom_real(-1.0L, 2) == 1.0L);
    CHECK_THROWS_AS(tracelab::binom_real(5.0L, -1), std::invalid_argument);

    // Near the top of the long double range the product form still answers.
    long double big = tracelab::binom_real(1e2400L, 2);
    CHECK(std::isfinite(big));
    CHECK_THAT(static_cast<double>(std::log2(big)),
               WithinRel(static_cast<double>(2.0L * std::log2(1e2400L) - 1.0L), 1e-9));

    // Values past it saturate through the log route with the sign intact:
    // C(-1e2470, 3) has three negative factors.
    long double sat = tracelab::binom_real(1e2470L, 2);
    CHECK(std::isinf(sat));
    CHECK(sat > 0.0L);
    long double neg = tracelab::binom_real(-1e2470L, 3);
    CHECK(std::isinf(neg));
    CHECK(neg < 0.0L);
}

TEST_CASE("binomial inversion", "[binomials]") {
    CHECK_THAT(tracelab::invert_binomial(120.0, 3), WithinAbs(10.0, 1e-9));
    // C(y,2) = 7 at y = (1 + sqrt(57)) / 2.
    CHECK_THAT(tracelab::invert_binomial(7.0, 2),
               WithinAbs(0.5 * (1.0 + std::sqrt(57.0)), 1e-12));
    CHECK_THAT(tracelab::invert_binomial(0.0, 3), WithinAbs(2.0, 1e-12));

    for (int k = 1; k <= 6; ++k) {
        for (double y : {static_cast<double>(k), k + 0.5, 3.0 * k, 17.25}) {
            double m = static_cast<double>(tracelab::binom_real(y, k));
            CHECK_THAT(tracelab::invert_binomial(m, k), WithinAbs(y, 1e-7));
        }
    }

    CHECK_THROWS_AS(tracelab::invert_binomial(5.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(tracelab::invert_binomial(-1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(tracelab::invert_binomial(std::numeric_limits<double>::infinity(), 2),
                    std::invalid_argument);
}

TEST_CASE("binary entropy", "[binomials]") {
    CHECK_THAT(tracelab::binary_entropy(0.5), WithinAbs(1.0, 1e-15));
    CHECK(tracelab::binary_entropy(0.0) == 0.0);
    CHECK(tracelab::binary_entropy(1.0) == 0.0);
    for (double z : {0.1, 0.25, 0.37, 0.49})
        CHECK_THAT(tracelab::binary_entropy(z),
                   WithinAbs(tracelab::binary_entropy(1.0 - z), 1e-15));
    CHECK_THROWS_AS(tracelab::binary_entropy(-0.01), std::invalid_argument);
    CHECK_THROWS_AS(tracelab::binary_entropy(1.01), std::invalid_argument);
}

TEST_CASE("trace exponents mu and lambda", "[binomials]") {
    CHECK_THAT(tracelab::mu_exponent(2.0, 0.5), WithinAbs(1.706695, 1e-6));
    CHECK_THAT(2.0 * tracelab::lambda_exponent(0.5), WithinAbs(1.1699250014, 1e-6));
    CHECK_THAT(tracelab::mu_exponent(1.0, 1.0), WithinAbs(1.0, 1e-12));
    CHECK_THAT(tracelab::lambda_exponent(1.0), WithinAbs(1.0, 1e-12));
    // Above the seam lambda is just log2(1+alpha).
    CHECK_THAT(tracelab::lambda_exponent(0.5), WithinAbs(std::log2(1.5), 1e-15));
    // Below it the entropy divisor kicks in.
    double l = std::log2(1.25);
    CHECK_THAT(tracelab::lambda_exponent(0.25),
               WithinAbs(l / tracelab::binary_entropy(l), 1e-15));
    // Continuity across the seam at alpha = sqrt(2) - 1.
    double seam = std::sqrt(2.0) - 1.0;
    CHECK_THAT(tracelab::lambda_exponent(seam - 1e-9),
               WithinAbs(tracelab::lambda_exponent(seam + 1e-9), 1e-6));

    for (double r : {1.0, 1.5, 2.0, 3.0, 7.0}) {
        for (double alpha : {0.1, 0.3, std::sqrt(2.0) - 1.0, 0.7, 1.0}) {
            double mu = tracelab::mu_exponent(r, alpha);
            double l2 = std::log2(1.0 + alpha);
            CHECK_THAT(mu * (2.0 - l2), WithinAbs(r + 1.0 - l2, 1e-9));
            CHECK(mu >= 1.0 - 1e-12);
            CHECK(mu <= r + 1e-12);
            CHECK(tracelab::lambda_exponent(alpha) * r <= mu + 1e-12);
        }
    }

    CHECK_THROWS_AS(tracelab::mu_exponent(0.5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(tracelab::mu_exponent(2.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(tracelab::mu_exponent(2.0, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(tracelab::mu_exponent(2.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(tracelab::lambda_exponent(0.0), std::invalid_argument);
    CHECK_THROWS_AS(tracelab::lambda_exponent(1.2), std::invalid_argument);
}

TEST_CASE("weighted binomial sum lower bound", "[binomials]") {
    // gamma = 1 collapses to sum C(x,i) >= (1/4) sum C(x,i); at x = k = 5
    // the sum is the full 2^5.
    auto full = tracelab::sum_binom_gamma_lower(5, 5.0, 1.0);
    CHECK(full.lhs == 32.0);
    CHECK(full.rhs == 8.0);
    CHECK(full.holds);

    auto mid = tracelab::sum_binom_gamma_lower(3, 8.0, 0.5);
    CHECK(mid.lhs == 19.0);  // 1 + 8/2 + 28/4 + 56/8
    CHECK_THAT(mid.rhs, WithinRel(0.25 * std::pow(93.0, std::log2(1.5)), 1e-12));
    CHECK(mid.holds);

    auto zero = tracelab::sum_binom_gamma_lower(4, 9.0, 0.0);
    CHECK(zero.lhs == 1.0);
    CHECK(zero.rhs == 0.25);
    CHECK(zero.holds);

    CHECK_THROWS_AS(tracelab::sum_binom_gamma_lower(0, 5.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(tracelab::sum_binom_gamma_lower(3, 8.0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(tracelab::sum_binom_gamma_lower(3, 8.0, 1.1), std::invalid_argument);
    CHECK_THROWS_AS(tracelab::sum_binom_gamma_lower(3, 2.5, 0.5), std::invalid_argument);
}

TEST_CASE("newton partial sums sit between powers of two", "[binomials]") {
    auto b = tracelab::newton_partial_sum_bounds(3.5);
    CHECK_THAT(b.sum, WithinAbs(11.0625, 1e-12));
    CHECK_THAT(b.lower, WithinRel(std::exp2(2.5), 1e-14));
    CHECK_THAT(b.upper, WithinRel(std::exp2(3.5), 1e-14));
    CHECK(b.holds);

    // Integer x hits the upper bound with equality, which still counts.
    auto whole = tracelab::newton_partial_sum_bounds(4.0);
    CHECK(whole.sum == 16.0);
    CHECK(whole.holds);

    CHECK_THROWS_AS(tracelab::newton_partial_sum_bounds(0.0), std::invalid_argument);
    CHECK_THROWS_AS(tracelab::newton_partial_sum_bounds(-1.0), std::invalid_argument);
}

TEST_CASE("binomial ratio lower bound", "[binomials]") {
    auto c = tracelab::binom_ratio_lower(20.0, 10.0, 5, 3, 1);
    CHECK_THAT(c.lhs, WithinRel(120.0 / 252.0, 1e-12));
    CHECK_THAT(c.rhs, WithinRel((190.0 / 4845.0) / 3.0, 1e-12));
    CHECK(c.holds);

    // delta = 0 with x = y degenerates to equality.
    auto eq = tracelab::binom_ratio_lower(10.0, 10.0, 4, 2, 0);
    CHECK_THAT(eq.lhs, WithinRel(eq.rhs, 1e-12));
    CHECK(eq.holds);

    CHECK_THROWS_AS(tracelab::binom_ratio_lower(20.0, 10.0, 5, 3, -1), std::invalid_argument);
    CHECK_THROWS_AS(tracelab::binom_ratio_lower(20.0, 10.0, 5, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(tracelab::binom_ratio_lower(20.0, 10.0, 2, 3, 0), std::invalid_argument);
    CHECK_THROWS_AS(tracelab::binom_ratio_lower(0.0, 10.0, 5, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(tracelab::binom_ratio_lower(20.0, -1.0, 5, 3, 1), std::invalid_argument);
    // C(2,5) = 0 denominator.
    CHECK_THROWS_AS(tracelab::binom_ratio_lower(10.0, 2.0, 5, 5, 0), std::invalid_argument);
    // C(20,3) = 1140 > C(5,3) = 10 violates the hypothesis.
    CHECK_THROWS_AS(tracelab::binom_ratio_lower(5.0, 20.0, 3, 3, 0), std::invalid_argument);
}

TEST_CASE("exponential sandwich around 1 - x", "[binomials]") {
    auto mid = tracelab::exp_sandwich(0.25);
    CHECK(mid.lower_checked);
    CHECK(mid.lower_ok);
    CHECK(mid.upper_ok);

    auto zero = tracelab::exp_sandwich(0.0);
    CHECK(zero.lower_checked);
    CHECK(zero.lower_ok);
    CHECK(zero.upper_ok);
    CHECK(zero.one_minus_x == 1.0);

    auto beyond = tracelab::exp_sandwich(0.75);
    CHECK_FALSE(beyond.lower_checked);
    CHECK(beyond.lower_ok);  // vacuous
    CHECK(beyond.upper_ok);

    CHECK(tracelab::exp_sandwich(-1.5).upper_ok);
    CHECK(tracelab::exp_sandwich(2.0).upper_ok);
    CHECK_FALSE(tracelab::exp_sandwich(2.0).lower_checked);
}

TEST_CASE("hypergeometric and binomial pmfs", "[binomials]") {
    CHECK_THAT(tracelab::hypergeom_pmf(10, 3, 4, 2), WithinAbs(0.3, 1e-12));
    CHECK(tracelab::hypergeom_pmf(10, 3, 0, 1) == 0.0);
    CHECK(tracelab::hypergeom_pmf(10, 3, 2, 3) == 0.0);

    double total = 0.0;
    for (long long h = 0; h <= 3; ++h) total += tracelab::hypergeom_pmf(10, 3, 4, h);
    CHECK_THAT(total, WithinAbs(1.0, 1e-12));

    // Arguments past the factorial table fall back to lgamma.
    total = 0.0;
    for (long long h = 0; h <= 3; ++h) total += tracelab::hypergeom_pmf(9000, 3, 5, h);
    CHECK_THAT(total, WithinAbs(1.0, 1e-9));

    CHECK_THROWS_AS(tracelab::hypergeom_pmf(10, 11, 4, 2), std::invalid_argument);
    CHECK_THROWS_AS(tracelab::hypergeom_pmf(10, 3, -1, 0), std::invalid_argument);
    CHECK_THROWS_AS(tracelab::hypergeom_pmf(10, 3, 4, -1), std::invalid_argument);
    CHECK_THROWS_AS(tracelab::hypergeom_pmf(10, 3, 4, 4), std::invalid_argument);

    CHECK_THAT(tracelab::binom_pmf(3, 0.4, 2), WithinAbs(0.288, 1e-12));
    CHECK(tracelab::binom_pmf(5, 0.0, 0) == 1.0);
    CHECK(tracelab::binom_pmf(5, 0.0, 1) == 0.0);
    CHECK(tracelab::binom_pmf(5, 1.0, 5) == 1.0);

    total = 0.0;
    for (long long h = 0; h <= 6; ++h) total += tracelab::binom_pmf(6, 0.3, h);
    CHECK_THAT(total, WithinAbs(1.0, 1e-12));

    CHECK_THROWS_AS(tracelab::binom_pmf(-1, 0.5, 0), std::invalid_argument);
    CHECK_THROWS_AS(tracelab::binom_pmf(3, 0.5, 4), std::invalid_argument);
    CHECK_THROWS_AS(tracelab::binom_pmf(3, 1.5, 2), std::invalid_argument);
}
