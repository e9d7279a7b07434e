#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bergman/errors.hpp"
#include "bergman/geometry.hpp"
#include "bergman/weights.hpp"
#include "oracles.hpp"

using namespace bergman;
using doctest::Approx;

namespace {

oracle::Fn power_density(double alpha) { return oracle::power(alpha); }

oracle::Fn log_power_density(double alpha, double b) { return oracle::log_power(alpha, b); }

}  // namespace

TEST_SUITE("weights") {

TEST_CASE("tail integral of power weights") {
    const auto one = RadialWeight::power(0.0);
    CHECK(omega_hat(one, 1.0) == 0.0);
    CHECK(omega_hat(one, 0.5) == Approx(0.5).epsilon(1e-13));
    CHECK(omega_hat(RadialWeight::power(1.0), 0.0) == Approx(0.5).epsilon(1e-13));
    for (double alpha : {-0.5, 0.0, 1.0, 3.0}) {
        const auto w = RadialWeight::power(alpha);
        for (double r : {0.0, 0.3, 0.9, 0.999, 1.0 - 1e-9}) {
            const double expect = oracle::tail(power_density(alpha), r);
            CHECK(omega_hat(w, r) == Approx(expect).epsilon(1e-10));
        }
    }
}

TEST_CASE("tail integral is nonincreasing and vanishes at the boundary") {
    const auto w = RadialWeight::log_power(0.5, -1.0);
    double prev = omega_hat(w, 0.0);
    CHECK(prev > 0.0);
    for (int k = 1; k <= 60; ++k) {
        const double r = 1.0 - std::exp2(-0.5 * k);
        const double v = omega_hat(w, r);
        CHECK(v <= prev);
        prev = v;
    }
    CHECK(prev < 1e-8);
}

TEST_CASE("tail integral of log and table weights matches quadrature") {
    const auto w = RadialWeight::log_power(1.0, 2.0);
    for (double r : {0.0, 0.5, 0.99, 1.0 - 1e-6}) {
        CHECK(omega_hat(w, r) == Approx(oracle::tail(log_power_density(1.0, 2.0), r)).epsilon(1e-9));
    }
    // linear on [0, 0.5], constant 3 beyond
    const auto t = RadialWeight::table({0.0, 0.5}, {1.0, 3.0});
    CHECK(t(0.25) == Approx(2.0));
    CHECK(t(0.9) == Approx(3.0));
    CHECK(omega_hat(t, 0.0) == Approx(2.5).epsilon(1e-9));
    CHECK(omega_hat(t, 0.5) == Approx(1.5).epsilon(1e-9));
}

TEST_CASE("tilde weight") {
    CHECK(omega_tilde(RadialWeight::power(0.0), 0.0) == Approx(1.0));
    // (1 - r)^2 / 2 / (1 - r) at r = 0.5
    const double expect = oracle::tail(power_density(1.0), 0.5) / 0.5;
    CHECK(expect == Approx(0.25).epsilon(1e-12));
    CHECK(omega_tilde(RadialWeight::power(1.0), 0.5) == Approx(expect).epsilon(1e-12));
    CHECK(omega_tilde(RadialWeight::power(0.0), 0.9) == Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(omega_tilde(RadialWeight::power(0.0), 1.0), DomainError);

    const auto w = RadialWeight::log_power(0.0, 1.0);
    const auto tw = RadialWeight::tilde_of(w);
    for (double r : {0.1, 0.7, 0.999}) CHECK(tw(r) == Approx(omega_tilde(w, r)).epsilon(1e-12));
}

TEST_CASE("moments") {
    const auto one = RadialWeight::power(0.0);
    CHECK(moment(one, 1.0) == Approx(0.5).epsilon(1e-12));
    CHECK(moment(one, 2.0) == Approx(1.0 / 3.0).epsilon(1e-12));
    const auto w = RadialWeight::log_power(2.0, 1.0);
    double prev = moment(w, 1.0);
    for (double x : {2.0, 4.0, 16.0, 256.0}) {
        const double m = moment(w, x);
        const double expect = oracle::integral(
            [&](double g) { return std::pow(1.0 - g, x) * log_power_density(2.0, 1.0)(g); }, 0.0, 1.0);
        CHECK(m == Approx(expect).epsilon(1e-8));
        CHECK(m <= prev);
        prev = m;
    }
    CHECK_THROWS_AS(moment(one, 0.5), DomainError);
}

TEST_CASE("weighted areas of regions") {
    const auto one = RadialWeight::power(0.0);
    CHECK(weighted_area(one, WholeDisc{}) == Approx(1.0).epsilon(1e-12));
    CHECK(weighted_area(one, carleson_square(DiscPoint(0.0, 0.0))) == Approx(1.0).epsilon(1e-12));
    CHECK(weighted_area(one, carleson_square(DiscPoint(0.5, 0.0))) ==
          Approx(3.0 / (16.0 * std::numbers::pi)).epsilon(1e-13));

    for (double alpha : {0.0, 1.0, 3.0}) {
        const auto w = RadialWeight::power(alpha);
        for (double rho : {0.3, 0.9, 0.999}) {
            const double area = weighted_area(w, carleson_square(DiscPoint(0.0, rho)));
            CHECK(area == Approx(oracle::carleson_area(power_density(alpha), 1.0 - rho)).epsilon(1e-9));
        }
        const double ann = weighted_area(w, Annulus{0.2, 0.7});
        const double expect = oracle::integral(
            [&](double g) { return 2.0 * (1.0 - g) * power_density(alpha)(g); }, 0.3, 0.8);
        CHECK(ann == Approx(expect).epsilon(1e-10));
        for (double c : {0.0, 0.5, 0.95}) {
            const double pd = weighted_area(w, pseudo_disc(DiscPoint(c, 0.0), 0.4));
            CHECK(pd == Approx(oracle::pseudo_disc_mass(power_density(alpha), 1.0 - c, 0.4)).epsilon(1e-6));
        }
    }
}

TEST_CASE("Carleson square areas scale like the boundary distance to the power 2 + alpha") {
    for (double alpha : {0.0, 1.0, 3.0}) {
        const auto w = RadialWeight::power(alpha);
        double lo = 1e300;
        double hi = 0.0;
        for (int k = 2; k <= 30; ++k) {
            const double g = std::exp2(-k);
            const double ratio =
                weighted_area(w, carleson_square(DiscPoint::from_gap(g, 0.0))) / std::pow(g, 2.0 + alpha);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        CHECK(hi / lo < 2.0);
    }
}

TEST_CASE("tent and square areas are comparable for doubling weights") {
    const auto w = RadialWeight::power(1.0);
    double lo = 1e300;
    double hi = 0.0;
    for (double g : {0.5, 0.1, 1e-2, 1e-3, 1e-4}) {
        const DiscPoint z = DiscPoint::from_gap(g, 0.4);
        const double ratio = weighted_area(w, tent(z)) / weighted_area(w, carleson_square(z));
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    CHECK(lo > 0.05);
    CHECK(hi < 1.0);
}

TEST_CASE("classification of power weights") {
    for (double alpha : {-0.5, 0.0, 1.0, 3.0}) {
        const WeightClassReport rep = classify(RadialWeight::power(alpha));
        REQUIRE(rep.exponents.has_value());
        CHECK(rep.exponents->first == Approx(alpha + 1.0).epsilon(0.05 / (alpha + 1.0)));
        CHECK(rep.exponents->second == Approx(alpha + 1.0).epsilon(0.05 / (alpha + 1.0)));
        CHECK(rep.exponents->first <= rep.exponents->second);
        CHECK(rep.dhat_constant == Approx(std::exp2(alpha + 1.0)).epsilon(0.05));
        CHECK(rep.flags.dhat);
        CHECK(rep.flags.dcheck);
        CHECK(rep.flags.doubling == (rep.flags.dhat && rep.flags.dcheck));
        CHECK(rep.flags.class_m);
        CHECK_FALSE(rep.truncated);
    }
}

TEST_CASE("the exponential weight is not upper doubling") {
    const WeightClassReport rep = classify(RadialWeight::exponential());
    CHECK_FALSE(rep.flags.dhat);
    CHECK_FALSE(rep.flags.doubling);
}

TEST_CASE("initial Berezin exponent") {
    const auto r0 = classify(RadialWeight::power(0.0));
    CHECK(initial_gamma(2.0, r0) == Approx(3.0).epsilon(1e-3));
    CHECK(initial_gamma(4.0, r0) == Approx(initial_gamma(2.0, r0) / 2.0).epsilon(1e-12));
    // 2 (beta + 2) / p with the fitted exponent beta = alpha + 1
    const auto r2 = classify(RadialWeight::power(2.0));
    CHECK(initial_gamma(2.0, r2) == Approx(5.0).epsilon(1e-3));
    CHECK_THROWS_AS(initial_gamma(2.0, classify(RadialWeight::exponential())), DomainError);
}

TEST_CASE("invalid weights") {
    CHECK_THROWS_AS(RadialWeight::power(-1.0), DomainError);
    CHECK_THROWS_AS(RadialWeight("bad", [](double g) { return 1.0 / (g * g); }), IntegrabilityError);
    CHECK_THROWS_AS(RadialWeight("negative", [](double g) { return g - 0.5; }), DomainError);
    const auto w = RadialWeight::power(0.0);
    CHECK(w(0.25) == 1.0);
}

}  // TEST_SUITE
