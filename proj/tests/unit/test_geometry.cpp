#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bergman/errors.hpp"
#include "bergman/geometry.hpp"

using namespace bergman;

TEST_SUITE("geometry") {

TEST_CASE("pseudohyperbolic distance") {
    CHECK(rho(Complex(0, 0), Complex(0.3, 0.4)) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(rho(Complex(0.2, -0.7), Complex(0.2, -0.7)) == 0.0);
    CHECK(rho(Complex(0.5, 0), Complex(-0.5, 0)) == doctest::Approx(0.8).epsilon(1e-15));
    const Complex a(0.3, 0.1);
    const Complex b(-0.2, 0.6);
    CHECK(rho(a, b) == doctest::Approx(rho(b, a)).epsilon(1e-15));
}

TEST_CASE("automorphisms") {
    const Complex c(0.4, -0.3);
    for (const Complex z : {Complex(0.1, 0.2), Complex(-0.9, 0.05), Complex(0, 0)}) {
        const Complex back = moebius(-c, moebius(c, z));
        CHECK(std::abs(back - z) < 1e-14);
        CHECK(std::abs(moebius(c, z)) == doctest::Approx(rho(c, z)).epsilon(1e-14));
    }
}

TEST_CASE("disc points keep the boundary gap") {
    const DiscPoint z = DiscPoint::from_gap(1e-14, 0.7);
    CHECK(z.gap() == 1e-14);
    CHECK(z.abs() == doctest::Approx(1.0));
    const DiscPoint p = DiscPoint::polar(0.5, 1.0);
    CHECK(p.gap() == doctest::Approx(0.5));
    CHECK(p.arg() == doctest::Approx(1.0));
    CHECK_THROWS_AS(DiscPoint(1.0, 0.0), DomainError);
}

TEST_CASE("pseudohyperbolic disc parameters") {
    const PseudoDisc d0 = pseudo_disc(DiscPoint(0.0, 0.0), 0.3);
    CHECK(std::abs(d0.euclid_center()) == 0.0);
    CHECK(d0.euclid_radius() == doctest::Approx(0.3));

    const PseudoDisc d = pseudo_disc(DiscPoint(0.5, 0.0), 0.5);
    CHECK(d.euclid_center().real() == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(d.euclid_center().imag() == doctest::Approx(0.0));
    CHECK(d.euclid_radius() == doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("pseudohyperbolic disc boundary property") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> depth(0.0, 12.0);
    std::uniform_real_distribution<double> angle(-3.1, 3.1);
    std::uniform_real_distribution<double> radius(0.01, 0.99);
    double worst = 0.0;
    for (int c = 0; c < 200; ++c) {
        const DiscPoint a = DiscPoint::from_gap(std::exp2(-depth(rng)), angle(rng));
        const double r = radius(rng);
        const PseudoDisc d = pseudo_disc(a, r);
        for (int j = 0; j < 64; ++j) {
            const Complex zeta = d.euclid_center() +
                                 d.euclid_radius() * std::polar(1.0, 2.0 * std::numbers::pi * j / 64);
            CHECK(std::abs(zeta) < 1.0);
            worst = std::max(worst, std::abs(rho(a.value(), zeta) - r));
        }
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("Carleson squares") {
    const CarlesonSquare s0 = carleson_square(DiscPoint(0.0, 0.0));
    CHECK(s0.whole_disc());
    CHECK(s0.contains(Complex(-0.99, 0.0)));

    const CarlesonSquare s = carleson_square(DiscPoint(0.5, 0.0));
    CHECK(s.radial_lower() == doctest::Approx(0.5));
    CHECK(s.angular_halfwidth() == doctest::Approx(0.25));
    CHECK(s.contains(std::polar(0.75, 0.1)));
    CHECK_FALSE(s.contains(std::polar(0.75, 0.3)));
    CHECK_FALSE(s.contains(std::polar(0.45, 0.0)));
}

TEST_CASE("tents and approach regions are dual") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> mod(0.01, 0.999);
    std::uniform_real_distribution<double> ang(-0.4, 0.4);
    int agree = 0;
    const int trials = 10000;
    for (int i = 0; i < trials; ++i) {
        const Complex z = std::polar(mod(rng), ang(rng));
        const Complex zeta = std::polar(mod(rng), ang(rng));
        const bool in_tent = tent(DiscPoint(z)).contains(zeta);
        const bool in_gamma = nt_region(zeta).contains(z);
        agree += in_tent == in_gamma;
    }
    CHECK(agree == trials);
}

TEST_CASE("tents shrink toward the boundary") {
    const Complex probe = std::polar(0.995, 0.0);
    CHECK(tent(DiscPoint(0.9, 0.0)).contains(probe));
    CHECK(tent(DiscPoint(0.99, 0.0)).contains(probe));
    const Complex off = std::polar(0.995, 0.02);
    CHECK(tent(DiscPoint(0.9, 0.0)).contains(off));
    CHECK_FALSE(tent(DiscPoint(0.99, 0.0)).contains(off));
    CHECK_THROWS_AS(tent(DiscPoint(0.0, 0.0)), DomainError);
}

TEST_CASE("bounding boxes contain their regions") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const std::vector<Region> regions = {carleson_square(DiscPoint(0.6, 0.3)),
                                         pseudo_disc(DiscPoint(-0.7, 0.2), 0.4),
                                         tent(DiscPoint(0.0, 0.8)), Annulus{0.3, 0.6}};
    for (const Region& region : regions) {
        const PolarBox box = bounding_box(region);
        for (int i = 0; i < 20000; ++i) {
            const Complex z(u(rng), u(rng));
            if (std::abs(z) >= 1.0 || !contains(region, z)) continue;
            const double m = std::abs(z);
            CHECK(m >= box.r_min - 1e-12);
            CHECK(m <= box.r_max + 1e-12);
            if (!box.full_circle) {
                CHECK(std::abs(wrap_angle(std::arg(z) - box.angle_center)) <=
                      box.angle_halfwidth + 1e-12);
            }
        }
    }
}

TEST_CASE("r-lattice covers the truncated disc") {
    const int depth = 6;
    const auto lattice = r_lattice(0.5, depth);
    for (const auto& p : lattice) CHECK(p.abs() < 1.0);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> t(0.0, depth);
    std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const DiscPoint z = DiscPoint::from_gap(std::exp2(-t(rng)), ang(rng));
        double best = 1.0;
        for (const auto& p : lattice) best = std::min(best, rho(z, p));
        worst = std::max(worst, best);
    }
    CHECK(worst <= 0.5);

    CHECK(r_lattice(0.3, depth).size() > lattice.size());
    CHECK(r_lattice(0.5, depth + 1).size() > lattice.size());
}

TEST_CASE("radial ray is the positive axis of the lattice") {
    const auto ray = radial_ray(0.5, 8);
    CHECK(ray.front().is_origin());
    for (std::size_t i = 1; i < ray.size(); ++i) {
        CHECK(ray[i].im() == 0.0);
        CHECK(ray[i].re() > ray[i - 1].re());
    }
    CHECK(ray.back().gap() >= std::exp2(-8.0) * (1 - 1e-12));
}

}  // TEST_SUITE
