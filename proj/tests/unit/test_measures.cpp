#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "bergman/errors.hpp"
#include "bergman/measures.hpp"
#include "oracles.hpp"

using namespace bergman;
using doctest::Approx;

namespace {

std::vector<Atom> random_atoms(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> t(0.0, 12.0);
    std::uniform_real_distribution<double> ang(-3.14, 3.14);
    std::uniform_real_distribution<double> m(0.0, 1.0);
    std::vector<Atom> out(n);
    for (auto& a : out) {
        const DiscPoint z = DiscPoint::from_gap(std::exp2(-t(rng)), ang(rng));
        a = {z.value(), z.gap(), m(rng)};
    }
    return out;
}

}  // namespace

TEST_SUITE("measures") {

TEST_CASE("point mass and area measure on pseudohyperbolic discs") {
    const auto delta = DiscMeasure::atoms({Atom{Complex(0, 0), 1.0, 1.0}});
    CHECK(measure_of(delta, pseudo_disc(DiscPoint(0.0, 0.0), 0.5)) == 1.0);
    CHECK(measure_of(delta, pseudo_disc(DiscPoint(0.9, 0.0), 0.5)) == 0.0);

    const auto area = DiscMeasure::power_density(0.0, make_grid(6));
    for (double r : {0.1, 0.5, 0.9}) {
        CHECK(measure_of(area, pseudo_disc(DiscPoint(0.0, 0.0), r)) == Approx(r * r).epsilon(1e-12));
    }
}

TEST_CASE("power densities on pseudohyperbolic discs") {
    for (double beta : {-0.5, 0.0, 1.5}) {
        const auto mu = DiscMeasure::power_density(beta, make_grid(6));
        for (double gap : {1.0, 0.5, 0.1, 1e-2, 1e-3}) {
            const double got = measure_of(mu, pseudo_disc(DiscPoint::from_gap(gap, 0.0), 0.5));
            CHECK(got == Approx(oracle::pseudo_disc_mass(oracle::power(beta), gap, 0.5)).epsilon(1e-6));
        }
        // mu(Delta(z, r)) / (1 - |z|)^{beta + 2} settles to a constant near the boundary
        const auto ratio = [&](double gap) {
            return measure_of(mu, pseudo_disc(DiscPoint::from_gap(gap, 1.0), 0.5)) / std::pow(gap, beta + 2.0);
        };
        CHECK(ratio(1e-6) == Approx(ratio(1e-4)).epsilon(1e-3));
    }
}

TEST_CASE("total mass") {
    for (double beta : {-0.5, 0.0, 2.0}) {
        const auto mu = DiscMeasure::power_density(beta, make_grid(8));
        const double expect =
            oracle::radial_area_integral(oracle::power(beta), std::exp2(-kGridDepthCap));
        CHECK(mu.total_mass() == Approx(expect).epsilon(1e-8));
        CHECK(std::abs(mu.total_mass() - 2.0 / ((beta + 1.0) * (beta + 2.0))) < 4e-6);
    }
    const auto atoms = random_atoms(100, 1);
    double m = 0.0;
    for (const auto& a : atoms) m += a.mass;
    CHECK(DiscMeasure::atoms(atoms).total_mass() == Approx(m).epsilon(1e-14));
    CHECK(DiscMeasure::zero().total_mass() == 0.0);
    CHECK_THROWS_AS(DiscMeasure::power_density(-1.0, make_grid(4)), DomainError);
}

TEST_CASE("atom index sums agree with a scan") {
    const auto atoms = random_atoms(20000, 2);
    const auto mu = DiscMeasure::atoms(atoms);
    const std::vector<Region> regions = {carleson_square(DiscPoint::from_gap(1.0 / 64, 0.5)),
                                         pseudo_disc(DiscPoint::from_gap(1.0 / 16, -2.0), 0.6),
                                         tent(DiscPoint(0.0, 0.7)), Annulus{0.9, 0.99}, WholeDisc{}};
    for (const Region& region : regions) {
        double scan = 0.0;
        for (const auto& a : atoms) {
            if (contains(region, a.z)) scan += a.mass;
        }
        CHECK(measure_of(mu, region) == Approx(scan).epsilon(1e-12));
    }
}

TEST_CASE("pushforward under the identity keeps region measures") {
    const auto mu = DiscMeasure::atoms(random_atoms(5000, 3));
    const auto image = pushforward(SelfMap::identity(), [](Complex, double) { return 1.0; }, mu);
    for (const Region& region : std::vector<Region>{carleson_square(DiscPoint(0.0, 0.9)),
                                                    pseudo_disc(DiscPoint(0.5, 0.5), 0.3)}) {
        CHECK(measure_of(image, region) == measure_of(mu, region));
    }
}

TEST_CASE("pushforward of the area measure under z^2") {
    const auto grid = make_grid(10);
    const auto mu = DiscMeasure::power_density(0.0, grid);
    const SelfMap sq = SelfMap::power(2);
    const auto image = pushforward(sq, [](Complex, double) { return 1.0; }, mu);
    CHECK(image.is_atomic());
    const auto g = [](Complex w, double) { return std::cos(w.real()) + std::norm(w); };
    const double lhs = integrate(g, image);
    const double rhs = integrate([&](Complex z, double gap) {
        const MappedPoint m = sq.eval_with_gap(z, gap);
        return g(m.w, m.gap);
    }, mu);
    CHECK(std::abs(lhs - rhs) < 1e-12);
    // int |z^2| dA = 1/2
    CHECK(integrate([](Complex w, double) { return std::abs(w); }, image) == Approx(0.5).epsilon(1e-6));
}

TEST_CASE("weighted pushforward multiplies masses") {
    const auto mu = DiscMeasure::atoms(random_atoms(1000, 4));
    const auto h = [](Complex z, double) { return std::norm(1.0 + z); };
    const auto image = pushforward(SelfMap::scale(0.5), h, mu);
    const auto& src = mu.atom_list();
    const auto& dst = image.atom_list();
    REQUIRE(src.size() == dst.size());
    for (std::size_t i = 0; i < src.size(); i += 37) {
        CHECK(dst[i].z == 0.5 * src[i].z);
        CHECK(dst[i].mass == h(src[i].z, src[i].gap) * src[i].mass);
    }
}

TEST_CASE("atom CSV round trip") {
    const auto atoms = random_atoms(50, 5);
    std::stringstream buf;
    write_atoms_csv(buf, atoms);
    const auto back = read_atoms_csv(buf);
    REQUIRE(back.size() == atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        CHECK(back[i].z == atoms[i].z);
        CHECK(back[i].mass == atoms[i].mass);
    }
    std::stringstream bad("re,im,mass\n1.5,0,1\n");
    CHECK_THROWS_AS(read_atoms_csv(bad), ConfigError);
}

}  // TEST_SUITE
