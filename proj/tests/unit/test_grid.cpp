#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bergman/errors.hpp"
#include "bergman/geometry.hpp"
#include "bergman/grid.hpp"
#include "bergman/parallel.hpp"
#include "bergman/region_quadrature.hpp"
#include "bergman/weights.hpp"
#include "oracles.hpp"

using namespace bergman;
using doctest::Approx;

TEST_SUITE("grid") {

TEST_CASE("grid weights sum to the normalised area") {
    for (int level = 1; level <= 10; ++level) {
        const auto grid = make_grid(level);
        CHECK(grid->size() == grid_size(level));
        CompensatedSum total;
        for (const auto& ring : grid->rings()) {
            CHECK(ring.radius < 1.0);
            CHECK(ring.gap == Approx(1.0 - ring.radius));
            total.add(ring.weight * static_cast<double>(ring.count));
        }
        CHECK(std::abs(total.value() - 1.0) < 1e-10);
    }
}

TEST_CASE("nodes lie in the disc and are indexed by ring") {
    const auto grid = make_grid(4);
    for (std::size_t i = 0; i < grid->size(); i += 7) {
        const QuadNode node = grid->node(i);
        CHECK(std::abs(node.z) < 1.0);
        const GridRing& ring = grid->rings()[grid->ring_of(i)];
        CHECK(node.gap == ring.gap);
    }
}

TEST_CASE("integrals against closed forms") {
    const auto grid = make_grid(10);
    CHECK(integrate([](const QuadNode&) { return 3.0; }, *grid) == Approx(3.0).epsilon(1e-10));
    CHECK(std::abs(integrate([](const QuadNode& n) { return std::norm(n.z); }, *grid) - 0.5) < 1e-6);

    // integral of (1 - |z|)^beta dA, with an integrable boundary singularity for beta < 0
    for (double beta : {-0.5, 0.0, 2.0}) {
        const double got = integrate([&](const QuadNode& n) { return std::pow(n.gap, beta); }, *grid);
        const double floor = std::exp2(-kGridDepthCap);
        const double expect = oracle::radial_area_integral(oracle::power(beta), floor);
        CHECK(got == Approx(expect).epsilon(1e-8));
        // the omitted layer is below 4 sqrt(floor)
        CHECK(oracle::radial_area_integral(oracle::power(beta)) - got < 4.0 * std::sqrt(floor));
    }
}

TEST_CASE("indicator of a Carleson square") {
    const auto grid = make_grid(10);
    const CarlesonSquare s = carleson_square(DiscPoint(0.5, 0.0));
    const double got = integrate([&](const QuadNode& n) { return s.contains(n.z) ? 1.0 : 0.0; }, *grid);
    CHECK(got == Approx(3.0 / (16.0 * std::numbers::pi)).epsilon(1e-3));
}

TEST_CASE("reductions do not depend on the thread count") {
    const auto grid = make_grid(9);
    const auto g = [](const QuadNode& n) { return std::cos(7.0 * n.z.real()) * std::exp(n.z.imag()); };
    set_thread_count(1);
    const double one = integrate(g, *grid);
    set_thread_count(4);
    const double four = integrate(g, *grid);
    set_thread_count(0);
    CHECK(one == four);
}

TEST_CASE("non-finite integrands are reported") {
    const auto grid = make_grid(3);
    CHECK_THROWS_AS(integrate([](const QuadNode&) { return std::nan(""); }, *grid), NumericError);
}

TEST_CASE("grid budget") {
    CHECK(grid_size(kMaxGridLevel) > kMaxGridNodes);
    CHECK_THROWS_AS(make_grid(kMaxGridLevel), ResourceError);
    CHECK_THROWS_AS(make_grid(0), DomainError);
}

TEST_CASE("region rules") {
    const auto one = RadialWeight::power(0.0);
    const double pi = std::numbers::pi;
    const auto sum = [](const std::vector<QuadNode>& nodes) {
        CompensatedSum s;
        for (const auto& n : nodes) s.add(n.weight);
        return s.value();
    };
    CHECK(sum(region_rule(pseudo_disc(DiscPoint(0.0, 0.0), 0.5))) == Approx(0.25).epsilon(1e-12));
    CHECK(sum(region_rule(carleson_square(DiscPoint(0.5, 0.0)))) == Approx(3.0 / (16.0 * pi)).epsilon(1e-12));
    CHECK(sum(region_rule(Annulus{0.5, 0.9})) == Approx(0.81 - 0.25).epsilon(1e-12));
    // area of a pseudohyperbolic disc: pi R^2 / pi
    const PseudoDisc d = pseudo_disc(DiscPoint(0.9, 0.1), 0.3);
    CHECK(sum(region_rule(d)) == Approx(d.euclid_radius() * d.euclid_radius()).epsilon(1e-12));
    for (const auto& n : region_rule(d)) CHECK(d.contains(n.z));
}

}  // TEST_SUITE
