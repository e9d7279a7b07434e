#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bergman/geometry.hpp"
#include "bergman/grid.hpp"
#include "bergman/measures.hpp"
#include "bergman/parallel.hpp"
#include "bergman/serialize.hpp"
#include "bergman/spaces.hpp"

namespace bergman::app {
namespace {

using nlohmann::json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double relative_change(double coarse, double fine) {
    if (coarse == fine) return 0.0;
    return std::abs(fine - coarse) / std::max(std::abs(coarse), std::abs(fine));
}

// Random point with log-uniform gap in [2^{-max_depth}, 1).
DiscPoint random_point(std::mt19937_64& rng, double max_depth) {
    std::uniform_real_distribution<double> depth(0.0, max_depth);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    return DiscPoint::from_gap(std::exp2(-depth(rng)), angle(rng));
}

}  // namespace

std::vector<AnalyticFunction> random_polynomials(std::mt19937_64& rng, int count,
                                                 int max_degree) {
    std::uniform_int_distribution<int> degree(0, max_degree);
    std::normal_distribution<double> coeff(0.0, 1.0);
    std::vector<AnalyticFunction> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const int d = degree(rng);
        std::vector<Complex> c(static_cast<std::size_t>(d) + 1);
        for (auto& x : c) {
            const double re = coeff(rng);
            x = Complex(re, coeff(rng));
        }
        out.push_back(AnalyticFunction::polynomial(std::move(c)));
    }
    return out;
}

SuiteResult verify_pseudodisc(std::uint64_t seed, int cases, int boundary) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> radius(0.01, 0.99);
    double worst = 0.0;
    json worst_case = nullptr;
    for (int c = 0; c < cases; ++c) {
        const DiscPoint a = random_point(rng, 12.0);
        const double r = radius(rng);
        const PseudoDisc disc = pseudo_disc(a, r);
        for (int j = 0; j < boundary; ++j) {
            const double theta = kTwoPi * (j + 0.5) / boundary;
            const Complex zeta = disc.euclid_center() + disc.euclid_radius() * std::polar(1.0, theta);
            const double dev = std::abs(rho(a.value(), zeta) - r);
            if (!(dev <= worst)) {
                worst = dev;
                worst_case = {{"a", to_json(a)}, {"r", r}, {"theta", theta}};
            }
        }
    }
    SuiteResult out;
    out.passed = worst < kPseudoDiscTolerance;
    out.report = {{"cases", cases},
                  {"boundary_samples", boundary},
                  {"max_deviation", worst},
                  {"tolerance", kPseudoDiscTolerance},
                  {"worst_case", worst_case}};
    return out;
}

SuiteResult verify_pushforward(std::uint64_t seed, std::size_t count) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mass(0.0, 1.0);
    std::vector<Atom> atoms(count);
    for (auto& atom : atoms) {
        const DiscPoint z = random_point(rng, 20.0);
        atom = Atom{z.value(), z.gap(), mass(rng)};
    }
    const DiscMeasure mu = DiscMeasure::atoms(std::move(atoms), {{"kind", "random_atoms"}});

    const auto h = [](Complex z, double) { return 1.0 + std::norm(z); };
    const auto g = [](Complex w, double gap) {
        return std::cos(3.0 * w.real()) + w.imag() * w.imag() + std::sqrt(gap);
    };

    const std::vector<std::pair<std::string, SelfMap>> maps = {
        {"identity", SelfMap::identity()},
        {"power2", SelfMap::power(2)},
        {"moebius0.3", SelfMap::moebius(DiscPoint(0.3, 0.0))},
    };

    SuiteResult out;
    out.passed = true;
    json rows = json::array();
    for (const auto& [name, phi] : maps) {
        const DiscMeasure image = pushforward(phi, h, mu);
        const double lhs = integrate(g, image);
        const double rhs = integrate(
            [&](Complex z, double gap) {
                const MappedPoint m = phi.eval_with_gap(z, gap);
                return g(m.w, m.gap) * h(z, gap);
            },
            mu);
        const double err = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
        const bool ok = err <= kPushforwardTolerance;
        out.passed = out.passed && ok;
        rows.push_back({{"phi", name}, {"pushforward_side", lhs}, {"composed_side", rhs},
                        {"relative_error", err}, {"passed", ok}});
    }
    out.report = {{"atoms", count}, {"tolerance", kPushforwardTolerance}, {"maps", rows}};
    return out;
}

SuiteResult verify_norm_equivalence(std::uint64_t seed, int polys,
                                    const std::vector<NormEquivalenceCase>& cases, int level) {
    std::mt19937_64 rng(seed);
    const auto family = random_polynomials(rng, polys, 20);

    std::vector<double> ps;
    for (const auto& c : cases) {
        if (std::find(ps.begin(), ps.end(), c.p) == ps.end()) ps.push_back(c.p);
    }

    // integrals[l][f][case] of |f|^p against omega and omega_tilde
    struct Pair {
        double w = 0.0;
        double tilde = 0.0;
    };
    std::vector<std::vector<std::vector<Pair>>> integrals(2);
    const std::vector<int> levels = {level, level + 2};

    std::vector<RadialWeight> weights;
    std::vector<RadialWeight> tildes;
    for (const auto& c : cases) {
        weights.push_back(c.weight);
        tildes.push_back(RadialWeight::tilde_of(weights.back()));
    }

    for (std::size_t l = 0; l < levels.size(); ++l) {
        const auto grid = make_grid(levels[l]);
        const auto& rings = grid->rings();
        for (const auto& f : family) {
            // Unweighted ring sums of |f|^p, one slot per distinct p.
            std::vector<std::vector<double>> sums(rings.size(), std::vector<double>(ps.size()));
            parallel_for(rings.size(), 1, [&](std::size_t b, std::size_t e) {
                for (std::size_t k = b; k < e; ++k) {
                    const GridRing& ring = rings[k];
                    const auto& roots = grid->roots(ring.count);
                    std::vector<CompensatedSum> acc(ps.size());
                    for (std::size_t j = 0; j < ring.count; ++j) {
                        const double m = std::abs(f.eval(ring.radius * roots[j]));
                        for (std::size_t i = 0; i < ps.size(); ++i) acc[i].add(std::pow(m, ps[i]));
                    }
                    for (std::size_t i = 0; i < ps.size(); ++i) sums[k][i] = acc[i].value();
                }
            });
            std::vector<Pair> row(cases.size());
            for (std::size_t c = 0; c < cases.size(); ++c) {
                const std::size_t i = static_cast<std::size_t>(
                    std::find(ps.begin(), ps.end(), cases[c].p) - ps.begin());
                CompensatedSum a;
                CompensatedSum b;
                for (std::size_t k = 0; k < rings.size(); ++k) {
                    a.add(rings[k].weight * weights[c].at_gap(rings[k].gap) * sums[k][i]);
                    b.add(rings[k].weight * tildes[c].at_gap(rings[k].gap) * sums[k][i]);
                }
                row[c] = {a.value(), b.value()};
            }
            integrals[l].push_back(std::move(row));
        }
    }

    SuiteResult out;
    out.passed = true;
    json rows = json::array();
    for (std::size_t c = 0; c < cases.size(); ++c) {
        const double p = cases[c].p;
        double lo = kInfinity;
        double hi = 0.0;
        double drift = 0.0;
        for (std::size_t f = 0; f < family.size(); ++f) {
            const auto ratio = [&](std::size_t l) {
                const Pair& v = integrals[l][f][c];
                return std::pow(v.tilde / v.w, 1.0 / p);
            };
            const double coarse = ratio(0);
            const double fine = ratio(1);
            lo = std::min(lo, fine);
            hi = std::max(hi, fine);
            drift = std::max(drift, std::isfinite(fine) && std::isfinite(coarse)
                                        ? relative_change(coarse, fine)
                                        : kInfinity);
        }
        const double C = std::max(hi, 1.0 / lo);
        const bool ok = drift < kNormEquivalenceDrift && std::isfinite(C);
        out.passed = out.passed && ok;
        rows.push_back({{"weight", cases[c].weight.name()}, {"p", p}, {"ratio_min", lo}, {"ratio_max", hi},
                        {"bracket_C", C}, {"max_refinement_change", drift}, {"passed", ok}});
    }
    out.report = {{"polynomials", polys},
                  {"coarse_level", level},
                  {"fine_level", level + 2},
                  {"tolerance", kNormEquivalenceDrift},
                  {"cases", rows}};
    return out;
}

SuiteResult verify_pointwise_bound(std::uint64_t seed, int polys, const std::vector<int>& orders,
                                   const std::vector<PointwiseCase>& cases, int level) {
    std::mt19937_64 rng(seed);
    const auto poly_family = random_polynomials(rng, polys, 20);
    const std::vector<int> levels = {level, level + 2};
    const auto basepoints = radial_ray(0.5, std::max(1, level - 2));

    SuiteResult out;
    out.passed = true;
    json rows = json::array();
    for (const auto& c : cases) {
        const double gamma = initial_gamma(c.p, classify(c.weight));
        std::vector<AnalyticFunction> family = poly_family;
        for (const auto& a : basepoints) family.push_back(test_function(a, gamma, c.p, c.weight));

        // sup_ratio[l][n] = max over the family
        std::vector<std::vector<double>> sup_ratio(levels.size(),
                                                   std::vector<double>(orders.size(), 0.0));
        for (std::size_t l = 0; l < levels.size(); ++l) {
            const auto grid = make_grid(levels[l]);
            const auto& rings = grid->rings();
            const std::size_t used = grid->rings_below(levels[l]);
            // omega(S(z))^{1/p} (1 - |z|)^n is constant on a ring.
            std::vector<std::vector<double>> scale(used, std::vector<double>(orders.size()));
            for (std::size_t k = 0; k < used; ++k) {
                const double box = weighted_area(
                    c.weight, carleson_square(DiscPoint::from_gap(rings[k].gap, 0.0)));
                for (std::size_t i = 0; i < orders.size(); ++i) {
                    scale[k][i] = std::pow(box, 1.0 / c.p) * std::pow(rings[k].gap, orders[i]);
                }
            }
            for (const auto& f : family) {
                const double norm = bergman_norm(f, c.p, c.weight, *grid);
                for (std::size_t i = 0; i < orders.size(); ++i) {
                    const double sup = parallel_max(
                        used,
                        [&](std::size_t k) {
                            const GridRing& ring = rings[k];
                            const auto& roots = grid->roots(ring.count);
                            double best = 0.0;
                            for (std::size_t j = 0; j < ring.count; ++j) {
                                const Complex z = ring.radius * roots[j];
                                best = std::max(best, std::abs(f.deriv(orders[i], z, ring.gap)));
                            }
                            return best * scale[k][i];
                        },
                        1);
                    sup_ratio[l][i] = std::max(sup_ratio[l][i], sup / norm);
                }
            }
        }
        for (std::size_t i = 0; i < orders.size(); ++i) {
            const double coarse = sup_ratio[0][i];
            const double fine = sup_ratio[1][i];
            const double drift = relative_change(coarse, fine);
            const bool ok = std::isfinite(fine) && std::isfinite(coarse) && drift < kPointwiseDrift;
            out.passed = out.passed && ok;
            rows.push_back({{"weight", c.weight.name()}, {"p", c.p}, {"n", orders[i]},
                            {"gamma", gamma}, {"coarse", coarse}, {"fine", fine},
                            {"relative_change", drift}, {"passed", ok}});
        }
    }
    out.report = {{"polynomials", polys},
                  {"test_functions", basepoints.size()},
                  {"coarse_level", level},
                  {"fine_level", level + 2},
                  {"tolerance", kPointwiseDrift},
                  {"cases", rows}};
    return out;
}

}  // namespace bergman::app
