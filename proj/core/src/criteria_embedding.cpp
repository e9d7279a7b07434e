#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bergman/errors.hpp"
#include "bergman/parallel.hpp"
#include "criteria_internal.hpp"

namespace bergman {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kLsAnglesPerGap = 16.0;

void check_exponents(double p, double q, int n) {
    if (!(p > 0.0) || !(q > 0.0)) throw DomainError("exponents p and q must be positive");
    if (n < 0) throw DomainError("derivative order n must be nonnegative");
}

void check_radius(double r) {
    if (!(r > 0.0 && r < 1.0)) throw DomainError("pseudohyperbolic radius must lie in (0, 1)");
}

}  // namespace

CriterionReport embedding_sup_criterion(double p, double q, int n, const RadialWeight& w,
                                        const DiscMeasure& mu, double r, const Sweep& sweep) {
    check_exponents(p, q, n);
    check_radius(r);
    if (!(p <= q)) throw DomainError("the sup criterion needs p <= q");

    CriterionReport rep;
    rep.id = CriterionId::EmbSup;
    rep.params = {p, q, n, r, 0.0, 0.0};
    const int depth = sweep.depth;
    const auto points = sweep_points(sweep, depth + kLevelStride);

    std::vector<double> values(points.size());
    parallel_for(points.size(), 1, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            const DiscPoint& z = points[i];
            const double ls = detail::log_square_mass(w, z, sweep.convention);
            if (std::isnan(ls)) {
                values[i] = kNaN;
                continue;
            }
            const double m = measure_of(mu, pseudo_disc(z, r));
            values[i] = m == 0.0 ? 0.0
                                 : std::exp(std::log(m) - q / p * ls - n * q * std::log(z.gap()));
        }
    });

    std::vector<double> gaps;
    std::vector<double> coarse;
    for (std::size_t i = 0; i < points.size(); ++i) {
        rep.samples.push_back({points[i], values[i]});
        gaps.push_back(points[i].gap());
        if (detail::is_coarse(points[i].gap(), depth)) coarse.push_back(values[i]);
    }
    detail::summarize_sup(rep, gaps, coarse, depth, depth + kLevelStride);
    rep.details["measure"] = mu.spec();
    rep.details["weight"] = w.name();
    return rep;
}

CriterionReport embedding_ls_criterion(double p, double q, int n, const RadialWeight& w,
                                       const DiscMeasure& mu, double r, int depth) {
    check_exponents(p, q, n);
    check_radius(r);
    if (!(q < p)) throw DomainError("the L^s criterion needs q < p");
    if (depth < 1 || depth + kLevelStride > kMaxGridLevel) {
        throw DomainError("L^s criterion depth out of range");
    }
    const double s = p / (p - q);

    CriterionReport rep;
    rep.id = CriterionId::EmbLs;
    rep.params = {p, q, n, r, 0.0, s};
    const int fine_depth = depth + kLevelStride;
    const auto grid = make_grid(fine_depth);
    const auto& rings = grid->rings();
    const std::size_t used = grid->rings_below(fine_depth);
    const bool radial = mu.is_radial();

    // Per ring: integral of B^s omega_tilde over the ring, and the largest B on it.
    std::vector<double> ring_integral(used, 0.0);
    std::vector<double> ring_max(used, 0.0);
    std::vector<Complex> ring_argmax(used);
    bool truncated = false;
    for (std::size_t k = 0; k < used; ++k) {
        const GridRing& ring = rings[k];
        const DiscPoint on_axis = DiscPoint::from_gap(ring.gap, 0.0);
        const double ls = detail::log_square_mass(w, on_axis, CarlesonConvention::Standard);
        if (std::isnan(ls)) {
            truncated = true;
            continue;
        }
        // log of the denominator omega(S(z)) (1 - |z|)^{nq}
        const double log_den = ls + n * q * std::log(ring.gap);
        const double tilde = omega_tilde(w, ring.radius);
        auto B = [&](const DiscPoint& z) {
            const double m = measure_of(mu, pseudo_disc(z, r));
            return m == 0.0 ? 0.0 : std::exp(std::log(m) - log_den);
        };
        if (radial) {
            const double b = B(on_axis);
            ring_max[k] = b;
            ring_argmax[k] = on_axis.value();
            ring_integral[k] =
                detail::safe_pow(b, s) * tilde * ring.weight * static_cast<double>(ring.count);
            continue;
        }
        // B averages over a pseudo-disc of size ~ gap, so angles finer than gap / 16 add little.
        const auto& roots = grid->roots(ring.count);
        const double target = kLsAnglesPerGap / ring.gap;
        std::size_t stride = 1;
        while (ring.count % (2 * stride) == 0 &&
               static_cast<double>(ring.count / (2 * stride)) >= target) {
            stride *= 2;
        }
        const std::size_t taken = ring.count / stride;
        std::vector<double> bvals(taken);
        parallel_for(taken, 64, [&](std::size_t b, std::size_t e) {
            for (std::size_t j = b; j < e; ++j) {
                bvals[j] = B(DiscPoint(ring.radius * roots[j * stride]));
            }
        });
        CompensatedSum acc;
        for (std::size_t j = 0; j < taken; ++j) {
            acc.add(detail::safe_pow(bvals[j], s));
            if (bvals[j] > ring_max[k]) {
                ring_max[k] = bvals[j];
                ring_argmax[k] = ring.radius * roots[j * stride];
            }
        }
        ring_integral[k] = acc.value() * static_cast<double>(stride) * tilde * ring.weight;
    }
    if (truncated) {
        rep.warnings.push_back("omega(S(z)) underflowed on some rings; they were skipped");
    }

    CompensatedSum coarse;
    CompensatedSum fine;
    for (std::size_t k = 0; k < used; ++k) {
        if (rings[k].t < depth) coarse.add(ring_integral[k]);
        fine.add(ring_integral[k]);
    }
    const double ci = coarse.value();
    const double fi = fine.value();
    rep.value = std::pow(fi, 1.0 / s);
    rep.refinement = {depth, fine_depth, std::pow(ci, 1.0 / s), rep.value,
                      ci > 0.0 ? fi / ci : (fi > 0.0 ? INFINITY : 1.0)};
    rep.verdict = refinement_verdict(rep.refinement);

    for (std::size_t k = 0; k < used; ++k) {
        const Complex z = ring_argmax[k] == Complex(0.0, 0.0) ? Complex(rings[k].radius, 0.0)
                                                               : ring_argmax[k];
        rep.samples.push_back({DiscPoint::polar(rings[k].radius, std::arg(z)), ring_max[k]});
    }
    // Tail of the integral beyond 1 - delta, as an L^s norm.
    for (int kk = 0; kk + kLevelStride <= fine_depth; kk += kLevelStride) {
        const double delta = std::exp2(-static_cast<double>(kk));
        CompensatedSum tail;
        CompensatedSum shell;
        for (std::size_t k = 0; k < used; ++k) {
            if (rings[k].gap <= delta) tail.add(ring_integral[k]);
            if (rings[k].gap <= delta && rings[k].gap > delta / 4.0) shell.add(ring_integral[k]);
        }
        rep.tail.push_back({delta, std::pow(tail.value(), 1.0 / s)});
        rep.shells.push_back({delta, std::pow(shell.value(), 1.0 / s)});
    }
    rep.compact_verdict = rep.verdict == Verdict::Divergent ? CompactVerdict::NonVanishing
                                                            : tail_verdict(rep.tail);
    rep.details["measure"] = mu.spec();
    rep.details["weight"] = w.name();
    rep.details["integral_coarse"] = ci;
    rep.details["integral_fine"] = fi;
    rep.details["radial_measure"] = radial;
    return rep;
}

CriterionReport op_pushforward_criterion(const OperatorSpec& op, double p, double q,
                                         const RadialWeight& w, const DiscMeasure& nu, double r,
                                         int depth) {
    check_exponents(p, q, op.n);
    DiscMeasure image;
    std::string route;
    if (op.u.is_zero() || nu.is_zero()) {
        image = DiscMeasure::zero();
        route = "zero";
    } else if (op.phi.is_identity() && !nu.is_atomic()) {
        // phi_*(|u|^q nu) = |u|^q nu when phi is the identity.
        route = "identity";
        const AnalyticFunction u = op.u;
        if (u.is_constant() && nu.is_radial()) {
            const double c = std::pow(std::abs(u.eval(0.0)), q);
            image = DiscMeasure::radial([nu, c](double g) { return c * nu.radial_density_at(g); },
                                        nu.grid());
        } else {
            image = DiscMeasure::density(
                [nu, u, q](Complex z, double g) {
                    return std::pow(std::abs(u.deriv(0, z, g)), q) * nu.density_at(z, g);
                },
                nu.grid());
        }
    } else {
        route = "atoms";
        const AnalyticFunction u = op.u;
        image = pushforward(
            op.phi, [u, q](Complex z, double g) { return std::pow(std::abs(u.deriv(0, z, g)), q); },
            nu);
    }
    CriterionReport rep = embedding_ls_criterion(p, q, op.n, w, image, r, depth);
    rep.id = CriterionId::OpPushforwardLs;
    rep.details["phi"] = op.phi.to_json();
    rep.details["u"] = op.u.to_json();
    rep.details["nu"] = nu.spec();
    rep.details["pushforward_route"] = route;
    return rep;
}

std::vector<double> carleson_box_ratios(const DiscMeasure& mu, const RadialWeight& w,
                                        double alpha, const std::vector<DiscPoint>& search,
                                        CarlesonConvention convention) {
    if (!(alpha > 0.0)) throw DomainError("maximal function needs alpha > 0");
    std::vector<double> out(search.size(), 0.0);
    parallel_for(search.size(), 1, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            const double ls = detail::log_square_mass(w, search[i], convention);
            if (std::isnan(ls)) {
                out[i] = kNaN;
                continue;
            }
            const double m = measure_of(mu, carleson_square(search[i], convention));
            out[i] = m == 0.0 ? 0.0 : std::exp(std::log(m) - alpha * ls);
        }
    });
    return out;
}

double maximal_function(const DiscMeasure& mu, const RadialWeight& w, double alpha,
                        const DiscPoint& z, const std::vector<DiscPoint>& search,
                        CarlesonConvention convention) {
    std::vector<DiscPoint> points;
    points.push_back(DiscPoint(0.0, 0.0));
    for (const DiscPoint& a : search) {
        if (!a.is_origin() && carleson_square(a, convention).contains(z.value())) {
            points.push_back(a);
        }
    }
    const auto ratios = carleson_box_ratios(mu, w, alpha, points, convention);
    double best = 0.0;
    for (double v : ratios) {
        if (!std::isnan(v)) best = std::max(best, v);
    }
    return best;
}

}  // namespace bergman
