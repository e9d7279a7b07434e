#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bergman/errors.hpp"
#include "bergman/parallel.hpp"
#include "criteria_internal.hpp"

namespace bergman {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Integral of |u|^q nu (1 - |a|)^{gamma q} |1 - conj(a) phi|^{-(gamma + n) q} over the grid.
double berezin_integral(const OperatorSpec& op, double q, const RadialWeight& nu, double gamma,
                        const DiscPoint& a, const QuadratureGrid& grid) {
    const double log_front = gamma * q * std::log(a.gap());
    const double power = (gamma + op.n) * q;
    const bool plain_u = op.u.is_constant();
    const double u_const = plain_u ? std::pow(std::abs(op.u.eval(0.0)), q) : 0.0;
    if (plain_u && u_const == 0.0) return 0.0;
    const bool plain_phi = op.phi.is_identity();
    return integrate_rings(grid, [&](const GridRing& ring, const std::vector<Complex>& roots,
                                     std::size_t begin, std::size_t end) {
        const double nu_ring = nu.at_gap(ring.gap);
        if (nu_ring == 0.0) return 0.0;
        CompensatedSum acc;
        for (std::size_t j = begin; j < end; ++j) {
            const Complex z = ring.radius * roots[j];
            const double uq = plain_u ? u_const : std::pow(std::abs(op.u.deriv(0, z, ring.gap)), q);
            if (uq == 0.0) continue;
            const MappedPoint w =
                plain_phi ? MappedPoint{z, ring.gap} : op.phi.eval_with_gap(z, ring.gap);
            const Complex k = one_minus_conj_product(a.value(), a.gap(), w.w, w.gap);
            acc.add(uq * std::exp(log_front - 0.5 * power * std::log(std::norm(k))));
        }
        return nu_ring * acc.value();
    });
}

}  // namespace

CriterionReport berezin_criterion(const OperatorSpec& op, double p, double q,
                                  const RadialWeight& w, const RadialWeight& nu, double gamma,
                                  const Sweep& sweep, int level, bool gamma_verified) {
    if (!(p > 0.0) || !(q > 0.0)) throw DomainError("exponents p and q must be positive");
    if (!(p <= q)) throw DomainError("the Berezin criterion needs p <= q");
    if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
    if (op.n < 0) throw DomainError("derivative order n must be nonnegative");

    CriterionReport rep;
    rep.id = CriterionId::BerezinSup;
    rep.params = {p, q, op.n, 0.0, gamma, 0.0};
    if (!gamma_verified) rep.warnings.push_back("gamma was not validated by verify_gamma");

    const int depth = sweep.depth;
    const auto points = sweep_points(sweep, depth + kLevelStride);
    const auto coarse_grid = make_grid(level);
    const auto fine_grid = make_grid(level + kLevelStride);

    std::vector<double> values(points.size(), 0.0);
    std::vector<double> coarse;
    std::vector<double> gaps;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const DiscPoint& a = points[i];
        gaps.push_back(a.gap());
        const double ls = detail::log_square_mass(w, a, sweep.convention);
        if (std::isnan(ls)) {
            values[i] = kNaN;
            if (detail::is_coarse(a.gap(), depth)) coarse.push_back(kNaN);
            continue;
        }
        const double scale = std::exp(-q / p * ls);
        values[i] = scale * berezin_integral(op, q, nu, gamma, a, *fine_grid);
        if (detail::is_coarse(a.gap(), depth)) {
            coarse.push_back(scale * berezin_integral(op, q, nu, gamma, a, *coarse_grid));
        }
    }
    for (std::size_t i = 0; i < points.size(); ++i) rep.samples.push_back({points[i], values[i]});
    detail::summarize_sup(rep, gaps, coarse, level, level + kLevelStride);
    rep.details["phi"] = op.phi.to_json();
    rep.details["u"] = op.u.to_json();
    rep.details["weight"] = w.name();
    rep.details["nu"] = nu.name();
    rep.details["basepoint_depth"] = depth + kLevelStride;
    return rep;
}

CriterionReport hinf_criterion(const OperatorSpec& op, double p, const RadialWeight& w,
                               const Sweep& sweep) {
    if (!(p > 0.0)) throw DomainError("exponent p must be positive");
    if (op.n < 0) throw DomainError("derivative order n must be nonnegative");

    CriterionReport rep;
    rep.id = CriterionId::HinfSup;
    rep.params = {p, 0.0, op.n, sweep.lattice_r, 0.0, 0.0};
    const int depth = sweep.depth;
    const auto points = r_lattice(sweep.lattice_r, depth + kLevelStride);

    std::vector<double> values(points.size());
    std::vector<double> phi_gaps(points.size());
    parallel_for(points.size(), 64, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            const DiscPoint& z = points[i];
            const MappedPoint m = op.phi.eval_with_gap(z.value(), z.gap());
            if (!(m.gap > 0.0)) throw SelfMapError("self-map leaves the open disc");
            phi_gaps[i] = m.gap;
            const double uz = std::abs(op.u.deriv(0, z.value(), z.gap()));
            const DiscPoint image =
                m.gap >= 1.0 ? DiscPoint() : DiscPoint::from_gap(m.gap, std::arg(m.w));
            const double ls = detail::log_square_mass(w, image, sweep.convention);
            if (std::isnan(ls)) {
                values[i] = kNaN;
                continue;
            }
            values[i] = uz == 0.0 ? 0.0
                                  : std::exp(std::log(uz) - ls / p - op.n * std::log(m.gap));
        }
    });

    std::vector<double> coarse;
    double min_gap_coarse = 1.0;
    double min_gap_fine = 1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        rep.samples.push_back({points[i], values[i]});
        min_gap_fine = std::min(min_gap_fine, phi_gaps[i]);
        if (detail::is_coarse(points[i].gap(), depth)) {
            coarse.push_back(values[i]);
            min_gap_coarse = std::min(min_gap_coarse, phi_gaps[i]);
        }
    }
    detail::summarize_sup(rep, phi_gaps, coarse, depth, depth + kLevelStride);

    // sup |phi| < 1 shows up as a boundary distance that stops shrinking when the sweep deepens.
    const bool contained = min_gap_fine >= kPersistingRatio * min_gap_coarse;
    rep.details["sup_abs_phi"] = 1.0 - min_gap_fine;
    rep.details["sup_abs_phi_coarse"] = 1.0 - min_gap_coarse;
    rep.details["phi_contained"] = contained;
    if (rep.value == 0.0) {
        rep.compact_verdict = CompactVerdict::VanishingTail;
    } else if (contained && rep.verdict == Verdict::BoundedConsistent) {
        rep.compact_verdict = CompactVerdict::VanishingTail;
    }
    rep.details["phi"] = op.phi.to_json();
    rep.details["u"] = op.u.to_json();
    rep.details["weight"] = w.name();
    return rep;
}

std::vector<AnalyticFunction> image_test_family(const OperatorSpec& op, double p,
                                                const RadialWeight& w, double gamma,
                                                const std::vector<DiscPoint>& points) {
    std::vector<AnalyticFunction> family;
    for (const DiscPoint& xi : points) {
        const MappedPoint m = op.phi.eval_with_gap(xi.value(), xi.gap());
        if (!(m.gap > 0.0)) throw SelfMapError("self-map leaves the open disc");
        const DiscPoint a = m.gap >= 1.0 ? DiscPoint() : DiscPoint::from_gap(m.gap, std::arg(m.w));
        try {
            family.push_back(test_function(a, gamma, p, w));
        } catch (const DegenerateError&) {
            // basepoint too close to the circle for this weight
        }
    }
    return family;
}

LowerBound operator_norm_lower_bound(const OperatorSpec& op, double p, double q,
                                     const RadialWeight& w, const NormTarget& target,
                                     const std::vector<AnalyticFunction>& family,
                                     const QuadratureGrid& grid) {
    if (family.empty()) throw DomainError("operator-norm probe needs a nonempty family");
    if (!(p > 0.0)) throw DomainError("exponent p must be positive");
    if (target.nu && !(q > 0.0)) throw DomainError("exponent q must be positive");
    if (!target.nu && target.sup_points.empty()) {
        throw DomainError("sup target needs sample points");
    }
    LowerBound out;
    for (std::size_t i = 0; i < family.size(); ++i) {
        const double norm = bergman_norm(family[i], p, w, grid);
        if (!(norm > 0.0) || !std::isfinite(norm)) {
            ++out.skipped;
            std::ostringstream msg;
            msg << "family member " << i << " has norm " << norm << " and was skipped";
            out.warnings.push_back(msg.str());
            continue;
        }
        const PointFunction image = apply_operator(op, family[i]);
        double size = 0.0;
        if (target.nu) {
            const double integral = integrate(
                [&](Complex z, double g) {
                    const double v = std::abs(image(z, g));
                    return v == 0.0 ? 0.0 : std::pow(v, q);
                },
                *target.nu);
            size = std::pow(integral, 1.0 / q);
        } else {
            size = parallel_max(target.sup_points.size(), [&](std::size_t k) {
                const DiscPoint& z = target.sup_points[k];
                return std::abs(image(z.value(), z.gap()));
            });
        }
        const double ratio = size / norm;
        if (ratio > out.value) {
            out.value = ratio;
            out.best = i;
        }
    }
    return out;
}

}  // namespace bergman
