#include <algorithm>
#include <cmath>
#include <sstream>

#include "bergman/errors.hpp"
#include "criteria_internal.hpp"

namespace bergman {
namespace {

// Integral of omega |1 - conj(a) z|^{-c} dA times (1 - |a|)^{c - 1} / omega_hat(a).
double kernel_ratio(const RadialWeight& w, double c, const DiscPoint& a,
                    const QuadratureGrid& grid) {
    const double log_right = (c - 1.0) * std::log(a.gap()) - std::log(w.hat_at_gap(a.gap()));
    return integrate_rings(grid, [&](const GridRing& ring, const std::vector<Complex>& roots,
                                     std::size_t begin, std::size_t end) {
        CompensatedSum acc;
        for (std::size_t j = begin; j < end; ++j) {
            const Complex k = one_minus_conj_product(a.value(), a.gap(), ring.radius * roots[j],
                                                     ring.gap);
            acc.add(std::exp(log_right - 0.5 * c * std::log(std::norm(k))));
        }
        return w.at_gap(ring.gap) * acc.value();
    });
}

}  // namespace

GammaCheck verify_gamma(const RadialWeight& w, double p, double gamma, int depth, int level) {
    if (!(p > 0.0) || !(gamma > 0.0)) throw DomainError("verify_gamma needs p, gamma > 0");
    if (depth <= kLevelStride) throw DomainError("verify_gamma needs depth > 2");
    GammaCheck check;
    check.gamma = gamma;
    const double c = gamma * p;
    const auto points = radial_ray(0.5, depth);
    const auto coarse_grid = make_grid(level);
    const auto fine_grid = make_grid(level + kLevelStride);

    double shallow = 0.0;
    for (const DiscPoint& a : points) {
        const double coarse = kernel_ratio(w, c, a, *coarse_grid);
        const double fine = kernel_ratio(w, c, a, *fine_grid);
        check.ratios.push_back({a, fine});
        check.worst_C_coarse = std::max(check.worst_C_coarse, coarse);
        check.worst_C = std::max(check.worst_C, fine);
        if (detail::is_coarse(a.gap(), depth - kLevelStride)) shallow = std::max(shallow, fine);
    }
    check.drift = std::abs(check.worst_C - check.worst_C_coarse) / check.worst_C_coarse;
    check.growth = check.worst_C / shallow;

    std::ostringstream msg;
    if (!std::isfinite(check.worst_C) || !std::isfinite(check.worst_C_coarse)) {
        msg << "kernel integral is not finite";
    } else if (check.drift >= kGammaDrift) {
        msg << "worst C drifts by " << check.drift * 100.0 << "% under grid refinement";
    } else if (check.growth >= kGrowthThreshold) {
        msg << "ratio grows by a factor " << check.growth << " over the last two dyadic levels";
    } else {
        check.passed = true;
        msg << "ratio bounded by " << check.worst_C << " for |a| <= " << 1.0 - std::exp2(-depth);
    }
    check.diagnostic = msg.str();
    return check;
}

GammaChoice gamma_for(const RadialWeight& w, double p, const WeightClassReport& report,
                      int depth, int level) {
    GammaChoice choice;
    double gamma = initial_gamma(p, report);
    for (int attempt = 0; attempt <= kGammaRetries; ++attempt) {
        choice.attempts = attempt + 1;
        choice.gamma = gamma;
        choice.check = verify_gamma(w, p, gamma, depth, level);
        if (choice.check.passed) {
            choice.verified = true;
            return choice;
        }
        if (attempt < kGammaRetries) gamma *= kGammaEscalation;
    }
    return choice;
}

}  // namespace bergman
