#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "bergman/errors.hpp"
#include "bergman/numerics.hpp"
#include "bergman/weights.hpp"

namespace bergman {
namespace {

constexpr int kPointsPerLevel = 8;
constexpr int kFitWindow = 9;
constexpr std::array<double, 4> kDcheckK{2.0, 4.0, 8.0, 16.0};
constexpr std::array<double, 3> kMomentK{2.0, 4.0, 8.0};
constexpr int kMomentOctaves = 10;

struct MeshScan {
    std::vector<double> gaps;
    std::vector<double> hat;
    bool truncated = false;
    double truncation_gap = 0.0;
};

// Mesh 1 - r = 2^{-i/8}, cut at the first point whose half-gap tail underflows.
MeshScan scan(const RadialWeight& w, int points) {
    MeshScan s;
    for (int i = 0; i < points; ++i) {
        const double g = std::exp2(-static_cast<double>(i) / kPointsPerLevel);
        const double h = w.hat_at_gap(g);
        if (h < kUnderflowFloor || w.hat_at_gap(g / 2.0) < kUnderflowFloor) {
            s.truncated = true;
            s.truncation_gap = g;
            break;
        }
        s.gaps.push_back(g);
        s.hat.push_back(h);
    }
    return s;
}

double dhat_sup(const RadialWeight& w, const MeshScan& s) {
    double best = 0.0;
    for (std::size_t i = 0; i < s.gaps.size(); ++i) {
        best = std::max(best, s.hat[i] / w.hat_at_gap(s.gaps[i] / 2.0));
    }
    return best;
}

// min over the mesh of omega_hat(r) / omega_hat(1 - (1 - r) / K); underflowed
// denominators only make the ratio larger and are skipped.
double dcheck_min(const RadialWeight& w, const MeshScan& s, double K) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.gaps.size(); ++i) {
        const double d = w.hat_at_gap(s.gaps[i] / K);
        if (d < kUnderflowFloor) continue;
        best = std::min(best, s.hat[i] / d);
    }
    return best;
}

double relative_change(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b)) return std::numeric_limits<double>::infinity();
    return std::abs(b - a) / std::max(std::abs(a), std::numeric_limits<double>::min());
}

// Least-squares slopes of log omega_hat against log(1 - r) over sliding windows.
std::vector<double> local_slopes(const MeshScan& s) {
    std::vector<double> slopes;
    if (s.gaps.size() < static_cast<std::size_t>(kFitWindow)) return slopes;
    for (std::size_t start = 0; start + kFitWindow <= s.gaps.size(); ++start) {
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        for (std::size_t k = start; k < start + kFitWindow; ++k) {
            const double x = std::log(s.gaps[k]);
            const double y = std::log(s.hat[k]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double n = kFitWindow;
        slopes.push_back((n * sxy - sx * sy) / (n * sxx - sx * sx));
    }
    return slopes;
}

}  // namespace

WeightClassReport classify(const RadialWeight& w, int mesh) {
    if (mesh < 64) throw DomainError("classify needs a mesh of at least 64 points");
    WeightClassReport rep;
    rep.weight_name = w.name();
    rep.mesh_resolution = mesh;

    const MeshScan coarse = scan(w, mesh);
    const MeshScan fine = scan(w, 2 * mesh);
    rep.truncated = fine.truncated;
    rep.truncation_gap = fine.truncation_gap;
    rep.mesh_gaps = coarse.gaps;

    rep.dhat_constant = dhat_sup(w, coarse);
    rep.dhat_constant_refined = dhat_sup(w, fine);
    rep.flags.dhat = !fine.truncated && std::isfinite(rep.dhat_constant_refined) &&
                     relative_change(rep.dhat_constant, rep.dhat_constant_refined) <
                         kClassStability;

    for (double K : kDcheckK) {
        const double c = dcheck_min(w, coarse, K);
        const double c_fine = dcheck_min(w, fine, K);
        if (rep.dcheck_pair.C < c && std::isfinite(c)) rep.dcheck_pair = {K, c};
        if (std::isfinite(c) && c_fine >= 1.0 + kClassMargin &&
            relative_change(c, c_fine) < kClassStability) {
            rep.dcheck_pair = {K, c};
            rep.flags.dcheck = true;
            break;
        }
    }

    rep.local_exponents = local_slopes(coarse);
    if (!rep.local_exponents.empty()) {
        const auto [lo, hi] =
            std::minmax_element(rep.local_exponents.begin(), rep.local_exponents.end());
        const double alpha = *lo;
        const double beta = *hi;
        rep.exponents = std::make_pair(alpha, beta);
        double worst = 0.0;
        const auto& g = coarse.gaps;
        const auto& h = coarse.hat;
        for (std::size_t i = 0; i < g.size(); ++i) {
            for (std::size_t j = i + 1; j < g.size(); ++j) {
                // r_i <= r_j, so x = (1 - r_i) / (1 - r_j) >= 1.
                const double lx = std::log(g[i] / g[j]);
                const double lratio = std::log(h[i] / h[j]);
                worst = std::max(worst, lratio - beta * lx);
                worst = std::max(worst, alpha * lx - lratio);
            }
        }
        rep.sandwich_constant = std::exp(worst);
    }

    std::vector<double> moments;
    for (int k = 0; k <= kMomentOctaves; ++k) moments.push_back(moment(w, std::exp2(k)));
    for (double K : kMomentK) {
        const int step = static_cast<int>(std::lround(std::log2(K)));
        double c = std::numeric_limits<double>::infinity();
        for (int k = 0; k + step <= kMomentOctaves; ++k) {
            if (moments[k + step] <= 0.0) continue;
            c = std::min(c, moments[k] / moments[k + step]);
        }
        if (rep.class_m_pair.C < c && std::isfinite(c)) rep.class_m_pair = {K, c};
        if (std::isfinite(c) && c >= 1.0 + kClassMargin) {
            rep.class_m_pair = {K, c};
            rep.flags.class_m = true;
            break;
        }
    }

    rep.flags.doubling = rep.flags.dhat && rep.flags.dcheck;
    return rep;
}

double initial_gamma(double p, const WeightClassReport& report) {
    if (!(p > 0.0)) throw DomainError("gamma needs p > 0");
    if (!report.flags.doubling || !report.exponents) {
        throw DomainError("gamma is only defined for weights classified as doubling");
    }
    return 2.0 * (report.exponents->second + 2.0) / p;
}

}  // namespace bergman
