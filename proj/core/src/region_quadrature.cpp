#include "bergman/region_quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "bergman/numerics.hpp"

namespace bergman {
namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double depth_of_radius(double radius) {
    if (radius >= 1.0) return kRegionDepthCap;
    return std::min(kRegionDepthCap, -std::log2(1.0 - radius));
}

// Radial pieces in t = -log2(gap): unit pieces near the inner edge, then doubling.
std::vector<std::pair<double, double>> radial_pieces(double t_lo, double t_hi) {
    std::vector<std::pair<double, double>> pieces;
    double t = t_lo;
    double width = 1.0;
    int unit_pieces = 0;
    while (t < t_hi - 1e-14) {
        const double next = std::min(t_hi, t + width);
        pieces.emplace_back(t, next);
        t = next;
        if (++unit_pieces >= 12) width *= 2.0;
    }
    return pieces;
}

// Angular interval (center, halfwidth) at radius s; halfwidth < 0 means empty,
// halfwidth >= pi means the full circle.
using AngularFn = std::function<std::pair<double, double>(double)>;

void polar_rule(double r_lo, double r_hi, const AngularFn& angular,
                const RegionRuleOptions& opt, std::vector<QuadNode>& out) {
    if (!(r_hi > r_lo)) return;
    const double t_lo = depth_of_radius(r_lo);
    const double t_hi = depth_of_radius(r_hi);
    const auto& gl_r = gauss_legendre(static_cast<std::size_t>(opt.radial_order));
    const auto& gl_a = gauss_legendre(static_cast<std::size_t>(opt.angular_order));
    for (const auto& [a, b] : radial_pieces(t_lo, t_hi)) {
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        for (std::size_t i = 0; i < gl_r.nodes.size(); ++i) {
            const double t = mid + half * gl_r.nodes[i];
            const double gap = std::exp2(-t);
            const double s = 1.0 - gap;
            // (1/pi) s ds dtheta with ds = ln2 * gap * dt
            const double radial_w = half * gl_r.weights[i] * std::numbers::ln2 * gap * s / kPi;
            const auto [center, hw] = angular(s);
            if (!(hw > 0.0)) continue;
            if (hw >= kPi) {
                const int m = opt.full_circle;
                const double dtheta = 2.0 * kPi / m;
                for (int k = 0; k < m; ++k) {
                    const double theta = (k + 0.5) * dtheta;
                    out.push_back({std::polar(s, theta), gap, radial_w * dtheta});
                }
            } else {
                for (std::size_t k = 0; k < gl_a.nodes.size(); ++k) {
                    const double theta = center + hw * gl_a.nodes[k];
                    out.push_back({std::polar(s, theta), gap, radial_w * hw * gl_a.weights[k]});
                }
            }
        }
    }
}

void euclidean_disc_rule(Complex center, double radius, const RegionRuleOptions& opt,
                         std::vector<QuadNode>& out) {
    const auto& gl = gauss_legendre(static_cast<std::size_t>(opt.disc_radial));
    const int m = opt.disc_angular;
    const double dpsi = 2.0 * kPi / m;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double rr = 0.5 * radius * (1.0 + gl.nodes[i]);
        const double w = 0.5 * radius * gl.weights[i] * rr * dpsi / kPi;
        for (int k = 0; k < m; ++k) {
            const Complex z = center + std::polar(rr, (k + 0.5) * dpsi);
            const double mod = std::abs(z);
            out.push_back({z, 1.0 - mod, w});
        }
    }
}

// Polar rule about the origin for discs that reach near it, where |z| is not smooth.
// The substitution s = mid - half cos(u) absorbs the square-root ends of the arc width.
void origin_disc_rule(Complex center, double radius, const RegionRuleOptions& opt,
                      std::vector<QuadNode>& out) {
    const double c = std::abs(center);
    const double phase = c > 0.0 ? std::arg(center) : 0.0;
    const auto& gl_r = gauss_legendre(static_cast<std::size_t>(opt.disc_radial));
    const auto& gl_a = gauss_legendre(static_cast<std::size_t>(opt.disc_angular / 2));
    const int m = opt.disc_angular;
    auto push = [&](double s, double radial_w, double centre, double hw) {
        if (hw >= kPi) {
            const double dtheta = 2.0 * kPi / m;
            for (int k = 0; k < m; ++k) {
                out.push_back({std::polar(s, (k + 0.5) * dtheta), 1.0 - s, radial_w * dtheta});
            }
            return;
        }
        for (std::size_t k = 0; k < gl_a.nodes.size(); ++k) {
            out.push_back({std::polar(s, centre + hw * gl_a.nodes[k]), 1.0 - s,
                           radial_w * hw * gl_a.weights[k]});
        }
    };
    const double full = radius - c;
    if (full > 0.0) {
        for (std::size_t i = 0; i < gl_r.nodes.size(); ++i) {
            const double s = 0.5 * full * (1.0 + gl_r.nodes[i]);
            push(s, 0.5 * full * gl_r.weights[i] * s / kPi, 0.0, kPi);
        }
    }
    if (!(c > 0.0)) return;
    const double lo = std::abs(c - radius);
    const double hi = c + radius;
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < gl_r.nodes.size(); ++i) {
        const double u = 0.5 * kPi * (1.0 + gl_r.nodes[i]);
        const double s = mid - half * std::cos(u);
        const double ds = half * std::sin(u) * 0.5 * kPi * gl_r.weights[i];
        const double x = (s * s + c * c - radius * radius) / (2.0 * s * c);
        const double hw = std::acos(std::clamp(x, -1.0, 1.0));
        if (!(hw > 0.0)) continue;
        push(s, ds * s / kPi, phase, hw);
    }
}

}  // namespace

std::vector<QuadNode> region_rule(const Region& region, const RegionRuleOptions& options) {
    std::vector<QuadNode> out;
    std::visit(
        Overloaded{
            [&](const WholeDisc&) {
                polar_rule(0.0, 1.0, [](double) { return std::pair{0.0, kPi}; }, options, out);
            },
            [&](const CarlesonSquare& sq) {
                if (sq.whole_disc()) {
                    polar_rule(0.0, 1.0, [](double) { return std::pair{0.0, kPi}; }, options,
                               out);
                    return;
                }
                const double c = sq.base().arg();
                const double h = sq.angular_halfwidth();
                polar_rule(sq.radial_lower(), 1.0, [=](double) { return std::pair{c, h}; },
                           options, out);
            },
            [&](const PseudoDisc& d) {
                const Complex c = d.euclid_center();
                const double rad = d.euclid_radius();
                if (std::abs(c) < 2.0 * rad) {
                    origin_disc_rule(c, rad, options, out);
                } else {
                    euclidean_disc_rule(c, rad, options, out);
                }
            },
            [&](const Tent& t) {
                const double v = t.vertex().abs();
                const double c = t.vertex().arg();
                polar_rule(v, 1.0, [=](double s) { return std::pair{c, 0.5 * (1.0 - v / s)}; },
                           options, out);
            },
            [&](const NtRegion& g) {
                const double v = std::abs(g.vertex());
                const double c = std::arg(g.vertex());
                polar_rule(0.0, v, [=](double s) { return std::pair{c, 0.5 * (1.0 - s / v)}; },
                           options, out);
            },
            [&](const Annulus& a) {
                polar_rule(a.inner, a.outer, [](double) { return std::pair{0.0, kPi}; }, options,
                           out);
            }},
        region);
    return out;
}

}  // namespace bergman
