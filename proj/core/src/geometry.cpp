#include "bergman/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bergman/errors.hpp"

namespace bergman {
namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

DiscPoint::DiscPoint(Complex z) : z_(z), gap_(1.0 - std::abs(z)) {
    if (!(gap_ > 0.0) || !std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        std::ostringstream msg;
        msg << "point (" << z.real() << ", " << z.imag() << ") is not in the open unit disc";
        throw DomainError(msg.str());
    }
}

DiscPoint DiscPoint::polar(double radius, double angle) {
    if (!(radius >= 0.0) || !(radius < 1.0)) {
        throw DomainError("polar radius must lie in [0, 1)");
    }
    return from_gap(1.0 - radius, angle);
}

DiscPoint DiscPoint::from_gap(double gap, double angle) {
    if (!(gap > 0.0) || !(gap <= 1.0)) throw DomainError("gap must lie in (0, 1]");
    DiscPoint p;
    p.z_ = std::polar(1.0 - gap, angle);
    p.gap_ = gap;
    return p;
}

double rho(Complex a, Complex b) noexcept {
    return std::abs(a - b) / std::abs(1.0 - std::conj(a) * b);
}

Complex moebius(Complex c, Complex z) noexcept { return (z - c) / (1.0 - std::conj(c) * z); }

double wrap_angle(double angle) noexcept {
    double r = std::remainder(angle, 2.0 * kPi);
    if (r <= -kPi) r += 2.0 * kPi;
    return r;
}

CarlesonSquare::CarlesonSquare(DiscPoint base, CarlesonConvention convention)
    : base_(base), convention_(convention) {}

double CarlesonSquare::radial_lower() const noexcept {
    if (whole_disc()) return 0.0;
    return convention_ == CarlesonConvention::Standard ? base_.abs() : base_.gap();
}

bool CarlesonSquare::contains(Complex zeta) const noexcept {
    if (whole_disc()) return std::abs(zeta) < 1.0;
    const double m = std::abs(zeta);
    if (m >= 1.0) return false;
    const bool radial = convention_ == CarlesonConvention::Standard ? m >= base_.abs()
                                                                   : m > base_.gap();
    if (!radial) return false;
    const double diff = wrap_angle(std::arg(zeta) - base_.arg());
    const double h = angular_halfwidth();
    return diff >= -h && diff < h;
}

PseudoDisc::PseudoDisc(DiscPoint center, double radius) : center_(center), radius_(radius) {
    if (!(radius > 0.0) || !(radius < 1.0)) {
        throw DomainError("pseudohyperbolic radius must lie in (0, 1)");
    }
    const double r2 = radius * radius;
    const double g = center.gap();
    const double one_minus_a2 = g * (2.0 - g);
    const double a2 = 1.0 - one_minus_a2;
    const double denom = 1.0 - r2 * a2;
    euclid_center_ = center.value() * ((1.0 - r2) / denom);
    euclid_radius_ = one_minus_a2 * radius / denom;
}

bool PseudoDisc::contains(Complex zeta) const noexcept {
    if (std::abs(zeta) >= 1.0) return false;
    return rho(center_.value(), zeta) < radius_;
}

Tent::Tent(DiscPoint vertex) : vertex_(vertex) {
    if (vertex.is_origin()) throw DomainError("the tent T(z) is only defined for z != 0");
}

bool Tent::contains(Complex zeta) const noexcept {
    const double m = std::abs(zeta);
    const double v = vertex_.abs();
    if (m >= 1.0 || m <= v) return false;
    const double diff = std::abs(wrap_angle(std::arg(zeta) - vertex_.arg()));
    return diff < 0.5 * (1.0 - v / m);
}

NtRegion::NtRegion(Complex vertex) : vertex_(vertex) {
    const double m = std::abs(vertex);
    if (!(m > 0.0) || m > 1.0) {
        throw DomainError("non-tangential region vertex must lie in the closed disc minus 0");
    }
}

bool NtRegion::contains(Complex zeta) const noexcept {
    const double m = std::abs(zeta);
    const double v = std::abs(vertex_);
    if (m >= 1.0 || m >= v) return false;
    const double diff = std::abs(wrap_angle(std::arg(vertex_) - std::arg(zeta)));
    return diff < 0.5 * (1.0 - m / v);
}

bool contains(const Region& region, Complex zeta) noexcept {
    return std::visit(Overloaded{[&](const WholeDisc&) { return std::abs(zeta) < 1.0; },
                                 [&](const auto& r) { return r.contains(zeta); }},
                      region);
}

CarlesonSquare carleson_square(const DiscPoint& z, CarlesonConvention convention) {
    return CarlesonSquare(z, convention);
}

PseudoDisc pseudo_disc(const DiscPoint& a, double r) { return PseudoDisc(a, r); }

Tent tent(const DiscPoint& z) { return Tent(z); }

NtRegion nt_region(Complex z) { return NtRegion(z); }

PolarBox bounding_box(const Region& region) noexcept {
    return std::visit(
        Overloaded{
            [](const WholeDisc&) { return PolarBox{}; },
            [](const CarlesonSquare& s) {
                if (s.whole_disc()) return PolarBox{};
                return PolarBox{s.radial_lower(), 1.0, false, s.base().arg(),
                                s.angular_halfwidth()};
            },
            [](const PseudoDisc& d) {
                const double c = std::abs(d.euclid_center());
                const double R = d.euclid_radius();
                PolarBox box;
                box.r_min = std::max(0.0, c - R);
                box.r_max = std::min(1.0, c + R);
                if (c > R) {
                    box.full_circle = false;
                    box.angle_center = std::arg(d.euclid_center());
                    box.angle_halfwidth = std::asin(std::min(1.0, R / c));
                }
                return box;
            },
            [](const Tent& t) {
                return PolarBox{t.vertex().abs(), 1.0, false, t.vertex().arg(), 0.5};
            },
            [](const NtRegion& g) {
                return PolarBox{0.0, std::abs(g.vertex()), false, std::arg(g.vertex()), 0.5};
            },
            [](const Annulus& a) { return PolarBox{a.inner, a.outer, true, 0.0, 0.0}; }},
        region);
}

LatticeLayout lattice_layout(double r, int depth) {
    if (!(r > 0.0) || !(r < 1.0)) throw DomainError("lattice radius must lie in (0, 1)");
    if (depth < 1) throw DomainError("lattice depth must be at least 1");
    const double b = std::atanh(r);

    // Consecutive rings at most b apart hyperbolically; the first step (from the
    // origin) is the largest one.
    int m = 1;
    for (;; ++m) {
        const double step = std::atanh(1.0 - std::exp2(-1.0 / m));
        if (step <= b * (1.0 + 1e-12)) break;
        if (m > 1'000'000) throw ResourceError("lattice radius too small");
    }

    LatticeLayout layout;
    layout.r = r;
    layout.depth = depth;
    layout.rings_per_level = m;
    const double half = std::tanh(b / 2.0);
    const double shrink = half / std::sqrt(1.0 - half * half);
    const long rings = static_cast<long>(m) * depth;
    layout.ring_gaps.reserve(static_cast<std::size_t>(rings));
    layout.ring_sizes.reserve(static_cast<std::size_t>(rings));
    for (long j = 1; j <= rings; ++j) {
        const double gap = std::exp2(-static_cast<double>(j) / m);
        const double radius = 1.0 - gap;
        // Largest half-spacing psi with rho(R, R e^{i psi}) <= tanh(b/2).
        const double s = shrink * gap * (2.0 - gap) / (2.0 * radius);
        const double psi = s >= 1.0 ? kPi : 2.0 * std::asin(s);
        const double count = std::max(1.0, std::ceil(kPi / psi));
        if (count > static_cast<double>(kMaxLatticeSize) ||
            static_cast<double>(layout.total) + count > static_cast<double>(kMaxLatticeSize)) {
            throw ResourceError("r-lattice would exceed 1e7 points; increase r or reduce depth");
        }
        layout.ring_gaps.push_back(gap);
        layout.ring_sizes.push_back(static_cast<std::size_t>(count));
        layout.total += static_cast<std::size_t>(count);
    }
    return layout;
}

std::vector<DiscPoint> r_lattice(double r, int depth) {
    const LatticeLayout layout = lattice_layout(r, depth);
    std::vector<DiscPoint> points;
    points.reserve(layout.total);
    points.emplace_back();
    for (std::size_t k = 0; k < layout.ring_gaps.size(); ++k) {
        const std::size_t count = layout.ring_sizes[k];
        for (std::size_t i = 0; i < count; ++i) {
            const double angle = wrap_angle(2.0 * kPi * static_cast<double>(i) /
                                            static_cast<double>(count));
            points.push_back(DiscPoint::from_gap(layout.ring_gaps[k], angle));
        }
    }
    return points;
}

std::vector<DiscPoint> radial_ray(double r, int depth) {
    const LatticeLayout layout = lattice_layout(r, depth);
    std::vector<DiscPoint> points;
    points.reserve(layout.ring_gaps.size() + 1);
    points.emplace_back();
    for (double gap : layout.ring_gaps) points.push_back(DiscPoint::from_gap(gap, 0.0));
    return points;
}

}  // namespace bergman
