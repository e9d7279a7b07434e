#pragma once

#include <complex>
#include <cstddef>
#include <variant>
#include <vector>

namespace bergman {

using Complex = std::complex<double>;

/// A point of the open unit disc. The distance to the boundary (`gap`) is carried
/// alongside the coordinates so points created near |z| = 1 keep full relative
/// precision in 1 - |z|.
class DiscPoint {
public:
    DiscPoint() = default;
    explicit DiscPoint(Complex z);
    DiscPoint(double re, double im) : DiscPoint(Complex(re, im)) {}

    static DiscPoint polar(double radius, double angle);
    /// Point at distance `gap` in (0, 1] from the unit circle.
    static DiscPoint from_gap(double gap, double angle);

    Complex value() const noexcept { return z_; }
    double re() const noexcept { return z_.real(); }
    double im() const noexcept { return z_.imag(); }
    double abs() const noexcept { return 1.0 - gap_; }
    double arg() const noexcept { return std::arg(z_); }
    double gap() const noexcept { return gap_; }
    bool is_origin() const noexcept { return z_ == Complex(0.0, 0.0); }

private:
    Complex z_{0.0, 0.0};
    double gap_ = 1.0;
};

/// Pseudohyperbolic distance |(a - b) / (1 - conj(a) b)|.
double rho(Complex a, Complex b) noexcept;
inline double rho(const DiscPoint& a, const DiscPoint& b) noexcept {
    return rho(a.value(), b.value());
}

/// Disc automorphism z -> (z - c) / (1 - conj(c) z).
Complex moebius(Complex c, Complex z) noexcept;

/// Angle reduced to (-pi, pi].
double wrap_angle(double angle) noexcept;

/// Radial side of a Carleson square. `Standard` uses |z| <= |zeta|; `Literal` keeps
/// the printed 1 - |z| < |zeta| variant for comparison runs.
enum class CarlesonConvention { Standard, Literal };

struct WholeDisc {};

class CarlesonSquare {
public:
    CarlesonSquare() = default;  // S(0), the whole disc
    CarlesonSquare(DiscPoint base, CarlesonConvention convention);

    const DiscPoint& base() const noexcept { return base_; }
    CarlesonConvention convention() const noexcept { return convention_; }
    bool whole_disc() const noexcept { return base_.is_origin(); }
    /// Lower end of the radial interval [lower, 1).
    double radial_lower() const noexcept;
    double angular_halfwidth() const noexcept { return base_.gap() / 2.0; }
    bool contains(Complex zeta) const noexcept;

private:
    DiscPoint base_{};
    CarlesonConvention convention_ = CarlesonConvention::Standard;
};

class PseudoDisc {
public:
    PseudoDisc(DiscPoint center, double radius);

    const DiscPoint& center() const noexcept { return center_; }
    double radius() const noexcept { return radius_; }
    Complex euclid_center() const noexcept { return euclid_center_; }
    double euclid_radius() const noexcept { return euclid_radius_; }
    bool contains(Complex zeta) const noexcept;

private:
    DiscPoint center_;
    double radius_;
    Complex euclid_center_;
    double euclid_radius_;
};

/// Tent T(z) = { zeta : z in Gamma(zeta) }, defined for z != 0.
class Tent {
public:
    explicit Tent(DiscPoint vertex);
    const DiscPoint& vertex() const noexcept { return vertex_; }
    bool contains(Complex zeta) const noexcept;

private:
    DiscPoint vertex_;
};

/// Non-tangential approach region Gamma(z), vertex in the closed disc minus 0.
class NtRegion {
public:
    explicit NtRegion(Complex vertex);
    Complex vertex() const noexcept { return vertex_; }
    bool contains(Complex zeta) const noexcept;

private:
    Complex vertex_;
};

/// inner <= |zeta| < outer.
struct Annulus {
    double inner = 0.0;
    double outer = 1.0;
    bool contains(Complex zeta) const noexcept {
        const double m = std::abs(zeta);
        return m >= inner && m < outer;
    }
};

using Region = std::variant<WholeDisc, CarlesonSquare, PseudoDisc, Tent, NtRegion, Annulus>;

bool contains(const Region& region, Complex zeta) noexcept;

CarlesonSquare carleson_square(const DiscPoint& z,
                               CarlesonConvention convention = CarlesonConvention::Standard);
PseudoDisc pseudo_disc(const DiscPoint& a, double r);
Tent tent(const DiscPoint& z);
NtRegion nt_region(Complex z);

/// Conservative polar box { r_min <= |zeta| <= r_max, |arg zeta - angle_center| <= angle_halfwidth }.
struct PolarBox {
    double r_min = 0.0;
    double r_max = 1.0;
    bool full_circle = true;
    double angle_center = 0.0;
    double angle_halfwidth = 0.0;
};

PolarBox bounding_box(const Region& region) noexcept;

/// Ring layout of the dyadic r-lattice: rings at 1 - |z| = 2^{-j/rings_per_level}.
struct LatticeLayout {
    double r = 0.5;
    int depth = 10;
    int rings_per_level = 1;
    std::vector<double> ring_gaps;       // excludes the origin
    std::vector<std::size_t> ring_sizes;  // points per ring
    std::size_t total = 1;                // including the origin
};

inline constexpr std::size_t kMaxLatticeSize = 10'000'000;

LatticeLayout lattice_layout(double r, int depth);

/// Points of the r-lattice with 1 - |z| >= 2^{-depth}. Every point of that disc lies
/// within pseudohyperbolic distance r of a node; distinct nodes are at least r/5 apart.
std::vector<DiscPoint> r_lattice(double r, int depth = 10);

/// The lattice nodes on the positive real axis (the origin plus one node per ring).
std::vector<DiscPoint> radial_ray(double r, int depth = 10);

}  // namespace bergman
