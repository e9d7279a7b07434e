#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bergman/geometry.hpp"

namespace bergman {

/// Radial weight omega on the disc, stored as a density in the boundary distance
/// g = 1 - |z|. The tail integral omega_hat is tabulated eagerly on the geometric
/// mesh g_j = 2^{-j/8}; the object is immutable and cheap to copy.
class RadialWeight {
public:
    using GapDensity = std::function<double(double gap)>;

    RadialWeight(std::string name, GapDensity density, nlohmann::json spec = nullptr);

    /// (1 - r)^alpha, alpha > -1.
    static RadialWeight power(double alpha);
    /// (1 - r)^alpha * log(e / (1 - r))^b.
    static RadialWeight log_power(double alpha, double b);
    /// exp(-1 / (1 - r)); rapidly decreasing, outside the upper doubling class.
    static RadialWeight exponential();
    /// Piecewise-linear interpolation of (r, w) samples, constant beyond the ends.
    static RadialWeight table(std::vector<double> r, std::vector<double> w);
    static RadialWeight from_radius(std::string name, std::function<double(double)> density);
    /// omega_tilde(r) = omega_hat(r) / (1 - r) as a weight of its own.
    static RadialWeight tilde_of(const RadialWeight& w);

    const std::string& name() const noexcept;
    /// Configuration object this weight was built from (null for ad-hoc weights).
    const nlohmann::json& spec() const noexcept;

    double operator()(double r) const { return at_gap(1.0 - r); }
    double at_gap(double gap) const;

    /// Integral of omega over [0, gap] in the boundary distance, i.e. omega_hat(1 - gap).
    double hat_at_gap(double gap) const;
    /// Integral of g * omega(g) over [0, gap].
    double gap_moment_at_gap(double gap) const;
    /// Integral of s * omega(s) over [1 - gap, 1].
    double radial_moment_tail(double gap) const {
        return hat_at_gap(gap) - gap_moment_at_gap(gap);
    }

    /// Smallest mesh gap of the cache; below it the tail is extrapolated geometrically.
    double mesh_floor() const noexcept;

private:
    struct State;
    std::shared_ptr<const State> state_;
};

/// omega_hat(r) = integral of omega over [r, 1].
double omega_hat(const RadialWeight& w, double r);
/// omega_hat(r) / (1 - r); r must be < 1.
double omega_tilde(const RadialWeight& w, double r);
/// omega_x = integral of r^x omega(r) over [0, 1], x >= 1.
double moment(const RadialWeight& w, double x);
/// omega(E) = integral over E of omega dA with dA normalised so that |D| = 1.
double weighted_area(const RadialWeight& w, const Region& region);

struct ClassFlags {
    bool dhat = false;
    bool dcheck = false;
    bool doubling = false;  // dhat && dcheck
    bool class_m = false;
};

struct ConstantPair {
    double K = 0.0;
    double C = 0.0;
};

struct WeightClassReport {
    std::string weight_name;
    int mesh_resolution = 0;
    /// max over the mesh of omega_hat(r) / omega_hat((1 + r) / 2), at mesh and 2 * mesh.
    double dhat_constant = 0.0;
    double dhat_constant_refined = 0.0;
    ConstantPair dcheck_pair;
    /// (alpha, beta) of the two-sided power sandwich; empty when the fit had too few points.
    std::optional<std::pair<double, double>> exponents;
    /// Smallest C making the sandwich hold on every mesh pair for the fitted exponents.
    double sandwich_constant = 0.0;
    ConstantPair class_m_pair;
    ClassFlags flags;
    bool truncated = false;
    double truncation_gap = 0.0;  // first discarded mesh gap when truncated
    std::vector<double> mesh_gaps;
    std::vector<double> local_exponents;
};

/// Relative change tolerated between mesh and 2 * mesh before a constant counts as stable.
inline constexpr double kClassStability = 0.02;
/// Lower constants of the dcheck and M conditions must exceed 1 by this margin.
inline constexpr double kClassMargin = 0.05;

/// Empirical class membership of `w`. The mesh holds `mesh` points at 1 - r = 2^{-i/8}.
WeightClassReport classify(const RadialWeight& w, int mesh = 256);

/// 2 (beta + 2) / p with beta the fitted upper exponent; the starting point of the
/// escalation performed by criteria::gamma_for.
double initial_gamma(double p, const WeightClassReport& report);

}  // namespace bergman
