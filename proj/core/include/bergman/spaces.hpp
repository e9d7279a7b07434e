#pragma once

#include <functional>
#include <limits>

#include "bergman/functions.hpp"
#include "bergman/grid.hpp"
#include "bergman/weights.hpp"

namespace bergman {

/// D^n_{phi,u} f = u * (f^{(n)} o phi).
struct OperatorSpec {
    SelfMap phi;
    AnalyticFunction u = AnalyticFunction::constant(1.0);
    int n = 0;
};

using PointFunction = std::function<Complex(Complex z, double gap)>;

PointFunction apply_operator(const OperatorSpec& op, const AnalyticFunction& f);

/// (integral of |f|^p omega dA)^{1/p} on the grid.
double bergman_norm(const AnalyticFunction& f, double p, const RadialWeight& w,
                    const QuadratureGrid& grid);

/// Norm at grid levels L and L + 2; `unbounded` when the finer value grew by >= 25%.
struct NormEstimate {
    double coarse = 0.0;
    double fine = 0.0;
    double relative_change = 0.0;
    bool unbounded = false;
};

inline constexpr double kDivergenceGrowth = 1.25;

NormEstimate bergman_norm_refined(const AnalyticFunction& f, double p, const RadialWeight& w,
                                  int level);

inline constexpr int kHardyAngles = 2048;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// M_p(r, f) by the trapezoidal rule; p = infinity gives the maximum over the samples.
double hardy_means(const AnalyticFunction& f, double p, double r, int angles = kHardyAngles);

/// f_a(z) = ((1 - |a|) / (1 - conj(a) z))^gamma * omega(S(a))^{-1/p}.
AnalyticFunction test_function(const DiscPoint& a, double gamma, double p, const RadialWeight& w,
                               CarlesonConvention convention = CarlesonConvention::Standard);

}  // namespace bergman
