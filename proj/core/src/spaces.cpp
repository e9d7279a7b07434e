#include "bergman/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bergman/errors.hpp"
#include "bergman/numerics.hpp"

namespace bergman {

PointFunction apply_operator(const OperatorSpec& op, const AnalyticFunction& f) {
    if (op.n < 0) throw DomainError("operator order n must be nonnegative");
    return [op, f](Complex z, double gap) {
        const MappedPoint w = op.phi.eval_with_gap(z, gap);
        if (!(w.gap > 0.0)) throw SelfMapError("self-map leaves the open disc");
        return op.u.deriv(0, z, gap) * f.deriv(op.n, w.w, w.gap);
    };
}

double bergman_norm(const AnalyticFunction& f, double p, const RadialWeight& w,
                    const QuadratureGrid& grid) {
    if (!(p > 0.0)) throw DomainError("norm exponent p must be positive");
    const double integral = integrate(
        [&](const QuadNode& n) {
            const double v = std::abs(f.deriv(0, n.z, n.gap));
            return (v == 0.0 ? 0.0 : std::pow(v, p)) * w.at_gap(n.gap);
        },
        grid);
    return std::pow(integral, 1.0 / p);
}

NormEstimate bergman_norm_refined(const AnalyticFunction& f, double p, const RadialWeight& w,
                                  int level) {
    NormEstimate e;
    e.coarse = bergman_norm(f, p, w, *make_grid(level));
    e.fine = bergman_norm(f, p, w, *make_grid(level + 2));
    e.relative_change = e.coarse > 0.0 ? std::abs(e.fine - e.coarse) / e.coarse : 0.0;
    e.unbounded = e.coarse > 0.0 && std::pow(e.fine / e.coarse, p) >= kDivergenceGrowth;
    return e;
}

double hardy_means(const AnalyticFunction& f, double p, double r, int angles) {
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("Hardy means need r in [0, 1)");
    if (!(p > 0.0)) throw DomainError("Hardy means need p > 0");
    if (angles < 1) throw DomainError("Hardy means need at least one angle");
    CompensatedSum acc;
    double best = 0.0;
    for (int j = 0; j < angles; ++j) {
        const double theta = 2.0 * std::numbers::pi * j / angles;
        const double v = std::abs(f.deriv(0, std::polar(r, theta), 1.0 - r));
        if (std::isinf(p)) {
            best = std::max(best, v);
        } else {
            acc.add(std::pow(v, p));
        }
    }
    if (std::isinf(p)) return best;
    return std::pow(acc.value() / angles, 1.0 / p);
}

AnalyticFunction test_function(const DiscPoint& a, double gamma, double p, const RadialWeight& w,
                               CarlesonConvention convention) {
    if (!(p > 0.0)) throw DomainError("test functions need p > 0");
    const double mass = weighted_area(w, carleson_square(a, convention));
    if (!(mass >= kUnderflowFloor)) {
        std::ostringstream msg;
        msg << "omega(S(a)) underflows at |a| = " << a.abs();
        throw DegenerateError(msg.str());
    }
    const double scale = std::exp(-std::log(mass) / p);
    if (!std::isfinite(scale)) throw DegenerateError("test-function scale overflows");
    return AnalyticFunction::conformal_power(a, gamma, scale);
}

}  // namespace bergman
