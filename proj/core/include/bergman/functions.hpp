#pragma once

#include <memory>
#include <vector>

#include <nlohmann/json.hpp>

#include "bergman/geometry.hpp"

namespace bergman {

/// 1 - conj(a) z evaluated from the gaps of a and z, accurate when both points sit
/// near the same boundary point.
Complex one_minus_conj_product(Complex a, double gap_a, Complex z, double gap_z) noexcept;

/// Closed algebra of analytic functions on the disc with exact derivatives of every
/// order: polynomials, conformal powers scale * ((1 - |a|) / (1 - conj(a) z))^gamma,
/// and sums, scalar multiples and products of these.
class AnalyticFunction {
public:
    AnalyticFunction();  // the zero function

    static AnalyticFunction polynomial(std::vector<Complex> coeffs);
    static AnalyticFunction constant(Complex c);
    static AnalyticFunction conformal_power(const DiscPoint& a, double gamma, double scale = 1.0);
    static AnalyticFunction sum(std::vector<AnalyticFunction> terms);
    static AnalyticFunction product(AnalyticFunction f, AnalyticFunction g);
    AnalyticFunction scaled(Complex c) const;

    Complex eval(Complex z) const { return deriv(0, z); }
    /// f^{(n)}(z). `gap_z` (1 - |z|) sharpens conformal powers near the boundary.
    Complex deriv(int n, Complex z, double gap_z = -1.0) const;

    bool is_zero() const noexcept;
    /// True for polynomials of degree <= 0 (other constant combinations are not detected).
    bool is_constant() const noexcept;
    nlohmann::json to_json() const;

    struct Node;

private:
    explicit AnalyticFunction(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

Complex deriv_eval(const AnalyticFunction& f, int n, const DiscPoint& z);

/// Image of a point with its boundary gap.
struct MappedPoint {
    Complex w;
    double gap;
};

/// Analytic self-map of the disc: identity, z -> s z (0 < s <= 1), z -> z^k, the
/// automorphism (z - c) / (1 - conj(c) z), or a composition applied left to right.
class SelfMap {
public:
    SelfMap();  // identity

    static SelfMap identity() { return SelfMap(); }
    static SelfMap scale(double s);
    static SelfMap power(int k);
    static SelfMap moebius(const DiscPoint& c);
    /// maps[0] is applied first.
    static SelfMap composition(std::vector<SelfMap> maps);

    Complex operator()(Complex z) const { return eval_with_gap(z, 1.0 - std::abs(z)).w; }
    MappedPoint eval_with_gap(Complex z, double gap) const;
    Complex derivative(Complex z) const;

    bool is_identity() const noexcept;
    nlohmann::json to_json() const;

    struct Node;

private:
    explicit SelfMap(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

}  // namespace bergman
