#include <algorithm>
#include <cmath>
#include <variant>

#include "bergman/errors.hpp"
#include "bergman/functions.hpp"
#include "bergman/numerics.hpp"

namespace bergman {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

}  // namespace

Complex one_minus_conj_product(Complex a, double gap_a, Complex z, double gap_z) noexcept {
    // |1 - conj(a) z| >= max(gap_a, gap_z), so direct evaluation only loses digits when
    // both points hug the circle.
    if (std::max(gap_a, gap_z) >= 1e-6) return Complex(1.0, 0.0) - std::conj(a) * z;
    const double ma = 1.0 - gap_a;
    const double mz = 1.0 - gap_z;
    const Complex u = std::conj(a) * z / (ma * mz);  // unit vector e^{i delta}
    const double delta = std::arg(u);
    const double s = std::sin(0.5 * delta);
    // 1 - |a||z| cos(delta) = (1 - |a||z|) + 2 |a||z| sin^2(delta / 2)
    const double one_minus = gap_a + gap_z - gap_a * gap_z;
    const double re = one_minus + 2.0 * ma * mz * s * s;
    const double im = -ma * mz * std::sin(delta);
    return {re, im};
}

struct Poly {
    std::vector<Complex> coeffs;
};
struct ConfPower {
    DiscPoint a;
    double gamma;
    double scale;
};
struct SumOf {
    std::vector<AnalyticFunction> terms;
};
struct Scaled {
    Complex c;
    AnalyticFunction f;
};
struct ProductOf {
    AnalyticFunction f;
    AnalyticFunction g;
};

struct AnalyticFunction::Node {
    std::variant<Poly, ConfPower, SumOf, Scaled, ProductOf> v;
};

AnalyticFunction::AnalyticFunction()
    : node_(std::make_shared<const Node>(Node{Poly{}})) {}

AnalyticFunction AnalyticFunction::polynomial(std::vector<Complex> coeffs) {
    while (!coeffs.empty() && coeffs.back() == Complex(0.0, 0.0)) coeffs.pop_back();
    return AnalyticFunction(std::make_shared<const Node>(Node{Poly{std::move(coeffs)}}));
}

AnalyticFunction AnalyticFunction::constant(Complex c) { return polynomial({c}); }

AnalyticFunction AnalyticFunction::conformal_power(const DiscPoint& a, double gamma,
                                                   double scale) {
    if (!(gamma > 0.0)) throw DomainError("conformal power needs gamma > 0");
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw DomainError("conformal power needs a positive finite scale");
    }
    return AnalyticFunction(std::make_shared<const Node>(Node{ConfPower{a, gamma, scale}}));
}

AnalyticFunction AnalyticFunction::sum(std::vector<AnalyticFunction> terms) {
    return AnalyticFunction(std::make_shared<const Node>(Node{SumOf{std::move(terms)}}));
}

AnalyticFunction AnalyticFunction::product(AnalyticFunction f, AnalyticFunction g) {
    return AnalyticFunction(
        std::make_shared<const Node>(Node{ProductOf{std::move(f), std::move(g)}}));
}

AnalyticFunction AnalyticFunction::scaled(Complex c) const {
    return AnalyticFunction(std::make_shared<const Node>(Node{Scaled{c, *this}}));
}

bool AnalyticFunction::is_zero() const noexcept {
    const auto* p = std::get_if<Poly>(&node_->v);
    return p && p->coeffs.empty();
}

bool AnalyticFunction::is_constant() const noexcept {
    const auto* p = std::get_if<Poly>(&node_->v);
    return p && p->coeffs.size() <= 1;
}

Complex AnalyticFunction::deriv(int n, Complex z, double gap_z) const {
    if (n < 0) throw DomainError("derivative order must be nonnegative");
    return std::visit(
        Overloaded{
            [&](const Poly& p) {
                // Horner on the n-th derivative coefficients k!/(k-n)! c_k.
                Complex acc(0.0, 0.0);
                for (std::size_t k = p.coeffs.size(); k-- > static_cast<std::size_t>(n);) {
                    double falling = 1.0;
                    for (int i = 0; i < n; ++i) falling *= static_cast<double>(k - i);
                    acc = acc * z + falling * p.coeffs[k];
                }
                return acc;
            },
            [&](const ConfPower& c) {
                const double gz = gap_z >= 0.0 ? gap_z : 1.0 - std::abs(z);
                const Complex base = one_minus_conj_product(c.a.value(), c.a.gap(), z, gz);
                if (n > 0 && c.a.is_origin()) return Complex(0.0, 0.0);
                // log of scale (1-|a|)^gamma conj(a)^n (gamma)_n (1 - conj(a) z)^{-gamma-n}
                Complex lg = std::log(c.scale) + c.gamma * std::log(c.a.gap()) -
                             (c.gamma + n) * std::log(base);
                if (n > 0) lg += double(n) * std::log(std::conj(c.a.value())) +
                                 std::log(rising_factorial(c.gamma, n));
                return std::exp(lg);
            },
            [&](const SumOf& s) {
                Complex acc(0.0, 0.0);
                for (const auto& t : s.terms) acc += t.deriv(n, z, gap_z);
                return acc;
            },
            [&](const Scaled& s) { return s.c * s.f.deriv(n, z, gap_z); },
            [&](const ProductOf& p) {
                Complex acc(0.0, 0.0);
                for (int k = 0; k <= n; ++k) {
                    acc += binomial(n, k) * p.f.deriv(k, z, gap_z) * p.g.deriv(n - k, z, gap_z);
                }
                return acc;
            }},
        node_->v);
}

nlohmann::json AnalyticFunction::to_json() const {
    return std::visit(
        Overloaded{
            [](const Poly& p) {
                nlohmann::json coeffs = nlohmann::json::array();
                for (Complex c : p.coeffs) coeffs.push_back({c.real(), c.imag()});
                return nlohmann::json{{"kind", "poly"}, {"coeffs", coeffs}};
            },
            [](const ConfPower& c) {
                return nlohmann::json{{"kind", "conformal_power"},
                                      {"a", {c.a.re(), c.a.im()}},
                                      {"gamma", c.gamma},
                                      {"scale", c.scale}};
            },
            [](const SumOf& s) {
                nlohmann::json terms = nlohmann::json::array();
                for (const auto& t : s.terms) terms.push_back(t.to_json());
                return nlohmann::json{{"kind", "sum"}, {"terms", terms}};
            },
            [](const Scaled& s) {
                return nlohmann::json{{"kind", "scaled"},
                                      {"c", {s.c.real(), s.c.imag()}},
                                      {"f", s.f.to_json()}};
            },
            [](const ProductOf& p) {
                return nlohmann::json{{"kind", "product"},
                                      {"f", p.f.to_json()},
                                      {"g", p.g.to_json()}};
            }},
        node_->v);
}

Complex deriv_eval(const AnalyticFunction& f, int n, const DiscPoint& z) {
    return f.deriv(n, z.value(), z.gap());
}

}  // namespace bergman
