#include <cmath>
#include <variant>

#include "bergman/errors.hpp"
#include "bergman/functions.hpp"

namespace bergman {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

struct IdentityMap {};
struct ScaleMap {
    double s;
};
struct PowerMap {
    int k;
};
struct MoebiusMap {
    DiscPoint c;
};
struct CompositionMap {
    std::vector<SelfMap> maps;
};

struct SelfMap::Node {
    std::variant<IdentityMap, ScaleMap, PowerMap, MoebiusMap, CompositionMap> v;
};

SelfMap::SelfMap() : node_(std::make_shared<const Node>(Node{IdentityMap{}})) {}

SelfMap SelfMap::scale(double s) {
    if (!(s > 0.0 && s <= 1.0)) throw DomainError("scale map needs 0 < s <= 1");
    return SelfMap(std::make_shared<const Node>(Node{ScaleMap{s}}));
}

SelfMap SelfMap::power(int k) {
    if (k < 1) throw DomainError("power map needs k >= 1");
    return SelfMap(std::make_shared<const Node>(Node{PowerMap{k}}));
}

SelfMap SelfMap::moebius(const DiscPoint& c) {
    return SelfMap(std::make_shared<const Node>(Node{MoebiusMap{c}}));
}

SelfMap SelfMap::composition(std::vector<SelfMap> maps) {
    return SelfMap(std::make_shared<const Node>(Node{CompositionMap{std::move(maps)}}));
}

bool SelfMap::is_identity() const noexcept {
    if (std::holds_alternative<IdentityMap>(node_->v)) return true;
    if (const auto* c = std::get_if<CompositionMap>(&node_->v)) {
        for (const auto& m : c->maps) {
            if (!m.is_identity()) return false;
        }
        return true;
    }
    return false;
}

MappedPoint SelfMap::eval_with_gap(Complex z, double gap) const {
    return std::visit(
        Overloaded{
            [&](const IdentityMap&) { return MappedPoint{z, gap}; },
            [&](const ScaleMap& m) { return MappedPoint{m.s * z, (1.0 - m.s) + m.s * gap}; },
            [&](const PowerMap& m) {
                const double g = -std::expm1(m.k * std::log1p(-gap));
                return MappedPoint{std::pow(z, m.k), g};
            },
            [&](const MoebiusMap& m) {
                const Complex c = m.c.value();
                const Complex den = one_minus_conj_product(c, m.c.gap(), z, gap);
                const Complex w = (z - c) / den;
                // 1 - |w|^2 = (1 - |c|^2)(1 - |z|^2) / |1 - conj(c) z|^2
                const double gc = m.c.gap();
                const double one_minus_sq =
                    gc * (2.0 - gc) * gap * (2.0 - gap) / std::norm(den);
                return MappedPoint{w, one_minus_sq / (1.0 + std::abs(w))};
            },
            [&](const CompositionMap& m) {
                MappedPoint p{z, gap};
                for (const auto& f : m.maps) p = f.eval_with_gap(p.w, p.gap);
                return p;
            }},
        node_->v);
}

Complex SelfMap::derivative(Complex z) const {
    return std::visit(
        Overloaded{
            [&](const IdentityMap&) { return Complex(1.0, 0.0); },
            [&](const ScaleMap& m) { return Complex(m.s, 0.0); },
            [&](const PowerMap& m) {
                return m.k == 1 ? Complex(1.0, 0.0) : double(m.k) * std::pow(z, m.k - 1);
            },
            [&](const MoebiusMap& m) {
                const double gc = m.c.gap();
                const Complex den = Complex(1.0, 0.0) - std::conj(m.c.value()) * z;
                return gc * (2.0 - gc) / (den * den);
            },
            [&](const CompositionMap& m) {
                Complex d(1.0, 0.0);
                Complex w = z;
                for (const auto& f : m.maps) {
                    d *= f.derivative(w);
                    w = f(w);
                }
                return d;
            }},
        node_->v);
}

nlohmann::json SelfMap::to_json() const {
    return std::visit(
        Overloaded{
            [](const IdentityMap&) { return nlohmann::json{{"kind", "identity"}}; },
            [](const ScaleMap& m) { return nlohmann::json{{"kind", "scale"}, {"s", m.s}}; },
            [](const PowerMap& m) { return nlohmann::json{{"kind", "power"}, {"k", m.k}}; },
            [](const MoebiusMap& m) {
                return nlohmann::json{{"kind", "moebius"}, {"c", {m.c.re(), m.c.im()}}};
            },
            [](const CompositionMap& m) {
                nlohmann::json maps = nlohmann::json::array();
                for (const auto& f : m.maps) maps.push_back(f.to_json());
                return nlohmann::json{{"kind", "composition"}, {"maps", maps}};
            }},
        node_->v);
}

}  // namespace bergman
