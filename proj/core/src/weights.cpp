#include "bergman/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bergman/errors.hpp"
#include "bergman/numerics.hpp"
#include "bergman/region_quadrature.hpp"

namespace bergman {
namespace {

constexpr int kCellsPerLevel = 8;
constexpr int kLevels = 60;
constexpr int kCells = kCellsPerLevel * kLevels;
constexpr std::size_t kCellOrder = 16;

double mesh_gap(int j) { return std::exp2(-static_cast<double>(j) / kCellsPerLevel); }

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

struct RadialWeight::State {
    std::string name;
    GapDensity density;
    nlohmann::json spec;
    // hat[j] = int_0^{g_j} omega, moment[j] = int_0^{g_j} g omega, j = 0..kCells
    std::vector<double> hat;
    std::vector<double> moment;
    double hat_exponent = 0.0;  // local power of the extrapolated tail
    double moment_exponent = 0.0;

    double density_checked(double gap) const {
        const double v = density(gap);
        if (!(v >= 0.0) || !std::isfinite(v)) {
            std::ostringstream msg;
            msg << "weight '" << name << "' is negative or non-finite at 1 - r = " << gap;
            throw DomainError(msg.str());
        }
        return v;
    }

    // int_lo^hi g^power omega(g) dg by Gauss-Legendre in log g.
    double cell_integral(double lo, double hi, int power) const {
        if (!(hi > lo)) return 0.0;
        const auto& gl = gauss_legendre(kCellOrder);
        const double a = std::log(lo);
        const double b = std::log(hi);
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        CompensatedSum acc;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double g = std::exp(mid + half * gl.nodes[i]);
            const double gp = power == 0 ? g : g * g;
            acc.add(gl.weights[i] * density_checked(g) * gp);
        }
        return half * acc.value();
    }

    void build() {
        std::vector<double> cells(kCells);
        std::vector<double> mcells(kCells);
        for (int j = 0; j < kCells; ++j) {
            cells[j] = cell_integral(mesh_gap(j + 1), mesh_gap(j), 0);
            mcells[j] = cell_integral(mesh_gap(j + 1), mesh_gap(j), 1);
        }
        auto tail = [&](const std::vector<double>& c, double& exponent, const char* what) {
            const double last = c[kCells - 1];
            const double prev = c[kCells - 2];
            if (last == 0.0) {
                exponent = 1e6;
                return 0.0;
            }
            const double ratio = last / prev;
            if (!(ratio < 1.0) || !std::isfinite(ratio)) {
                std::ostringstream msg;
                msg << "weight '" << name << "' is not integrable near the boundary ("
                    << what << " tail ratio " << ratio << ")";
                throw IntegrabilityError(msg.str());
            }
            exponent = -kCellsPerLevel * std::log2(ratio);
            return last * ratio / (1.0 - ratio);
        };
        hat.assign(kCells + 1, 0.0);
        moment.assign(kCells + 1, 0.0);
        hat[kCells] = tail(cells, hat_exponent, "omega");
        moment[kCells] = tail(mcells, moment_exponent, "moment");
        // Suffix sums from the boundary outwards, compensated.
        CompensatedSum h;
        CompensatedSum m;
        h.add(hat[kCells]);
        m.add(moment[kCells]);
        for (int j = kCells - 1; j >= 0; --j) {
            h.add(cells[j]);
            m.add(mcells[j]);
            hat[j] = h.value();
            moment[j] = m.value();
        }
        if (!(hat[0] > 0.0) || !std::isfinite(hat[0])) {
            throw IntegrabilityError("weight '" + name + "' has no positive finite mass");
        }
    }

    double lookup(const std::vector<double>& table, double exponent, int power,
                  double gap) const {
        if (!(gap > 0.0)) return 0.0;
        if (gap >= 1.0) return table[0];
        const double floor_gap = mesh_gap(kCells);
        if (gap < floor_gap) {
            return table[kCells] * std::pow(gap / floor_gap, exponent);
        }
        int j = static_cast<int>(std::floor(-kCellsPerLevel * std::log2(gap)));
        j = std::clamp(j, 0, kCells - 1);
        while (j > 0 && mesh_gap(j) < gap) --j;
        while (j < kCells - 1 && mesh_gap(j + 1) > gap) ++j;
        const double lo = mesh_gap(j + 1);
        return table[j + 1] + cell_integral(lo, gap, power);
    }
};

RadialWeight::RadialWeight(std::string name, GapDensity density, nlohmann::json spec) {
    auto state = std::make_shared<State>();
    state->name = std::move(name);
    state->density = std::move(density);
    state->spec = std::move(spec);
    state->build();
    state_ = std::move(state);
}

RadialWeight RadialWeight::power(double alpha) {
    if (!(alpha > -1.0)) throw DomainError("power weight needs alpha > -1");
    std::ostringstream name;
    name << "(1-r)^" << alpha;
    return RadialWeight(
        name.str(), [alpha](double g) { return alpha == 0.0 ? 1.0 : std::pow(g, alpha); },
        {{"kind", "power"}, {"alpha", alpha}});
}

RadialWeight RadialWeight::log_power(double alpha, double b) {
    std::ostringstream name;
    name << "(1-r)^" << alpha << " log(e/(1-r))^" << b;
    return RadialWeight(
        name.str(),
        [alpha, b](double g) { return std::pow(g, alpha) * std::pow(1.0 - std::log(g), b); },
        {{"kind", "log_power"}, {"alpha", alpha}, {"b", b}});
}

RadialWeight RadialWeight::exponential() {
    return RadialWeight(
        "exp(-1/(1-r))", [](double g) { return std::exp(-1.0 / g); }, {{"kind", "exponential"}});
}

RadialWeight RadialWeight::table(std::vector<double> r, std::vector<double> w) {
    if (r.size() != w.size() || r.size() < 2) {
        throw ConfigError("table weight needs matching r and w arrays with >= 2 entries");
    }
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!(r[i] >= 0.0 && r[i] < 1.0)) throw ConfigError("table radii must lie in [0, 1)");
        if (i > 0 && !(r[i] > r[i - 1])) throw ConfigError("table radii must increase");
        if (!(w[i] >= 0.0)) throw ConfigError("table weights must be nonnegative");
    }
    nlohmann::json spec = {{"kind", "table"}, {"r", r}, {"w", w}};
    auto density = [r = std::move(r), w = std::move(w)](double g) {
        const double x = 1.0 - g;
        if (x <= r.front()) return w.front();
        if (x >= r.back()) return w.back();
        const auto it = std::upper_bound(r.begin(), r.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - r.begin());
        const double t = (x - r[i - 1]) / (r[i] - r[i - 1]);
        return (1.0 - t) * w[i - 1] + t * w[i];
    };
    return RadialWeight("table", std::move(density), std::move(spec));
}

RadialWeight RadialWeight::from_radius(std::string name, std::function<double(double)> density) {
    return RadialWeight(std::move(name),
                        [density = std::move(density)](double g) { return density(1.0 - g); });
}

RadialWeight RadialWeight::tilde_of(const RadialWeight& w) {
    nlohmann::json spec = nullptr;
    if (!w.spec().is_null()) spec = {{"kind", "tilde"}, {"of", w.spec()}};
    return RadialWeight(
        "tilde(" + w.name() + ")", [w](double g) { return w.hat_at_gap(g) / g; },
        std::move(spec));
}

const std::string& RadialWeight::name() const noexcept { return state_->name; }
const nlohmann::json& RadialWeight::spec() const noexcept { return state_->spec; }

double RadialWeight::at_gap(double gap) const { return state_->density_checked(gap); }

double RadialWeight::hat_at_gap(double gap) const {
    return state_->lookup(state_->hat, state_->hat_exponent, 0, gap);
}

double RadialWeight::gap_moment_at_gap(double gap) const {
    return state_->lookup(state_->moment, state_->moment_exponent, 1, gap);
}

double RadialWeight::mesh_floor() const noexcept { return mesh_gap(kCells); }

double omega_hat(const RadialWeight& w, double r) {
    if (!(r >= 0.0) || !(r <= 1.0)) throw DomainError("omega_hat needs r in [0, 1]");
    return w.hat_at_gap(1.0 - r);
}

double omega_tilde(const RadialWeight& w, double r) {
    if (!(r >= 0.0) || !(r < 1.0)) throw DomainError("omega_tilde needs r in [0, 1)");
    const double g = 1.0 - r;
    return w.hat_at_gap(g) / g;
}

double moment(const RadialWeight& w, double x) {
    if (!(x >= 1.0)) throw DomainError("moments are taken for x >= 1");
    const auto& gl = gauss_legendre(kCellOrder);
    CompensatedSum acc;
    for (int j = 0; j < kCells; ++j) {
        const double a = std::log(mesh_gap(j + 1));
        const double b = std::log(mesh_gap(j));
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        CompensatedSum cell;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double g = std::exp(mid + half * gl.nodes[i]);
            cell.add(gl.weights[i] * w.at_gap(g) * g * std::exp(x * std::log1p(-g)));
        }
        acc.add(half * cell.value());
    }
    // Beyond the mesh floor r^x is 1 to double precision.
    acc.add(w.hat_at_gap(w.mesh_floor()));
    return acc.value();
}

double weighted_area(const RadialWeight& w, const Region& region) {
    constexpr double kPi = std::numbers::pi;
    return std::visit(
        Overloaded{
            [&](const WholeDisc&) { return 2.0 * w.radial_moment_tail(1.0); },
            [&](const CarlesonSquare& sq) {
                if (sq.whole_disc()) return 2.0 * w.radial_moment_tail(1.0);
                const double lower_gap = sq.convention() == CarlesonConvention::Standard
                                             ? sq.base().gap()
                                             : sq.base().abs();
                return 2.0 * sq.angular_halfwidth() / kPi * w.radial_moment_tail(lower_gap);
            },
            [&](const Tent& t) {
                const double gv = t.vertex().gap();
                return (gv * w.hat_at_gap(gv) - w.gap_moment_at_gap(gv)) / kPi;
            },
            [&](const Annulus& a) {
                if (!(a.outer > a.inner)) return 0.0;
                const double g_in = 1.0 - std::clamp(a.inner, 0.0, 1.0);
                const double g_out = 1.0 - std::clamp(a.outer, 0.0, 1.0);
                return 2.0 * (w.radial_moment_tail(g_in) - w.radial_moment_tail(g_out));
            },
            [&](const auto& other) {
                CompensatedSum acc;
                for (const QuadNode& node : region_rule(Region(other))) {
                    if (node.gap > 0.0) acc.add(node.weight * w.at_gap(node.gap));
                }
                return acc.value();
            }},
        region);
}

}  // namespace bergman
