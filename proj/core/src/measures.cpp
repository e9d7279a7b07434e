#include "bergman/measures.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "bergman/errors.hpp"
#include "bergman/numerics.hpp"

namespace bergman {

struct DiscMeasure::State {
    enum class Kind { Zero, Density, Radial, Atoms } kind = Kind::Zero;
    Density density;
    RadialDensity radial;
    std::shared_ptr<const QuadratureGrid> grid;
    std::vector<Atom> atoms;
    std::unique_ptr<AtomIndex> index;
    nlohmann::json spec;
};

namespace {

std::shared_ptr<const QuadratureGrid> require_grid(std::shared_ptr<const QuadratureGrid> grid) {
    if (!grid) throw DomainError("density measures need a quadrature grid");
    return grid;
}

}  // namespace

DiscMeasure::DiscMeasure() {
    auto s = std::make_shared<State>();
    s->spec = {{"kind", "zero"}};
    state_ = std::move(s);
}

DiscMeasure DiscMeasure::density(Density d, std::shared_ptr<const QuadratureGrid> grid,
                                 nlohmann::json spec) {
    auto s = std::make_shared<State>();
    s->kind = State::Kind::Density;
    s->density = std::move(d);
    s->grid = require_grid(std::move(grid));
    s->spec = std::move(spec);
    return DiscMeasure(std::move(s));
}

DiscMeasure DiscMeasure::radial(RadialDensity d, std::shared_ptr<const QuadratureGrid> grid,
                                nlohmann::json spec) {
    auto s = std::make_shared<State>();
    s->kind = State::Kind::Radial;
    s->radial = std::move(d);
    s->grid = require_grid(std::move(grid));
    s->spec = std::move(spec);
    return DiscMeasure(std::move(s));
}

DiscMeasure DiscMeasure::power_density(double beta, std::shared_ptr<const QuadratureGrid> grid) {
    if (!(beta > -1.0)) throw DomainError("power density needs beta > -1");
    return radial([beta](double g) { return beta == 0.0 ? 1.0 : std::pow(g, beta); },
                  std::move(grid), {{"kind", "power_density"}, {"beta", beta}});
}

DiscMeasure DiscMeasure::weight(const RadialWeight& w, std::shared_ptr<const QuadratureGrid> grid) {
    nlohmann::json spec = {{"kind", "weight"}, {"weight", w.spec()}};
    return radial([w](double g) { return w.at_gap(g); }, std::move(grid), std::move(spec));
}

DiscMeasure DiscMeasure::atoms(std::vector<Atom> atoms, nlohmann::json spec) {
    for (const Atom& a : atoms) {
        if (!(a.gap > 0.0) || !(std::abs(a.z) <= 1.0)) {
            throw DomainError("atom outside the open disc");
        }
        if (!(a.mass >= 0.0) || !std::isfinite(a.mass)) {
            throw DomainError("atom masses must be finite and nonnegative");
        }
    }
    auto s = std::make_shared<State>();
    s->kind = State::Kind::Atoms;
    s->atoms = std::move(atoms);
    s->index = std::make_unique<AtomIndex>(s->atoms);
    s->spec = spec.is_null() ? nlohmann::json{{"kind", "atoms"}, {"count", s->atoms.size()}}
                             : std::move(spec);
    return DiscMeasure(std::move(s));
}

bool DiscMeasure::is_zero() const noexcept {
    return state_->kind == State::Kind::Zero ||
           (state_->kind == State::Kind::Atoms && state_->atoms.empty());
}
bool DiscMeasure::is_atomic() const noexcept { return state_->kind == State::Kind::Atoms; }
bool DiscMeasure::is_radial() const noexcept {
    return state_->kind == State::Kind::Radial || state_->kind == State::Kind::Zero;
}

double DiscMeasure::density_at(Complex z, double gap) const {
    switch (state_->kind) {
        case State::Kind::Zero:
            return 0.0;
        case State::Kind::Density:
            return state_->density(z, gap);
        case State::Kind::Radial:
            return state_->radial(gap);
        case State::Kind::Atoms:
            break;
    }
    throw DomainError("atomic measures have no density");
}

double DiscMeasure::radial_density_at(double gap) const {
    if (state_->kind == State::Kind::Zero) return 0.0;
    if (state_->kind != State::Kind::Radial) throw DomainError("measure is not radial");
    return state_->radial(gap);
}

const std::vector<Atom>& DiscMeasure::atom_list() const {
    if (state_->kind != State::Kind::Atoms) throw DomainError("measure is not atomic");
    return state_->atoms;
}

const AtomIndex& DiscMeasure::atom_index() const {
    if (state_->kind != State::Kind::Atoms) throw DomainError("measure is not atomic");
    return *state_->index;
}

const std::shared_ptr<const QuadratureGrid>& DiscMeasure::grid() const noexcept {
    return state_->grid;
}

DiscMeasure DiscMeasure::with_grid(std::shared_ptr<const QuadratureGrid> grid) const {
    switch (state_->kind) {
        case State::Kind::Density:
            return density(state_->density, std::move(grid), state_->spec);
        case State::Kind::Radial:
            return radial(state_->radial, std::move(grid), state_->spec);
        default:
            return *this;
    }
}

const nlohmann::json& DiscMeasure::spec() const noexcept { return state_->spec; }

double DiscMeasure::total_mass() const {
    return integrate([](Complex, double) { return 1.0; }, *this);
}

double integrate(const std::function<double(Complex, double)>& g, const DiscMeasure& mu) {
    if (mu.is_zero()) return 0.0;
    if (mu.is_atomic()) {
        const auto& atoms = mu.atom_list();
        return parallel_sum(atoms.size(), [&](std::size_t i) {
            const double v = g(atoms[i].z, atoms[i].gap) * atoms[i].mass;
            if (!std::isfinite(v)) {
                throw NumericError("integrand is not finite at atom " + std::to_string(i));
            }
            return v;
        });
    }
    return integrate(
        [&](const QuadNode& n) { return g(n.z, n.gap) * mu.density_at(n.z, n.gap); }, *mu.grid());
}

double measure_of(const DiscMeasure& mu, const Region& region, const RegionRuleOptions& options) {
    if (mu.is_zero()) return 0.0;
    if (mu.is_atomic()) return mu.atom_index().mass_in(region);
    CompensatedSum acc;
    for (const QuadNode& n : region_rule(region, options)) {
        if (n.gap > 0.0) acc.add(n.weight * mu.density_at(n.z, n.gap));
    }
    return acc.value();
}

DiscMeasure pushforward(const SelfMap& phi, const std::function<double(Complex, double)>& h,
                        const DiscMeasure& mu) {
    nlohmann::json spec = {{"kind", "pushforward"}, {"phi", phi.to_json()}, {"of", mu.spec()}};
    if (mu.is_zero()) return DiscMeasure::atoms({}, std::move(spec));

    auto image = [&](Complex z, double gap, double mass) {
        const MappedPoint p = phi.eval_with_gap(z, gap);
        if (!(p.gap > 0.0) || !std::isfinite(std::abs(p.w))) {
            std::ostringstream msg;
            msg << "self-map sends (" << z.real() << ", " << z.imag()
                << ") to the boundary or outside the disc";
            throw SelfMapError(msg.str());
        }
        Complex w = p.w;
        const double m = std::abs(w);
        // Rounding can push |w| to 1 while the exact gap stays positive.
        if (m >= 1.0) w *= (1.0 - p.gap) / m;
        return Atom{w, p.gap, h(z, gap) * mass};
    };

    std::vector<Atom> out;
    if (mu.is_atomic()) {
        const auto& atoms = mu.atom_list();
        out.resize(atoms.size());
        parallel_for(atoms.size(), kDefaultChunk, [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) {
                out[i] = image(atoms[i].z, atoms[i].gap, atoms[i].mass);
            }
        });
    } else {
        const QuadratureGrid& grid = *mu.grid();
        out.resize(grid.size());
        for (const GridRing& ring : grid.rings()) {
            const auto& roots = grid.roots(ring.count);
            parallel_for(ring.count, kDefaultChunk, [&](std::size_t b, std::size_t e) {
                for (std::size_t j = b; j < e; ++j) {
                    const Complex z = ring.radius * roots[j];
                    out[ring.offset + j] =
                        image(z, ring.gap, ring.weight * mu.density_at(z, ring.gap));
                }
            });
        }
    }
    return DiscMeasure::atoms(std::move(out), std::move(spec));
}

std::vector<Atom> read_atoms_csv(std::istream& in) {
    std::vector<Atom> atoms;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (lineno == 1 && line.find("re") != std::string::npos) continue;  // header
        std::istringstream row(line);
        double re = 0, im = 0, mass = 0;
        char c1 = 0, c2 = 0;
        if (!(row >> re >> c1 >> im >> c2 >> mass) || c1 != ',' || c2 != ',') {
            throw ConfigError("malformed atom CSV at line " + std::to_string(lineno));
        }
        if (!(mass >= 0.0) || !std::isfinite(mass) || !(std::hypot(re, im) < 1.0)) {
            throw ConfigError("atom at line " + std::to_string(lineno) +
                              " needs a point of the open disc and a finite nonnegative mass");
        }
        const DiscPoint p{Complex(re, im)};
        atoms.push_back({p.value(), p.gap(), mass});
    }
    return atoms;
}

std::vector<Atom> read_atoms_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open atom CSV '" + path + "'");
    return read_atoms_csv(in);
}

void write_atoms_csv(std::ostream& out, const std::vector<Atom>& atoms) {
    out << "re,im,mass\n" << std::setprecision(17);
    for (const Atom& a : atoms) out << a.z.real() << ',' << a.z.imag() << ',' << a.mass << '\n';
}

}  // namespace bergman
