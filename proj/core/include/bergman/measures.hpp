#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bergman/functions.hpp"
#include "bergman/geometry.hpp"
#include "bergman/grid.hpp"
#include "bergman/region_quadrature.hpp"
#include "bergman/weights.hpp"

namespace bergman {

struct Atom {
    Complex z;
    double gap;  // 1 - |z|, kept separately for points near the circle
    double mass;
};

/// Atoms bucketed by t = -log2(1 - |z|) in bins of width 1/4 and sorted by angle
/// inside each bin, for region sums without scanning the whole cloud.
class AtomIndex {
public:
    explicit AtomIndex(const std::vector<Atom>& atoms);

    /// Sum of masses of atoms inside `region`, accumulated in a fixed order.
    double mass_in(const Region& region) const;
    /// Calls visit(atom) for every atom inside the polar box (a superset of the region).
    void for_each_in(const PolarBox& box, const std::function<void(const Atom&)>& visit) const;

private:
    struct Entry {
        double angle;
        std::size_t atom;
    };
    const std::vector<Atom>* atoms_;
    std::vector<std::vector<Entry>> bins_;
};

/// Positive measure on the disc: a density against dA (evaluated on a quadrature grid
/// or a region rule) or a finite cloud of atoms.
class DiscMeasure {
public:
    using Density = std::function<double(Complex z, double gap)>;
    using RadialDensity = std::function<double(double gap)>;

    DiscMeasure();  // the zero measure

    static DiscMeasure zero() { return DiscMeasure(); }
    static DiscMeasure density(Density d, std::shared_ptr<const QuadratureGrid> grid,
                               nlohmann::json spec = nullptr);
    static DiscMeasure radial(RadialDensity d, std::shared_ptr<const QuadratureGrid> grid,
                              nlohmann::json spec = nullptr);
    /// (1 - |z|)^beta dA.
    static DiscMeasure power_density(double beta, std::shared_ptr<const QuadratureGrid> grid);
    /// omega dA for a radial weight.
    static DiscMeasure weight(const RadialWeight& w, std::shared_ptr<const QuadratureGrid> grid);
    static DiscMeasure atoms(std::vector<Atom> atoms, nlohmann::json spec = nullptr);

    bool is_zero() const noexcept;
    bool is_atomic() const noexcept;
    bool is_radial() const noexcept;

    /// Density value (density measures only); zero for the zero measure.
    double density_at(Complex z, double gap) const;
    double radial_density_at(double gap) const;
    const std::vector<Atom>& atom_list() const;
    const AtomIndex& atom_index() const;
    /// Grid used for whole-disc integrals of a density measure (null otherwise).
    const std::shared_ptr<const QuadratureGrid>& grid() const noexcept;
    /// Same density measure on another grid.
    DiscMeasure with_grid(std::shared_ptr<const QuadratureGrid> grid) const;

    double total_mass() const;
    const nlohmann::json& spec() const noexcept;

    struct State;

private:
    explicit DiscMeasure(std::shared_ptr<const State> s) : state_(std::move(s)) {}
    std::shared_ptr<const State> state_;
};

/// mu(E) for the regions the criteria need. Density measures use the region-adapted
/// rule of region_rule; atoms are summed exactly.
double measure_of(const DiscMeasure& mu, const Region& region,
                  const RegionRuleOptions& options = {});

/// Weighted pushforward: atoms (phi(x), h(x) m) over the support of mu (grid nodes for
/// densities). Images with 1 - |phi| <= 0 raise SelfMapError.
DiscMeasure pushforward(const SelfMap& phi, const std::function<double(Complex, double)>& h,
                        const DiscMeasure& mu);

/// Integral of g against mu (grid quadrature for densities, exact sum for atoms).
double integrate(const std::function<double(Complex z, double gap)>& g, const DiscMeasure& mu);

std::vector<Atom> read_atoms_csv(std::istream& in);
std::vector<Atom> read_atoms_csv(const std::string& path);
void write_atoms_csv(std::ostream& out, const std::vector<Atom>& atoms);

}  // namespace bergman
