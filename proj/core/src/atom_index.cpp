#include <algorithm>
#include <cmath>
#include <numbers>

#include "bergman/measures.hpp"
#include "bergman/numerics.hpp"

namespace bergman {
namespace {

constexpr double kBinWidth = 0.25;
constexpr int kBins = 4 * 64;

int bin_of_gap(double gap) {
    if (!(gap < 1.0)) return 0;
    const double t = gap > 0.0 ? -std::log2(gap) : 1e9;
    return std::clamp(static_cast<int>(t / kBinWidth), 0, kBins - 1);
}

}  // namespace

AtomIndex::AtomIndex(const std::vector<Atom>& atoms) : atoms_(&atoms), bins_(kBins) {
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        bins_[bin_of_gap(atoms[i].gap)].push_back({std::arg(atoms[i].z), i});
    }
    for (auto& bin : bins_) {
        std::sort(bin.begin(), bin.end(), [](const Entry& a, const Entry& b) {
            return a.angle < b.angle || (a.angle == b.angle && a.atom < b.atom);
        });
    }
}

void AtomIndex::for_each_in(const PolarBox& box,
                            const std::function<void(const Atom&)>& visit) const {
    // Radii map to gaps; one spare bin on each side absorbs rounding.
    const int lo = std::max(0, bin_of_gap(1.0 - box.r_min) - 1);
    const int hi = box.r_max >= 1.0 ? kBins - 1 : std::min(kBins - 1, bin_of_gap(1.0 - box.r_max) + 1);
    constexpr double kPi = std::numbers::pi;
    for (int b = lo; b <= hi; ++b) {
        const auto& bin = bins_[b];
        if (bin.empty()) continue;
        if (box.full_circle || box.angle_halfwidth >= kPi) {
            for (const Entry& e : bin) visit((*atoms_)[e.atom]);
            continue;
        }
        auto scan = [&](double from, double to) {
            auto it = std::lower_bound(bin.begin(), bin.end(), from,
                                       [](const Entry& e, double a) { return e.angle < a; });
            for (; it != bin.end() && it->angle <= to; ++it) visit((*atoms_)[it->atom]);
        };
        const double pad = 1e-12;
        double from = box.angle_center - box.angle_halfwidth - pad;
        double to = box.angle_center + box.angle_halfwidth + pad;
        if (from < -kPi) {
            scan(from + 2 * kPi, kPi);
            scan(-kPi, to);
        } else if (to > kPi) {
            scan(from, kPi);
            scan(-kPi, to - 2 * kPi);
        } else {
            scan(from, to);
        }
    }
}

double AtomIndex::mass_in(const Region& region) const {
    CompensatedSum acc;
    for_each_in(bounding_box(region), [&](const Atom& a) {
        if (contains(region, a.z)) acc.add(a.mass);
    });
    return acc.value();
}

}  // namespace bergman
