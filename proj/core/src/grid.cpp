#include "bergman/grid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "bergman/numerics.hpp"

namespace bergman {
namespace {

constexpr std::size_t kRadialOrder = 4;
constexpr std::size_t kBaseAngles = 32;

constexpr int kInnerAnnuli = 4;  // annuli with the higher radial order
constexpr std::size_t kInnerOrder = 8;
constexpr std::size_t kTailOrder = 6;

struct Piece {
    double t0;
    double t1;
    std::size_t count;
    std::size_t order;
};

std::vector<Piece> pieces_for(int level) {
    std::vector<Piece> out;
    for (int k = 0; k <= level; ++k) {
        // Inner annuli keep refining in angle as L grows, at half the dyadic rate.
        const int shift = k + (level - k) / 2;
        out.push_back({double(k), double(k + 1), kBaseAngles << shift,
                       k < kInnerAnnuli ? kInnerOrder : kRadialOrder});
    }
    const std::size_t frozen = kBaseAngles << level;
    const double L = level;
    // Higher order past L: each piece is renormalized to the exact area, which is only
    // harmless for other integrands when the piece rule is accurate.
    const double cuts[] = {L + 1, L + 3, L + 6, L + 10, L + 16, L + 28, kGridDepthCap};
    constexpr int kCuts = std::size(cuts);
    for (int i = 0; i + 1 < kCuts; ++i) {
        if (cuts[i] < kGridDepthCap) {
            out.push_back({cuts[i], std::min(cuts[i + 1], kGridDepthCap), frozen, kTailOrder});
        }
    }
    return out;
}

void check_level(int level) {
    if (level < 1 || level > kMaxGridLevel) {
        throw DomainError("grid level must lie in [1, 24]");
    }
}

}  // namespace

std::size_t grid_size(int level) {
    check_level(level);
    std::size_t total = 0;
    for (const Piece& p : pieces_for(level)) total += p.order * p.count;
    return total;
}

QuadratureGrid::QuadratureGrid(int level) : level_(level) {
    const std::size_t total = grid_size(level);
    if (total > kMaxGridNodes) {
        throw ResourceError("grid level " + std::to_string(level) + " needs " +
                            std::to_string(total) + " nodes (limit 1e8)");
    }
    const double ln2 = std::numbers::ln2;
    for (const Piece& p : pieces_for(level)) {
        const auto& gl = gauss_legendre(p.order);
        const double half = 0.5 * (p.t1 - p.t0);
        const double mid = 0.5 * (p.t0 + p.t1);
        const double g0 = std::exp2(-p.t0);
        const double g1 = std::exp2(-p.t1);
        const double exact = (g0 - g1) * (2.0 - g0 - g1);  // s1^2 - s0^2
        std::vector<GridRing> piece;
        double total_weight = 0.0;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double t = mid + half * gl.nodes[i];
            const double gap = std::exp2(-t);
            const double radius = 1.0 - gap;
            const double band = half * gl.weights[i] * 2.0 * radius * ln2 * gap;
            total_weight += band;
            piece.push_back({t, gap, radius, band, p.count, 0});
        }
        const double scale = exact / total_weight;
        for (GridRing& ring : piece) {
            ring.weight = ring.weight * scale / static_cast<double>(ring.count);
            ring.offset = size_;
            size_ += ring.count;
            rings_.push_back(ring);
        }
        if (std::find(root_counts_.begin(), root_counts_.end(), p.count) == root_counts_.end()) {
            root_counts_.push_back(p.count);
            std::vector<Complex> roots(p.count);
            for (std::size_t j = 0; j < p.count; ++j) {
                const double theta = 2.0 * std::numbers::pi * (double(j) + 0.5) / double(p.count);
                roots[j] = Complex(std::cos(theta), std::sin(theta));
            }
            root_tables_.push_back(std::move(roots));
        }
    }
}

const std::vector<Complex>& QuadratureGrid::roots(std::size_t count) const {
    for (std::size_t i = 0; i < root_counts_.size(); ++i) {
        if (root_counts_[i] == count) return root_tables_[i];
    }
    throw DomainError("no ring with " + std::to_string(count) + " nodes");
}

std::size_t QuadratureGrid::ring_of(std::size_t index) const {
    auto it = std::upper_bound(rings_.begin(), rings_.end(), index,
                               [](std::size_t i, const GridRing& r) { return i < r.offset; });
    return static_cast<std::size_t>(it - rings_.begin()) - 1;
}

QuadNode QuadratureGrid::node(std::size_t index) const {
    if (index >= size_) throw DomainError("grid node index out of range");
    const GridRing& ring = rings_[ring_of(index)];
    return node(ring, index - ring.offset);
}

std::size_t QuadratureGrid::rings_below(double depth) const {
    std::size_t n = 0;
    while (n < rings_.size() && rings_[n].t < depth) ++n;
    return n;
}

std::shared_ptr<const QuadratureGrid> make_grid(int level) {
    check_level(level);
    static std::mutex mutex;
    static std::map<int, std::shared_ptr<const QuadratureGrid>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[level];
    if (!slot) slot = std::make_shared<const QuadratureGrid>(level);
    return slot;
}

}  // namespace bergman
