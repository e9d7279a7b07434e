#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <sstream>
#include <vector>

#include "bergman/errors.hpp"
#include "bergman/parallel.hpp"
#include "bergman/region_quadrature.hpp"

namespace bergman {

/// One ring of the grid: `count` equally spaced nodes at angles 2 pi (j + 1/2) / count,
/// all sharing the same area weight.
struct GridRing {
    double t;       // -log2(1 - radius)
    double gap;     // 1 - radius
    double radius;
    double weight;  // per node, normalised dA
    std::size_t count;
    std::size_t offset;  // index of the first node of the ring
};

/// Boundary-refined polar grid. Dyadic annulus k (1 - 2^{-k} <= |z| < 1 - 2^{-k-1},
/// k = 0..L) gets Gauss-Legendre radii in t = -log2(1 - |z|) (8 for k < 4, else 4) and
/// 32 * 2^{k + floor((L - k) / 2)} angles;
/// beyond level L a few coarser radial pieces carry the grid to 1 - |z| = 2^{-40} with
/// the angular count frozen. Weights of each radial piece are rescaled so the piece
/// integrates 1 exactly.
class QuadratureGrid {
public:
    explicit QuadratureGrid(int level);

    int level() const noexcept { return level_; }
    std::size_t size() const noexcept { return size_; }
    const std::vector<GridRing>& rings() const noexcept { return rings_; }

    /// Unit roots e^{i 2 pi (j + 1/2) / count} for a ring's angular count.
    const std::vector<Complex>& roots(std::size_t count) const;

    std::size_t ring_of(std::size_t index) const;
    QuadNode node(std::size_t index) const;
    QuadNode node(const GridRing& ring, std::size_t j) const {
        return {ring.radius * roots(ring.count)[j], ring.gap, ring.weight};
    }

    /// Number of leading rings with t < depth (rings are ordered by increasing t).
    std::size_t rings_below(double depth) const;

private:
    int level_;
    std::size_t size_ = 0;
    std::vector<GridRing> rings_;
    std::vector<std::size_t> root_counts_;
    std::vector<std::vector<Complex>> root_tables_;
};

inline constexpr int kMaxGridLevel = 24;
inline constexpr std::size_t kMaxGridNodes = 100'000'000;
inline constexpr double kGridDepthCap = 40.0;

/// Shared immutable grid for level L in [1, 24]; built once per process.
std::shared_ptr<const QuadratureGrid> make_grid(int level);

/// Node count of make_grid(level) without building it.
std::size_t grid_size(int level);

/// Ring-wise integral: ring_sum(ring, roots, begin, end) returns the unweighted sum of the
/// integrand over nodes [begin, end) of `ring`, so ring-constant factors are computed once
/// per call. Rings from `first_ring` up to (excluding) `last_ring` are used.
template <class RingSum>
double integrate_rings(const QuadratureGrid& grid, RingSum&& ring_sum, std::size_t first_ring = 0,
                       std::size_t last_ring = static_cast<std::size_t>(-1)) {
    const auto& rings = grid.rings();
    last_ring = std::min(last_ring, rings.size());
    std::vector<std::pair<std::size_t, std::size_t>> pieces;  // (ring, start)
    for (std::size_t r = first_ring; r < last_ring; ++r) {
        for (std::size_t s = 0; s < rings[r].count; s += kDefaultChunk) pieces.emplace_back(r, s);
    }
    std::vector<double> partial(pieces.size(), 0.0);
    parallel_for(pieces.size(), 1, [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) {
            const GridRing& ring = rings[pieces[p].first];
            const std::size_t stop = std::min(ring.count, pieces[p].second + kDefaultChunk);
            partial[p] = ring.weight * ring_sum(ring, grid.roots(ring.count), pieces[p].second, stop);
        }
    });
    return compensated_sum(partial);
}

/// Sum of g(node) * weight over the grid; reproducible for any thread count.
/// A non-finite term raises NumericError naming the node.
template <class G>
double integrate(G&& g, const QuadratureGrid& grid) {
    const auto& rings = grid.rings();
    // Chunks are whole rings split at kDefaultChunk so ring lookups stay cheap.
    std::vector<std::pair<std::size_t, std::size_t>> pieces;  // (ring, start)
    for (std::size_t r = 0; r < rings.size(); ++r) {
        for (std::size_t s = 0; s < rings[r].count; s += kDefaultChunk) pieces.emplace_back(r, s);
    }
    std::vector<double> partial(pieces.size(), 0.0);
    parallel_for(pieces.size(), 1, [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) {
            const GridRing& ring = rings[pieces[p].first];
            const auto& roots = grid.roots(ring.count);
            const std::size_t stop = std::min(ring.count, pieces[p].second + kDefaultChunk);
            CompensatedSum acc;
            for (std::size_t j = pieces[p].second; j < stop; ++j) {
                const QuadNode node{ring.radius * roots[j], ring.gap, ring.weight};
                const double v = g(node);
                if (!std::isfinite(v)) {
                    std::ostringstream msg;
                    msg << "integrand is " << v << " at grid node " << ring.offset + j << " ("
                        << node.z.real() << ", " << node.z.imag() << ")";
                    throw NumericError(msg.str());
                }
                acc.add(v * ring.weight);
            }
            partial[p] = acc.value();
        }
    });
    return compensated_sum(partial);
}

}  // namespace bergman
