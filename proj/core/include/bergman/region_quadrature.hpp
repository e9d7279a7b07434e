#pragma once

#include <vector>

#include "bergman/geometry.hpp"

namespace bergman {

/// A quadrature node carrying its normalised area weight (dA = dx dy / pi).
struct QuadNode {
    Complex z;
    double gap;  // 1 - |z|
    double weight;
};

struct RegionRuleOptions {
    int disc_radial = 16;    // Gauss-Legendre nodes in the radius of a Euclidean disc
    int disc_angular = 32;   // trapezoid nodes around a Euclidean disc
    int radial_order = 8;    // Gauss-Legendre nodes per radial piece (log-gap variable)
    int angular_order = 12;  // Gauss-Legendre nodes across an angular interval
    int full_circle = 64;    // trapezoid nodes for full circles
};

/// Depth (in -log2 of the gap) beyond which polar rules stop; the omitted area is < 2^-49.
inline constexpr double kRegionDepthCap = 50.0;

/// Tensor rule adapted to the shape of `region`: a polar rule around the Euclidean
/// centre for pseudohyperbolic discs, and a rule in (-log2(1 - |z|), arg z) for the
/// polar regions (squares, tents, Gamma regions, annuli, whole disc).
std::vector<QuadNode> region_rule(const Region& region, const RegionRuleOptions& options = {});

}  // namespace bergman
