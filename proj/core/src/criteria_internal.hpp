#pragma once

#include <cmath>
#include <vector>

#include "bergman/criteria.hpp"

namespace bergman::detail {

/// log(omega(S(z))), or NaN when the square's mass underflows.
double log_square_mass(const RadialWeight& w, const DiscPoint& z, CarlesonConvention convention);

/// x^y computed as exp(y log x), with 0^y = 0 for y > 0.
inline double safe_pow(double x, double y) {
    if (x == 0.0) return y > 0.0 ? 0.0 : (y == 0.0 ? 1.0 : INFINITY);
    return std::exp(y * std::log(x));
}

/// Fills tail, shells, refinement, verdicts and the global value of a sup report from its
/// samples, then drops samples whose value is NaN (underflowed basepoints).
/// `tail_gaps[i]` is the boundary distance used for the tail of sample i; `coarse_values`
/// are the values of the coarse pass.
void summarize_sup(CriterionReport& rep, const std::vector<double>& tail_gaps,
                   const std::vector<double>& coarse_values, int coarse_level, int fine_level);

/// Tail and shell sups over deltas 4^{-k} for (gap, value) pairs.
void fill_tails(CriterionReport& rep, const std::vector<double>& gaps,
                const std::vector<double>& values);

bool is_coarse(double gap, int depth);

}  // namespace bergman::detail
