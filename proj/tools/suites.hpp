#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <nlohmann/json.hpp>

#include "bergman/criteria.hpp"
#include "bergman/functions.hpp"
#include "bergman/weights.hpp"

namespace bergman::app {

struct SuiteResult {
    bool passed = false;
    nlohmann::json report = nlohmann::json::object();
    std::vector<Sample> samples;
};

/// Random polynomials with degree uniform in [0, max_degree] and standard normal
/// complex coefficients.
std::vector<AnalyticFunction> random_polynomials(std::mt19937_64& rng, int count,
                                                 int max_degree);

/// Boundary circles of pseudohyperbolic discs: max |rho(a, zeta) - r| over `boundary`
/// samples of each of `cases` random discs must stay below 1e-9.
SuiteResult verify_pseudodisc(std::uint64_t seed, int cases = 1000, int boundary = 64);

/// Change of variable for weighted pushforwards of a random atomic measure under the
/// identity, z^2 and the automorphism with parameter 0.3.
SuiteResult verify_pushforward(std::uint64_t seed, std::size_t atoms = 100'000);

struct NormEquivalenceCase {
    RadialWeight weight;
    double p;
};

/// Ratio ||f||_{omega_tilde} / ||f||_omega for random polynomials, at grid
/// levels `level` and level + 2. Passes when every ratio moves by less than 1%.
SuiteResult verify_norm_equivalence(std::uint64_t seed, int polys,
                                    const std::vector<NormEquivalenceCase>& cases, int level);

struct PointwiseCase {
    RadialWeight weight;
    double p;
};

/// sup over grid nodes of |f^{(n)}(z)| omega(S(z))^{1/p} (1 - |z|)^n / ||f|| for the test
/// functions on the radial lattice ray and random polynomials, at levels `level` and
/// level + 2. Passes when every sup is finite and moves by less than 10%.
SuiteResult verify_pointwise_bound(std::uint64_t seed, int polys, const std::vector<int>& orders,
                                   const std::vector<PointwiseCase>& cases, int level);

inline constexpr double kPseudoDiscTolerance = 1e-9;
inline constexpr double kPushforwardTolerance = 1e-12;
inline constexpr double kNormEquivalenceDrift = 0.01;
inline constexpr double kPointwiseDrift = 0.10;

}  // namespace bergman::app
