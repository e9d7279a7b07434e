#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bergman/geometry.hpp"
#include "bergman/grid.hpp"
#include "bergman/measures.hpp"
#include "bergman/spaces.hpp"
#include "bergman/weights.hpp"

namespace bergman {

enum class CriterionId { EmbSup, EmbLs, OpPushforwardLs, BerezinSup, HinfSup };
enum class Verdict { BoundedConsistent, Divergent, Inconclusive };
enum class CompactVerdict { VanishingTail, NonVanishing, Inconclusive };

std::string to_string(CriterionId id);
std::string to_string(Verdict v);
std::string to_string(CompactVerdict v);

/// Finiteness needs growth below this factor when the sweep is deepened by two dyadic
/// levels; at or above it the verdict is divergent.
inline constexpr double kGrowthThreshold = kDivergenceGrowth;
/// A tail vanishes when each of the last kVanishingSteps tail ratios is at most this.
inline constexpr double kVanishingRatio = 0.7;
inline constexpr int kVanishingSteps = 3;
/// Ratio at or above which the last tail step counts as non-vanishing.
inline constexpr double kPersistingRatio = 0.9;
/// Tail and refinement steps move two dyadic levels (delta -> delta / 4).
inline constexpr int kLevelStride = 2;

/// Where a sup criterion looks for its maximum. Basepoints come from the r-lattice
/// (or its positive radial ray) with 1 - |a| >= 2^{-(depth + 2)}; the coarse pass of
/// the refinement check stops at 2^{-depth}.
struct Sweep {
    int depth = 10;
    double lattice_r = 0.5;
    bool full_lattice = false;
    CarlesonConvention convention = CarlesonConvention::Standard;
};

std::vector<DiscPoint> sweep_points(const Sweep& sweep, int depth);

struct CriterionParams {
    double p = 0.0;
    double q = 0.0;
    int n = 0;
    double r = 0.0;      // pseudohyperbolic radius (0 when unused)
    double gamma = 0.0;  // Berezin exponent (0 when unused)
    double s = 0.0;      // Lebesgue exponent p / (p - q) (0 when unused)
};

struct Sample {
    DiscPoint point;
    double value;
};

struct TailEntry {
    double delta;
    double sup;
};

struct Refinement {
    int coarse_level = 0;
    int fine_level = 0;
    double coarse = 0.0;
    double fine = 0.0;
    double growth = 1.0;  // fine / coarse (1 when both vanish)
    // Sup criteria: sup on the deepest shell over the sup on the shell before it. The global
    // sup can sit at interior points long after the boundary values start growing.
    double shell_growth = 1.0;
};

struct CriterionReport {
    CriterionId id = CriterionId::EmbSup;
    CriterionParams params;
    std::vector<Sample> samples;
    /// Global sup for sup criteria, L^s norm for the q < p criteria.
    double value = 0.0;
    /// Sups over 1 - delta <= |a| (within the sampled range), delta = 4^{-k}, for the
    /// deltas whose shell is fully sampled.
    std::vector<TailEntry> tail;
    /// Sups over the shells delta / 4 <= 1 - |a| < delta, same deltas.
    std::vector<TailEntry> shells;
    Refinement refinement;
    Verdict verdict = Verdict::Inconclusive;
    CompactVerdict compact_verdict = CompactVerdict::Inconclusive;
    std::vector<std::string> warnings;
    nlohmann::json details = nlohmann::json::object();
};

/// Verdict from a refinement record.
Verdict refinement_verdict(const Refinement& r);
/// Compact verdict from tail sups ordered by decreasing delta.
CompactVerdict tail_verdict(const std::vector<TailEntry>& tail);

/// sup_z mu(Delta(z, r)) / (omega(S(z))^{q/p} (1 - |z|)^{nq}), 0 < p <= q.
CriterionReport embedding_sup_criterion(double p, double q, int n, const RadialWeight& w,
                                        const DiscMeasure& mu, double r, const Sweep& sweep = {});

/// || mu(Delta(z, r)) / (omega(S(z)) (1 - |z|)^{nq}) || in L^s_{omega_tilde}, s = p / (p - q),
/// for q < p. The integral runs over grid level depth + 2; its truncations at
/// 1 - |z| = 2^{-depth} and 2^{-(depth + 2)} form the refinement pair.
CriterionReport embedding_ls_criterion(double p, double q, int n, const RadialWeight& w,
                                       const DiscMeasure& mu, double r, int depth = 10);

/// The q < p operator criterion: the measure phi_*(|u|^q nu) fed to the L^s criterion.
CriterionReport op_pushforward_criterion(const OperatorSpec& op, double p, double q,
                                         const RadialWeight& w, const DiscMeasure& nu, double r,
                                         int depth = 10);

/// sup_a of the integral of |u|^q (1-|a|)^{gamma q} |1 - conj(a) phi|^{-(gamma+n) q} nu dA
/// divided by omega(S(a))^{q/p}, for p <= q. Coarse basepoints use grid `level`, the
/// deepened sweep grid level + 2.
CriterionReport berezin_criterion(const OperatorSpec& op, double p, double q,
                                  const RadialWeight& w, const RadialWeight& nu, double gamma,
                                  const Sweep& sweep = {}, int level = 10,
                                  bool gamma_verified = true);

/// sup_z |u(z)| / (omega(S(phi(z)))^{1/p} (1 - |phi(z)|)^n) over the full r-lattice.
CriterionReport hinf_criterion(const OperatorSpec& op, double p, const RadialWeight& w,
                               const Sweep& sweep = {});

/// max over search points a with z in S(a) of mu(S(a)) / omega(S(a))^alpha; the origin
/// (S(0) = D) is always admitted.
double maximal_function(const DiscMeasure& mu, const RadialWeight& w, double alpha,
                        const DiscPoint& z, const std::vector<DiscPoint>& search,
                        CarlesonConvention convention = CarlesonConvention::Standard);

/// Carleson-box values mu(S(a)) / omega(S(a))^alpha, one per search point, reusable across
/// many maximal-function evaluations.
std::vector<double> carleson_box_ratios(const DiscMeasure& mu, const RadialWeight& w,
                                        double alpha, const std::vector<DiscPoint>& search,
                                        CarlesonConvention convention =
                                            CarlesonConvention::Standard);

struct GammaCheck {
    double gamma = 0.0;
    bool passed = false;
    double worst_C = 0.0;          // sup of the ratio on the finer grid
    double worst_C_coarse = 0.0;   // same basepoints on the coarser grid
    double drift = 0.0;            // relative change between the two grids
    double growth = 1.0;           // sup over all basepoints / sup without the last two levels
    std::vector<Sample> ratios;
    std::string diagnostic;
};

inline constexpr double kGammaDrift = 0.10;

/// Ratio of the two sides of the kernel estimate
/// int omega |1 - conj(a) z|^{-gamma p} dA <= C omega_hat(a) / (1 - |a|)^{gamma p - 1}
/// on radial basepoints with 1 - |a| >= 2^{-depth}, at grid levels `level` and level + 2.
GammaCheck verify_gamma(const RadialWeight& w, double p, double gamma, int depth = 10,
                        int level = 10);

struct GammaChoice {
    double gamma = 0.0;
    bool verified = false;
    int attempts = 0;
    GammaCheck check;
};

inline constexpr double kGammaEscalation = 1.5;
inline constexpr int kGammaRetries = 3;

/// 2 (beta + 2) / p, escalated by 1.5 up to three times until verify_gamma passes.
GammaChoice gamma_for(const RadialWeight& w, double p, const WeightClassReport& report,
                      int depth = 10, int level = 10);

/// Target of an operator-norm probe: L^q_nu when `nu` is set, otherwise the sup over
/// `sup_points`.
struct NormTarget {
    std::optional<DiscMeasure> nu;
    std::vector<DiscPoint> sup_points;
};

struct LowerBound {
    double value = 0.0;
    std::size_t best = 0;  // index of the maximising family member
    std::size_t skipped = 0;
    std::vector<std::string> warnings;
};

/// max over the family of ||D^n_{phi,u} f||_target / ||f||_{A^p_omega}.
LowerBound operator_norm_lower_bound(const OperatorSpec& op, double p, double q,
                                     const RadialWeight& w, const NormTarget& target,
                                     const std::vector<AnalyticFunction>& family,
                                     const QuadratureGrid& grid);

/// Test functions f_a at a = phi(xi) for the given points xi.
std::vector<AnalyticFunction> image_test_family(const OperatorSpec& op, double p,
                                                const RadialWeight& w, double gamma,
                                                const std::vector<DiscPoint>& points);

}  // namespace bergman
