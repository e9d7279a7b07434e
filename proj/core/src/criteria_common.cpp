#include <algorithm>
#include <cmath>
#include <limits>

#include "bergman/errors.hpp"
#include "criteria_internal.hpp"

namespace bergman {

std::string to_string(CriterionId id) {
    switch (id) {
        case CriterionId::EmbSup:
            return "EMB_SUP";
        case CriterionId::EmbLs:
            return "EMB_LS";
        case CriterionId::OpPushforwardLs:
            return "OP_PUSHFORWARD_LS";
        case CriterionId::BerezinSup:
            return "BEREZIN_SUP";
        case CriterionId::HinfSup:
            return "HINF_SUP";
    }
    return "UNKNOWN";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::BoundedConsistent:
            return "bounded-consistent";
        case Verdict::Divergent:
            return "divergent";
        case Verdict::Inconclusive:
            return "inconclusive";
    }
    return "inconclusive";
}

std::string to_string(CompactVerdict v) {
    switch (v) {
        case CompactVerdict::VanishingTail:
            return "vanishing-tail";
        case CompactVerdict::NonVanishing:
            return "non-vanishing";
        case CompactVerdict::Inconclusive:
            return "inconclusive";
    }
    return "inconclusive";
}

std::vector<DiscPoint> sweep_points(const Sweep& sweep, int depth) {
    return sweep.full_lattice ? r_lattice(sweep.lattice_r, depth)
                              : radial_ray(sweep.lattice_r, depth);
}

Verdict refinement_verdict(const Refinement& r) {
    if (std::isnan(r.coarse) || std::isnan(r.fine)) return Verdict::Inconclusive;
    if (std::isinf(r.fine)) return Verdict::Divergent;
    if (r.coarse == 0.0) return r.fine == 0.0 ? Verdict::BoundedConsistent : Verdict::Inconclusive;
    if (r.growth >= kGrowthThreshold || r.shell_growth >= kGrowthThreshold) {
        return Verdict::Divergent;
    }
    return Verdict::BoundedConsistent;
}

CompactVerdict tail_verdict(const std::vector<TailEntry>& tail) {
    if (tail.size() < static_cast<std::size_t>(kVanishingSteps) + 1) {
        return CompactVerdict::Inconclusive;
    }
    for (const TailEntry& t : tail) {
        if (!std::isfinite(t.sup)) return CompactVerdict::Inconclusive;
    }
    const std::size_t n = tail.size();
    bool vanishing = true;
    for (std::size_t i = n - kVanishingSteps; i < n; ++i) {
        if (!(tail[i].sup <= kVanishingRatio * tail[i - 1].sup)) vanishing = false;
    }
    if (vanishing) return CompactVerdict::VanishingTail;
    if (tail[n - 1].sup >= kPersistingRatio * tail[n - 2].sup) return CompactVerdict::NonVanishing;
    return CompactVerdict::Inconclusive;
}

namespace detail {

double log_square_mass(const RadialWeight& w, const DiscPoint& z, CarlesonConvention convention) {
    const double m = weighted_area(w, carleson_square(z, convention));
    if (!(m >= kUnderflowFloor)) return std::numeric_limits<double>::quiet_NaN();
    return std::log(m);
}

bool is_coarse(double gap, int depth) {
    return gap >= std::exp2(-static_cast<double>(depth)) * (1.0 - 1e-12);
}

void fill_tails(CriterionReport& rep, const std::vector<double>& gaps,
                const std::vector<double>& values) {
    rep.tail.clear();
    rep.shells.clear();
    double min_gap = 1.0;
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        if (!std::isnan(values[i])) min_gap = std::min(min_gap, gaps[i]);
    }
    // Only deltas whose shell [delta / 4, delta) is fully sampled.
    for (int k = 0;; k += kLevelStride) {
        const double delta = std::exp2(-static_cast<double>(k));
        if (delta / 4.0 < min_gap * (1.0 - 1e-12)) break;
        double tail = 0.0;
        double shell = 0.0;
        for (std::size_t i = 0; i < gaps.size(); ++i) {
            const double v = values[i];
            if (std::isnan(v)) continue;
            if (gaps[i] <= delta * (1.0 + 1e-12)) tail = std::max(tail, v);
            if (gaps[i] >= delta / 4.0 * (1.0 - 1e-12) && gaps[i] < delta * (1.0 - 1e-12)) {
                shell = std::max(shell, v);
            }
        }
        rep.tail.push_back({delta, tail});
        rep.shells.push_back({delta, shell});
    }
}

void summarize_sup(CriterionReport& rep, const std::vector<double>& tail_gaps,
                   const std::vector<double>& coarse_values, int coarse_level, int fine_level) {
    double fine = 0.0;
    std::vector<double> values;
    values.reserve(rep.samples.size());
    bool truncated = false;
    for (const Sample& s : rep.samples) {
        values.push_back(s.value);
        if (std::isnan(s.value)) {
            truncated = true;
            continue;
        }
        fine = std::max(fine, s.value);
    }
    double coarse = 0.0;
    for (double v : coarse_values) {
        if (!std::isnan(v)) coarse = std::max(coarse, v);
    }
    if (truncated) {
        rep.warnings.push_back(
            "omega(S(z)) underflowed at some basepoints; they were dropped from the sweep");
    }
    rep.value = fine;
    rep.refinement = {coarse_level, fine_level, coarse, fine,
                      coarse > 0.0 ? fine / coarse : (fine > 0.0 ? INFINITY : 1.0)};
    fill_tails(rep, tail_gaps, values);
    const std::size_t m = rep.shells.size();
    if (m >= 2) {
        const double last = rep.shells[m - 1].sup;
        const double before = rep.shells[m - 2].sup;
        rep.refinement.shell_growth = before > 0.0 ? last / before : (last > 0.0 ? INFINITY : 1.0);
    }
    rep.verdict = refinement_verdict(rep.refinement);
    rep.compact_verdict = tail_verdict(rep.tail);
    if (rep.verdict == Verdict::Divergent) rep.compact_verdict = CompactVerdict::NonVanishing;
    std::erase_if(rep.samples, [](const Sample& s) { return std::isnan(s.value); });
}

}  // namespace detail
}  // namespace bergman
