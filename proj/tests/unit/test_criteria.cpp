#include <doctest.h>

#include <cmath>

#include "bergman/criteria.hpp"
#include "bergman/errors.hpp"
#include "oracles.hpp"

using namespace bergman;
using doctest::Approx;

namespace {

// Exponent of mu = (1 - |z|)^beta making the embedding sup criterion critical.
double critical_beta(double alpha, double p, double q, int n) {
    return (alpha + 2.0) * q / p + n * q - 2.0;
}

}  // namespace

TEST_SUITE("criteria") {

TEST_CASE("verdict helpers") {
    CHECK(refinement_verdict({8, 10, 1.0, 1.1, 1.1}) == Verdict::BoundedConsistent);
    CHECK(refinement_verdict({8, 10, 1.0, 1.3, 1.3}) == Verdict::Divergent);
    CHECK(tail_verdict({{1, 8}, {0.25, 4}, {1.0 / 16, 2}, {1.0 / 64, 1}}) == CompactVerdict::VanishingTail);
    CHECK(tail_verdict({{1, 8}, {0.25, 8}, {1.0 / 16, 8}, {1.0 / 64, 8}}) == CompactVerdict::NonVanishing);
    CHECK(tail_verdict({{1, 8}, {0.25, 4}, {1.0 / 16, 3.2}, {1.0 / 64, 2}}) == CompactVerdict::Inconclusive);
    CHECK(to_string(CriterionId::BerezinSup) == "BEREZIN_SUP");
    CHECK(to_string(Verdict::BoundedConsistent) == "bounded-consistent");
}

TEST_CASE("zero measure") {
    const auto w = RadialWeight::power(0.0);
    const auto rep = embedding_sup_criterion(1.0, 2.0, 0, w, DiscMeasure::zero(), 0.5, Sweep{6});
    CHECK(rep.value == 0.0);
    CHECK(rep.verdict == Verdict::BoundedConsistent);
    const auto ls = embedding_ls_criterion(2.0, 1.0, 0, w, DiscMeasure::zero(), 0.5, 6);
    CHECK(ls.value == 0.0);
}

TEST_CASE("embedding sup criterion on both sides of the boundary") {
    const double alpha = 1.0, p = 1.0, q = 2.0;
    const int n = 1;
    const auto w = RadialWeight::power(alpha);
    const auto grid = make_grid(8);
    for (double margin : {0.3, -0.3}) {
        const auto mu = DiscMeasure::power_density(critical_beta(alpha, p, q, n) + margin, grid);
        const auto rep = embedding_sup_criterion(p, q, n, w, mu, 0.5, Sweep{14});
        if (margin > 0) {
            CHECK(rep.verdict == Verdict::BoundedConsistent);
            CHECK(rep.compact_verdict == CompactVerdict::VanishingTail);
        } else {
            CHECK(rep.verdict == Verdict::Divergent);
            CHECK(rep.refinement.growth >= kGrowthThreshold);
            CHECK(rep.compact_verdict == CompactVerdict::NonVanishing);
        }
        for (std::size_t i = 1; i < rep.tail.size(); ++i) CHECK(rep.tail[i].sup <= rep.tail[i - 1].sup);
        // verdicts do not depend on the pseudohyperbolic radius
        for (double r : {0.1, 0.3}) {
            CHECK(embedding_sup_criterion(p, q, n, w, mu, r, Sweep{10}).verdict == rep.verdict);
        }
    }
}

TEST_CASE("enlarging the measure never lowers the criterion") {
    const auto w = RadialWeight::power(0.0);
    const auto grid = make_grid(8);
    const auto mu = DiscMeasure::power_density(0.5, grid);
    const auto bigger = DiscMeasure::radial([](double g) { return std::sqrt(g) + 0.1 * g; }, grid);
    const auto a = embedding_sup_criterion(1.0, 1.0, 0, w, mu, 0.5, Sweep{8});
    const auto b = embedding_sup_criterion(1.0, 1.0, 0, w, bigger, 0.5, Sweep{8});
    CHECK(b.value >= a.value);
}

TEST_CASE("L^s criterion against the radial oracle") {
    const auto w = RadialWeight::power(0.0);
    const auto mu = DiscMeasure::power_density(2.0, make_grid(8));
    const auto rep = embedding_ls_criterion(2.0, 1.0, 1, w, mu, 0.5, 10);
    CHECK(rep.verdict == Verdict::BoundedConsistent);
    CHECK(rep.value == Approx(oracle::ls_norm(0.0, 2.0, 2.0, 1.0, 1, 0.5)).epsilon(1e-3));
}

TEST_CASE("L^s criterion on both sides of the boundary") {
    const double alpha = 1.0, p = 2.0, q = 1.0;
    const int n = 1;
    const double s = p / (p - q);
    const double beta_c = alpha + n * q - (alpha + 1.0) / s;
    const auto w = RadialWeight::power(alpha);
    for (double margin : {0.3, -0.3}) {
        const auto mu = DiscMeasure::power_density(beta_c + margin, make_grid(8));
        const auto rep = embedding_ls_criterion(p, q, n, w, mu, 0.5, 10);
        CHECK(rep.verdict == (margin > 0 ? Verdict::BoundedConsistent : Verdict::Divergent));
    }
}

TEST_CASE("pushforward criterion") {
    const auto w = RadialWeight::power(0.0);
    const auto nu = DiscMeasure::power_density(1.0, make_grid(8));
    const auto direct = embedding_ls_criterion(2.0, 1.0, 0, w, nu, 0.5, 8);
    const auto via_id = op_pushforward_criterion(OperatorSpec{}, 2.0, 1.0, w, nu, 0.5, 8);
    CHECK(via_id.value == Approx(direct.value).epsilon(1e-12));
    CHECK(via_id.verdict == direct.verdict);

    // a divergent measure becomes finite once pushed into |z| <= 1/2
    const auto heavy = DiscMeasure::power_density(-0.9, make_grid(6));
    CHECK(embedding_ls_criterion(2.0, 1.0, 2, w, heavy, 0.5, 8).verdict == Verdict::Divergent);
    const auto scaled = op_pushforward_criterion(OperatorSpec{SelfMap::scale(0.5), AnalyticFunction::constant(1.0), 2},
                                                 2.0, 1.0, w, heavy, 0.5, 6);
    CHECK(scaled.verdict == Verdict::BoundedConsistent);
    CHECK(std::isfinite(scaled.value));

    // |u| <= 1 can only lower the value
    const auto damped = op_pushforward_criterion(
        OperatorSpec{SelfMap::identity(), AnalyticFunction::polynomial({0.0, 1.0}), 0}, 2.0, 1.0, w, nu, 0.5, 6);
    CHECK(damped.value <= embedding_ls_criterion(2.0, 1.0, 0, w, nu, 0.5, 6).value);
}

TEST_CASE("Berezin criterion") {
    const auto w = RadialWeight::power(0.0);
    const auto nu = RadialWeight::power(0.3);
    const Sweep sweep{7};
    const auto zero = berezin_criterion(OperatorSpec{SelfMap::identity(), AnalyticFunction(), 0}, 1.0, 1.0, w,
                                        nu, 6.0, sweep, 7);
    CHECK(zero.value == 0.0);

    const auto scaled = berezin_criterion(OperatorSpec{SelfMap::scale(0.5)}, 1.0, 1.0, w, nu, 6.0, sweep, 7);
    CHECK(scaled.verdict == Verdict::BoundedConsistent);
    CHECK(scaled.compact_verdict == CompactVerdict::VanishingTail);

    const OperatorSpec op{SelfMap::power(2), AnalyticFunction::polynomial({1.0, 0.5}), 0};
    OperatorSpec doubled = op;
    doubled.u = op.u.scaled(2.0);
    const auto a = berezin_criterion(op, 1.0, 2.0, w, nu, 6.0, sweep, 7);
    const auto b = berezin_criterion(doubled, 1.0, 2.0, w, nu, 6.0, sweep, 7);
    CHECK(b.value == Approx(4.0 * a.value).epsilon(1e-12));

    const auto unverified = berezin_criterion(OperatorSpec{}, 1.0, 1.0, w, nu, 6.0, sweep, 7, false);
    CHECK_FALSE(unverified.warnings.empty());
}

TEST_CASE("divergence while the global sup sits at the origin") {
    // beta 0.3 below the boundary: values grow towards the circle but stay below the value at 0
    const auto w = RadialWeight::power(1.0);
    const auto rep = berezin_criterion(OperatorSpec{}, 2.0, 2.0, w, RadialWeight::power(0.7), 4.0, Sweep{7}, 7);
    CHECK(rep.refinement.growth < kGrowthThreshold);
    CHECK(rep.refinement.shell_growth >= kGrowthThreshold);
    CHECK(rep.verdict == Verdict::Divergent);
    CHECK(rep.compact_verdict == CompactVerdict::NonVanishing);
}

TEST_CASE("sup criterion for bounded multipliers") {
    const auto w = RadialWeight::power(0.0);
    const auto rep = hinf_criterion(OperatorSpec{SelfMap::scale(0.5)}, 2.0, w, Sweep{8});
    CHECK(rep.verdict == Verdict::BoundedConsistent);
    CHECK(rep.compact_verdict == CompactVerdict::VanishingTail);
    CHECK(rep.details["sup_abs_phi"].get<double>() == Approx(0.5).epsilon(1e-2));
    // maximum at |phi| = 1/2: omega(S(1/2))^{-1/2} with omega(S(1/2)) = 3 / (16 pi)
    CHECK(rep.value == Approx(std::pow(3.0 / (16.0 * std::numbers::pi), -0.5)).epsilon(1e-2));

    OperatorSpec tripled{SelfMap::scale(0.5), AnalyticFunction::constant(3.0), 0};
    CHECK(hinf_criterion(tripled, 2.0, w, Sweep{8}).value == Approx(3.0 * rep.value).epsilon(1e-14));

    const auto zero = hinf_criterion(OperatorSpec{SelfMap::identity(), AnalyticFunction(), 0}, 2.0, w, Sweep{8});
    CHECK(zero.value == 0.0);
    CHECK(zero.compact_verdict == CompactVerdict::VanishingTail);

    for (double alpha : {0.0, 1.0}) {
        const auto id = hinf_criterion(OperatorSpec{}, 2.0, RadialWeight::power(alpha), Sweep{8});
        CHECK(id.verdict == Verdict::Divergent);
        // grows like (1 - |z|)^{-(2 + alpha) / p} over two dyadic levels
        CHECK(id.refinement.growth == Approx(std::pow(4.0, (2.0 + alpha) / 2.0)).epsilon(0.05));
    }
}

TEST_CASE("maximal function") {
    const auto w = RadialWeight::power(1.0);
    const auto grid = make_grid(8);
    const auto mu = DiscMeasure::weight(w, grid);
    const auto search = r_lattice(0.5, 5);
    for (const auto& z : {DiscPoint(0.0, 0.0), DiscPoint(0.5, 0.2), DiscPoint::from_gap(1e-3, 2.0)}) {
        CHECK(maximal_function(mu, w, 1.0, z, search) >= 1.0 - 1e-9);
        CHECK(maximal_function(DiscMeasure::zero(), w, 1.0, z, search) == 0.0);
    }
    CHECK_THROWS_AS(maximal_function(mu, w, 0.0, DiscPoint(0.0, 0.0), search), DomainError);
}

TEST_CASE("kernel estimate verification") {
    const auto one = RadialWeight::power(0.0);
    const GammaCheck ok = verify_gamma(one, 2.0, 3.0, 8, 8);
    CHECK(ok.passed);
    CHECK(ok.drift < kGammaDrift);
    const GammaCheck big = verify_gamma(one, 2.0, 25.0, 8, 8);
    CHECK(big.passed);
    const GammaCheck low = verify_gamma(one, 1.0, 1.0, 8, 8);
    CHECK_FALSE(low.passed);
    CHECK_FALSE(low.diagnostic.empty());
}

TEST_CASE("operator norm lower bound") {
    const auto w = RadialWeight::power(1.0);
    const auto grid = make_grid(8);
    const NormTarget same{DiscMeasure::weight(w, grid), {}};
    const std::vector<AnalyticFunction> family = {AnalyticFunction::constant(1.0),
                                                  AnalyticFunction::polynomial({0.0, 1.0})};
    const LowerBound lb = operator_norm_lower_bound(OperatorSpec{}, 2.0, 2.0, w, same, family, *grid);
    CHECK(lb.value >= 1.0 - 1e-3);

    const OperatorSpec zero{SelfMap::identity(), AnalyticFunction(), 0};
    CHECK(operator_norm_lower_bound(zero, 2.0, 2.0, w, same, family, *grid).value == 0.0);

    const LowerBound skip = operator_norm_lower_bound(
        OperatorSpec{}, 2.0, 2.0, w, same, {AnalyticFunction(), AnalyticFunction::constant(1.0)}, *grid);
    CHECK(skip.skipped == 1);
    CHECK_FALSE(skip.warnings.empty());
}

}  // TEST_SUITE
