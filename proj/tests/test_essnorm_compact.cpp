// The ratio field, the three essential-norm estimators, boundedness and
// margin diagnostics, and the dilation-average compactness toolkit.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "hbloch/hbloch.hpp"
#include "oracles.hpp"

using namespace hbloch;
using Catch::Approx;

namespace {

SamplingScheme small_scheme() {
    SamplingScheme s;
    s.radial_levels = 12;
    s.angular_base = 16;
    s.angular_growth = 1.2;
    s.refinement_rounds = 1;
    return s;
}

std::vector<HarmonicFunction> small_dictionary(AlphaWeight alpha) {
    return make_default_dictionary(alpha, SamplingScheme::coarse(), 1024, 10, 8, 7);
}

} // namespace

TEST_CASE("ratio field of the identity is exactly one", "[essnorm]") {
    for (double a : {0.5, 1.0, 2.0}) {
        const RatioField field(Symbol::identity(), AlphaWeight(a));
        SamplingScheme s;
        s.radial_levels = 20;
        s.angular_base = 8;
        for (const DiskPoint& z : disk_samples(s)) {
            REQUIRE(field.at(z) == 1.0);  // numerator and denominator share bits
        }
    }
}

TEST_CASE("ratio field respects the contraction ceiling at alpha = 1", "[essnorm]") {
    // For any analytic self-map the alpha = 1 ratio is at most 1; the
    // implementation must not breach that by more than accumulated roundoff.
    const Symbol phi = Symbol::polynomial({cplx(0.2), cplx(0.3), cplx(-0.25), cplx(0.1)});
    const RatioField field(phi, AlphaWeight(1.0));
    SamplingScheme s;
    s.radial_levels = 30;
    s.angular_base = 24;
    s.angular_growth = 1.1;
    for (const DiskPoint& z : disk_samples(s)) {
        REQUIRE(field.at(z) <= 1.0 + 1e-10);
    }
}

TEST_CASE("ratio field rejects boundary-valued symbols", "[essnorm]") {
    // The constant 1 passes self-map certification (modulus never exceeds 1)
    // but leaves 1 - |phi|^2 with nothing to divide by.
    const Symbol c = make_symbol("poly coeffs=[1]");
    const RatioField field(c, AlphaWeight(1.0));
    REQUIRE_THROWS_AS(field.at(DiskPoint(cplx(0.25, 0.0))), near_boundary_error);
}

TEST_CASE("threshold estimator: filtering, monotonicity, emptiness", "[essnorm]") {
    const AlphaWeight one(1.0);

    SECTION("superlevel suprema shrink as the threshold rises") {
        const RatioField field(Symbol::automorphism(cplx(0.4, 0.0)), one);
        const ThresholdEstimate est =
            essnorm_threshold(field, default_s_levels(), small_scheme());
        REQUIRE(est.levels.size() == 20);
        for (std::size_t i = 1; i < est.levels.size(); ++i) {
            REQUIRE(est.levels[i].sup_value <= est.levels[i - 1].sup_value + 1e-15);
            REQUIRE(est.levels[i].count <= est.levels[i - 1].count);
        }
        REQUIRE(est.E1 == est.levels.back().sup_value);
    }

    SECTION("an image that never reaches the threshold contributes zero") {
        // |phi| < 0.5 for the half dilation, so every superlevel set past
        // s = 0.5 is empty and the estimate collapses to 0 exactly.
        const RatioField field(Symbol::dilation(cplx(0.5, 0.0)), one);
        const ThresholdEstimate est =
            essnorm_threshold(field, {0.9, 0.95, 0.99}, small_scheme());
        for (const LevelValue& lv : est.levels) {
            REQUIRE(lv.count == 0);
            REQUIRE(lv.sup_value == 0.0);
        }
        REQUIRE(est.E1 == 0.0);
    }

    SECTION("threshold ladder validation") {
        const RatioField field(Symbol::identity(), one);
        REQUIRE_THROWS_AS(essnorm_threshold(field, {}, small_scheme()),
                          parameter_domain_error);
        REQUIRE_THROWS_AS(essnorm_threshold(field, {0.0, 0.5}, small_scheme()),
                          parameter_domain_error);
        REQUIRE_THROWS_AS(essnorm_threshold(field, {0.5, 0.5}, small_scheme()),
                          parameter_domain_error);
        REQUIRE_THROWS_AS(essnorm_threshold(field, {0.5, 1.0}, small_scheme()),
                          parameter_domain_error);
    }
}

TEST_CASE("boundary estimator and its shell bounds", "[essnorm]") {
    const RatioField field(Symbol::identity(), AlphaWeight(1.0));
    const BoundaryEstimate est = essnorm_boundary(field, 8);
    REQUIRE(est.shells.size() == 8);
    REQUIRE(est.E2 == Approx(1.0).margin(1e-12));
    for (const ShellMax& sm : est.shells) REQUIRE(sm.max_value == Approx(1.0).margin(1e-12));
    REQUIRE_THROWS_AS(essnorm_boundary(field, 4), parameter_domain_error);
    REQUIRE_THROWS_AS(essnorm_boundary(field, 45), parameter_domain_error);
}

TEST_CASE("geometric ladder is frozen", "[essnorm]") {
    const std::vector<long> expect{16, 23, 33, 47, 66, 93, 132, 187, 264, 373, 512};
    REQUIRE(geometric_ladder(512) == expect);
    REQUIRE(geometric_ladder(16) == std::vector<long>{16});
    REQUIRE_THROWS_AS(geometric_ladder(15), parameter_domain_error);
}

TEST_CASE("power estimator on the identity", "[essnorm]") {
    const PowerEstimate est =
        essnorm_power(Symbol::identity(), AlphaWeight(1.0), 512, SamplingScheme::coarse());
    REQUIRE(est.E3 == Approx(1.0).epsilon(0.05));
    REQUIRE(est.ladder.size() == geometric_ladder(512).size());
    // a_n = n^0 ||z^n + zbar^n|| tends to 4/e from above.
    for (const LadderPoint& p : est.ladder) {
        REQUIRE(p.a_n > 1.4);
        REQUIRE(p.a_n < 1.6);
    }
    REQUIRE_THROWS_AS(essnorm_power(Symbol::identity(), AlphaWeight(1.0), 8),
                      parameter_domain_error);
}

TEST_CASE("power-ladder boundedness verdicts", "[essnorm]") {
    const SamplingScheme s = SamplingScheme::coarse();

    SECTION("identity: bounded with a stable ladder") {
        const BoundednessVerdict v =
            boundedness_power_test(Symbol::identity(), AlphaWeight(1.0), 512, s);
        REQUIRE(v.bounded);
        REQUIRE(v.sup_a_n < 2.2);
    }

    SECTION("strict dilation: ladder decays geometrically") {
        const BoundednessVerdict v =
            boundedness_power_test(Symbol::dilation(cplx(0.9, 0.0)), AlphaWeight(0.5), 512, s);
        REQUIRE(v.bounded);
        // 0.9^n kills the tail long before n = 512.
        REQUIRE(v.ladder.back().a_n < 1e-6);
        for (std::size_t i = 3; i < v.ladder.size(); ++i)
            REQUIRE(v.ladder[i].a_n < v.ladder[i - 1].a_n);
    }
}

TEST_CASE("bounded-below margins over a dictionary", "[essnorm]") {
    const AlphaWeight one(1.0);
    const SamplingScheme s = SamplingScheme::coarse();

    SECTION("a strict dilation is crushed by high-degree unit vectors") {
        const MarginEstimate m = bounded_below_margin(Symbol::dilation(cplx(0.5, 0.0)), one,
                                                      small_dictionary(one), s);
        REQUIRE(m.norm_margin < 1e-6);
        REQUIRE(m.norm_margin >= 0.0);
    }

    SECTION("automorphisms stay bounded below") {
        const MarginEstimate m = bounded_below_margin(Symbol::automorphism(cplx(0.5, 0.0)), one,
                                                      small_dictionary(one), s);
        REQUIRE(m.norm_margin > 0.1);
        REQUIRE(m.recentered_margin > 0.1);
        REQUIRE(std::abs(m.norm_margin - m.recentered_margin) < 0.5);
        REQUIRE(m.argmin_index < small_dictionary(one).size());
    }

    SECTION("empty dictionary is rejected") {
        REQUIRE_THROWS_AS(bounded_below_margin(Symbol::identity(), one, {}, s),
                          parameter_domain_error);
    }
}

TEST_CASE("dilation operators contract every norm", "[compact]") {
    const HarmonicFunction f(
        AnalyticMap::polynomial({cplx(0.3), cplx(1.0, -0.5), cplx(0.0), cplx(0.4)}),
        AnalyticMap::polynomial({cplx(0.0), cplx(0.0, 0.7), cplx(-0.2)}));
    const SamplingScheme s = SamplingScheme::coarse();

    for (double a : {0.5, 1.0, 2.0}) {
        const AlphaWeight alpha(a);
        const double base = norm(f, alpha, s);
        for (double r : {0.5, 0.9}) {
            const double contracted = norm(apply_Kr(DilationOperator(r), f), alpha, s);
            REQUIRE(contracted <= base + 1e-12);
        }
    }
    REQUIRE_THROWS_AS(DilationOperator(0.0), parameter_domain_error);
    REQUIRE_THROWS_AS(DilationOperator(1.0), parameter_domain_error);
}

TEST_CASE("dilation semigroup composes", "[compact]") {
    const HarmonicFunction f(AnalyticMap::polynomial({cplx(0.1), cplx(0.6), cplx(0.3)}),
                             AnalyticMap::polynomial({cplx(0.0), cplx(0.2, 0.2)}));
    const HarmonicFunction lhs =
        apply_Kr(DilationOperator(0.8), apply_Kr(DilationOperator(0.5), f));
    const HarmonicFunction rhs = apply_Kr(DilationOperator(0.4), f);
    for (cplx z : {cplx(0.0), cplx(0.3, 0.2), cplx(-0.7, 0.1)})
        REQUIRE(std::abs(lhs.eval(z) - rhs.eval(z)) < 1e-15);
}

TEST_CASE("averaged approximants are linear with exact residuals", "[compact]") {
    const AveragedApproximant L = AveragedApproximant::dyadic(4);
    const HarmonicFunction f(AnalyticMap::polynomial({cplx(0.2), cplx(0.5)}),
                             AnalyticMap::polynomial({cplx(0.0), cplx(0.0), cplx(0.3)}));
    const HarmonicFunction g(AnalyticMap::polynomial({cplx(0.0), cplx(0.0, -0.4)}),
                             AnalyticMap::polynomial({cplx(0.1)}));

    SECTION("linearity") {
        const HarmonicFunction sum_then = apply_Ln(L, add(f, g));
        const HarmonicFunction then_sum = add(apply_Ln(L, f), apply_Ln(L, g));
        for (cplx z : {cplx(0.2, 0.3), cplx(-0.5, 0.4)})
            REQUIRE(std::abs(sum_then.eval(z) - then_sum.eval(z)) < 1e-12);
    }

    SECTION("residual is the complement") {
        const HarmonicFunction r = residual(L, f);
        for (cplx z : {cplx(0.0), cplx(0.45, -0.3)})
            REQUIRE(std::abs(r.eval(z) - (f.eval(z) - apply_Ln(L, f).eval(z))) < 1e-12);
    }

    SECTION("schedule validation") {
        REQUIRE_THROWS_AS(AveragedApproximant::dyadic(0), parameter_domain_error);
        REQUIRE_THROWS_AS(AveragedApproximant({0.5, 1.0}), parameter_domain_error);
        REQUIRE_THROWS_AS(AveragedApproximant(std::vector<double>{}), parameter_domain_error);
    }
}

TEST_CASE("residuals shrink as the average deepens", "[compact]") {
    const HarmonicFunction f(
        AnalyticMap::polynomial({cplx(0.3), cplx(1.0, -0.5), cplx(0.0), cplx(0.4)}),
        AnalyticMap::polynomial({cplx(0.0), cplx(0.0, 0.7), cplx(-0.2)}));

    SECTION("pointwise on the half disk") {
        double prev = 1e9;
        for (int n : {2, 4, 8, 16}) {
            const HarmonicFunction r = residual(AveragedApproximant::dyadic(n), f);
            double worst = 0.0;
            for (int i = -5; i <= 5; ++i)
                for (int j = -5; j <= 5; ++j) {
                    const cplx z(0.1 * i, 0.1 * j);
                    if (std::abs(z) > 0.5) continue;
                    worst = std::max(worst, std::abs(r.eval(z)));
                }
            REQUIRE(worst < prev);
            prev = worst;
        }
    }

    SECTION("norm of the residual stays controlled") {
        const SamplingScheme s = SamplingScheme::coarse();
        for (double a : {0.5, 1.0}) {
            const AlphaWeight alpha(a);
            const double base = norm(f, alpha, s);
            const double r8 = residual_norm(AveragedApproximant::dyadic(8), f, alpha, s);
            const double r16 = residual_norm(AveragedApproximant::dyadic(16), f, alpha, s);
            REQUIRE(r8 <= 1.1 * base);
            REQUIRE(r16 < r8);
        }
    }
}

TEST_CASE("weak-null ladder against the identity symbol", "[compact]") {
    const WeakNullLowerBound lb =
        weak_null_lower_bound(Symbol::identity(), AlphaWeight(1.0), 256, SamplingScheme::coarse());
    REQUIRE(lb.value == Approx(1.0).epsilon(1e-6));
    REQUIRE(lb.trace.size() == geometric_ladder(256).size());
    for (const LadderPoint& p : lb.trace) REQUIRE(p.a_n == Approx(1.0).epsilon(1e-6));
}

TEST_CASE("default dictionary: size and unit norms", "[compact]") {
    const AlphaWeight one(1.0);
    const SamplingScheme s = SamplingScheme::coarse();
    const std::vector<HarmonicFunction> dict = make_default_dictionary(one);
    REQUIRE(dict.size() >= 70);
    for (const HarmonicFunction& f : dict) {
        REQUIRE(norm(f, one, s) == Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("empirical upper bound over the residual dictionary", "[compact]") {
    const AlphaWeight one(1.0);
    const SamplingScheme s = SamplingScheme::coarse();
    const std::vector<HarmonicFunction> dict = small_dictionary(one);
    const AveragedApproximant L = AveragedApproximant::dyadic(8);

    const UpperBoundIndicator id_bound =
        empirical_upper_bound(Symbol::identity(), one, L, dict, s);
    REQUIRE(id_bound.dictionary_surrogate);
    REQUIRE(id_bound.argmax_index < dict.size());
    REQUIRE(id_bound.value > 0.0);
    REQUIRE(id_bound.value <= 2.0 + 1e-9);  // ||(I - L)f|| <= 2 on unit vectors

    // A strict dilation drives the indicator far below the identity's.
    const UpperBoundIndicator dil_bound =
        empirical_upper_bound(Symbol::dilation(cplx(0.5, 0.0)), one, L, dict, s);
    REQUIRE(dil_bound.value < id_bound.value);

    REQUIRE_THROWS_AS(empirical_upper_bound(Symbol::identity(), one, L, {}, s),
                      parameter_domain_error);
}
