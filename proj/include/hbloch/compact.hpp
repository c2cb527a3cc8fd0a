#pragma once

// Compact approximation machinery: dilation operators K_r f = f(r .), their
// dyadic averages L_n = (1/n) sum K_{r_k} with r_k = 1 - 2^-k, residual
// norms, and the two sides of the essential-norm sandwich
//     limsup ||C_phi f_n||  <=  ess norm  <=  ||C_phi (I - L_n)|| :
// the left side from the weak-null ladder, the right side approximated from
// below over a finite dictionary (hence reported as a surrogate indicator,
// not a certified upper bound).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "hbloch/bloch.hpp"
#include "hbloch/essnorm.hpp"
#include "hbloch/harmonic.hpp"
#include "hbloch/symbol.hpp"

namespace hbloch {

struct DilationOperator {
    explicit DilationOperator(double radius) : r(radius) {
        if (!(radius > 0.0) || !(radius < 1.0))
            throw parameter_domain_error("DilationOperator: r must lie in (0, 1)");
    }
    double r;
};

// K_r f = f(r z); a norm contraction for every alpha.
inline HarmonicFunction apply_Kr(const DilationOperator& K, const HarmonicFunction& f) {
    return detail::compose_unchecked(f, AnalyticMap::dilation(K.r));
}

struct AveragedApproximant {
    std::vector<double> radii;

    explicit AveragedApproximant(std::vector<double> rs) : radii(std::move(rs)) {
        if (radii.empty())
            throw parameter_domain_error("AveragedApproximant: need at least one radius");
        for (double r : radii)
            if (!(r > 0.0) || !(r < 1.0))
                throw parameter_domain_error("AveragedApproximant: radii must lie in (0, 1)");
    }

    // The fixed schedule r_k = 1 - 2^-k, k = 1..n.
    static AveragedApproximant dyadic(int n) {
        if (n < 1) throw parameter_domain_error("AveragedApproximant: n must be >= 1");
        std::vector<double> rs;
        rs.reserve(n);
        for (int k = 1; k <= n; ++k) rs.push_back(shell_radius(k));
        return AveragedApproximant(rs);
    }
};

namespace detail {

// weights w0 f + sum w_k f(r_k z) as one harmonic function.
inline HarmonicFunction dilation_mix(const HarmonicFunction& f, double w0,
                                     const std::vector<double>& radii, double wk) {
    std::vector<cplx> weights{w0};
    std::vector<AnalyticMap> hs{f.h()}, gs{f.g()};
    for (double r : radii) {
        const AnalyticMap d = AnalyticMap::dilation(r);
        weights.push_back(wk);
        hs.push_back(AnalyticMap::compose(f.h(), d));
        gs.push_back(AnalyticMap::compose(f.g(), d));
    }
    return HarmonicFunction(AnalyticMap::combine(weights, hs),
                            AnalyticMap::combine(weights, gs));
}

} // namespace detail

// L_n f = (1/n) sum_k f(r_k z).
inline HarmonicFunction apply_Ln(const AveragedApproximant& L, const HarmonicFunction& f) {
    const double w = 1.0 / static_cast<double>(L.radii.size());
    return detail::dilation_mix(f, 0.0, L.radii, w);
}

// (I - L_n) f.
inline HarmonicFunction residual(const AveragedApproximant& L, const HarmonicFunction& f) {
    const double w = -1.0 / static_cast<double>(L.radii.size());
    return detail::dilation_mix(f, 1.0, L.radii, w);
}

inline double residual_norm(const AveragedApproximant& L, const HarmonicFunction& f,
                            AlphaWeight alpha, const SamplingScheme& scheme = {}) {
    return norm(residual(L, f), alpha, scheme);
}

struct UpperBoundIndicator {
    double value;
    std::size_t argmax_index;
    bool dictionary_surrogate;  // always true: a max over finitely many f
};

// max over the unit-norm dictionary of ||C_phi (I - L) f||.  Lower-biased
// for the operator norm it stands in for, hence the surrogate flag.
inline UpperBoundIndicator empirical_upper_bound(const Symbol& phi, AlphaWeight alpha,
                                                 const AveragedApproximant& L,
                                                 const std::vector<HarmonicFunction>& dictionary,
                                                 const SamplingScheme& scheme = {}) {
    if (dictionary.empty())
        throw parameter_domain_error("empirical_upper_bound: dictionary must be non-empty");
    double best = 0.0;
    std::size_t argmax = 0;
    for (std::size_t i = 0; i < dictionary.size(); ++i) {
        const double v = norm(compose(residual(L, dictionary[i]), phi), alpha, scheme);
        if (v > best) { best = v; argmax = i; }
    }
    return {best, argmax, true};
}

struct WeakNullLowerBound {
    std::vector<LadderPoint> trace;  // (n, ||f_n o phi||)
    double value;                    // max over the tail window [N/2, N]
};

// Lower bound from the weak-null family: ladder of ||C_phi f_n||.
inline WeakNullLowerBound weak_null_lower_bound(const Symbol& phi, AlphaWeight alpha,
                                                long N = 512,
                                                const SamplingScheme& scheme = {}) {
    std::vector<LadderPoint> trace;
    double tail = 0.0;
    for (long n : geometric_ladder(N)) {
        const double v = norm(compose(weak_null_function(n, alpha), phi), alpha, scheme);
        trace.push_back({n, v});
        if (2 * n >= N) tail = std::max(tail, v);
    }
    return {std::move(trace), tail};
}

// Unit-norm dictionary: the weak-null ladder continued deep enough that
// dyadic averages act near-trivially on its top entries, plus seeded random
// polynomial pairs normalized by the norm engine.
inline std::vector<HarmonicFunction> make_default_dictionary(
    AlphaWeight alpha, const SamplingScheme& scheme = SamplingScheme::coarse(),
    long ladder_max = 131072, int poly_count = 50, int max_degree = 32,
    std::uint64_t seed = 20240801) {
    std::vector<HarmonicFunction> dict;
    for (long n : geometric_ladder(ladder_max)) dict.push_back(weak_null_function(n, alpha));

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::uniform_int_distribution<int> deg(1, max_degree);
    for (int i = 0; i < poly_count; ++i) {
        const int dh = deg(rng), dg = deg(rng);
        std::vector<cplx> ch, cg;
        for (int k = 0; k <= dh; ++k) ch.emplace_back(coef(rng), coef(rng));
        for (int k = 0; k <= dg; ++k) cg.emplace_back(coef(rng), coef(rng));
        HarmonicFunction f(AnalyticMap::polynomial(std::move(ch)),
                           AnalyticMap::polynomial(std::move(cg)));
        const double nrm = norm(f, alpha, scheme);
        dict.push_back(scale(f, 1.0 / nrm));
    }
    return dict;
}

} // namespace hbloch
