#pragma once

// Harmonic functions f = h + conj(g) with h, g analytic, their Wirtinger
// derivatives f_z = h', f_zbar = conj(g'), composition with analytic
// self-maps, and a hyperbolic Lipschitz-number estimator built purely from
// difference quotients.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "hbloch/analytic.hpp"
#include "hbloch/disk.hpp"
#include "hbloch/errors.hpp"

namespace hbloch {

struct WirtingerPair {
    cplx fz;     // d/dz
    cplx fzbar;  // d/dzbar
};

class HarmonicFunction {
public:
    HarmonicFunction(AnalyticMap h, AnalyticMap g) : h_(std::move(h)), g_(std::move(g)) {}

    static HarmonicFunction analytic(AnalyticMap h) {
        return HarmonicFunction(std::move(h), AnalyticMap::constant(0.0));
    }

    const AnalyticMap& h() const { return h_; }
    const AnalyticMap& g() const { return g_; }

    cplx eval(cplx z) const { return h_.value(z) + std::conj(g_.value(z)); }
    cplx eval(const DiskPoint& z) const { return eval(z.value()); }

    WirtingerPair wirtinger(cplx z) const {
        return {h_.derivative(z), std::conj(g_.derivative(z))};
    }
    WirtingerPair wirtinger(const DiskPoint& z) const { return wirtinger(z.value()); }

    // |f_z| + |f_zbar|, the quantity the alpha-weight multiplies.
    double derivative_magnitude_sum(cplx z) const {
        return std::abs(h_.derivative(z)) + std::abs(g_.derivative(z));
    }

private:
    AnalyticMap h_, g_;
};

namespace detail {

// Composition without a self-map check, for internal call sites that already
// hold a validated symbol.
inline HarmonicFunction compose_unchecked(const HarmonicFunction& f, const AnalyticMap& phi) {
    return HarmonicFunction(AnalyticMap::compose(f.h(), phi), AnalyticMap::compose(f.g(), phi));
}

} // namespace detail

// f o phi.  phi must map the disk into itself; violations throw.
inline HarmonicFunction compose(const HarmonicFunction& f, const AnalyticMap& phi) {
    detail::certify_self_map(phi, 512, 3);
    return detail::compose_unchecked(f, phi);
}

// c f = c h + conj(conj(c) g).
inline HarmonicFunction scale(const HarmonicFunction& f, cplx c) {
    return HarmonicFunction(AnalyticMap::scaled(c, f.h()),
                            AnalyticMap::scaled(std::conj(c), f.g()));
}

inline HarmonicFunction add(const HarmonicFunction& a, const HarmonicFunction& b) {
    return HarmonicFunction(AnalyticMap::sum(a.h(), b.h()), AnalyticMap::sum(a.g(), b.g()));
}

// f + c (constant absorbed into the analytic part).
inline HarmonicFunction shift(const HarmonicFunction& f, cplx c) {
    return HarmonicFunction(AnalyticMap::shifted(f.h(), c), f.g());
}

struct LipschitzEstimate {
    double value = 0.0;
    cplx z = 0.0, w = 0.0;         // maximizing pair
    std::size_t pairs_used = 0;
};

namespace detail {

// One difference quotient |f(z)-f(w)| / hyperbolic(z,w); pairs that are
// degenerate or numerically at hyperbolic infinity contribute nothing.
template <typename Consider>
inline void quotient_pair(const HarmonicFunction& f, const DiskPoint& z, const DiskPoint& w,
                          Consider&& consider, std::size_t& used) {
    ++used;
    const double rho = pseudo_hyperbolic(z, w);
    if (rho <= 0.0 || rho >= 1.0 - 1e-15) return;
    const double dist = atanh_stable(rho);
    const double q = std::abs(f.eval(z) - f.eval(w)) / dist;
    consider(q, z.value(), w.value());
}

} // namespace detail

// Supremum of |f(z)-f(w)| / hyperbolic(z,w) over sampled pairs.  Three pair
// families share the budget: short hyperbolic steps over a swept direction
// fan (the regime where the quotient approaches the weighted derivative),
// boundary-shell against interior pairs, and seeded uniform pairs.  A local
// refinement pass migrates the best base point.  Every reported value is a
// genuine quotient, so the estimate is a lower bound converging upward.
inline LipschitzEstimate lipschitz_number(const HarmonicFunction& f, std::size_t pair_budget,
                                          std::uint64_t seed) {
    if (pair_budget == 0) throw parameter_domain_error("lipschitz_number: budget must be >= 1");

    LipschitzEstimate best;
    std::size_t used = 0;
    double best_q = -1.0;
    cplx best_base = 0.0;
    const auto consider = [&](double q, cplx z, cplx w) {
        if (q > best_q) {
            best_q = q;
            best = {q, z, w, 0};
            best_base = z;
        }
    };

    constexpr int directions = 64;
    constexpr double step_scale = 1e-4;  // step = step_scale * (1 - |z|^2)

    const auto directional_sweep = [&](const DiskPoint& z, double step_factor) {
        const double eps = step_factor * z.one_minus_abs2();
        for (int d = 0; d < directions && used < pair_budget; ++d) {
            const cplx w = z.value() + std::polar(eps, pi * d / directions);
            if (std::abs(w) >= 1.0 - boundary_margin) continue;
            detail::quotient_pair(f, z, DiskPoint(w), consider, used);
        }
    };

    // Phase A: direction fans on an area-covering polar grid.
    {
        const std::size_t budget_a = pair_budget / 2;
        const std::size_t n_base = std::max<std::size_t>(1, budget_a / directions);
        const int rings = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(n_base) / 3.2)));
        for (int i = 0; i < rings && used < budget_a; ++i) {
            const double r = 0.985 * (i + 0.5) / rings;
            const int count = std::max<int>(1, static_cast<int>(std::llround(
                                   static_cast<double>(n_base) * (2.0 * (i + 0.5)) /
                                   (static_cast<double>(rings) * rings))));
            for (int k = 0; k < count && used < budget_a; ++k)
                directional_sweep(DiskPoint::from_polar(r, 2.0 * pi * k / count), step_scale);
        }
        if (rings >= 1) directional_sweep(DiskPoint(cplx(0.0)), step_scale);
    }

    // Phase B: pattern-search refinement of the best base point.
    {
        const std::size_t budget_b = pair_budget / 2 + pair_budget / 5;
        double h = 0.05;
        while (used < budget_b && h > 1e-9) {
            bool improved = false;
            for (int d = 0; d < 8 && used < budget_b; ++d) {
                const cplx cand = best_base + std::polar(h, 2.0 * pi * d / 8.0);
                if (std::abs(cand) >= 0.999) continue;
                const double before = best_q;
                directional_sweep(DiskPoint(cand), step_scale);
                if (best_q > before) improved = true;
            }
            if (!improved) h *= 0.5;
        }
    }

    // Phase C: boundary-shell/interior pairs plus seeded uniform pairs.
    {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> coord(-1.0, 1.0);
        std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
        const auto draw = [&]() {
            for (;;) {
                const cplx z(coord(rng), coord(rng));
                if (std::abs(z) < 1.0 - boundary_margin) return DiskPoint(z);
            }
        };
        bool flip = false;
        while (used < pair_budget) {
            if ((flip = !flip)) {
                const DiskPoint z = DiskPoint::from_polar(shell_radius(20), angle(rng));
                detail::quotient_pair(f, z, draw(), consider, used);
            } else {
                const DiskPoint z = draw();
                detail::quotient_pair(f, z, draw(), consider, used);
            }
        }
    }

    best.pairs_used = used;
    return best;
}

} // namespace hbloch
