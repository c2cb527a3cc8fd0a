#pragma once

// Weighted-supremum engine and the alpha-Bloch norm machinery.
//
// The seminorm of f = h + conj(g) on weight alpha is
//     sup_z (1 - |z|^2)^alpha (|f_z| + |f_zbar|),
// estimated from below by a dyadic-shell scan followed by golden-section
// refinement in radius and angle plus a small 2-D pattern search.  Every
// reported value is the weighted expression evaluated at the reported
// witness, so estimates never exceed the true supremum.
//
// Closed forms for the monomial family:
//     H(n, a, x)    = x^(n-1) (1 - x^2)^a          on [0, 1]
//     peak radius   r_n = sqrt((n-1)/(n-1+2a))     (0 for n = 1)
//     peak value    (2a/(n-1+2a))^a ((n-1)/(n-1+2a))^((n-1)/2)
//     band minimum  H(n, a, r_{n+1})
//     n^a H(n, a, r_{n+1}) -> (2a/e)^a
//     ||z^n + zbar^n|| = 2n * peak value.

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "hbloch/disk.hpp"
#include "hbloch/errors.hpp"
#include "hbloch/harmonic.hpp"

namespace hbloch {

struct AlphaWeight {
    explicit AlphaWeight(double a) : value(a) {
        if (!(a > 0.0) || !std::isfinite(a))
            throw parameter_domain_error("AlphaWeight: alpha must be positive and finite");
    }
    double value;
};

struct ShellMax {
    double radius;
    double max_value;
};

struct SupremumResult {
    double value;
    DiskPoint witness;
    std::vector<ShellMax> shell_profile;
    SamplingScheme scheme_used;
};

namespace detail {

// Golden-section maximization on [a, b]; endpoints included.  Returns the
// best abscissa/value pair seen (the objective is re-evaluated nowhere).
template <typename F>
std::pair<double, double> golden_max(F&& f, double a, double b, int iters) {
    constexpr double invphi = 0.6180339887498949;
    double best_x = a, best_v = f(a);
    const double vb = f(b);
    if (vb > best_v) { best_x = b; best_v = vb; }
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 >= f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - invphi * (b - a); f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + invphi * (b - a); f2 = f(x2);
        }
        if (f1 > best_v) { best_v = f1; best_x = x1; }
        if (f2 > best_v) { best_v = f2; best_x = x2; }
    }
    return {best_x, best_v};
}

// Largest radius the refinement stage may visit.
inline constexpr double refine_radius_cap = 1.0 - 1.5e-14;

// Maximize a non-negative objective over the disk per the scheme:
// per-shell angular scan, then per round a radial golden section at the
// incumbent angle (bracketed by the neighbour shells), an angular golden
// section at the incumbent radius, and a compass pattern search.
template <typename F>
SupremumResult sup_over_disk(F&& objective, const SamplingScheme& scheme) {
    scheme.validate();
    const int levels = scheme.radial_levels;

    std::vector<ShellMax> profile;
    profile.reserve(levels);
    std::vector<double> best_theta(levels, 0.0);

    std::mt19937_64 rng(scheme.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    scheme.implied_total();  // enforces the resource cap

    int best_shell = 0;
    double best_value = -1.0;
    for (int j = 1; j <= levels; ++j) {
        const double r = shell_radius(j);
        const std::size_t count = scheme.shell_count(j);
        const double step = 2.0 * pi / static_cast<double>(count);
        double shell_best = 0.0, shell_theta = 0.0;
        for (std::size_t k = 0; k < count; ++k) {
            const double offset = scheme.angular_jitter ? unit(rng) : 0.0;
            const double theta = (static_cast<double>(k) + offset) * step;
            const double v = objective(DiskPoint::from_polar(r, theta));
            if (v > shell_best) { shell_best = v; shell_theta = theta; }
        }
        profile.push_back({r, shell_best});
        best_theta[j - 1] = shell_theta;
        if (shell_best > best_value) { best_value = shell_best; best_shell = j; }
    }
    if (best_shell == 0) best_shell = 1;  // objective vanished everywhere

    double r_star = shell_radius(best_shell);
    double theta_star = best_theta[best_shell - 1];
    double value = std::max(best_value, 0.0);

    const auto at = [&](double r, double theta) {
        return objective(DiskPoint::from_polar(std::clamp(r, 0.0, refine_radius_cap), theta));
    };

    const double spacing = 2.0 * pi / static_cast<double>(scheme.shell_count(best_shell));
    for (int round = 0; round < scheme.refinement_rounds; ++round) {
        // Radius, bracketed between the neighbouring shells (down to the
        // origin below the first shell).
        const double lo = best_shell > 1 ? shell_radius(best_shell - 1) : 0.0;
        const double hi = std::min(shell_radius(best_shell + 1), refine_radius_cap);
        auto [r_ref, v_r] = golden_max([&](double r) { return at(r, theta_star); }, lo, hi, 80);
        if (v_r > value) { value = v_r; r_star = r_ref; }

        // Angle around the incumbent.
        auto [t_ref, v_t] = golden_max([&](double t) { return at(r_star, t); },
                                       theta_star - spacing, theta_star + spacing, 60);
        if (v_t > value) { value = v_t; theta_star = t_ref; }

        // Compass search in (r, theta).
        double hr = (hi - lo) / 8.0, ht = spacing / 4.0;
        for (int it = 0; it < 60; ++it) {
            bool moved = false;
            const double candidates[4][2] = {{r_star + hr, theta_star},
                                             {r_star - hr, theta_star},
                                             {r_star, theta_star + ht},
                                             {r_star, theta_star - ht}};
            for (const auto& c : candidates) {
                if (c[0] < 0.0 || c[0] > refine_radius_cap) continue;
                const double v = at(c[0], c[1]);
                if (v > value) {
                    value = v;
                    r_star = std::clamp(c[0], 0.0, refine_radius_cap);
                    theta_star = c[1];
                    moved = true;
                }
            }
            if (!moved) { hr *= 0.5; ht *= 0.5; }
        }
    }

    DiskPoint witness = DiskPoint::from_polar(std::clamp(r_star, 0.0, refine_radius_cap), theta_star);
    value = objective(witness);  // invariant: value == objective(witness)

    // Fold the refined value into the profile entry whose bracket produced
    // it, so the reported value equals the profile maximum.
    ShellMax& home = profile[best_shell - 1];
    home.max_value = std::max(home.max_value, value);

    return {value, witness, std::move(profile), scheme};
}

} // namespace detail

// sup (1 - |z|^2)^alpha (|f_z| + |f_zbar|).
inline SupremumResult seminorm(const HarmonicFunction& f, AlphaWeight alpha,
                               const SamplingScheme& scheme = {}) {
    const double a = alpha.value;
    return detail::sup_over_disk(
        [&f, a](const DiskPoint& z) {
            return std::pow(z.one_minus_abs2(), a) * f.derivative_magnitude_sum(z.value());
        },
        scheme);
}

// |f(0)| + seminorm.
inline double norm(const HarmonicFunction& f, AlphaWeight alpha,
                   const SamplingScheme& scheme = {}) {
    return std::abs(f.eval(cplx(0.0))) + seminorm(f, alpha, scheme).value;
}

struct LittleBlochProfile {
    std::vector<ShellMax> shell_maxima;
    bool little_bloch;
    double threshold;
};

// Per-shell maxima of the weighted derivative on r_j = 1 - 2^-j.  The
// verdict is true when the last five shells sit below the threshold and do
// not increase: the membership test for the vanishing-boundary subspace at
// the sampled resolution.
inline LittleBlochProfile little_bloch_profile(const HarmonicFunction& f, AlphaWeight alpha,
                                               int shells, double threshold = 1e-6) {
    if (shells < 3 || shells > 44)
        throw parameter_domain_error("little_bloch_profile: shells must lie in [3, 44]");
    const double a = alpha.value;
    const auto weighted = [&](double r, double theta) {
        const DiskPoint z = DiskPoint::from_polar(r, theta);
        return std::pow(z.one_minus_abs2(), a) * f.derivative_magnitude_sum(z.value());
    };

    std::vector<ShellMax> maxima;
    maxima.reserve(shells);
    constexpr int angles = 256;
    for (int j = 1; j <= shells; ++j) {
        const double r = shell_radius(j);
        double best = 0.0, best_theta = 0.0;
        for (int k = 0; k < angles; ++k) {
            const double theta = 2.0 * pi * k / angles;
            const double v = weighted(r, theta);
            if (v > best) { best = v; best_theta = theta; }
        }
        const double halfstep = pi / angles;
        auto [t, v] = detail::golden_max([&](double theta) { return weighted(r, theta); },
                                         best_theta - halfstep, best_theta + halfstep, 40);
        (void)t;
        maxima.push_back({r, std::max(best, v)});
    }

    bool verdict = true;
    const int tail = std::min(5, shells);
    for (int i = shells - tail; i < shells; ++i) {
        if (maxima[i].max_value > threshold) verdict = false;
        if (i > shells - tail && maxima[i].max_value > maxima[i - 1].max_value + 1e-15)
            verdict = false;
    }
    return {std::move(maxima), verdict, threshold};
}

// H(n, alpha, x) = x^(n-1) (1 - x^2)^alpha on [0, 1]; log-domain for large n.
inline double H(long n, AlphaWeight alpha, double x) {
    if (n < 1) throw parameter_domain_error("H: n must be >= 1");
    if (!(x >= 0.0) || !(x <= 1.0)) throw parameter_domain_error("H: x must lie in [0, 1]");
    const double a = alpha.value;
    if (x == 0.0) return n == 1 ? 1.0 : 0.0;
    if (x == 1.0) return 0.0;
    if (n <= 64) return std::pow(x, static_cast<double>(n - 1)) * std::pow((1.0 - x) * (1.0 + x), a);
    return std::exp(static_cast<double>(n - 1) * std::log(x) +
                    a * std::log((1.0 - x) * (1.0 + x)));
}

struct HExtremals {
    double peak_radius;  // r_n
    double peak_value;   // H(n, alpha, r_n)
    double band_min;     // H(n, alpha, r_{n+1})
};

inline HExtremals H_extremals(long n, AlphaWeight alpha) {
    if (n < 1) throw parameter_domain_error("H_extremals: n must be >= 1");
    const double a = alpha.value;
    const double m = static_cast<double>(n - 1);

    const double peak_radius = n == 1 ? 0.0 : std::sqrt(m / (m + 2.0 * a));
    // log form: a log(2a/(n-1+2a)) + ((n-1)/2) log((n-1)/(n-1+2a)), where the
    // second log is -log1p(2a/(n-1)).
    const double peak_value =
        n == 1 ? 1.0
               : std::exp(a * (std::log(2.0 * a) - std::log(m + 2.0 * a)) -
                          0.5 * m * std::log1p(2.0 * a / m));
    const double nn = static_cast<double>(n);
    const double band_min =
        std::exp(a * (std::log(2.0 * a) - std::log(nn + 2.0 * a)) -
                 (n == 1 ? 0.0 : 0.5 * m * std::log1p(2.0 * a / nn)));
    return {peak_radius, peak_value, band_min};
}

// lim n^alpha H(n, alpha, r_{n+1}) = (2 alpha / e)^alpha.
inline double H_band_limit(AlphaWeight alpha) {
    return std::exp(alpha.value * (std::log(2.0 * alpha.value) - 1.0));
}

// ||z^n + zbar^n|| = 2n * H(n, alpha, r_n); the value at 0 vanishes.
inline double znbar_norm(long n, AlphaWeight alpha) {
    return 2.0 * static_cast<double>(n) * H_extremals(n, alpha).peak_value;
}

// z^n + conj(z^n) as a harmonic function with O(1) evaluation.
inline HarmonicFunction znbar_harmonic(long n) {
    const AnalyticMap zn = AnalyticMap::power(AnalyticMap::identity(), n);
    return HarmonicFunction(zn, zn);
}

} // namespace hbloch
