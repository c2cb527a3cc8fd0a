#pragma once

// Three estimators for the essential norm of a composition operator on the
// alpha-Bloch scale, all driven by the ratio field
//     R(z) = (1 - |z|^2)^alpha |phi'(z)| / (1 - |phi(z)|^2)^alpha :
//   E1  threshold form: sup of R over {|phi| > s} as s -> 1,
//   E2  boundary form: limsup of shell maxima of R,
//   E3  power form: (1/2)(e/2alpha)^alpha limsup n^(alpha-1) ||phi^n + conj(phi^n)||.
// For the identity symbol all three equal 1; for a strict dilation all
// three vanish; at alpha = 1 the Schwarz-Pick lemma caps R at 1.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hbloch/bloch.hpp"
#include "hbloch/disk.hpp"
#include "hbloch/errors.hpp"
#include "hbloch/symbol.hpp"

namespace hbloch {

class RatioField {
public:
    RatioField(Symbol phi, AlphaWeight alpha) : phi_(std::move(phi)), alpha_(alpha) {}

    const Symbol& symbol() const { return phi_; }
    AlphaWeight alpha() const { return alpha_; }

    // R(z).  The numerator/denominator quotient is formed before the alpha
    // power so the family identities in one_minus_abs2 cancel exactly; for
    // extreme quotients the power moves to the log domain.
    double at(const DiskPoint& z) const {
        const double num = z.one_minus_abs2();
        const double den = phi_.map().one_minus_abs2(z.value(), num);
        if (den < 1e-300)
            throw near_boundary_error("ratio field: 1 - |phi(z)|^2 underflows", z.value());
        const double q = num / den;
        const double deriv = std::abs(phi_.map().derivative(z.value()));
        const double a = alpha_.value;
        if (q > 1e100 || q < 1e-100)
            return std::exp(a * std::log(q) + std::log(deriv));
        return std::pow(q, a) * deriv;
    }

private:
    Symbol phi_;
    AlphaWeight alpha_;
};

struct BoundedSup {
    SupremumResult sup;
    bool divergence;  // shell maxima still growing at the deepest shells
};

// sup of the ratio field over the scheme's samples (with refinement).
inline BoundedSup bounded_sup(const RatioField& field, const SamplingScheme& scheme = {}) {
    SupremumResult r = detail::sup_over_disk(
        [&field](const DiskPoint& z) { return field.at(z); }, scheme);
    bool divergence = false;
    const auto& p = r.shell_profile;
    if (p.size() >= 5) {
        divergence = true;
        for (std::size_t i = p.size() - 4; i < p.size(); ++i)
            if (p[i].max_value <= 1.1 * p[i - 1].max_value) divergence = false;
    }
    return {std::move(r), divergence};
}

struct LevelValue {
    double s;
    double sup_value;
    std::size_t count;  // samples with |phi(z)| > s
};

struct ThresholdEstimate {
    std::vector<LevelValue> levels;
    double E1;
    bool plateau;
};

// Default threshold ladder s_j = 1 - 2^-j, j = 1..20.
inline std::vector<double> default_s_levels() {
    std::vector<double> s;
    for (int j = 1; j <= 20; ++j) s.push_back(shell_radius(j));
    return s;
}

// E1: evaluate the ratio once per sample, then take per-level maxima over
// the filtered superlevel sets.  Shared samples make monotonicity in s
// exact; the sup over an empty set is 0.  E1 is the final-level value.
inline ThresholdEstimate essnorm_threshold(const RatioField& field,
                                           const std::vector<double>& s_levels,
                                           const SamplingScheme& scheme = {}) {
    if (s_levels.empty())
        throw parameter_domain_error("essnorm_threshold: need at least one threshold");
    for (std::size_t i = 0; i < s_levels.size(); ++i) {
        if (!(s_levels[i] > 0.0) || !(s_levels[i] < 1.0))
            throw parameter_domain_error("essnorm_threshold: thresholds must lie in (0, 1)");
        if (i > 0 && s_levels[i] <= s_levels[i - 1])
            throw parameter_domain_error("essnorm_threshold: thresholds must increase");
    }

    const std::vector<DiskPoint> samples = disk_samples(scheme);
    std::vector<std::pair<double, double>> mod_ratio;  // (|phi(z)|, R(z))
    mod_ratio.reserve(samples.size());
    for (const DiskPoint& z : samples)
        mod_ratio.emplace_back(std::abs(field.symbol().map().value(z.value())), field.at(z));

    std::vector<LevelValue> levels;
    levels.reserve(s_levels.size());
    for (double s : s_levels) {
        double sup = 0.0;
        std::size_t count = 0;
        for (const auto& [m, r] : mod_ratio) {
            if (m > s) {
                ++count;
                sup = std::max(sup, r);
            }
        }
        levels.push_back({s, sup, count});
    }

    const double E1 = levels.back().sup_value;
    bool plateau = true;
    if (levels.size() >= 2) {
        const double prev = levels[levels.size() - 2].sup_value;
        plateau = std::abs(E1 - prev) <= std::max(1e-3, 1e-3 * std::abs(E1));
    }
    return {std::move(levels), E1, plateau};
}

struct BoundaryEstimate {
    std::vector<ShellMax> shells;
    double E2;
};

// E2: per-shell maxima of the ratio on r_j = 1 - 2^-j (angular scan plus an
// angular golden section), reported as the max of the last three shells.
inline BoundaryEstimate essnorm_boundary(const RatioField& field, int shells) {
    if (shells < 5 || shells > 44)
        throw parameter_domain_error("essnorm_boundary: shells must lie in [5, 44]");
    const auto at = [&](double r, double theta) {
        return field.at(DiskPoint::from_polar(r, theta));
    };
    constexpr int angles = 512;
    std::vector<ShellMax> profile;
    profile.reserve(shells);
    for (int j = 1; j <= shells; ++j) {
        const double r = shell_radius(j);
        double best = 0.0, best_theta = 0.0;
        for (int k = 0; k < angles; ++k) {
            const double theta = 2.0 * pi * k / angles;
            const double v = at(r, theta);
            if (v > best) { best = v; best_theta = theta; }
        }
        const double halfstep = pi / angles;
        auto [t, v] = detail::golden_max([&](double theta) { return at(r, theta); },
                                         best_theta - halfstep, best_theta + halfstep, 40);
        (void)t;
        profile.push_back({r, std::max(best, v)});
    }
    double E2 = 0.0;
    for (int i = shells - 3; i < shells; ++i) E2 = std::max(E2, profile[i].max_value);
    return {std::move(profile), E2};
}

struct LadderPoint {
    long n;
    double a_n;
};

// Geometric ladder 16, 23, 32, 45, 64, ... up to N (N appended if missed).
inline std::vector<long> geometric_ladder(long N, long lo = 16) {
    if (N < lo) throw parameter_domain_error("geometric_ladder: N must be >= 16");
    std::vector<long> ns;
    for (long n = lo; n <= N;) {
        ns.push_back(n);
        const long next = static_cast<long>(std::llround(n * 1.4142135623730951));
        n = std::max(next, n + 1);
    }
    if (ns.back() != N) ns.push_back(N);
    return ns;
}

struct PowerEstimate {
    std::vector<LadderPoint> ladder;  // (n, n^(alpha-1) ||phi^n + conj(phi^n)||)
    double E3;
    bool slow_convergence;
};

// E3 = (1/2)(e/2alpha)^alpha * max of the ladder values over [N/2, N].
inline PowerEstimate essnorm_power(const Symbol& phi, AlphaWeight alpha, long N = 2048,
                                   const SamplingScheme& scheme = {}) {
    if (N < 16) throw parameter_domain_error("essnorm_power: N must be >= 16");
    const double a = alpha.value;
    std::vector<LadderPoint> ladder;
    for (long n : geometric_ladder(N)) {
        const double nrm = norm(power_pair(phi, n), alpha, scheme);
        ladder.push_back({n, std::pow(static_cast<double>(n), a - 1.0) * nrm});
    }

    double tail = 0.0, before = 0.0;
    for (const auto& [n, v] : ladder) {
        if (2 * n >= N) tail = std::max(tail, v);
        else if (4 * n >= N) before = std::max(before, v);
    }
    const double constant = 0.5 * std::exp(a * (1.0 - std::log(2.0 * a)));
    const bool slow = tail > 1e-9 && std::abs(tail - before) > 0.05 * std::max(tail, before);
    return {std::move(ladder), constant * tail, slow};
}

struct BoundednessVerdict {
    std::vector<LadderPoint> ladder;
    double sup_a_n;
    bool bounded;  // the running sup has plateaued over the tail window
};

// Boundedness via the same ladder: C_phi is declared bounded when the tail
// window [N/2, N] no longer raises the running sup by more than 5%.
inline BoundednessVerdict boundedness_power_test(const Symbol& phi, AlphaWeight alpha,
                                                 long N = 2048,
                                                 const SamplingScheme& scheme = {}) {
    const PowerEstimate pe = essnorm_power(phi, alpha, N, scheme);
    double sup_all = 0.0, sup_early = 0.0;
    for (const auto& [n, v] : pe.ladder) {
        sup_all = std::max(sup_all, v);
        if (2 * n < N) sup_early = std::max(sup_early, v);
    }
    const bool bounded = sup_all <= 1.05 * sup_early + 1e-12;
    return {pe.ladder, sup_all, bounded};
}

struct MarginEstimate {
    double norm_margin;        // min ||f o phi|| / ||f||
    double recentered_margin;  // min |||f o phi||| / ||f - f(phi(0))||
    std::size_t argmin_index;
};

// Smallest norm ratio over a dictionary: a positive margin certifies the
// operator is bounded below there.  The recentered variant subtracts
// f(phi(0)) so the image seminorm carries the whole norm.
inline MarginEstimate bounded_below_margin(const Symbol& phi, AlphaWeight alpha,
                                           const std::vector<HarmonicFunction>& dictionary,
                                           const SamplingScheme& scheme = {}) {
    if (dictionary.empty())
        throw parameter_domain_error("bounded_below_margin: dictionary must be non-empty");
    const cplx phi0 = phi.map().value(0.0);
    double best_norm = 0.0, best_rec = 0.0;
    std::size_t argmin = 0;
    for (std::size_t i = 0; i < dictionary.size(); ++i) {
        const HarmonicFunction& f = dictionary[i];
        const HarmonicFunction fphi = compose(f, phi);
        const double nf = norm(f, alpha, scheme);
        const double nfphi = norm(fphi, alpha, scheme);
        if (!(nf > 0.0))
            throw parameter_domain_error("bounded_below_margin: dictionary entry has zero norm");
        const double r_norm = nfphi / nf;

        // g = f - f(phi(0)): g(phi(0)) = 0, so ||g o phi|| is pure seminorm;
        // seminorms ignore the constant, hence the numerator below.
        const double semi_image = seminorm(fphi, alpha, scheme).value;
        const double ng = std::abs(f.eval(cplx(0.0)) - f.eval(phi0)) +
                          seminorm(f, alpha, scheme).value;
        const double r_rec = semi_image / ng;

        if (i == 0 || r_norm < best_norm) {
            best_norm = r_norm;
            argmin = i;
        }
        if (i == 0 || r_rec < best_rec) best_rec = r_rec;
    }
    return {best_norm, best_rec, argmin};
}

struct EssNormReport {
    double E1, E2, E3;
    ThresholdEstimate threshold;
    BoundaryEstimate boundary;
    PowerEstimate power;
    double agreement;  // max pairwise gap
    double bounded_sup_value;
    std::vector<std::string> flags;
};

// All three estimators plus the bounded sup, with coarse agreement and
// divergence diagnostics folded into flags.
inline EssNormReport essnorm_report(const Symbol& phi, AlphaWeight alpha, long N = 2048,
                                    const SamplingScheme& scheme = {}) {
    const RatioField field(phi, alpha);
    EssNormReport rep{0.0,
                      0.0,
                      0.0,
                      essnorm_threshold(field, default_s_levels(), scheme),
                      essnorm_boundary(field, std::min(scheme.radial_levels, 40)),
                      essnorm_power(phi, alpha, N, scheme),
                      0.0,
                      0.0,
                      {}};
    rep.E1 = rep.threshold.E1;
    rep.E2 = rep.boundary.E2;
    rep.E3 = rep.power.E3;
    rep.agreement = std::max({std::abs(rep.E1 - rep.E2), std::abs(rep.E1 - rep.E3),
                              std::abs(rep.E2 - rep.E3)});
    const BoundedSup bs = bounded_sup(field, scheme);
    rep.bounded_sup_value = bs.sup.value;
    if (bs.divergence) rep.flags.push_back("divergent_shell_maxima");
    if (!rep.threshold.plateau) rep.flags.push_back("no_threshold_plateau");
    if (rep.power.slow_convergence) rep.flags.push_back("slow_power_convergence");
    return rep;
}

} // namespace hbloch
