#pragma once

// Closed-form analytic maps on the unit disk.  Every representation knows
// its exact derivative and a stable evaluation of 1 - |phi(z)|^2.
//
// The stable path matters near the boundary: when |phi(z)| is within ~1e-8
// of 1, computing 1 - |phi|^2 by subtraction loses most relative precision,
// while the per-family identities below (e.g. the Moebius identity
// 1 - |phi_a(z)|^2 = (1 - |a|^2)(1 - |z|^2) / |1 - conj(a) z|^2) keep it.
// Each node therefore receives 1 - |z|^2 as an input and propagates it.

#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

#include "hbloch/disk.hpp"
#include "hbloch/errors.hpp"

namespace hbloch {

namespace detail {

// w^n by binary exponentiation; exact enough for moderate n.
inline cplx pow_int(cplx w, long n) {
    cplx r = 1.0;
    while (n > 0) {
        if (n & 1) r *= w;
        w *= w;
        n >>= 1;
    }
    return r;
}

// w^n, switching to polar/log evaluation for n > 64 so the modulus is
// exp(n log|w|) instead of a long product of roundings.
inline cplx pow_large(cplx w, long n) {
    if (n == 0) return 1.0;
    if (n <= 64) return pow_int(w, n);
    const double r = std::abs(w);
    if (r == 0.0) return 0.0;
    return std::polar(std::exp(static_cast<double>(n) * std::log(r)),
                      static_cast<double>(n) * std::arg(w));
}

// 1 - |b_a(z)|^2 for the factor b_a(z) = (a - z)/(1 - conj(a) z).
inline double factor_one_minus_abs2(cplx a, double one_minus_a2, cplx z, double omz2) {
    return one_minus_a2 * omz2 / std::norm(1.0 - std::conj(a) * z);
}

struct analytic_node {
    virtual ~analytic_node() = default;
    virtual cplx value(cplx z) const = 0;
    virtual cplx derivative(cplx z) const = 0;
    // Default: direct subtraction, clamped.  Families with structure override.
    virtual double one_minus_abs2(cplx z, double /*omz2*/) const {
        return std::max(0.0, 1.0 - std::norm(value(z)));
    }
};

using node_ptr = std::shared_ptr<const analytic_node>;

// Finite power series sum c_k z^k, evaluated by Horner's rule.
struct series_node final : analytic_node {
    std::vector<cplx> coeffs;
    std::vector<cplx> dcoeffs;

    explicit series_node(std::vector<cplx> c) : coeffs(std::move(c)) {
        if (coeffs.empty()) coeffs.push_back(0.0);
        for (std::size_t k = 1; k < coeffs.size(); ++k)
            dcoeffs.push_back(static_cast<double>(k) * coeffs[k]);
        if (dcoeffs.empty()) dcoeffs.push_back(0.0);
    }

    static cplx horner(const std::vector<cplx>& c, cplx z) {
        cplx acc = 0.0;
        for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
        return acc;
    }

    cplx value(cplx z) const override { return horner(coeffs, z); }
    cplx derivative(cplx z) const override { return horner(dcoeffs, z); }
};

// z -> c z.  Covers dilations (|c| < 1) and rotations (|c| = 1).
struct scale_node final : analytic_node {
    cplx c;
    double c2;            // |c|^2
    double one_minus_c2;  // 1 - |c|^2, clamped at 0 for unimodular c

    explicit scale_node(cplx factor)
        : c(factor),
          c2(std::norm(factor)),
          one_minus_c2(std::max(0.0, (1.0 - std::abs(factor)) * (1.0 + std::abs(factor)))) {}

    cplx value(cplx z) const override { return c * z; }
    cplx derivative(cplx) const override { return c; }
    double one_minus_abs2(cplx, double omz2) const override {
        // 1 - |c z|^2 = (1 - |c|^2) + |c|^2 (1 - |z|^2)
        return one_minus_c2 + c2 * omz2;
    }
};

// The involutive disk automorphism z -> (a - z)/(1 - conj(a) z).
struct moebius_node final : analytic_node {
    cplx a;
    double one_minus_a2;

    explicit moebius_node(cplx param)
        : a(param), one_minus_a2((1.0 - std::abs(param)) * (1.0 + std::abs(param))) {}

    cplx value(cplx z) const override { return (a - z) / (1.0 - std::conj(a) * z); }
    cplx derivative(cplx z) const override {
        const cplx d = 1.0 - std::conj(a) * z;
        return (std::norm(a) - 1.0) / (d * d);
    }
    double one_minus_abs2(cplx z, double omz2) const override {
        return factor_one_minus_abs2(a, one_minus_a2, z, omz2);
    }
};

// Finite Blaschke product with the given zero list.
struct blaschke_node final : analytic_node {
    std::vector<cplx> zeros;
    std::vector<double> one_minus_z2;

    explicit blaschke_node(std::vector<cplx> zs) : zeros(std::move(zs)) {
        for (cplx a : zeros)
            one_minus_z2.push_back((1.0 - std::abs(a)) * (1.0 + std::abs(a)));
    }

    cplx factor(std::size_t k, cplx z) const {
        return (zeros[k] - z) / (1.0 - std::conj(zeros[k]) * z);
    }

    cplx value(cplx z) const override {
        cplx prod = 1.0;
        for (std::size_t k = 0; k < zeros.size(); ++k) prod *= factor(k, z);
        return prod;
    }

    // Product rule via prefix/suffix partial products.
    cplx derivative(cplx z) const override {
        const std::size_t m = zeros.size();
        std::vector<cplx> pre(m + 1, 1.0), suf(m + 1, 1.0);
        for (std::size_t k = 0; k < m; ++k) pre[k + 1] = pre[k] * factor(k, z);
        for (std::size_t k = m; k-- > 0;) suf[k] = suf[k + 1] * factor(k, z);
        cplx sum = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            const cplx d = 1.0 - std::conj(zeros[k]) * z;
            sum += (std::norm(zeros[k]) - 1.0) / (d * d) * pre[k] * suf[k + 1];
        }
        return sum;
    }

    double one_minus_abs2(cplx z, double omz2) const override {
        // 1 - prod |b_k|^2 accumulated as u <- u_k + (1 - u_k) u,
        // every term non-negative, no cancellation.
        double u = 0.0;
        bool first = true;
        for (std::size_t k = 0; k < zeros.size(); ++k) {
            const double uk = factor_one_minus_abs2(zeros[k], one_minus_z2[k], z, omz2);
            u = first ? uk : uk + (1.0 - uk) * u;
            first = false;
        }
        return u;
    }
};

// Integer power of another map.
struct power_node final : analytic_node {
    node_ptr base;
    long n;

    power_node(node_ptr b, long exponent) : base(std::move(b)), n(exponent) {}

    cplx value(cplx z) const override { return pow_large(base->value(z), n); }
    cplx derivative(cplx z) const override {
        const cplx w = base->value(z);
        return static_cast<double>(n) * pow_large(w, n - 1) * base->derivative(z);
    }
    double one_minus_abs2(cplx z, double omz2) const override {
        const double u = base->one_minus_abs2(z, omz2);
        if (u >= 1.0) return 1.0;
        // 1 - (1 - u)^n without cancellation.
        return -std::expm1(static_cast<double>(n) * std::log1p(-u));
    }
};

// outer(inner(z)) with the chain rule.
struct composition_node final : analytic_node {
    node_ptr outer, inner;

    composition_node(node_ptr o, node_ptr i) : outer(std::move(o)), inner(std::move(i)) {}

    cplx value(cplx z) const override { return outer->value(inner->value(z)); }
    cplx derivative(cplx z) const override {
        return outer->derivative(inner->value(z)) * inner->derivative(z);
    }
    double one_minus_abs2(cplx z, double omz2) const override {
        const cplx w = inner->value(z);
        return outer->one_minus_abs2(w, inner->one_minus_abs2(z, omz2));
    }
};

// sum w_i m_i(z); the workhorse behind scalar multiples, sums and residuals.
struct combination_node final : analytic_node {
    std::vector<cplx> weights;
    std::vector<node_ptr> maps;

    combination_node(std::vector<cplx> w, std::vector<node_ptr> m)
        : weights(std::move(w)), maps(std::move(m)) {}

    cplx value(cplx z) const override {
        cplx acc = 0.0;
        for (std::size_t i = 0; i < maps.size(); ++i) acc += weights[i] * maps[i]->value(z);
        return acc;
    }
    cplx derivative(cplx z) const override {
        cplx acc = 0.0;
        for (std::size_t i = 0; i < maps.size(); ++i) acc += weights[i] * maps[i]->derivative(z);
        return acc;
    }
};

} // namespace detail

// Value-semantic handle over an immutable representation tree.
class AnalyticMap {
public:
    cplx value(cplx z) const { return node_->value(z); }
    cplx operator()(cplx z) const { return node_->value(z); }
    cplx derivative(cplx z) const { return node_->derivative(z); }

    // Stable 1 - |phi(z)|^2 given 1 - |z|^2.
    double one_minus_abs2(cplx z, double omz2) const { return node_->one_minus_abs2(z, omz2); }
    double one_minus_abs2(const DiskPoint& z) const {
        return node_->one_minus_abs2(z.value(), z.one_minus_abs2());
    }

    static AnalyticMap polynomial(std::vector<cplx> coeffs) {
        if (coeffs.empty())
            throw parameter_domain_error("polynomial: need at least one coefficient");
        return AnalyticMap(std::make_shared<detail::series_node>(std::move(coeffs)));
    }

    static AnalyticMap constant(cplx c) { return polynomial({c}); }

    static AnalyticMap identity() {
        return AnalyticMap(std::make_shared<detail::scale_node>(1.0));
    }

    static AnalyticMap dilation(cplx s) {
        if (!(std::abs(s) < 1.0))
            throw parameter_domain_error("dilation: |s| must be < 1");
        return AnalyticMap(std::make_shared<detail::scale_node>(s));
    }

    static AnalyticMap rotation(double theta) {
        return AnalyticMap(std::make_shared<detail::scale_node>(std::polar(1.0, theta)));
    }

    static AnalyticMap automorphism(cplx a) {
        if (!(std::abs(a) < 1.0))
            throw parameter_domain_error("automorphism: |a| must be < 1");
        return AnalyticMap(std::make_shared<detail::moebius_node>(a));
    }

    static AnalyticMap blaschke(std::vector<cplx> zeros) {
        if (zeros.empty())
            throw parameter_domain_error("blaschke: at least one zero required");
        for (cplx a : zeros)
            if (!(std::abs(a) < 1.0))
                throw parameter_domain_error("blaschke: every zero must satisfy |a| < 1");
        return AnalyticMap(std::make_shared<detail::blaschke_node>(std::move(zeros)));
    }

    static AnalyticMap power(const AnalyticMap& base, long n) {
        if (n < 1) throw parameter_domain_error("power: exponent must be >= 1");
        return AnalyticMap(std::make_shared<detail::power_node>(base.node_, n));
    }

    static AnalyticMap compose(const AnalyticMap& outer, const AnalyticMap& inner) {
        return AnalyticMap(std::make_shared<detail::composition_node>(outer.node_, inner.node_));
    }

    static AnalyticMap combine(std::vector<cplx> weights, const std::vector<AnalyticMap>& maps) {
        if (weights.size() != maps.size() || maps.empty())
            throw parameter_domain_error("combine: need matching, non-empty weight/map lists");
        std::vector<detail::node_ptr> nodes;
        nodes.reserve(maps.size());
        for (const AnalyticMap& m : maps) nodes.push_back(m.node_);
        return AnalyticMap(
            std::make_shared<detail::combination_node>(std::move(weights), std::move(nodes)));
    }

    static AnalyticMap scaled(cplx c, const AnalyticMap& m) { return combine({c}, {m}); }

    static AnalyticMap sum(const AnalyticMap& a, const AnalyticMap& b) {
        return combine({1.0, 1.0}, {a, b});
    }

    static AnalyticMap shifted(const AnalyticMap& m, cplx c) {
        return combine({1.0, 1.0}, {m, constant(c)});
    }

private:
    explicit AnalyticMap(detail::node_ptr node) : node_(std::move(node)) {}

    detail::node_ptr node_;
};

namespace detail {

// Numerical self-map certificate.  The modulus of an analytic map over
// |z| <= r attains its maximum on |z| = r, so a dense scan of the outermost
// shell certifies everything inside it; a few inner shells refine the
// modulus-range estimate.  Rejection threshold: any sample >= 1 + 1e-12.
struct self_map_certificate {
    double sup_modulus;  // clamped into (0, 1]
    double min_modulus;
};

inline self_map_certificate certify_self_map(const AnalyticMap& map,
                                             int outer_angles = 4096,
                                             int profile_shells = 9) {
    const int deep = 40;
    double sup = 0.0, inf = std::abs(map.value(0.0));
    for (int s = 0; s <= profile_shells; ++s) {
        const int j = (s == profile_shells) ? deep : 4 * (s + 1);
        const double r = shell_radius(j);
        const int count = (j == deep) ? outer_angles : 512;
        for (int k = 0; k < count; ++k) {
            const cplx z = std::polar(r, 2.0 * pi * k / count);
            const double m = std::abs(map.value(z));
            if (m >= 1.0 + 1e-12)
                throw self_map_violation("self-map validation failed: |phi| >= 1 + 1e-12", z, m);
            sup = std::max(sup, m);
            inf = std::min(inf, m);
        }
    }
    return {std::min(sup, 1.0), inf};
}

} // namespace detail

} // namespace hbloch
