#pragma once

// Unit-disk geometry: validated disk points, the pseudo-hyperbolic and
// hyperbolic metrics, and deterministic polar sampling on dyadic shells
// r_j = 1 - 2^-j.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "hbloch/errors.hpp"

namespace hbloch {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// Points within this distance of the boundary are rejected: downstream code
// divides by 1 - |z|^2 and needs it strictly positive in double precision.
inline constexpr double boundary_margin = 1e-15;

// Radius of the j-th dyadic shell, 1 - 2^-j, exact in double.
inline double shell_radius(int j) { return 1.0 - std::ldexp(1.0, -j); }

// A point of the open unit disk.  Carries 1 - |z|^2 alongside the value:
// for polar construction on deep shells that quantity is computed from the
// exact 1 - r, which keeps full relative precision where naive
// recomputation from the coordinates would lose ~|z| digits.
class DiskPoint {
public:
    explicit DiskPoint(cplx value)
        : value_(value), one_minus_abs2_(1.0 - std::norm(value)) {
        if (!(std::abs(value) < 1.0 - boundary_margin))
            throw parameter_domain_error("DiskPoint: |z| must be < 1 - 1e-15");
    }

    static DiskPoint from_polar(double r, double theta) {
        if (!(r >= 0.0) || !(r < 1.0 - boundary_margin))
            throw parameter_domain_error("DiskPoint::from_polar: r must lie in [0, 1 - 1e-15)");
        // (1 - r)(1 + r): the subtraction 1 - r is exact for r >= 0.5.
        return DiskPoint(std::polar(r, theta), (1.0 - r) * (1.0 + r));
    }

    cplx value() const { return value_; }
    double one_minus_abs2() const { return one_minus_abs2_; }
    double modulus() const { return std::abs(value_); }

private:
    DiskPoint(cplx value, double omz2) : value_(value), one_minus_abs2_(omz2) {}

    cplx value_;
    double one_minus_abs2_;
};

// rho(z, w) = |z - w| / |1 - conj(z) w|, the Moebius-invariant metric.
inline double pseudo_hyperbolic(const DiskPoint& z, const DiskPoint& w) {
    return std::abs(z.value() - w.value()) / std::abs(1.0 - std::conj(z.value()) * w.value());
}

namespace detail {

// atanh via 0.5 [log1p(x) - log1p(-x)], accurate for small and large x alike.
inline double atanh_stable(double x) {
    if (!(x >= 0.0) || x >= 1.0 - 1e-15)
        throw parameter_domain_error("atanh argument must lie in [0, 1 - 1e-15)");
    return 0.5 * (std::log1p(x) - std::log1p(-x));
}

} // namespace detail

// Hyperbolic distance arctanh(rho).  Pairs whose pseudo-hyperbolic distance
// rounds to within 1e-15 of 1 are rejected rather than silently clamped.
inline double hyperbolic(const DiskPoint& z, const DiskPoint& w) {
    return detail::atanh_stable(pseudo_hyperbolic(z, w));
}

// Deterministic polar sampling plan.  Shell j holds
// round(angular_base * angular_growth^(j-1)) equispaced angles; optional
// seeded jitter rotates each point within its angular slot.
struct SamplingScheme {
    int radial_levels = 40;        // shells r_j = 1 - 2^-j, j = 1..radial_levels
    int angular_base = 64;         // points on the innermost shell
    double angular_growth = 1.15;  // per-shell count multiplier
    int refinement_rounds = 2;     // local search passes after the scan
    std::uint64_t seed = 0;        // drives the jitter when enabled
    bool angular_jitter = false;
    std::size_t max_points = 20'000'000;

    void validate() const {
        if (radial_levels < 1 || radial_levels > 44)
            throw parameter_domain_error("SamplingScheme: radial_levels must lie in [1, 44]");
        if (angular_base < 1)
            throw parameter_domain_error("SamplingScheme: angular_base must be >= 1");
        if (!(angular_growth > 0.0))
            throw parameter_domain_error("SamplingScheme: angular_growth must be > 0");
        if (refinement_rounds < 0)
            throw parameter_domain_error("SamplingScheme: refinement_rounds must be >= 0");
    }

    std::size_t shell_count(int j) const {
        const double c = angular_base * std::pow(angular_growth, j - 1);
        if (c > 1e18) throw resource_bound_error("SamplingScheme: shell count overflows");
        return static_cast<std::size_t>(std::max<long long>(1, std::llround(c)));
    }

    std::size_t implied_total() const {
        double total = 0.0;
        for (int j = 1; j <= radial_levels; ++j) total += static_cast<double>(shell_count(j));
        if (total > static_cast<double>(max_points))
            throw resource_bound_error("SamplingScheme: implied sample count exceeds max_points");
        return static_cast<std::size_t>(total);
    }

    // Lighter preset for inner loops that call the norm engine many times.
    static SamplingScheme coarse() {
        SamplingScheme s;
        s.angular_base = 16;
        s.angular_growth = 1.10;
        return s;
    }
};

// Materialize the sample set, shell by shell, inner to outer.  The sequence
// is a pure function of the scheme, so identical schemes give identical
// points; doubling angular_base with angular_growth = 2 nests the angle set.
inline std::vector<DiskPoint> disk_samples(const SamplingScheme& scheme) {
    scheme.validate();
    std::vector<DiskPoint> points;
    points.reserve(scheme.implied_total());
    std::mt19937_64 rng(scheme.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int j = 1; j <= scheme.radial_levels; ++j) {
        const double r = shell_radius(j);
        const std::size_t count = scheme.shell_count(j);
        const double step = 2.0 * pi / static_cast<double>(count);
        for (std::size_t k = 0; k < count; ++k) {
            const double offset = scheme.angular_jitter ? unit(rng) : 0.0;
            points.push_back(DiskPoint::from_polar(r, (static_cast<double>(k) + offset) * step));
        }
    }
    return points;
}

} // namespace hbloch
