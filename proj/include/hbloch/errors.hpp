#pragma once

// Error taxonomy shared by all modules.  Everything derives from the two
// standard bases so callers can catch broadly; the CLI maps each type to a
// distinct exit code.

#include <complex>
#include <stdexcept>
#include <string>

namespace hbloch {

// A parameter sits outside its mathematical domain (|a| >= 1 for an
// automorphism, alpha <= 0, x outside [0,1], ...).
class parameter_domain_error : public std::invalid_argument {
public:
    explicit parameter_domain_error(const std::string& what)
        : std::invalid_argument(what) {}
};

// A candidate symbol was sampled at modulus >= 1 + 1e-12 somewhere on the
// validation grid, so it cannot map the disk into itself.
class self_map_violation : public std::runtime_error {
public:
    self_map_violation(const std::string& what, std::complex<double> where, double modulus)
        : std::runtime_error(what), witness(where), witness_modulus(modulus) {}

    std::complex<double> witness;
    double witness_modulus;
};

// |phi(z)| is so close to 1 that 1 - |phi(z)|^2 underflows (< 1e-300) and
// the ratio field is numerically meaningless at z.
class near_boundary_error : public std::runtime_error {
public:
    near_boundary_error(const std::string& what, std::complex<double> where)
        : std::runtime_error(what), witness(where) {}

    std::complex<double> witness;
};

// A sampling scheme implies more points than the configured cap.
class resource_bound_error : public std::length_error {
public:
    explicit resource_bound_error(const std::string& what)
        : std::length_error(what) {}
};

// Config file / spec string could not be parsed.
class config_parse_error : public std::runtime_error {
public:
    explicit config_parse_error(const std::string& what)
        : std::runtime_error(what) {}
};

// Report file could not be written or read back.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what)
        : std::runtime_error(what) {}
};

} // namespace hbloch
