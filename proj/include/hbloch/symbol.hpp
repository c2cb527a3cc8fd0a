#pragma once

// Validated analytic self-maps of the disk ("symbols"), annulus bands tied
// to the monomial peak radii, weak-null normalized monomial pairs, and the
// text grammar the CLI and config files use to name symbols.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hbloch/analytic.hpp"
#include "hbloch/bloch.hpp"
#include "hbloch/disk.hpp"
#include "hbloch/errors.hpp"
#include "hbloch/harmonic.hpp"

namespace hbloch {

enum class SymbolFamily { dilation, rotation, automorphism, blaschke, polynomial, composite };

inline const char* to_string(SymbolFamily f) {
    switch (f) {
        case SymbolFamily::dilation: return "dilation";
        case SymbolFamily::rotation: return "rotation";
        case SymbolFamily::automorphism: return "automorphism";
        case SymbolFamily::blaschke: return "blaschke";
        case SymbolFamily::polynomial: return "polynomial";
        default: return "composite";
    }
}

// An analytic map that passed the numerical self-map certificate, together
// with the observed modulus range over the validation grid.
class Symbol {
public:
    static Symbol dilation(cplx s) {
        return validated(AnalyticMap::dilation(s), SymbolFamily::dilation);
    }
    static Symbol rotation(double theta) {
        return validated(AnalyticMap::rotation(theta), SymbolFamily::rotation);
    }
    static Symbol identity() { return rotation(0.0); }
    static Symbol automorphism(cplx a) {
        return validated(AnalyticMap::automorphism(a), SymbolFamily::automorphism);
    }
    static Symbol blaschke(std::vector<cplx> zeros) {
        return validated(AnalyticMap::blaschke(std::move(zeros)), SymbolFamily::blaschke);
    }
    static Symbol polynomial(std::vector<cplx> coeffs) {
        return validated(AnalyticMap::polynomial(std::move(coeffs)), SymbolFamily::polynomial);
    }
    // Arbitrary map; runs the full certificate.
    static Symbol from_map(AnalyticMap map, SymbolFamily family = SymbolFamily::composite) {
        return validated(std::move(map), family);
    }

    const AnalyticMap& map() const { return map_; }
    SymbolFamily family() const { return family_; }
    double sup_modulus_estimate() const { return sup_modulus_; }
    double min_modulus_estimate() const { return min_modulus_; }

private:
    static Symbol validated(AnalyticMap map, SymbolFamily family) {
        const auto cert = detail::certify_self_map(map);
        return Symbol(std::move(map), family, cert.sup_modulus, cert.min_modulus);
    }

    Symbol(AnalyticMap map, SymbolFamily family, double sup_mod, double min_mod)
        : map_(std::move(map)), family_(family), sup_modulus_(sup_mod), min_modulus_(min_mod) {}

    AnalyticMap map_;
    SymbolFamily family_;
    double sup_modulus_;
    double min_modulus_;
};

// phi^n; powers of self-maps are self-maps, revalidated for the modulus range.
inline Symbol symbol_power(const Symbol& phi, long n) {
    return Symbol::from_map(AnalyticMap::power(phi.map(), n));
}

inline Symbol compose_symbols(const Symbol& outer, const Symbol& inner) {
    return Symbol::from_map(AnalyticMap::compose(outer.map(), inner.map()));
}

// f o phi without re-validation: the Symbol carries the certificate.
inline HarmonicFunction compose(const HarmonicFunction& f, const Symbol& phi) {
    return detail::compose_unchecked(f, phi.map());
}

// phi^n + conj(phi^n), the push-forward of the monomial pair.
inline HarmonicFunction power_pair(const Symbol& phi, long n) {
    const AnalyticMap pn = AnalyticMap::power(phi.map(), n);
    return HarmonicFunction(pn, pn);
}

// The annulus r_n <= |w| <= r_{n+1} between consecutive peak radii.
struct AnnulusBand {
    long n;
    double inner;
    double outer;
};

inline AnnulusBand annulus_band(long n, AlphaWeight alpha) {
    if (n < 1) throw parameter_domain_error("annulus_band: n must be >= 1");
    const double inner = H_extremals(n, alpha).peak_radius;
    const double outer = H_extremals(n + 1, alpha).peak_radius;
    return {n, inner, outer};
}

// Samples whose image under phi lands in the band (inclusive bounds).
inline std::vector<DiskPoint> band_mask(const Symbol& phi, const AnnulusBand& band,
                                        const std::vector<DiskPoint>& samples) {
    std::vector<DiskPoint> out;
    for (const DiskPoint& z : samples) {
        const double m = std::abs(phi.map().value(z.value()));
        if (m >= band.inner && m <= band.outer) out.push_back(z);
    }
    return out;
}

// Smallest band index the image of phi can reach, from the validated
// modulus range: the first n whose band top r_{n+1} reaches min |phi|.
inline long smallest_band_index(const Symbol& phi, AlphaWeight alpha) {
    const double lo = phi.min_modulus_estimate();
    for (long n = 1;; ++n) {
        if (H_extremals(n + 1, alpha).peak_radius >= lo) return n;
        if (n > 1'000'000)
            throw parameter_domain_error("smallest_band_index: modulus range too close to 1");
    }
}

// f_n = (z^n + zbar^n) / ||z^n + zbar^n||: unit vectors converging weakly
// to zero as n grows.
inline HarmonicFunction weak_null_function(long n, AlphaWeight alpha) {
    const double nrm = znbar_norm(n, alpha);
    const AnalyticMap part =
        AnalyticMap::scaled(1.0 / nrm, AnalyticMap::power(AnalyticMap::identity(), n));
    return HarmonicFunction(part, part);
}

// ---------------------------------------------------------------------------
// Symbol spec grammar:
//   identity
//   dilation s=0.9
//   rotation theta=0.785
//   automorphism a=0.5+0i
//   blaschke zeros=[0.3, -0.5i]
//   poly coeffs=[0, 0.5, 0.25]
// Complex literals: "0.5", "-0.5i", "0.3+0.2i", "i", "-i".
// ---------------------------------------------------------------------------

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline cplx parse_complex(const std::string& text) {
    const std::string s = trim(text);
    if (s.empty()) throw config_parse_error("empty complex literal");

    // Split an optional trailing imaginary term off "a+bi" / "a-bi" forms by
    // scanning for a sign that is not an exponent sign and not leading.
    const bool has_i = s.back() == 'i' || s.back() == 'I';
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }

    const auto to_double = [](const std::string& t) {
        const std::string u = trim(t);
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(u, &pos);
        } catch (const std::exception&) {
            throw config_parse_error("bad numeric literal '" + u + "'");
        }
        if (pos != u.size()) throw config_parse_error("bad numeric literal '" + u + "'");
        return v;
    };

    const auto imag_part = [&](const std::string& t) {
        std::string u = trim(t);
        u.pop_back();  // the 'i'
        if (u.empty() || u == "+") return 1.0;
        if (u == "-") return -1.0;
        return to_double(u);
    };

    if (has_i && split == std::string::npos) return cplx(0.0, imag_part(s));
    if (has_i) return cplx(to_double(s.substr(0, split)), imag_part(s.substr(split)));
    if (split != std::string::npos && s.find('i', split) != std::string::npos)
        throw config_parse_error("bad complex literal '" + s + "'");
    return cplx(to_double(s), 0.0);
}

inline std::vector<cplx> parse_complex_list(const std::string& text) {
    const std::string s = trim(text);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw config_parse_error("expected a [..] list, got '" + s + "'");
    std::vector<cplx> out;
    std::string body = s.substr(1, s.size() - 2);
    if (trim(body).empty()) return out;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_complex(item));
    return out;
}

// "family key=value ..." -> (family, {key -> raw value}).  List values may
// contain spaces, so values run to the next " key=" boundary.
inline std::pair<std::string, std::vector<std::pair<std::string, std::string>>>
split_spec(const std::string& spec) {
    const std::string s = trim(spec);
    if (s.empty()) throw config_parse_error("empty symbol spec");
    std::size_t sp = s.find_first_of(" \t");
    const std::string family = s.substr(0, sp);
    std::vector<std::pair<std::string, std::string>> kvs;
    std::string rest = sp == std::string::npos ? "" : trim(s.substr(sp));
    while (!rest.empty()) {
        const std::size_t eq = rest.find('=');
        if (eq == std::string::npos)
            throw config_parse_error("expected key=value in symbol spec near '" + rest + "'");
        const std::string key = trim(rest.substr(0, eq));
        std::string tail = rest.substr(eq + 1);
        // Value ends where the next " key=" begins (outside brackets).
        std::size_t end = tail.size();
        int depth = 0;
        for (std::size_t k = 0; k < tail.size(); ++k) {
            if (tail[k] == '[') ++depth;
            if (tail[k] == ']') --depth;
            if (depth == 0 && (tail[k] == ' ' || tail[k] == '\t')) {
                const std::size_t next_eq = tail.find('=', k);
                const std::size_t next_sp = tail.find_first_not_of(" \t", k);
                if (next_eq != std::string::npos && next_sp != std::string::npos &&
                    tail.find_first_of(" \t", next_sp) > next_eq) {
                    end = k;
                    break;
                }
            }
        }
        kvs.emplace_back(key, trim(tail.substr(0, end)));
        rest = end == tail.size() ? "" : trim(tail.substr(end));
    }
    return {family, kvs};
}

// "family key=value ..." -> a raw map (no self-map validation) plus the
// family tag.  Shared by make_symbol and by harmonic-part parsing, where the
// map need not send the disk into itself.
inline std::pair<AnalyticMap, SymbolFamily> parse_map_spec(const std::string& spec) {
    auto [family, kvs] = split_spec(spec);

    const auto need = [&, &kvs = kvs, &spec = spec](const char* key) -> const std::string& {
        for (const auto& kv : kvs)
            if (kv.first == key) return kv.second;
        throw config_parse_error("symbol spec '" + spec + "' is missing key '" + key + "'");
    };
    const auto expect_keys = [&, &kvs = kvs,
                              &spec = spec](std::initializer_list<const char*> keys) {
        for (const auto& kv : kvs) {
            bool known = false;
            for (const char* key : keys) known = known || (kv.first == key);
            if (!known)
                throw config_parse_error("symbol spec '" + spec + "': unknown key '" + kv.first +
                                         "'");
        }
    };

    if (family == "identity") {
        expect_keys({});
        return {AnalyticMap::identity(), SymbolFamily::rotation};
    }
    if (family == "dilation") {
        expect_keys({"s"});
        return {AnalyticMap::dilation(parse_complex(need("s"))), SymbolFamily::dilation};
    }
    if (family == "rotation") {
        expect_keys({"theta"});
        const cplx t = parse_complex(need("theta"));
        if (t.imag() != 0.0) throw config_parse_error("rotation: theta must be real");
        return {AnalyticMap::rotation(t.real()), SymbolFamily::rotation};
    }
    if (family == "automorphism") {
        expect_keys({"a"});
        return {AnalyticMap::automorphism(parse_complex(need("a"))), SymbolFamily::automorphism};
    }
    if (family == "blaschke") {
        expect_keys({"zeros"});
        return {AnalyticMap::blaschke(parse_complex_list(need("zeros"))), SymbolFamily::blaschke};
    }
    if (family == "poly") {
        expect_keys({"coeffs"});
        return {AnalyticMap::polynomial(parse_complex_list(need("coeffs"))),
                SymbolFamily::polynomial};
    }
    throw config_parse_error("unknown symbol family '" + family + "'");
}

} // namespace detail

// Build a Symbol from its grammar string.  Unknown families or keys are
// config errors; parameter/validation failures propagate their own types.
inline Symbol make_symbol(const std::string& spec) {
    auto [map, family] = detail::parse_map_spec(spec);
    return Symbol::from_map(std::move(map), family);
}

} // namespace hbloch
