#pragma once

// Batch experiment driver behind the CLI: plain-text config parsing,
// estimator runs over symbol lists, deterministic CSV/JSON rendering, and
// the closed-form verification and estimator cross-check tables.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <istream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <hbloch/compact.hpp>

namespace hbloch {

inline constexpr const char* version_string = "1.0.0";

// 17 significant digits round-trip an IEEE double exactly and render the
// same bytes on every run.
inline std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
}

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

inline std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char esc[8];
                    std::snprintf(esc, sizeof(esc), "\\u%04x", static_cast<unsigned>(c));
                    out += esc;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
    return out;
}

inline std::string join_flags(std::initializer_list<std::string> fs) {
    std::string out;
    for (const auto& f : fs) {
        if (f.empty()) continue;
        if (!out.empty()) out += ';';
        out += f;
    }
    return out;
}

inline double parse_real_strict(const std::string& s, const char* what) {
    const std::string t = trim(s);
    if (t.empty()) throw config_parse_error(std::string(what) + ": empty number");
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size())
        throw config_parse_error(std::string(what) + ": cannot parse '" + t + "' as a number");
    return v;
}

inline long long parse_integer_strict(const std::string& s, const char* what) {
    const std::string t = trim(s);
    if (t.empty()) throw config_parse_error(std::string(what) + ": empty integer");
    char* end = nullptr;
    const long long v = std::strtoll(t.c_str(), &end, 10);
    if (end != t.c_str() + t.size())
        throw config_parse_error(std::string(what) + ": cannot parse '" + t + "' as an integer");
    return v;
}

inline bool parse_bool_strict(const std::string& s, const char* what) {
    const std::string t = trim(s);
    if (t == "true" || t == "1") return true;
    if (t == "false" || t == "0") return false;
    throw config_parse_error(std::string(what) + ": expected true/false, got '" + t + "'");
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Report rows

// One trace point or summary per line.  Trace rows use index = s-level (E1),
// shell radius (E2, bounded_sup) or ladder n (E3, power ladders); summary
// rows carry index = -1 and a flags string starting with "summary".
struct ReportRow {
    std::string symbol_id;
    double alpha;
    std::string estimator;
    double index;
    double value;
    std::string flags;
};

inline bool report_row_less(const ReportRow& a, const ReportRow& b) {
    return std::tie(a.symbol_id, a.alpha, a.estimator, a.index, a.flags) <
           std::tie(b.symbol_id, b.alpha, b.estimator, b.index, b.flags);
}

inline const std::vector<std::string>& known_estimators() {
    static const std::vector<std::string> names{
        "E1", "E2", "E3", "bounded_sup", "power_boundedness", "margin", "sandwich"};
    return names;
}

// ---------------------------------------------------------------------------
// Experiment configuration

struct ExperimentConfig {
    std::vector<std::string> symbols;      // symbol grammar specs
    std::vector<double> alphas;
    std::vector<std::string> estimators{"E1", "E2", "E3"};
    SamplingScheme scheme{};
    long ladder_N = 2048;
    std::string output_path;               // empty: caller prints to stdout
    std::string format = "csv";
};

inline void validate_config(const ExperimentConfig& cfg) {
    if (cfg.symbols.empty()) throw config_parse_error("config: no symbols given");
    if (cfg.alphas.empty()) throw config_parse_error("config: no alpha values given");
    if (cfg.estimators.empty()) throw config_parse_error("config: no estimators selected");
    for (const auto& e : cfg.estimators) {
        const auto& known = known_estimators();
        if (std::find(known.begin(), known.end(), e) == known.end())
            throw config_parse_error("config: unknown estimator '" + e + "'");
    }
    for (double a : cfg.alphas)
        if (!(a > 0.0) || !std::isfinite(a))
            throw config_parse_error("config: alpha values must be positive reals");
    if (cfg.ladder_N < 16) throw config_parse_error("config: ladder_N must be >= 16");
    if (cfg.format != "csv" && cfg.format != "json")
        throw config_parse_error("config: format must be csv or json");
    cfg.scheme.validate();
}

// Plain-text key/value config.  '#' starts a comment; 'symbol' may repeat.
//
//   symbol = automorphism a=0.5
//   symbol = dilation s=0.9
//   alphas = 0.5, 1, 2
//   estimators = E1, E2, E3
//   ladder_N = 2048
//   radial_levels = 40
//   angular_base = 64
//   angular_growth = 1.15
//   refinement_rounds = 2
//   seed = 0
//   angular_jitter = false
//   output = report.csv
//   format = csv
inline ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string stripped = detail::trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        const std::string where = "config line " + std::to_string(lineno);
        if (eq == std::string::npos)
            throw config_parse_error(where + ": expected key = value");
        const std::string key = detail::trim(stripped.substr(0, eq));
        const std::string value = detail::trim(stripped.substr(eq + 1));
        if (key.empty()) throw config_parse_error(where + ": empty key");

        if (key == "symbol") {
            cfg.symbols.push_back(value);
        } else if (key == "alphas") {
            cfg.alphas.clear();
            for (const auto& tok : detail::split_list(value))
                cfg.alphas.push_back(detail::parse_real_strict(tok, where.c_str()));
        } else if (key == "estimators") {
            cfg.estimators = detail::split_list(value);
        } else if (key == "ladder_N") {
            cfg.ladder_N = static_cast<long>(detail::parse_integer_strict(value, where.c_str()));
        } else if (key == "radial_levels") {
            cfg.scheme.radial_levels =
                static_cast<int>(detail::parse_integer_strict(value, where.c_str()));
        } else if (key == "angular_base") {
            const long long v = detail::parse_integer_strict(value, where.c_str());
            if (v < 1) throw config_parse_error(where + ": angular_base must be >= 1");
            cfg.scheme.angular_base = static_cast<int>(v);
        } else if (key == "angular_growth") {
            cfg.scheme.angular_growth = detail::parse_real_strict(value, where.c_str());
        } else if (key == "refinement_rounds") {
            cfg.scheme.refinement_rounds =
                static_cast<int>(detail::parse_integer_strict(value, where.c_str()));
        } else if (key == "seed") {
            cfg.scheme.seed =
                static_cast<std::uint64_t>(detail::parse_integer_strict(value, where.c_str()));
        } else if (key == "angular_jitter") {
            cfg.scheme.angular_jitter = detail::parse_bool_strict(value, where.c_str());
        } else if (key == "output") {
            cfg.output_path = value;
        } else if (key == "format") {
            cfg.format = value;
        } else {
            throw config_parse_error(where + ": unknown key '" + key + "'");
        }
    }
    validate_config(cfg);
    return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file '" + path + "'");
    return parse_config(in);
}

// ---------------------------------------------------------------------------
// Harmonic function specs for the norm front-end
//
//   znbar n=5
//   h=poly coeffs=[0,1]; g=poly coeffs=[0,0,0.5]
// Either part may be omitted (it defaults to 0); parts are maps in the
// symbol grammar but are not required to be self-maps.
inline HarmonicFunction parse_harmonic_spec(const std::string& spec) {
    const std::string s = detail::trim(spec);
    if (s.rfind("znbar", 0) == 0) {
        auto [family, kvs] = detail::split_spec(s);
        long n = 0;
        for (const auto& kv : kvs) {
            if (kv.first != "n")
                throw config_parse_error("znbar spec: unknown key '" + kv.first + "'");
            n = static_cast<long>(detail::parse_integer_strict(kv.second, "znbar n"));
        }
        if (n < 1) throw config_parse_error("znbar spec: need n >= 1");
        return znbar_harmonic(n);
    }

    AnalyticMap h = AnalyticMap::constant(0.0);
    AnalyticMap g = AnalyticMap::constant(0.0);
    bool saw_part = false;
    std::string piece;
    std::istringstream parts(s);
    while (std::getline(parts, piece, ';')) {
        const std::string p = detail::trim(piece);
        if (p.empty()) continue;
        if (p.rfind("h=", 0) == 0) {
            h = detail::parse_map_spec(p.substr(2)).first;
            saw_part = true;
        } else if (p.rfind("g=", 0) == 0) {
            g = detail::parse_map_spec(p.substr(2)).first;
            saw_part = true;
        } else {
            throw config_parse_error(
                "harmonic spec: expected 'znbar n=K' or ';'-separated 'h=<map>'/'g=<map>' parts");
        }
    }
    if (!saw_part)
        throw config_parse_error("harmonic spec: no h= or g= part found in '" + spec + "'");
    return HarmonicFunction(std::move(h), std::move(g));
}

// ---------------------------------------------------------------------------
// Row collection

namespace detail {

inline void collect_estimator_rows(const std::string& symbol_id, const Symbol& phi,
                                   AlphaWeight alpha, const ExperimentConfig& cfg,
                                   std::vector<ReportRow>& rows) {
    const double a = alpha.value;
    const auto selected = [&cfg](const char* name) {
        return std::find(cfg.estimators.begin(), cfg.estimators.end(), name) !=
               cfg.estimators.end();
    };

    std::optional<RatioField> field;
    if (selected("E1") || selected("E2") || selected("bounded_sup"))
        field.emplace(phi, alpha);

    double e1 = 0.0, e2 = 0.0, e3 = 0.0;

    if (selected("E1")) {
        const ThresholdEstimate t = essnorm_threshold(*field, default_s_levels(), cfg.scheme);
        for (const auto& lv : t.levels)
            rows.push_back({symbol_id, a, "E1", lv.s, lv.sup_value, ""});
        rows.push_back({symbol_id, a, "E1", -1.0, t.E1,
                        join_flags({"summary", t.plateau ? "" : "no_threshold_plateau"})});
        e1 = t.E1;
    }
    if (selected("E2")) {
        const BoundaryEstimate b =
            essnorm_boundary(*field, std::min(cfg.scheme.radial_levels, 40));
        for (const auto& sm : b.shells)
            rows.push_back({symbol_id, a, "E2", sm.radius, sm.max_value, ""});
        rows.push_back({symbol_id, a, "E2", -1.0, b.E2, "summary"});
        e2 = b.E2;
    }
    if (selected("E3")) {
        const PowerEstimate p = essnorm_power(phi, alpha, cfg.ladder_N, cfg.scheme);
        for (const auto& lp : p.ladder)
            rows.push_back({symbol_id, a, "E3", static_cast<double>(lp.n), lp.a_n, ""});
        rows.push_back(
            {symbol_id, a, "E3", -1.0, p.E3,
             join_flags({"summary", p.slow_convergence ? "slow_power_convergence" : ""})});
        e3 = p.E3;
    }
    if (selected("E1") && selected("E2") && selected("E3")) {
        const double agreement =
            std::max({std::abs(e1 - e2), std::abs(e1 - e3), std::abs(e2 - e3)});
        rows.push_back({symbol_id, a, "agreement", -1.0, agreement, "summary"});
    }
    if (selected("bounded_sup")) {
        const BoundedSup bs = bounded_sup(*field, cfg.scheme);
        for (const auto& sm : bs.sup.shell_profile)
            rows.push_back({symbol_id, a, "bounded_sup", sm.radius, sm.max_value, ""});
        rows.push_back(
            {symbol_id, a, "bounded_sup", -1.0, bs.sup.value,
             join_flags({"summary", bs.divergence ? "divergent_shell_maxima" : ""})});
    }
    if (selected("power_boundedness")) {
        const BoundednessVerdict v = boundedness_power_test(phi, alpha, cfg.ladder_N, cfg.scheme);
        for (const auto& lp : v.ladder)
            rows.push_back(
                {symbol_id, a, "power_boundedness", static_cast<double>(lp.n), lp.a_n, ""});
        rows.push_back({symbol_id, a, "power_boundedness", -1.0, v.sup_a_n,
                        join_flags({"summary", v.bounded ? "bounded" : "unbounded_trend"})});
    }
    if (selected("margin") || selected("sandwich")) {
        const std::vector<HarmonicFunction> dict = make_default_dictionary(alpha);
        if (selected("margin")) {
            const MarginEstimate m = bounded_below_margin(phi, alpha, dict, cfg.scheme);
            rows.push_back(
                {symbol_id, a, "margin", -1.0, m.norm_margin, "summary;norm_ratio"});
            rows.push_back(
                {symbol_id, a, "margin", -1.0, m.recentered_margin, "summary;recentered"});
        }
        if (selected("sandwich")) {
            const WeakNullLowerBound lo =
                weak_null_lower_bound(phi, alpha, cfg.ladder_N, cfg.scheme);
            for (const auto& lp : lo.trace)
                rows.push_back({symbol_id, a, "sandwich", static_cast<double>(lp.n), lp.a_n, ""});
            const AveragedApproximant L = AveragedApproximant::dyadic(16);
            const UpperBoundIndicator up = empirical_upper_bound(phi, alpha, L, dict, cfg.scheme);
            rows.push_back({symbol_id, a, "sandwich", -1.0, lo.value, "summary;lower"});
            rows.push_back({symbol_id, a, "sandwich", -1.0, up.value,
                            "summary;upper_indicator;dictionary_surrogate"});
        }
    }
}

} // namespace detail

// ---------------------------------------------------------------------------
// Rendering

inline std::string render_csv(const std::vector<ReportRow>& rows) {
    std::string out = "symbol_id,alpha,estimator,index,value,flags\n";
    for (const auto& r : rows) {
        out += detail::csv_field(r.symbol_id);
        out += ',';
        out += format_real(r.alpha);
        out += ',';
        out += detail::csv_field(r.estimator);
        out += ',';
        out += format_real(r.index);
        out += ',';
        out += format_real(r.value);
        out += ',';
        out += detail::csv_field(r.flags);
        out += '\n';
    }
    return out;
}

inline std::string render_json(const ExperimentConfig& cfg, const std::vector<ReportRow>& rows) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"generator\": \"hbloch\",\n";
    out << "  \"version\": " << detail::json_string(version_string) << ",\n";
    out << "  \"config\": {\n";
    out << "    \"symbols\": [";
    for (std::size_t i = 0; i < cfg.symbols.size(); ++i)
        out << (i ? ", " : "") << detail::json_string(cfg.symbols[i]);
    out << "],\n";
    out << "    \"alphas\": [";
    for (std::size_t i = 0; i < cfg.alphas.size(); ++i)
        out << (i ? ", " : "") << format_real(cfg.alphas[i]);
    out << "],\n";
    out << "    \"estimators\": [";
    for (std::size_t i = 0; i < cfg.estimators.size(); ++i)
        out << (i ? ", " : "") << detail::json_string(cfg.estimators[i]);
    out << "],\n";
    out << "    \"ladder_N\": " << cfg.ladder_N << ",\n";
    out << "    \"scheme\": {\"radial_levels\": " << cfg.scheme.radial_levels
        << ", \"angular_base\": " << cfg.scheme.angular_base
        << ", \"angular_growth\": " << format_real(cfg.scheme.angular_growth)
        << ", \"refinement_rounds\": " << cfg.scheme.refinement_rounds
        << ", \"seed\": " << cfg.scheme.seed
        << ", \"angular_jitter\": " << (cfg.scheme.angular_jitter ? "true" : "false") << "}\n";
    out << "  },\n";
    out << "  \"rows\": [\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        out << "    {\"symbol_id\": " << detail::json_string(r.symbol_id)
            << ", \"alpha\": " << format_real(r.alpha)
            << ", \"estimator\": " << detail::json_string(r.estimator)
            << ", \"index\": " << format_real(r.index)
            << ", \"value\": " << format_real(r.value)
            << ", \"flags\": " << detail::json_string(r.flags) << "}"
            << (i + 1 < rows.size() ? "," : "") << "\n";
    }
    out << "  ]\n";
    out << "}\n";
    return out.str();
}

struct ExperimentDocument {
    std::vector<ReportRow> rows;
    std::string text;
};

inline ExperimentDocument run_experiment(const ExperimentConfig& cfg) {
    validate_config(cfg);
    ExperimentDocument doc;
    for (const auto& spec : cfg.symbols) {
        const Symbol phi = make_symbol(spec);
        for (double a : cfg.alphas)
            detail::collect_estimator_rows(spec, phi, AlphaWeight(a), cfg, doc.rows);
    }
    std::sort(doc.rows.begin(), doc.rows.end(), report_row_less);
    doc.text = cfg.format == "json" ? render_json(cfg, doc.rows) : render_csv(doc.rows);
    return doc;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open output file '" + path + "'");
    out << text;
    out.flush();
    if (!out) throw io_error("failed while writing '" + path + "'");
}

// ---------------------------------------------------------------------------
// Closed-form verification table
//
// The oracle never touches the closed-form radius or peak: it scans a
// 10^5-point grid of log H, tightens with golden section, then pins the
// radius by bisecting the sign of a central-difference derivative (value
// comparisons alone cannot resolve the flat top past ~1e-8).

namespace detail {

inline double log_H(long n, double alpha, double x) {
    if (x <= 0.0) return n == 1 ? 0.0 : -std::numeric_limits<double>::infinity();
    if (x >= 1.0) return -std::numeric_limits<double>::infinity();
    const double t = alpha * std::log1p(-x * x);
    return n == 1 ? t : static_cast<double>(n - 1) * std::log(x) + t;
}

struct LogHGrid {
    std::vector<double> lx;   // log(i/m)
    std::vector<double> l1x;  // log(1 - (i/m)^2)
    int m;

    explicit LogHGrid(int cells) : m(cells) {
        lx.resize(m + 1);
        l1x.resize(m + 1);
        for (int i = 0; i <= m; ++i) {
            const double x = static_cast<double>(i) / m;
            lx[i] = std::log(x);
            l1x[i] = std::log1p(-x * x);
        }
    }
};

struct OraclePeak {
    double radius;
    double value;
};

inline OraclePeak oracle_peak(long n, double alpha, const LogHGrid& grid) {
    const auto score = [&](int i) {
        if (n == 1) return alpha * grid.l1x[i];
        if (i == 0) return -std::numeric_limits<double>::infinity();
        return static_cast<double>(n - 1) * grid.lx[i] + alpha * grid.l1x[i];
    };
    int best = 0;
    double best_v = score(0);
    for (int i = 1; i <= grid.m; ++i) {
        const double v = score(i);
        if (v > best_v) {
            best_v = v;
            best = i;
        }
    }

    const double step = 1.0 / grid.m;
    const double lo = std::max(0.0, (best - 1) * step);
    const double hi = std::min(1.0, (best + 1) * step);
    const auto g = [&](double x) { return log_H(n, alpha, x); };
    const auto [x_gs, v_gs] = golden_max(g, lo, hi, 60);
    (void)x_gs;

    // log H is strictly concave, so the derivative sign changes exactly once.
    const double h = 1e-6;
    const auto rising = [&](double x) {
        return g(std::min(1.0, x + h)) - g(std::max(0.0, x - h)) > 0.0;
    };
    double radius;
    if (!rising(lo)) {
        radius = lo;  // the n = 1 edge peak at x = 0
    } else if (rising(hi)) {
        radius = hi;
    } else {
        double a = lo, b = hi;
        for (int it = 0; it < 100; ++it) {
            const double mid = 0.5 * (a + b);
            if (rising(mid)) a = mid;
            else b = mid;
        }
        radius = 0.5 * (a + b);
    }
    const double value = std::exp(std::max({best_v, v_gs, g(radius)}));
    return {radius, value};
}

inline double oracle_band_min(long n, double alpha, double r_lo, double r_hi) {
    constexpr int m = 1000;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= m; ++i) {
        const double x = r_lo + (r_hi - r_lo) * i / m;
        best = std::min(best, std::exp(log_H(n, alpha, x)));
    }
    return best;
}

// Strict monotonicity on both sides of the peak, compared in the log domain
// so that deep x^(n-1) underflow cannot fake a tie.
inline bool oracle_monotone(long n, double alpha, double r_peak) {
    constexpr int m = 1000;
    if (r_peak > 0.0) {
        double prev = log_H(n, alpha, 0.0);
        for (int i = 1; i <= m; ++i) {
            const double v = log_H(n, alpha, r_peak * i / m);
            if (!(v > prev)) return false;
            prev = v;
        }
    }
    double prev = log_H(n, alpha, r_peak);
    for (int i = 1; i <= m; ++i) {
        const double v = log_H(n, alpha, r_peak + (1.0 - r_peak) * i / m);
        if (!(v < prev)) return false;
        prev = v;
    }
    return true;
}

} // namespace detail

struct LemmaCheckRow {
    long n;
    double alpha;
    double radius_closed, radius_oracle;
    double peak_closed, peak_oracle;
    double band_closed, band_oracle;
    bool monotone_ok;
};

struct BandLimitRow {
    double alpha;
    double scaled_band_min;  // n^alpha * band_min at n = 10^4
    double limit;            // (2 alpha / e)^alpha
    double rel_error;
};

struct LemmaCheck {
    std::vector<LemmaCheckRow> rows;
    std::vector<BandLimitRow> band_limits;
    double max_radius_error;  // measured on unit scale; radii live in [0, 1]
    double max_peak_error;    // relative
    double max_band_error;    // relative
    bool monotone_all;
    bool pass;
};

inline LemmaCheck verify_lemma1(long n_max, const std::vector<double>& alphas,
                                double tol = 1e-9) {
    if (n_max < 2) throw parameter_domain_error("verify_lemma1: n_max must be >= 2");
    if (alphas.empty()) throw parameter_domain_error("verify_lemma1: need at least one alpha");

    const detail::LogHGrid grid(100000);
    LemmaCheck out{{}, {}, 0.0, 0.0, 0.0, true, true};

    for (double a : alphas) {
        const AlphaWeight alpha(a);

        std::vector<detail::OraclePeak> peaks;
        peaks.reserve(static_cast<std::size_t>(n_max) + 1);
        for (long n = 1; n <= n_max + 1; ++n) peaks.push_back(detail::oracle_peak(n, a, grid));

        for (long n = 1; n <= n_max; ++n) {
            const HExtremals ex = H_extremals(n, alpha);
            const detail::OraclePeak& pk = peaks[static_cast<std::size_t>(n - 1)];
            const double band_oracle = detail::oracle_band_min(
                n, a, pk.radius, peaks[static_cast<std::size_t>(n)].radius);
            const bool mono = detail::oracle_monotone(n, a, pk.radius);

            out.rows.push_back({n, a, ex.peak_radius, pk.radius, ex.peak_value, pk.value,
                                ex.band_min, band_oracle, mono});
            out.max_radius_error =
                std::max(out.max_radius_error,
                         std::abs(ex.peak_radius - pk.radius) / std::max(ex.peak_radius, 1.0));
            out.max_peak_error = std::max(out.max_peak_error,
                                          std::abs(ex.peak_value - pk.value) / ex.peak_value);
            out.max_band_error = std::max(out.max_band_error,
                                          std::abs(ex.band_min - band_oracle) / ex.band_min);
            out.monotone_all = out.monotone_all && mono;
        }

        constexpr long n_limit = 10000;
        const HExtremals exl = H_extremals(n_limit, alpha);
        const double scaled = std::pow(static_cast<double>(n_limit), a) * exl.band_min;
        const double limit = H_band_limit(alpha);
        out.band_limits.push_back({a, scaled, limit, std::abs(scaled - limit) / limit});
    }

    out.pass = out.monotone_all && out.max_radius_error <= tol && out.max_peak_error <= tol &&
               out.max_band_error <= tol;
    for (const auto& bl : out.band_limits)
        if (bl.rel_error > 1e-2) out.pass = false;
    return out;
}

// ---------------------------------------------------------------------------
// Estimator cross-check

struct CrossCheckCase {
    std::string symbol_spec;
    double alpha;
};

struct CrossCheckRow {
    std::string symbol_id;
    double alpha;
    double E1, E2, E3;
    double gap_threshold_boundary;  // |E1 - E2|
    double gap_threshold_power;     // |E3 - E1|
    bool pass;
};

struct CrossCheckResult {
    std::vector<CrossCheckRow> rows;
    double tol_boundary;  // on |E1 - E2|
    double tol_power;     // on |E3 - E1|
    bool all_pass;
};

inline std::vector<CrossCheckCase> default_suite() {
    return {
        {"identity", 1.0},
        {"rotation theta=0.7853981633974483", 1.0},
        {"automorphism a=0.5", 1.0},
        {"dilation s=0.9", 0.5},
        {"dilation s=0.9", 1.0},
        {"dilation s=0.9", 2.0},
        {"dilation s=0.5", 1.0},
    };
}

inline CrossCheckResult cross_check(const std::vector<CrossCheckCase>& cases, long N = 2048,
                                    const SamplingScheme& scheme = {}, double tol_boundary = 1e-3,
                                    double tol_power = 5e-2) {
    if (cases.empty()) throw parameter_domain_error("cross_check: empty case list");
    CrossCheckResult out{{}, tol_boundary, tol_power, true};
    for (const auto& c : cases) {
        const Symbol phi = make_symbol(c.symbol_spec);
        const AlphaWeight alpha(c.alpha);
        const RatioField field(phi, alpha);
        const double e1 = essnorm_threshold(field, default_s_levels(), scheme).E1;
        const double e2 = essnorm_boundary(field, std::min(scheme.radial_levels, 40)).E2;
        const double e3 = essnorm_power(phi, alpha, N, scheme).E3;
        const double g12 = std::abs(e1 - e2);
        const double g13 = std::abs(e3 - e1);
        const bool pass = g12 <= tol_boundary && g13 <= tol_power;
        out.rows.push_back({c.symbol_spec, c.alpha, e1, e2, e3, g12, g13, pass});
        out.all_pass = out.all_pass && pass;
    }
    std::sort(out.rows.begin(), out.rows.end(), [](const CrossCheckRow& a, const CrossCheckRow& b) {
        return std::tie(a.symbol_id, a.alpha) < std::tie(b.symbol_id, b.alpha);
    });
    return out;
}

inline std::string render_cross_check_csv(const CrossCheckResult& res) {
    std::string out = "symbol_id,alpha,E1,E2,E3,gap_E1_E2,gap_E1_E3,pass\n";
    for (const auto& r : res.rows) {
        out += detail::csv_field(r.symbol_id);
        out += ',';
        out += format_real(r.alpha);
        out += ',';
        out += format_real(r.E1);
        out += ',';
        out += format_real(r.E2);
        out += ',';
        out += format_real(r.E3);
        out += ',';
        out += format_real(r.gap_threshold_boundary);
        out += ',';
        out += format_real(r.gap_threshold_power);
        out += ',';
        out += r.pass ? "true" : "false";
        out += '\n';
    }
    return out;
}

} // namespace hbloch
