// Command line front-end: norms, essential-norm estimators, closed-form
// verification and the estimator cross-check suite.  Exit codes: 0 success,
// 2 config/parameter error, 3 symbol validation failure, 4 failed
// verify/cross-check, 5 I/O failure.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <hbloch/hbloch.hpp>

namespace {

struct SchemeFlags {
    bool coarse = false;
    int radial_levels = -1;
    long long angular_base = -1;
    double angular_growth = -1.0;
    int rounds = -1;
    long long seed = -1;
    bool jitter = false;
};

void add_scheme_flags(CLI::App* cmd, SchemeFlags& f) {
    cmd->add_flag("--coarse", f.coarse, "start from the coarse sampling preset");
    cmd->add_option("--radial-levels", f.radial_levels, "dyadic sampling shells (default 40)");
    cmd->add_option("--angular-base", f.angular_base, "angular samples on the first shell");
    cmd->add_option("--angular-growth", f.angular_growth, "angular growth per shell");
    cmd->add_option("--rounds", f.rounds, "local refinement rounds");
    cmd->add_option("--seed", f.seed, "seed for angular jitter");
    cmd->add_flag("--jitter", f.jitter, "jitter the angular grid (off by default)");
}

hbloch::SamplingScheme resolve_scheme(const SchemeFlags& f) {
    hbloch::SamplingScheme s =
        f.coarse ? hbloch::SamplingScheme::coarse() : hbloch::SamplingScheme{};
    if (f.radial_levels >= 0) s.radial_levels = f.radial_levels;
    if (f.angular_base >= 0) s.angular_base = static_cast<std::size_t>(f.angular_base);
    if (f.angular_growth > 0.0) s.angular_growth = f.angular_growth;
    if (f.rounds >= 0) s.refinement_rounds = f.rounds;
    if (f.seed >= 0) s.seed = static_cast<std::uint64_t>(f.seed);
    if (f.jitter) s.angular_jitter = true;
    s.validate();
    return s;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        hbloch::write_text_file(out_path, text);
        std::cout << "wrote " << out_path << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    using namespace hbloch;

    CLI::App app{"weighted harmonic Bloch norms and composition-operator estimators"};
    app.set_version_flag("--version", version_string);
    app.require_subcommand(1);

    // norm
    std::string f_spec;
    double norm_alpha = 1.0;
    SchemeFlags norm_scheme;
    CLI::App* cmd_norm = app.add_subcommand("norm", "norm of a harmonic function");
    cmd_norm->add_option("f-spec", f_spec, "'znbar n=K' or 'h=<map>; g=<map>'")->required();
    cmd_norm->add_option("--alpha", norm_alpha, "weight exponent")->required();
    add_scheme_flags(cmd_norm, norm_scheme);

    // essnorm
    std::string ess_spec, ess_estimators = "E1,E2,E3", ess_out, ess_format = "csv";
    double ess_alpha = 1.0;
    long ess_N = 2048;
    SchemeFlags ess_scheme;
    CLI::App* cmd_ess = app.add_subcommand("essnorm", "essential-norm estimators for C_phi");
    cmd_ess->add_option("symbol-spec", ess_spec, "symbol grammar, e.g. 'automorphism a=0.5'")
        ->required();
    cmd_ess->add_option("--alpha", ess_alpha, "weight exponent")->required();
    cmd_ess->add_option("--estimators", ess_estimators, "comma list (default E1,E2,E3)");
    cmd_ess->add_option("--ladder-N", ess_N, "power ladder endpoint (default 2048)");
    cmd_ess->add_option("--out", ess_out, "write the report here instead of stdout");
    cmd_ess->add_option("--format", ess_format, "csv or json");
    add_scheme_flags(cmd_ess, ess_scheme);

    // bounded
    std::string bd_spec;
    double bd_alpha = 1.0;
    long bd_N = 2048;
    SchemeFlags bd_scheme;
    CLI::App* cmd_bd = app.add_subcommand("bounded", "power-ladder boundedness test for C_phi");
    cmd_bd->add_option("symbol-spec", bd_spec, "symbol grammar")->required();
    cmd_bd->add_option("--alpha", bd_alpha, "weight exponent")->required();
    cmd_bd->add_option("--ladder-N", bd_N, "power ladder endpoint (default 2048)");
    add_scheme_flags(cmd_bd, bd_scheme);

    // verify-lemma1
    long vl_nmax = 200;
    std::vector<double> vl_alphas{0.5, 1.0, 2.0, 3.0};
    CLI::App* cmd_vl = app.add_subcommand(
        "verify-lemma1", "closed-form peak/band values against the grid oracle");
    cmd_vl->add_option("--n-max", vl_nmax, "largest exponent (default 200)");
    cmd_vl->add_option("--alphas", vl_alphas, "weights to check")->delimiter(',');

    // cross-check
    std::string cc_suite = "default", cc_out;
    long cc_N = 2048;
    SchemeFlags cc_scheme;
    CLI::App* cmd_cc =
        app.add_subcommand("cross-check", "agreement of E1/E2/E3 on a regression suite");
    cmd_cc->add_option("--suite", cc_suite, "suite name (only 'default')");
    cmd_cc->add_option("--ladder-N", cc_N, "power ladder endpoint (default 2048)");
    cmd_cc->add_option("--out", cc_out, "write the CSV here instead of stdout");
    add_scheme_flags(cmd_cc, cc_scheme);

    // sandwich
    std::string sw_spec;
    double sw_alpha = 1.0;
    int sw_n = 16;
    long sw_N = 512;
    SchemeFlags sw_scheme;
    CLI::App* cmd_sw = app.add_subcommand(
        "sandwich", "weak-null lower bound vs threshold estimate vs residual upper indicator");
    cmd_sw->add_option("symbol-spec", sw_spec, "symbol grammar")->required();
    cmd_sw->add_option("--alpha", sw_alpha, "weight exponent")->required();
    cmd_sw->add_option("--n", sw_n, "averaged-approximant level (default 16)");
    cmd_sw->add_option("--ladder-N", sw_N, "weak-null ladder endpoint (default 512)");
    add_scheme_flags(cmd_sw, sw_scheme);

    // run
    std::string run_path;
    CLI::App* cmd_run = app.add_subcommand("run", "run an experiment config file");
    cmd_run->add_option("config-file", run_path, "plain-text key/value config")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(cmd_norm)) {
            const HarmonicFunction f = parse_harmonic_spec(f_spec);
            const AlphaWeight alpha(norm_alpha);
            const SamplingScheme scheme = resolve_scheme(norm_scheme);
            const double semi = seminorm(f, alpha, scheme).value;
            const double v0 = std::abs(f.eval(0.0));
            std::cout << "value_at_0 = " << format_real(v0) << "\n"
                      << "seminorm = " << format_real(semi) << "\n"
                      << "norm = " << format_real(v0 + semi) << "\n";
            return 0;
        }

        if (app.got_subcommand(cmd_ess)) {
            ExperimentConfig cfg;
            cfg.symbols = {ess_spec};
            cfg.alphas = {ess_alpha};
            cfg.estimators = detail::split_list(ess_estimators);
            cfg.scheme = resolve_scheme(ess_scheme);
            cfg.ladder_N = ess_N;
            cfg.format = ess_format;
            const ExperimentDocument doc = run_experiment(cfg);
            emit(doc.text, ess_out);
            if (!ess_out.empty()) {
                for (const auto& r : doc.rows)
                    if (r.index == -1.0)
                        std::cout << r.estimator << " = " << format_real(r.value)
                                  << (r.flags == "summary" ? "" : "  [" + r.flags + "]") << "\n";
            }
            return 0;
        }

        if (app.got_subcommand(cmd_bd)) {
            const Symbol phi = make_symbol(bd_spec);
            const AlphaWeight alpha(bd_alpha);
            const SamplingScheme scheme = resolve_scheme(bd_scheme);
            const BoundednessVerdict v = boundedness_power_test(phi, alpha, bd_N, scheme);
            for (const auto& lp : v.ladder)
                std::cout << lp.n << " " << format_real(lp.a_n) << "\n";
            std::cout << "sup_a_n = " << format_real(v.sup_a_n) << "\n"
                      << "bounded = " << (v.bounded ? "true" : "false") << "\n";
            return 0;
        }

        if (app.got_subcommand(cmd_vl)) {
            const LemmaCheck chk = verify_lemma1(vl_nmax, vl_alphas);
            std::cout << "rows = " << chk.rows.size() << "\n"
                      << "max_radius_error = " << format_real(chk.max_radius_error) << "\n"
                      << "max_peak_error = " << format_real(chk.max_peak_error) << "\n"
                      << "max_band_error = " << format_real(chk.max_band_error) << "\n"
                      << "monotone = " << (chk.monotone_all ? "true" : "false") << "\n";
            for (const auto& bl : chk.band_limits)
                std::cout << "band_limit alpha=" << format_real(bl.alpha)
                          << " scaled=" << format_real(bl.scaled_band_min)
                          << " limit=" << format_real(bl.limit)
                          << " rel_error=" << format_real(bl.rel_error) << "\n";
            std::cout << (chk.pass ? "PASS" : "FAIL") << "\n";
            return chk.pass ? 0 : 4;
        }

        if (app.got_subcommand(cmd_cc)) {
            if (cc_suite != "default")
                throw config_parse_error("cross-check: unknown suite '" + cc_suite + "'");
            const CrossCheckResult res =
                cross_check(default_suite(), cc_N, resolve_scheme(cc_scheme));
            emit(render_cross_check_csv(res), cc_out);
            std::cout << (res.all_pass ? "PASS" : "FAIL") << "\n";
            return res.all_pass ? 0 : 4;
        }

        if (app.got_subcommand(cmd_sw)) {
            const Symbol phi = make_symbol(sw_spec);
            const AlphaWeight alpha(sw_alpha);
            const SamplingScheme scheme = resolve_scheme(sw_scheme);
            const RatioField field(phi, alpha);
            const double e1 = essnorm_threshold(field, default_s_levels(), scheme).E1;
            const WeakNullLowerBound lo = weak_null_lower_bound(phi, alpha, sw_N, scheme);
            const std::vector<HarmonicFunction> dict = make_default_dictionary(alpha);
            const AveragedApproximant L = AveragedApproximant::dyadic(sw_n);
            const UpperBoundIndicator up = empirical_upper_bound(phi, alpha, L, dict, scheme);
            std::cout << "lower = " << format_real(lo.value) << "\n"
                      << "E1 = " << format_real(e1) << "\n"
                      << "upper_indicator = " << format_real(up.value)
                      << "  [dictionary_surrogate]\n";
            return 0;
        }

        if (app.got_subcommand(cmd_run)) {
            const ExperimentConfig cfg = load_config(run_path);
            const ExperimentDocument doc = run_experiment(cfg);
            emit(doc.text, cfg.output_path);
            return 0;
        }
    } catch (const config_parse_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const parameter_domain_error& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const resource_bound_error& e) {
        std::cerr << "resource bound: " << e.what() << "\n";
        return 2;
    } catch (const self_map_violation& e) {
        std::cerr << "symbol validation: " << e.what() << " (|phi| = " << e.witness_modulus
                  << " at z = " << e.witness << ")\n";
        return 3;
    } catch (const near_boundary_error& e) {
        std::cerr << "symbol validation: " << e.what() << " (z = " << e.witness << ")\n";
        return 3;
    } catch (const io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    return 0;
}
