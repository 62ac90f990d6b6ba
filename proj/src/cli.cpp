#include <swirllab/cli.hpp>
#include <swirllab/errors.hpp>
#include <swirllab/pipeline.hpp>
#include <swirllab/synthetic.hpp>
#include <swirllab/verify.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <random>
#include <ostream>

namespace swirl {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Axisymmetric swirl flow laboratory"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    auto* run = app.add_subcommand("run", "Run a simulation and write snapshots plus a manifest");
    run->add_option("config", config_path, "TOML configuration")->required();
    run->add_option("-o,--out", out_dir, "Output directory")->required();

    std::string manifest;
    DiagnoseOptions dopt;
    double N = 0, T = 0, s_min = 0, ds_max = 0, t_start = 0;
    auto* diag = app.add_subcommand("diagnose", "Evaluate diagnostics and the theorem check on a run");
    diag->add_option("manifest", manifest, "manifest.json of a run")->required();
    auto* oN = diag->add_option("--N", N, "Threshold N");
    auto* oT = diag->add_option("--T", T, "Horizon T");
    auto* os = diag->add_option("--s-min", s_min, "Minimum |S| for swirl dominance");
    auto* od = diag->add_option("--ds-max", ds_max, "Maximum |dS/dr| for swirl dominance");
    auto* ot = diag->add_option("--t-start", t_start, "Time origin of the theorem window");
    diag->add_option("--csv", dopt.csv_path, "Output CSV path");

    VerifyOptions vopt;
    bool list = false;
    std::string verify_csv;
    auto* ver = app.add_subcommand("verify", "Run the oracle verification suite");
    ver->add_option("--seed", vopt.seed, "Random seed");
    ver->add_flag("--mutate", vopt.mutate, "Flip one Christoffel sign");
    ver->add_flag("--list", list, "Print the check matrix without running");
    ver->add_option("--csv", verify_csv, "Also write the report as CSV");

    std::string export_manifest, export_csv, export_profile;
    auto* exp = app.add_subcommand("export", "Write boundary-shear CSV series");
    exp->add_option("manifest", export_manifest, "manifest.json of a run")->required();
    exp->add_option("--csv", export_csv, "Shear dump path")->required();
    exp->add_option("--profile", export_profile, "Vorticity profile through xi at peak shear");

    double syn_N = 1.0, syn_T = 1.0;
    std::uint64_t syn_seed = 1;
    int syn_samples = 201;
    std::string syn_csv;
    auto* syn = app.add_subcommand("synthetic", "Write a series that satisfies the growth ODE exactly");
    syn->add_option("--N", syn_N, "Bound on |F|")->check(CLI::PositiveNumber);
    syn->add_option("--T", syn_T, "Horizon T")->check(CLI::PositiveNumber);
    syn->add_option("--seed", syn_seed, "Random seed");
    syn->add_option("--samples", syn_samples, "Number of samples")->check(CLI::Range(3, 1000000));
    syn->add_option("--csv", syn_csv, "Output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }

    auto log = [&out](const std::string& s) { out << s << '\n'; };
    try {
        if (*run) {
            const auto m = cmd_run(config_path, out_dir, log);
            out << "manifest " << manifest_path_in(m.dir) << " snapshots=" << m.snapshots.size() << '\n';
            return kExitOk;
        }
        if (*diag) {
            if (*oN)
                dopt.N = N;
            if (*oT)
                dopt.T = T;
            if (*os)
                dopt.s_min = s_min;
            if (*od)
                dopt.ds_max = ds_max;
            if (*ot)
                dopt.t_start = t_start;
            const auto r = cmd_diagnose(manifest, dopt);
            out << "diagnostics " << r.csv_path << '\n';
            for (const auto& line : r.footer)
                out << "# " << line << '\n';
            return kExitOk;
        }
        if (*ver) {
            if (list) {
                for (const auto& c : verification_matrix())
                    out << c.check << ' ' << c.field << " tol=" << c.tolerance << '\n';
                return kExitOk;
            }
            const auto rep = run_verification_suite(vopt);
            write_report_text(out, rep);
            if (!verify_csv.empty()) {
                std::ofstream f(verify_csv);
                if (!f)
                    throw IoError("cannot write " + verify_csv);
                write_report_csv(f, rep);
            }
            return rep.all_pass() ? kExitOk : kExitVerify;
        }
        if (*exp) {
            cmd_export(export_manifest, export_csv, export_profile);
            out << "shear dump " << export_csv << '\n';
            return kExitOk;
        }
        if (*syn) {
            std::mt19937_64 rng(syn_seed);
            const auto series = synthetic_theorem_series(rng, syn_N, syn_T, syn_samples - 1);
            const auto res = ode_residual(series, OdeForm::Printed);
            std::ofstream f(syn_csv);
            if (!f)
                throw IoError("cannot write " + syn_csv);
            write_diagnostics_csv(f, series, res, theorem_footer(theorem_check(series, syn_N, syn_T)));
            if (!f)
                throw IoError("write failed for " + syn_csv);
            out << "synthetic series " << syn_csv << '\n';
            return kExitOk;
        }
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const NumericalBlowUp& e) {
        err << "numerical blow-up at t=" << e.time << ": " << e.what() << '\n';
        return kExitBlowUp;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitFailure;
}

} // namespace swirl
