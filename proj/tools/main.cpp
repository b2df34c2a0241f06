#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "qcorr/correlations.hpp"
#include "qcorr/dynamics.hpp"
#include "qcorr/experiment.hpp"
#include "qcorr/filtering.hpp"
#include "qcorr/state_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

void print_key_value(const char* key, double v) {
    std::cout << key << '=' << qcorr::format_g17(v) << '\n';
}

int cmd_correlations(const std::string& state_path) {
    const qcorr::DensityMatrix rho = qcorr::read_state(state_path);
    const qcorr::CorrelationReport rep = qcorr::correlation_report(rho);
    const qcorr::HiddenReport hid = qcorr::hidden_measures(rho);

    print_key_value("s1", rep.s1);
    print_key_value("s2", rep.s2);
    print_key_value("s3", rep.s3);
    print_key_value("chi", rep.chi);
    print_key_value("lambda1", rep.lambdas[0]);
    print_key_value("lambda2", rep.lambdas[1]);
    print_key_value("lambda3", rep.lambdas[2]);
    print_key_value("lambda4", rep.lambdas[3]);
    print_key_value("M", rep.M);
    print_key_value("F3", rep.F3);
    print_key_value("N", rep.N);
    print_key_value("f", rep.f);
    print_key_value("F", rep.F);
    print_key_value("B", rep.B);
    print_key_value("BF3", rep.BF3);
    print_key_value("D", rep.D);
    print_key_value("C", rep.C);
    print_key_value("nu0", hid.nu.nu[0]);
    print_key_value("nu1", hid.nu.nu[1]);
    print_key_value("nu2", hid.nu.nu[2]);
    print_key_value("nu3", hid.nu.nu[3]);
    print_key_value("HB", hid.HB);
    print_key_value("HBF3", hid.HBF3);
    print_key_value("HD", hid.HD);
    print_key_value("MEC", hid.MEC);
    std::cout << "normal_form_exists=" << (hid.normal_form_exists ? "true" : "false") << '\n';
    return kExitOk;
}

int cmd_normal_form(const std::string& state_path, const std::string& out_path) {
    const qcorr::DensityMatrix rho = qcorr::read_state(state_path);
    const qcorr::NormalFormResult result = qcorr::compute_normal_form_filters(rho);
    qcorr::write_normal_form_result(std::filesystem::path(out_path), result);
    std::cout << "p_succ=" << qcorr::format_g17(result.p_succ) << '\n'
              << "converged=" << (result.converged ? "true" : "false") << '\n'
              << "iterations=" << result.iterations << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-qubit collective-decay dynamics and quantum-correlation measures"};
    app.require_subcommand(1);

    // evolve
    auto* evolve = app.add_subcommand("evolve", "Evolve a Werner-family initial state and emit CSV");
    double ev_p = 0.0, ev_k = 0.5, ev_tau_max = 30.0;
    int ev_samples = 3001;
    bool ev_numeric = false;
    double ev_V = 0.0, ev_omega1 = 0.0, ev_omega2 = 0.0, ev_step = 1e-3;
    std::string ev_out;
    evolve->add_option("--p", ev_p, "Werner mixing parameter in [0,1]")->required();
    evolve->add_option("--k", ev_k, "collective damping ratio gamma/Gamma")->required();
    evolve->add_option("--tau-max", ev_tau_max, "horizon in units of Gamma t")->required();
    evolve->add_option("--samples", ev_samples, "grid size (>= 2)")->required();
    evolve->add_flag("--numeric", ev_numeric, "use the RK4 integrator instead of closed forms");
    evolve->add_option("--V", ev_V, "dipole-dipole coupling (numeric mode)");
    evolve->add_option("--omega1", ev_omega1, "qubit 1 frequency (numeric mode)");
    evolve->add_option("--omega2", ev_omega2, "qubit 2 frequency (numeric mode)");
    evolve->add_option("--step", ev_step, "RK4 step (numeric mode)");
    evolve->add_option("--out", ev_out, "output CSV path")->required();

    // correlations
    auto* correlations = app.add_subcommand("correlations", "Report all measures of a state file");
    std::string corr_state;
    correlations->add_option("--state", corr_state, "state file (re/im object)")->required();

    // normal-form
    auto* normal_form = app.add_subcommand("normal-form", "Normal-form filters for a state file");
    std::string nf_state, nf_out;
    normal_form->add_option("--state", nf_state, "state file (re/im object)")->required();
    normal_form->add_option("--out", nf_out, "output file for filters + normal form")->required();

    // scan
    auto* scan = app.add_subcommand("scan", "Run a trajectory scan from a config file");
    std::string scan_config;
    std::string scan_p_list, scan_mode, scan_out;
    std::optional<double> scan_k, scan_tau_max, scan_step, scan_V, scan_omega1, scan_omega2;
    std::optional<int> scan_samples;
    std::optional<std::uint64_t> scan_seed;
    scan->add_option("--config", scan_config, "key=value config file")->required();
    scan->add_option("--p", scan_p_list, "override: comma-separated p values");
    scan->add_option("--k", scan_k, "override: damping ratio");
    scan->add_option("--tau-max", scan_tau_max, "override: horizon");
    scan->add_option("--samples", scan_samples, "override: grid size");
    scan->add_option("--mode", scan_mode, "override: analytic-family | numeric");
    scan->add_option("--out", scan_out, "override: output CSV path");
    scan->add_option("--seed", scan_seed, "override: seed");
    scan->add_option("--V", scan_V, "override: dipole coupling (numeric mode)");
    scan->add_option("--omega1", scan_omega1, "override: qubit 1 frequency");
    scan->add_option("--omega2", scan_omega2, "override: qubit 2 frequency");
    scan->add_option("--step", scan_step, "override: RK4 step");

    // figure1
    auto* figure1 = app.add_subcommand("figure1", "Emit the reference dataset (k = 1/2)");
    std::string fig_out;
    figure1->add_option("--out", fig_out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (evolve->parsed()) {
            qcorr::ScanConfig cfg;
            cfg.p_values = {ev_p};
            cfg.k = ev_k;
            cfg.tau_max = ev_tau_max;
            cfg.samples = ev_samples;
            cfg.mode = ev_numeric ? qcorr::ScanMode::Numeric : qcorr::ScanMode::AnalyticFamily;
            cfg.V = ev_V;
            cfg.omega1 = ev_omega1;
            cfg.omega2 = ev_omega2;
            cfg.step = ev_step;
            const auto records = qcorr::run_trajectory_scan(cfg);
            qcorr::write_records_csv(std::filesystem::path(ev_out), records);
            return kExitOk;
        }
        if (correlations->parsed()) return cmd_correlations(corr_state);
        if (normal_form->parsed()) return cmd_normal_form(nf_state, nf_out);
        if (scan->parsed()) {
            qcorr::ScanConfig cfg = qcorr::load_scan_config(scan_config);
            if (!scan_p_list.empty()) {
                cfg.p_values.clear();
                std::stringstream ss(scan_p_list);
                std::string item;
                while (std::getline(ss, item, ',')) cfg.p_values.push_back(std::stod(item));
            }
            if (scan_k) cfg.k = *scan_k;
            if (scan_tau_max) cfg.tau_max = *scan_tau_max;
            if (scan_samples) cfg.samples = *scan_samples;
            if (!scan_mode.empty()) {
                if (scan_mode == "analytic-family")
                    cfg.mode = qcorr::ScanMode::AnalyticFamily;
                else if (scan_mode == "numeric")
                    cfg.mode = qcorr::ScanMode::Numeric;
                else
                    throw qcorr::ValidationError("--mode must be analytic-family or numeric");
            }
            if (!scan_out.empty()) cfg.output_path = scan_out;
            if (scan_seed) cfg.seed = *scan_seed;
            if (scan_V) cfg.V = *scan_V;
            if (scan_omega1) cfg.omega1 = *scan_omega1;
            if (scan_omega2) cfg.omega2 = *scan_omega2;
            if (scan_step) cfg.step = *scan_step;
            if (cfg.output_path.empty())
                throw qcorr::ValidationError("scan: no output path (config 'out' or --out)");
            const auto records = qcorr::run_trajectory_scan(cfg);
            qcorr::write_records_csv(std::filesystem::path(cfg.output_path), records);
            return kExitOk;
        }
        if (figure1->parsed()) {
            qcorr::figure1_dataset(std::filesystem::path(fig_out));
            return kExitOk;
        }
    } catch (const qcorr::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const qcorr::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const qcorr::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitOk;
}
