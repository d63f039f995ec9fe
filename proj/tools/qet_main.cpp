// Command-line front end: survival probabilities, efficiency-ratio scans,
// repetition optimization and the validation suite.

#include <qet/qet.hpp>
#include <qet/emit_json.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

namespace {

void print_value(const char* label, double v) {
    std::printf("%s = %.17g\n", label, v);
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::fputs(content.c_str(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

void warn_if_slow_correction(const qet::StorageSchedule& sched) {
    if (!sched.encode_decode_fast()) {
        std::fprintf(stderr,
                     "warning: Ted = %g is not small against T = %g; the formulas assume "
                     "fast encode/decode\n",
                     sched.Ted, sched.T);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"survival probabilities for 5-qubit error-corrected storage under timing noise"};
    app.require_subcommand(1);

    double gamma = 1e-5;
    double time = 1e4;
    double tau = 0.003;
    double ted = 1.0;

    // --- survival ---
    auto* cmd_survival = app.add_subcommand("survival", "storage survival probability P_s (or encoded P*_s)");
    bool encoded = false;
    cmd_survival->add_option("--gamma", gamma, "decoherence rate")->capture_default_str();
    cmd_survival->add_option("--time", time, "storage time T")->capture_default_str();
    cmd_survival->add_flag("--encoded", encoded, "report the 5-qubit encoded survival P*_s");

    // --- timing ---
    auto* cmd_timing = app.add_subcommand("timing", "encode/decode timing survival probability P_t");
    cmd_timing->add_option("--tau", tau, "timing fluctuation scale")->capture_default_str();
    cmd_timing->add_option("--ted", ted, "encode+decode time Ted")->capture_default_str();

    // --- ratio ---
    auto* cmd_ratio = app.add_subcommand("ratio", "efficiency ratio R of uncorrected to corrected mismatch");
    cmd_ratio->add_option("--gamma", gamma, "decoherence rate")->capture_default_str();
    cmd_ratio->add_option("--time", time, "storage time T")->capture_default_str();
    cmd_ratio->add_option("--tau", tau, "timing fluctuation scale")->capture_default_str();
    cmd_ratio->add_option("--ted", ted, "encode+decode time Ted")->capture_default_str();

    // --- contour ---
    auto* cmd_contour = app.add_subcommand("contour", "R over a (tau, Ted) grid, CSV/JSON dataset");
    double tau_min = 1e-4, tau_max = 1e-1, ted_min = 1e-1, ted_max = 10.0;
    int tau_points = 60, ted_points = 60;
    bool tau_log = true, ted_log = true, as_json = false;
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    std::string out_path;
    cmd_contour->add_option("--gamma", gamma, "decoherence rate")->capture_default_str();
    cmd_contour->add_option("--time", time, "storage time T")->capture_default_str();
    cmd_contour->add_option("--tau-min", tau_min, "")->capture_default_str();
    cmd_contour->add_option("--tau-max", tau_max, "")->capture_default_str();
    cmd_contour->add_option("--tau-points", tau_points, "")->capture_default_str();
    cmd_contour->add_flag("--tau-log,!--tau-linear", tau_log, "logarithmic tau axis")->capture_default_str();
    cmd_contour->add_option("--ted-min", ted_min, "")->capture_default_str();
    cmd_contour->add_option("--ted-max", ted_max, "")->capture_default_str();
    cmd_contour->add_option("--ted-points", ted_points, "")->capture_default_str();
    cmd_contour->add_flag("--ted-log,!--ted-linear", ted_log, "logarithmic Ted axis")->capture_default_str();
    cmd_contour->add_option("--out", out_path, "output file (stdout when omitted)");
    cmd_contour->add_flag("--json", as_json, "emit JSON instead of CSV");
    cmd_contour->add_option("--threads", threads, "worker count (output is identical for any value)")
        ->capture_default_str();

    // --- repeat ---
    auto* cmd_repeat = app.add_subcommand("repeat", "P_N versus the number of corrections N, with N_opt");
    int nmax = 32;
    cmd_repeat->add_option("--gamma", gamma, "decoherence rate")->capture_default_str();
    cmd_repeat->add_option("--time", time, "storage time T")->capture_default_str();
    cmd_repeat->add_option("--ted", ted, "encode+decode time Ted")->capture_default_str();
    cmd_repeat->add_option("--tau", tau, "timing fluctuation scale")->capture_default_str();
    cmd_repeat->add_option("--nmax", nmax, "largest N scanned")->capture_default_str();
    cmd_repeat->add_option("--out", out_path, "output file (stdout when omitted)");
    cmd_repeat->add_flag("--json", as_json, "emit JSON instead of CSV");

    // --- validate ---
    auto* cmd_validate = app.add_subcommand("validate", "run the oracle cross-check suite");
    std::uint64_t seed = 1;
    bool verbose = false;
    cmd_validate->add_option("--seed", seed, "master seed")->capture_default_str();
    cmd_validate->add_flag("--verbose", verbose, "per-point detail lines");

    // --- boundary ---
    auto* cmd_boundary = app.add_subcommand("boundary", "break-even Ted (R = 1) for a set of gamma values");
    std::vector<double> gammas{1e-6, 1e-5, 1e-4};
    double boundary_tau = 1e-3;
    cmd_boundary->add_option("--tau", boundary_tau, "timing fluctuation scale")->capture_default_str();
    cmd_boundary->add_option("--time", time, "storage time T")->capture_default_str();
    cmd_boundary->add_option("--gamma", gammas, "decoherence rates (repeatable)")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_survival->parsed()) {
            const qet::Probability ps = qet::p_survival_single(qet::NoiseParams(gamma), time);
            if (encoded) {
                print_value("P*_s", qet::p_survival_encoded(ps).value());
            } else {
                print_value("P_s", ps.value());
            }
        } else if (cmd_timing->parsed()) {
            print_value("P_t", qet::p_timing(qet::TimingModel(tau), ted).value());
        } else if (cmd_ratio->parsed()) {
            const qet::StorageSchedule sched(time, ted, 1);
            warn_if_slow_correction(sched);
            print_value("R", qet::efficiency_ratio(qet::NoiseParams(gamma), qet::TimingModel(tau), sched));
        } else if (cmd_contour->parsed()) {
            const qet::GridSpec tau_grid("tau", tau_min, tau_max, tau_points,
                                         tau_log ? qet::GridSpacing::logarithmic
                                                 : qet::GridSpacing::linear);
            const qet::GridSpec ted_grid("ted", ted_min, ted_max, ted_points,
                                         ted_log ? qet::GridSpacing::logarithmic
                                                 : qet::GridSpacing::linear);
            const qet::ContourGrid grid =
                qet::ratio_contour_grid(qet::NoiseParams(gamma), time, tau_grid, ted_grid, threads);
            write_output(out_path, as_json ? qet::contour_json(grid) : qet::contour_csv(grid));
        } else if (cmd_repeat->parsed()) {
            warn_if_slow_correction(qet::StorageSchedule(time, ted, 1));
            const qet::RepetitionScan scan = qet::optimize_repetitions(
                qet::NoiseParams(gamma), qet::TimingModel(tau), time, ted, nmax);
            if (scan.at_scan_edge) {
                std::fprintf(stderr, "warning: optimum sits at nmax = %d; the true maximum may lie beyond\n", nmax);
            }
            write_output(out_path, as_json ? qet::repetition_json(scan) : qet::repetition_csv(scan));
            if (out_path.empty()) {
                std::fprintf(stderr, "N_opt = %d\n", scan.n_opt);
            } else {
                std::printf("N_opt = %d\n", scan.n_opt);
            }
        } else if (cmd_validate->parsed()) {
            qet::ValidationOptions opts;
            opts.seed = seed;
            opts.verbosity = verbose ? 1 : 0;
            const qet::ValidationReport report = qet::validate_suite(opts);
            std::fputs(report.to_text(opts.verbosity).c_str(), stdout);
            return report.all_passed() ? 0 : 1;
        } else if (cmd_boundary->parsed()) {
            const qet::TimingModel timing(boundary_tau);
            const auto report = qet::ratio_unity_report(gammas, timing, time);
            std::fputs(qet::boundary_report_text(report, timing, time).c_str(), stdout);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
