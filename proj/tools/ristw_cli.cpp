// SPDX-License-Identifier: Apache-2.0

// Batch front end: seeded sweeps, rate regions, single-instance optimization
// and a finite-difference gradient audit, all driven by a key-value config.

#include <ristw/ristw.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace ristw;

struct Options {
    std::string config_path = "defaults";
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    int seeds = 0;
    std::string scheme_list;
    double eta = -1.0;
    bool timing = false;
};

RunConfig load_config(const std::string& path) {
    if (path == "defaults") return default_config();
    return parse_config_file(path);
}

void apply_overrides(const Options& opt, const CLI::Option* seed_opt,
                     const CLI::Option* eta_opt, RunConfig& cfg) {
    if (seed_opt->count() > 0) cfg.sweep.seed_base = opt.seed;
    if (opt.seeds > 0) cfg.sweep.seeds = opt.seeds;
    if (eta_opt->count() > 0) {
        if (!(opt.eta >= 0.0 && opt.eta <= 1.0))
            throw domain_error("--eta must lie in [0, 1]");
        cfg.sweep.eta = opt.eta;
    }
    if (!opt.scheme_list.empty()) {
        cfg.sweep.schemes.clear();
        std::stringstream ss(opt.scheme_list);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto a = item.find_first_not_of(" \t");
            const auto b = item.find_last_not_of(" \t");
            if (a == std::string::npos) throw parse_error("--scheme: empty list element");
            cfg.sweep.schemes.push_back(scheme_from_string(item.substr(a, b - a + 1)));
        }
        if (cfg.sweep.schemes.empty()) throw parse_error("--scheme: empty list");
    }
    cfg.sweep.record_timing = opt.timing;
}

std::filesystem::path prepare_out_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw io_error("cannot create output directory '" + dir + "': " + ec.message());
    return std::filesystem::path(dir);
}

int run_batch(const RunConfig& cfg, const std::string& out_dir, bool region_mode) {
    const auto dir = prepare_out_dir(out_dir);
    const auto t0 = std::chrono::steady_clock::now();
    const auto records = run_sweep(cfg.sweep);
    const auto t1 = std::chrono::steady_clock::now();
    if (records.empty()) {
        std::cerr << "no records produced (all cells failed)\n";
        return 1;
    }

    const std::string stem = region_mode ? "region" : "sweep";
    const auto csv_path = (dir / (stem + ".csv")).string();
    const auto svg_path = (dir / (stem + ".svg")).string();
    emit_csv(records, csv_path);
    emit_plot(records, region_mode ? PlotKind::rate_region : PlotKind::sweep_lines, svg_path);

    std::cout << "wrote " << records.size() << " records to " << csv_path << "\n";
    std::cout << "wrote plot to " << svg_path << "\n";
    std::cout << "elapsed "
              << std::chrono::duration<double>(t1 - t0).count() << " s\n";

    if (region_mode) {
        for (const auto& fr : rate_region(cfg.sweep, records)) {
            std::cout << to_string(fr.scheme) << ": " << fr.frontier.size()
                      << " frontier points";
            if (!fr.frontier.empty())
                std::cout << ", r_D up to " << fr.frontier.back().rate_down
                          << ", r_U up to " << fr.frontier.front().rate_up << " bit/s/Hz";
            std::cout << "\n";
        }
    }
    return 0;
}

int run_optimize(const RunConfig& cfg, std::uint64_t seed, double eta) {
    const SystemParams& params = cfg.params;
    const auto ch = synthesize_channels(params, seed);
    const auto ctx = build_context(ch, params, eta);
    const auto sol = two_way_multistart(ctx, 1 + cfg.sweep.random_starts, seed, cfg.optimizer);

    std::cout << "scenario: F=" << params.elements() << " elements, M=" << params.bs_antennas
              << " antennas, seed=" << seed << ", eta=" << eta << "\n";
    std::cout << "r_D = " << sol.rate_down << " bit/s/Hz\n";
    std::cout << "r_U = " << sol.rate_up << " bit/s/Hz\n";
    std::cout << "objective = " << sol.objective << " bit/s/Hz\n";
    std::cout << "iterations = " << sol.trace.iterations.size() - 1 << " ("
              << to_string(sol.trace.termination) << ")\n";
    std::cout << "trace (iter, objective, grad_norm, step):\n";
    for (std::size_t i = 0; i < sol.trace.iterations.size(); ++i) {
        const auto& it = sol.trace.iterations[i];
        std::cout << "  " << i << " " << it.objective << " " << it.grad_norm << " " << it.step
                  << "\n";
    }
    return 0;
}

int run_gradcheck(std::uint64_t seed) {
    const int instances = 100;
    const int f = 16, m = 4;
    const double h = 1e-6, tol = 1e-5;
    const double etas[] = {0.0, 0.3, 0.7, 1.0};

    double worst = 0.0;
    for (int i = 0; i < instances; ++i) {
        NormalStream ns(seed, 1000 + static_cast<unsigned>(i));
        CompositeContext ctx;
        ctx.c_down = Eigen::MatrixXcd(f, m);
        ctx.c_up = Eigen::MatrixXcd(f, m);
        for (int r = 0; r < f; ++r)
            for (int c = 0; c < m; ++c) {
                ctx.c_down(r, c) = ns.complex_normal();
                ctx.c_up(r, c) = ns.complex_normal();
            }
        ctx.eta = etas[i % 4];

        Eigen::VectorXcd braw(f);
        for (int r = 0; r < f; ++r) braw[r] = std::polar(1.0, 2.0 * M_PI * ns.uniform());
        const PhaseVector b(braw);
        const Eigen::VectorXcd g = euclid_gradient(ctx, b);

        // random feasible direction with a slope large enough to measure
        Eigen::VectorXcd tang(f);
        double analytic = 0.0;
        for (int attempt = 0; attempt < 64; ++attempt) {
            for (int r = 0; r < f; ++r) tang[r] = ns.complex_normal();
            for (int r = 0; r < f; ++r)
                tang[r] -= (tang[r] * std::conj(braw[r])).real() * braw[r];
            tang /= tang.norm();
            analytic = (g.adjoint() * tang)(0).real();
            if (std::abs(analytic) >= 1e-2) break;
        }

        auto value_at = [&](const Eigen::VectorXcd& x) {
            Eigen::VectorXcd unit = x;
            for (int r = 0; r < f; ++r) unit[r] /= std::abs(unit[r]);
            return objective_f(ctx, PhaseVector(unit));
        };
        const double fd = (value_at(braw + h * tang) - value_at(braw - h * tang)) / (2.0 * h);
        worst = std::max(worst, std::abs(fd - analytic) / std::abs(analytic));
    }

    std::cout << "checked " << instances << " instances (F=" << f << ", M=" << m
              << "): max relative error = " << worst << "\n";
    if (worst < tol) {
        std::cout << "PASS (tolerance " << tol << ")\n";
        return 0;
    }
    std::cout << "FAIL (tolerance " << tol << ")\n";
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-way passive beamforming designs for an RIS-aided FDD link"};
    app.require_subcommand(1);

    Options opt;
    struct SubOpts {
        CLI::App* cmd;
        CLI::Option* seed;
        CLI::Option* eta;
    };
    auto add_common = [&opt](CLI::App* sub, bool batch) {
        sub->add_option("--config", opt.config_path,
                        "config file path, or the literal 'defaults'");
        CLI::Option* seed =
            sub->add_option("--seed", opt.seed, "base channel seed")->envname("RIS_SEED");
        if (batch) {
            sub->add_option("--seeds", opt.seeds, "realizations per sweep point");
            sub->add_option("--out", opt.out_dir, "output directory (default: out)");
            sub->add_option("--scheme", opt.scheme_list, "comma-separated scheme list");
            sub->add_flag("--timing", opt.timing,
                          "record wall-clock ms per record (not reproducible)");
        }
        CLI::Option* eta = sub->add_option("--eta", opt.eta, "downlink weight in [0, 1]");
        return SubOpts{sub, seed, eta};
    };

    SubOpts sweep_cmd = add_common(
        app.add_subcommand("sweep", "run the configured sweep; writes CSV and SVG"), true);
    SubOpts region_cmd = add_common(
        app.add_subcommand("region", "trace the rate region over a weight grid"), true);
    SubOpts optimize_cmd = add_common(
        app.add_subcommand("optimize", "solve one realization and print the trace"), false);
    SubOpts gradcheck_cmd = add_common(
        app.add_subcommand("gradcheck", "finite-difference audit of the gradient"), false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    // configuration problems are usage errors (exit 2); failures after a
    // valid setup are runtime errors (exit 1)
    RunConfig cfg;
    std::uint64_t seed = 0;
    double eta = 0.5;
    const SubOpts* active = nullptr;
    for (const SubOpts* s : {&sweep_cmd, &region_cmd, &optimize_cmd, &gradcheck_cmd})
        if (s->cmd->parsed()) active = s;
    try {
        cfg = load_config(opt.config_path);
        apply_overrides(opt, active->seed, active->eta, cfg);
        seed = active->seed->count() > 0 ? opt.seed : cfg.sweep.seed_base;
        eta = active->eta->count() > 0 ? opt.eta : cfg.sweep.eta;
        if (region_cmd.cmd->parsed()) {
            if (cfg.sweep.variable != SweepVariable::eta) {
                cfg.sweep.variable = SweepVariable::eta;
                cfg.sweep.values.clear();
                for (int i = 0; i <= 20; ++i) cfg.sweep.values.push_back(i / 20.0);
            }
            detail::check_region_spec(cfg.sweep);
        } else if (sweep_cmd.cmd->parsed()) {
            cfg.sweep.validate();
        } else {
            cfg.params.validate();
        }
    } catch (const error& e) {
        std::cerr << "error: " << e.what();
        if (opt.config_path == "defaults")
            std::cerr << "\n";
        else
            std::cerr << " (from --config " << opt.config_path << ")\n";
        return 2;
    }

    try {
        if (sweep_cmd.cmd->parsed()) return run_batch(cfg, opt.out_dir, false);
        if (region_cmd.cmd->parsed()) return run_batch(cfg, opt.out_dir, true);
        if (optimize_cmd.cmd->parsed()) return run_optimize(cfg, seed, eta);
        return run_gradcheck(seed);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
