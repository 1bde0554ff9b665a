#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numeric>
#include <string>

#include "CLI11.hpp"
#include "hawkes/config.hpp"
#include "hawkes/csv.hpp"
#include "hawkes/errors.hpp"
#include "hawkes/experiments.hpp"
#include "hawkes/meanfield.hpp"
#include "hawkes/parallel.hpp"
#include "hawkes/simulate.hpp"
#include "hawkes/stable.hpp"
#include "hawkes/svg.hpp"
#include "hawkes/verify.hpp"

namespace fs = std::filesystem;
using namespace hawkes;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir = "out";
    std::string format = "csv";
    int threads = 0;
    bool has_seed = false;
    std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool config_required = true) {
    auto* copt = cmd->add_option("--config", o.config_path, "run configuration file");
    if (config_required) copt->required();
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--seed", o.seed, "override the config seed")
        ->each([&o](const std::string&) { o.has_seed = true; });
    cmd->add_option("--threads", o.threads, "worker thread count (0 = all cores)");
    cmd->add_option("--format", o.format, "csv | svg | both")
        ->check(CLI::IsMember({"csv", "svg", "both"}));
}

RunConfig load(const CommonOpts& o) {
    RunConfig rc = parse_config(o.config_path);
    if (o.has_seed) rc.seed = o.seed;
    set_threads(o.threads);
    fs::create_directories(o.out_dir);
    return rc;
}

std::vector<std::string> config_echo(const RunConfig& rc) {
    std::vector<std::string> lines;
    std::string text = rc.canonical_text();
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    for (const auto& d : rc.applied_defaults) lines.push_back("default: " + d);
    return lines;
}

Table convergence_to_table(const ConvergenceTable& ct, int L) {
    Table t;
    t.header = {"t", "site", "estimate", "theory", "abs_err", "mc_stderr"};
    for (const auto& r : ct.rows)
        t.rows.push_back({r.t, static_cast<double>(r.site - L), r.estimate, r.theory, r.abs_err,
                          r.mc_stderr});
    return t;
}

void maybe_plot_table(const ConvergenceTable& ct, const RunConfig& rc, const CommonOpts& o,
                      const std::string& stem, const std::string& title) {
    if (o.format == "csv") return;
    std::vector<Series> series;
    for (int d : rc.site_displacements) {
        Series s;
        s.name = "site " + std::to_string(d);
        for (const auto& r : ct.rows)
            if (r.site == d + rc.L) {
                s.x.push_back(r.t);
                s.y.push_back(r.estimate);
            }
        series.push_back(std::move(s));
    }
    emit_svg_lines(series, o.out_dir + "/" + stem + ".svg", SvgScale::Linear, title);
}

int cmd_theta(const CommonOpts& o) {
    RunConfig rc = load(o);
    const TemporalKernel k = rc.make_kernel();
    const KernelAnalysis an = k.analyze();
    Table t;
    t.header = {"I", "regime", "theta", "m_bar", "kappa", "laplace_at_theta"};
    const double regime_code = an.regime == Regime::SubCritical  ? 0.0
                               : an.regime == Regime::Critical   ? 1.0
                                                                 : 2.0;
    t.rows.push_back({an.I, regime_code, an.theta.value_or(std::nan("")),
                      an.m_bar.value_or(std::nan("")), k.bound_kappa(),
                      an.theta ? k.laplace(*an.theta) : std::nan("")});
    emit_csv_with_comments(t, o.out_dir + "/theta.csv", rc.seed, rc.config_hash(),
                           config_echo(rc));
    std::printf("I = %.12g  regime = %s\n", an.I, regime_name(an.regime).c_str());
    if (an.theta) std::printf("theta = %.12g  m_bar = %.12g\n", *an.theta, *an.m_bar);
    return 0;
}

int cmd_lattice_powers(const CommonOpts& o) {
    RunConfig rc = load(o);
    const LatticeKernel lat = rc.make_lattice();
    Table t;
    t.header = {"n", "displacement", "mass"};
    for (int n : rc.powers) {
        const auto row = lat.power_row(n);
        for (int d = -rc.L; d <= rc.L; ++d)
            t.rows.push_back({static_cast<double>(n), static_cast<double>(d),
                              row[static_cast<std::size_t>(d + rc.L)]});
    }
    auto comments = config_echo(rc);
    if (rc.alpha >= 2.0)
        comments.push_back(
            "note: the spatial averaging limit is only backed for alpha in (0,2); "
            "rows for alpha >= 2 are computed but outside that hypothesis");
    emit_csv_with_comments(t, o.out_dir + "/lattice_powers.csv", rc.seed, rc.config_hash(),
                           comments);
    std::printf("wrote %s (%zu rows)\n", (o.out_dir + "/lattice_powers.csv").c_str(),
                t.rows.size());
    return 0;
}

int cmd_stable_check(const CommonOpts& o) {
    RunConfig rc = load(o);
    if (std::abs(rc.alpha - 1.0) < 1e-12)
        throw ConfigError("stable-check: alpha = 1 is excluded from the stable-law suite "
                          "(supported tail exponents are (0,2) excluding 1)");
    if (!(rc.alpha < 2.0))
        throw ConfigError("stable-check: alpha must lie in (0, 2)");
    for (int n : rc.stable_n)
        if (n < 1 || n > 512)
            throw ConfigError("stable-check: stable.n entries must lie in [1, 512] "
                              "(the walk window M = 64 n^2 grows quadratically)");
    const double max_deficit =
        rc.stable_max_deficit.value_or(rc.alpha < 1.0 ? 0.2 : 0.01);
    Table t;
    t.header = {"alpha", "n", "sup_error", "rescaled_sup_error", "tv_error", "deficit",
                "c_scale"};
    for (int n : rc.stable_n) {
        const long long m = 64LL * n * n;
        const LltResult r = llt_errors(rc.alpha, n, static_cast<int>(m), max_deficit);
        t.rows.push_back({rc.alpha, static_cast<double>(n), r.sup_error, r.rescaled_sup_error,
                          r.tv_error, r.deficit, r.c_scale});
        std::printf("alpha=%g n=%d sup=%.4g rescaled=%.4g tv=%.4g deficit=%.4g\n", rc.alpha, n,
                    r.sup_error, r.rescaled_sup_error, r.tv_error, r.deficit);
    }
    emit_csv_with_comments(t, o.out_dir + "/stable_check.csv", rc.seed, rc.config_hash(),
                           config_echo(rc));
    return 0;
}

int cmd_meanfield(const CommonOpts& o) {
    RunConfig rc = load(o);
    const TemporalKernel kernel = rc.make_kernel();
    const LatticeKernel lattice = rc.make_lattice();
    const MeanFieldSolution sol = solve_volterra(kernel, lattice, rc.make_mu(), rc.T, rc.h);
    const KernelAnalysis an = kernel.analyze();

    Table t;
    t.header = {"t", "site", "m", "x", "rescaled"};
    const int stride = std::max(1, sol.steps / 2000);
    for (int k = 0; k <= sol.steps; k += stride) {
        const double tt = sol.time_at(k);
        for (int d : rc.site_displacements) {
            const int i = d + rc.L;
            // rescaled column: e^{-theta t} m (supercritical) or m / t
            const double resc = an.theta ? std::exp(-*an.theta * tt) * sol.m_at(k, i)
                                         : (tt > 0.0 ? sol.m_at(k, i) / tt : 0.0);
            t.rows.push_back({tt, static_cast<double>(d), sol.m_at(k, i), sol.x_at(k, i), resc});
        }
    }
    emit_csv_with_comments(t, o.out_dir + "/meanfield.csv", rc.seed, rc.config_hash(),
                           config_echo(rc));
    if (o.format != "csv") {
        std::vector<Series> series;
        for (int d : rc.site_displacements) {
            Series s;
            s.name = "x site " + std::to_string(d);
            for (int k = std::max(1, stride); k <= sol.steps; k += stride) {
                s.x.push_back(sol.time_at(k));
                s.y.push_back(sol.x_at(k, d + rc.L));
            }
            series.push_back(std::move(s));
        }
        emit_svg_lines(series, o.out_dir + "/meanfield.svg",
                       an.theta ? SvgScale::LogY : SvgScale::Linear, "mean intensity x_t");
    }
    std::printf("wrote %s\n", (o.out_dir + "/meanfield.csv").c_str());
    return 0;
}

int cmd_simulate(const CommonOpts& o) {
    RunConfig rc = load(o);
    // fail fast on a target/regime mismatch before generating anything
    if (rc.target != Target::MeanFieldOnly) rc.make_plan();
    const HawkesConfig hc = rc.make_hawkes_config();
    const EventLog log = simulate_cluster(hc);
    Table t;
    t.header = {"site", "time"};
    for (int i = 0; i < hc.lattice.size(); ++i)
        for (double s : log.events[static_cast<std::size_t>(i)])
            t.rows.push_back({static_cast<double>(i - rc.L), s});
    emit_csv_with_comments(t, o.out_dir + "/events.csv", rc.seed, rc.config_hash(),
                           config_echo(rc));
    std::printf("simulated %zu events; wrote %s\n", log.total(),
                (o.out_dir + "/events.csv").c_str());
    return 0;
}

int cmd_verify(const CommonOpts& o, bool quick) {
    RunConfig rc; // verify uses canned configs; only seed/threads/out apply
    set_threads(o.threads);
    const std::uint64_t seed = o.has_seed ? o.seed : 0;
    const VerifyReport rep = run_verify(o.out_dir, seed, quick, o.format != "csv");
    for (const auto& c : rep.checks)
        std::printf("[%s] %-28s %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                    c.detail.c_str());
    if (!rep.all_pass()) return static_cast<int>(ExitCode::ToleranceFailure);
    return 0;
}

int cmd_plot(const std::string& input, const std::string& x_col,
             const std::vector<std::string>& y_cols, const std::string& scale,
             const std::string& out_path) {
    const Table t = parse_csv(input);
    const auto col_index = [&](const std::string& name) {
        for (std::size_t i = 0; i < t.header.size(); ++i)
            if (t.header[i] == name) return i;
        throw ConfigError("plot: no column named '" + name + "' in " + input);
    };
    const std::size_t xi = col_index(x_col);
    std::vector<Series> series;
    for (const auto& yc : y_cols) {
        const std::size_t yi = col_index(yc);
        Series s;
        s.name = yc;
        for (const auto& row : t.rows) {
            s.x.push_back(row[xi]);
            s.y.push_back(row[yi]);
        }
        series.push_back(std::move(s));
    }
    // carry the source table's seed and config hash into the figure
    std::uint64_t seed = 0, hash = 0;
    {
        const auto grab = [&](const std::string& key, int base) -> std::uint64_t {
            const auto pos = t.meta.find(key);
            if (pos == std::string::npos) return 0;
            return std::strtoull(t.meta.c_str() + pos + key.size(), nullptr, base);
        };
        seed = grab("seed=", 10);
        hash = grab("config-hash=", 16);
    }
    emit_svg_lines(series, out_path, scale == "log_y" ? SvgScale::LogY : SvgScale::Linear,
                   fs::path(input).filename().string(), seed, hash);
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hawkes-longrange: lattice Hawkes processes with power-law interactions"};
    app.require_subcommand(1);

    CommonOpts theta_o, lat_o, stab_o, mf_o, sim_o, ver_o;
    bool verify_quick = false;

    auto* c_theta = app.add_subcommand("theta", "kernel integral, regime, Malthusian exponent");
    add_common(c_theta, theta_o);
    auto* c_lat = app.add_subcommand("lattice-powers", "rows of A^n as CSV");
    add_common(c_lat, lat_o);
    auto* c_stab = app.add_subcommand("stable-check", "local-limit-theorem error table");
    add_common(c_stab, stab_o);
    auto* c_mf = app.add_subcommand("meanfield", "deterministic first-moment trajectories");
    add_common(c_mf, mf_o);
    auto* c_sim = app.add_subcommand("simulate", "one realization, event log export");
    add_common(c_sim, sim_o);
    auto* c_ver = app.add_subcommand("verify", "canned verification of both growth laws");
    add_common(c_ver, ver_o, false);
    c_ver->add_flag("--quick", verify_quick, "reduced replica counts (pipeline smoke profile)");

    std::string plot_input, plot_x = "t", plot_scale = "linear", plot_out = "plot.svg";
    std::vector<std::string> plot_y = {"estimate"};
    auto* c_plot = app.add_subcommand("plot", "render a CSV table as an SVG line plot");
    c_plot->add_option("input", plot_input, "CSV file produced by another subcommand")
        ->required();
    c_plot->add_option("--x", plot_x, "x column name");
    c_plot->add_option("--y", plot_y, "y column names")->delimiter(',');
    c_plot->add_option("--scale", plot_scale, "linear | log_y")
        ->check(CLI::IsMember({"linear", "log_y"}));
    c_plot->add_option("--out-file", plot_out, "output SVG path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_theta->parsed()) return cmd_theta(theta_o);
        if (c_lat->parsed()) return cmd_lattice_powers(lat_o);
        if (c_stab->parsed()) return cmd_stable_check(stab_o);
        if (c_mf->parsed()) return cmd_meanfield(mf_o);
        if (c_sim->parsed()) return cmd_simulate(sim_o);
        if (c_ver->parsed()) return cmd_verify(ver_o, verify_quick);
        if (c_plot->parsed()) return cmd_plot(plot_input, plot_x, plot_y, plot_scale, plot_out);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::ConfigError);
    } catch (const RegimeError& e) {
        std::cerr << "regime error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::RegimeError);
    } catch (const AccuracyError& e) {
        std::cerr << "accuracy error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::ToleranceFailure);
    } catch (const ExplosionError& e) {
        std::cerr << "explosion guard: " << e.what() << "\n";
        return static_cast<int>(ExitCode::ExplosionGuard);
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::ConfigError);
    }
    return 0;
}
