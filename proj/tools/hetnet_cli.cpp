// hetnet: two-tier downlink coverage laboratory.
// Subcommands: coverage | simulate | compare | asymptotic | plotdata |
// optimal-u. Exit codes: 0 ok, 2 config error, 3 numeric failure, 4 internal.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hetnet/analysis.hpp"
#include "hetnet/asymptotics.hpp"
#include "hetnet/config.hpp"
#include "hetnet/montecarlo.hpp"

namespace {

using hetnet::ConfigError;
using hetnet::NumericError;

std::string fmt9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> vals;
    if (text.find(':') != std::string::npos) {
        double start, stop, step;
        char c1, c2;
        std::istringstream is(text);
        if (!(is >> start >> c1 >> stop >> c2 >> step) || c1 != ':' ||
            c2 != ':' || step <= 0.0)
            throw ConfigError("bad grid spec '" + text +
                              "' (want START:STOP:STEP with STEP > 0)");
        for (double v = start; v <= stop + 1e-9 * std::abs(step); v += step)
            vals.push_back(v);
    } else {
        std::istringstream is(text);
        std::string tok;
        while (std::getline(is, tok, ','))
            if (!tok.empty()) vals.push_back(std::stod(tok));
    }
    if (vals.empty()) throw ConfigError("empty grid spec '" + text + "'");
    return vals;
}

struct CommonFlags {
    std::string config_path;
    std::string beta_db = "10";
    long trials = 100000;
    std::uint64_t seed = 12345;
    std::string mode = "approx";
    std::string out;
    int threads = 0;
    double window_radius = 0.0;
    std::optional<int> u;
    std::optional<double> t1, t2;
};

hetnet::ParamBundle load_bundle(const CommonFlags& f) {
    std::ifstream in(f.config_path);
    if (!in) throw ConfigError("cannot open config file " + f.config_path);
    std::stringstream ss;
    ss << in.rdbuf();
    hetnet::ParamBundle b = hetnet::parse_config(ss.str());
    if (f.u) b.in.u_max = *f.u;
    if (f.t1) b.in.t1 = *f.t1;
    if (f.t2) b.in.t2 = *f.t2;
    hetnet::validate(b.net);
    hetnet::validate(b.in, b.net);
    return b;
}

hetnet::SimOptions sim_options(const CommonFlags& f) {
    hetnet::SimOptions opts;
    if (f.mode == "full")
        opts.mode = hetnet::SchedulingMode::kFull;
    else if (f.mode == "approx")
        opts.mode = hetnet::SchedulingMode::kApprox;
    else
        throw ConfigError("mode must be approx or full");
    opts.threads = f.threads;
    opts.window_radius = f.window_radius;
    return opts;
}

class Sink {
  public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw ConfigError("cannot open output file " + path);
        }
    }
    std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

void cmd_coverage(const CommonFlags& f) {
    const auto b = load_bundle(f);
    const hetnet::CoverageEngine eng(b.net, b.in, b.quad);
    Sink sink(f.out);
    for (double db : parse_grid(f.beta_db)) {
        const auto r = eng.coverage(db_to_lin(db));
        nlohmann::ordered_json j;
        j["beta_db"] = db;
        j["a1"] = r.a1;
        j["a2"] = r.a2;
        j["s1"] = r.s1;
        j["s2"] = r.s2;
        j["s"] = r.s;
        if (b.in.is_non_in()) j["mode"] = "non-IN";
        sink.out() << j.dump() << "\n";
    }
}

void cmd_simulate(const CommonFlags& f) {
    if (f.trials < 1) throw ConfigError("trials must be >= 1");
    const auto b = load_bundle(f);
    const auto grid = parse_grid(f.beta_db);
    std::vector<double> betas;
    for (double db : grid) betas.push_back(db_to_lin(db));
    const auto est = hetnet::estimate_coverage(b.net, b.in, betas, f.trials,
                                               f.seed, sim_options(f), b.quad);
    Sink sink(f.out);
    sink.out() << "beta_db,s_mc,ci95,trials,seed\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
        sink.out() << fmt9(grid[i]) << ',' << fmt9(est[i].mean) << ','
                   << fmt9(est[i].ci_halfwidth_95) << ',' << est[i].trials
                   << ',' << est[i].seed << "\n";
}

void cmd_compare(const CommonFlags& f) {
    if (f.trials < 1) throw ConfigError("trials must be >= 1");
    const auto b = load_bundle(f);
    const hetnet::CoverageEngine eng(b.net, b.in, b.quad);
    const auto grid = parse_grid(f.beta_db);
    std::vector<double> betas;
    for (double db : grid) betas.push_back(db_to_lin(db));
    const auto est = hetnet::estimate_coverage(b.net, b.in, betas, f.trials,
                                               f.seed, sim_options(f), b.quad);
    Sink sink(f.out);
    sink.out() << "beta_db,s_analytical,s1,s2,s_mc,ci95,rel_gap\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto r = eng.coverage(betas[i]);
        const double gap = std::abs(r.s - est[i].mean) / r.s;
        sink.out() << fmt9(grid[i]) << ',' << fmt9(r.s) << ',' << fmt9(r.s1)
                   << ',' << fmt9(r.s2) << ',' << fmt9(est[i].mean) << ','
                   << fmt9(est[i].ci_halfwidth_95) << ',' << fmt9(gap) << "\n";
    }
}

std::string join_set(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += '|';
        s += std::to_string(v[i]);
    }
    return s;
}

void cmd_asymptotic(const CommonFlags& f, const std::string& u_list) {
    const auto b = load_bundle(f);
    std::vector<int> us;
    if (!u_list.empty())
        for (double v : parse_grid(u_list)) us.push_back(int(std::lround(v)));
    else
        for (int u = 0; u <= b.net.n1 - b.net.n2; ++u) us.push_back(u);
    Sink sink(f.out);
    sink.out() << "u,d,b1,b2,b,u_star_d,u_star\n";
    for (int u : us) {
        hetnet::InParams params = b.in;
        params.u_max = u;
        if (u == 0) params.t1 = params.t2 = 1.0;  // non-IN row
        hetnet::validate(params, b.net);
        const auto r = hetnet::asymptotic_outage(1e-5, b.net, params, b.quad);
        sink.out() << u << ',' << r.d << ',' << fmt9(r.b1) << ',' << fmt9(r.b2)
                   << ',' << fmt9(r.b) << ',' << join_set(r.u_star_d) << ','
                   << r.u_star << "\n";
    }
}

void cmd_optimal_u(const CommonFlags& f) {
    const auto b = load_bundle(f);
    if (b.in.t1 <= 1.0 || b.in.t2 <= 1.0)
        throw ConfigError("optimal-u requires t1 > 1 and t2 > 1");
    const auto r =
        hetnet::optimal_u_asymptotic(b.net, b.in.t1, b.in.t2, b.quad);
    nlohmann::ordered_json j;
    j["u_star"] = r.u_star;
    j["coeff_below"] = r.coeff_below;
    j["coeff_at"] = r.coeff_at;
    j["u_star_d"] = hetnet::optimal_u_order(b.net);
    Sink sink(f.out);
    sink.out() << j.dump() << "\n";
}

const char* kPlotScript = R"PY(#!/usr/bin/env python3
"""Render the figure CSVs emitted next to this script."""
import csv
import os
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))


def read_csv(name):
    with open(os.path.join(here, name)) as fh:
        rows = list(csv.DictReader(fh))
    cols = {k: [float(r[k]) for r in rows] for k in rows[0]}
    return cols


def maybe_threshold_sweep():
    path = os.path.join(here, "threshold_sweep.csv")
    if not os.path.exists(path):
        return
    c = read_csv("threshold_sweep.csv")
    fig, ax = plt.subplots()
    ax.semilogx(c["t"], c["s_analytical"], "o-", label="analytical")
    ax.semilogx(c["t"], c["s_mc"], "s--", label="monte carlo")
    ax.set_xlabel("IN threshold T1 = T2")
    ax.set_ylabel("coverage probability")
    ax.legend()
    fig.savefig(os.path.join(here, "threshold_sweep.png"), dpi=150)


def maybe_beta_sweep():
    path = os.path.join(here, "beta_sweep.csv")
    if not os.path.exists(path):
        return
    c = read_csv("beta_sweep.csv")
    fig, ax = plt.subplots()
    for key in c:
        if key == "beta":
            continue
        style = ":" if key.endswith("_asym") else "-"
        ax.loglog(c["beta"], c[key], style, label=key)
    ax.set_xlabel("SIR threshold (linear)")
    ax.set_ylabel("outage probability")
    ax.legend(fontsize=7)
    fig.savefig(os.path.join(here, "beta_sweep.png"), dpi=150)


if __name__ == "__main__":
    maybe_threshold_sweep()
    maybe_beta_sweep()
    print("plots written to", here)
)PY";

void cmd_plotdata(const CommonFlags& f, std::string figure,
                  const std::string& out_dir) {
    // short aliases kept for scripting convenience
    if (figure == "fig2a") figure = "threshold-sweep";
    if (figure == "fig2b") figure = "beta-sweep";
    const auto b = load_bundle(f);
    std::filesystem::create_directories(out_dir);
    const auto path = [&](const std::string& n) {
        return (std::filesystem::path(out_dir) / n).string();
    };
    if (figure == "threshold-sweep") {
        const std::vector<double> ts = {1, 2, 5, 10, 20, 50};
        const double beta = db_to_lin(10.0);
        std::ofstream csv(path("threshold_sweep.csv"));
        csv << "t,s_analytical,s_mc\n";
        for (double t : ts) {
            hetnet::InParams params = b.in;
            if (t <= 1.0) {
                params = {0, 1.0, 1.0};
            } else {
                params.t1 = params.t2 = t;
                if (params.u_max == 0) params.u_max = b.net.n1 - 1;
            }
            const hetnet::CoverageEngine eng(b.net, params, b.quad);
            const auto est = hetnet::estimate_coverage(
                b.net, params, {beta}, f.trials, f.seed, sim_options(f),
                b.quad);
            csv << fmt9(t) << ',' << fmt9(eng.coverage(beta).s) << ','
                << fmt9(est[0].mean) << "\n";
        }
    } else if (figure == "beta-sweep") {
        struct Triple {
            int u;
            double t1, t2;
        };
        const int um = b.net.n1 - b.net.n2;
        const std::vector<Triple> triples = {{0, 1.0, 1.0},
                                             {um, 5.0, 5.0},
                                             {um, 10.0, 10.0},
                                             {b.net.n1 - 1, 5.0, 5.0},
                                             {b.net.n1 - 1, 10.0, 10.0}};
        std::vector<double> betas;
        for (int i = 0; i < 9; ++i)
            betas.push_back(1e-5 * std::pow(10.0, i / 4.0));
        std::ofstream csv(path("beta_sweep.csv"));
        csv << "beta";
        for (const auto& t : triples) {
            const std::string tag = "u" + std::to_string(t.u) + "_t" +
                                    fmt9(t.t1) + "_" + fmt9(t.t2);
            csv << ",out_" << tag << ",out_" << tag << "_asym";
        }
        csv << "\n";
        std::vector<std::vector<double>> cols;
        for (const auto& t : triples) {
            const hetnet::InParams params{t.u, t.t1, t.t2};
            hetnet::validate(params, b.net);
            const hetnet::CoverageEngine eng(b.net, params, b.quad);
            const auto asym =
                hetnet::asymptotic_outage(1.0, b.net, params, b.quad);
            std::vector<double> out, asy;
            for (double beta : betas) {
                out.push_back(eng.outage(beta));
                asy.push_back(asym.b * std::pow(beta, asym.d));
            }
            cols.push_back(out);
            cols.push_back(asy);
        }
        for (std::size_t i = 0; i < betas.size(); ++i) {
            csv << fmt9(betas[i]);
            for (const auto& col : cols) csv << ',' << fmt9(col[i]);
            csv << "\n";
        }
    } else {
        throw ConfigError("figure must be threshold-sweep or beta-sweep");
    }
    std::ofstream script(path("plot.py"));
    script << kPlotScript;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-tier downlink interference-nulling laboratory"};
    app.require_subcommand(1);
    CommonFlags f;
    std::string u_list, figure = "threshold-sweep", out_dir = ".";

    auto add_common = [&](CLI::App* sub, bool with_mc) {
        sub->add_option("--config", f.config_path, "JSON config path")
            ->required();
        sub->add_option("--beta-db", f.beta_db,
                        "SIR threshold grid, dB: LIST or START:STOP:STEP");
        sub->add_option("--u", f.u, "override u_max");
        sub->add_option("--t1", f.t1, "override t1");
        sub->add_option("--t2", f.t2, "override t2");
        sub->add_option("--out", f.out, "output file (default stdout)");
        if (with_mc) {
            sub->add_option("--trials", f.trials, "Monte Carlo trials");
            sub->add_option("--seed", f.seed, "master RNG seed");
            sub->add_option("--mode", f.mode, "approx|full");
            sub->add_option("--threads", f.threads, "worker threads (0=auto)");
            sub->add_option("--window-radius", f.window_radius,
                            "simulation window radius (0=auto)");
        }
    };
    add_common(app.add_subcommand("coverage", "analytical coverage"), false);
    add_common(app.add_subcommand("simulate", "Monte Carlo coverage"), true);
    add_common(app.add_subcommand("compare", "cross-validate the engines"),
               true);
    auto* asym = app.add_subcommand("asymptotic", "small-beta outage table");
    add_common(asym, false);
    asym->add_option("--u-list", u_list, "U values (LIST or START:STOP:STEP)");
    add_common(app.add_subcommand("optimal-u", "asymptotically optimal U"),
               false);
    auto* plot = app.add_subcommand("plotdata", "figure CSV + plot script");
    add_common(plot, true);
    plot->add_option("--figure", figure, "threshold-sweep|beta-sweep");
    plot->add_option("--out-dir", out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("coverage")) cmd_coverage(f);
        else if (app.got_subcommand("simulate")) cmd_simulate(f);
        else if (app.got_subcommand("compare")) cmd_compare(f);
        else if (app.got_subcommand("asymptotic")) cmd_asymptotic(f, u_list);
        else if (app.got_subcommand("optimal-u")) cmd_optimal_u(f);
        else if (app.got_subcommand("plotdata")) cmd_plotdata(f, figure, out_dir);
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
