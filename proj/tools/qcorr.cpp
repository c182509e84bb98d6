// Copyright 2026 The qcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qcorr command-line interface.
//
// All angles are Bloch-sphere angles in radians (--degrees switches the
// inputs to degrees). A laboratory polarizer at angle theta_L corresponds to
// the Bloch angle theta = 2 theta_L.
//
// Exit codes: 0 success, 2 usage error, 3 verification failure, 4 I/O error.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qcorr/qcorr.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitVerify = 3;
constexpr int kExitIo = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    double theta = std::numbers::pi / 3.0;
    double p = 0.5;
    double phi_start = -std::numbers::pi;
    double phi_stop = std::numbers::pi;
    std::size_t phi_count = 25;
    std::uint64_t counts = 10000;
    std::uint64_t seed = 1;
    std::string format = "csv";
    std::string out;
    bool degrees = false;
};

/// Values given on the command line; unset ones fall back to the config file.
struct Flags {
    std::optional<double> theta, p, phi_start, phi_stop;
    std::optional<std::size_t> phi_count;
    std::optional<std::uint64_t> counts, seed;
    std::optional<std::string> format, out, config;
    bool degrees = false;
    bool verify = false;
};

bool parse_bool(const std::string& v) {
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    throw UsageError("invalid boolean '" + v + "'");
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

/// Plain key=value lines; '#' starts a comment. Keys may use '-' or '_'.
void apply_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        for (auto& c : key)
            if (c == '-') c = '_';
        try {
            if (key == "theta") cfg.theta = std::stod(val);
            else if (key == "p") cfg.p = std::stod(val);
            else if (key == "phi_start") cfg.phi_start = std::stod(val);
            else if (key == "phi_stop") cfg.phi_stop = std::stod(val);
            else if (key == "phi_count") cfg.phi_count = std::stoul(val);
            else if (key == "counts") cfg.counts = std::stoull(val);
            else if (key == "seed") cfg.seed = std::stoull(val);
            else if (key == "format") cfg.format = val;
            else if (key == "out") cfg.out = val;
            else if (key == "degrees") cfg.degrees = parse_bool(val);
            else throw UsageError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        } catch (const std::logic_error&) {
            throw UsageError(path + ":" + std::to_string(lineno) + ": bad value for '" + key + "'");
        }
    }
}

RunConfig resolve(const Flags& f) {
    RunConfig cfg;
    if (f.config) apply_config_file(*f.config, cfg);
    if (f.theta) cfg.theta = *f.theta;
    if (f.p) cfg.p = *f.p;
    if (f.phi_start) cfg.phi_start = *f.phi_start;
    if (f.phi_stop) cfg.phi_stop = *f.phi_stop;
    if (f.phi_count) cfg.phi_count = *f.phi_count;
    if (f.counts) cfg.counts = *f.counts;
    if (f.seed) cfg.seed = *f.seed;
    if (f.format) cfg.format = *f.format;
    if (f.out) cfg.out = *f.out;
    if (f.degrees) cfg.degrees = true;
    if (cfg.degrees) {
        constexpr double k = std::numbers::pi / 180.0;
        cfg.theta *= k;
        cfg.phi_start *= k;
        cfg.phi_stop *= k;
    }
    if (!(cfg.theta >= 0.0 && cfg.theta <= std::numbers::pi + 1e-12)) throw UsageError("--theta must lie in [0, pi]");
    if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) throw UsageError("--p must lie in [0, 1]");
    if (cfg.phi_count < 2) throw UsageError("--phi-count must be >= 2");
    if (cfg.counts < 1) throw UsageError("--counts must be >= 1");
    if (cfg.format != "csv" && cfg.format != "json") throw UsageError("--format must be csv or json");
    return cfg;
}

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--theta", f.theta, "aperture angle theta (Bloch sphere)");
    cmd->add_option("--p", f.p, "weight p of |theta theta>");
    cmd->add_option("--phi-start", f.phi_start, "first measurement angle");
    cmd->add_option("--phi-stop", f.phi_stop, "last measurement angle");
    cmd->add_option("--phi-count", f.phi_count, "number of measurement angles");
    cmd->add_option("--counts", f.counts, "trials per measurement setting");
    cmd->add_option("--seed", f.seed, "random seed");
    cmd->add_option("--format", f.format, "output format: csv or json");
    cmd->add_option("--out", f.out, "output path");
    cmd->add_option("--config", f.config, "key=value config file (flags override)");
    cmd->add_flag("--degrees", f.degrees, "input angles are in degrees");
}

/// Writes to `path`, or to stdout when path is empty.
template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
    if (path.empty()) {
        fn(std::cout);
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open output file " + path);
    fn(os);
    os.flush();
    if (!os) throw IoError("failed writing " + path);
}

void write_table(std::ostream& os, const qcorr::Table& t, const std::string& format) {
    if (format == "json")
        qcorr::write_json(os, t);
    else
        qcorr::write_csv(os, t);
}

nlohmann::ordered_json report_json(const qcorr::CorrelationReport& r) {
    nlohmann::ordered_json j;
    j["theta"] = r.theta;
    j["p"] = r.p;
    j["P_AB"] = r.purity_ab;
    j["P_B"] = r.purity_b;
    j["P_cond_max"] = r.purity_cond_max;
    j["phi_star_cond"] = r.phi_star_cond;
    j["discord"] = r.discord;
    j["S_AB_vn"] = r.entropy_ab;
    j["S_B_vn"] = r.entropy_b;
    j["S_cond_vn"] = r.entropy_cond;
    j["concurrence_AC"] = r.concurrence_ac;
    j["I2_min"] = r.i2_min;
    j["phi_star_deficit"] = r.phi_star_deficit;
    j["I2_renyi_min"] = r.i2_renyi_min;
    j["theta_c_flag"] = r.theta_c_flag;
    j["theta_beyond_half_pi"] = r.beyond_half_pi;
    j["phi_star_cond_degenerate"] = r.cond_degenerate;
    j["phi_star_deficit_degenerate"] = r.deficit_degenerate;
    return j;
}

void print_structured(std::ostream& os, const nlohmann::ordered_json& j) {
    for (const auto& [k, v] : j.items()) {
        os << k << ": ";
        if (v.is_number_float())
            os << qcorr::format_number(v.get<double>());
        else
            os << v.dump();
        os << '\n';
    }
}

nlohmann::ordered_json verify_json(const qcorr::VerifyReport& rep) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& d : rep.deltas) j["delta_" + d.name] = d.delta;
    j["verification"] = rep.pass() ? "PASS" : "FAIL";
    return j;
}

int cmd_report(const Flags& f) {
    const RunConfig cfg = resolve(f);
    const qcorr::ThetaPState s(cfg.theta, cfg.p);
    auto j = report_json(qcorr::make_report(s));
    bool ok = true;
    if (f.verify) {
        const auto rep = qcorr::verify_point(s);
        ok = rep.pass();
        const auto vj = verify_json(rep);
        for (const auto& [k, v] : vj.items()) j[k] = v;
    }
    with_output(cfg.out, [&](std::ostream& os) {
        if (cfg.format == "json")
            os << j.dump(2) << '\n';
        else
            print_structured(os, j);
    });
    return ok ? kExitOk : kExitVerify;
}

int cmd_scan(const Flags& f) {
    const RunConfig cfg = resolve(f);
    const qcorr::ThetaPState s(cfg.theta, cfg.p);
    const auto t = qcorr::scan_table(s, qcorr::linspace(cfg.phi_start, cfg.phi_stop, cfg.phi_count));
    with_output(cfg.out, [&](std::ostream& os) { write_table(os, t, cfg.format); });
    return kExitOk;
}

int cmd_figure(const Flags& f, const std::string& which) {
    const RunConfig cfg = resolve(f);
    qcorr::FigureConfig fc;
    fc.theta = cfg.theta;
    fc.counts = cfg.counts;
    fc.seed = cfg.seed;
    fc.mc_phis = qcorr::linspace(cfg.phi_start, cfg.phi_stop, cfg.phi_count);

    std::vector<std::pair<std::string, qcorr::Figure>> figs;
    if (which == "fig1" || which == "all") figs.emplace_back("fig1", qcorr::Figure::fig1);
    if (which == "fig2" || which == "all") figs.emplace_back("fig2", qcorr::Figure::fig2);
    if (which == "fig4" || which == "all") figs.emplace_back("fig4", qcorr::Figure::fig4);
    if (which == "fig5" || which == "all") figs.emplace_back("fig5", qcorr::Figure::fig5);
    if (figs.empty()) throw UsageError("figure must be one of fig1, fig2, fig4, fig5, all");

    const std::filesystem::path dir = cfg.out.empty() ? std::filesystem::path("figures") : std::filesystem::path(cfg.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    for (const auto& [name, fig] : figs) {
        for (const auto& [stem, table] : qcorr::figure_tables(fig, fc)) {
            const auto path = dir / (stem + "." + cfg.format);
            with_output(path.string(), [&](std::ostream& os) { write_table(os, table, cfg.format); });
            std::cout << path.string() << '\n';
        }
    }
    return kExitOk;
}

int cmd_experiment(const Flags& f) {
    const RunConfig cfg = resolve(f);
    const qcorr::ThetaPState s(cfg.theta, cfg.p);
    const auto phis = qcorr::linspace(cfg.phi_start, cfg.phi_stop, cfg.phi_count);
    const auto run = qcorr::run_experiment_pipeline(s, phis, cfg.counts, cfg.seed);

    std::vector<double> e_r, e_pc, e_avg, e_d, e_i2;
    int skipped = 0;
    for (const auto& rec : run.records) {
        const auto e = qcorr::estimator_errors(s, rec);
        e_r.push_back(e.r_plus);
        if (e.purity_cond_plus) e_pc.push_back(*e.purity_cond_plus);
        if (e.purity_cond_minus) e_pc.push_back(*e.purity_cond_minus);
        e_avg.push_back(e.purity_avg);
        e_d.push_back(e.discord_phi);
        e_i2.push_back(e.info_deficit);
        skipped += rec.plus_skipped + rec.minus_skipped;
    }
    const auto max_of = [](const std::vector<double>& v) { return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()); };

    nlohmann::ordered_json summary;
    summary["theta"] = cfg.theta;
    summary["p"] = cfg.p;
    summary["counts"] = cfg.counts;
    summary["seed"] = cfg.seed;
    summary["preparation_fidelity"] = run.preparation.fidelity_vs_truth.value_or(0.0);
    summary["P_AB_hat"] = run.purity_ab_hat;
    summary["P_AB"] = qcorr::purity_ab(s);
    summary["median_err_r_plus"] = qcorr::median(e_r);
    summary["max_err_r_plus"] = max_of(e_r);
    summary["median_err_P_cond"] = qcorr::median(e_pc);
    summary["max_err_P_cond"] = max_of(e_pc);
    summary["median_err_P_avg"] = qcorr::median(e_avg);
    summary["max_err_P_avg"] = max_of(e_avg);
    summary["median_err_D_phi"] = qcorr::median(e_d);
    summary["max_err_D_phi"] = max_of(e_d);
    summary["median_err_I2_phi"] = qcorr::median(e_i2);
    summary["max_err_I2_phi"] = max_of(e_i2);
    summary["skipped_branches"] = skipped;

    const auto table = qcorr::mc_table(run);
    if (!cfg.out.empty()) {
        with_output(cfg.out, [&](std::ostream& os) { write_table(os, table, cfg.format); });
    } else {
        write_table(std::cout, table, cfg.format);
        std::cout << '\n';
    }
    if (cfg.format == "json")
        std::cout << summary.dump(2) << '\n';
    else
        print_structured(std::cout, summary);
    return kExitOk;
}

/// Closed forms vs. oracle at one point (when --theta/--p are given) or on a
/// standard grid.
int cmd_verify(const Flags& f) {
    const RunConfig cfg = resolve(f);
    std::vector<qcorr::ThetaPState> points;
    if (f.theta || f.p || f.config) {
        points.emplace_back(cfg.theta, cfg.p);
    } else {
        for (int i = 1; i <= 10; ++i)
            for (const double p : {0.5, 0.6, 0.7, 0.8, 0.9}) points.emplace_back(0.05 * i * std::numbers::pi, p);
    }
    bool ok = true;
    with_output(cfg.out, [&](std::ostream& os) {
        for (const auto& s : points) {
            const auto rep = qcorr::verify_point(s);
            double worst = 0.0;
            std::string worst_name = "-";
            for (const auto& d : rep.deltas)
                if (d.delta / d.tolerance > worst) {
                    worst = d.delta / d.tolerance;
                    worst_name = d.name;
                }
            os << (rep.pass() ? "PASS" : "FAIL") << " theta=" << qcorr::format_number(s.theta())
               << " p=" << qcorr::format_number(s.p()) << " worst=" << worst_name
               << " ratio=" << qcorr::format_number(worst) << '\n';
            ok = ok && rep.pass();
        }
        os << "verification " << (ok ? "PASS" : "FAIL") << '\n';
    });
    return ok ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qcorr: conditional purity, discord and information deficits of two-qubit (theta, p) states"};
    app.require_subcommand(1);

    Flags f_report, f_scan, f_figure, f_experiment, f_verify;
    std::string which;

    auto* report = app.add_subcommand("report", "all correlation measures at one (theta, p)");
    add_common(report, f_report);
    report->add_flag("--verify", f_report.verify, "cross-check closed forms against the brute-force oracle");

    auto* scan = app.add_subcommand("scan", "closed-form measures along a phi grid");
    add_common(scan, f_scan);

    auto* figure = app.add_subcommand("figure", "emit figure data files (fig1, fig2, fig4, fig5, all)");
    figure->add_option("which", which, "figure")->required();
    add_common(figure, f_figure);

    auto* experiment = app.add_subcommand("experiment", "Monte Carlo emulation of the measurement pipeline");
    add_common(experiment, f_experiment);

    auto* verify = app.add_subcommand("verify", "closed forms vs. oracle consistency check");
    add_common(verify, f_verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*report) return cmd_report(f_report);
        if (*scan) return cmd_scan(f_scan);
        if (*figure) return cmd_figure(f_figure, which);
        if (*experiment) return cmd_experiment(f_experiment);
        if (*verify) return cmd_verify(f_verify);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const qcorr::InvalidArgumentError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitUsage;
}
