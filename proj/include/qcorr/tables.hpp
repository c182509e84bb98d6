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

#ifndef QCORR_TABLES_HPP
#define QCORR_TABLES_HPP

// Tabular data products (phi scans, theta scans, Monte Carlo points) and
// their CSV / JSON serialization. Column names and order are part of the
// file format.

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include "json.hpp"
#include "qcorr/correlations.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/expsim.hpp"
#include "qcorr/measurement.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::size_t column_index(const std::string& name) const {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name) return i;
        throw InvalidArgumentError("no column named " + name);
    }
    std::vector<double> column(const std::string& name) const {
        const std::size_t c = column_index(name);
        std::vector<double> v;
        v.reserve(rows.size());
        for (const auto& r : rows) v.push_back(r[c]);
        return v;
    }
};

inline const std::vector<std::string>& scan_columns() {
    static const std::vector<std::string> cols{"phi",           "r_plus",        "r_minus",      "p_prime_plus",
                                               "p_prime_minus", "P_cond_plus",   "P_cond_minus", "P_avg",
                                               "D_phi",         "I2_phi"};
    return cols;
}

inline const std::vector<std::string>& theta_scan_columns() {
    static const std::vector<std::string> cols{"theta",  "P_cond_max",    "discord",
                                               "I2_min", "phi_star_cond", "phi_star_deficit"};
    return cols;
}

inline const std::vector<std::string>& mc_columns() {
    static const std::vector<std::string> cols{"phi",          "n_plus",          "n_minus",      "r_plus_hat",
                                               "r_minus_hat",  "P_cond_plus_hat", "P_cond_minus_hat",
                                               "P_avg_hat",    "P_A_hat",         "D_phi_hat",    "I2_phi_hat",
                                               "plus_skipped", "minus_skipped"};
    return cols;
}

/// count points from start to stop inclusive.
inline std::vector<double> linspace(double start, double stop, std::size_t count) {
    if (count < 2) throw InvalidArgumentError("grid needs at least 2 points");
    std::vector<double> v(count);
    const double step = (stop - start) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) v[i] = start + step * static_cast<double>(i);
    v.back() = stop;
    return v;
}

/// Closed-form values along a phi grid. Undefined conditional quantities
/// (zero-probability outcome) are NaN.
inline Table scan_table(const ThetaPState& s, const std::vector<double>& phis) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    Table t{scan_columns(), {}};
    t.rows.reserve(phis.size());
    for (const double phi : phis) {
        const auto [rp, rm] = outcome_probabilities(s, phi);
        const bool ok_p = rp > tol::kZeroProbability, ok_m = rm > tol::kZeroProbability;
        t.rows.push_back({phi, rp, rm, ok_p ? conditional_weight(s, phi, Outcome::plus) : nan,
                          ok_m ? conditional_weight(s, phi, Outcome::minus) : nan,
                          ok_p ? conditional_purity(s, phi, Outcome::plus) : nan,
                          ok_m ? conditional_purity(s, phi, Outcome::minus) : nan, avg_conditional_purity(s, phi),
                          discord_phi(s, phi), info_deficit_phi(s, phi)});
    }
    return t;
}

inline Table theta_scan_table(double p, const std::vector<double>& thetas) {
    Table t{theta_scan_columns(), {}};
    t.rows.reserve(thetas.size());
    for (const double th : thetas) {
        const ThetaPState s(th, p);
        const auto d = discord(s);
        t.rows.push_back({th, max_avg_conditional_purity(s), d.value, geometric_deficit(s), d.phi_min,
                          optimal_phi_deficit(s).phi});
    }
    return t;
}

inline Table mc_table(const ExperimentRun& run) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    Table t{mc_columns(), {}};
    for (const auto& r : run.records) {
        t.rows.push_back({r.phi, static_cast<double>(r.counts_b.n_plus), static_cast<double>(r.counts_b.n_minus),
                          r.r_plus_hat, r.r_minus_hat, r.purity_cond_plus_hat.value_or(nan),
                          r.purity_cond_minus_hat.value_or(nan), r.purity_avg_hat, r.purity_a_hat, r.discord_phi_hat,
                          r.info_deficit_hat, r.plus_skipped ? 1.0 : 0.0, r.minus_skipped ? 1.0 : 0.0});
    }
    return t;
}

/// 17 significant digits, '.' separator, independent of the global locale.
inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    if (res.ec != std::errc{}) throw Error("number formatting failed");
    return std::string(buf.data(), res.ptr);
}

inline void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
        os << '\n';
    }
}

inline nlohmann::ordered_json to_json(const Table& t) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (std::isfinite(row[i]))
                obj[t.columns[i]] = row[i];
            else
                obj[t.columns[i]] = nullptr;
        }
        arr.push_back(std::move(obj));
    }
    return arr;
}

inline void write_json(std::ostream& os, const Table& t) { os << to_json(t).dump(2) << '\n'; }

enum class Figure { fig1, fig2, fig4, fig5 };

struct FigureConfig {
    double theta = std::numbers::pi / 3.0;
    std::vector<double> weights{0.5, 0.7};
    std::size_t analytic_points = 721;   ///< phi in [-pi, pi]
    std::size_t theta_points = 401;      ///< theta in [0, pi/2]
    std::vector<double> mc_phis = linspace(-std::numbers::pi, std::numbers::pi, 25);
    std::uint64_t counts = 10000;
    std::uint64_t seed = 1;
};

/// Short label for a weight, e.g. 0.5 -> "p0.50".
inline std::string weight_label(double p) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), p, std::chars_format::fixed, 2);
    return "p" + std::string(buf.data(), res.ptr);
}

/// Data files of one figure, keyed by file stem. fig1/fig4/fig5 are phi scans
/// at fixed theta; fig4/fig5 add Monte Carlo points ("<fig>_mc_<p>"), each
/// weight run with its own derived seed. fig2 is a theta scan.
inline std::map<std::string, Table> figure_tables(Figure which, const FigureConfig& cfg) {
    std::map<std::string, Table> out;
    const char* name = which == Figure::fig1 ? "fig1" : which == Figure::fig2 ? "fig2" : which == Figure::fig4 ? "fig4" : "fig5";
    for (std::size_t w = 0; w < cfg.weights.size(); ++w) {
        const double p = cfg.weights[w];
        const std::string stem = std::string(name) + "_" + weight_label(p);
        if (which == Figure::fig2) {
            out[stem] = theta_scan_table(p, linspace(0.0, std::numbers::pi / 2.0, cfg.theta_points));
            continue;
        }
        const ThetaPState s(cfg.theta, p);
        out[stem] = scan_table(s, linspace(-std::numbers::pi, std::numbers::pi, cfg.analytic_points));
        if (which == Figure::fig4 || which == Figure::fig5) {
            const auto run = run_experiment_pipeline(s, cfg.mc_phis, cfg.counts, derive_seed(cfg.seed, 1000 + w));
            out[std::string(name) + "_mc_" + weight_label(p)] = mc_table(run);
        }
    }
    return out;
}

}  // namespace qcorr

#endif  // QCORR_TABLES_HPP
