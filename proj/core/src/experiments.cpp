// Copyright 2026 the qkdlab authors
// SPDX-License-Identifier: Apache-2.0

#include "qkdlab/experiments.hpp"

#include <cmath>
#include <cstddef>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "qkdlab/attacks.hpp"

namespace qkdlab {

namespace {

// Shortest round-trip formatting, '.' decimal point regardless of locale.
std::string format_cell(double v) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(17) << v;
    // prefer the shorter representation when it round-trips
    for (int prec = 1; prec < 17; ++prec) {
        std::ostringstream trial;
        trial.imbue(std::locale::classic());
        trial << std::setprecision(prec) << v;
        if (std::stod(trial.str()) == v) {
            return trial.str();
        }
    }
    return os.str();
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (const char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

std::size_t grid_size(double start, double stop, double step) {
    if (!(step > 0.0) || !(start < stop)) {
        throw std::invalid_argument("sweep: need step > 0 and start < stop");
    }
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (n > 1'000'000) {
        throw std::invalid_argument("sweep: grid exceeds 1e6 points");
    }
    return n;
}

}  // namespace

void write_csv(const SweepTable& table, std::ostream& out, bool include_meta) {
    if (include_meta) {
        for (const auto& [key, value] : table.meta) {
            out << "# " << key << ": " << value << "\r\n";
        }
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << (c ? "," : "") << csv_escape(table.columns[c]);
    }
    out << "\r\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << format_cell(row[c]);
        }
        out << "\r\n";
    }
}

void write_json(const SweepTable& table, std::ostream& out, bool include_meta) {
    out << "{\n";
    if (include_meta) {
        out << "  \"meta\": {";
        for (std::size_t i = 0; i < table.meta.size(); ++i) {
            out << (i ? ", " : "") << '"' << json_escape(table.meta[i].first) << "\": \""
                << json_escape(table.meta[i].second) << '"';
        }
        out << "},\n";
    }
    out << "  \"columns\": [";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << (c ? ", " : "") << '"' << json_escape(table.columns[c]) << '"';
    }
    out << "],\n  \"rows\": [\n";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        out << "    [";
        for (std::size_t c = 0; c < table.rows[r].size(); ++c) {
            out << (c ? ", " : "") << format_cell(table.rows[r][c]);
        }
        out << (r + 1 < table.rows.size() ? "],\n" : "]\n");
    }
    out << "  ]\n}\n";
}

KappaSweep sweep_q1_vs_kappa(const DecoyParams& params, double db_start, double db_stop,
                             double db_step) {
    validate(params);
    const std::size_t n = grid_size(db_start, db_stop, db_step);

    KappaSweep sweep;
    sweep.table.columns = {"kappa_db", "kappa_linear", "q_mu",
                           "q_nu",     "y1_raw",       "q1_clamped",
                           "threshold_flag"};
    sweep.table.rows.reserve(n);

    AttackConfig config;
    config.variant = AttackVariant::StandardUsd;
    bool prev_positive = false;
    for (std::size_t i = 0; i < n; ++i) {
        const double db = db_start + static_cast<double>(i) * db_step;
        const double kappa = from_db(db);
        config.kappa = std::max(1.0, kappa);
        const GainSet gains = attack_gains(params, config);
        const double y1_raw = y1_lower(gains, params);
        const double q1 =
            std::max(0.0, y1_raw) * params.mu * std::exp(-params.mu);
        const bool positive = y1_raw > 0.0;
        double flag = 0.0;
        if (i > 0 && positive && !prev_positive && !sweep.threshold_db) {
            flag = 1.0;
            sweep.threshold_db = db;
        }
        prev_positive = positive;
        sweep.table.rows.push_back({db, kappa, gains.q_mu, gains.q_nu, y1_raw, q1, flag});
    }
    return sweep;
}

SweepTable sweep_gain_vs_mean(std::span<const double> taps, double mean_start,
                              double mean_stop, double mean_step) {
    if (taps.empty()) {
        throw std::invalid_argument("sweep: need at least one tap transmittance");
    }
    const std::size_t n = grid_size(mean_start, mean_stop, mean_step);

    SweepTable table;
    table.columns.push_back("mean_tilde");
    for (const double t : taps) {
        table.columns.push_back("q_mu_t=" + format_cell(t));
    }
    table.rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double m = mean_start + static_cast<double>(i) * mean_step;
        std::vector<double> row{m};
        for (const double t : taps) {
            row.push_back(modified_usd_gain_closed(m, t));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::vector<ThresholdTableRow> reference_threshold_table() {
    const DecoyParams sets[] = {{0.5, 0.1}, {0.5, 0.01}, {0.1, 0.01}};
    std::vector<ThresholdTableRow> rows;
    rows.reserve(3);
    for (const auto& params : sets) {
        rows.push_back({params, solve_usd_threshold(params).kappa_db,
                        analytic_usd_threshold(params).kappa_db});
    }
    return rows;
}

double round_db(double db) {
    return std::round(db * 10.0) / 10.0;
}

double tune_tap(double target_gain, double mean_tilde) {
    if (!(target_gain > 0.0)) {
        throw std::invalid_argument("tune_tap: target gain must be positive");
    }
    const double max_gain = usd_gain_closed(mean_tilde);
    if (target_gain > max_gain) {
        throw std::invalid_argument("tune_tap: target gain exceeds the untapped gain");
    }
    if (target_gain == max_gain) {
        return 1.0;
    }
    // gain is strictly increasing in t; bisect on (0, 1]
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double g = mid > 0.0 ? modified_usd_gain_closed(mean_tilde, mid) : 0.0;
        if (g < target_gain) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace qkdlab
