// Copyright 2026 the qkdlab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qkdlab/decoy.hpp"
#include "qkdlab/thresholds.hpp"

namespace qkdlab {

/// Column-oriented sweep output. Meta rows carry run provenance (tool
/// version, grid spec, timestamp) and can be suppressed for byte-stable
/// output; the data payload is deterministic.
struct SweepTable {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// RFC-4180 CSV, '.' decimal separator, header row; meta emitted as leading
/// '#'-prefixed lines when include_meta is set.
void write_csv(const SweepTable& table, std::ostream& out, bool include_meta = true);

/// JSON object {"meta": {...}, "columns": [...], "rows": [[...], ...]}.
void write_json(const SweepTable& table, std::ostream& out, bool include_meta = true);

struct KappaSweep {
    SweepTable table;
    /// Grid location of the first sign change of raw Y1L, if any.
    std::optional<double> threshold_db;
};

/// Single-photon gain estimate vs attenuation alteration (standard USD).
/// Columns: kappa_db, kappa_linear, q_mu, q_nu, y1_raw, q1_clamped,
/// threshold_flag (1.0 on the first grid point past the sign change).
KappaSweep sweep_q1_vs_kappa(const DecoyParams& params, double db_start = 0.0,
                             double db_stop = 25.0, double db_step = 0.05);

/// Signal gain vs altered mean for a list of tap transmittances.
/// Columns: mean_tilde, then one q_mu column per t.
SweepTable sweep_gain_vs_mean(std::span<const double> taps, double mean_start = 0.0,
                              double mean_stop = 20.0, double mean_step = 0.05);

struct ThresholdTableRow {
    DecoyParams params;
    double numeric_db;
    double analytic_db;
};

/// The three reference parameter pairs with numerical and analytical USD
/// thresholds, full precision (round at presentation).
std::vector<ThresholdTableRow> reference_threshold_table();

/// Round to 0.1 dB for display.
double round_db(double db);

/// Finds t in (0,1] with modified_usd_gain_closed(mean_tilde, t) ==
/// target_gain to 1e-10; unique by monotonicity in t. Throws
/// std::invalid_argument when target exceeds the t = 1 gain.
double tune_tap(double target_gain, double mean_tilde);

}  // namespace qkdlab
