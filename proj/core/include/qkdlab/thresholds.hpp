// Copyright 2026 the qkdlab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "qkdlab/attacks.hpp"
#include "qkdlab/decoy.hpp"

namespace qkdlab {

enum class ThresholdMethod { NumericalRoot, AnalyticApprox };

struct ThresholdResult {
    double kappa_linear;
    double kappa_db;  ///< 10 log10(kappa_linear)
    ThresholdMethod method;
    AttackVariant variant;
    /// |equation LHS - 1| at the returned root; set for NumericalRoot only.
    std::optional<double> residual;
};

double to_db(double kappa_linear);
double from_db(double kappa_db);

/// Left-hand side of the sinh-form transcendental threshold equation for the
/// standard USD attack; the threshold is its crossing of 1. Exposed for
/// cross-route consistency checks.
double usd_equation_lhs(double kappa, const DecoyParams& params);

/// Numerical root of the USD transcendental equation. Bracketing scan over
/// [0, 40] dB in 0.01 dB steps, then bisection in log kappa; residual
/// |LHS - 1| < 1e-10.
ThresholdResult solve_usd_threshold(const DecoyParams& params);

/// Same root obtained from the independent route: zero of
/// y1_lower(attack_gains(StandardUsd)). Agrees with solve_usd_threshold
/// within 0.01 dB (same equation under Q0 = 0).
ThresholdResult solve_usd_threshold_from_gains(const DecoyParams& params);

/// Threshold for the tapped receiver, solved as the zero of
/// y1_lower(attack_gains(ModifiedUsd, t)). The printed sinh form of this
/// equation carries an internal argument inconsistency, so the gains route
/// is the ground truth here.
ThresholdResult solve_modified_threshold(const DecoyParams& params, double t);

/// Threshold for the 3-photon PNS attack, solved from the gain-balance
/// equation Qnu e^nu = (nu^2/mu^2) Qmu e^mu. The y3 value cancels; the root
/// matches the closed form to 1e-6 relative.
ThresholdResult solve_pns3_threshold(const DecoyParams& params);

/// kappa_USD = 2 + 2 ln(mu/nu)/(mu-nu) = 2 kappa_3ph (conservative estimate).
ThresholdResult analytic_usd_threshold(const DecoyParams& params);

/// kappa_T = 2/(2-T) (1 + ln(mu/nu)/(mu-nu)) = 2 kappa_3ph/(2-T).
ThresholdResult analytic_modified_threshold(const DecoyParams& params, double t);

/// kappa_3ph = 1 + ln(mu/nu)/(mu-nu).
ThresholdResult analytic_pns3_threshold(const DecoyParams& params);

/// Imperfect-Eve correction: kappa / (eta_eve * channel_transmittance).
ThresholdResult realistic_threshold(const ThresholdResult& base, double eta_eve,
                                    double channel_transmittance);

}  // namespace qkdlab
