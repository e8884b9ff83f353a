// Copyright 2026 the qkdlab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <utility>

#include "qkdlab/decoy.hpp"

namespace qkdlab {

enum class AttackVariant {
    StandardUsd,  ///< four-detector USD receiver, conclusive = exactly 3 clicks
    ModifiedUsd,  ///< USD with a T:1-T tap that vetoes events losing photons
    Pns3,         ///< photon-number splitting passing only the n = 3 component
};

struct AttackConfig {
    AttackVariant variant = AttackVariant::StandardUsd;
    double kappa = 1.0;   ///< attenuation alteration, >= 1 (linear)
    double tap_t = 1.0;   ///< ModifiedUsd tap transmittance, (0,1]
    double y3 = 1.0;      ///< Pns3 three-photon yield, (0,1]
    double eta_eve = 1.0; ///< Eve detector efficiency, (0,1]
    double channel_transmittance = 1.0;  ///< Alice->Eve channel, (0,1]
};

/// Throws std::invalid_argument on any out-of-range field.
void validate(const AttackConfig& config);

/// Laser-damage scaling of the prepared means: (kappa*mu, kappa*nu).
/// Throws std::domain_error for kappa < 1.
std::pair<double, double> lda_transform(const DecoyParams& params, double kappa);

/// Conclusive-outcome probability for n photons at the USD receiver,
/// evaluated as 1 - 2(3/4)^n + 2(1/4)^n. Y(0) = 0: the closed-form gains are
/// consistent only with a vacuum yield of zero, so the n = 0 value of the
/// combinatorial formula is overridden.
double usd_yield(unsigned n);

/// Tapped-receiver yield T^n * usd_yield(n). Throws std::domain_error for
/// t outside (0,1].
double modified_usd_yield(unsigned n, double t);

/// Q(m) = (1 - e^{-m/2})(1 - e^{-m/4})^2.
double usd_gain_closed(double mean_tilde);

/// Q(m,T) = e^{-(1-T)m} (1 - e^{-Tm/2})(1 - e^{-Tm/4})^2.
/// Throws std::domain_error for t outside (0,1].
double modified_usd_gain_closed(double mean_tilde, double t);

/// Three-photon-only gain y3 * m^3 e^{-m} / 6 (exact, not a truncation).
double pns3_gain(double mean_tilde, double y3);

/// Yield table Y_n for the gain series; evaluated on demand.
struct YieldProfile {
    std::function<double(unsigned)> y;
    std::size_t n_max = kSeriesCutoff;
    double operator()(unsigned n) const { return y(n); }
};

YieldProfile usd_yield_profile();
YieldProfile modified_usd_yield_profile(double t);
YieldProfile pns3_yield_profile(double y3);

/// Gains seen by the decoy-state estimator under the configured attack.
/// Detector efficiency and channel loss act as Poisson thinning of the
/// altered means before the gain formula; Q0 = 0 for every variant.
GainSet attack_gains(const DecoyParams& params, const AttackConfig& config);

}  // namespace qkdlab
