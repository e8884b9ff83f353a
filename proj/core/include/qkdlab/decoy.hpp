// Copyright 2026 the qkdlab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qkdlab {

/// Photon-number series in the gain sum is truncated here; the Poisson tail
/// beyond n = 600 is below 1e-8 for every mean we work with (<= 50).
inline constexpr std::size_t kSeriesCutoff = 600;

/// Weak+vacuum decoy protocol configuration. The second decoy is vacuum
/// (nu2 = 0) and is implicit everywhere.
struct DecoyParams {
    double mu;  ///< signal mean photon number, > 0
    double nu;  ///< weak decoy mean photon number, 0 < nu < mu
};

/// Throws std::invalid_argument when 0 < nu < mu is violated. Returns
/// diagnostics (non-fatal) for protocol-atypical values (mu > 1.5, nu > 1).
std::vector<std::string> validate(const DecoyParams& params);

/// Measured (or modeled) detection probabilities per pulse class.
struct GainSet {
    double q_mu;       ///< signal gain
    double q_nu;       ///< decoy gain
    double q_0 = 0.0;  ///< vacuum gain; 0 under every modeled attack
};

/// QBER per pulse class. e_0 = 0.5 is the uniformly-random-clicks convention;
/// it is irrelevant while q_0 = 0.
struct ErrorSet {
    double e_nu = 0.0;
    double e_0 = 0.5;
};

/// h(x) = -x log2 x - (1-x) log2(1-x), with 0 log 0 := 0.
/// Throws std::domain_error outside [0,1].
double binary_entropy(double x);

/// Poisson pmf e^{-mean} mean^n / n!, evaluated through lgamma so it stays
/// finite up to n = 600 and beyond. Throws std::domain_error for mean < 0.
double poisson_pmf(unsigned n, double mean);

/// Q = sum_{n=0}^{n_max} p(n; mean) Y_n for an arbitrary yield callable.
template <typename Yield>
double gain_from_yields(Yield&& yields, double mean, std::size_t n_max = kSeriesCutoff) {
    double q = 0.0;
    for (std::size_t n = 0; n <= n_max; ++n) {
        q += poisson_pmf(static_cast<unsigned>(n), mean) * yields(static_cast<unsigned>(n));
    }
    return q;
}

/// Decoy-state lower bound on the single-photon yield,
///   Y1L = mu/(nu(mu-nu)) [Qnu e^nu - (nu^2/mu^2) Qmu e^mu - ((mu^2-nu^2)/mu^2) Q0].
/// The raw value may be negative; callers clamp where key-rate semantics
/// require it. The sign change is exactly the attack threshold.
double y1_lower(const GainSet& gains, const DecoyParams& params);

/// Upper bound on the single-photon QBER. Vacuous (value empty) when the
/// yield bound is not strictly positive; capped at 0.5 otherwise.
struct QberBound {
    std::optional<double> value;  ///< capped bound, empty when vacuous
    double raw = 0.0;             ///< uncapped bound (meaningful when value set)
    bool capped = false;
};
QberBound e1_upper(const GainSet& gains, const ErrorSet& errors, double y1_low,
                   const DecoyParams& params);

/// Relative secret key rate l = Q1/Qmu [1 - h(E1)] - leak.
struct KeyRate {
    double raw;
    double clamped;  ///< max(0, raw)
};
/// Throws std::invalid_argument when q_mu <= 0 (no signal detections).
KeyRate key_rate(double q1, double q_mu, double e1, double leak);

/// Error-correction leakage helper: leak = f_ec * h(e_mu).
double ec_leak(double e_mu, double f_ec = 1.0);

/// Full decoy-state estimate from measured gains and errors.
struct DecoyEstimate {
    double y1_lower;  ///< raw bound, may be negative
    double q1;        ///< Y1L * mu * e^{-mu}
    QberBound e1;
    KeyRate rate;
};
DecoyEstimate decoy_estimate(const GainSet& gains, const ErrorSet& errors,
                             const DecoyParams& params, double leak);

}  // namespace qkdlab
