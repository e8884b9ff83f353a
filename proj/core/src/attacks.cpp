// Copyright 2026 the qkdlab authors
// SPDX-License-Identifier: Apache-2.0

#include "qkdlab/attacks.hpp"

#include <cmath>
#include <stdexcept>

namespace qkdlab {

namespace {

void check_unit_interval(double v, const char* name) {
    if (!(v > 0.0 && v <= 1.0)) {
        throw std::domain_error(std::string(name) + " must be in (0,1]");
    }
}

}  // namespace

void validate(const AttackConfig& config) {
    if (!(config.kappa >= 1.0)) {
        throw std::invalid_argument("attack config: kappa must be >= 1");
    }
    try {
        if (config.variant == AttackVariant::ModifiedUsd) {
            check_unit_interval(config.tap_t, "tap_t");
        }
        if (config.variant == AttackVariant::Pns3) {
            check_unit_interval(config.y3, "y3");
        }
        check_unit_interval(config.eta_eve, "eta_eve");
        check_unit_interval(config.channel_transmittance, "channel_transmittance");
    } catch (const std::domain_error& e) {
        throw std::invalid_argument(std::string("attack config: ") + e.what());
    }
}

std::pair<double, double> lda_transform(const DecoyParams& params, double kappa) {
    if (!(kappa >= 1.0)) {
        throw std::domain_error("lda_transform: kappa must be >= 1");
    }
    return {kappa * params.mu, kappa * params.nu};
}

double usd_yield(unsigned n) {
    if (n == 0) {
        return 0.0;
    }
    // 1 - (3^n - 1)/2^(2n-1), rewritten to avoid big-integer overflow at n=600
    return 1.0 - 2.0 * std::pow(0.75, static_cast<double>(n))
        + 2.0 * std::pow(0.25, static_cast<double>(n));
}

double modified_usd_yield(unsigned n, double t) {
    check_unit_interval(t, "modified_usd_yield: t");
    return std::pow(t, static_cast<double>(n)) * usd_yield(n);
}

double usd_gain_closed(double mean_tilde) {
    const double a = -std::expm1(-mean_tilde / 2.0);
    const double b = -std::expm1(-mean_tilde / 4.0);
    return a * b * b;
}

double modified_usd_gain_closed(double mean_tilde, double t) {
    check_unit_interval(t, "modified_usd_gain_closed: t");
    const double a = -std::expm1(-t * mean_tilde / 2.0);
    const double b = -std::expm1(-t * mean_tilde / 4.0);
    return std::exp(-(1.0 - t) * mean_tilde) * a * b * b;
}

double pns3_gain(double mean_tilde, double y3) {
    return y3 * mean_tilde * mean_tilde * mean_tilde / 6.0 * std::exp(-mean_tilde);
}

YieldProfile usd_yield_profile() {
    return {[](unsigned n) { return usd_yield(n); }, kSeriesCutoff};
}

YieldProfile modified_usd_yield_profile(double t) {
    check_unit_interval(t, "modified_usd_yield_profile: t");
    return {[t](unsigned n) { return modified_usd_yield(n, t); }, kSeriesCutoff};
}

YieldProfile pns3_yield_profile(double y3) {
    check_unit_interval(y3, "pns3_yield_profile: y3");
    return {[y3](unsigned n) { return n == 3 ? y3 : 0.0; }, kSeriesCutoff};
}

GainSet attack_gains(const DecoyParams& params, const AttackConfig& config) {
    validate(config);
    auto [mu_tilde, nu_tilde] = lda_transform(params, config.kappa);
    // Poisson thinning: imperfect detection rescales the means directly.
    const double thin = config.eta_eve * config.channel_transmittance;
    mu_tilde *= thin;
    nu_tilde *= thin;

    GainSet gains{0.0, 0.0, 0.0};
    switch (config.variant) {
        case AttackVariant::StandardUsd:
            gains.q_mu = usd_gain_closed(mu_tilde);
            gains.q_nu = usd_gain_closed(nu_tilde);
            break;
        case AttackVariant::ModifiedUsd:
            gains.q_mu = modified_usd_gain_closed(mu_tilde, config.tap_t);
            gains.q_nu = modified_usd_gain_closed(nu_tilde, config.tap_t);
            break;
        case AttackVariant::Pns3:
            gains.q_mu = pns3_gain(mu_tilde, config.y3);
            gains.q_nu = pns3_gain(nu_tilde, config.y3);
            break;
    }
    return gains;
}

}  // namespace qkdlab
