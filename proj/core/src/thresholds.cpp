// Copyright 2026 the qkdlab authors
// SPDX-License-Identifier: Apache-2.0

#include "qkdlab/thresholds.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace qkdlab {

namespace {

constexpr double kScanLoDb = 0.0;
constexpr double kScanHiDb = 40.0;
constexpr double kScanStepDb = 0.01;

double log_sinh(double x) {
    // sinh(x) = e^x (1 - e^{-2x}) / 2, stable for large x
    return x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0);
}

void check_params(const DecoyParams& params) {
    validate(params);
    if (params.mu - params.nu < 1e-6) {
        throw std::invalid_argument(
            "thresholds: mu and nu are degenerate (mu - nu < 1e-6)");
    }
}

// Finds the first sign change of g (log-space equation residual) on the dB
// scan grid, then bisects. Non-finite g values (gain underflow far from the
// root) are skipped during the scan.
double scan_bisect(const std::function<double(double)>& g_of_kappa) {
    double prev_db = kScanLoDb;
    double prev_g = g_of_kappa(from_db(prev_db));
    double lo_db = 0.0, hi_db = 0.0;
    bool bracketed = false;
    for (double db = kScanLoDb + kScanStepDb; db <= kScanHiDb + 1e-12; db += kScanStepDb) {
        const double g = g_of_kappa(from_db(db));
        if (std::isfinite(prev_g) && std::isfinite(g)
            && std::signbit(prev_g) != std::signbit(g)) {
            lo_db = prev_db;
            hi_db = db;
            bracketed = true;
            break;
        }
        prev_db = db;
        prev_g = g;
    }
    if (!bracketed) {
        throw std::runtime_error("threshold solver: no sign change in [0, 40] dB");
    }
    double g_lo = g_of_kappa(from_db(lo_db));
    for (int i = 0; i < 200 && hi_db - lo_db > 1e-14; ++i) {
        const double mid = 0.5 * (lo_db + hi_db);
        const double g_mid = g_of_kappa(from_db(mid));
        if (std::signbit(g_mid) == std::signbit(g_lo)) {
            lo_db = mid;
            g_lo = g_mid;
        } else {
            hi_db = mid;
        }
    }
    return from_db(0.5 * (lo_db + hi_db));
}

ThresholdResult make_numeric(double kappa, double residual, AttackVariant variant) {
    return {kappa, to_db(kappa), ThresholdMethod::NumericalRoot, variant, residual};
}

ThresholdResult make_analytic(double kappa, AttackVariant variant) {
    return {kappa, to_db(kappa), ThresholdMethod::AnalyticApprox, variant, std::nullopt};
}

// log of the gain-balance LHS  Qnu e^nu / ((nu^2/mu^2) Qmu e^mu); its zero is
// the zero of Y1L at Q0 = 0.
double log_gain_balance(const DecoyParams& params, const GainSet& gains) {
    if (!(gains.q_mu > 0.0) || !(gains.q_nu > 0.0)) {
        return std::nan("");
    }
    return std::log(gains.q_nu) + params.nu
        - (2.0 * std::log(params.nu / params.mu) + std::log(gains.q_mu) + params.mu);
}

ThresholdResult solve_from_gains(const DecoyParams& params, AttackConfig config) {
    check_params(params);
    auto g = [&](double kappa) {
        config.kappa = kappa;
        return log_gain_balance(params, attack_gains(params, config));
    };
    const double kappa = scan_bisect(g);
    return make_numeric(kappa, std::abs(std::expm1(g(kappa))), config.variant);
}

}  // namespace

double to_db(double kappa_linear) {
    return 10.0 * std::log10(kappa_linear);
}

double from_db(double kappa_db) {
    return std::pow(10.0, kappa_db / 10.0);
}

double usd_equation_lhs(double kappa, const DecoyParams& params) {
    const double mu = params.mu;
    const double nu = params.nu;
    const double log_lhs = log_sinh(kappa * nu / 4.0) + 2.0 * log_sinh(kappa * nu / 8.0)
        - log_sinh(kappa * mu / 4.0) - 2.0 * log_sinh(kappa * mu / 8.0)
        + 2.0 * std::log(mu / nu) + (kappa - 2.0) / 2.0 * (mu - nu);
    return std::exp(log_lhs);
}

ThresholdResult solve_usd_threshold(const DecoyParams& params) {
    check_params(params);
    auto g = [&params](double kappa) { return std::log(usd_equation_lhs(kappa, params)); };
    const double kappa = scan_bisect(g);
    return make_numeric(kappa, std::abs(usd_equation_lhs(kappa, params) - 1.0),
                        AttackVariant::StandardUsd);
}

ThresholdResult solve_usd_threshold_from_gains(const DecoyParams& params) {
    AttackConfig config;
    config.variant = AttackVariant::StandardUsd;
    return solve_from_gains(params, config);
}

ThresholdResult solve_modified_threshold(const DecoyParams& params, double t) {
    AttackConfig config;
    config.variant = AttackVariant::ModifiedUsd;
    config.tap_t = t;
    return solve_from_gains(params, config);
}

ThresholdResult solve_pns3_threshold(const DecoyParams& params) {
    AttackConfig config;
    config.variant = AttackVariant::Pns3;
    return solve_from_gains(params, config);
}

ThresholdResult analytic_usd_threshold(const DecoyParams& params) {
    check_params(params);
    const double kappa =
        2.0 + 2.0 / (params.mu - params.nu) * std::log(params.mu / params.nu);
    return make_analytic(kappa, AttackVariant::StandardUsd);
}

ThresholdResult analytic_modified_threshold(const DecoyParams& params, double t) {
    check_params(params);
    if (!(t > 0.0 && t <= 1.0)) {
        throw std::domain_error("analytic_modified_threshold: t must be in (0,1]");
    }
    const double k3 = 1.0 + std::log(params.mu / params.nu) / (params.mu - params.nu);
    return make_analytic(2.0 * k3 / (2.0 - t), AttackVariant::ModifiedUsd);
}

ThresholdResult analytic_pns3_threshold(const DecoyParams& params) {
    check_params(params);
    const double kappa =
        1.0 + std::log(params.mu / params.nu) / (params.mu - params.nu);
    return make_analytic(kappa, AttackVariant::Pns3);
}

ThresholdResult realistic_threshold(const ThresholdResult& base, double eta_eve,
                                    double channel_transmittance) {
    if (!(eta_eve > 0.0 && eta_eve <= 1.0)
        || !(channel_transmittance > 0.0 && channel_transmittance <= 1.0)) {
        throw std::invalid_argument("realistic_threshold: efficiencies must be in (0,1]");
    }
    ThresholdResult out = base;
    out.kappa_linear = base.kappa_linear / (eta_eve * channel_transmittance);
    out.kappa_db = to_db(out.kappa_linear);
    return out;
}

}  // namespace qkdlab
