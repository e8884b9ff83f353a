// Copyright 2026 the qkdlab authors
// SPDX-License-Identifier: Apache-2.0

#include "qkdlab/decoy.hpp"

#include <algorithm>
#include <cmath>

namespace qkdlab {

std::vector<std::string> validate(const DecoyParams& params) {
    if (!(params.mu > 0.0) || !(params.nu > 0.0)) {
        throw std::invalid_argument("decoy params: mu and nu must be positive");
    }
    if (!(params.nu < params.mu)) {
        throw std::invalid_argument("decoy params: nu must be < mu");
    }
    std::vector<std::string> notes;
    if (params.mu > 1.5) {
        notes.push_back("mu > 1.5 is atypical for decoy-state BB84");
    }
    if (params.nu > 1.0) {
        notes.push_back("nu > 1.0 is atypical for a weak decoy");
    }
    return notes;
}

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::domain_error("binary_entropy: argument outside [0,1]");
    }
    if (x == 0.0 || x == 1.0) {
        return 0.0;
    }
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double poisson_pmf(unsigned n, double mean) {
    if (mean < 0.0) {
        throw std::domain_error("poisson_pmf: negative mean");
    }
    if (mean == 0.0) {
        return n == 0 ? 1.0 : 0.0;
    }
    // log-space: n log m - m - log n!
    double log_p = n * std::log(mean) - mean - std::lgamma(n + 1.0);
    return std::exp(log_p);
}

double y1_lower(const GainSet& gains, const DecoyParams& params) {
    const double mu = params.mu;
    const double nu = params.nu;
    const double bracket = gains.q_nu * std::exp(nu)
        - (nu * nu) / (mu * mu) * gains.q_mu * std::exp(mu)
        - (mu * mu - nu * nu) / (mu * mu) * gains.q_0;
    return mu / (nu * (mu - nu)) * bracket;
}

QberBound e1_upper(const GainSet& gains, const ErrorSet& errors, double y1_low,
                   const DecoyParams& params) {
    QberBound bound;
    if (!(y1_low > 0.0)) {
        return bound;  // vacuous
    }
    bound.raw = (errors.e_nu * gains.q_nu * std::exp(params.nu) - errors.e_0 * gains.q_0)
        / (params.nu * y1_low);
    if (bound.raw > 0.5) {
        bound.value = 0.5;
        bound.capped = true;
    } else {
        bound.value = bound.raw;
    }
    return bound;
}

KeyRate key_rate(double q1, double q_mu, double e1, double leak) {
    if (!(q_mu > 0.0)) {
        throw std::invalid_argument("key_rate: q_mu must be positive (no signal)");
    }
    const double raw = q1 / q_mu * (1.0 - binary_entropy(e1)) - leak;
    return {raw, std::max(0.0, raw)};
}

double ec_leak(double e_mu, double f_ec) {
    return f_ec * binary_entropy(e_mu);
}

DecoyEstimate decoy_estimate(const GainSet& gains, const ErrorSet& errors,
                             const DecoyParams& params, double leak) {
    DecoyEstimate est;
    est.y1_lower = y1_lower(gains, params);
    const double y1_clamped = std::max(0.0, est.y1_lower);
    est.q1 = est.y1_lower * params.mu * std::exp(-params.mu);
    est.e1 = e1_upper(gains, errors, est.y1_lower, params);
    const double e1 = est.e1.value.value_or(0.5);
    est.rate = key_rate(y1_clamped * params.mu * std::exp(-params.mu), gains.q_mu, e1, leak);
    return est;
}

}  // namespace qkdlab
