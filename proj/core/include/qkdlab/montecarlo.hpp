// Copyright 2026 the qkdlab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace qkdlab {

/// Stochastic oracle configuration. Trials are sharded into fixed-size
/// blocks; each block gets an independent SplitMix64-derived seed, so the
/// estimate depends only on (seed, trials, inputs), never on worker count.
struct McConfig {
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 0;
    double tap_t = 1.0;   ///< 1 = no tap
    unsigned workers = 0; ///< 0 = QKDLAB_THREADS env, else hardware count
};

struct McEstimate {
    double p_hat;
    double std_err;  ///< sqrt(p(1-p)/trials)
    std::uint64_t trials;
};

/// Frequency estimate of the conclusive-outcome probability for exactly n
/// photons entering Eve's receiver. Each photon survives the tap with
/// probability tap_t, then routes to the correct-basis detector (p = 1/2) or
/// one of the two wrong-basis detectors (p = 1/4 each). A trial is conclusive
/// iff all three detectors fire and no photon was absorbed by the tap
/// monitor (an absorbed photon makes Eve discard the event, which is what
/// reproduces Y_n T^n).
McEstimate mc_conclusive_prob(unsigned n, const McConfig& cfg);

/// Same trial with n drawn from Poisson(mean_tilde) per trial (inversion
/// sampling); estimates the Poisson-averaged gain.
McEstimate mc_gain(double mean_tilde, const McConfig& cfg);

}  // namespace qkdlab
