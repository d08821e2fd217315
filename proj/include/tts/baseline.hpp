#pragma once

#include <cstdint>

#include "tts/edge.hpp"
#include "tts/step.hpp"

namespace tts {

// Sampling probability making a predictor-free run retain, in expectation,
// the same number of edges as a (p, K) run: p~ = (p(m-K) + K)/m, clamped
// to 1. m = 0 is an error.
double match_probability(double p, std::uint64_t k, std::uint64_t m);

// The no-predictor baseline: run_step with the never predictor at p_tilde.
// Heavy banks stay zero and the estimate reduces to c0 / p_tilde^2.
RunResult run_naive(const EdgeStream& s, Timestamp delta, double p_tilde,
                    std::uint64_t seed);

}  // namespace tts
