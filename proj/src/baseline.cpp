#include "tts/baseline.hpp"

#include <algorithm>

#include "tts/errors.hpp"

namespace tts {

double match_probability(double p, std::uint64_t k, std::uint64_t m) {
  if (m == 0) throw ArgumentError("m must be positive");
  if (!(p > 0.0 && p <= 1.0)) {
    throw ArgumentError("p must be in (0, 1]");
  }
  if (k > m) throw ArgumentError("K cannot exceed m");
  const double p_tilde =
      (p * static_cast<double>(m - k) + static_cast<double>(k)) /
      static_cast<double>(m);
  return std::min(p_tilde, 1.0);
}

RunResult run_naive(const EdgeStream& s, Timestamp delta, double p_tilde,
                    std::uint64_t seed) {
  static const PredictorSpec kNeverSpec{};
  EstimatorConfig cfg;
  cfg.delta = delta;
  cfg.p = p_tilde;
  cfg.seed = seed;
  cfg.predictor = &kNeverSpec;
  return run_step(s, cfg);
}

}  // namespace tts
