#ifndef OPTKIT_RANDOM_HPP
#define OPTKIT_RANDOM_HPP

#include <cstdint>
#include <random>

#include "optkit/model.hpp"

namespace optkit {

// Seeded source for the property-test generators. Every draw is a pure
// function of the seed and the sequence of calls.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double normal() { return normal_(gen_); }
  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  std::mt19937_64& engine() { return gen_; }

  CMat ginibre(Index rows, Index cols);

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_;
};

enum class TraceMode { preserving, decreasing };

// Normalized Ginibre state G G^dagger / Tr (diagonal part for classical models).
CMat random_state(const Model& m, Rng& rng);

// Stinespring dilation from a random isometry (QR of a Gaussian matrix).
// The decreasing variant drops one Kraus operator. Classical models get a
// random stochastic matrix written in Kraus form sqrt(S_ab)|a><b|.
KrausSet random_channel(const Model& m, Rng& rng, TraceMode mode = TraceMode::preserving);

// E = X / (lambda_max(X) + u) with X Ginibre-PSD and u ~ U(0, 1).
CMat random_effect(const Model& m, Rng& rng);

// a * C1 + b * C2 for random channels C1, C2 and a, b ~ U(-1, 1).
TransMatrix random_generalized(const Model& m, Rng& rng);

// Bloch matrix of a random trace-preserving channel.
TransMatrix random_channel_matrix(const Model& m, Rng& rng);

}  // namespace optkit

#endif  // OPTKIT_RANDOM_HPP
