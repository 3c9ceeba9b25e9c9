#ifndef OPTKIT_TOMOGRAPHY_HPP
#define OPTKIT_TOMOGRAPHY_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "optkit/faithful.hpp"
#include "optkit/model.hpp"

namespace optkit {

// Joint frame coordinates of the unnormalized output state when a
// transformation acts on party 1 of the faithful state.
struct JointTable {
  Mat entries;
};

// Outcome counts of the joint measurement {Q_k (x) Q_l} plus a no-click bin
// that absorbs the probability a trace-decreasing transformation fails.
struct CountTable {
  Eigen::Matrix<std::uint64_t, Eigen::Dynamic, Eigen::Dynamic> counts;
  std::uint64_t no_click = 0;
  std::uint64_t shots = 0;
};

// Informationally complete POVM built from the frame:
//   Q_k = G_k / D (k = 1..D),  Q_0 = I - sum_k Q_k.
// `to_frame` maps outcome coordinates to frame coordinates (G = L Q), so a
// joint distribution P becomes the joint table L P L^T.
struct FramePovm {
  std::vector<CMat> elements;
  Mat to_frame;    // L
  Mat from_frame;  // L^-1: P = L^-1 J L^-T
};

// Throws InvalidPOVM when Q_0 is not PSD.
FramePovm frame_povm(const Model& m);

JointTable exact_joint_table(const TransMatrix& a, const FaithfulState& fs);

// table * F^-1.
TransMatrix reconstruct(const JointTable& table, const FaithfulState& fs);

// Same, for a table normalized by the transformation's probability on the
// faithful state; `probability` restores the scale.
TransMatrix reconstruct_normalized(const JointTable& normalized, double probability, const FaithfulState& fs);

// Exact outcome distribution p_kl = Tr[(Q_k (x) Q_l)(A (x) id)(Phi)] computed
// on native operators; the no-click weight is 1 - sum p_kl.
struct OutcomeDistribution {
  Mat probabilities;
  double no_click = 0.0;
};
OutcomeDistribution outcome_distribution(const TransMatrix& a, const Model& m, const FramePovm& povm);

// Multinomial sample of `shots` joint outcomes; deterministic in `seed`.
CountTable simulate_counts(const TransMatrix& a, const FaithfulState& fs, const Model& m, std::uint64_t shots,
                           std::uint64_t seed);

// Frequencies -> frame coordinates via L P L^T.
JointTable frequencies_to_table(const Mat& frequencies, const FramePovm& povm);
Mat table_to_frequencies(const JointTable& table, const FramePovm& povm);

struct ErrorReport {
  std::optional<double> frobenius;       // ||A_est - A_ref||_F
  std::optional<double> trace_distance;  // (1/2N) ||Choi_est - Choi_ref||_1
  double choi_min_eigenvalue = 0.0;      // of the reconstructed (unclipped) Choi
  bool physical = false;                 // reconstructed Choi is PSD to -1e-10
};

struct Reconstruction {
  TransMatrix estimate;
  ErrorReport errors;
};

// Linear inversion of a count table. No positivity projection is applied;
// non-physical estimates are returned as-is and flagged.
Reconstruction reconstruct_from_counts(const CountTable& counts, const FaithfulState& fs, const Model& m,
                                       const TransMatrix* reference = nullptr);

// Expected squared Frobenius error of reconstruct_from_counts at `shots`,
// from the multinomial covariance propagated through the linear inversion.
double expected_squared_error(const TransMatrix& a, const FaithfulState& fs, const Model& m, std::uint64_t shots);

}  // namespace optkit

#endif  // OPTKIT_TOMOGRAPHY_HPP
