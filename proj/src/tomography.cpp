#include "optkit/tomography.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace optkit {

namespace {

void require_quantum(const Model& m) {
  if (m.classical()) {
    throw Error(ErrorCode::UnsupportedModel, "faithful-state tomography needs a quantum model");
  }
}

}  // namespace

FramePovm frame_povm(const Model& m) {
  const Index size = m.size();
  const Index n = m.native_dim();
  const double d = static_cast<double>(m.affine_dim());
  FramePovm povm;
  povm.elements.assign(size, CMat::Zero(n, n));
  povm.elements[0] = CMat::Identity(n, n);
  for (Index k = 1; k < size; ++k) {
    povm.elements[k] = m.frame()[k] / d;
    povm.elements[0] -= povm.elements[k];
  }
  for (Index k = 0; k < size; ++k) {
    const double lo = min_eigenvalue(povm.elements[k]);
    if (lo < -1e-12) {
      std::ostringstream msg;
      msg << "POVM element " << k << " has eigenvalue " << lo;
      throw Error(ErrorCode::InvalidPOVM, msg.str());
    }
  }
  povm.to_frame = Mat::Zero(size, size);
  povm.to_frame.row(0).setOnes();
  for (Index k = 1; k < size; ++k) povm.to_frame(k, k) = d;
  povm.from_frame = povm.to_frame.inverse();
  return povm;
}

JointTable exact_joint_table(const TransMatrix& a, const FaithfulState& fs) {
  if (a.size() != fs.size()) {
    throw Error(ErrorCode::DimensionMismatch, "transformation does not match the faithful state");
  }
  return {a.entries() * fs.f()};
}

TransMatrix reconstruct(const JointTable& table, const FaithfulState& fs) {
  if (table.entries.rows() != fs.size() || table.entries.cols() != fs.size()) {
    throw Error(ErrorCode::DimensionMismatch, "joint table does not match the faithful state");
  }
  return TransMatrix(table.entries * fs.f_inv());
}

TransMatrix reconstruct_normalized(const JointTable& normalized, double probability, const FaithfulState& fs) {
  return probability * reconstruct(normalized, fs);
}

OutcomeDistribution outcome_distribution(const TransMatrix& a, const Model& m, const FramePovm& povm) {
  require_quantum(m);
  const ChoiMatrix choi = decode_channel(a, m);
  const double n = static_cast<double>(m.native_dim());
  const Index size = static_cast<Index>(povm.elements.size());
  OutcomeDistribution out{Mat(size, size), 0.0};
  for (Index k = 0; k < size; ++k) {
    for (Index l = 0; l < size; ++l) {
      // (A (x) id)(Omega) is the Choi matrix with its factors swapped, over N.
      const CMat joint = kron(povm.elements[l], povm.elements[k]);
      out.probabilities(k, l) = (joint.transpose().cwiseProduct(choi.matrix)).sum().real() / n;
    }
  }
  out.no_click = 1.0 - out.probabilities.sum();
  return out;
}

CountTable simulate_counts(const TransMatrix& a, const FaithfulState& fs, const Model& m, std::uint64_t shots,
                           std::uint64_t seed) {
  require_quantum(m);
  if (a.size() != fs.size()) {
    throw Error(ErrorCode::DimensionMismatch, "transformation does not match the faithful state");
  }
  const FramePovm povm = frame_povm(m);
  const OutcomeDistribution dist = outcome_distribution(a, m, povm);
  const Index size = dist.probabilities.rows();

  CountTable table;
  table.counts.setZero(size, size);
  table.shots = shots;
  if (shots == 0) return table;

  std::mt19937_64 gen(seed);
  std::uint64_t remaining = shots;
  double mass_left = 1.0;
  for (Index l = 0; l < size; ++l) {
    for (Index k = 0; k < size; ++k) {
      const double p = std::max(0.0, dist.probabilities(k, l));
      std::uint64_t draw = 0;
      if (remaining > 0 && p > 0.0) {
        const double q = mass_left > 0.0 ? std::clamp(p / mass_left, 0.0, 1.0) : 1.0;
        draw = std::binomial_distribution<std::uint64_t>(remaining, q)(gen);
      }
      table.counts(k, l) = draw;
      remaining -= draw;
      mass_left -= p;
    }
  }
  table.no_click = remaining;
  return table;
}

JointTable frequencies_to_table(const Mat& frequencies, const FramePovm& povm) {
  return {povm.to_frame * frequencies * povm.to_frame.transpose()};
}

Mat table_to_frequencies(const JointTable& table, const FramePovm& povm) {
  return povm.from_frame * table.entries * povm.from_frame.transpose();
}

Reconstruction reconstruct_from_counts(const CountTable& counts, const FaithfulState& fs, const Model& m,
                                       const TransMatrix* reference) {
  require_quantum(m);
  if (counts.shots == 0) {
    throw Error(ErrorCode::InvalidArgument, "count table has no shots");
  }
  const FramePovm povm = frame_povm(m);
  const Mat freq = counts.counts.cast<double>() / static_cast<double>(counts.shots);
  Reconstruction out{reconstruct(frequencies_to_table(freq, povm), fs), {}};

  const ChoiMatrix choi = decode_channel(out.estimate, m);
  out.errors.choi_min_eigenvalue = min_eigenvalue(choi.matrix);
  out.errors.physical = out.errors.choi_min_eigenvalue >= -tol::psd;
  if (reference != nullptr) {
    out.errors.frobenius = (out.estimate - *reference).entries().norm();
    const ChoiMatrix ref = decode_channel(*reference, m);
    out.errors.trace_distance =
        0.5 * trace_norm(choi.matrix - ref.matrix) / static_cast<double>(m.native_dim());
  }
  return out;
}

double expected_squared_error(const TransMatrix& a, const FaithfulState& fs, const Model& m, std::uint64_t shots) {
  require_quantum(m);
  const FramePovm povm = frame_povm(m);
  const OutcomeDistribution dist = outcome_distribution(a, m, povm);
  const Index size = dist.probabilities.rows();
  // vec(L P L^T F^-1) = ((F^-T L) (x) L) vec(P)
  const Mat right = fs.f_inv().transpose() * povm.to_frame;
  const Mat& left = povm.to_frame;
  Mat lin(size * size, size * size);
  for (Index i = 0; i < size; ++i) {
    for (Index j = 0; j < size; ++j) lin.block(i * size, j * size, size, size) = right(i, j) * left;
  }
  const Vec p = Eigen::Map<const Vec>(dist.probabilities.data(), size * size).cwiseMax(0.0);
  // Covariance of the frequencies; the no-click bin carries no weight in lin
  // but still enters through the -p p^T term.
  const Mat cov = Mat(p.asDiagonal()) - p * p.transpose();
  return (lin * cov * lin.transpose()).trace() / static_cast<double>(shots);
}

}  // namespace optkit
