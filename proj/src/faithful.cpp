#include "optkit/faithful.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace optkit {

FaithfulState f_matrix(const JointWeight& j, bool require_symmetric, double tolerance) {
  if (j.rows() != j.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "faithful state needs two copies of the same system");
  }
  const Mat& f = j.entries();
  Eigen::JacobiSVD<Mat> svd(f);
  const Vec& s = svd.singularValues();
  const double smax = s(0);
  const double smin = s(s.size() - 1);
  if (!(smin > tolerance * smax)) {
    std::ostringstream msg;
    msg << "F is singular (sigma_min = " << smin << ", sigma_max = " << smax << ")";
    throw Error(ErrorCode::NotFaithful, msg.str());
  }
  const double asym = (f - f.transpose()).norm();
  const bool sym = asym < tolerance * f.norm();
  if (require_symmetric && !sym) {
    std::ostringstream msg;
    msg << "||F - F^T||_F = " << asym;
    throw Error(ErrorCode::NotSymmetric, msg.str());
  }

  FaithfulState fs;
  fs.joint_ = j;
  fs.f_ = f;
  fs.f_inv_ = Eigen::PartialPivLU<Mat>(f).inverse();
  fs.symmetric_ = sym;
  fs.cond_ = smax / smin;
  return fs;
}

TransMatrix twin(const TransMatrix& a, const FaithfulState& fs) {
  if (a.size() != fs.size()) {
    throw Error(ErrorCode::DimensionMismatch, "transformation does not match the faithful state");
  }
  return TransMatrix(fs.f().transpose() * a.entries().transpose() * fs.f_inv().transpose());
}

AdjointReport check_generalized_adjoint(const FaithfulState& fs, std::span<const TransMatrix> samples,
                                        double tolerance, bool allow_asymmetric) {
  if (!fs.symmetric() && !allow_asymmetric) {
    throw Error(ErrorCode::AsymmetricState, "generalized adjoint axioms need a symmetric faithful state");
  }
  AdjointReport r;
  r.min_nondegeneracy_ratio = std::numeric_limits<double>::infinity();

  std::vector<TransMatrix> twins;
  twins.reserve(samples.size());
  for (const TransMatrix& a : samples) twins.push_back(twin(a, fs));

  for (std::size_t i = 0; i < samples.size(); ++i) {
    const TransMatrix& a = samples[i];
    const TransMatrix& ap = twins[i];
    r.max_involution = std::max(r.max_involution, (twin(ap, fs) - a).entries().norm());
    const double na = a.entries().norm();
    if (na > 0.0) {
      const double ratio = compose(ap, a).entries().norm() / (na * na);
      r.min_nondegeneracy_ratio = std::min(r.min_nondegeneracy_ratio, ratio);
    }
    for (std::size_t j = 0; j < samples.size(); ++j) {
      const TransMatrix& b = samples[j];
      const TransMatrix& bp = twins[j];
      r.max_additivity = std::max(r.max_additivity, (twin(a + b, fs) - ap - bp).entries().norm());
      r.max_antihomomorphism =
          std::max(r.max_antihomomorphism, (twin(compose(a, b), fs) - compose(bp, ap)).entries().norm());
      ++r.pairs;
    }
  }
  if (samples.empty()) r.min_nondegeneracy_ratio = 0.0;

  r.additivity_pass = r.max_additivity <= tolerance;
  r.involution_pass = r.max_involution <= tolerance;
  r.antihomomorphism_pass = r.max_antihomomorphism <= tolerance;
  r.nondegeneracy_pass = !samples.empty() && r.min_nondegeneracy_ratio > tolerance;
  return r;
}

PreparationMap find_preparation_map(const Weight& w, const Model& m, const FaithfulState& fs) {
  if (m.classical()) {
    throw Error(ErrorCode::UnsupportedModel, "no faithful state is constructed for classical models");
  }
  if (std::abs(w.mass() - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "state has mass " << w.mass();
    throw Error(ErrorCode::NotNormalized, msg.str());
  }
  const Index n = m.native_dim();
  const CMat omega = decode_state(w, m);
  CMat reference = CMat::Zero(n, n);
  reference(0, 0) = 1.0;
  // Choi of rho -> Tr[omega^T rho] sigma0 is omega (x) sigma0.
  const ChoiMatrix choi{kron(omega, reference), n, n};
  PreparationMap out{encode_channel(choi, m), 0.0};
  out.probability = (out.map.entries() * fs.f())(0, 0);

  const JointWeight steered = joint_apply(Side::first, out.map, fs.joint());
  const Vec local = local_weight(steered, Party::two).coords() / out.probability;
  const double err = (local - w.coords()).norm();
  if (err > 1e-10) {
    std::ostringstream msg;
    msg << "preparation witness misses the target state by " << err
        << " (faithful state is not the maximally entangled one?)";
    throw Error(ErrorCode::NotFaithful, msg.str());
  }
  return out;
}

}  // namespace optkit
