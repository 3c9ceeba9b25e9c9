#include "optkit/model.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace optkit {

namespace {

constexpr Index kMaxQuantumDim = 8;

double hs_real(const CMat& a, const CMat& b) {
  // Re Tr[a b] without forming the product.
  return (a.transpose().cwiseProduct(b)).sum().real();
}

bool is_diagonal(const CMat& m, double tolerance) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (i != j && std::abs(m(i, j)) > tolerance) return false;
    }
  }
  return true;
}

void require_native(const CMat& op, const Model& m, const char* what) {
  if (op.rows() != m.native_dim() || op.cols() != m.native_dim()) {
    std::ostringstream msg;
    msg << what << " has shape " << op.rows() << "x" << op.cols() << ", model expects "
        << m.native_dim() << "x" << m.native_dim();
    throw Error(ErrorCode::DimensionMismatch, msg.str());
  }
}

void require_size(Index size, const Model& m, const char* what) {
  if (size != m.size()) {
    std::ostringstream msg;
    msg << what << " has " << size << " coordinates, model " << m.name() << " expects " << m.size();
    throw Error(ErrorCode::DimensionMismatch, msg.str());
  }
}

}  // namespace

Model Model::from_frame(ModelKind kind, bool classical, std::vector<CMat> frame, Index known_idim,
                        std::string name) {
  if (frame.empty()) {
    throw Error(ErrorCode::InvalidArgument, "empty frame");
  }
  const Index n = frame.front().rows();
  if (!frame.front().isApprox(CMat::Identity(n, n), 1e-14)) {
    throw Error(ErrorCode::InvalidArgument, "frame[0] must be the identity (normalization functional)");
  }
  Model m;
  m.kind_ = kind;
  m.classical_ = classical;
  m.name_ = std::move(name);
  m.native_dim_ = n;
  m.known_idim_ = known_idim;
  m.frame_ = std::move(frame);

  const Index size = static_cast<Index>(m.frame_.size());
  m.gram_.resize(size, size);
  for (Index j = 0; j < size; ++j) {
    if (m.frame_[j].rows() != n || m.frame_[j].cols() != n || !is_hermitian(m.frame_[j])) {
      throw Error(ErrorCode::InvalidArgument, "frame operators must be Hermitian and share one shape");
    }
    for (Index l = 0; l <= j; ++l) {
      m.gram_(j, l) = m.gram_(l, j) = hs_real(m.frame_[j], m.frame_[l]);
    }
  }

  Eigen::FullPivLU<Mat> lu(m.gram_);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) {
    throw Error(ErrorCode::FrameDegenerate, "frame Gram matrix is singular");
  }
  const Mat inv = lu.inverse();
  m.dual_.assign(size, CMat::Zero(n, n));
  for (Index l = 0; l < size; ++l) {
    for (Index k = 0; k < size; ++k) {
      m.dual_[l] += inv(k, l) * m.frame_[k];
    }
  }
  return m;
}

std::vector<CMat> gell_mann_basis(Index d) {
  std::vector<CMat> out;
  const Complex i1(0.0, 1.0);
  for (Index j = 0; j < d; ++j) {
    for (Index k = j + 1; k < d; ++k) {
      CMat g = CMat::Zero(d, d);
      g(j, k) = g(k, j) = 1.0;
      out.push_back(std::move(g));
    }
  }
  for (Index j = 0; j < d; ++j) {
    for (Index k = j + 1; k < d; ++k) {
      CMat g = CMat::Zero(d, d);
      g(j, k) = -i1;
      g(k, j) = i1;
      out.push_back(std::move(g));
    }
  }
  for (Index l = 1; l < d; ++l) {
    CMat g = CMat::Zero(d, d);
    const double c = std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
    for (Index i = 0; i < l; ++i) g(i, i) = c;
    g(l, l) = -c * static_cast<double>(l);
    out.push_back(std::move(g));
  }
  return out;
}

Model quantum_model(Index d) {
  if (d < 2 || d > kMaxQuantumDim) {
    throw Error(ErrorCode::InvalidArgument, "quantum dimension must lie in [2, 8]");
  }
  const CMat id = CMat::Identity(d, d);
  std::vector<CMat> frame{id};
  for (const CMat& g : gell_mann_basis(d)) {
    const double sup = hermitian_eigenvalues(g).cwiseAbs().maxCoeff();
    frame.push_back(0.5 * (id + g / sup));
  }
  return Model::from_frame(ModelKind::quantum, false, std::move(frame), d, "quantum(" + std::to_string(d) + ")");
}

Model classical_model(Index n) {
  if (n < 2) {
    throw Error(ErrorCode::InvalidArgument, "classical model needs at least 2 outcomes");
  }
  std::vector<CMat> frame{CMat::Identity(n, n)};
  for (Index k = 0; k + 1 < n; ++k) {
    CMat e = CMat::Zero(n, n);
    e(k, k) = 1.0;
    frame.push_back(std::move(e));
  }
  return Model::from_frame(ModelKind::classical, true, std::move(frame), n, "classical(" + std::to_string(n) + ")");
}

Model composite_model(const Model& a, const Model& b) {
  if (a.classical() != b.classical()) {
    throw Error(ErrorCode::UnsupportedComposite, "composites must pair two quantum or two classical models");
  }
  std::vector<CMat> frame;
  frame.reserve(a.frame().size() * b.frame().size());
  for (const CMat& ga : a.frame()) {
    for (const CMat& gb : b.frame()) {
      frame.push_back(kron(ga, gb));
    }
  }
  Model m = Model::from_frame(ModelKind::composite, a.classical(), std::move(frame),
                              a.known_idim() * b.known_idim(), a.name() + "x" + b.name());
  m.parts_ = {std::make_shared<const Model>(a), std::make_shared<const Model>(b)};
  return m;
}

Model rotated_frame_model(const Model& m, unsigned long long seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  const Index size = m.size();
  const Index n = m.native_dim();
  Mat gauss(size - 1, size - 1);
  for (Index i = 0; i < gauss.rows(); ++i) {
    for (Index j = 0; j < gauss.cols(); ++j) gauss(i, j) = normal(gen);
  }
  // Orthogonal mix keeps the frame as well conditioned as the original.
  const Mat mix = Eigen::HouseholderQR<Mat>(gauss).householderQ();
  std::uniform_real_distribution<double> shift(-0.5, 0.5);
  std::vector<CMat> frame{CMat::Identity(n, n)};
  for (Index j = 1; j < size; ++j) {
    CMat g = shift(gen) * CMat::Identity(n, n);
    for (Index k = 1; k < size; ++k) g += mix(j - 1, k - 1) * m.frame()[k];
    frame.push_back(std::move(g));
  }
  Model out = Model::from_frame(m.kind(), m.classical(), std::move(frame), m.known_idim(), m.name() + "[rotated]");
  return out;
}

void validate_state(const CMat& rho, const Model& m) {
  require_native(rho, m, "state");
  if (!is_hermitian(rho)) {
    throw Error(ErrorCode::InvalidState, "state is not Hermitian");
  }
  if (m.classical() && !is_diagonal(rho, tol::hermitian)) {
    throw Error(ErrorCode::InvalidState, "classical state must be diagonal");
  }
  const double lo = min_eigenvalue(rho);
  if (lo < -tol::psd) {
    std::ostringstream msg;
    msg << "state has negative eigenvalue " << lo;
    throw Error(ErrorCode::InvalidState, msg.str());
  }
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > 1e-10) {
    std::ostringstream msg;
    msg << "state has trace " << tr;
    throw Error(ErrorCode::InvalidState, msg.str());
  }
}

Weight encode_state(const CMat& rho, const Model& m, Validate validate) {
  require_native(rho, m, "state");
  if (validate == Validate::yes) validate_state(rho, m);
  Vec c(m.size());
  for (Index j = 0; j < m.size(); ++j) c(j) = hs_real(m.frame()[j], rho);
  return Weight(std::move(c));
}

CMat decode_state(const Weight& w, const Model& m) {
  require_size(w.size(), m, "weight");
  CMat rho = CMat::Zero(m.native_dim(), m.native_dim());
  for (Index l = 0; l < m.size(); ++l) rho += w[l] * m.dual_frame()[l];
  return rho;
}

Propensity encode_effect(const CMat& effect, const Model& m, Validate validate) {
  require_native(effect, m, "effect");
  if (validate == Validate::yes) {
    if (!is_hermitian(effect)) throw Error(ErrorCode::InvalidEffect, "effect is not Hermitian");
    if (m.classical() && !is_diagonal(effect, tol::hermitian)) {
      throw Error(ErrorCode::InvalidEffect, "classical effect must be diagonal");
    }
    const Vec ev = hermitian_eigenvalues(effect);
    if (ev.minCoeff() < -tol::psd || ev.maxCoeff() > 1.0 + tol::psd) {
      std::ostringstream msg;
      msg << "effect spectrum [" << ev.minCoeff() << ", " << ev.maxCoeff() << "] leaves [0, 1]";
      throw Error(ErrorCode::InvalidEffect, msg.str());
    }
  }
  Vec c(m.size());
  for (Index j = 0; j < m.size(); ++j) c(j) = hs_real(effect, m.dual_frame()[j]);
  return Propensity(std::move(c));
}

CMat decode_effect(const Propensity& p, const Model& m) {
  require_size(p.size(), m, "propensity");
  CMat e = CMat::Zero(m.native_dim(), m.native_dim());
  for (Index j = 0; j < m.size(); ++j) e += p[j] * m.frame()[j];
  return e;
}

void validate_channel(const ChoiMatrix& choi, const Model& m) {
  if (choi.in_dim != m.native_dim() || choi.out_dim != m.native_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "channel dimensions do not match the model");
  }
  if (!is_hermitian(choi.matrix, 1e-10)) {
    throw Error(ErrorCode::InvalidChannel, "Choi matrix is not Hermitian");
  }
  const double lo = min_eigenvalue(choi.matrix);
  if (lo < -tol::psd) {
    std::ostringstream msg;
    msg << "Choi matrix has negative eigenvalue " << lo << " (map not completely positive)";
    throw Error(ErrorCode::InvalidChannel, msg.str());
  }
  const double hi = max_eigenvalue(partial_trace_second(choi.matrix, choi.in_dim, choi.out_dim));
  if (hi > 1.0 + tol::psd) {
    std::ostringstream msg;
    msg << "output partial trace has eigenvalue " << hi << " > 1 (map increases trace)";
    throw Error(ErrorCode::InvalidChannel, msg.str());
  }
}

TransMatrix encode_channel(const ChoiMatrix& choi, const Model& m, Validate validate) {
  if (validate == Validate::yes) validate_channel(choi, m);
  if (choi.in_dim != m.native_dim() || choi.out_dim != m.native_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "channel dimensions do not match the model");
  }
  const Index size = m.size();
  Mat t(size, size);
  for (Index l = 0; l < size; ++l) {
    const CMat out = apply_choi(choi, m.dual_frame()[l]);
    for (Index j = 0; j < size; ++j) t(j, l) = hs_real(m.frame()[j], out);
  }
  return TransMatrix(std::move(t));
}

TransMatrix encode_channel(const KrausSet& kraus, const Model& m, Validate validate) {
  return encode_channel(choi_from_kraus(kraus), m, validate);
}

ChoiMatrix decode_channel(const TransMatrix& t, const Model& m) {
  require_size(t.size(), m, "transformation");
  const Index n = m.native_dim();
  // C(X) = sum_jl dual_j T_jl Tr[frame_l X]; precompute sum_j dual_j T_jl.
  std::vector<CMat> images(m.size(), CMat::Zero(n, n));
  for (Index l = 0; l < m.size(); ++l) {
    for (Index j = 0; j < m.size(); ++j) {
      if (t(j, l) != 0.0) images[l] += t(j, l) * m.dual_frame()[j];
    }
  }
  ChoiMatrix choi{CMat::Zero(n * n, n * n), n, n};
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      CMat block = CMat::Zero(n, n);
      for (Index l = 0; l < m.size(); ++l) {
        const Complex coeff = m.frame()[l](b, a);  // Tr[G_l E_ab]
        if (coeff != Complex(0.0, 0.0)) block += coeff * images[l];
      }
      choi.matrix.block(a * n, b * n, n, n) = block;
    }
  }
  return choi;
}

CMat max_entangled_state(Index n) {
  Eigen::VectorXcd omega = Eigen::VectorXcd::Zero(n * n);
  for (Index k = 0; k < n; ++k) omega(k * n + k) = 1.0 / std::sqrt(static_cast<double>(n));
  return omega * omega.adjoint();
}

JointWeight max_entangled_joint(const Model& m) {
  if (m.classical()) {
    throw Error(ErrorCode::UnsupportedModel, "maximally entangled state requires a quantum model");
  }
  const Index size = m.size();
  const double n = static_cast<double>(m.native_dim());
  Mat f(size, size);
  for (Index i = 0; i < size; ++i) {
    for (Index j = 0; j < size; ++j) {
      f(i, j) = hs_real(m.frame()[i], m.frame()[j].transpose()) / n;
    }
  }
  return JointWeight(std::move(f));
}

}  // namespace optkit
