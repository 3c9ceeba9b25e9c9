#include "optkit/gns.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "optkit/norms.hpp"

namespace optkit {

namespace {

void require_symmetric(const FaithfulState& fs) {
  if (!fs.symmetric()) {
    throw Error(ErrorCode::AsymmetricState, "the GNS form needs a symmetric faithful state");
  }
}

TransMatrix unit(Index n, Index k) {
  Mat e = Mat::Zero(n, n);
  e(k % n, k / n) = 1.0;
  return TransMatrix(std::move(e));
}

// Matrix of a linear map on transformations, one column per matrix unit.
template <typename Fn>
Mat map_matrix(Index n, Index rows, Fn&& fn) {
  Mat out(rows, n * n);
  for (Index k = 0; k < n * n; ++k) out.col(k) = fn(unit(n, k));
  return out;
}

Index kernel_dim(const Mat& m) { return m.cols() - numerical_rank(m, 1e-10); }

}  // namespace

double gns_inner(const TransMatrix& a, const TransMatrix& b, const FaithfulState& fs) {
  require_symmetric(fs);
  const Mat& f = fs.f();
  return (f.transpose() * a.entries().transpose() * fs.f_inv().transpose() * b.entries() * f)(0, 0);
}

Vec vectorize(const TransMatrix& a) { return Eigen::Map<const Vec>(a.entries().data(), a.entries().size()); }

TransMatrix unvectorize(const Vec& v, Index size) { return TransMatrix(Eigen::Map<const Mat>(v.data(), size, size)); }

GnsSpace build_gns(const FaithfulState& fs, const GnsOptions& options) {
  require_symmetric(fs);
  const Index n = fs.size();
  // gns_inner(E_ab, E_cd) = F_b0 (F^-T)_ac F_d0, hence
  // gram = (f0 f0^T) (x) F^-T in column-major order.
  const Vec f0 = fs.f().col(0);
  const Mat outer = f0 * f0.transpose();
  const Mat inv_t = fs.f_inv().transpose();
  Mat gram(n * n, n * n);
  for (Index b = 0; b < n; ++b) {
    for (Index d = 0; d < n; ++d) {
      gram.block(b * n, d * n, n, n) = outer(b, d) * inv_t;
    }
  }
  gram = 0.5 * (gram + gram.transpose());

  Eigen::SelfAdjointEigenSolver<Mat> solver(gram);
  GnsSpace g{fs, gram, solver.eigenvalues(), {}, {}, {}, 0, 0.0, false};
  g.min_eigenvalue = g.eigenvalues.minCoeff();
  g.psd = g.min_eigenvalue >= -kGnsPsdTolerance;
  if (options.require_psd && g.min_eigenvalue < -options.psd_floor) {
    std::ostringstream msg;
    msg << "Gram has eigenvalue " << g.min_eigenvalue << " (form is not positive)";
    throw Error(ErrorCode::NotPSD, msg.str());
  }

  const double scale = g.eigenvalues.cwiseAbs().maxCoeff();
  std::vector<Index> range;
  std::vector<Index> null;
  for (Index i = 0; i < g.eigenvalues.size(); ++i) {
    if (std::abs(g.eigenvalues(i)) > options.rank_tolerance * scale) range.push_back(i);
    else null.push_back(i);
  }
  g.dim = static_cast<Index>(range.size());
  g.quotient_basis.resize(n * n, g.dim);
  g.quotient_metric.resize(g.dim);
  for (Index k = 0; k < g.dim; ++k) {
    g.quotient_basis.col(k) = solver.eigenvectors().col(range[k]);
    g.quotient_metric(k) = g.eigenvalues(range[k]);
  }
  g.null_basis.resize(n * n, static_cast<Index>(null.size()));
  for (Index k = 0; k < static_cast<Index>(null.size()); ++k) {
    g.null_basis.col(k) = solver.eigenvectors().col(null[k]);
  }
  return g;
}

Vec vector_of(const TransMatrix& a, const GnsSpace& g) { return g.quotient_basis.transpose() * vectorize(a); }

Mat represent(const TransMatrix& a, const GnsSpace& g) {
  const Index n = g.algebra_size();
  // vec(A X) = (I (x) A) vec(X)
  Mat left = Mat::Zero(n * n, n * n);
  for (Index b = 0; b < n; ++b) left.block(b * n, b * n, n, n) = a.entries();
  return g.quotient_basis.transpose() * left * g.quotient_basis;
}

double gns_norm(const TransMatrix& a, const GnsSpace& g) {
  return std::sqrt(std::max(0.0, gns_inner(a, a, g.fs)));
}

double left_ideal_residual(const TransMatrix& a, const GnsSpace& g) {
  const Index n = g.algebra_size();
  double worst = 0.0;
  for (Index k = 0; k < g.null_basis.cols(); ++k) {
    const TransMatrix x = unvectorize(g.null_basis.col(k), n);
    worst = std::max(worst, vector_of(compose(a, x), g).norm());
  }
  return worst;
}

NormBoundReport check_norm_bounds(const GnsSpace& g, const Model& m, std::span<const TransMatrix> samples,
                                  std::span<const Weight> states, double slack_floor) {
  NormBoundReport r;
  r.min_slack_twin = std::numeric_limits<double>::infinity();
  r.min_slack_product = std::numeric_limits<double>::infinity();
  for (const TransMatrix& a : samples) {
    const double phi = gns_norm(a, g);
    const double twin_norm = trans_norm(twin(a, g.fs), m);
    const double norm = trans_norm(a, m);
    r.min_slack_twin = std::min(r.min_slack_twin, twin_norm - phi);
    r.min_slack_product = std::min(r.min_slack_product, twin_norm * norm - phi * phi);
    ++r.samples;
  }
  for (const Weight& w : states) {
    const PreparationMap prep = find_preparation_map(w, m, g.fs);
    const TransMatrix tilde = (1.0 / prep.probability) * twin(prep.map, g.fs);
    r.c_phi = std::max(r.c_phi, gns_norm(tilde, g));
  }
  if (samples.empty()) {
    r.min_slack_twin = r.min_slack_product = 0.0;
  }
  r.pass = r.min_slack_twin >= -slack_floor && r.min_slack_product >= -slack_floor;
  return r;
}

double pairing(const Weight& w, const TransMatrix& a, const GnsSpace& g, const Model& m) {
  const PreparationMap prep = find_preparation_map(w, m, g.fs);
  const double phi = (prep.map.entries() * g.fs.f())(0, 0);
  if (phi <= tol::prob) {
    std::ostringstream msg;
    msg << "phi(T_omega) = " << phi;
    throw Error(ErrorCode::ZeroProbability, msg.str());
  }
  return gns_inner(twin(a, g.fs), twin(prep.map, g.fs), g.fs) / phi;
}

NullIdealReport null_ideal_characterization(const GnsSpace& g, const Model* m, double tolerance) {
  const Index n = g.algebra_size();
  const Vec f0 = g.fs.cyclic_weight();
  NullIdealReport r;
  r.null_dim = g.null_basis.cols();

  // (i) null(gram) against the annihilator of the cyclic weight.
  const Mat annihilate = map_matrix(n, n, [&](const TransMatrix& x) { return Vec(x.entries() * f0); });
  r.annihilator_dim = kernel_dim(annihilate);
  for (Index k = 0; k < g.null_basis.cols(); ++k) {
    r.max_null_residual = std::max(r.max_null_residual, (annihilate * g.null_basis.col(k)).norm());
  }
  const Mat annihilator_basis = null_space(annihilate);
  for (Index k = 0; k < annihilator_basis.cols(); ++k) {
    r.max_annihilator_leak =
        std::max(r.max_annihilator_leak, (g.quotient_basis.transpose() * annihilator_basis.col(k)).norm());
  }

  // (ii) twin(X) in the null ideal <=> X informationally trivial (row 0 = 0).
  const Mat twin_null = map_matrix(n, n, [&](const TransMatrix& x) { return Vec(twin(x, g.fs).entries() * f0); });
  const Mat row0 = map_matrix(n, n, [&](const TransMatrix& x) { return Vec(x.entries().row(0).transpose()); });
  r.twin_null_dim = kernel_dim(twin_null);
  r.trivial_dim = kernel_dim(row0);
  const Mat twin_null_basis = null_space(twin_null);
  for (Index k = 0; k < twin_null_basis.cols(); ++k) {
    r.max_twin_correspondence_gap =
        std::max(r.max_twin_correspondence_gap, (row0 * twin_null_basis.col(k)).norm());
  }
  const Mat trivial_basis = null_space(row0);
  for (Index k = 0; k < trivial_basis.cols(); ++k) {
    const TransMatrix x = unvectorize(trivial_basis.col(k), n);
    r.max_twin_correspondence_gap = std::max(r.max_twin_correspondence_gap, gns_norm(twin(x, g.fs), g));
    r.max_twin_correspondence_gap =
        std::max(r.max_twin_correspondence_gap, (twin_null * trivial_basis.col(k)).norm());
  }

  // (iii) null elements that are informationally nontrivial.
  Mat stacked(g.quotient_basis.cols() + row0.rows(), n * n);
  stacked << g.quotient_basis.transpose(), row0;
  r.boundary_dim = r.null_dim - kernel_dim(stacked);

  if (m != nullptr && !m->classical() && m->size() == n) {
    const Index d = m->native_dim();
    CMat keep = CMat::Zero(d, d);
    keep(0, 0) = 1.0;
    CMat flip = CMat::Zero(d, d);
    flip(0, 1) = 1.0;
    const TransMatrix x = encode_channel(KrausSet{keep}, *m) - encode_channel(KrausSet{flip}, *m);
    r.witness_norm = gns_norm(x, g);
    r.witness_twin_norm = gns_norm(twin(x, g.fs), g);
    r.witness_row0_norm = x.entries().row(0).norm();
  }

  r.characterization_pass = r.null_dim == r.annihilator_dim && r.max_null_residual < tolerance &&
                            r.max_annihilator_leak < tolerance && r.twin_null_dim == r.trivial_dim &&
                            r.max_twin_correspondence_gap < tolerance;
  return r;
}

}  // namespace optkit
