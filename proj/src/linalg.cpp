#include "optkit/linalg.hpp"

#include <algorithm>

namespace optkit {

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

bool is_hermitian(const CMat& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tolerance * std::max(1.0, m.cwiseAbs().maxCoeff());
}

Vec hermitian_eigenvalues(const CMat& m) {
  const CMat h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double min_eigenvalue(const CMat& m) { return hermitian_eigenvalues(m).minCoeff(); }

double max_eigenvalue(const CMat& m) { return hermitian_eigenvalues(m).maxCoeff(); }

CMat partial_trace_second(const CMat& m, Index d1, Index d2) {
  CMat out = CMat::Zero(d1, d1);
  for (Index i = 0; i < d1; ++i) {
    for (Index j = 0; j < d1; ++j) {
      out(i, j) = m.block(i * d2, j * d2, d2, d2).trace();
    }
  }
  return out;
}

CMat partial_trace_first(const CMat& m, Index d1, Index d2) {
  CMat out = CMat::Zero(d2, d2);
  for (Index i = 0; i < d1; ++i) {
    out += m.block(i * d2, i * d2, d2, d2);
  }
  return out;
}

ChoiMatrix choi_from_kraus(const KrausSet& kraus) {
  if (kraus.empty()) {
    throw Error(ErrorCode::InvalidChannel, "empty Kraus set");
  }
  const Index din = kraus.front().cols();
  const Index dout = kraus.front().rows();
  ChoiMatrix choi{CMat::Zero(din * dout, din * dout), din, dout};
  for (const CMat& k : kraus) {
    if (k.cols() != din || k.rows() != dout) {
      throw Error(ErrorCode::InvalidChannel, "Kraus operators of inconsistent shape");
    }
    for (Index i = 0; i < din; ++i) {
      for (Index j = 0; j < din; ++j) {
        // C(E_ij) = sum_k K |i><j| K^dagger
        choi.matrix.block(i * dout, j * dout, dout, dout) += k.col(i) * k.col(j).adjoint();
      }
    }
  }
  return choi;
}

CMat apply_choi(const ChoiMatrix& choi, const CMat& x) {
  if (x.rows() != choi.in_dim || x.cols() != choi.in_dim) {
    throw Error(ErrorCode::DimensionMismatch, "operator does not match channel input dimension");
  }
  CMat out = CMat::Zero(choi.out_dim, choi.out_dim);
  for (Index i = 0; i < choi.in_dim; ++i) {
    for (Index j = 0; j < choi.in_dim; ++j) {
      if (x(i, j) == Complex(0.0, 0.0)) continue;
      out += x(i, j) * choi.matrix.block(i * choi.out_dim, j * choi.out_dim, choi.out_dim, choi.out_dim);
    }
  }
  return out;
}

CMat apply_kraus(const KrausSet& kraus, const CMat& x) {
  CMat out = CMat::Zero(kraus.front().rows(), kraus.front().rows());
  for (const CMat& k : kraus) out += k * x * k.adjoint();
  return out;
}

ChoiMatrix transpose_channel(const ChoiMatrix& choi) {
  if (choi.in_dim != choi.out_dim) {
    throw Error(ErrorCode::DimensionMismatch, "transposed channel needs equal input and output dimensions");
  }
  // K -> K^T swaps the two tensor factors of the Choi matrix.
  const Index n = choi.in_dim;
  ChoiMatrix out{CMat(choi.matrix.rows(), choi.matrix.cols()), n, n};
  for (Index i = 0; i < n; ++i) {
    for (Index a = 0; a < n; ++a) {
      for (Index j = 0; j < n; ++j) {
        for (Index b = 0; b < n; ++b) out.matrix(a * n + i, b * n + j) = choi.matrix(i * n + a, j * n + b);
      }
    }
  }
  return out;
}

double trace_norm(const CMat& m) { return hermitian_eigenvalues(m).cwiseAbs().sum(); }

Mat null_space(const Mat& m, double relative) {
  const Index n = m.cols();
  if (m.rows() == 0) return Mat::Identity(n, n);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const Vec& s = svd.singularValues();
  const double threshold = relative * std::max(1.0, s.size() > 0 ? s(0) : 0.0);
  Index rank = 0;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > threshold) ++rank;
  }
  return svd.matrixV().rightCols(n - rank);
}

Index numerical_rank(const Mat& m, double relative) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Mat> svd(m);
  const Vec& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  Index rank = 0;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > relative * s(0)) ++rank;
  }
  return rank;
}

}  // namespace optkit
