#include "optkit/random.hpp"

#include <cmath>

namespace optkit {

CMat Rng::ginibre(Index rows, Index cols) {
  CMat g(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      const double re = normal();
      const double im = normal();
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

CMat random_state(const Model& m, Rng& rng) {
  const Index n = m.native_dim();
  const CMat g = rng.ginibre(n, n);
  CMat rho = g * g.adjoint();
  if (m.classical()) rho = CMat(rho.diagonal().real().cast<Complex>().asDiagonal());
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

KrausSet random_channel(const Model& m, Rng& rng, TraceMode mode) {
  const Index n = m.native_dim();
  KrausSet kraus;
  if (m.classical()) {
    Mat s(n, n);
    for (Index b = 0; b < n; ++b) {
      for (Index a = 0; a < n; ++a) s(a, b) = std::abs(rng.normal()) + 1e-3;
      s.col(b) /= s.col(b).sum();
      if (mode == TraceMode::decreasing) s.col(b) *= rng.uniform(0.2, 0.9);
    }
    for (Index a = 0; a < n; ++a) {
      for (Index b = 0; b < n; ++b) {
        CMat k = CMat::Zero(n, n);
        k(a, b) = std::sqrt(s(a, b));
        kraus.push_back(std::move(k));
      }
    }
    return kraus;
  }
  const Index rank = n;
  const CMat z = rng.ginibre(n * rank, n);
  Eigen::HouseholderQR<CMat> qr(z);
  const CMat v = qr.householderQ() * CMat::Identity(n * rank, n);
  for (Index r = 0; r < rank; ++r) {
    if (mode == TraceMode::decreasing && r == rank - 1) break;
    kraus.push_back(v.block(r * n, 0, n, n));
  }
  return kraus;
}

CMat random_effect(const Model& m, Rng& rng) {
  const Index n = m.native_dim();
  const CMat g = rng.ginibre(n, n);
  CMat x = g * g.adjoint();
  if (m.classical()) x = CMat(x.diagonal().real().cast<Complex>().asDiagonal());
  x = 0.5 * (x + x.adjoint());
  const double u = rng.uniform();
  return x / (max_eigenvalue(x) + u);
}

TransMatrix random_channel_matrix(const Model& m, Rng& rng) {
  return encode_channel(random_channel(m, rng), m);
}

TransMatrix random_generalized(const Model& m, Rng& rng) {
  const TransMatrix c1 = random_channel_matrix(m, rng);
  const TransMatrix c2 = random_channel_matrix(m, rng);
  const double a = rng.uniform(-1.0, 1.0);
  const double b = rng.uniform(-1.0, 1.0);
  return a * c1 + b * c2;
}

}  // namespace optkit
