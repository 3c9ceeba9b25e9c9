#include "optkit/norms.hpp"

#include <algorithm>
#include <sstream>

namespace optkit {

double propensity_norm(const Propensity& p, const Model& m) {
  return hermitian_eigenvalues(decode_effect(p, m)).cwiseAbs().maxCoeff();
}

double trans_norm(const TransMatrix& t, const Model& m) { return propensity_norm(t.propensity(), m); }

double weight_norm(const Weight& w, const Model& m) {
  const Vec ev = hermitian_eigenvalues(decode_state(w, m));
  double pos = 0.0;
  double neg = 0.0;
  for (Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > 0.0) pos += ev(i);
    else neg -= ev(i);
  }
  return std::max(pos, neg);
}

double sampled_trans_norm(const TransMatrix& t, std::span<const Weight> states) {
  double best = 0.0;
  const Propensity p = t.propensity();
  for (const Weight& w : states) best = std::max(best, std::abs(probability(p, w)));
  return best;
}

bool is_coexistent(const TransMatrix& t1, const TransMatrix& t2, const Model& m, double tolerance) {
  return trans_norm(t1 + t2, m) <= 1.0 + tolerance;
}

bool is_predictable(const Propensity& p, const Model& m, double tolerance) {
  const Vec ev = hermitian_eigenvalues(decode_effect(p, m));
  return std::abs(ev.maxCoeff() - 1.0) <= tolerance && std::abs(ev.minCoeff()) <= tolerance;
}

TransMatrix add_physical(const TransMatrix& t1, const TransMatrix& t2, const Model& m, double tolerance) {
  TransMatrix sum = t1 + t2;
  const double n = trans_norm(sum, m);
  if (n > 1.0 + tolerance) {
    std::ostringstream msg;
    msg << "sum has norm " << n << " > 1";
    throw Error(ErrorCode::NotCoexistent, msg.str());
  }
  return sum;
}

TransMatrix scale_physical(const TransMatrix& t, double lambda, const Model& m, double tolerance) {
  const double n = trans_norm(t, m);
  if (lambda < 0.0 || lambda * n > 1.0 + tolerance) {
    std::ostringstream msg;
    msg << "scale factor " << lambda << " outside [0, 1/" << n << "]";
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
  return lambda * t;
}

TransMatrix combine(CombineKind kind, const TransMatrix& t1, const TransMatrix* t2, double lambda,
                    const Model* physical) {
  if (kind != CombineKind::scale && t2 == nullptr) {
    throw Error(ErrorCode::InvalidArgument, "add and mix need two operands");
  }
  switch (kind) {
    case CombineKind::add:
      return physical ? add_physical(t1, *t2, *physical) : add(t1, *t2);
    case CombineKind::scale:
      return physical ? scale_physical(t1, lambda, *physical) : scale(t1, lambda);
    case CombineKind::mix:
      if (physical) {
        if (lambda < 0.0 || lambda > 1.0) {
          throw Error(ErrorCode::InvalidArgument, "mixing weight outside [0, 1]");
        }
        if (trans_norm(t1, *physical) > 1.0 + tol::norm || trans_norm(*t2, *physical) > 1.0 + tol::norm) {
          throw Error(ErrorCode::InvalidArgument, "mixing operands must be contractions");
        }
      }
      return mix(t1, *t2, lambda);
  }
  return t1;
}

}  // namespace optkit
