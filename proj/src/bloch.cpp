#include "optkit/bloch.hpp"

#include <sstream>

namespace optkit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroProbability: return "ZeroProbability";
    case ErrorCode::NotCoexistent: return "NotCoexistent";
    case ErrorCode::FrameDegenerate: return "FrameDegenerate";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::InvalidChannel: return "InvalidChannel";
    case ErrorCode::InvalidEffect: return "InvalidEffect";
    case ErrorCode::UnsupportedComposite: return "UnsupportedComposite";
    case ErrorCode::UnsupportedModel: return "UnsupportedModel";
    case ErrorCode::NotFaithful: return "NotFaithful";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::AsymmetricState: return "AsymmetricState";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::InvalidPOVM: return "InvalidPOVM";
    case ErrorCode::WitnessInvalid: return "WitnessInvalid";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

void require_same(Index a, Index b, const char* what) {
  if (a != b) {
    std::ostringstream msg;
    msg << what << ": " << a << " vs " << b;
    throw Error(ErrorCode::DimensionMismatch, msg.str());
  }
}

}  // namespace

Weight Weight::normalized() const {
  if (std::abs(mass()) <= tol::prob) {
    throw Error(ErrorCode::ZeroProbability, "cannot normalize a weight with zero mass");
  }
  return Weight(coords_ / mass());
}

Weight operator+(const Weight& a, const Weight& b) {
  require_same(a.size(), b.size(), "weight sum");
  return Weight(a.coords_ + b.coords_);
}

Weight operator-(const Weight& a, const Weight& b) {
  require_same(a.size(), b.size(), "weight difference");
  return Weight(a.coords_ - b.coords_);
}

Propensity Propensity::unit(Index size) {
  Vec c = Vec::Zero(size);
  c(0) = 1.0;
  return Propensity(std::move(c));
}

Propensity operator+(const Propensity& a, const Propensity& b) {
  require_same(a.size(), b.size(), "propensity sum");
  return Propensity(a.coords_ + b.coords_);
}

Propensity operator-(const Propensity& a, const Propensity& b) {
  require_same(a.size(), b.size(), "propensity difference");
  return Propensity(a.coords_ - b.coords_);
}

TransMatrix::TransMatrix(Mat entries) : m_(std::move(entries)) {
  require_same(m_.rows(), m_.cols(), "transformation matrix must be square");
}

TransMatrix TransMatrix::identity(Index size) { return TransMatrix(Mat::Identity(size, size)); }

TransMatrix TransMatrix::zero(Index size) { return TransMatrix(Mat::Zero(size, size)); }

TransMatrix operator+(const TransMatrix& a, const TransMatrix& b) {
  require_same(a.size(), b.size(), "transformation sum");
  return TransMatrix(a.m_ + b.m_);
}

TransMatrix operator-(const TransMatrix& a, const TransMatrix& b) {
  require_same(a.size(), b.size(), "transformation difference");
  return TransMatrix(a.m_ - b.m_);
}

JointWeight JointWeight::product(const Weight& first, const Weight& second) {
  return JointWeight(first.coords() * second.coords().transpose());
}

double probability(const Propensity& p, const Weight& w) {
  require_same(p.size(), w.size(), "probability");
  return p.coords().dot(w.coords());
}

Weight apply(const TransMatrix& t, const Weight& w) {
  require_same(t.size(), w.size(), "apply");
  return Weight(t.entries() * w.coords());
}

Conditioned condition(const TransMatrix& t, const Weight& w, double eps) {
  Weight out = apply(t, w);
  const double p = out.mass();
  if (p <= eps) {
    std::ostringstream msg;
    msg << "transformation occurs with probability " << p;
    throw Error(ErrorCode::ZeroProbability, msg.str());
  }
  return {Weight(out.coords() / p), p};
}

TransMatrix compose(const TransMatrix& outer, const TransMatrix& inner) {
  require_same(outer.size(), inner.size(), "compose");
  return TransMatrix(outer.entries() * inner.entries());
}

TransMatrix add(const TransMatrix& a, const TransMatrix& b) { return a + b; }

TransMatrix scale(const TransMatrix& a, double lambda) { return lambda * a; }

TransMatrix mix(const TransMatrix& a, const TransMatrix& b, double lambda) {
  require_same(a.size(), b.size(), "mix");
  return TransMatrix(lambda * a.entries() + (1.0 - lambda) * b.entries());
}

JointWeight joint_apply(Side side, const TransMatrix& a, const JointWeight& j) {
  if (side == Side::first) {
    require_same(a.size(), j.rows(), "joint_apply(first)");
    return JointWeight(a.entries() * j.entries());
  }
  require_same(a.size(), j.cols(), "joint_apply(second)");
  return JointWeight(j.entries() * a.entries().transpose());
}

Weight local_weight(const JointWeight& j, Party party) {
  if (party == Party::one) {
    return Weight(j.entries().col(0));
  }
  return Weight(j.entries().row(0).transpose());
}

}  // namespace optkit
