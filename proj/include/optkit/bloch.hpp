#ifndef OPTKIT_BLOCH_HPP
#define OPTKIT_BLOCH_HPP

#include <utility>

#include "optkit/types.hpp"

namespace optkit {

// Frame coordinates of a (possibly unnormalized, possibly generalized)
// state: coords[0] is the total mass, coords[1..D] the Bloch vector.
class Weight {
 public:
  Weight() = default;
  explicit Weight(Vec coords) : coords_(std::move(coords)) {}

  const Vec& coords() const { return coords_; }
  Index size() const { return coords_.size(); }
  double mass() const { return coords_(0); }
  double operator[](Index i) const { return coords_(i); }

  Weight normalized() const;

  friend Weight operator+(const Weight& a, const Weight& b);
  friend Weight operator-(const Weight& a, const Weight& b);
  friend Weight operator*(double s, const Weight& w) { return Weight(s * w.coords_); }

 private:
  Vec coords_;
};

// Row of frame coefficients (q, m) of an effect; evaluates m.n + q.n0.
class Propensity {
 public:
  Propensity() = default;
  explicit Propensity(Vec coords) : coords_(std::move(coords)) {}

  static Propensity unit(Index size);

  const Vec& coords() const { return coords_; }
  Index size() const { return coords_.size(); }
  double offset() const { return coords_(0); }
  double operator[](Index i) const { return coords_(i); }

  friend Propensity operator+(const Propensity& a, const Propensity& b);
  friend Propensity operator-(const Propensity& a, const Propensity& b);
  friend Propensity operator*(double s, const Propensity& p) { return Propensity(s * p.coords_); }

 private:
  Vec coords_;
};

// Block matrix of a transformation:
//
//   [ q   m^T ]     row 0: propensity of the transformation
//   [ k   M   ]     k: translation, M: linear part of the Bloch map
//
// Acts on Weight coordinates by a plain matrix-vector product.
class TransMatrix {
 public:
  TransMatrix() = default;
  explicit TransMatrix(Mat entries);

  static TransMatrix identity(Index size);
  static TransMatrix zero(Index size);

  const Mat& entries() const { return m_; }
  Index size() const { return m_.rows(); }
  double operator()(Index i, Index j) const { return m_(i, j); }

  Propensity propensity() const { return Propensity(m_.row(0).transpose()); }
  Vec translation() const { return m_.col(0).tail(m_.rows() - 1); }
  Mat linear_part() const { return m_.bottomRightCorner(m_.rows() - 1, m_.cols() - 1); }

  friend TransMatrix operator+(const TransMatrix& a, const TransMatrix& b);
  friend TransMatrix operator-(const TransMatrix& a, const TransMatrix& b);
  friend TransMatrix operator*(double s, const TransMatrix& t) { return TransMatrix(s * t.m_); }

 private:
  Mat m_;
};

// Joint frame coordinates n_i (.) n_j of a bipartite weight.
class JointWeight {
 public:
  JointWeight() = default;
  explicit JointWeight(Mat entries) : m_(std::move(entries)) {}

  static JointWeight product(const Weight& first, const Weight& second);

  const Mat& entries() const { return m_; }
  Index rows() const { return m_.rows(); }
  Index cols() const { return m_.cols(); }
  double operator()(Index i, Index j) const { return m_(i, j); }

 private:
  Mat m_;
};

enum class Side { first, second };
enum class Party { one = 1, two = 2 };

double probability(const Propensity& p, const Weight& w);

Weight apply(const TransMatrix& t, const Weight& w);

struct Conditioned {
  Weight state;
  double probability;
};

// Normalized output state and the probability of the transformation.
// Throws ZeroProbability when that probability is <= eps.
Conditioned condition(const TransMatrix& t, const Weight& w, double eps = tol::prob);

// outer o inner (inner acts first).
TransMatrix compose(const TransMatrix& outer, const TransMatrix& inner);

TransMatrix add(const TransMatrix& a, const TransMatrix& b);
TransMatrix scale(const TransMatrix& a, double lambda);
TransMatrix mix(const TransMatrix& a, const TransMatrix& b, double lambda);

JointWeight joint_apply(Side side, const TransMatrix& a, const JointWeight& j);
Weight local_weight(const JointWeight& j, Party party);

}  // namespace optkit

#endif  // OPTKIT_BLOCH_HPP
