#ifndef OPTKIT_MODEL_HPP
#define OPTKIT_MODEL_HPP

#include <memory>
#include <string>
#include <vector>

#include "optkit/bloch.hpp"
#include "optkit/linalg.hpp"

namespace optkit {

enum class ModelKind { quantum, classical, composite };

// A finite-dimensional theory instance realized on native N x N operators.
//
// Quantum models use the full Hermitian space; classical models live on the
// diagonal subspace (states are diagonal density matrices, effects diagonal
// operators). Either way the frame is a list of D+1 linearly independent
// operators with frame[0] = identity (the normalization functional), and
// Bloch coordinates are n_j = Tr[frame_j rho]. The dual frame satisfies
// Tr[frame_j dual_l] = delta_jl and reconstructs native operators.
class Model {
 public:
  // Builds a model from an explicit frame. Throws FrameDegenerate when the
  // frame Gram matrix is singular, InvalidArgument when frame[0] is not the
  // identity.
  static Model from_frame(ModelKind kind, bool classical, std::vector<CMat> frame, Index known_idim,
                          std::string name);

  ModelKind kind() const { return kind_; }
  // True when the native state space is the diagonal (simplex) subspace.
  bool classical() const { return classical_; }
  const std::string& name() const { return name_; }

  Index native_dim() const { return native_dim_; }
  // Affine dimension D of the state set.
  Index affine_dim() const { return static_cast<Index>(frame_.size()) - 1; }
  // Length of every Weight / Propensity of this model.
  Index size() const { return static_cast<Index>(frame_.size()); }
  Index known_idim() const { return known_idim_; }

  const std::vector<CMat>& frame() const { return frame_; }
  const std::vector<CMat>& dual_frame() const { return dual_; }
  // Tr[frame_j frame_l].
  const Mat& frame_gram() const { return gram_; }

  // Composite models remember their parts.
  const std::vector<std::shared_ptr<const Model>>& parts() const { return parts_; }

 private:
  friend Model composite_model(const Model& a, const Model& b);

  ModelKind kind_ = ModelKind::quantum;
  bool classical_ = false;
  std::string name_;
  Index native_dim_ = 0;
  Index known_idim_ = 0;
  std::vector<CMat> frame_;
  std::vector<CMat> dual_;
  Mat gram_;
  std::vector<std::shared_ptr<const Model>> parts_;
};

// Generalized Gell-Mann basis of traceless Hermitian d x d matrices, ordered
// symmetric off-diagonal, antisymmetric off-diagonal, then diagonal. For
// d = 2 this is (X, Y, Z).
std::vector<CMat> gell_mann_basis(Index d);

// Qudit with frame G_0 = I, G_j = (I + g_j / ||g_j||_inf) / 2.
Model quantum_model(Index d);

// Probability simplex over n outcomes: total mass plus the first n-1
// coordinate functionals.
Model classical_model(Index n);

// Product frame of two models of the same kind; frame index (i, j) maps to
// i * b.size() + j, so index 0 is the product of the normalizations.
Model composite_model(const Model& a, const Model& b);

// Replaces frame_1..frame_D by an orthogonal mix of themselves plus multiples
// of the identity. Frame-dependent quantities change, frame-invariant ones
// (dimensions) must not.
Model rotated_frame_model(const Model& m, unsigned long long seed);

enum class Validate { no, yes };

Weight encode_state(const CMat& rho, const Model& m, Validate validate = Validate::no);
CMat decode_state(const Weight& w, const Model& m);

Propensity encode_effect(const CMat& effect, const Model& m, Validate validate = Validate::no);
CMat decode_effect(const Propensity& p, const Model& m);

// Entry (j, l) = Tr[frame_j C(dual_l)]. Validation checks complete positivity
// and the trace-non-increasing condition.
TransMatrix encode_channel(const ChoiMatrix& choi, const Model& m, Validate validate = Validate::no);
TransMatrix encode_channel(const KrausSet& kraus, const Model& m, Validate validate = Validate::no);
ChoiMatrix decode_channel(const TransMatrix& t, const Model& m);

// Throws InvalidState / InvalidChannel with the offending quantity.
void validate_state(const CMat& rho, const Model& m);
void validate_channel(const ChoiMatrix& choi, const Model& m);

// Joint weight of the maximally entangled state Omega = sum_k |kk>/sqrt(N):
// entries Tr[(G_i (x) G_j) |Omega><Omega|] = Tr[G_i G_j^T] / N.
JointWeight max_entangled_joint(const Model& m);

// Native operator of the maximally entangled state, N^2 x N^2.
CMat max_entangled_state(Index n);

}  // namespace optkit

#endif  // OPTKIT_MODEL_HPP
