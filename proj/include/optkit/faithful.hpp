#ifndef OPTKIT_FAITHFUL_HPP
#define OPTKIT_FAITHFUL_HPP

#include <span>
#include <vector>

#include "optkit/bloch.hpp"
#include "optkit/model.hpp"

namespace optkit {

// Joint-frame matrix F of a bipartite state whose local conditioning
// determines transformations one-to-one (F invertible). Column 0 of F is
// the local weight of party 1, row 0 that of party 2.
class FaithfulState {
 public:
  const JointWeight& joint() const { return joint_; }
  const Mat& f() const { return f_; }
  const Mat& f_inv() const { return f_inv_; }
  bool symmetric() const { return symmetric_; }
  double condition_number() const { return cond_; }
  Index size() const { return f_.rows(); }

  // Column 0 of F, the cyclic local weight.
  Vec cyclic_weight() const { return f_.col(0); }

 private:
  friend FaithfulState f_matrix(const JointWeight& j, bool require_symmetric, double tolerance);

  JointWeight joint_;
  Mat f_;
  Mat f_inv_;
  bool symmetric_ = false;
  double cond_ = 0.0;
};

// Throws NotFaithful when the smallest singular value is below
// tolerance * largest, NotSymmetric when symmetry is required and
// ||F - F^T||_F >= tolerance * ||F||_F.
FaithfulState f_matrix(const JointWeight& j, bool require_symmetric = true, double tolerance = 1e-9);

// Operational transposition A' = F^T A^T (F^T)^-1, the unique matrix with
// A F = F A'^T.
TransMatrix twin(const TransMatrix& a, const FaithfulState& fs);

struct AdjointReport {
  double max_additivity = 0.0;     // ||(A+B)' - A' - B'||_F
  double max_involution = 0.0;     // ||A'' - A||_F
  double max_antihomomorphism = 0.0;  // ||(AB)' - B'A'||_F
  // min over samples of ||A'A||_F / ||A||_F^2; the nondegeneracy axiom
  // A'A = 0 => A = 0 holds on the samples when this stays away from zero.
  double min_nondegeneracy_ratio = 0.0;
  bool additivity_pass = false;
  bool involution_pass = false;
  bool antihomomorphism_pass = false;
  bool nondegeneracy_pass = false;
  std::size_t pairs = 0;

  bool all_pass() const { return additivity_pass && involution_pass && antihomomorphism_pass && nondegeneracy_pass; }
};

// Checks the four generalized-adjoint axioms on all sample pairs. Throws
// AsymmetricState for a non-symmetric F unless allow_asymmetric is set, in
// which case each axiom is still reported on its own.
AdjointReport check_generalized_adjoint(const FaithfulState& fs, std::span<const TransMatrix> samples,
                                        double tolerance = 1e-9, bool allow_asymmetric = false);

struct PreparationMap {
  TransMatrix map;
  double probability = 0.0;
};

// Measure-and-prepare witness of preparational faithfulness: the native map
// rho -> Tr[omega^T rho] |0><0| applied on party 1 of the maximally entangled
// state leaves party 2 in omega with probability 1/N. The construction is
// verified against fs before returning.
PreparationMap find_preparation_map(const Weight& w, const Model& m, const FaithfulState& fs);

}  // namespace optkit

#endif  // OPTKIT_FAITHFUL_HPP
