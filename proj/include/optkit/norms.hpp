#ifndef OPTKIT_NORMS_HPP
#define OPTKIT_NORMS_HPP

#include <span>

#include "optkit/bloch.hpp"
#include "optkit/model.hpp"

namespace optkit {

// sup over normalized states w of |probability(row0(T), w)|. Exact: the
// supremum of |Tr[E rho]| over the model's states is the largest absolute
// eigenvalue of the effect operator E decoded from row 0. Contractions
// (physical transformations) have norm <= 1. On generalized elements this
// is a seminorm.
double trans_norm(const TransMatrix& t, const Model& m);

// Same supremum for a bare propensity.
double propensity_norm(const Propensity& p, const Model& m);

// sup over physical effects of |evaluation of w|; for a Hermitian operator
// with positive part rho+ and negative part rho- this is max(Tr rho+, Tr rho-).
double weight_norm(const Weight& w, const Model& m);

// Lower bound on trans_norm for models without an exact oracle: the largest
// |probability| over the supplied normalized states.
double sampled_trans_norm(const TransMatrix& t, std::span<const Weight> states);

// True iff ||t1 + t2|| <= 1 + tolerance.
bool is_coexistent(const TransMatrix& t1, const TransMatrix& t2, const Model& m, double tolerance = tol::norm);

// A propensity is predictable when it attains both 1 and 0 on the state set.
bool is_predictable(const Propensity& p, const Model& m, double tolerance = 1e-12);

// Physically checked combinations. add_physical throws NotCoexistent when
// the sum is not a contraction; scale_physical requires 0 <= lambda <= 1/||t||.
TransMatrix add_physical(const TransMatrix& t1, const TransMatrix& t2, const Model& m, double tolerance = tol::norm);
TransMatrix scale_physical(const TransMatrix& t, double lambda, const Model& m, double tolerance = tol::norm);

enum class CombineKind { add, scale, mix };

// Unified front end over add/scale/mix; `physical` selects the checked
// variants (mix needs 0 <= lambda <= 1 and two contractions).
TransMatrix combine(CombineKind kind, const TransMatrix& t1, const TransMatrix* t2, double lambda,
                    const Model* physical = nullptr);

}  // namespace optkit

#endif  // OPTKIT_NORMS_HPP
