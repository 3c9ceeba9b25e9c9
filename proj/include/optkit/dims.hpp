#ifndef OPTKIT_DIMS_HPP
#define OPTKIT_DIMS_HPP

#include <string>
#include <vector>

#include "optkit/model.hpp"

namespace optkit {

// Numerical rank of the centered matrix of encoded states drawn from a
// spanning family (basis states plus 2 (D+1) random states).
Index adm(const Model& m, std::uint64_t seed = 7);

// A perfectly discriminable set: states omega_n and predictable propensities
// l_n with l_n(omega_m) = delta_nm and sum_n l_n = unit propensity.
struct DiscriminationWitness {
  std::vector<Weight> states;
  std::vector<Propensity> tests;
};

struct IdimResult {
  Index value = 0;
  DiscriminationWitness witness;
  double max_deviation = 0.0;  // max |l_n(omega_m) - delta_nm| and normalization residual
};

// Built-in models: the computational basis with its projectors. Throws
// WitnessInvalid naming the failing (n, m) pair.
IdimResult idim(const Model& m);
IdimResult idim(const Model& m, DiscriminationWitness witness);

// Verifies a witness without trusting the model's known idim.
void verify_witness(const DiscriminationWitness& witness, const Model& m, double* max_deviation = nullptr);

// Exhaustive search over vertices and edge midpoints of a classical simplex
// with n <= 4: the largest family with pairwise disjoint supports (perfect
// discrimination in a simplex).
Index classical_idim_search(const Model& m);

struct Check {
  std::string name;
  bool pass = false;
  double measured = 0.0;  // left-hand side
  double bound = 0.0;     // right-hand side
  std::string relation;   // "<=", ">=", "=="
};

struct AuditReport {
  std::string model;
  Index adm_single = 0;
  Index adm_pair = 0;
  Index idim_single = 0;
  Index idim_pair = 0;
  double witness_deviation = 0.0;
  // bound_upper, bound_lower, pair_equality, quadratic_law, tensor_rule,
  // discriminating_relation, in that order.
  std::vector<Check> checks;
  // idim(pair) >= idim^2, reported alongside the six checks.
  bool pair_idim_monotone = false;

  Index violations() const;
  const Check& check(const std::string& name) const;
};

// Builds composite_model(m, m) and evaluates the dimension bounds and
// identities. Violations are report content, never errors.
AuditReport audit(const Model& m);

}  // namespace optkit

#endif  // OPTKIT_DIMS_HPP
