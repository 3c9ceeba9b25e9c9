#ifndef OPTKIT_GNS_HPP
#define OPTKIT_GNS_HPP

#include <optional>
#include <span>

#include "optkit/faithful.hpp"
#include "optkit/model.hpp"

namespace optkit {

// <A|B> = (F^T A^T (F^T)^-1 B F)_00, the bilinear form phi(A' o B) induced by
// the local state of a symmetric faithful state. Throws AsymmetricState.
double gns_inner(const TransMatrix& a, const TransMatrix& b, const FaithfulState& fs);

struct GnsOptions {
  // Reject Grams whose smallest eigenvalue is below -psd_floor.
  bool require_psd = false;
  double psd_floor = 1e-6;
  double rank_tolerance = tol::rank;
};

// The form over the algebra of generalized transformations, expressed on the
// (D+1)^2 matrix units E_ab (column-major: index a + b (D+1)), split into its
// null space and its range (the quotient space H_phi).
struct GnsSpace {
  FaithfulState fs;
  Mat gram;
  Vec eigenvalues;     // ascending
  Mat quotient_basis;  // orthonormal columns spanning range(gram)
  Mat null_basis;      // orthonormal columns spanning null(gram)
  Vec quotient_metric; // eigenvalues of gram on quotient_basis (the form there)
  Index dim = 0;
  double min_eigenvalue = 0.0;
  bool psd = false;    // min_eigenvalue >= -tol_psd

  Index algebra_size() const { return fs.size(); }
};

inline constexpr double kGnsPsdTolerance = 1e-9;

// Throws AsymmetricState, and NotPSD when options.require_psd is set and the
// Gram has an eigenvalue below -options.psd_floor.
GnsSpace build_gns(const FaithfulState& fs, const GnsOptions& options = {});

// Column-major vectorization of a transformation matrix.
Vec vectorize(const TransMatrix& a);
TransMatrix unvectorize(const Vec& v, Index size);

// Quotient coordinates of the class {A}.
Vec vector_of(const TransMatrix& a, const GnsSpace& g);

// pi_phi(A): left multiplication X -> A o X on quotient coordinates.
Mat represent(const TransMatrix& a, const GnsSpace& g);

// sqrt(max(0, <A|A>)); vanishes on the null ideal.
double gns_norm(const TransMatrix& a, const GnsSpace& g);

// Largest quotient component of A o X over the null basis X, i.e. how far
// the null space is from being a left ideal for this A.
double left_ideal_residual(const TransMatrix& a, const GnsSpace& g);

struct NormBoundReport {
  double min_slack_twin = 0.0;     // min over samples of ||A'|| - ||A||_phi
  double min_slack_product = 0.0;  // min over samples of ||A'|| ||A|| - ||A||_phi^2
  double c_phi = 0.0;              // sup over sampled states of ||T~_omega||_phi
  std::size_t samples = 0;
  bool pass = false;
};

// Checks ||A||_phi <= ||A'|| and ||A||_phi^2 <= ||A'|| ||A|| on every sample
// with slack >= -slack_floor. The states (optional) feed the empirical
// constant C_phi.
NormBoundReport check_norm_bounds(const GnsSpace& g, const Model& m, std::span<const TransMatrix> samples,
                                  std::span<const Weight> states = {}, double slack_floor = 1e-9);

// omega(A) recovered from the scalar product: <A'|T~_omega> with
// T~_omega = T'_omega / phi(T_omega). Throws ZeroProbability when
// phi(T_omega) <= 1e-12.
double pairing(const Weight& w, const TransMatrix& a, const GnsSpace& g, const Model& m);

struct NullIdealReport {
  Index null_dim = 0;              // dim null(gram)
  Index annihilator_dim = 0;       // dim {X : X f0 = 0}
  double max_null_residual = 0.0;  // max over null basis of ||X f0||
  double max_annihilator_leak = 0.0;  // max over annihilator basis of its quotient component
  Index twin_null_dim = 0;         // dim {X : twin(X) in null}
  Index trivial_dim = 0;           // dim {X : row 0 of X = 0}
  double max_twin_correspondence_gap = 0.0;  // |row0| on twin-null basis, twin-null residual on trivial basis
  // Null-ideal elements that are informationally nontrivial (row 0 != 0):
  // dim null - dim(null with row 0 = 0).
  Index boundary_dim = 0;
  // Explicit quantum witness X = A - B, A: rho -> <0|rho|0>|0><0|,
  // B: rho -> <1|rho|1>|0><0|.
  std::optional<double> witness_norm;       // ||X||_phi
  std::optional<double> witness_twin_norm;  // ||X'||_phi
  std::optional<double> witness_row0_norm;  // ||row0(X)||
  bool characterization_pass = false;  // null = annihilator, twin correspondence holds
};

NullIdealReport null_ideal_characterization(const GnsSpace& g, const Model* m = nullptr, double tolerance = 1e-8);

}  // namespace optkit

#endif  // OPTKIT_GNS_HPP
