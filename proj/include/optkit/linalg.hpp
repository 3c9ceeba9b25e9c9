#ifndef OPTKIT_LINALG_HPP
#define OPTKIT_LINALG_HPP

#include <vector>

#include "optkit/types.hpp"

namespace optkit {

using KrausSet = std::vector<CMat>;

// Choi matrix in the column-stacking convention
//   Choi = sum_ij E_ij (x) C(E_ij)
// (input factor first). Block (i, j) of size out_dim x out_dim is C(E_ij).
struct ChoiMatrix {
  CMat matrix;
  Index in_dim = 0;
  Index out_dim = 0;
};

CMat kron(const CMat& a, const CMat& b);

bool is_hermitian(const CMat& m, double tolerance = tol::hermitian);
Vec hermitian_eigenvalues(const CMat& m);
double min_eigenvalue(const CMat& m);
double max_eigenvalue(const CMat& m);

// Tr_2 and Tr_1 of an operator on C^d1 (x) C^d2.
CMat partial_trace_second(const CMat& m, Index d1, Index d2);
CMat partial_trace_first(const CMat& m, Index d1, Index d2);

ChoiMatrix choi_from_kraus(const KrausSet& kraus);
CMat apply_choi(const ChoiMatrix& choi, const CMat& x);
CMat apply_kraus(const KrausSet& kraus, const CMat& x);

// Choi of the map whose Kraus operators are the transposes of those of C:
// the input and output factors swapped. Needs in_dim == out_dim.
ChoiMatrix transpose_channel(const ChoiMatrix& choi);

// Trace norm of a Hermitian operator.
double trace_norm(const CMat& m);

// Orthonormal basis (columns) of the null space of m, relative threshold.
Mat null_space(const Mat& m, double relative = 1e-10);
Index numerical_rank(const Mat& m, double relative);

}  // namespace optkit

#endif  // OPTKIT_LINALG_HPP
