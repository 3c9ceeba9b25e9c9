#ifndef OPTKIT_TYPES_HPP
#define OPTKIT_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace optkit {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using Complex = std::complex<double>;
using Index = Eigen::Index;

enum class ErrorCode {
  DimensionMismatch,
  ZeroProbability,
  NotCoexistent,
  FrameDegenerate,
  InvalidState,
  InvalidChannel,
  InvalidEffect,
  UnsupportedComposite,
  UnsupportedModel,
  NotFaithful,
  NotSymmetric,
  AsymmetricState,
  NotNormalized,
  NotPSD,
  InvalidPOVM,
  WitnessInvalid,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers (the CLI in particular) can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Numerical thresholds shared across modules.
namespace tol {
inline constexpr double prob = 1e-12;       // conditioning on a zero-probability event
inline constexpr double norm = 1e-9;        // norm comparisons (coexistence, contraction)
inline constexpr double hermitian = 1e-12;  // Hermiticity of native operators
inline constexpr double psd = 1e-10;        // eigenvalue floor for PSD checks
inline constexpr double rank = 1e-10;       // relative rank threshold for the GNS Gram
inline constexpr double adm_rank = 1e-9;    // relative rank threshold for affine dimension
}  // namespace tol

}  // namespace optkit

#endif  // OPTKIT_TYPES_HPP
