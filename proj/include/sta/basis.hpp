#pragma once

// Orthonormal time-dependent vector sets built from products of elementary
// two-level rotations, and the three-level frame used for the Lambda system.

#include <array>
#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace sta {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3cd;
using Mat3 = Eigen::Matrix3cd;

/// Basis order shared by every module: |g>, |a>, |e>.
enum Level : int { kGround = 0, kIntermediate = 1, kTarget = 2 };

inline constexpr double kUnitaryTolerance = 1e-12;
inline constexpr double kRayTolerance = 1e-10;

/// Square complex matrix with U U^dagger = 1 checked on construction.
class UnitaryMatrix {
 public:
  /// Throws InvariantViolation if `entries` is not unitary within `tol`.
  explicit UnitaryMatrix(Eigen::MatrixXcd entries, double tol = kUnitaryTolerance);

  static UnitaryMatrix identity(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXcd& entries() const { return m_; }
  cplx operator()(int row, int col) const { return m_(row, col); }

  /// max |(U U^dagger - 1)_ij|
  double unitarity_defect() const;

 private:
  Eigen::MatrixXcd m_;
};

/// Stage-k rotation A^(k) in dimension 2 or 3.
///
/// Stage 1 embeds the block [[cos t, e^{ic} sin t], [sin t, -e^{ic} cos t]] in
/// rows/columns (1,2). In dimension 3, stages 2 and 3 use the exchanged form
/// [[0, e^{ic} sin t, cos t], [0, -e^{ic} cos t, sin t], [1, 0, 0]]. In
/// dimension 2 every stage uses the stage-1 block.
UnitaryMatrix elementary_matrix(int dim, int stage, double theta, double chi);

/// Ordered product of stages given in application order: {A1, A2, A3} -> A3 A2 A1.
UnitaryMatrix compose(std::span<const UnitaryMatrix> stages);

/// Rows of `a` as vectors: |zeta_n> = sum_m A_{n,m} |m>.
std::vector<Eigen::VectorXcd> basis_vectors(const UnitaryMatrix& a);

/// Rates of the frame parameters at the evaluation time.
struct FrameRates {
  double theta_dot = 0.0;
  double gamma_dot = 0.0;
  double phi1_dot = 0.0;
  double phi2_dot = 0.0;
};

/// The evolution path |phi0> and its two orthogonal partners, with analytic
/// time derivatives, in the (|g>, |a>, |e>) basis.
struct FrameBasis {
  std::array<Vec3, 3> phi;
  std::array<Vec3, 3> dphi;
  double theta = 0.0;
  double gamma = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
  FrameRates rates;

  /// Rotation R = sum_n |n><phi_n|; row n is <phi_n|.
  Mat3 rotation() const;
  /// d/dt of R.
  Mat3 rotation_dot() const;
};

/// |phi0> = cos(theta) cos(gamma) e^{i phi1}|g> + sin(gamma)|a> + sin(theta) cos(gamma) e^{i phi2}|e>
/// |phi1,2> = -(1/sqrt2)[(sin(gamma) cos(theta) +/- i sin(theta)) e^{i phi1}|g> - cos(gamma)|a>
///                       + (sin(gamma) sin(theta) -/+ i cos(theta)) e^{i phi2}|e>]
FrameBasis lambda_frame(double theta, double gamma, double phi1, double phi2, const FrameRates& rates);

/// |<u|v>| = 1 within `tol`, i.e. the vectors are the same ray.
bool same_ray(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v, double tol = kRayTolerance);

}  // namespace sta
