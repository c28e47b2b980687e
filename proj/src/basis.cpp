#include "sta/basis.hpp"

#include <cmath>
#include <string>

#include "sta/error.hpp"

namespace sta {

namespace {

constexpr cplx kI{0.0, 1.0};

}  // namespace

UnitaryMatrix::UnitaryMatrix(Eigen::MatrixXcd entries, double tol) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    throw DimensionError("unitary matrix must be square and non-empty");
  }
  const double defect = unitarity_defect();
  if (!(defect <= tol)) {
    throw InvariantViolation("matrix is not unitary: max |U U^dagger - 1| = " + std::to_string(defect));
  }
}

UnitaryMatrix UnitaryMatrix::identity(int dim) {
  if (dim < 1) throw DimensionError("identity dimension must be positive");
  return UnitaryMatrix(Eigen::MatrixXcd::Identity(dim, dim));
}

double UnitaryMatrix::unitarity_defect() const {
  const Eigen::MatrixXcd gram = m_ * m_.adjoint() - Eigen::MatrixXcd::Identity(m_.rows(), m_.cols());
  return gram.cwiseAbs().maxCoeff();
}

UnitaryMatrix elementary_matrix(int dim, int stage, double theta, double chi) {
  if (dim != 2 && dim != 3) {
    throw DimensionError("elementary_matrix supports dimension 2 or 3, got " + std::to_string(dim));
  }
  if (stage < 1 || stage > dim) {
    throw DimensionError("stage " + std::to_string(stage) + " is not defined in dimension " +
                         std::to_string(dim));
  }
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const cplx phase = std::polar(1.0, chi);

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  if (dim == 2 || stage == 1) {
    m(0, 0) = c;
    m(0, 1) = phase * s;
    m(1, 0) = s;
    m(1, 1) = -phase * c;
    if (dim == 3) m(2, 2) = 1.0;
  } else {
    m(0, 1) = phase * s;
    m(0, 2) = c;
    m(1, 1) = -phase * c;
    m(1, 2) = s;
    m(2, 0) = 1.0;
  }
  return UnitaryMatrix(std::move(m));
}

UnitaryMatrix compose(std::span<const UnitaryMatrix> stages) {
  if (stages.empty()) throw DimensionError("compose needs at least one stage");
  const int dim = stages.front().dim();
  Eigen::MatrixXcd product = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& stage : stages) {
    if (stage.dim() != dim) {
      throw DimensionError("compose: stage of dimension " + std::to_string(stage.dim()) +
                           " does not match " + std::to_string(dim));
    }
    product = stage.entries() * product;
  }
  return UnitaryMatrix(std::move(product));
}

std::vector<Eigen::VectorXcd> basis_vectors(const UnitaryMatrix& a) {
  std::vector<Eigen::VectorXcd> out;
  out.reserve(a.dim());
  for (int n = 0; n < a.dim(); ++n) out.emplace_back(a.entries().row(n).transpose());
  return out;
}

Mat3 FrameBasis::rotation() const {
  Mat3 r;
  for (int n = 0; n < 3; ++n) r.row(n) = phi[n].adjoint();
  return r;
}

Mat3 FrameBasis::rotation_dot() const {
  Mat3 r;
  for (int n = 0; n < 3; ++n) r.row(n) = dphi[n].adjoint();
  return r;
}

FrameBasis lambda_frame(double theta, double gamma, double phi1, double phi2, const FrameRates& rates) {
  const double ct = std::cos(theta), st = std::sin(theta);
  const double cg = std::cos(gamma), sg = std::sin(gamma);
  const double td = rates.theta_dot, gd = rates.gamma_dot;
  const cplx e1 = std::polar(1.0, phi1);
  const cplx e2 = std::polar(1.0, phi2);

  FrameBasis f;
  f.theta = theta;
  f.gamma = gamma;
  f.phi1 = phi1;
  f.phi2 = phi2;
  f.rates = rates;

  f.phi[0] = Vec3(ct * cg * e1, sg, st * cg * e2);
  f.dphi[0] = Vec3(e1 * (-st * cg * td - ct * sg * gd + kI * rates.phi1_dot * ct * cg),
                   cg * gd,
                   e2 * (ct * cg * td - st * sg * gd + kI * rates.phi2_dot * st * cg));

  // Partners differ only in the sign of the imaginary parts.
  const double k = -1.0 / std::sqrt(2.0);
  for (int n = 1; n <= 2; ++n) {
    const double sign = n == 1 ? 1.0 : -1.0;
    const cplx g_amp = sg * ct + sign * kI * st;
    const cplx e_amp = sg * st - sign * kI * ct;
    const cplx g_amp_dot = cg * ct * gd - sg * st * td + sign * kI * ct * td;
    const cplx e_amp_dot = cg * st * gd + sg * ct * td + sign * kI * st * td;

    f.phi[n] = k * Vec3(g_amp * e1, -cg, e_amp * e2);
    f.dphi[n] = k * Vec3(e1 * (g_amp_dot + kI * rates.phi1_dot * g_amp),
                         sg * gd,
                         e2 * (e_amp_dot + kI * rates.phi2_dot * e_amp));
  }
  return f;
}

bool same_ray(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v, double tol) {
  if (u.size() != v.size()) return false;
  return std::abs(std::abs(u.dot(v)) - 1.0) <= tol;
}

}  // namespace sta
