#ifndef QRAD_RESPONSE_HPP
#define QRAD_RESPONSE_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

// Generic second-order (quadratic) response over a discrete mode basis:
// the particle yield from squeezing/hopping matrices and the exact
// diagonal-Bogoliubov thermal relation.

namespace qrad {

// Bilinear perturbation integral(H1) = 1/2 (S_JK a_J^+ a_K^+ + h.c.)
//                                      + U_JK a_J^+ a_K.
// S must be symmetric and U Hermitian (self-adjointness of H1).
struct PerturbationMatrices {
  Eigen::MatrixXcd S;
  Eigen::MatrixXcd U;

  Eigen::Index modes() const { return S.rows(); }

  void validate(double tol = 1e-12) const {
    if (S.rows() != S.cols() || U.rows() != U.cols() || S.rows() != U.rows())
      throw std::invalid_argument(
          "PerturbationMatrices: S and U must be square with equal dimension");
    const double scale_s = std::max(1.0, S.cwiseAbs().maxCoeff());
    const double scale_u = std::max(1.0, U.cwiseAbs().maxCoeff());
    for (Eigen::Index j = 0; j < S.rows(); ++j)
      for (Eigen::Index k = 0; k < S.cols(); ++k) {
        if (std::abs(S(j, k) - S(k, j)) > tol * scale_s)
          throw std::invalid_argument(
              "PerturbationMatrices: S not symmetric at entry (" +
              std::to_string(j) + "," + std::to_string(k) + ")");
        if (std::abs(U(j, k) - std::conj(U(k, j))) > tol * scale_u)
          throw std::invalid_argument(
              "PerturbationMatrices: U not Hermitian at entry (" +
              std::to_string(j) + "," + std::to_string(k) + ")");
      }
  }
};

struct DeltaN {
  Eigen::VectorXd vacuum;   // sum_J |S_IJ|^2
  Eigen::VectorXd thermal;  // occupation-dependent remainder
  Eigen::VectorXd total;    // vacuum + thermal
};

// Quadratic response of the number operator:
//   dN_I = sum_J |S_IJ|^2 (1 + n_J + n_I) + sum_J |U_IJ|^2 (n_J - n_I).
inline DeltaN delta_n(const PerturbationMatrices& mat,
                      const Eigen::VectorXd& occ) {
  mat.validate();
  const Eigen::Index m = mat.modes();
  if (occ.size() != m)
    throw std::invalid_argument("delta_n: occupation size mismatch");
  for (Eigen::Index i = 0; i < m; ++i)
    if (!(occ(i) >= 0.0) || !std::isfinite(occ(i)))
      throw std::invalid_argument("delta_n: occupations must be finite, >= 0");

  DeltaN out;
  out.vacuum = Eigen::VectorXd::Zero(m);
  out.thermal = Eigen::VectorXd::Zero(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const double s2 = std::norm(mat.S(i, j));
      const double u2 = std::norm(mat.U(i, j));
      out.vacuum(i) += s2;
      out.thermal(i) += s2 * (occ(j) + occ(i)) + u2 * (occ(j) - occ(i));
    }
  }
  out.total = out.vacuum + out.thermal;
  return out;
}

// Final occupation for a diagonal Hamiltonian with Bogoliubov |beta_I|^2:
//   <N_I> = n_I + |beta_I|^2 (1 + 2 n_I).
// Exact to all orders, not just second order.
inline Eigen::VectorXd diag_thermal_number(const Eigen::VectorXd& beta_sq,
                                           const Eigen::VectorXd& occ) {
  if (beta_sq.size() != occ.size())
    throw std::invalid_argument("diag_thermal_number: size mismatch");
  for (Eigen::Index i = 0; i < beta_sq.size(); ++i)
    if (beta_sq(i) < 0.0 || occ(i) < 0.0)
      throw std::invalid_argument("diag_thermal_number: negative input");
  return occ.array() + beta_sq.array() * (1.0 + 2.0 * occ.array());
}

}  // namespace qrad

#endif  // QRAD_RESPONSE_HPP
