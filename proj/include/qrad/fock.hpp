#ifndef QRAD_FOCK_HPP
#define QRAD_FOCK_HPP

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "qrad/response.hpp"
#include "qrad/thermal.hpp"

// Exact oracle on a truncated Fock space: builds the bilinear
// Hamiltonian, evolves a thermal product state by a dense matrix
// exponential and reports exact expectations.  Independent of the
// closed-form quadratic-response path it is used to certify.

namespace qrad {

struct FockTruncation {
  int n_max = 10;   // per-mode excitation cutoff (levels 0..n_max)
  int modes = 1;

  // Dense matrices of this dimension; sized for desk-scale checks.
  static constexpr long max_dim = 4096;

  long dimension() const {
    long d = 1;
    for (int i = 0; i < modes; ++i) {
      d *= n_max + 1;
      if (d > max_dim)
        throw std::invalid_argument(
            "FockTruncation: basis size exceeds the dense-matrix budget");
    }
    return d;
  }
};

struct FockResult {
  Eigen::VectorXd final_n;       // <N_I> after evolution
  Eigen::VectorXd initial_n;     // <N_I> of the truncated thermal state
  Eigen::MatrixXd correlations;  // <N_J N_K> - <N_J><N_K>
  double entropy_initial = 0.0;  // -Tr rho ln rho before
  double entropy_final = 0.0;    // ... and after the unitary evolution
  double top_layer_occupancy = 0.0;  // cutoff-adequacy certificate
};

class FockSpace {
 public:
  explicit FockSpace(FockTruncation cut) : cut_(cut), dim_(cut.dimension()) {
    const int levels = cut_.n_max + 1;
    strides_.resize(cut_.modes);
    long s = 1;
    for (int i = 0; i < cut_.modes; ++i) {
      strides_[i] = s;
      s *= levels;
    }
  }

  long dimension() const { return dim_; }
  int modes() const { return cut_.modes; }
  int n_max() const { return cut_.n_max; }

  int level(long state, int mode) const {
    return static_cast<int>((state / strides_[mode]) % (cut_.n_max + 1));
  }

  // Annihilation operator of one mode as a dense matrix.
  Eigen::MatrixXcd annihilation(int mode) const {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim_, dim_);
    for (long s = 0; s < dim_; ++s) {
      const int n = level(s, mode);
      if (n > 0) a(s - strides_[mode], s) = std::sqrt(double(n));
    }
    return a;
  }

  // integral(H1) = 1/2 (S_JK a_J^+ a_K^+ + h.c.) + U_JK a_J^+ a_K.
  Eigen::MatrixXcd hamiltonian(const PerturbationMatrices& mat) const {
    if (mat.modes() != cut_.modes)
      throw std::invalid_argument("FockSpace: mode count mismatch");
    std::vector<Eigen::MatrixXcd> a;
    a.reserve(cut_.modes);
    for (int i = 0; i < cut_.modes; ++i) a.push_back(annihilation(i));
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim_, dim_);
    for (int j = 0; j < cut_.modes; ++j)
      for (int k = 0; k < cut_.modes; ++k) {
        const Eigen::MatrixXcd pair = a[j].adjoint() * a[k].adjoint();
        h += 0.5 * (mat.S(j, k) * pair + std::conj(mat.S(j, k)) * pair.adjoint());
        h += mat.U(j, k) * (a[j].adjoint() * a[k]);
      }
    return h;
  }

  // Product of per-mode geometric (thermal) states with the given mean
  // occupations, restricted to the truncation and renormalized.  For
  // n_I = 1/(exp(beta omega_I) - 1) this is exp(-beta H0)/Z.
  Eigen::VectorXd thermal_diagonal(const Eigen::VectorXd& occ) const {
    if (occ.size() != cut_.modes)
      throw std::invalid_argument("FockSpace: occupation size mismatch");
    Eigen::VectorXd p = Eigen::VectorXd::Ones(dim_);
    for (long s = 0; s < dim_; ++s)
      for (int i = 0; i < cut_.modes; ++i) {
        const double n = occ(i);
        const double q = n / (1.0 + n);  // Boltzmann ratio per quantum
        p(s) *= (n == 0.0 ? (level(s, i) == 0 ? 1.0 : 0.0)
                          : std::pow(q, level(s, i)) / (1.0 + n));
      }
    const double z = p.sum();
    if (!(z > 0.0)) throw std::runtime_error("FockSpace: empty thermal state");
    return p / z;
  }

 private:
  FockTruncation cut_;
  long dim_;
  std::vector<long> strides_;
};

namespace detail {

inline double diag_entropy(const Eigen::VectorXd& p) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p(i) > 0.0) s -= p(i) * std::log(p(i));
  return s;
}

inline double spectrum_entropy(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho,
                                                     Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = es.eigenvalues()(i);
    if (p > 1e-300) s -= p * std::log(p);
  }
  return s;
}

}  // namespace detail

// Evolves the truncated thermal product state with the given mean
// occupations under exp(-i integral(H1)) and returns exact expectations.
// Throws if the occupancy of the top Fock layer exceeds the certificate
// threshold (truncation too small for the requested perturbation).
inline FockResult fock_brute_force(const PerturbationMatrices& mat,
                                   const Eigen::VectorXd& occ,
                                   const FockTruncation& cut,
                                   double certificate = 1e-8) {
  mat.validate();
  FockSpace space(cut);
  const long dim = space.dimension();
  const int m = space.modes();

  const Eigen::VectorXd p0 = space.thermal_diagonal(occ);
  const Eigen::MatrixXcd h = space.hamiltonian(mat);
  const Eigen::MatrixXcd u = (std::complex<double>(0.0, -1.0) * h).exp();

  // rho0 is diagonal, so rho' = U diag(p0) U^+.
  Eigen::MatrixXcd rho = u * p0.asDiagonal() * u.adjoint();

  FockResult out;
  out.initial_n = Eigen::VectorXd::Zero(m);
  out.final_n = Eigen::VectorXd::Zero(m);
  out.correlations = Eigen::MatrixXd::Zero(m, m);
  out.entropy_initial = detail::diag_entropy(p0);
  out.entropy_final = detail::spectrum_entropy(rho);

  // All number observables are diagonal in the Fock basis.
  Eigen::VectorXd pf(dim);
  for (long s = 0; s < dim; ++s) pf(s) = rho(s, s).real();

  Eigen::MatrixXd njnk = Eigen::MatrixXd::Zero(m, m);
  for (long s = 0; s < dim; ++s) {
    bool top = false;
    for (int i = 0; i < m; ++i) {
      const int ni = space.level(s, i);
      if (ni == space.n_max()) top = true;
      out.initial_n(i) += p0(s) * ni;
      out.final_n(i) += pf(s) * ni;
      for (int j = 0; j < m; ++j) njnk(i, j) += pf(s) * ni * space.level(s, j);
    }
    if (top) out.top_layer_occupancy += pf(s);
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      out.correlations(i, j) = njnk(i, j) - out.final_n(i) * out.final_n(j);

  if (out.top_layer_occupancy > certificate)
    throw std::runtime_error(
        "fock_brute_force: truncation certificate failed (top-layer "
        "occupancy " +
        std::to_string(out.top_layer_occupancy) + "); increase n_max");
  return out;
}

// Richardson extrapolation of f(lambda)/lambda^2 over lambda, 2*lambda:
// removes the O(lambda^2) residue of the quadratic coefficient.
template <typename F>
double quadratic_coefficient(F&& f, double lambda = 1e-2) {
  const double f1 = f(lambda) / (lambda * lambda);
  const double f2 = f(2.0 * lambda) / (4.0 * lambda * lambda);
  return (4.0 * f1 - f2) / 3.0;
}

// Two-mode (and general small-basis) correlation matrix C_JK to second
// order in the perturbation, extracted from the exact Fock oracle by
// lambda scaling.  The general finite-T closed form is deliberately not
// hand-derived; the oracle is the reference.
inline Eigen::MatrixXd correlation(const PerturbationMatrices& mat,
                                   const Eigen::VectorXd& occ,
                                   const FockTruncation& cut) {
  mat.validate();
  const int m = static_cast<int>(mat.modes());
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(m, m);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) {
      if (j == k) continue;
      c(j, k) = quadratic_coefficient([&](double lambda) {
        PerturbationMatrices scaled{lambda * mat.S, lambda * mat.U};
        return fock_brute_force(scaled, occ, cut).correlations(j, k);
      });
    }
  return c;
}

}  // namespace qrad

#endif  // QRAD_FOCK_HPP
