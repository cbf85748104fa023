#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <variant>
#include <vector>

#include "qsl/errors.hpp"

namespace qsl {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Vec3 = Eigen::Vector3d;

// ---------------------------------------------------------------------------
// Tolerances shared across the library.
// ---------------------------------------------------------------------------
struct Tolerances {
  // Relative rank cut: eigenvalues <= rank_tol * lambda_max count as zero.
  static constexpr double rank_tol = 1e-10;
  // Hermiticity acceptance: ||M - M^dagger||_2 <= hermiticity.
  static constexpr double hermiticity = 1e-12;
  // Trace acceptance for density matrices: |Tr - 1| <= trace.
  static constexpr double trace = 1e-10;
  // Eigenvalues of a density matrix may undershoot zero by at most this much
  // before the input is rejected; anything in (-eig_floor, 0) is clipped to 0.
  static constexpr double eig_floor = 1e-10;
  // Positivity threshold for the amplification prefactor 1+(1-a) ln(lmin).
  static constexpr double phi_den = 1e-8;
  // Overlap threshold below which a divergence is reported.
  static constexpr double overlap = 1e-12;
};

// ---------------------------------------------------------------------------
// Eigendecomposition of Hermitian matrices (cyclic complex Jacobi).
// ---------------------------------------------------------------------------
struct EigenDecomposition {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // columns, orthonormal; M = V diag(w) V^dagger
};

// Diagonalizes a Hermitian matrix with cyclic-by-row complex Jacobi
// rotations.  Eigenvalues are returned in ascending order.  Throws
// NotHermitian when ||M - M^dagger||_2 > Tolerances::hermiticity * scale and
// ConvergenceError if the off-diagonal norm fails to shrink below
// 1e-14 * ||M||_F within the sweep budget.
EigenDecomposition eigendecompose(const Matrix& m);

// Schatten 2-norm (Frobenius / Hilbert-Schmidt): sqrt(Tr(M^dagger M)).
double schatten2(const Matrix& m);

// Commutator [A, B] = AB - BA.
Matrix commutator(const Matrix& a, const Matrix& b);

// ---------------------------------------------------------------------------
// Density matrices.
// ---------------------------------------------------------------------------
// Validated density matrix with a cached spectral decomposition.  The stored
// eigenvalues have tiny negative values (>= -eig_floor) clipped to zero;
// deeper violations throw NotPositive.
class DensityMatrix {
 public:
  // Validates Hermiticity, positivity and unit trace, then diagonalizes.
  explicit DensityMatrix(const Matrix& m);

  const Matrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }
  const RealVector& eigenvalues() const { return eig_.eigenvalues; }
  const Matrix& eigenvectors() const { return eig_.eigenvectors; }
  double lambda_min() const { return eig_.eigenvalues(0); }
  double lambda_max() const { return eig_.eigenvalues(eig_.eigenvalues.size() - 1); }
  // Number of eigenvalues above rank_tol * lambda_max.
  Eigen::Index rank(double rank_tol = Tolerances::rank_tol) const;
  bool full_rank(double rank_tol = Tolerances::rank_tol) const {
    return rank(rank_tol) == dim();
  }

 private:
  Matrix m_;
  EigenDecomposition eig_;
};

// rho^a through the spectral decomposition.  For a > 0 eigenvalues below the
// rank cut are sent to zero (so 0^a := 0); for a <= 0 the state must be full
// rank, otherwise SingularPower is thrown.
Matrix matrix_power(const DensityMatrix& rho, double a,
                    double rank_tol = Tolerances::rank_tol);

// ln(rho); requires full rank (RequiresFullRank otherwise).
Matrix matrix_log(const DensityMatrix& rho,
                  double rank_tol = Tolerances::rank_tol);

// Support projector and rank of a positive semidefinite matrix.  For a
// full-rank input the projector is the exact identity matrix.
struct SupportInfo {
  Matrix projector;
  Eigen::Index rank = 0;
  bool degenerate = false;  // true only for an (all-zero) input
};
SupportInfo support_projector(const DensityMatrix& rho,
                              double rank_tol = Tolerances::rank_tol);

// exp(-i H dt) for Hermitian H via spectral decomposition.
Matrix exp_minus_ih_dt(const Matrix& h, double dt);

// Single-qubit state from Bloch data: (1/2)(I + r rhat . sigma) with
// rhat = (sin t cos p, sin t sin p, cos t).  Requires 0 <= r <= 1.
DensityMatrix from_bloch(double r, double theta, double phi);

// Bloch unit vector and the 2x2 matrix n . sigma.
Vec3 bloch_unit(double theta, double phi);
Matrix dot_sigma(const Vec3& n);

// ---------------------------------------------------------------------------
// Hamiltonian specifications.
// ---------------------------------------------------------------------------
// Time-independent Hamiltonian given as an explicit Hermitian matrix.
struct ConstantHamiltonian {
  Matrix h;
};

// Single-qubit Landau-Zener sweep axis: n(t) = (Delta, 0, v t) normalized.
struct LZAxis {
  double delta = 0.0;
  double v = 1.0;  // must be nonzero
};

// Single-qubit static axis: n(t) = n for all t (unit vector).
struct FixedAxis {
  Vec3 n{0.0, 0.0, 1.0};
};

// Single-qubit drive H(t) = varpi * I + nhat(t) . sigma.
struct QubitDrive {
  double varpi = 0.0;
  std::variant<LZAxis, FixedAxis> axis;

  // Drive axis nhat(t).  For an LZ axis with Delta = 0 the t = 0 value is the
  // right-limit (0, 0, sign(v)).
  Vec3 axis_at(double t) const;
};

// Piecewise-linear interpolation between Hermitian samples on an increasing
// time grid.  Outside the grid the nearest endpoint is held.
struct TabulatedHamiltonian {
  std::vector<double> times;
  std::vector<Matrix> values;
};

// Tagged union over the supported Hamiltonian families, with validation at
// construction and a uniform sample(t) interface.
class HamiltonianSpec {
 public:
  using Payload =
      std::variant<ConstantHamiltonian, QubitDrive, TabulatedHamiltonian>;

  explicit HamiltonianSpec(ConstantHamiltonian h);
  explicit HamiltonianSpec(QubitDrive d);
  explicit HamiltonianSpec(TabulatedHamiltonian t);

  Eigen::Index dim() const { return dim_; }
  Matrix sample(double t) const;
  bool time_independent() const;

  const Payload& payload() const { return payload_; }
  const QubitDrive* as_qubit_drive() const {
    return std::get_if<QubitDrive>(&payload_);
  }

 private:
  Payload payload_;
  Eigen::Index dim_ = 0;
};

}  // namespace qsl
