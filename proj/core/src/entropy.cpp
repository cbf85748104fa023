#include "qsl/entropy.hpp"

#include <cmath>
#include <limits>

namespace qsl {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_alpha_open_unit(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie strictly between 0 and 1");
  }
}

void check_same_dim(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("states must share one Hilbert-space dimension");
  }
}

// Eigenvalues raised to a power with the rank cut applied (0^x := 0).
RealVector powered_spectrum(const DensityMatrix& rho, double x, double rank_tol) {
  const double cut = rank_tol * rho.lambda_max();
  RealVector out(rho.dim());
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    const double w = rho.eigenvalues()(i);
    out(i) = (w <= cut) ? 0.0 : std::pow(w, x);
  }
  return out;
}
}  // namespace

const char* to_string(EntropyKind kind) {
  return kind == EntropyKind::Renyi ? "renyi" : "tsallis";
}

namespace detail {
Eigen::MatrixXd overlap_squares(const Matrix& v, const Matrix& w) {
  return (v.adjoint() * w).cwiseAbs2();
}
}  // namespace detail

double relative_purity(const DensityMatrix& rho, const DensityMatrix& omega,
                       double alpha, double rank_tol) {
  check_alpha_open_unit(alpha);
  check_same_dim(rho, omega);
  // Tr(rho^a omega^{1-a}) = sum_ij lambda_i^a |<v_i|w_j>|^2 mu_j^{1-a}.
  const RealVector la = powered_spectrum(rho, alpha, rank_tol);
  const RealVector mb = powered_spectrum(omega, 1.0 - alpha, rank_tol);
  const Eigen::MatrixXd ov =
      detail::overlap_squares(rho.eigenvectors(), omega.eigenvectors());
  return la.dot(ov * mb);
}

double renyi_relative_entropy(const DensityMatrix& rho,
                              const DensityMatrix& omega, double alpha,
                              double rank_tol) {
  const double g = relative_purity(rho, omega, alpha, rank_tol);
  if (!(g > 1e-300)) {
    throw NonPositivePurity("renyi_relative_entropy: relative purity is not positive");
  }
  return std::log(g) / (alpha - 1.0);
}

double tsallis_relative_entropy(const DensityMatrix& rho,
                                const DensityMatrix& omega, double alpha,
                                double rank_tol) {
  const double g = relative_purity(rho, omega, alpha, rank_tol);
  return (1.0 - g) / (1.0 - alpha);
}

double symmetrized_divergence(EntropyKind kind, const DensityMatrix& rho,
                              const DensityMatrix& omega, double alpha,
                              double rank_tol) {
  if (kind == EntropyKind::Renyi) {
    return renyi_relative_entropy(rho, omega, alpha, rank_tol) +
           renyi_relative_entropy(omega, rho, alpha, rank_tol);
  }
  return tsallis_relative_entropy(rho, omega, alpha, rank_tol) +
         tsallis_relative_entropy(omega, rho, alpha, rank_tol);
}

double quantum_relative_entropy(const DensityMatrix& rho,
                                const DensityMatrix& omega, double rank_tol) {
  check_same_dim(rho, omega);
  const Eigen::Index n = rho.dim();
  const double cut_rho = rank_tol * rho.lambda_max();
  const double cut_omega = rank_tol * omega.lambda_max();
  const Eigen::MatrixXd ov =
      detail::overlap_squares(rho.eigenvectors(), omega.eigenvectors());

  // Tr(rho ln rho) with 0 ln 0 := 0.
  double s = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double w = rho.eigenvalues()(i);
    if (w > cut_rho) s += w * std::log(w);
  }
  // -Tr(rho ln omega) = -sum_ij lambda_i |<v_i|w_j>|^2 ln mu_j.  Weight on a
  // null eigenvector of omega makes the divergence infinite.
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mu = omega.eigenvalues()(j);
    double weight = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double w = rho.eigenvalues()(i);
      if (w > cut_rho) weight += w * ov(i, j);
    }
    if (mu <= cut_omega) {
      if (weight > Tolerances::overlap) return kInf;
      continue;  // 0 ln 0 := 0
    }
    s -= weight * std::log(mu);
  }
  return s;
}

double min_relative_entropy(const DensityMatrix& rho,
                            const DensityMatrix& omega, double rank_tol) {
  check_same_dim(rho, omega);
  if (rho.full_rank(rank_tol)) {
    // P_rho is the identity, so Tr(P_rho omega) = Tr(omega) = 1 exactly by
    // the unit-trace contract on density matrices.
    return 0.0;
  }
  const SupportInfo support = support_projector(rho, rank_tol);
  const double overlap = std::real((support.projector * omega.matrix()).trace());
  if (overlap <= Tolerances::overlap) return kInf;
  return -std::log(overlap);
}

}  // namespace qsl
