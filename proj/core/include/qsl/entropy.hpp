#pragma once

#include "qsl/matrix_core.hpp"

namespace qsl {

// Which generalized divergence a bound or QSL refers to.
enum class EntropyKind { Renyi, Tsallis };

const char* to_string(EntropyKind kind);

// Relative purity g_a(rho, omega) = Tr(rho^a omega^{1-a}) for a in (0, 1).
// Evaluated in the eigenbases of both states, with 0^x := 0 for eigenvalues
// under the rank cut.
double relative_purity(const DensityMatrix& rho, const DensityMatrix& omega,
                       double alpha, double rank_tol = Tolerances::rank_tol);

// Renyi relative entropy R_a(rho||omega) = ln(g_a) / (a - 1), a in (0, 1).
// Throws NonPositivePurity when g_a <= 1e-300.
double renyi_relative_entropy(const DensityMatrix& rho,
                              const DensityMatrix& omega, double alpha,
                              double rank_tol = Tolerances::rank_tol);

// Tsallis relative entropy H_a(rho||omega) = (1 - g_a) / (1 - a), a in (0, 1).
double tsallis_relative_entropy(const DensityMatrix& rho,
                                const DensityMatrix& omega, double alpha,
                                double rank_tol = Tolerances::rank_tol);

// Symmetrized divergence O_a(rho : omega) = O_a(rho||omega) + O_a(omega||rho).
double symmetrized_divergence(EntropyKind kind, const DensityMatrix& rho,
                              const DensityMatrix& omega, double alpha,
                              double rank_tol = Tolerances::rank_tol);

// Umegaki relative entropy S(rho||omega) = Tr(rho ln rho) - Tr(rho ln omega),
// evaluated eigenbasis-to-eigenbasis with 0 ln 0 := 0.  Returns +infinity when
// rho has weight outside the support of omega.
double quantum_relative_entropy(const DensityMatrix& rho,
                                const DensityMatrix& omega,
                                double rank_tol = Tolerances::rank_tol);

// Min-relative entropy R_0(rho||omega) = -ln Tr(P_rho omega).  For a
// full-rank rho the projector is the identity and the result is exactly zero.
// Returns +infinity when the overlap Tr(P_rho omega) vanishes.
double min_relative_entropy(const DensityMatrix& rho,
                            const DensityMatrix& omega,
                            double rank_tol = Tolerances::rank_tol);

namespace detail {
// |<v_i|w_j>|^2 for eigenvector columns of two states; the workhorse shared
// by the divergence evaluations above.
Eigen::MatrixXd overlap_squares(const Matrix& v, const Matrix& w);
}  // namespace detail

}  // namespace qsl
