#pragma once

#include <vector>

#include "qsl/entropy.hpp"
#include "qsl/evolution.hpp"
#include "qsl/matrix_core.hpp"

namespace qsl {

// Two published arrangements of the speed functional G_a.  They differ in
// which power of the initial state carries the commutator:
//   Appendix: G_a = Phi_a ||rho0^a||_2     ||[H_t, rho0^{1-a}]||_2
//   MainText: G_a = Phi_a ||rho0^{1-a}||_2 ||[H_t, rho0^a]||_2
// Every report pins the arrangement it used; the two are never mixed inside
// one evaluation.
enum class GConvention { Appendix, MainText };

const char* to_string(GConvention conv);

// Which inequality a BoundReport instantiates.
enum class BoundVariant {
  Forward,    // O_a(rho_tau || rho_0) <= tau <<G_a>> / |1-a|
  Reverse,    // O_a(rho_0 || rho_tau) <= tau <<G_{1-a}>> / |1-a|
  Symmetric,  // O_a(rho_tau : rho_0) <= tau <<G_a + G_{1-a}>> / |1-a|
  Loose,      // O_a(rho_tau || rho_0) <=
              //   sqrt(2) tau Phi_a ||rho0^{1-a}|| ||rho0^a|| <<||H_t||>> / |1-a|
  RELimit,    // S(rho_tau || rho_0) <= tau ||ln rho0|| <<||[H_t, rho_t]||>>
  MinLimit,   // |R_0(rho_tau || rho_0)| <= tau <<Q_0(rho_0, P_rho0)>>
};

const char* to_string(BoundVariant variant);

// QSL families: the two alpha-parametrized divergences plus the two limits.
enum class QslFamily { Renyi, Tsallis, RelativeEntropy, Min };

const char* to_string(QslFamily family);

struct BoundReport {
  BoundVariant variant = BoundVariant::Forward;
  EntropyKind kind = EntropyKind::Renyi;  // meaningful for the alpha variants
  GConvention convention = GConvention::Appendix;
  double alpha = 0.0;  // 1 for RELimit, 0 for MinLimit
  double tau = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs; >= 0 whenever the bound applies
  double phi = 1.0;    // amplification prefactor entering rhs
  double g_avg = 0.0;  // time-averaged speed functional entering rhs
  ReportFlag flags = ReportFlag::None;
};

struct QslReport {
  QslFamily family = QslFamily::Renyi;
  GConvention convention = GConvention::Appendix;
  double alpha = 0.0;  // 1 for RelativeEntropy, 0 for Min
  double tau = 0.0;    // actual evolution horizon
  double forward = 0.0;
  double reverse = 0.0;
  double symmetric = 0.0;
  double tau_max = 0.0;  // max of the three components
  ReportFlag flags = ReportFlag::None;
};

// Figures of merit for the alpha-family bounds:
//   delta1 = tau <<G_a>>       - |1-a| O_a(rho_tau||rho_0)
//   delta2 = tau <<G_{1-a}>>   - |1-a| O_a(rho_0||rho_tau)
//   delta3 = delta1 + delta2
struct MeritDeltas {
  double delta1 = 0.0;
  double delta2 = 0.0;
  double delta3 = 0.0;
};

// ---------------------------------------------------------------------------
// Scalar building blocks.
// ---------------------------------------------------------------------------

// Amplification prefactor Phi_a.  Tsallis: exactly 1.  Renyi:
// 1 / (1 + (1-a) ln lambda_min), defined only while the denominator stays
// positive; throws RequiresFullRank when lambda_min <= rank_tol and
// SingularPhi when the denominator is <= 1e-8.  The reverse-direction factor
// is obtained by calling with index 1-a.
double phi_factor(EntropyKind kind, double alpha, double lambda_min,
                  double rank_tol = Tolerances::rank_tol);

// Samples of the speed functional G_a(t_k) over the sampled Hamiltonians,
// including the Phi prefactor.  Throws like phi_factor.
struct GFunctional {
  double phi = 1.0;
  std::vector<double> samples;
};
GFunctional g_functional(EntropyKind kind, double alpha,
                         const DensityMatrix& rho0,
                         const std::vector<Matrix>& hamiltonians,
                         GConvention convention,
                         double rank_tol = Tolerances::rank_tol);

// Lower skew information I_L = -(1/4) Tr([rho, H]^2) = (1/4)||[H, rho]||_2^2.
double skew_information(const DensityMatrix& rho, const Matrix& h);

// Variance (Delta H)^2 = Tr(rho H^2) - Tr(rho H)^2; upper-bounds I_L.
double hamiltonian_variance(const DensityMatrix& rho, const Matrix& h);

// ---------------------------------------------------------------------------
// Batch evaluator.
// ---------------------------------------------------------------------------
// Precomputes, for one (rho_0, trajectory) pair, the eigenbasis-rotated data
// that lets every bound and QSL at any (kind, alpha, convention) be assembled
// from O(d^2)-per-sample scalar work.  All single-shot helpers below route
// through this class, so the batch and one-shot paths share one code path.
class ScanEngine {
 public:
  ScanEngine(const DensityMatrix& rho0, const PropagatorTrajectory& traj,
             QuadratureRule rule = QuadratureRule::Simpson,
             double rank_tol = Tolerances::rank_tol);

  struct AlphaReports {
    BoundReport forward;
    BoundReport reverse;
    BoundReport symmetric;
    BoundReport loose;
    QslReport qsl;
  };

  // Bounds, QSL, and merit figures for one divergence at one (alpha, conv).
  AlphaReports alpha_family(EntropyKind kind, double alpha,
                            GConvention convention) const;

  // alpha -> 1 relative-entropy limit.
  BoundReport re_limit() const;
  QslReport re_qsl() const;

  // alpha -> 0 min-relative-entropy limit.
  BoundReport min_limit() const;
  QslReport min_qsl() const;

  double tau() const { return tau_; }
  std::size_t samples() const { return times_.size(); }
  QuadratureRule rule() const { return rule_; }

 private:
  double average(const std::vector<double>& samples) const;

  double tau_ = 0.0;
  QuadratureRule rule_ = QuadratureRule::Simpson;
  double rank_tol_ = Tolerances::rank_tol;

  std::vector<double> times_;
  RealVector lambda_;       // eigenvalues of rho0, ascending
  double lambda_cut_ = 0.0; // rank cut: rank_tol * lambda_max
  bool full_rank_ = true;
  Eigen::Index dim_ = 0;

  // Per sample k: |(V^dagger H_k V)_ij|^2, |(V^dagger U_k^dagger H_k U_k V)_ij|^2.
  std::vector<Eigen::MatrixXd> abs_h2_;
  std::vector<Eigen::MatrixXd> abs_m2_;
  std::vector<double> h_norm_;           // ||H_k||_2
  Eigen::MatrixXd abs_u2_final_;         // |(V^dagger U_tau V)_ij|^2

  // Min-limit ingredients (alpha-independent).
  std::vector<double> overlap_fwd_;      // Tr(rho_0 U_k P U_k^dagger)
  std::vector<double> overlap_rev_;      // Tr(P U_k rho_0 U_k^dagger)
  std::vector<double> comm_pi_norm_;     // ||[U_k^dagger H_k U_k, P]||_2
  double rho_norm_ = 0.0;                // ||rho_0||_2
  double pi_norm_ = 0.0;                 // ||P||_2 = sqrt(rank)

  // alpha -> 1 ingredients.
  double log_norm_ = 0.0;                // ||ln rho_0||_2 (full rank only)
  std::vector<double> comm_rho_t_;       // ||[H_k, rho_{t_k}]||_2
  std::vector<double> comm_rho_0_;       // ||[H_k, rho_0]||_2
  double s_forward_ = 0.0;               // S(rho_tau || rho_0)
  double s_reverse_ = 0.0;               // S(rho_0 || rho_tau)

  // Spectral sums lambda^x with the rank cut applied.
  RealVector powered(double x) const;
};

// ---------------------------------------------------------------------------
// One-shot wrappers (each builds a ScanEngine internally).
// ---------------------------------------------------------------------------
BoundReport bound_forward(EntropyKind kind, double alpha,
                          const DensityMatrix& rho0,
                          const PropagatorTrajectory& traj,
                          GConvention convention = GConvention::Appendix,
                          QuadratureRule rule = QuadratureRule::Simpson);
BoundReport bound_reverse(EntropyKind kind, double alpha,
                          const DensityMatrix& rho0,
                          const PropagatorTrajectory& traj,
                          GConvention convention = GConvention::Appendix,
                          QuadratureRule rule = QuadratureRule::Simpson);
BoundReport bound_symmetric(EntropyKind kind, double alpha,
                            const DensityMatrix& rho0,
                            const PropagatorTrajectory& traj,
                            GConvention convention = GConvention::Appendix,
                            QuadratureRule rule = QuadratureRule::Simpson);
BoundReport bound_loose(EntropyKind kind, double alpha,
                        const DensityMatrix& rho0,
                        const PropagatorTrajectory& traj,
                        GConvention convention = GConvention::Appendix,
                        QuadratureRule rule = QuadratureRule::Simpson);
BoundReport re_limit_bound(const DensityMatrix& rho0,
                           const PropagatorTrajectory& traj,
                           QuadratureRule rule = QuadratureRule::Simpson);
BoundReport min_limit_bound(const DensityMatrix& rho0,
                            const PropagatorTrajectory& traj,
                            QuadratureRule rule = QuadratureRule::Simpson,
                            double rank_tol = Tolerances::rank_tol);
QslReport qsl_times(EntropyKind kind, double alpha, const DensityMatrix& rho0,
                    const PropagatorTrajectory& traj,
                    GConvention convention = GConvention::Appendix,
                    QuadratureRule rule = QuadratureRule::Simpson);
QslReport qsl_re(const DensityMatrix& rho0, const PropagatorTrajectory& traj,
                 QuadratureRule rule = QuadratureRule::Simpson);
QslReport qsl_min(const DensityMatrix& rho0, const PropagatorTrajectory& traj,
                  QuadratureRule rule = QuadratureRule::Simpson,
                  double rank_tol = Tolerances::rank_tol);

// delta1/delta2/delta3 from matching forward and reverse reports.
MeritDeltas merit_deltas(const BoundReport& forward, const BoundReport& reverse);

namespace detail {
// QSL component numer/denom with the shared 0/0 convention: a vanishing
// numerator yields 0 (flagging DegenerateDrive when the denominator also
// vanishes); a vanishing denominator under a real numerator flags Divergent.
double qsl_ratio(double numer, double denom, ReportFlag& flags);
}  // namespace detail

}  // namespace qsl
