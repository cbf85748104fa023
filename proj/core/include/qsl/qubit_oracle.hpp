#pragma once

#include "qsl/bounds_qsl.hpp"
#include "qsl/evolution.hpp"
#include "qsl/matrix_core.hpp"

namespace qsl {

// Closed-form single-qubit results for drives of the form
// H(t) = varpi I + nhat(t) . sigma acting on rho0 = (I + r rhat.sigma)/2,
// with the propagator built from the integrated axis u(t) = int_0^t n(s) ds.
// For a time-dependent axis this is the leading Magnus propagator; the
// library treats it as the reference dynamics for these scenarios and the
// test-suite measures its distance to the time-ordered integrator separately.

// Spectral weights xi_a^{+/-} = 2^{-a} [ (1+r)^a +/- (1-r)^a ], the
// coefficients of rho0^a = (xi_a^+ I + xi_a^- rhat.sigma) / 2.  Requires
// a >= 0 and 0 <= r <= 1; 0^0 := 1.
struct XiPair {
  double plus = 0.0;
  double minus = 0.0;
};
XiPair xi(double alpha, double r);

// Initial state plus drive for one closed-form scenario.
struct QubitScenario {
  double r = 0.0;      // Bloch radius, in [0, 1]
  double theta = 0.0;  // polar angle of rhat
  double phi = 0.0;    // azimuthal angle of rhat
  QubitDrive drive;

  Vec3 rhat() const { return bloch_unit(theta, phi); }
  DensityMatrix state() const { return from_bloch(r, theta, phi); }
};

// Integrated drive axis u(t) = int_0^t n(s) ds.  Closed form for both axis
// families; the LZ case uses asinh and the Delta -> 0 limit u_x = 0.
Vec3 u_integral(const QubitDrive& drive, double t);

// Geometry of the closed-form evolution at time t.
struct DriveVectors {
  Vec3 u;               // integrated axis
  double angle = 0.0;   // |u|
  Vec3 uhat;            // u / |u|; z-hat when degenerate
  Vec3 nu_hat;          // Bloch direction of rho_t (rhat rotated by 2|u| about uhat)
  Vec3 mu_hat;          // drive axis rotated back: R_u^{-1} nhat(t)
  bool degenerate = false;  // |u| below 1e-15: rotation is the identity
};
DriveVectors drive_vectors(const QubitScenario& sc, double t);

// U_t = e^{-i t varpi} [cos|u| I - i sin|u| (uhat . sigma)].
Matrix propagator_closed(const QubitDrive& drive, double t);

// Trajectory sampled from the closed-form propagator (same layout as
// propagate(), for feeding the generic evaluators).
PropagatorTrajectory closed_trajectory(const QubitScenario& sc, double tau,
                                       std::size_t steps);

// (1 - (uhat_t . rhat)^2) sin^2 |u_t|  -- the shared geometric factor.
double geometric_factor(const QubitScenario& sc, double t);

// g_a(rho_t, rho0) = 1 - xi_a^- xi_{1-a}^- (1 - (uhat.rhat)^2) sin^2|u|.
double purity_closed(const QubitScenario& sc, double alpha, double t);

// O_a(rho_t || rho0) for the requested divergence; equal to the reversed
// argument order for these scenarios.
double entropy_closed(EntropyKind kind, const QubitScenario& sc, double alpha,
                      double t);

// Closed-form Schatten-2 quantities at time t.  The logarithmic entries are
// +infinity for a pure state (r = 1).
struct ClosedNorms {
  double comm_h_rho_alpha = 0.0;  // ||[H_t, rho0^a]||_2
  double comm_h_rho0 = 0.0;       // ||[H_t, rho0]||_2
  double comm_h_rho_t = 0.0;      // ||[H_t, rho_t]||_2
  double relative_entropy = 0.0;  // S(rho_t || rho0)
  double log_norm = 0.0;          // ||ln rho0||_2
  double rho_alpha_norm = 0.0;    // ||rho0^a||_2
};
ClosedNorms closed_norms(const QubitScenario& sc, double alpha, double t);

// tau-dependent, alpha-independent ingredients of the closed-form QSLs.
// i_avg / j_avg are the time averages of sqrt(1 - (nhat.rhat)^2) and
// sqrt(1 - (muhat.rhat)^2); q0_avg is the Q_0 speed average (pure states
// only, NaN otherwise).  Integrals use composite Simpson with `steps`
// intervals.
struct ClosedContext {
  double tau = 0.0;
  double geom = 0.0;  // geometric_factor at tau
  double i_avg = 0.0;
  double j_avg = 0.0;
  double q0_avg = 0.0;
  bool q0_divergent = false;
};
ClosedContext closed_context(const QubitScenario& sc, double tau,
                             std::size_t steps = 512);

// Closed-form QSL for one family at one (alpha, tau).  For Renyi/Tsallis the
// G arrangement follows `convention`; RelativeEntropy and Min ignore alpha
// (pass anything) and convention.  Min requires r = 1 to move at all.
QslReport qsl_closed(const QubitScenario& sc, QslFamily family, double alpha,
                     double tau, GConvention convention = GConvention::Appendix,
                     std::size_t steps = 512);
// Same, reusing a precomputed context (grid generation).
QslReport qsl_closed_at(const QubitScenario& sc, const ClosedContext& ctx,
                        QslFamily family, double alpha,
                        GConvention convention = GConvention::Appendix);

// Closed-form merit figures delta_1/2/3 for the alpha-family bounds.
MeritDeltas merit_closed_at(const QubitScenario& sc, const ClosedContext& ctx,
                            EntropyKind kind, double alpha,
                            GConvention convention = GConvention::Appendix);

}  // namespace qsl
