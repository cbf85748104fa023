#include <doctest.h>

#include <qsl/errors.hpp>
#include <qsl/qubit_oracle.hpp>

#include <cmath>

#include "helpers.hpp"

using namespace qsl;

namespace {
constexpr double kPi = 3.14159265358979323846;

QubitScenario fig_scenario(double ratio) {
  return testutil::lz_scenario(0.25, kPi / 4, kPi / 4, ratio);
}
}  // namespace

TEST_CASE("xi weights: frozen values, endpoints, binomial identity") {
  const XiPair x = xi(0.5, 0.25);
  CHECK(std::abs(x.plus - 1.4029418507378894) < 1e-14);
  CHECK(std::abs(x.minus - 0.17819697934630031) < 1e-14);

  // alpha = 0: rho^0 = I, so (plus, minus) = (2, 0); alpha = 1: (1, r).
  CHECK(xi(0.0, 0.6).plus == 2.0);
  CHECK(xi(0.0, 0.6).minus == 0.0);
  CHECK(std::abs(xi(1.0, 0.6).plus - 1.0) < 1e-15);
  CHECK(std::abs(xi(1.0, 0.6).minus - 0.6) < 1e-15);
  // Pure state: (1+r)^a = 2^a, (1-r)^a = 0 with 0^0 := 1 at a = 0.
  CHECK(xi(0.0, 1.0).plus == 2.0);

  // (xi+)^2 - (xi-)^2 = 4 [(1-r^2)/4]^a.
  for (double r : {0.0, 0.25, 0.5, 0.99}) {
    for (double a : {0.1, 0.4, 0.5, 0.9}) {
      const XiPair p = xi(a, r);
      const double lhs = p.plus * p.plus - p.minus * p.minus;
      const double rhs = 4.0 * std::pow((1.0 - r * r) / 4.0, a);
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }

  // xi(a) recovers the spectral decomposition of rho0^a.
  const DensityMatrix rho = from_bloch(0.25, kPi / 4, kPi / 4);
  const XiPair p = xi(0.3, 0.25);
  const Matrix expected =
      0.5 * (p.plus * Matrix::Identity(2, 2) +
             p.minus * dot_sigma(bloch_unit(kPi / 4, kPi / 4)));
  CHECK((matrix_power(rho, 0.3) - expected).norm() < 1e-13);
}

TEST_CASE("u_integral: frozen LZ values and quadrature cross-check") {
  QubitDrive lz;
  lz.axis = LZAxis{0.5, 1.0};
  const Vec3 u = u_integral(lz, 1.0);
  // 50-digit references: (Delta/v) asinh(v t / Delta) and
  // (sqrt(Delta^2 + v^2 t^2) - Delta)/v at Delta = 0.5, v = 1, t = 1.
  CHECK(std::abs(u[0] - 0.72181773758940517) < 1e-14);
  CHECK(std::abs(u[1]) == 0.0);
  CHECK(std::abs(u[2] - 0.61803398874989485) < 1e-14);

  // Independent check: composite-Simpson integration of the axis.
  const std::size_t n = 4096;
  Vec3 quad = Vec3::Zero();
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(n);
    const double w = (k == 0 || k == n) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    quad += w * lz.axis_at(t);
  }
  quad *= 1.0 / (3.0 * static_cast<double>(n));
  CHECK((u - quad).norm() < 1e-10);

  // Gapless sweep: u points along z with |u| = t.
  QubitDrive gapless;
  gapless.axis = LZAxis{0.0, 1.0};
  const Vec3 ug = u_integral(gapless, 2.0);
  CHECK(ug[0] == 0.0);
  CHECK(std::abs(ug[2] - 2.0) < 1e-14);

  // Fixed axis: u = t n.
  QubitDrive fixed;
  fixed.axis = FixedAxis{Vec3(0.0, 1.0, 0.0)};
  const Vec3 uf = u_integral(fixed, 1.5);
  CHECK(std::abs(uf[1] - 1.5) < 1e-15);
}

TEST_CASE("propagator_closed: unitarity and the fixed-axis exact case") {
  QubitDrive fixed;
  fixed.varpi = 0.7;
  fixed.axis = FixedAxis{Vec3(0.6, 0.0, 0.8)};
  const double t = 1.3;
  const Matrix u = propagator_closed(fixed, t);
  const Matrix h = fixed.varpi * Matrix::Identity(2, 2) +
                   dot_sigma(Vec3(0.6, 0.0, 0.8));
  CHECK((u - exp_minus_ih_dt(h, t)).norm() < 1e-13);

  QubitDrive lz;
  lz.axis = LZAxis{0.5, 1.0};
  for (double s : {0.0, 0.4, 1.1, 3.7}) {
    CHECK(testutil::unitary_defect(propagator_closed(lz, s)) < 1e-13);
  }
  CHECK((propagator_closed(lz, 0.0) - Matrix::Identity(2, 2)).norm() < 1e-15);
}

TEST_CASE("closed_trajectory mirrors the propagate() layout") {
  const QubitScenario sc = fig_scenario(0.5);
  const PropagatorTrajectory traj = closed_trajectory(sc, 2.0, 16);
  REQUIRE(traj.times.size() == 17);
  CHECK(traj.steps() == 16);
  CHECK(traj.times.front() == 0.0);
  CHECK(traj.times.back() == 2.0);
  CHECK((traj.unitaries[0] - Matrix::Identity(2, 2)).norm() == 0.0);
  for (std::size_t k = 0; k <= 16; ++k) {
    CHECK((traj.unitaries[k] - propagator_closed(sc.drive, traj.times[k]))
              .norm() < 1e-15);
    CHECK((traj.hamiltonians[k] -
           HamiltonianSpec(sc.drive).sample(traj.times[k]))
              .norm() < 1e-14);
  }
}

TEST_CASE("drive_vectors: unit geometry consistent with the dense propagator") {
  const QubitScenario sc = fig_scenario(0.5);
  for (double t : {0.3, 0.9, 2.2}) {
    const DriveVectors dv = drive_vectors(sc, t);
    CHECK(std::abs(dv.uhat.norm() - 1.0) < 1e-12);
    CHECK(std::abs(dv.nu_hat.norm() - 1.0) < 1e-12);
    CHECK(std::abs(dv.mu_hat.norm() - 1.0) < 1e-12);

    // nu_hat is the Bloch direction of the evolved state.
    const Matrix u = propagator_closed(sc.drive, t);
    const DensityMatrix rho_t = evolve_state(sc.state(), u);
    Vec3 bloch;
    bloch[0] = (rho_t.matrix() * dot_sigma(Vec3(1, 0, 0))).trace().real();
    bloch[1] = (rho_t.matrix() * dot_sigma(Vec3(0, 1, 0))).trace().real();
    bloch[2] = (rho_t.matrix() * dot_sigma(Vec3(0, 0, 1))).trace().real();
    CHECK((bloch - sc.r * dv.nu_hat).norm() < 1e-12);
  }

  // t = 0: no rotation has happened yet.
  const DriveVectors dv0 = drive_vectors(sc, 0.0);
  CHECK(dv0.degenerate);
  CHECK((dv0.nu_hat - sc.rhat()).norm() < 1e-15);

  // Fixed axis: the rotation axis is the drive axis, which stays put.
  QubitScenario fixed = sc;
  fixed.drive.axis = FixedAxis{Vec3(1.0, 0.0, 0.0)};
  const DriveVectors dvf = drive_vectors(fixed, 0.8);
  CHECK((dvf.mu_hat - Vec3(1.0, 0.0, 0.0)).norm() < 1e-14);
  CHECK(std::abs(dvf.angle - 0.8) < 1e-15);
}

TEST_CASE("purity_closed: frozen value and dense-matrix agreement") {
  const QubitScenario sc = fig_scenario(0.5);
  // 50-digit reference at t = 1, alpha = 0.3.
  CHECK(std::abs(purity_closed(sc, 0.3, 1.0) - 0.99478883745366721) < 1e-14);

  for (double t : {0.2, 0.7, 1.0, 3.1}) {
    const DensityMatrix rho_t =
        evolve_state(sc.state(), propagator_closed(sc.drive, t));
    for (double a : {0.1, 0.3, 0.5, 0.8}) {
      CHECK(std::abs(purity_closed(sc, a, t) -
                     relative_purity(rho_t, sc.state(), a)) < 1e-12);
    }
  }
}

TEST_CASE("entropy_closed agrees with the numeric divergences both ways") {
  const QubitScenario sc = fig_scenario(1.0);
  for (double t : {0.5, 1.4}) {
    const DensityMatrix rho_t =
        evolve_state(sc.state(), propagator_closed(sc.drive, t));
    for (double a : {0.2, 0.6}) {
      const double r_closed = entropy_closed(EntropyKind::Renyi, sc, a, t);
      const double h_closed = entropy_closed(EntropyKind::Tsallis, sc, a, t);
      CHECK(std::abs(r_closed -
                     renyi_relative_entropy(rho_t, sc.state(), a)) < 1e-12);
      CHECK(std::abs(h_closed -
                     tsallis_relative_entropy(rho_t, sc.state(), a)) < 1e-12);
      // Single-qubit unitary orbits: both orderings coincide.
      CHECK(std::abs(renyi_relative_entropy(rho_t, sc.state(), a) -
                     renyi_relative_entropy(sc.state(), rho_t, a)) < 1e-10);
    }
  }
}

TEST_CASE("closed_norms: dense-matrix agreement and frozen entries") {
  const QubitScenario sc = fig_scenario(0.5);
  const DensityMatrix rho0 = sc.state();
  const HamiltonianSpec spec(sc.drive);

  for (double t : {0.4, 1.0, 2.5}) {
    const Matrix h = spec.sample(t);
    const DensityMatrix rho_t =
        evolve_state(rho0, propagator_closed(sc.drive, t));
    for (double a : {0.2, 0.5, 0.8}) {
      const ClosedNorms cn = closed_norms(sc, a, t);
      CHECK(std::abs(cn.comm_h_rho_alpha -
                     schatten2(commutator(h, matrix_power(rho0, a)))) < 1e-12);
      CHECK(std::abs(cn.comm_h_rho0 -
                     schatten2(commutator(h, rho0.matrix()))) < 1e-12);
      CHECK(std::abs(cn.comm_h_rho_t -
                     schatten2(commutator(h, rho_t.matrix()))) < 1e-12);
      CHECK(std::abs(cn.relative_entropy -
                     quantum_relative_entropy(rho_t, rho0)) < 1e-12);
      CHECK(std::abs(cn.log_norm - schatten2(matrix_log(rho0))) < 1e-12);
      CHECK(std::abs(cn.rho_alpha_norm -
                     schatten2(matrix_power(rho0, a))) < 1e-13);
    }
  }

  // Frozen: ||ln rho0||, and S(rho_1 || rho_0) on the reference scenario.
  const ClosedNorms at1 = closed_norms(sc, 0.5, 1.0);
  CHECK(std::abs(at1.log_norm - 1.0876255950775082) < 1e-13);
  CHECK(std::abs(at1.relative_entropy - 0.024928195872841383) < 1e-13);

  // Pure state: logarithmic entries diverge.
  QubitScenario pure = sc;
  pure.r = 1.0;
  const ClosedNorms pn = closed_norms(pure, 0.5, 1.0);
  CHECK(std::isinf(pn.log_norm));
  CHECK(std::isinf(pn.relative_entropy));
}

TEST_CASE("closed_context: frozen time averages") {
  const QubitScenario sc = fig_scenario(0.5);
  const ClosedContext c1 = closed_context(sc, 1.0, 4096);
  const ClosedContext c5 = closed_context(sc, 5.0, 4096);
  // 50-digit adaptive-quadrature references.
  CHECK(std::abs(c1.i_avg - 0.58492907264738486) < 1e-9);
  CHECK(std::abs(c5.i_avg - 0.60824634783006341) < 1e-9);
  CHECK(std::abs(c1.j_avg - 0.46518721928315713) < 1e-9);
  CHECK(std::abs(c5.j_avg - 0.53975125355337892) < 1e-9);

  const QubitScenario pure = testutil::lz_scenario(1.0, kPi / 4, kPi / 4, 0.5);
  const ClosedContext cq = closed_context(pure, 1.0, 4096);
  CHECK(!cq.q0_divergent);
  CHECK(std::abs(cq.q0_avg - 0.71236325260999089) < 1e-9);
}

TEST_CASE("qsl_closed coincides with the generic engine on the same grid") {
  const std::size_t steps = 256;
  const double tau = 2.0;
  const QubitScenario sc = fig_scenario(0.5);
  const ScanEngine engine(sc.state(), closed_trajectory(sc, tau, steps));

  for (GConvention conv : {GConvention::Appendix, GConvention::MainText}) {
    for (double a : {0.3, 0.7}) {
      const QslReport closed_r =
          qsl_closed(sc, QslFamily::Renyi, a, tau, conv, steps);
      const QslReport engine_r =
          engine.alpha_family(EntropyKind::Renyi, a, conv).qsl;
      CHECK(std::abs(closed_r.forward - engine_r.forward) < 1e-10);
      CHECK(std::abs(closed_r.reverse - engine_r.reverse) < 1e-10);
      CHECK(std::abs(closed_r.symmetric - engine_r.symmetric) < 1e-10);
      CHECK(std::abs(closed_r.tau_max - engine_r.tau_max) < 1e-10);

      const QslReport closed_t =
          qsl_closed(sc, QslFamily::Tsallis, a, tau, conv, steps);
      const QslReport engine_t =
          engine.alpha_family(EntropyKind::Tsallis, a, conv).qsl;
      CHECK(std::abs(closed_t.tau_max - engine_t.tau_max) < 1e-10);

      const ClosedContext ctx = closed_context(sc, tau, steps);
      const MeritDeltas closed_md =
          merit_closed_at(sc, ctx, EntropyKind::Renyi, a, conv);
      const auto rep = engine.alpha_family(EntropyKind::Renyi, a, conv);
      const MeritDeltas engine_md = merit_deltas(rep.forward, rep.reverse);
      CHECK(std::abs(closed_md.delta1 - engine_md.delta1) < 1e-10);
      CHECK(std::abs(closed_md.delta2 - engine_md.delta2) < 1e-10);
      CHECK(std::abs(closed_md.delta3 - engine_md.delta3) < 1e-10);
    }
  }

  // Relative-entropy limit family.
  const QslReport closed_re =
      qsl_closed(sc, QslFamily::RelativeEntropy, 1.0, tau,
                 GConvention::Appendix, steps);
  const QslReport engine_re = engine.re_qsl();
  CHECK(std::abs(closed_re.forward - engine_re.forward) < 1e-10);
  CHECK(std::abs(closed_re.reverse - engine_re.reverse) < 1e-10);
  CHECK(std::abs(closed_re.tau_max - engine_re.tau_max) < 1e-10);

  // Min family on a pure state.
  const QubitScenario pure = testutil::lz_scenario(1.0, kPi / 4, kPi / 4, 0.5);
  const ScanEngine pure_engine(pure.state(),
                               closed_trajectory(pure, tau, steps));
  const QslReport closed_min =
      qsl_closed(pure, QslFamily::Min, 0.0, tau, GConvention::Appendix, steps);
  const QslReport engine_min = pure_engine.min_qsl();
  CHECK(std::abs(closed_min.forward - engine_min.forward) < 1e-10);
  CHECK(std::abs(closed_min.tau_max - engine_min.tau_max) < 1e-10);
  // All three min components coincide by construction.
  CHECK(std::abs(closed_min.forward - closed_min.reverse) < 1e-12);
  CHECK(std::abs(closed_min.forward - closed_min.symmetric) < 1e-12);
}

TEST_CASE("degenerate drives: nothing moves, reported as such") {
  // Drive axis parallel to the Bloch vector: the state is stationary.
  QubitScenario still;
  still.r = 0.25;
  still.theta = 0.0;
  still.phi = 0.0;
  still.drive.axis = FixedAxis{Vec3(0.0, 0.0, 1.0)};

  CHECK(geometric_factor(still, 1.7) < 1e-28);
  const QslReport q =
      qsl_closed(still, QslFamily::Renyi, 0.4, 1.0, GConvention::Appendix, 64);
  CHECK(q.tau_max == 0.0);
  CHECK(has_flag(q.flags, ReportFlag::DegenerateDrive));

  // Min family on a mixed state is identically zero.
  const QslReport qmin = qsl_closed(fig_scenario(0.5), QslFamily::Min, 0.0,
                                    1.0, GConvention::Appendix, 64);
  CHECK(qmin.tau_max == 0.0);
  CHECK(has_flag(qmin.flags, ReportFlag::DegenerateDrive));
}
