#include "qsl/qubit_oracle.hpp"

#include <cmath>
#include <limits>

namespace qsl {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kDegenerateAngle = 1e-15;

double clamp0(double x) { return x > 0.0 ? x : 0.0; }

// Rodrigues rotation of `a` about unit axis `axis` by angle 2|u|; sign = +1
// rotates forward, sign = -1 backward.
Vec3 rotate_double_angle(const Vec3& a, const Vec3& axis, double angle,
                         double sign) {
  const double s = std::sin(angle);
  const double s2 = 2.0 * s * s;            // 1 - cos(2|u|)
  const double sd = sign * std::sin(2.0 * angle);
  return a + sd * axis.cross(a) + s2 * (axis.dot(a) * axis - a);
}
}  // namespace

XiPair xi(double alpha, double r) {
  if (!(alpha >= 0.0)) throw DomainError("xi: exponent must be >= 0");
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("xi: Bloch radius must lie in [0, 1]");
  const double scale = std::pow(2.0, -alpha);
  const double up = std::pow(1.0 + r, alpha);
  const double dn = std::pow(1.0 - r, alpha);  // 0^0 == 1 per std::pow
  return XiPair{scale * (up + dn), scale * (up - dn)};
}

Vec3 u_integral(const QubitDrive& drive, double t) {
  if (const auto* lz = std::get_if<LZAxis>(&drive.axis)) {
    const double ad = std::abs(lz->delta);
    const double v = lz->v;
    const double uz = (std::hypot(ad, v * t) - ad) / v;
    const double ux = ad == 0.0 ? 0.0 : (lz->delta / v) * std::asinh(v * t / ad);
    return Vec3(ux, 0.0, uz);
  }
  return t * std::get<FixedAxis>(drive.axis).n;
}

DriveVectors drive_vectors(const QubitScenario& sc, double t) {
  DriveVectors out;
  out.u = u_integral(sc.drive, t);
  out.angle = out.u.norm();
  out.degenerate = out.angle < kDegenerateAngle;
  out.uhat = out.degenerate ? Vec3(0.0, 0.0, 1.0) : Vec3(out.u / out.angle);
  const Vec3 rhat = sc.rhat();
  const Vec3 nhat = sc.drive.axis_at(t);
  if (out.degenerate) {
    out.nu_hat = rhat;
    out.mu_hat = nhat;
  } else {
    out.nu_hat = rotate_double_angle(rhat, out.uhat, out.angle, +1.0);
    out.mu_hat = rotate_double_angle(nhat, out.uhat, out.angle, -1.0);
  }
  return out;
}

Matrix propagator_closed(const QubitDrive& drive, double t) {
  const Vec3 u = u_integral(drive, t);
  const double angle = u.norm();
  const Complex global = std::exp(Complex(0.0, -t * drive.varpi));
  if (angle < kDegenerateAngle) {
    return global * Matrix::Identity(2, 2);
  }
  const Vec3 uhat = u / angle;
  return global * (std::cos(angle) * Matrix::Identity(2, 2) -
                   Complex(0.0, 1.0) * std::sin(angle) * dot_sigma(uhat));
}

PropagatorTrajectory closed_trajectory(const QubitScenario& sc, double tau,
                                       std::size_t steps) {
  if (!(tau > 0.0)) throw ZeroHorizon("closed_trajectory: tau must be positive");
  if (steps < 2) throw DomainError("closed_trajectory: need at least 2 steps");
  PropagatorTrajectory traj;
  traj.times.resize(steps + 1);
  traj.unitaries.resize(steps + 1);
  traj.hamiltonians.resize(steps + 1);
  const Matrix id = Matrix::Identity(2, 2);
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = tau * static_cast<double>(k) / static_cast<double>(steps);
    traj.times[k] = t;
    traj.unitaries[k] = k == 0 ? id : propagator_closed(sc.drive, t);
    traj.hamiltonians[k] = sc.drive.varpi * id + dot_sigma(sc.drive.axis_at(t));
  }
  traj.times[steps] = tau;
  return traj;
}

double geometric_factor(const QubitScenario& sc, double t) {
  const DriveVectors dv = drive_vectors(sc, t);
  if (dv.degenerate) return 0.0;
  const double c = dv.uhat.dot(sc.rhat());
  const double s = std::sin(dv.angle);
  return clamp0(1.0 - c * c) * s * s;
}

double purity_closed(const QubitScenario& sc, double alpha, double t) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("purity_closed: alpha must lie strictly between 0 and 1");
  }
  return 1.0 - xi(alpha, sc.r).minus * xi(1.0 - alpha, sc.r).minus *
                   geometric_factor(sc, t);
}

double entropy_closed(EntropyKind kind, const QubitScenario& sc, double alpha,
                      double t) {
  const double g = purity_closed(sc, alpha, t);
  if (kind == EntropyKind::Renyi) {
    if (!(g > 1e-300)) {
      throw NonPositivePurity("entropy_closed: relative purity is not positive");
    }
    return std::log(g) / (alpha - 1.0);
  }
  return (1.0 - g) / (1.0 - alpha);
}

ClosedNorms closed_norms(const QubitScenario& sc, double alpha, double t) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("closed_norms: alpha must lie strictly between 0 and 1");
  }
  ClosedNorms out;
  const DriveVectors dv = drive_vectors(sc, t);
  const Vec3 rhat = sc.rhat();
  const Vec3 nhat = sc.drive.axis_at(t);
  const double sin2_n = clamp0(1.0 - std::pow(nhat.dot(rhat), 2));
  const double sin2_mu = clamp0(1.0 - std::pow(dv.mu_hat.dot(rhat), 2));
  const double geom = geometric_factor(sc, t);

  out.comm_h_rho_alpha = xi(alpha, sc.r).minus * std::sqrt(2.0 * sin2_n);
  out.comm_h_rho0 = sc.r * std::sqrt(2.0 * sin2_n);
  out.comm_h_rho_t = sc.r * std::sqrt(2.0 * sin2_mu);
  out.rho_alpha_norm = std::sqrt(xi(2.0 * alpha, sc.r).plus);
  if (sc.r < 1.0) {
    out.relative_entropy =
        sc.r * std::log((1.0 + sc.r) / (1.0 - sc.r)) * geom;
    const double l1 = std::log((1.0 - sc.r) / 2.0);
    const double l2 = std::log((1.0 + sc.r) / 2.0);
    out.log_norm = std::sqrt(l1 * l1 + l2 * l2);
  } else {
    out.relative_entropy = geom > 0.0 ? kInf : 0.0;
    out.log_norm = kInf;
  }
  return out;
}

ClosedContext closed_context(const QubitScenario& sc, double tau,
                             std::size_t steps) {
  ClosedContext ctx;
  ctx.tau = tau;
  if (!(tau > 0.0)) return ctx;  // zero horizon: everything stays at zero
  if (steps < 2 || steps % 2 != 0) {
    throw QuadratureError("closed_context: Simpson needs an even step count >= 2");
  }
  ctx.geom = geometric_factor(sc, tau);

  const Vec3 rhat = sc.rhat();
  const bool pure = std::abs(sc.r - 1.0) <= 1e-12;
  std::vector<double> fi(steps + 1), fj(steps + 1), fq(steps + 1);
  bool divergent = false;
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = tau * static_cast<double>(k) / static_cast<double>(steps);
    const DriveVectors dv = drive_vectors(sc, t);
    const Vec3 nhat = sc.drive.axis_at(t);
    fi[k] = std::sqrt(clamp0(1.0 - std::pow(nhat.dot(rhat), 2)));
    fj[k] = std::sqrt(clamp0(1.0 - std::pow(dv.mu_hat.dot(rhat), 2)));
    if (pure) {
      const double overlap = 1.0 - geometric_factor(sc, t);
      if (!(overlap > Tolerances::overlap)) {
        divergent = true;
      } else {
        fq[k] = std::sqrt(2.0) * fj[k] / overlap;
      }
    }
  }
  ctx.i_avg = time_average(fi, tau).value;
  ctx.j_avg = time_average(fj, tau).value;
  if (pure && !divergent) {
    ctx.q0_avg = time_average(fq, tau).value;
  } else {
    ctx.q0_avg = kNaN;
    ctx.q0_divergent = pure && divergent;
  }
  return ctx;
}

namespace {
// <<G_a>> and <<G_{1-a}>> for the closed-form scenarios (Phi included).
// Throws like phi_factor for the Renyi prefactors.
struct ClosedGAverages {
  double forward = 0.0;
  double reverse = 0.0;
};
ClosedGAverages closed_g_averages(EntropyKind kind, const QubitScenario& sc,
                                  double alpha, GConvention convention,
                                  double i_avg) {
  const double lam_min = (1.0 - sc.r) / 2.0;
  const double phi_a = phi_factor(kind, alpha, lam_min);
  const double phi_b = phi_factor(kind, 1.0 - alpha, lam_min);
  const double na = std::sqrt(xi(2.0 * alpha, sc.r).plus);        // ||rho0^a||
  const double nb = std::sqrt(xi(2.0 - 2.0 * alpha, sc.r).plus);  // ||rho0^{1-a}||
  const double ca = xi(alpha, sc.r).minus;        // ||[H, rho0^a]|| / sqrt(2 sin^2)
  const double cb = xi(1.0 - alpha, sc.r).minus;  // same at exponent 1-a
  const bool appendix = convention == GConvention::Appendix;
  ClosedGAverages out;
  const double base = std::sqrt(2.0) * i_avg;
  out.forward = phi_a * base * (appendix ? na * cb : nb * ca);
  out.reverse = phi_b * base * (appendix ? nb * ca : na * cb);
  return out;
}
}  // namespace

QslReport qsl_closed_at(const QubitScenario& sc, const ClosedContext& ctx,
                        QslFamily family, double alpha,
                        GConvention convention) {
  QslReport q;
  q.family = family;
  q.convention = convention;
  q.tau = ctx.tau;
  switch (family) {
    case QslFamily::Renyi: q.alpha = alpha; break;
    case QslFamily::Tsallis: q.alpha = alpha; break;
    case QslFamily::RelativeEntropy: q.alpha = 1.0; break;
    case QslFamily::Min: q.alpha = 0.0; break;
  }
  if (!(ctx.tau > 0.0)) {
    q.flags |= ReportFlag::DegenerateDrive;
    return q;  // zero horizon: all components stay zero
  }

  if (family == QslFamily::Renyi || family == QslFamily::Tsallis) {
    const EntropyKind kind =
        family == QslFamily::Renyi ? EntropyKind::Renyi : EntropyKind::Tsallis;
    double lhs;
    try {
      lhs = entropy_closed(kind, sc, alpha, ctx.tau);
    } catch (const NonPositivePurity&) {
      q.flags |= ReportFlag::Divergent;
      q.forward = q.reverse = q.symmetric = q.tau_max = kNaN;
      return q;
    }
    ClosedGAverages g;
    try {
      g = closed_g_averages(kind, sc, alpha, convention, ctx.i_avg);
    } catch (const Error&) {
      q.flags |= ReportFlag::SingularPhi;
      q.forward = q.reverse = q.symmetric = q.tau_max = kNaN;
      return q;
    }
    const double inv = 1.0 - alpha;
    // The reversed divergence coincides with the forward one here: the
    // relative purity is symmetric in alpha <-> 1-alpha for these states.
    q.forward = detail::qsl_ratio(inv * lhs, g.forward, q.flags);
    q.reverse = detail::qsl_ratio(inv * lhs, g.reverse, q.flags);
    q.symmetric = detail::qsl_ratio(inv * 2.0 * lhs, g.forward + g.reverse, q.flags);
  } else if (family == QslFamily::RelativeEntropy) {
    if (sc.r >= 1.0) {
      q.flags |= ReportFlag::Divergent;
      q.forward = q.reverse = q.symmetric = q.tau_max = kNaN;
      return q;
    }
    const ClosedNorms norms = closed_norms(sc, 0.5, ctx.tau);
    const double s = norms.relative_entropy;
    const double denom_t = norms.log_norm * std::sqrt(2.0) * sc.r * ctx.j_avg;
    const double denom_0 = norms.log_norm * std::sqrt(2.0) * sc.r * ctx.i_avg;
    q.forward = detail::qsl_ratio(s, denom_t, q.flags);
    q.reverse = detail::qsl_ratio(s, denom_0, q.flags);
    q.symmetric = detail::qsl_ratio(2.0 * s, denom_t + denom_0, q.flags);
  } else {  // Min
    if (std::abs(sc.r - 1.0) > 1e-12) {
      // Full-rank state: the support projector never moves.
      q.flags |= ReportFlag::DegenerateDrive;
      return q;
    }
    const double overlap = 1.0 - ctx.geom;
    if (ctx.q0_divergent || !(overlap > Tolerances::overlap) ||
        std::isnan(ctx.q0_avg)) {
      q.flags |= ReportFlag::Divergent;
      q.forward = q.reverse = q.symmetric = q.tau_max = kNaN;
      return q;
    }
    const double r0 = std::abs(-std::log(overlap));
    // All three Q_0 speeds coincide for a pure qubit (rho0 is its own
    // support projector), so the components are equal.
    q.forward = detail::qsl_ratio(r0, ctx.q0_avg, q.flags);
    q.reverse = q.forward;
    q.symmetric = q.forward;
  }
  if (has_flag(q.flags, ReportFlag::Divergent)) {
    q.tau_max = kNaN;
  } else {
    q.tau_max = std::max(q.forward, std::max(q.reverse, q.symmetric));
  }
  return q;
}

QslReport qsl_closed(const QubitScenario& sc, QslFamily family, double alpha,
                     double tau, GConvention convention, std::size_t steps) {
  return qsl_closed_at(sc, closed_context(sc, tau, steps), family, alpha,
                       convention);
}

MeritDeltas merit_closed_at(const QubitScenario& sc, const ClosedContext& ctx,
                            EntropyKind kind, double alpha,
                            GConvention convention) {
  MeritDeltas d;
  const double lhs = entropy_closed(kind, sc, alpha, ctx.tau);
  const ClosedGAverages g =
      closed_g_averages(kind, sc, alpha, convention, ctx.i_avg);
  const double inv = 1.0 - alpha;
  d.delta1 = ctx.tau * g.forward - inv * lhs;
  d.delta2 = ctx.tau * g.reverse - inv * lhs;
  d.delta3 = d.delta1 + d.delta2;
  return d;
}

}  // namespace qsl
