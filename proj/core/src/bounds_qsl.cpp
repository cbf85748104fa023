#include "qsl/bounds_qsl.hpp"

#include <cmath>
#include <limits>

namespace qsl {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Below this, a speed average or an entropy numerator counts as zero when
// forming QSL ratios.
constexpr double kRatioFloor = 1e-14;

void check_alpha_open_unit(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie strictly between 0 and 1");
  }
}

// ||[X, diag(p)]||_2 from the element magnitudes |X_ij|^2 in the basis where
// the second argument is diagonal: sum_ij |X_ij|^2 (p_i - p_j)^2.
double commutator_norm_from(const Eigen::MatrixXd& abs2, const RealVector& p) {
  double s = 0.0;
  const Eigen::Index n = p.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d = p(i) - p(j);
      s += 2.0 * abs2(i, j) * d * d;
    }
  }
  return std::sqrt(s);
}

void invalidate(BoundReport& r, ReportFlag flag) {
  r.flags |= flag;
  r.rhs = kNaN;
  r.slack = kNaN;
  r.phi = kNaN;
  r.g_avg = kNaN;
}
}  // namespace

namespace detail {
double qsl_ratio(double numer, double denom, ReportFlag& flags) {
  if (!(numer > kRatioFloor)) {
    if (!(denom > kRatioFloor)) flags |= ReportFlag::DegenerateDrive;
    return 0.0;
  }
  if (!(denom > kRatioFloor)) {
    flags |= ReportFlag::Divergent;
    return kInf;
  }
  return numer / denom;
}
}  // namespace detail

const char* to_string(GConvention conv) {
  return conv == GConvention::Appendix ? "appendix" : "maintext";
}

const char* to_string(BoundVariant variant) {
  switch (variant) {
    case BoundVariant::Forward: return "forward";
    case BoundVariant::Reverse: return "reverse";
    case BoundVariant::Symmetric: return "symmetric";
    case BoundVariant::Loose: return "loose";
    case BoundVariant::RELimit: return "re_limit";
    case BoundVariant::MinLimit: return "min_limit";
  }
  return "?";
}

const char* to_string(QslFamily family) {
  switch (family) {
    case QslFamily::Renyi: return "renyi";
    case QslFamily::Tsallis: return "tsallis";
    case QslFamily::RelativeEntropy: return "re";
    case QslFamily::Min: return "min";
  }
  return "?";
}

double phi_factor(EntropyKind kind, double alpha, double lambda_min,
                  double rank_tol) {
  check_alpha_open_unit(alpha);
  if (kind == EntropyKind::Tsallis) return 1.0;
  if (!(lambda_min > rank_tol)) {
    throw RequiresFullRank("phi_factor: Renyi prefactor needs a full-rank state");
  }
  const double den = 1.0 + (1.0 - alpha) * std::log(lambda_min);
  if (!(den > Tolerances::phi_den)) {
    throw SingularPhi("phi_factor: 1 + (1-alpha) ln(lambda_min) is not positive");
  }
  return 1.0 / den;
}

GFunctional g_functional(EntropyKind kind, double alpha,
                         const DensityMatrix& rho0,
                         const std::vector<Matrix>& hamiltonians,
                         GConvention convention, double rank_tol) {
  check_alpha_open_unit(alpha);
  GFunctional out;
  out.phi = phi_factor(kind, alpha, rho0.lambda_min(), rank_tol);
  // Appendix arrangement: ||rho^a|| ||[H, rho^{1-a}]||; MainText swaps the
  // roles of a and 1-a between the plain norm and the commutator.
  const double norm_exp = convention == GConvention::Appendix ? alpha : 1.0 - alpha;
  const double comm_exp = 1.0 - norm_exp;
  const Matrix plain = matrix_power(rho0, norm_exp, rank_tol);
  const Matrix inside = matrix_power(rho0, comm_exp, rank_tol);
  const double plain_norm = schatten2(plain);
  out.samples.reserve(hamiltonians.size());
  for (const Matrix& h : hamiltonians) {
    out.samples.push_back(out.phi * plain_norm * schatten2(commutator(h, inside)));
  }
  return out;
}

double skew_information(const DensityMatrix& rho, const Matrix& h) {
  const double c = schatten2(commutator(h, rho.matrix()));
  return 0.25 * c * c;
}

double hamiltonian_variance(const DensityMatrix& rho, const Matrix& h) {
  const double h2 = std::real((rho.matrix() * h * h).trace());
  const double h1 = std::real((rho.matrix() * h).trace());
  return h2 - h1 * h1;
}

// ---------------------------------------------------------------------------
// ScanEngine.
// ---------------------------------------------------------------------------
ScanEngine::ScanEngine(const DensityMatrix& rho0,
                       const PropagatorTrajectory& traj, QuadratureRule rule,
                       double rank_tol)
    : rule_(rule), rank_tol_(rank_tol) {
  const std::size_t samples = traj.times.size();
  if (samples < 3 || traj.unitaries.size() != samples ||
      traj.hamiltonians.size() != samples) {
    throw DimensionError("ScanEngine: trajectory needs >= 3 aligned samples");
  }
  if (rule_ == QuadratureRule::Simpson && (samples - 1) % 2 != 0) {
    throw QuadratureError("ScanEngine: Simpson needs an even number of intervals");
  }
  tau_ = traj.horizon();
  if (!(tau_ > 0.0)) throw ZeroHorizon("ScanEngine: trajectory horizon must be positive");

  times_ = traj.times;
  dim_ = rho0.dim();
  lambda_ = rho0.eigenvalues();
  lambda_cut_ = rank_tol_ * rho0.lambda_max();
  full_rank_ = rho0.full_rank(rank_tol_);
  const Matrix& v = rho0.eigenvectors();

  // Support mask in the eigenbasis (eigenvalues ascending: the first
  // dim - rank entries are the null directions).
  std::vector<bool> in_support(static_cast<std::size_t>(dim_));
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < dim_; ++i) {
    in_support[static_cast<std::size_t>(i)] = lambda_(i) > lambda_cut_;
    if (in_support[static_cast<std::size_t>(i)]) ++rank;
  }
  rho_norm_ = std::sqrt(lambda_.squaredNorm());
  pi_norm_ = std::sqrt(static_cast<double>(rank));

  abs_h2_.resize(samples);
  abs_m2_.resize(samples);
  h_norm_.resize(samples);
  overlap_fwd_.resize(samples);
  overlap_rev_.resize(samples);
  comm_pi_norm_.resize(samples);
  comm_rho_t_.resize(samples);
  comm_rho_0_.resize(samples);

  const RealVector p1 = powered(1.0);
  for (std::size_t k = 0; k < samples; ++k) {
    const Matrix& h = traj.hamiltonians[k];
    const Matrix& u = traj.unitaries[k];
    if (h.rows() != dim_ || u.rows() != dim_) {
      throw DimensionError("ScanEngine: trajectory dimension mismatch");
    }
    const Matrix w = u * v;                   // columns: evolved eigenbasis
    const Matrix h_tilde = v.adjoint() * (h * v);
    const Matrix m_tilde = w.adjoint() * (h * w);
    const Matrix u_tilde = v.adjoint() * w;   // V^dagger U_k V
    abs_h2_[k] = h_tilde.cwiseAbs2();
    abs_m2_[k] = m_tilde.cwiseAbs2();
    h_norm_[k] = h_tilde.norm();
    const Eigen::MatrixXd abs_u2 = u_tilde.cwiseAbs2();

    // Tr(rho0 U P U^dagger) and Tr(P U rho0 U^dagger) with P the support
    // projector of rho0; exact identities when the state is full rank.
    double of = 0.0;
    double orv = 0.0;
    for (Eigen::Index i = 0; i < dim_; ++i) {
      double row_masked = 0.0;   // sum_{j in S} |u_ij|^2
      double row_weight = 0.0;   // sum_j lambda_j |u_ij|^2
      for (Eigen::Index j = 0; j < dim_; ++j) {
        if (in_support[static_cast<std::size_t>(j)]) row_masked += abs_u2(i, j);
        row_weight += lambda_(j) * abs_u2(i, j);
      }
      of += lambda_(i) * row_masked;
      if (in_support[static_cast<std::size_t>(i)]) orv += row_weight;
    }
    overlap_fwd_[k] = full_rank_ ? 1.0 : of;
    overlap_rev_[k] = full_rank_ ? 1.0 : orv;

    double cp = 0.0;
    for (Eigen::Index i = 0; i < dim_; ++i) {
      if (!in_support[static_cast<std::size_t>(i)]) continue;
      for (Eigen::Index j = 0; j < dim_; ++j) {
        if (in_support[static_cast<std::size_t>(j)]) continue;
        cp += 2.0 * abs_m2_[k](i, j);
      }
    }
    comm_pi_norm_[k] = full_rank_ ? 0.0 : std::sqrt(cp);

    comm_rho_t_[k] = commutator_norm_from(abs_m2_[k], p1);
    comm_rho_0_[k] = commutator_norm_from(abs_h2_[k], p1);

    if (k + 1 == samples) abs_u2_final_ = abs_u2;
  }

  if (full_rank_) {
    double ln2sum = 0.0;
    double s_diag = 0.0;
    RealVector loglam(dim_);
    for (Eigen::Index i = 0; i < dim_; ++i) {
      loglam(i) = std::log(lambda_(i));
      ln2sum += loglam(i) * loglam(i);
      s_diag += lambda_(i) * loglam(i);
    }
    log_norm_ = std::sqrt(ln2sum);
    const RealVector a_lam = abs_u2_final_ * lambda_;
    const RealVector at_lam = abs_u2_final_.transpose() * lambda_;
    s_forward_ = s_diag - a_lam.dot(loglam);
    s_reverse_ = s_diag - at_lam.dot(loglam);
  }
}

RealVector ScanEngine::powered(double x) const {
  RealVector out(dim_);
  for (Eigen::Index i = 0; i < dim_; ++i) {
    const double w = lambda_(i);
    out(i) = (w <= lambda_cut_) ? 0.0 : std::pow(w, x);
  }
  return out;
}

double ScanEngine::average(const std::vector<double>& samples) const {
  return time_average(samples, tau_, rule_).value;
}

ScanEngine::AlphaReports ScanEngine::alpha_family(EntropyKind kind, double alpha,
                                                  GConvention convention) const {
  check_alpha_open_unit(alpha);
  const std::size_t n = times_.size();
  const RealVector pa = powered(alpha);
  const RealVector pb = powered(1.0 - alpha);
  const double norm_a = std::sqrt(pa.squaredNorm());  // ||rho0^a||_2
  const double norm_b = std::sqrt(pb.squaredNorm());  // ||rho0^{1-a}||_2

  // Relative purities between rho_tau and rho0 in the shared eigenframe.
  double g_fwd = 0.0;
  double g_rev = 0.0;
  for (Eigen::Index i = 0; i < dim_; ++i) {
    for (Eigen::Index j = 0; j < dim_; ++j) {
      const double w = abs_u2_final_(i, j);
      g_fwd += w * pa(j) * pb(i);
      g_rev += w * pb(j) * pa(i);
    }
  }

  const double inv = 1.0 - alpha;  // |1 - alpha| for alpha in (0, 1)
  double lhs_fwd, lhs_rev;
  ReportFlag lhs_flags = ReportFlag::None;
  if (kind == EntropyKind::Renyi) {
    if (g_fwd > 1e-300 && g_rev > 1e-300) {
      lhs_fwd = std::log(g_fwd) / (alpha - 1.0);
      lhs_rev = std::log(g_rev) / (alpha - 1.0);
    } else {
      lhs_fwd = kInf;
      lhs_rev = kInf;
      lhs_flags |= ReportFlag::Divergent;
    }
  } else {
    lhs_fwd = (1.0 - g_fwd) / inv;
    lhs_rev = (1.0 - g_rev) / inv;
  }

  // Commutator-norm samples at the two exponents.
  std::vector<double> c_a(n), c_b(n);
  {
    Eigen::MatrixXd wa(dim_, dim_), wb(dim_, dim_);
    for (Eigen::Index i = 0; i < dim_; ++i) {
      for (Eigen::Index j = 0; j < dim_; ++j) {
        const double da = pa(i) - pa(j);
        const double db = pb(i) - pb(j);
        wa(i, j) = da * da;
        wb(i, j) = db * db;
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      c_a[k] = std::sqrt(abs_h2_[k].cwiseProduct(wa).sum());
      c_b[k] = std::sqrt(abs_h2_[k].cwiseProduct(wb).sum());
    }
  }

  // Phi prefactors at index alpha (forward/loose) and 1-alpha (reverse).
  double phi_a = kNaN, phi_b = kNaN;
  bool phi_a_ok = true, phi_b_ok = true;
  try {
    phi_a = phi_factor(kind, alpha, lambda_(0), rank_tol_);
  } catch (const Error&) {
    phi_a_ok = false;
  }
  try {
    phi_b = phi_factor(kind, 1.0 - alpha, lambda_(0), rank_tol_);
  } catch (const Error&) {
    phi_b_ok = false;
  }

  // G_a and G_{1-a} averages in the requested arrangement (without Phi; the
  // prefactor multiplies at the end so flagged cases stay cleanly separated).
  const bool appendix = convention == GConvention::Appendix;
  std::vector<double> raw_f(n), raw_r(n), raw_s(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fwd_term = appendix ? norm_a * c_b[k] : norm_b * c_a[k];
    const double rev_term = appendix ? norm_b * c_a[k] : norm_a * c_b[k];
    raw_f[k] = fwd_term;
    raw_r[k] = rev_term;
  }
  const double avg_f_raw = average(raw_f);
  const double avg_r_raw = average(raw_r);
  const double avg_h = average(h_norm_);

  AlphaReports out;
  auto init = [&](BoundReport& r, BoundVariant variant) {
    r.variant = variant;
    r.kind = kind;
    r.convention = convention;
    r.alpha = alpha;
    r.tau = tau_;
    r.flags = lhs_flags;
  };
  init(out.forward, BoundVariant::Forward);
  init(out.reverse, BoundVariant::Reverse);
  init(out.symmetric, BoundVariant::Symmetric);
  init(out.loose, BoundVariant::Loose);

  out.forward.lhs = lhs_fwd;
  out.reverse.lhs = lhs_rev;
  out.symmetric.lhs = lhs_fwd + lhs_rev;
  out.loose.lhs = lhs_fwd;

  if (phi_a_ok) {
    out.forward.phi = phi_a;
    out.forward.g_avg = phi_a * avg_f_raw;
    out.forward.rhs = tau_ * out.forward.g_avg / inv;
    out.forward.slack = out.forward.rhs - out.forward.lhs;

    out.loose.phi = phi_a;
    out.loose.g_avg = std::sqrt(2.0) * phi_a * norm_a * norm_b * avg_h;
    out.loose.rhs = tau_ * out.loose.g_avg / inv;
    out.loose.slack = out.loose.rhs - out.loose.lhs;
  } else {
    invalidate(out.forward, ReportFlag::SingularPhi);
    invalidate(out.loose, ReportFlag::SingularPhi);
  }

  if (phi_b_ok) {
    out.reverse.phi = phi_b;
    out.reverse.g_avg = phi_b * avg_r_raw;
    out.reverse.rhs = tau_ * out.reverse.g_avg / inv;
    out.reverse.slack = out.reverse.rhs - out.reverse.lhs;
  } else {
    invalidate(out.reverse, ReportFlag::SingularPhi);
  }

  if (phi_a_ok && phi_b_ok) {
    out.symmetric.phi = phi_a;
    out.symmetric.g_avg = phi_a * avg_f_raw + phi_b * avg_r_raw;
    out.symmetric.rhs = tau_ * out.symmetric.g_avg / inv;
    out.symmetric.slack = out.symmetric.rhs - out.symmetric.lhs;
  } else {
    invalidate(out.symmetric, ReportFlag::SingularPhi);
  }

  QslReport& q = out.qsl;
  q.family = kind == EntropyKind::Renyi ? QslFamily::Renyi : QslFamily::Tsallis;
  q.convention = convention;
  q.alpha = alpha;
  q.tau = tau_;
  q.flags = lhs_flags | (out.forward.flags & ReportFlag::SingularPhi) |
            (out.reverse.flags & ReportFlag::SingularPhi);
  if (has_flag(q.flags, ReportFlag::SingularPhi) ||
      has_flag(q.flags, ReportFlag::Divergent)) {
    q.forward = q.reverse = q.symmetric = q.tau_max = kNaN;
    return out;
  }
  q.forward = detail::qsl_ratio(inv * lhs_fwd, out.forward.g_avg, q.flags);
  q.reverse = detail::qsl_ratio(inv * lhs_rev, out.reverse.g_avg, q.flags);
  q.symmetric = detail::qsl_ratio(inv * (lhs_fwd + lhs_rev), out.symmetric.g_avg, q.flags);
  if (has_flag(q.flags, ReportFlag::Divergent)) {
    q.tau_max = kNaN;
  } else {
    q.tau_max = std::max(q.forward, std::max(q.reverse, q.symmetric));
  }
  return out;
}

BoundReport ScanEngine::re_limit() const {
  BoundReport r;
  r.variant = BoundVariant::RELimit;
  r.convention = GConvention::Appendix;
  r.alpha = 1.0;
  r.tau = tau_;
  if (!full_rank_) {
    r.lhs = kNaN;
    invalidate(r, ReportFlag::Divergent);
    return r;
  }
  r.lhs = s_forward_;
  r.phi = 1.0;
  r.g_avg = log_norm_ * average(comm_rho_t_);
  r.rhs = tau_ * r.g_avg;
  r.slack = r.rhs - r.lhs;
  return r;
}

QslReport ScanEngine::re_qsl() const {
  QslReport q;
  q.family = QslFamily::RelativeEntropy;
  q.convention = GConvention::Appendix;
  q.alpha = 1.0;
  q.tau = tau_;
  if (!full_rank_) {
    q.flags |= ReportFlag::Divergent;
    q.forward = q.reverse = q.symmetric = q.tau_max = kNaN;
    return q;
  }
  const double avg_t = average(comm_rho_t_);
  const double avg_0 = average(comm_rho_0_);
  q.forward = detail::qsl_ratio(s_forward_, log_norm_ * avg_t, q.flags);
  q.reverse = detail::qsl_ratio(s_reverse_, log_norm_ * avg_0, q.flags);
  q.symmetric = detail::qsl_ratio(s_forward_ + s_reverse_,
                              log_norm_ * (avg_t + avg_0), q.flags);
  if (has_flag(q.flags, ReportFlag::Divergent)) {
    q.tau_max = kNaN;
  } else {
    q.tau_max = std::max(q.forward, std::max(q.reverse, q.symmetric));
  }
  return q;
}

BoundReport ScanEngine::min_limit() const {
  BoundReport r;
  r.variant = BoundVariant::MinLimit;
  r.convention = GConvention::Appendix;
  r.alpha = 0.0;
  r.tau = tau_;
  r.phi = 1.0;
  if (full_rank_) {
    // Support projector is the identity: nothing moves in this family.
    r.lhs = 0.0;
    r.g_avg = 0.0;
    r.rhs = 0.0;
    r.slack = 0.0;
    return r;
  }
  const std::size_t n = times_.size();
  std::vector<double> q0(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!(overlap_fwd_[k] > Tolerances::overlap)) {
      r.flags |= ReportFlag::Divergent;
      q0[k] = kInf;
    } else {
      q0[k] = rho_norm_ * comm_pi_norm_[k] / overlap_fwd_[k];
    }
  }
  r.lhs = !(overlap_fwd_.back() > Tolerances::overlap)
              ? kInf
              : std::abs(-std::log(overlap_fwd_.back()));
  if (has_flag(r.flags, ReportFlag::Divergent) || std::isinf(r.lhs)) {
    r.flags |= ReportFlag::Divergent;
    r.rhs = kNaN;
    r.slack = kNaN;
    r.g_avg = kNaN;
    return r;
  }
  r.g_avg = average(q0);
  r.rhs = tau_ * r.g_avg;
  r.slack = r.rhs - r.lhs;
  return r;
}

QslReport ScanEngine::min_qsl() const {
  QslReport q;
  q.family = QslFamily::Min;
  q.convention = GConvention::Appendix;
  q.alpha = 0.0;
  q.tau = tau_;
  if (full_rank_) {
    // Exact zeros: the projector never moves, so every component vanishes.
    q.forward = q.reverse = q.symmetric = q.tau_max = 0.0;
    q.flags |= ReportFlag::DegenerateDrive;
    return q;
  }
  const std::size_t n = times_.size();
  std::vector<double> qf(n), qr(n);
  bool divergent = false;
  for (std::size_t k = 0; k < n; ++k) {
    if (!(overlap_fwd_[k] > Tolerances::overlap) ||
        !(overlap_rev_[k] > Tolerances::overlap)) {
      divergent = true;
      break;
    }
    qf[k] = rho_norm_ * comm_pi_norm_[k] / overlap_fwd_[k];
    qr[k] = pi_norm_ * comm_rho_t_[k] / overlap_rev_[k];
  }
  if (divergent || !(overlap_fwd_.back() > Tolerances::overlap) ||
      !(overlap_rev_.back() > Tolerances::overlap)) {
    q.flags |= ReportFlag::Divergent;
    q.forward = q.reverse = q.symmetric = q.tau_max = kNaN;
    return q;
  }
  const double r0_fwd = std::abs(-std::log(overlap_fwd_.back()));
  const double r0_rev = std::abs(-std::log(overlap_rev_.back()));
  const double avg_f = average(qf);
  const double avg_r = average(qr);
  q.forward = detail::qsl_ratio(r0_fwd, avg_f, q.flags);
  q.reverse = detail::qsl_ratio(r0_rev, avg_r, q.flags);
  q.symmetric = detail::qsl_ratio(r0_fwd + r0_rev, avg_f + avg_r, q.flags);
  if (has_flag(q.flags, ReportFlag::Divergent)) {
    q.tau_max = kNaN;
  } else {
    q.tau_max = std::max(q.forward, std::max(q.reverse, q.symmetric));
  }
  return q;
}

// ---------------------------------------------------------------------------
// One-shot wrappers.
// ---------------------------------------------------------------------------
BoundReport bound_forward(EntropyKind kind, double alpha,
                          const DensityMatrix& rho0,
                          const PropagatorTrajectory& traj,
                          GConvention convention, QuadratureRule rule) {
  return ScanEngine(rho0, traj, rule).alpha_family(kind, alpha, convention).forward;
}

BoundReport bound_reverse(EntropyKind kind, double alpha,
                          const DensityMatrix& rho0,
                          const PropagatorTrajectory& traj,
                          GConvention convention, QuadratureRule rule) {
  return ScanEngine(rho0, traj, rule).alpha_family(kind, alpha, convention).reverse;
}

BoundReport bound_symmetric(EntropyKind kind, double alpha,
                            const DensityMatrix& rho0,
                            const PropagatorTrajectory& traj,
                            GConvention convention, QuadratureRule rule) {
  return ScanEngine(rho0, traj, rule).alpha_family(kind, alpha, convention).symmetric;
}

BoundReport bound_loose(EntropyKind kind, double alpha,
                        const DensityMatrix& rho0,
                        const PropagatorTrajectory& traj,
                        GConvention convention, QuadratureRule rule) {
  return ScanEngine(rho0, traj, rule).alpha_family(kind, alpha, convention).loose;
}

BoundReport re_limit_bound(const DensityMatrix& rho0,
                           const PropagatorTrajectory& traj,
                           QuadratureRule rule) {
  return ScanEngine(rho0, traj, rule).re_limit();
}

BoundReport min_limit_bound(const DensityMatrix& rho0,
                            const PropagatorTrajectory& traj,
                            QuadratureRule rule, double rank_tol) {
  return ScanEngine(rho0, traj, rule, rank_tol).min_limit();
}

QslReport qsl_times(EntropyKind kind, double alpha, const DensityMatrix& rho0,
                    const PropagatorTrajectory& traj, GConvention convention,
                    QuadratureRule rule) {
  return ScanEngine(rho0, traj, rule).alpha_family(kind, alpha, convention).qsl;
}

QslReport qsl_re(const DensityMatrix& rho0, const PropagatorTrajectory& traj,
                 QuadratureRule rule) {
  return ScanEngine(rho0, traj, rule).re_qsl();
}

QslReport qsl_min(const DensityMatrix& rho0, const PropagatorTrajectory& traj,
                  QuadratureRule rule, double rank_tol) {
  return ScanEngine(rho0, traj, rule, rank_tol).min_qsl();
}

MeritDeltas merit_deltas(const BoundReport& forward, const BoundReport& reverse) {
  if (forward.variant != BoundVariant::Forward ||
      reverse.variant != BoundVariant::Reverse ||
      forward.kind != reverse.kind || forward.alpha != reverse.alpha ||
      forward.tau != reverse.tau) {
    throw DomainError("merit_deltas: reports must be a matching forward/reverse pair");
  }
  const double inv = std::abs(1.0 - forward.alpha);
  MeritDeltas d;
  d.delta1 = inv * forward.slack;
  d.delta2 = inv * reverse.slack;
  d.delta3 = d.delta1 + d.delta2;
  return d;
}

}  // namespace qsl
