#include "qsl/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qsl {

std::string flags_to_string(ReportFlag flags) {
  std::string out;
  auto append = [&out](const char* name) {
    if (!out.empty()) out += ';';
    out += name;
  };
  if (has_flag(flags, ReportFlag::Divergent)) append("Divergent");
  if (has_flag(flags, ReportFlag::DegenerateDrive)) append("DegenerateDrive");
  if (has_flag(flags, ReportFlag::SingularPhi)) append("SingularPhi");
  return out;
}

double schatten2(const Matrix& m) { return m.norm(); }

Matrix commutator(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw DimensionError("commutator: arguments must be square and same size");
  }
  return a * b - b * a;
}

// ---------------------------------------------------------------------------
// Cyclic complex Jacobi eigensolver.
// ---------------------------------------------------------------------------
namespace {

// Sum of |m_pq|^2 over p != q.
double off_diagonal_sq(const Matrix& a) {
  double s = 0.0;
  for (Eigen::Index p = 0; p < a.rows(); ++p) {
    for (Eigen::Index q = 0; q < a.cols(); ++q) {
      if (p != q) s += std::norm(a(p, q));
    }
  }
  return s;
}

}  // namespace

EigenDecomposition eigendecompose(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("eigendecompose: matrix must be square");
  }
  const Eigen::Index n = m.rows();
  const double scale = std::max(1.0, m.norm());
  if ((m - m.adjoint()).norm() > Tolerances::hermiticity * scale) {
    throw NotHermitian("eigendecompose: matrix is not Hermitian");
  }

  //  Work on the Hermitized copy so the rotations see an exactly Hermitian
  //  matrix regardless of last-bit asymmetries in the input.
  Matrix a = 0.5 * (m + m.adjoint());
  Matrix v = Matrix::Identity(n, n);

  const double fro = std::max(a.norm(), 1e-300);
  const double stop = 1e-14 * fro;
  constexpr int max_sweeps = 64;

  bool converged = (n == 1) || std::sqrt(off_diagonal_sq(a)) <= stop;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= 1e-300) continue;
        // Unitary plane rotation in the (p, q) plane that annihilates a_pq.
        const Complex phase = apq / mag;  // e^{i phi}
        const double app = std::real(a(p, p));
        const double aqq = std::real(a(q, q));
        const double tau = (app - aqq) / (2.0 * mag);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // Columns of J: J(:,p) = c e_p + s conj(phase) e_q,
        //               J(:,q) = -s phase e_p + c e_q.  A <- J^dagger A J.
        for (Eigen::Index k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp + s * std::conj(phase) * akq;
          a(k, q) = -s * phase * akp + c * akq;
          a(p, k) = std::conj(a(k, p));
          a(q, k) = std::conj(a(k, q));
        }
        a(p, p) = app + t * mag;
        a(q, q) = aqq - t * mag;
        a(p, q) = Complex(0.0, 0.0);
        a(q, p) = Complex(0.0, 0.0);

        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp + s * std::conj(phase) * vkq;
          v(k, q) = -s * phase * vkp + c * vkq;
        }
      }
    }
    converged = std::sqrt(off_diagonal_sq(a)) <= stop;
  }
  if (!converged) {
    throw ConvergenceError("eigendecompose: Jacobi sweeps did not converge");
  }

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) out.eigenvalues(i) = std::real(a(i, i));

  // Sort ascending, permuting eigenvector columns alongside.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return out.eigenvalues(i) < out.eigenvalues(j);
  });
  RealVector w(n);
  Matrix vec(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    w(i) = out.eigenvalues(order[static_cast<std::size_t>(i)]);
    vec.col(i) = v.col(order[static_cast<std::size_t>(i)]);
  }
  out.eigenvalues = std::move(w);
  out.eigenvectors = std::move(vec);
  return out;
}

// ---------------------------------------------------------------------------
// DensityMatrix.
// ---------------------------------------------------------------------------
DensityMatrix::DensityMatrix(const Matrix& m) : m_(m) {
  if (m_.rows() != m_.cols() || m_.rows() < 1) {
    throw DimensionError("DensityMatrix: matrix must be square");
  }
  if ((m_ - m_.adjoint()).norm() > Tolerances::hermiticity) {
    throw NotHermitian("DensityMatrix: matrix is not Hermitian");
  }
  const double tr = std::real(m_.trace());
  if (std::abs(tr - 1.0) > Tolerances::trace) {
    throw TraceError("DensityMatrix: trace deviates from one by more than 1e-10");
  }
  eig_ = eigendecompose(m_);
  for (Eigen::Index i = 0; i < eig_.eigenvalues.size(); ++i) {
    double& w = eig_.eigenvalues(i);
    if (w < -Tolerances::eig_floor) {
      throw NotPositive("DensityMatrix: eigenvalue below -1e-10");
    }
    if (w < 0.0) w = 0.0;
  }
}

Eigen::Index DensityMatrix::rank(double rank_tol) const {
  const double cut = rank_tol * std::max(lambda_max(), 0.0);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < eig_.eigenvalues.size(); ++i) {
    if (eig_.eigenvalues(i) > cut) ++r;
  }
  return r;
}

Matrix matrix_power(const DensityMatrix& rho, double a, double rank_tol) {
  const RealVector& w = rho.eigenvalues();
  const Matrix& v = rho.eigenvectors();
  const double cut = rank_tol * rho.lambda_max();
  if (a <= 0.0 && rho.lambda_min() <= cut) {
    throw SingularPower("matrix_power: non-positive power of a rank-deficient state");
  }
  RealVector powered(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    powered(i) = (w(i) <= cut) ? 0.0 : std::pow(w(i), a);
  }
  return v * powered.asDiagonal() * v.adjoint();
}

Matrix matrix_log(const DensityMatrix& rho, double rank_tol) {
  if (!rho.full_rank(rank_tol)) {
    throw RequiresFullRank("matrix_log: state is not full rank");
  }
  const RealVector& w = rho.eigenvalues();
  const Matrix& v = rho.eigenvectors();
  RealVector logged(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) logged(i) = std::log(w(i));
  return v * logged.asDiagonal() * v.adjoint();
}

SupportInfo support_projector(const DensityMatrix& rho, double rank_tol) {
  SupportInfo info;
  const Eigen::Index n = rho.dim();
  info.rank = rho.rank(rank_tol);
  info.degenerate = (info.rank == 0);
  if (info.rank == n) {
    // Full support: return the exact identity.
    info.projector = Matrix::Identity(n, n);
    return info;
  }
  info.projector = Matrix::Zero(n, n);
  const double cut = rank_tol * rho.lambda_max();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (rho.eigenvalues()(i) > cut) {
      info.projector += rho.eigenvectors().col(i) *
                        rho.eigenvectors().col(i).adjoint();
    }
  }
  return info;
}

Matrix exp_minus_ih_dt(const Matrix& h, double dt) {
  EigenDecomposition eig = eigendecompose(h);
  const Eigen::Index n = h.rows();
  Vector phases(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    phases(i) = std::exp(Complex(0.0, -eig.eigenvalues(i) * dt));
  }
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

Vec3 bloch_unit(double theta, double phi) {
  return Vec3(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
              std::cos(theta));
}

Matrix dot_sigma(const Vec3& n) {
  Matrix m(2, 2);
  m(0, 0) = Complex(n.z(), 0.0);
  m(0, 1) = Complex(n.x(), -n.y());
  m(1, 0) = Complex(n.x(), n.y());
  m(1, 1) = Complex(-n.z(), 0.0);
  return m;
}

DensityMatrix from_bloch(double r, double theta, double phi) {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw DomainError("from_bloch: Bloch radius must lie in [0, 1]");
  }
  Matrix m = 0.5 * (Matrix::Identity(2, 2) + r * dot_sigma(bloch_unit(theta, phi)));
  return DensityMatrix(m);
}

// ---------------------------------------------------------------------------
// Hamiltonian specifications.
// ---------------------------------------------------------------------------
Vec3 QubitDrive::axis_at(double t) const {
  if (const auto* lz = std::get_if<LZAxis>(&axis)) {
    const double x = lz->delta;
    const double z = lz->v * t;
    const double norm = std::hypot(x, z);
    if (norm == 0.0) {
      // Delta = 0 at t = 0: take the right-limit along the sweep.
      return Vec3(0.0, 0.0, lz->v > 0.0 ? 1.0 : -1.0);
    }
    return Vec3(x / norm, 0.0, z / norm);
  }
  return std::get<FixedAxis>(axis).n;
}

HamiltonianSpec::HamiltonianSpec(ConstantHamiltonian h) : payload_(std::move(h)) {
  const Matrix& m = std::get<ConstantHamiltonian>(payload_).h;
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw DimensionError("HamiltonianSpec: constant matrix must be square");
  }
  const double scale = std::max(1.0, m.norm());
  if ((m - m.adjoint()).norm() > Tolerances::hermiticity * scale) {
    throw NotHermitian("HamiltonianSpec: constant matrix is not Hermitian");
  }
  dim_ = m.rows();
}

HamiltonianSpec::HamiltonianSpec(QubitDrive d) : payload_(std::move(d)) {
  const QubitDrive& drive = std::get<QubitDrive>(payload_);
  if (const auto* lz = std::get_if<LZAxis>(&drive.axis)) {
    if (lz->v == 0.0) {
      throw DomainError("HamiltonianSpec: LZ sweep rate v must be nonzero");
    }
  } else {
    const Vec3& n = std::get<FixedAxis>(drive.axis).n;
    if (std::abs(n.norm() - 1.0) > 1e-9) {
      throw DomainError("HamiltonianSpec: fixed axis must be a unit vector");
    }
  }
  dim_ = 2;
}

HamiltonianSpec::HamiltonianSpec(TabulatedHamiltonian t) : payload_(std::move(t)) {
  const TabulatedHamiltonian& tab = std::get<TabulatedHamiltonian>(payload_);
  if (tab.times.size() < 2 || tab.times.size() != tab.values.size()) {
    throw ConfigError("HamiltonianSpec: tabulated drive needs matching times/values, >= 2 samples");
  }
  for (std::size_t i = 1; i < tab.times.size(); ++i) {
    if (!(tab.times[i] > tab.times[i - 1])) {
      throw ConfigError("HamiltonianSpec: tabulated times must be strictly increasing");
    }
  }
  dim_ = tab.values.front().rows();
  for (const Matrix& m : tab.values) {
    if (m.rows() != dim_ || m.cols() != dim_) {
      throw DimensionError("HamiltonianSpec: tabulated samples must share one square shape");
    }
    const double scale = std::max(1.0, m.norm());
    if ((m - m.adjoint()).norm() > Tolerances::hermiticity * scale) {
      throw NotHermitian("HamiltonianSpec: tabulated sample is not Hermitian");
    }
  }
}

Matrix HamiltonianSpec::sample(double t) const {
  if (const auto* c = std::get_if<ConstantHamiltonian>(&payload_)) {
    return c->h;
  }
  if (const auto* d = std::get_if<QubitDrive>(&payload_)) {
    return d->varpi * Matrix::Identity(2, 2) + dot_sigma(d->axis_at(t));
  }
  const TabulatedHamiltonian& tab = std::get<TabulatedHamiltonian>(payload_);
  if (t <= tab.times.front()) return tab.values.front();
  if (t >= tab.times.back()) return tab.values.back();
  const auto it = std::upper_bound(tab.times.begin(), tab.times.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - tab.times.begin());
  const std::size_t lo = hi - 1;
  const double w = (t - tab.times[lo]) / (tab.times[hi] - tab.times[lo]);
  return (1.0 - w) * tab.values[lo] + w * tab.values[hi];
}

bool HamiltonianSpec::time_independent() const {
  if (std::holds_alternative<ConstantHamiltonian>(payload_)) return true;
  if (const auto* d = std::get_if<QubitDrive>(&payload_)) {
    return std::holds_alternative<FixedAxis>(d->axis);
  }
  return false;
}

}  // namespace qsl
