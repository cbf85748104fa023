#include "qsl/evolution.hpp"

#include <cmath>

namespace qsl {

namespace {
// Modified Gram-Schmidt on the columns, in place.
void reorthonormalize(Matrix& u) {
  const Eigen::Index n = u.cols();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < j; ++k) {
      const Complex proj = u.col(k).dot(u.col(j));
      u.col(j) -= proj * u.col(k);
    }
    u.col(j) /= u.col(j).norm();
  }
}
}  // namespace

PropagatorTrajectory propagate(const HamiltonianSpec& spec, double tau,
                               std::size_t steps,
                               std::size_t reorthonormalize_every) {
  if (!(tau > 0.0)) {
    throw ZeroHorizon("propagate: horizon tau must be positive");
  }
  if (steps < 2) {
    throw DomainError("propagate: need at least 2 steps");
  }
  const Eigen::Index n = spec.dim();
  const double dt = tau / static_cast<double>(steps);

  PropagatorTrajectory traj;
  traj.times.resize(steps + 1);
  traj.unitaries.resize(steps + 1);
  traj.hamiltonians.resize(steps + 1);

  traj.times[0] = 0.0;
  traj.unitaries[0] = Matrix::Identity(n, n);
  traj.hamiltonians[0] = spec.sample(0.0);

  // For a time-independent generator the step factor never changes; reuse it.
  const bool constant = spec.time_independent();
  Matrix step_factor;
  if (constant) step_factor = exp_minus_ih_dt(traj.hamiltonians[0], dt);

  for (std::size_t k = 0; k < steps; ++k) {
    const double tk = static_cast<double>(k) * dt;
    const double t_next = static_cast<double>(k + 1) * dt;
    if (!constant) {
      step_factor = exp_minus_ih_dt(spec.sample(tk + 0.5 * dt), dt);
    }
    traj.unitaries[k + 1] = step_factor * traj.unitaries[k];
    if (reorthonormalize_every > 0 && (k + 1) % reorthonormalize_every == 0) {
      reorthonormalize(traj.unitaries[k + 1]);
    }
    traj.times[k + 1] = t_next;
    traj.hamiltonians[k + 1] = spec.sample(t_next);
  }
  traj.times[steps] = tau;  // guard the endpoint against rounding drift
  return traj;
}

DensityMatrix evolve_state(const DensityMatrix& rho, const Matrix& u) {
  if (u.rows() != rho.dim() || u.cols() != rho.dim()) {
    throw DimensionError("evolve_state: propagator and state dimensions differ");
  }
  Matrix m = u * rho.matrix() * u.adjoint();
  // Symmetrize away last-bit asymmetry before revalidation.
  m = 0.5 * (m + m.adjoint().eval());
  return DensityMatrix(m);
}

const char* to_string(QuadratureRule rule) {
  return rule == QuadratureRule::Simpson ? "simpson" : "trapezoid";
}

TimeAverage time_average(const std::vector<double>& samples, double tau,
                         QuadratureRule rule) {
  if (!(tau > 0.0)) {
    throw ZeroHorizon("time_average: horizon tau must be positive");
  }
  if (samples.size() < 3) {
    throw QuadratureError("time_average: need at least 3 samples");
  }
  const std::size_t n = samples.size() - 1;  // number of intervals
  const double h = tau / static_cast<double>(n);

  double integral = 0.0;
  if (rule == QuadratureRule::Simpson) {
    if (n % 2 != 0) {
      throw QuadratureError("time_average: Simpson needs an even number of intervals");
    }
    double sum4 = 0.0;
    double sum2 = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
      if (k % 2 == 1) {
        sum4 += samples[k];
      } else {
        sum2 += samples[k];
      }
    }
    integral = (h / 3.0) * (samples.front() + samples.back() + 4.0 * sum4 + 2.0 * sum2);
  } else {
    double interior = 0.0;
    for (std::size_t k = 1; k < n; ++k) interior += samples[k];
    integral = h * (0.5 * (samples.front() + samples.back()) + interior);
  }

  TimeAverage out;
  out.value = integral / tau;
  out.steps = n;
  out.rule = rule;
  return out;
}

}  // namespace qsl
