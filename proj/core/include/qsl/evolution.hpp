#pragma once

#include <vector>

#include "qsl/matrix_core.hpp"

namespace qsl {

// Uniform-grid family of propagators U_k ~ U(t_k) together with the sampled
// Hamiltonians H(t_k).  U_0 is the exact identity; steps = times.size() - 1.
struct PropagatorTrajectory {
  std::vector<double> times;
  std::vector<Matrix> unitaries;
  std::vector<Matrix> hamiltonians;

  std::size_t steps() const { return times.empty() ? 0 : times.size() - 1; }
  double horizon() const { return times.empty() ? 0.0 : times.back(); }
  double dt() const {
    return times.size() < 2 ? 0.0 : times[1] - times[0];
  }
};

// Second-order midpoint exponential-product integrator:
//   U_{k+1} = exp(-i H(t_k + dt/2) dt) U_k,  U_0 = I,
// on the uniform grid t_k = k tau / steps.  `reorthonormalize_every > 0`
// re-orthonormalizes the accumulated propagator every that many steps
// (modified Gram-Schmidt); the default leaves the product untouched.
// Requires tau > 0 (ZeroHorizon) and steps >= 2 (DomainError).
PropagatorTrajectory propagate(const HamiltonianSpec& spec, double tau,
                               std::size_t steps,
                               std::size_t reorthonormalize_every = 0);

// U rho U^dagger, revalidated and rediagonalized as a DensityMatrix.
DensityMatrix evolve_state(const DensityMatrix& rho, const Matrix& u);

// Quadrature rules for time averages over [0, tau].
enum class QuadratureRule { Simpson, Trapezoid };

const char* to_string(QuadratureRule rule);

struct TimeAverage {
  double value = 0.0;           // (1/tau) integral of the sampled function
  std::size_t steps = 0;        // samples.size() - 1
  QuadratureRule rule = QuadratureRule::Simpson;
};

// Averages uniformly spaced samples f(t_k), t_k = k tau / (samples-1), over
// [0, tau].  Composite Simpson requires an even number of intervals
// (QuadratureError otherwise); both rules need >= 3 samples.  tau <= 0
// throws ZeroHorizon.
TimeAverage time_average(const std::vector<double>& samples, double tau,
                         QuadratureRule rule = QuadratureRule::Simpson);

}  // namespace qsl
