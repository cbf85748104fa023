#include <doctest.h>

#include <qsl/entropy.hpp>
#include <qsl/errors.hpp>
#include <qsl/evolution.hpp>

#include <cmath>
#include <limits>

#include "helpers.hpp"

using namespace qsl;

namespace {
constexpr double kPi = 3.14159265358979323846;

// Reference scenario with closed-form ground truth: Bloch radius 1/4 along
// z-hat, rotated by angle pi/2 about the orthogonal axis x-hat.  The rotation
// moves the Bloch vector to -z, so the purity overlap is extremal.
struct Frozen {
  DensityMatrix rho;
  DensityMatrix sigma;
  Frozen()
      : rho(from_bloch(0.25, 0.0, 0.0)),
        sigma(evolve_state(rho, exp_minus_ih_dt(dot_sigma(Vec3(1, 0, 0)),
                                                kPi / 2))) {}
};
}  // namespace

TEST_CASE("relative purity: identity, frozen reference, skew symmetry") {
  qslcli::Rng rng = qslcli::Rng::stream(20240301, 1);

  for (int d : {2, 3, 4}) {
    const DensityMatrix rho = rng.density_matrix(d);
    CHECK(std::abs(relative_purity(rho, rho, 0.37) - 1.0) < 1e-12);

    const DensityMatrix omega = rng.density_matrix(d);
    for (double alpha : {0.1, 0.33, 0.5, 0.71, 0.9}) {
      // g_a(rho, omega) = g_{1-a}(omega, rho).
      CHECK(std::abs(relative_purity(rho, omega, alpha) -
                     relative_purity(omega, rho, 1.0 - alpha)) < 1e-12);
    }
  }

  const Frozen f;
  // 50-digit reference values for r = 1/4, alpha = 1/2, rotation angle pi/2.
  CHECK(std::abs(relative_purity(f.rho, f.sigma, 0.5) -
                 0.96824583655185422) < 1e-13);
  CHECK(std::abs(renyi_relative_entropy(f.rho, f.sigma, 0.5) -
                 0.064538521137571172) < 1e-13);
  CHECK(std::abs(tsallis_relative_entropy(f.rho, f.sigma, 0.5) -
                 0.063508326896291557) < 1e-13);
  // S(rho_t || rho_0) = r ln((1+r)/(1-r)) for a pi/2 rotation about an
  // orthogonal axis reduces to (1/4) ln(5/3).
  CHECK(std::abs(quantum_relative_entropy(f.sigma, f.rho) -
                 0.12770640594149767) < 1e-12);
}

TEST_CASE("divergences are nonnegative and vanish on identical states") {
  qslcli::Rng rng = qslcli::Rng::stream(20240301, 2);
  for (int rep = 0; rep < 8; ++rep) {
    const int d = 2 + (rep % 3);
    const DensityMatrix rho = rng.density_matrix(d);
    const DensityMatrix omega = evolve_state(rho, rng.unitary(d));
    for (double alpha : {0.2, 0.5, 0.8}) {
      CHECK(renyi_relative_entropy(rho, omega, alpha) >= -1e-12);
      CHECK(tsallis_relative_entropy(rho, omega, alpha) >= -1e-12);
      CHECK(symmetrized_divergence(EntropyKind::Renyi, rho, omega, alpha) >=
            -1e-12);
    }
    CHECK(quantum_relative_entropy(rho, omega) >= -1e-12);
    CHECK(std::abs(quantum_relative_entropy(rho, rho)) < 1e-12);
    CHECK(std::abs(renyi_relative_entropy(rho, rho, 0.5)) < 1e-12);
  }
}

TEST_CASE("Tsallis self-duality ties the two orderings together") {
  // (1 - a) H_a(rho||omega) = a H_{1-a}(omega||rho), an exact consequence of
  // skew symmetry of the purity.
  qslcli::Rng rng = qslcli::Rng::stream(20240301, 3);
  const DensityMatrix rho = rng.density_matrix(3);
  const DensityMatrix omega = rng.density_matrix(3);
  for (double alpha : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    const double lhs =
        (1.0 - alpha) * tsallis_relative_entropy(rho, omega, alpha);
    const double rhs =
        alpha * tsallis_relative_entropy(omega, rho, 1.0 - alpha);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("symmetrized divergence is the sum of both orderings") {
  qslcli::Rng rng = qslcli::Rng::stream(20240301, 4);
  const DensityMatrix rho = rng.density_matrix(2);
  const DensityMatrix omega = rng.density_matrix(2);
  const double alpha = 0.3;
  CHECK(std::abs(symmetrized_divergence(EntropyKind::Tsallis, rho, omega,
                                        alpha) -
                 tsallis_relative_entropy(rho, omega, alpha) -
                 tsallis_relative_entropy(omega, rho, alpha)) < 1e-14);
  CHECK(std::abs(symmetrized_divergence(EntropyKind::Renyi, rho, omega,
                                        alpha) -
                 renyi_relative_entropy(rho, omega, alpha) -
                 renyi_relative_entropy(omega, rho, alpha)) < 1e-14);
}

TEST_CASE("relative entropy support handling") {
  Matrix zero_state = Matrix::Zero(2, 2);
  zero_state(0, 0) = 1.0;
  const DensityMatrix ket0(zero_state);

  Matrix one_state = Matrix::Zero(2, 2);
  one_state(1, 1) = 1.0;
  const DensityMatrix ket1(one_state);

  Matrix plus = Matrix::Constant(2, 2, Complex(0.5, 0.0));
  const DensityMatrix ketplus(plus);

  CHECK(std::isinf(quantum_relative_entropy(ketplus, ket0)));
  CHECK(std::isinf(min_relative_entropy(ket0, ket1)));
  CHECK_THROWS_AS(renyi_relative_entropy(ket0, ket1, 0.5), NonPositivePurity);

  // Pure state against itself: everything is exactly zero.
  CHECK(quantum_relative_entropy(ket0, ket0) == 0.0);
  CHECK(min_relative_entropy(ket0, ket0) == 0.0);
}

TEST_CASE("min-relative entropy: exact zero at full rank, projector overlap otherwise") {
  qslcli::Rng rng = qslcli::Rng::stream(20240301, 5);
  for (int d : {2, 3, 4}) {
    const DensityMatrix rho = rng.density_matrix(d);
    const DensityMatrix omega = evolve_state(rho, rng.unitary(d));
    // Full-rank rho: support projector is the identity, R0 = -ln Tr omega = 0
    // exactly, by contract.
    CHECK(min_relative_entropy(rho, omega) == 0.0);
  }

  // Pure qubit versus its rotated image: R0 = -ln <psi| omega |psi>.
  const DensityMatrix psi = from_bloch(1.0, kPi / 4, kPi / 4);
  const Matrix u = exp_minus_ih_dt(dot_sigma(Vec3(0, 0, 1)), 0.7);
  const DensityMatrix omega = evolve_state(psi, u);
  const double direct =
      -std::log((psi.matrix() * omega.matrix()).trace().real());
  CHECK(std::abs(min_relative_entropy(psi, omega) - direct) < 1e-12);
}

TEST_CASE("overlap matrix is doubly stochastic") {
  qslcli::Rng rng = qslcli::Rng::stream(20240301, 6);
  const Matrix v = rng.unitary(4);
  const Matrix w = rng.unitary(4);
  const Eigen::MatrixXd a = detail::overlap_squares(v, w);
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(a.row(i).sum() - 1.0) < 1e-12);
    CHECK(std::abs(a.col(i).sum() - 1.0) < 1e-12);
  }
}
