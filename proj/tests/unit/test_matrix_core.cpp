#include <doctest.h>

#include <qsl/errors.hpp>
#include <qsl/matrix_core.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>

#include "helpers.hpp"

using namespace qsl;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("eigendecompose: round trip, orthonormality, ordering, cross-check") {
  qslcli::Rng rng = qslcli::Rng::stream(20240229, 1);
  for (int d = 2; d <= 8; ++d) {
    for (int rep = 0; rep < 4; ++rep) {
      const Matrix h = rng.hermitian(d);
      const EigenDecomposition eig = eigendecompose(h);

      CHECK(testutil::unitary_defect(eig.eigenvectors) < 1e-12 * d);
      CHECK((testutil::reconstruct(eig) - h).norm() <
            1e-10 * std::max(1.0, h.norm()));
      for (int i = 0; i + 1 < d; ++i) {
        CHECK(eig.eigenvalues(i) <= eig.eigenvalues(i + 1) + 1e-14);
      }

      // Independent oracle: Eigen's self-adjoint solver (different algorithm).
      Eigen::SelfAdjointEigenSolver<Matrix> ref(h);
      CHECK((eig.eigenvalues - ref.eigenvalues()).cwiseAbs().maxCoeff() <
            1e-10 * std::max(1.0, h.norm()));
    }
  }
}

TEST_CASE("eigendecompose handles degenerate spectra") {
  // Projector-like matrix with a double eigenvalue.
  Matrix h = Matrix::Zero(3, 3);
  h(0, 0) = 2.0;
  h(1, 1) = 2.0;
  h(2, 2) = -1.0;
  const Matrix u = exp_minus_ih_dt(
      (Matrix(3, 3) << 0.0, Complex(0.3, 0.4), 0.1, Complex(0.3, -0.4), 0.5,
       Complex(0.0, -0.2), 0.1, Complex(0.0, 0.2), -0.7)
          .finished(),
      1.0);
  const Matrix rotated = u * h * u.adjoint();
  const EigenDecomposition eig = eigendecompose(rotated);
  CHECK(eig.eigenvalues(0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(eig.eigenvalues(1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(eig.eigenvalues(2) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK((testutil::reconstruct(eig) - rotated).norm() < 1e-10);
}

TEST_CASE("Bloch-state constructor reproduces the exact spectrum") {
  const DensityMatrix rho = from_bloch(0.25, kPi / 4, kPi / 4);
  // Eigenvalues of (I + r n.sigma)/2 are (1 +- r)/2 = {0.375, 0.625}.
  CHECK(std::abs(rho.eigenvalues()(0) - 0.375) < 1e-14);
  CHECK(std::abs(rho.eigenvalues()(1) - 0.625) < 1e-14);
  CHECK(rho.full_rank());
  CHECK(rho.rank() == 2);
  CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-14);
}

TEST_CASE("matrix_power: composition, identity, edge cases") {
  qslcli::Rng rng = qslcli::Rng::stream(20240229, 2);
  for (int d : {2, 3, 4}) {
    const DensityMatrix rho = rng.density_matrix(d);
    const Matrix a = matrix_power(rho, 0.3);
    const Matrix b = matrix_power(rho, 0.45);
    const Matrix ab = matrix_power(rho, 0.75);
    CHECK((a * b - ab).norm() < 1e-9);
    CHECK((matrix_power(rho, 1.0) - rho.matrix()).norm() < 1e-12);
    CHECK((matrix_power(rho, 0.0) - Matrix::Identity(d, d)).norm() < 1e-12);
  }

  // Rank-deficient state: positive powers fine, nonpositive powers rejected.
  Matrix pure = Matrix::Zero(2, 2);
  pure(0, 0) = 1.0;
  const DensityMatrix rho_pure(pure);
  CHECK((matrix_power(rho_pure, 0.5) - pure).norm() < 1e-14);
  CHECK_THROWS_AS(matrix_power(rho_pure, -0.5), SingularPower);
  CHECK_THROWS_AS(matrix_power(rho_pure, 0.0), SingularPower);
}

TEST_CASE("matrix_log: frozen qubit norm and domain guard") {
  const DensityMatrix rho = from_bloch(0.25, kPi / 4, kPi / 4);
  const Matrix lg = matrix_log(rho);
  // ||ln rho||_2 for eigenvalues {0.375, 0.625}:
  // sqrt(ln(0.375)^2 + ln(0.625)^2), 50-digit reference value.
  CHECK(std::abs(schatten2(lg) - 1.0876255950775082) < 1e-12);
  // exp(log) round trip through the spectral representation.
  const EigenDecomposition eig = eigendecompose(lg);
  Matrix back = Matrix::Zero(2, 2);
  for (int i = 0; i < 2; ++i) {
    back += std::exp(eig.eigenvalues(i)) * eig.eigenvectors.col(i) *
            eig.eigenvectors.col(i).adjoint();
  }
  CHECK((back - rho.matrix()).norm() < 1e-12);

  Matrix pure = Matrix::Zero(2, 2);
  pure(1, 1) = 1.0;
  CHECK_THROWS_AS(matrix_log(DensityMatrix(pure)), RequiresFullRank);
}

TEST_CASE("schatten2 is unitarily invariant; commutator obeys sqrt(2) bound") {
  qslcli::Rng rng = qslcli::Rng::stream(20240229, 3);
  for (int d : {2, 4, 6}) {
    const Matrix x = rng.hermitian(d);
    const Matrix y = rng.hermitian(d);
    const Matrix u = rng.unitary(d);
    CHECK(std::abs(schatten2(u * x * u.adjoint()) - schatten2(x)) < 1e-12);
    CHECK(schatten2(commutator(x, y)) <=
          std::sqrt(2.0) * schatten2(x) * schatten2(y) + 1e-12);
  }
}

TEST_CASE("support_projector: exact identity at full rank, projector otherwise") {
  qslcli::Rng rng = qslcli::Rng::stream(20240229, 4);
  const DensityMatrix rho = rng.density_matrix(3);
  const SupportInfo full = support_projector(rho);
  CHECK(full.rank == 3);
  CHECK((full.projector - Matrix::Identity(3, 3)).norm() == 0.0);

  // Rank-2 state in d = 3.
  Matrix diag = Matrix::Zero(3, 3);
  diag(0, 0) = 0.7;
  diag(1, 1) = 0.3;
  const Matrix u = rng.unitary(3);
  const DensityMatrix rank2(u * diag * u.adjoint());
  const SupportInfo info = support_projector(rank2);
  CHECK(info.rank == 2);
  CHECK((info.projector * info.projector - info.projector).norm() < 1e-12);
  CHECK(std::abs(info.projector.trace().real() - 2.0) < 1e-12);
  CHECK((info.projector * rank2.matrix() * info.projector - rank2.matrix())
            .norm() < 1e-12);
}

TEST_CASE("exp_minus_ih_dt matches the closed qubit rotation") {
  const Vec3 n{0.6, 0.0, 0.8};
  const double t = 0.9;
  const Matrix u = exp_minus_ih_dt(dot_sigma(n), t);
  const Matrix expected =
      std::cos(t) * Matrix::Identity(2, 2) -
      Complex(0.0, 1.0) * std::sin(t) * dot_sigma(n);
  CHECK((u - expected).norm() < 1e-12);
  CHECK(testutil::unitary_defect(u) < 1e-13);
}

TEST_CASE("DensityMatrix validation") {
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = Complex(0.2, 0.0);  // not Hermitian (no conjugate partner)
  bad(0, 0) = 0.5;
  bad(1, 1) = 0.5;
  CHECK_THROWS_AS(DensityMatrix{bad}, NotHermitian);

  Matrix off_trace = Matrix::Identity(2, 2) * 0.55;
  CHECK_THROWS_AS(DensityMatrix{off_trace}, TraceError);

  Matrix negative = Matrix::Zero(2, 2);
  negative(0, 0) = 1.001;
  negative(1, 1) = -0.001;
  CHECK_THROWS_AS(DensityMatrix{negative}, NotPositive);

  // Tiny negative eigenvalues inside the floor are clipped to zero.
  Matrix clipped = Matrix::Zero(2, 2);
  clipped(0, 0) = 1.0 + 5e-11;
  clipped(1, 1) = -5e-11;
  const DensityMatrix rho(clipped);
  CHECK(rho.eigenvalues()(0) == 0.0);
  CHECK(!rho.full_rank());
}

TEST_CASE("HamiltonianSpec: validation and sampling") {
  // Landau-Zener with zero velocity is rejected.
  QubitDrive bad_drive;
  bad_drive.axis = LZAxis{0.5, 0.0};
  CHECK_THROWS_AS(HamiltonianSpec{bad_drive}, DomainError);

  // Fixed axis must be unit length.
  QubitDrive bad_axis;
  bad_axis.axis = FixedAxis{Vec3{0.0, 0.0, 2.0}};
  CHECK_THROWS_AS(HamiltonianSpec{bad_axis}, DomainError);

  // Landau-Zener axis: at t = 0 the axis is the gap direction x-hat.
  QubitDrive lz;
  lz.axis = LZAxis{0.5, 1.0};
  const Vec3 n0 = lz.axis_at(0.0);
  CHECK(std::abs(n0[0] - 1.0) < 1e-14);
  CHECK(std::abs(n0[1]) < 1e-14);
  CHECK(std::abs(n0[2]) < 1e-14);
  // Degenerate gap: axis falls back to sign(v) z-hat at t = 0.
  QubitDrive gapless;
  gapless.axis = LZAxis{0.0, 1.0};
  const Vec3 nz = gapless.axis_at(0.0);
  CHECK(nz[2] == 1.0);

  const HamiltonianSpec spec(lz);
  CHECK(spec.dim() == 2);
  CHECK(!spec.time_independent());
  const Matrix h1 = spec.sample(1.0);
  const Vec3 n1 = lz.axis_at(1.0);
  CHECK((h1 - dot_sigma(n1)).norm() < 1e-13);

  // Tabulated Hamiltonians interpolate linearly and hold endpoints.
  TabulatedHamiltonian tab;
  tab.times = {0.0, 1.0};
  tab.values = {Matrix::Zero(2, 2), (Matrix(2, 2) << 2.0, 0.0, 0.0, -2.0)
                                        .finished()};
  const HamiltonianSpec tspec(tab);
  CHECK((tspec.sample(0.5) -
         (Matrix(2, 2) << 1.0, 0.0, 0.0, -1.0).finished())
            .norm() < 1e-13);
  CHECK((tspec.sample(5.0) - tab.values[1]).norm() == 0.0);

  TabulatedHamiltonian bad_tab;
  bad_tab.times = {0.0, 0.0};
  bad_tab.values = {Matrix::Zero(2, 2), Matrix::Zero(2, 2)};
  CHECK_THROWS_AS(HamiltonianSpec{bad_tab}, ConfigError);
}
