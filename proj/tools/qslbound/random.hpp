#pragma once

#include <cstdint>
#include <qsl/matrix_core.hpp>
#include <random>

namespace qslcli {

// Deterministic random inputs for scans and verification sweeps.  All
// sampling is built from mt19937_64 raw draws so the byte stream depends only
// on (seed, label), never on the standard library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Engine for an independent, label-derived stream (instance isolation).
  static Rng stream(std::uint64_t seed, std::uint64_t label) {
    return Rng(splitmix(seed ^ (0x9e3779b97f4a7c15ull + label)));
  }

  double uniform() {  // [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // Box-Muller; u1 kept away from zero so the log stays finite.
    double u1 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    const double u2 = uniform();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    constexpr double two_pi = 6.283185307179586476925286766559;
    spare_ = mag * std::sin(two_pi * u2);
    have_spare_ = true;
    return mag * std::cos(two_pi * u2);
  }

  qsl::Complex complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return qsl::Complex(re, im);
  }

  // Wishart-type random density matrix G G^dagger / Tr with G of shape
  // d x (dof_factor * d); dof_factor 1 gives the broad-spectrum ensemble,
  // larger factors concentrate the spectrum away from zero.
  qsl::DensityMatrix density_matrix(Eigen::Index d, Eigen::Index dof_factor = 1) {
    qsl::Matrix g(d, dof_factor * d);
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      for (Eigen::Index j = 0; j < g.cols(); ++j) {
        g(i, j) = complex_gaussian();
      }
    }
    qsl::Matrix m = g * g.adjoint();
    m /= m.trace();
    m = 0.5 * (m + m.adjoint().eval());
    return qsl::DensityMatrix(m);
  }

  // GUE-type Hermitian matrix (A + A^dagger) / 2.
  qsl::Matrix hermitian(Eigen::Index d) {
    qsl::Matrix a(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        a(i, j) = complex_gaussian();
      }
    }
    return 0.5 * (a + a.adjoint().eval());
  }

  // Random unitary as exp(-i H) of a GUE draw.
  qsl::Matrix unitary(Eigen::Index d) {
    return qsl::exp_minus_ih_dt(hermitian(d), 1.0);
  }

 private:
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace qslcli
