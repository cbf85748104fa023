#pragma once

#include <qsl/matrix_core.hpp>
#include <qsl/qubit_oracle.hpp>
#include <qslbound/random.hpp>

#include <cmath>

namespace testutil {

// Orthonormality / reconstruction defect of an eigendecomposition.
inline double unitary_defect(const qsl::Matrix& v) {
  const auto d = v.cols();
  return (v.adjoint() * v - qsl::Matrix::Identity(d, d)).norm();
}

inline qsl::Matrix reconstruct(const qsl::EigenDecomposition& eig) {
  return eig.eigenvectors * eig.eigenvalues.asDiagonal() *
         eig.eigenvectors.adjoint();
}

// Fig.-style reference scenario used throughout the tests: a mixed qubit
// with Bloch radius 1/4 pointing along (theta, phi) = (pi/4, pi/4), driven
// by a Landau-Zener sweep with gap/velocity ratio `ratio` (velocity 1).
inline qsl::QubitScenario lz_scenario(double r, double theta, double phi,
                                      double ratio) {
  qsl::QubitScenario sc;
  sc.r = r;
  sc.theta = theta;
  sc.phi = phi;
  sc.drive.varpi = 0.0;
  sc.drive.axis = qsl::LZAxis{ratio, 1.0};
  return sc;
}

}  // namespace testutil
