// Copyright 2026 The qmpa authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QMPA_TYPES_HPP_
#define QMPA_TYPES_HPP_

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qmpa {

using Complex = std::complex<double>;
// Dense complex N x N matrix acting on an N-dimensional Hilbert space.
using Operator = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

// ---------------------------------------------------------------------------
// Error taxonomy
// ---------------------------------------------------------------------------

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands with incompatible dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Malformed input document (JSON model/state files, CLI payloads).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Structurally well-formed input violating a mathematical precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A matrix required to be hermitian is not.
class NotHermitian : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A matrix required to be positive semidefinite is not.
class NotPositive : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A matrix required to be strictly positive has (numerically) a kernel.
class NotStrictlyPositive : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Dense eigensolver or SVD failed to converge.
class EigensolverFailure : public Error {
 public:
  using Error::Error;
};

// The peripheral part of the evolution operator has an eigenvalue whose
// geometric multiplicity is below its algebraic multiplicity, so there is no
// basis of peripheral eigenoperators and the asymptotic expansion is
// unavailable.
class DefectivePeripheralPart : public Error {
 public:
  using Error::Error;
};

// No faithful (strictly positive) sub-invariant state exists for the model;
// carries the rank of the maximal invariant state found.
class NoFaithfulTState : public Error {
 public:
  NoFaithfulTState(const std::string& what, int rank, int dim)
      : Error(what), rank(rank), dim(dim) {}
  int rank;  // rank of the maximal-support invariant candidate
  int dim;   // Hilbert-space dimension
};

// A candidate sigma fails sub-invariance: sigma - T(sigma) (or -L(sigma)) has
// an eigenvalue below -tolerance. Carries the witness eigenvalue.
class DefectNegative : public ValidationError {
 public:
  DefectNegative(const std::string& what, double witness)
      : ValidationError(what), witness(witness) {}
  double witness;
};

// The Gram matrix of a basis is numerically singular (degenerate basis).
class SingularGram : public Error {
 public:
  using Error::Error;
};

// A state expected to lie in the asymptotic (attractor) span does not.
class NotAsymptoticState : public Error {
 public:
  NotAsymptoticState(const std::string& what, double residual)
      : Error(what), residual(residual) {}
  double residual;
};

// A state cannot be expanded as exp(log sigma + sum_i gamma_i Z_i) within
// tolerance for the supplied basis.
class NotForm2Representable : public Error {
 public:
  NotForm2Representable(const std::string& what, double residual)
      : Error(what), residual(residual) {}
  double residual;
};

// Two subspaces expected to coincide differ by more than the tolerance.
class MismatchBeyondTolerance : public Error {
 public:
  MismatchBeyondTolerance(const std::string& what, Complex value,
                          double distance)
      : Error(what), value(value), distance(distance) {}
  Complex value;    // offending eigenvalue
  double distance;  // projector distance
};

// ---------------------------------------------------------------------------
// Tolerances
// ---------------------------------------------------------------------------

// Numerical tolerances used across the library. Every check reports the
// tolerance it was evaluated against. Model files may override individual
// entries via a "tolerances" object.
struct Tolerances {
  // Hermiticity: ||A - A^dag||_F <= hermiticity * max(1, ||A||_F).
  double hermiticity = 1e-10;
  // Strict positivity of a state A: min eig > strict_positivity * (tr A / N).
  double strict_positivity = 1e-10;
  // Positive semidefiniteness: min eig >= -psd_defect * max(1, ||A||_F).
  double psd_defect = 1e-10;
  // Peripheral eigenvalue selection. Discrete: | |lambda| - 1 | <= peripheral.
  // Continuous: |Re lambda| <= peripheral * ||L||_F.
  double peripheral = 1e-9;
  // Eigenvalues within `cluster` of each other are merged into one cluster.
  double cluster = 1e-8;
  // SVD kernel membership: singular value <= kernel * sigma_max.
  double kernel = 1e-8;
  // Eigen-equation residual: ||G(X) - lambda X||_F <= eigen_residual *
  // ||G||_F * ||X||_F.
  double eigen_residual = 1e-8;
  // Generic invariant-check tolerance (biorthogonality, span membership,
  // closure residuals, ...).
  double check = 1e-8;
  // Sub-invariance defect: min eig of (sigma - T(sigma)) >= -defect.
  double defect = 1e-10;
  // Dual-basis orthogonalization pivot: relative k-norm^2 of a basis element
  // after orthogonalization must stay above this.
  double gram_pivot = 1e-10;
};

}  // namespace qmpa

#endif  // QMPA_TYPES_HPP_
