#pragma once

#include <stdexcept>
#include <string>

namespace simproj {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// lu_factor input is not square
struct NonSquare : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

// a pivot fell below the relative threshold during factorization
struct SingularMatrix : Error {
  using Error::Error;
};

// the generator matrix of a simplicial cone is singular
struct SingularGenerator : Error {
  using Error::Error;
};

// an iteration matrix that is nonsingular in exact arithmetic could not be
// factored in floating point
struct NumericalSingularity : Error {
  using Error::Error;
};

struct NormTooLarge : Error {
  using Error::Error;
};

struct DimensionTooLarge : Error {
  using Error::Error;
};

// no sign pattern was consistent during exhaustive enumeration
struct NoConsistentPattern : Error {
  using Error::Error;
};

struct CertificateRejected : Error {
  CertificateRejected(std::string check_name, double violation_value, double tol)
      : Error("moreau certificate rejected: " + check_name + " violation " +
              std::to_string(violation_value) + " exceeds tol " + std::to_string(tol)),
        check(std::move(check_name)),
        violation(violation_value),
        tolerance(tol) {}

  std::string check;
  double violation;
  double tolerance;
};

struct NotSolved : Error {
  using Error::Error;
};

struct BadParam : Error {
  using Error::Error;
};

struct InvalidInstance : Error {
  using Error::Error;
};

}  // namespace simproj
