// SPDX-License-Identifier: Apache-2.0
//
// Shared scalar/matrix aliases and the error hierarchy.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace hrr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Default tolerances used by the pencil solver, the B-singularity test and
// the normality test. Every report embeds the values it ran with.
struct Thresholds {
  double pencil_infinite = 1e-12;   // |beta| <= t * max(|alpha|,|beta|)
  double b_singular = 1e-14;        // sigma_min(B) <= t * sigma_max(B)
  double normality = 1e-12;         // ||A^H A - A A^H|| <= t * ||A||^2
};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RankDeficient : Error { using Error::Error; };
struct ConvergenceFailure : Error { using Error::Error; };
struct SingularShift : Error { using Error::Error; };
struct SingularPencil : Error { using Error::Error; };
struct ZeroVector : Error { using Error::Error; };
struct NoFinitePair : Error { using Error::Error; };
struct NotAnEigenpair : Error { using Error::Error; };
struct ShiftEqualsEigenvalue : Error { using Error::Error; };
struct DegenerateDenominator : Error { using Error::Error; };
struct EmptyGrid : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct UnsupportedField : Error { using Error::Error; };

struct ParseError : Error {
  ParseError(const std::string& msg, long line)
      : Error(msg + " (line " + std::to_string(line) + ")"), line(line) {}
  long line;
};

}  // namespace hrr
