// Copyright 2026 The risbf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RISBF_TYPES_HPP_
#define RISBF_TYPES_HPP_

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace risbf {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSpeedOfLight = 2.99792458e8;

/// Raised when an input lies outside the domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when an optimization subproblem has no admissible point.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& what, double witness)
      : std::runtime_error(what), witness_(witness) {}
  /// Diagnostic scalar attached by the thrower (e.g. the supremum that
  /// failed to reach the required level).
  double witness() const { return witness_; }

 private:
  double witness_;
};

/// Raised when an iterative solver stops without meeting its tolerance.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// dBm to watts.
inline double DbmToWatts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }
/// dB to linear power ratio.
inline double DbToLinear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace risbf

#endif  // RISBF_TYPES_HPP_
