// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace lucj {

using Complex = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

/// Occupation bitmask over spatial orbitals; bit p set means orbital p occupied.
using Bitmask = std::uint64_t;

/// Largest orbital count supported by the bitmask representation.
inline constexpr int kMaxOrbitals = 32;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text or files, bad shapes, invalid configuration.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Violated numerical preconditions (non-finite values, broken symmetry).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// An iterative method failed to converge and no usable result exists.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

} // namespace lucj
