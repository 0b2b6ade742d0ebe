// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "lucj/common.hpp"

namespace lucj {

/// Dense row-major rank-4 tensor of doubles.
class Tensor4 {
public:
    Tensor4() = default;
    Tensor4(std::size_t d0, std::size_t d1, std::size_t d2, std::size_t d3)
        : dims_{d0, d1, d2, d3}, data_(d0 * d1 * d2 * d3, 0.0)
    {
    }

    double &operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l)
    {
        return data_[offset(i, j, k, l)];
    }
    double operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const
    {
        return data_[offset(i, j, k, l)];
    }

    std::size_t dim(std::size_t axis) const { return dims_[axis]; }
    const std::array<std::size_t, 4> &dims() const { return dims_; }
    std::size_t size() const { return data_.size(); }

    std::span<double> data() { return data_; }
    std::span<const double> data() const { return data_; }

    double frobenius_norm() const;

    bool operator==(const Tensor4 &other) const = default;

private:
    std::size_t offset(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const
    {
        return ((i * dims_[1] + j) * dims_[2] + k) * dims_[3] + l;
    }

    std::array<std::size_t, 4> dims_{0, 0, 0, 0};
    std::vector<double> data_;
};

/// Frobenius norm of a - b; shapes must agree.
double frobenius_distance(const Tensor4 &a, const Tensor4 &b);

/// Reshape an (nocc, nocc, nvir, nvir) amplitude tensor to the pair matrix
/// M[(i*nvir + a), (j*nvir + b)] = t(i, j, a, b).
MatrixXd pair_matrix(const Tensor4 &t2);

/// Inverse of pair_matrix.
Tensor4 from_pair_matrix(const MatrixXd &m, std::size_t nocc, std::size_t nvir);

} // namespace lucj
