#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace cgso {

// Row-major dense matrix of doubles. The spectral reference path and the
// neural-network stack both run on this; sparsity lives exclusively in the
// operator apply.
struct DenseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    DenseMatrix() = default;
    DenseMatrix(int r, int c, double fill = 0.0)
        : rows(r), cols(c), data(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), fill) {
        if (r < 0 || c < 0) throw std::invalid_argument("DenseMatrix: negative dimension");
    }

    double& operator()(int i, int j) {
        return data[static_cast<std::size_t>(i) * cols + j];
    }
    double operator()(int i, int j) const {
        return data[static_cast<std::size_t>(i) * cols + j];
    }
    std::span<double> row(int i) {
        return {data.data() + static_cast<std::size_t>(i) * cols, static_cast<std::size_t>(cols)};
    }
    std::span<const double> row(int i) const {
        return {data.data() + static_cast<std::size_t>(i) * cols, static_cast<std::size_t>(cols)};
    }

    static DenseMatrix identity(int n) {
        DenseMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
};

// out = a * b
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
// out = a^T * b
DenseMatrix matmul_at_b(const DenseMatrix& a, const DenseMatrix& b);
// out = a * b^T
DenseMatrix matmul_a_bt(const DenseMatrix& a, const DenseMatrix& b);
// Frobenius inner product sum_ij a_ij b_ij
double dot(const DenseMatrix& a, const DenseMatrix& b);
double max_abs(const DenseMatrix& a);
// max_i sum_j |a_ij|
double inf_norm(const DenseMatrix& a);

} // namespace cgso
