#include "cgso/dense.hpp"

#include <cmath>

namespace cgso {

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matmul: shape mismatch");
    DenseMatrix out(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i) {
        auto dst = out.row(i);
        for (int k = 0; k < a.cols; ++k) {
            const double f = a(i, k);
            if (f == 0.0) continue;
            auto src = b.row(k);
            for (int j = 0; j < b.cols; ++j) dst[j] += f * src[j];
        }
    }
    return out;
}

DenseMatrix matmul_at_b(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows != b.rows) throw std::invalid_argument("matmul_at_b: shape mismatch");
    DenseMatrix out(a.cols, b.cols);
    for (int k = 0; k < a.rows; ++k) {
        auto rb = b.row(k);
        for (int i = 0; i < a.cols; ++i) {
            const double f = a(k, i);
            if (f == 0.0) continue;
            auto dst = out.row(i);
            for (int j = 0; j < b.cols; ++j) dst[j] += f * rb[j];
        }
    }
    return out;
}

DenseMatrix matmul_a_bt(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols != b.cols) throw std::invalid_argument("matmul_a_bt: shape mismatch");
    DenseMatrix out(a.rows, b.rows);
    for (int i = 0; i < a.rows; ++i) {
        auto ra = a.row(i);
        for (int j = 0; j < b.rows; ++j) {
            auto rb = b.row(j);
            double acc = 0.0;
            for (int k = 0; k < a.cols; ++k) acc += ra[k] * rb[k];
            out(i, j) = acc;
        }
    }
    return out;
}

double dot(const DenseMatrix& a, const DenseMatrix& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) s += a.data[i] * b.data[i];
    return s;
}

double max_abs(const DenseMatrix& a) {
    double m = 0.0;
    for (double v : a.data) m = std::max(m, std::abs(v));
    return m;
}

double inf_norm(const DenseMatrix& a) {
    double m = 0.0;
    for (int i = 0; i < a.rows; ++i) {
        double s = 0.0;
        for (int j = 0; j < a.cols; ++j) s += std::abs(a(i, j));
        m = std::max(m, s);
    }
    return m;
}

} // namespace cgso
