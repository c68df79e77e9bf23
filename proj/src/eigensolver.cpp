#include "cgso/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cgso {

namespace {

// Householder reduction of the symmetric matrix stored in z to tridiagonal
// form; d receives the diagonal, e the subdiagonal (e[0] = 0), and z is
// overwritten with the accumulated orthogonal transform.
void tridiagonalize(DenseMatrix& z, std::vector<double>& d, std::vector<double>& e) {
    const int n = z.rows;
    for (int i = n - 1; i >= 1; --i) {
        const int l = i - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (int k = 0; k <= l; ++k) scale += std::abs(z(i, k));
            if (scale == 0.0) {
                e[i] = z(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    z(i, k) /= scale;
                    h += z(i, k) * z(i, k);
                }
                double f = z(i, l);
                double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                z(i, l) = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    z(j, i) = z(i, j) / h;
                    g = 0.0;
                    for (int k = 0; k <= j; ++k) g += z(j, k) * z(i, k);
                    for (int k = j + 1; k <= l; ++k) g += z(k, j) * z(i, k);
                    e[j] = g / h;
                    f += e[j] * z(i, j);
                }
                const double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = z(i, j);
                    e[j] = g = e[j] - hh * f;
                    for (int k = 0; k <= j; ++k) z(j, k) -= f * e[k] + g * z(i, k);
                }
            }
        } else {
            e[i] = z(i, l);
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for (int i = 0; i < n; ++i) {
        const int l = i;
        if (d[i] != 0.0) {
            for (int j = 0; j < l; ++j) {
                double g = 0.0;
                for (int k = 0; k < l; ++k) g += z(i, k) * z(k, j);
                for (int k = 0; k < l; ++k) z(k, j) -= g * z(k, i);
            }
        }
        d[i] = z(i, i);
        z(i, i) = 1.0;
        for (int j = 0; j < l; ++j) z(j, i) = z(i, j) = 0.0;
    }
}

// Implicit-shift QL on the tridiagonal (d, e); rotations are carried along
// in z so its columns end up as eigenvectors of the original matrix.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, DenseMatrix& z) {
    const int n = static_cast<int>(d.size());
    const double eps = std::numeric_limits<double>::epsilon();
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 50)
                    throw std::runtime_error("eig_symmetric: QL iteration did not converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    for (int k = 0; k < n; ++k) {
                        f = z(k, i + 1);
                        z(k, i + 1) = s * z(k, i) + c * f;
                        z(k, i) = c * z(k, i) - s * f;
                    }
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

} // namespace

SymmetricEigen eig_symmetric(const DenseMatrix& m, double sym_tol) {
    if (m.rows != m.cols) throw std::invalid_argument("eig_symmetric: matrix is not square");
    const int n = m.rows;
    if (n == 0) return {};

    double max_entry = 0.0, max_asym = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            max_entry = std::max(max_entry, std::abs(m(i, j)));
            if (j > i) max_asym = std::max(max_asym, std::abs(m(i, j) - m(j, i)));
        }
    if (max_asym > sym_tol * std::max(1.0, max_entry))
        throw std::invalid_argument("eig_symmetric: input asymmetric (max |m_ij - m_ji| = " +
                                    std::to_string(max_asym) + ")");

    SymmetricEigen out;
    out.eigenvectors = m;
    // Symmetrize exactly so tiny representable asymmetries cannot leak in.
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double v = 0.5 * (out.eigenvectors(i, j) + out.eigenvectors(j, i));
            out.eigenvectors(i, j) = out.eigenvectors(j, i) = v;
        }

    std::vector<double> d(n), e(n);
    tridiagonalize(out.eigenvectors, d, e);
    ql_implicit(d, e, out.eigenvectors);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });

    DenseMatrix sorted(n, n);
    out.eigenvalues.resize(n);
    for (int k = 0; k < n; ++k) {
        out.eigenvalues[k] = d[order[k]];
        double col_max = 0.0;
        for (int i = 0; i < n; ++i)
            col_max = std::max(col_max, std::abs(out.eigenvectors(i, order[k])));
        double sign = 1.0;
        for (int i = 0; i < n; ++i) {
            const double v = out.eigenvectors(i, order[k]);
            if (std::abs(v) > 1e-12 * col_max) {
                sign = (v < 0.0) ? -1.0 : 1.0;
                break;
            }
        }
        for (int i = 0; i < n; ++i) sorted(i, k) = sign * out.eigenvectors(i, order[k]);
    }
    out.eigenvectors = std::move(sorted);
    return out;
}

} // namespace cgso
