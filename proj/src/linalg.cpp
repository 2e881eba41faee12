#include "qas/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace qas {

double SymMatrix::max_asymmetry() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            worst = std::max(worst, std::abs(at(i, j) - at(j, i)));
    return worst;
}

double SymMatrix::inf_norm() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += std::abs(at(i, j));
        worst = std::max(worst, row);
    }
    return worst;
}

namespace {

// Householder reduction of a symmetric matrix to tridiagonal form, with
// accumulation of the orthogonal transform. On exit z holds Q (columns are
// the transform), d the diagonal and e the subdiagonal (e[0] unused).
void tridiagonalize(std::vector<double>& z, std::size_t n, std::vector<double>& d,
                    std::vector<double>& e) {
    auto Z = [&](std::size_t i, std::size_t j) -> double& { return z[i * n + j]; };
    for (std::size_t i = n - 1; i >= 1; --i) {
        std::size_t l = i - 1;
        double h = 0.0;
        if (l > 0) {
            double scale = 0.0;
            for (std::size_t k = 0; k <= l; ++k) scale += std::abs(Z(i, k));
            if (scale == 0.0) {
                e[i] = Z(i, l);
            } else {
                for (std::size_t k = 0; k <= l; ++k) {
                    Z(i, k) /= scale;
                    h += Z(i, k) * Z(i, k);
                }
                double f = Z(i, l);
                double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                Z(i, l) = f - g;
                f = 0.0;
                for (std::size_t j = 0; j <= l; ++j) {
                    Z(j, i) = Z(i, j) / h;
                    g = 0.0;
                    for (std::size_t k = 0; k <= j; ++k) g += Z(j, k) * Z(i, k);
                    for (std::size_t k = j + 1; k <= l; ++k) g += Z(k, j) * Z(i, k);
                    e[j] = g / h;
                    f += e[j] * Z(i, j);
                }
                double hh = f / (h + h);
                for (std::size_t j = 0; j <= l; ++j) {
                    f = Z(i, j);
                    e[j] = g = e[j] - hh * f;
                    for (std::size_t k = 0; k <= j; ++k) Z(j, k) -= f * e[k] + g * Z(i, k);
                }
            }
        } else {
            e[i] = Z(i, l);
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (d[i] != 0.0) {
            for (std::size_t j = 0; j < i; ++j) {
                double g = 0.0;
                for (std::size_t k = 0; k < i; ++k) g += Z(i, k) * Z(k, j);
                for (std::size_t k = 0; k < i; ++k) Z(k, j) -= g * Z(k, i);
            }
        }
        d[i] = Z(i, i);
        Z(i, i) = 1.0;
        for (std::size_t j = 0; j < i; ++j) Z(j, i) = Z(i, j) = 0.0;
    }
}

// Implicit-shift QL on a tridiagonal matrix, rotations applied to the
// columns of z so they become the eigenvectors of the original matrix.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z,
                 std::size_t n) {
    auto Z = [&](std::size_t i, std::size_t j) -> double& { return z[i * n + j]; };
    const double eps = std::numeric_limits<double>::epsilon();
    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 64) throw std::runtime_error("symmetric_eigen: QL did not converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (std::size_t ii = m; ii-- > l;) {
                    double f = s * e[ii];
                    double b = c * e[ii];
                    r = std::hypot(f, g);
                    e[ii + 1] = r;
                    if (r == 0.0) {
                        d[ii + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[ii + 1] - p;
                    r = (d[ii] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[ii + 1] = g + p;
                    g = c * r - b;
                    for (std::size_t k = 0; k < n; ++k) {
                        f = Z(k, ii + 1);
                        Z(k, ii + 1) = s * Z(k, ii) + c * f;
                        Z(k, ii) = c * Z(k, ii) - s * f;
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace

SymmetricEigen symmetric_eigen(const SymMatrix& m) {
    const std::size_t n = m.n;
    if (n == 0) throw std::invalid_argument("symmetric_eigen: empty matrix");
    SymmetricEigen out;
    if (n == 1) {
        out.eigenvalues = {m.at(0, 0)};
        out.eigenvectors = {{1.0}};
        return out;
    }
    std::vector<double> z = m.a;
    std::vector<double> d(n, 0.0), e(n, 0.0);
    tridiagonalize(z, n, d, e);
    ql_implicit(d, e, z, n);

    // Sort ascending; ties keep original column order for determinism.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&d](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    out.eigenvalues.resize(n);
    out.eigenvectors.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = d[order[k]];
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors[k][i] = z[i * n + order[k]];
    }
    return out;
}

double eigen_residual_inf(const SymMatrix& m, const std::vector<double>& v, double lambda) {
    double worst = 0.0;
    for (std::size_t i = 0; i < m.n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < m.n; ++j) acc += m.at(i, j) * v[j];
        worst = std::max(worst, std::abs(acc - lambda * v[i]));
    }
    return worst;
}

}  // namespace qas
