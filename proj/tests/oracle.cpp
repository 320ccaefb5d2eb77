#include "oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace oracle {

namespace {

// Gauss-Jordan inverse with partial pivoting.
std::vector<std::vector<double>> invert(std::vector<std::vector<double>> a) {
    const std::size_t n = a.size();
    std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (a[pivot][col] == 0.0) throw std::runtime_error("oracle: singular matrix");
        std::swap(a[col], a[pivot]);
        std::swap(inv[col], inv[pivot]);
        const double scale = a[col][col];
        for (std::size_t c = 0; c < n; ++c) {
            a[col][c] /= scale;
            inv[col][c] /= scale;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double factor = a[r][col];
            if (factor == 0.0) continue;
            for (std::size_t c = 0; c < n; ++c) {
                a[r][c] -= factor * a[col][c];
                inv[r][c] -= factor * inv[col][c];
            }
        }
    }
    return inv;
}

} // namespace

LeastSquares solve(const fsmodel::DesignMatrix& x, const std::vector<double>& y) {
    const std::size_t n = x.rows;
    const std::size_t cols = x.cols;
    if (y.size() != n) throw std::runtime_error("oracle: size mismatch");

    std::vector<std::vector<double>> xtx(cols, std::vector<double>(cols, 0.0));
    std::vector<double> xty(cols, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < cols; ++a) {
            xty[a] += x.at(i, a) * y[i];
            for (std::size_t b = 0; b < cols; ++b) xtx[a][b] += x.at(i, a) * x.at(i, b);
        }
    }
    const std::vector<std::vector<double>> inv = invert(std::move(xtx));

    LeastSquares out;
    out.beta.assign(cols, 0.0);
    for (std::size_t a = 0; a < cols; ++a)
        for (std::size_t b = 0; b < cols; ++b) out.beta[a] += inv[a][b] * xty[b];

    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double fitted = 0.0;
        for (std::size_t a = 0; a < cols; ++a) fitted += x.at(i, a) * out.beta[a];
        sse += (y[i] - fitted) * (y[i] - fitted);
    }
    const double sigma2 =
        n > cols ? sse / static_cast<double>(n - cols) : 0.0;
    out.std_errors.assign(cols, 0.0);
    for (std::size_t a = 0; a < cols; ++a) out.std_errors[a] = std::sqrt(sigma2 * inv[a][a]);
    return out;
}

} // namespace oracle
