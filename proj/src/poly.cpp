#include "heun/poly.hpp"

#include <Eigen/Eigenvalues>

namespace heun {

Rational resultant_q(const PolyQ& a, const PolyQ& b) {
    if (a.zero() || b.zero()) return Rational(0);
    int m = a.deg(), n = b.deg();
    if (m == 0) return rat_pow(a.c[0], static_cast<unsigned long>(n));
    if (n == 0) return rat_pow(b.c[0], static_cast<unsigned long>(m));
    int N = m + n;
    std::vector<std::vector<Rational>> M(static_cast<size_t>(N),
                                         std::vector<Rational>(static_cast<size_t>(N), Rational(0)));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) M[static_cast<size_t>(r)][static_cast<size_t>(r + i)] = a.c[static_cast<size_t>(m - i)];
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) M[static_cast<size_t>(n + r)][static_cast<size_t>(r + i)] = b.c[static_cast<size_t>(n - i)];
    // Gaussian elimination
    Rational det(1);
    for (int col = 0; col < N; ++col) {
        int piv = -1;
        for (int r = col; r < N; ++r)
            if (!is_zero(M[static_cast<size_t>(r)][static_cast<size_t>(col)])) {
                piv = r;
                break;
            }
        if (piv < 0) return Rational(0);
        if (piv != col) {
            std::swap(M[static_cast<size_t>(piv)], M[static_cast<size_t>(col)]);
            det = -det;
        }
        Rational p = M[static_cast<size_t>(col)][static_cast<size_t>(col)];
        det *= p;
        for (int r = col + 1; r < N; ++r) {
            Rational f = M[static_cast<size_t>(r)][static_cast<size_t>(col)] / p;
            if (is_zero(f)) continue;
            for (int c2 = col; c2 < N; ++c2)
                M[static_cast<size_t>(r)][static_cast<size_t>(c2)] -= f * M[static_cast<size_t>(col)][static_cast<size_t>(c2)];
        }
    }
    return det;
}

// Bareiss determinant over Q[E]; entries must form a square matrix.
static PolyQ det_bareiss_polyq(std::vector<std::vector<PolyQ>> M) {
    size_t n = M.size();
    if (n == 0) return polyq({1});
    PolyQ prev = polyq({1});
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (M[k][k].zero()) {
            size_t piv = k;
            for (size_t r = k + 1; r < n; ++r)
                if (!M[r][k].zero()) {
                    piv = r;
                    break;
                }
            if (M[piv][k].zero()) return PolyQ();
            std::swap(M[k], M[piv]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                PolyQ t = M[i][j] * M[k][k] - M[i][k] * M[k][j];
                M[i][j] = divexact(t, prev);
            }
            M[i][k] = PolyQ();
        }
        prev = M[k][k];
    }
    PolyQ d = M[n - 1][n - 1];
    return sign < 0 ? Rational(-1) * d : d;
}

PolyQ resultant_bivar_direct(const BivarQ& a, const BivarQ& b) {
    if (a.zero() || b.zero()) return PolyQ();
    int m = a.deg(), n = b.deg();
    if (m == 0 && n == 0) return polyq({1});
    if (m == 0) {
        PolyQ r = polyq({1});
        for (int i = 0; i < n; ++i) r = r * a.c[0];
        return r;
    }
    if (n == 0) {
        PolyQ r = polyq({1});
        for (int i = 0; i < m; ++i) r = r * b.c[0];
        return r;
    }
    int N = m + n;
    std::vector<std::vector<PolyQ>> M(static_cast<size_t>(N), std::vector<PolyQ>(static_cast<size_t>(N)));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) M[static_cast<size_t>(r)][static_cast<size_t>(r + i)] = a.c[static_cast<size_t>(m - i)];
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) M[static_cast<size_t>(n + r)][static_cast<size_t>(r + i)] = b.c[static_cast<size_t>(n - i)];
    return det_bareiss_polyq(std::move(M));
}

std::vector<Complex> roots_numeric(const PolyC& p) {
    PolyC q = p;
    q.trim();
    int n = q.deg();
    if (n <= 0) return {};
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
    Complex lead = q.c[static_cast<size_t>(n)];
    for (int i = 0; i < n; ++i) {
        C(i, n - 1) = -q.c[static_cast<size_t>(i)] / lead;
        if (i > 0) C(i, i - 1) = 1.0;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
    std::vector<Complex> roots;
    roots.reserve(static_cast<size_t>(n));
    PolyC dq = q.derivative();
    for (int i = 0; i < n; ++i) {
        Complex r = es.eigenvalues()(i);
        Complex d = dq.eval(r);
        if (std::abs(d) > 1e-30) {
            Complex step = q.eval(r) / d;
            if (std::isfinite(step.real()) && std::isfinite(step.imag())) r -= step;
        }
        roots.push_back(r);
    }
    return roots;
}

}  // namespace heun
