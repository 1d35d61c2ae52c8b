#include "heun/linalg.hpp"

#include <algorithm>

#include "heun/modular.hpp"

namespace heun {

PolyQ det_polymat(PolyMat M) {
    size_t n = M.size();
    if (n == 0) return polyq({1});
    for (auto& row : M)
        if (row.size() != n) throw Error("det_polymat: not square");
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

namespace {

// Fraction-free row echelon; returns pivot (row, col) pairs. Rows of M are
// modified in place.
std::vector<std::pair<size_t, size_t>> bareiss_echelon(PolyMat& M) {
    if (M.empty()) return {};
    size_t rows = M.size(), cols = M[0].size();
    std::vector<std::pair<size_t, size_t>> pivots;
    PolyQ prev = polyq({1});
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        // choose the lowest-degree nonzero pivot in this column
        size_t best = rows;
        for (size_t i = r; i < rows; ++i) {
            if (M[i][c].zero()) continue;
            if (best == rows || M[i][c].deg() < M[best][c].deg()) best = i;
        }
        if (best == rows) continue;
        std::swap(M[r], M[best]);
        for (size_t i = r + 1; i < rows; ++i) {
            if (M[i][c].zero() && prev.deg() == 0) {
                // still need the Bareiss scaling to keep the invariant
            }
            for (size_t j = c + 1; j < cols; ++j) {
                PolyQ t = M[i][j] * M[r][c] - M[i][c] * M[r][j];
                M[i][j] = divexact(t, prev);
            }
            M[i][c] = PolyQ();
        }
        prev = M[r][c];
        pivots.emplace_back(r, c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::vector<PolyQ> kernel_poly(const PolyMat& Min) {
    if (Min.empty()) throw KernelDimError("empty matrix");
    size_t cols = Min[0].size();
    for (const auto& row : Min)
        if (row.size() != cols) throw KernelDimError("ragged matrix");

    PolyMat M = Min;
    auto pivots = bareiss_echelon(M);
    size_t rank = pivots.size();
    if (cols - rank != 1)
        throw KernelDimError("kernel dimension " + std::to_string(cols - rank) + ", expected 1");

    // Use the pivot rows of the original matrix: a (cols-1) x cols system of
    // full rank; kernel entries are signed maximal minors.
    PolyMat B;
    B.reserve(rank);
    // pivot rows in M are rows 0..rank-1 after the in-place echelon, but they
    // correspond to permuted original rows; re-deriving from M itself is fine
    // since row operations preserve the row space (hence the kernel).
    for (size_t i = 0; i < rank; ++i) B.push_back(M[i]);

    std::vector<PolyQ> x(cols);
    int sign = 1;
    for (size_t skip = 0; skip < cols; ++skip) {
        PolyMat sub(rank, std::vector<PolyQ>(rank));
        for (size_t i = 0; i < rank; ++i) {
            size_t jj = 0;
            for (size_t j = 0; j < cols; ++j) {
                if (j == skip) continue;
                sub[i][jj++] = B[i][j];
            }
        }
        PolyQ d = det_polymat(std::move(sub));
        x[skip] = (sign < 0) ? Rational(-1) * d : d;
        sign = -sign;
    }

    // normalize: primitive with first nonzero entry monic
    PolyQ g;
    for (const auto& p : x) g = poly_gcd_adaptive(g, p);
    if (g.zero()) throw KernelDimError("zero kernel vector");
    for (auto& p : x) p = divexact(p, g);
    for (const auto& p : x)
        if (!p.zero()) {
            Rational inv = 1 / p.lead();
            for (auto& q : x) q = inv * q;
            break;
        }
    // sanity: M * x == 0
    for (const auto& row : Min) {
        PolyQ s;
        for (size_t j = 0; j < cols; ++j) s += row[j] * x[j];
        if (!s.zero()) throw KernelDimError("kernel verification failed");
    }
    return x;
}

PolyQ char_poly(const RatMat& A) {
    size_t n = A.size();
    PolyMat M(n, std::vector<PolyQ>(n));
    for (size_t i = 0; i < n; ++i) {
        if (A[i].size() != n) throw Error("char_poly: not square");
        for (size_t j = 0; j < n; ++j) {
            PolyQ e;
            if (i == j) e = polyq({-A[i][j], 1});
            else e = polyq({-A[i][j]});
            M[i][j] = e;
        }
    }
    return det_polymat(std::move(M));
}

}  // namespace heun
