#ifndef HEUN_LINALG_HPP
#define HEUN_LINALG_HPP

#include <vector>

#include "heun/poly.hpp"

namespace heun {

using PolyMat = std::vector<std::vector<PolyQ>>;
using RatMat = std::vector<std::vector<Rational>>;

// Nullspace vector of a matrix over Q[E] with one-dimensional kernel,
// via fraction-free (Bareiss) elimination plus determinantal minors.
// Result is primitive (entry gcd 1) with the first nonzero entry monic.
std::vector<PolyQ> kernel_poly(const PolyMat& M);

// det(E*I - M) for a rational square matrix, fraction-free.
PolyQ char_poly(const RatMat& M);

// Bareiss determinant of a Q[E] matrix.
PolyQ det_polymat(PolyMat M);

}  // namespace heun

#endif
