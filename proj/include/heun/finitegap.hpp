#ifndef HEUN_FINITEGAP_HPP
#define HEUN_FINITEGAP_HPP

#include <array>

#include "heun/rat_e.hpp"
#include "heun/xi.hpp"

namespace heun {

struct HeunSet {
    Couplings C;
    std::array<Rational, 3> e;
    Rational g2, g3;
    std::array<PolyQ, 4> H;   // Heun polynomials, zeros = A_i
    std::array<PolyQ, 4> Ht;  // twisted Heun polynomials, zeros = B_i
    PolyQ Htheta;             // theta-twisted Heun polynomial
    PolyQ Q;
    PolyQ a, c;
    int genus = 0;
};

// Characteristic polynomials of the Hamiltonian on the four invariant
// subspaces, indexed by the half-period class of the subspace.
std::array<PolyQ, 4> heun_polys(const Couplings& C, const std::array<Rational, 3>& e);

// Twisted Heun polynomial for class i (zeros = B_i), by the coefficient
// recursion plus resultant elimination. H supplies known spurious factors.
PolyQ twisted_heun(const Couplings& C, const std::array<Rational, 3>& e, int i,
                   const std::array<PolyQ, 4>& H);

PolyQ theta_twisted_heun(const Couplings& C, const std::array<Rational, 3>& e,
                         const std::array<PolyQ, 4>& H, const std::array<PolyQ, 4>& Ht,
                         int genus);

// Full polynomial family with the structural laws checked.
HeunSet build_heun_set(const XiData& X, const SpectralCurve& S);

struct CoveringMap {
    std::array<RatE, 3> xi_minus_e;
    RatE xi;              // wp(alpha) as a rational function of E
    RatE kappa_sq_ratio;  // kappa^2 / (-Q)
    int s = 0;
};

CoveringMap covering_map(const HeunSet& HS);

}  // namespace heun

#endif
