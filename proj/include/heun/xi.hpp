#ifndef HEUN_XI_HPP
#define HEUN_XI_HPP

#include <array>
#include <utility>
#include <vector>

#include "heun/poly.hpp"

namespace heun {

// index of omega_i + omega_j in the half-period Klein group (0 = 0)
int klein(int i, int j);

struct Couplings {
    std::array<int, 4> l{};
    int lsum = 0;    // l0+l1+l2+l3
    int s = 0;       // sum l_i(l_i+1)
    int parity = 0;  // lsum mod 2
    int p = 0;       // sum l_k omega_k == omega_p (mod periods)

    static Couplings make(int l0, int l1, int l2, int l3);
};

struct XiData {
    Couplings C;
    std::array<Rational, 3> e;
    Rational g2, g3;
    PolyQ c0;                             // monic, degree = genus
    std::array<std::vector<PolyQ>, 4> b;  // b[i][j] multiplies wp(x+w_i)^{l_i-j}
    std::array<std::vector<PolyQ>, 4> a_deriv;  // a[i][j] multiplies (d/dx)^{2j} wp(x+w_i)
    PolyQ a, c;
    int genus = 0;
};

struct SpectralCurve {
    PolyQ Q;  // monic, degree 2g+1
    int genus = 0;
};

XiData build_xi(const Couplings& C, const std::array<Rational, 3>& e);
SpectralCurve build_Q(const XiData& X);

// (a, c): re-derives the derivative-basis integrand pair and checks the
// leading behaviour c ~ E^g, a ~ (s/2) E^{g-1}
std::pair<PolyQ, PolyQ> monodromy_integrands(const XiData& X);

enum class SymOp { Shift1, Shift2, Shift3, Swap23, Swap13, Swap12 };

struct SymImage {
    Couplings C2;
    std::array<int, 3> e_perm;  // new e_k = old e_{e_perm[k-1]}  (1-based values)
    std::array<int, 4> i_perm;  // Xi part index map: new b[i] = old b[i_perm[i]]
};

SymImage symmetry_transport(const Couplings& C, SymOp op);

std::array<Rational, 3> apply_perm(const std::array<Rational, 3>& e, const std::array<int, 3>& perm);

}  // namespace heun

#endif
