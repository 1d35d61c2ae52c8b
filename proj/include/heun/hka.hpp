#ifndef HEUN_HKA_HPP
#define HEUN_HKA_HPP

#include <vector>

#include "heun/elliptic.hpp"
#include "heun/finitegap.hpp"
#include "heun/xi.hpp"

namespace heun {

struct CoverPoint {
    Complex E;
    Complex sqrtQ;  // tracked branch of sqrt(-Q(E))
    std::vector<Complex> zj;  // zeros of the Xi numerator, z_j = wp(t_j)
    std::vector<Complex> tj;  // fundamental-cell representatives
    Complex alpha;            // fundamental-cell representative
    Complex kappa;
    Complex wp_alpha, wp_prime_alpha;
};

// Numerator polynomial of Xi(z, E) * prod (z - e_k)^{l_k} for a numeric E.
PolyC xi_numerator_poly(const XiData& X, Complex E);

class CoverContext {
  public:
    CoverContext(const XiData& X, const SpectralCurve& S, const Lattice& L);

    const XiData& xi() const { return *X_; }
    const Lattice& lattice() const { return *L_; }
    const PolyC& Qn() const { return Qn_; }

    Complex sqrt_negQ(Complex E) const;  // tracked from the shared basepoint
    Complex track_sqrt(Complex from, Complex to, Complex w) const;

    CoverPoint at(Complex E) const;
    // continuation along a segment from a previously computed point
    CoverPoint continue_from(const CoverPoint& prev, Complex E) const;

  private:
    const XiData* X_;
    const SpectralCurve* S_;
    const Lattice* L_;
    PolyC Qn_;
    Complex Ebase_, sqrtBase_;

    CoverPoint finish(Complex E, Complex sqrtQ, std::vector<Complex> roots) const;
};

struct CoverReport {
    double xi_residual = 0;
    double kappa_residual = 0;
    bool pass = false;
};

CoverReport validate_covering(const CoverPoint& cp, const CoveringMap& cm, const PolyQ& Q,
                              double tol = 1e-8);

struct DegenerateClass {
    int i = -1;                          // E0 lies in A_i
    std::array<int, 3> multipliers{};    // periodicity signs for k = 1..3
};

DegenerateClass degenerate_point(const HeunSet& HS, Complex E0, double tol = 1e-6);

}  // namespace heun

#endif
