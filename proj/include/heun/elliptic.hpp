#ifndef HEUN_ELLIPTIC_HPP
#define HEUN_ELLIPTIC_HPP

#include <array>
#include <optional>

#include "heun/base.hpp"

namespace heun {

// Carlson symmetric elliptic integral R_F (principal branches).
Complex carlson_rf(Complex x, Complex y, Complex z);

struct EllipticPoint {
    Complex z;        // original argument
    Complex reduced;  // representative in the fundamental cell
    long m = 0, n = 0;  // z = reduced + 2 m omega1 + 2 n omega3
};

// Immutable lattice with a theta-series evaluation engine. All member
// functions are const and thread-safe.
class Lattice {
  public:
    Complex omega1, omega2, omega3;
    std::array<Complex, 3> e;    // e_k = wp(omega_k)
    std::array<Complex, 3> eta;  // eta_k = zeta(omega_k)
    Complex g2, g3;
    double tol = 1e-12;

    // set when constructed from rational branch points
    bool has_exact = false;
    std::array<Rational, 3> e_exact{};

    EllipticPoint reduce(Complex z) const;

    Complex wp(Complex z) const;
    Complex wp_prime(Complex z) const;
    Complex zeta(Complex z) const;
    Complex sigma(Complex z) const;
    Complex co_sigma(int k, Complex z) const;  // k in 1..3
    Complex co_wp(int k, Complex z) const;

    // t with wp(t) = v, wp_prime(t) = v_prime, in the fundamental cell.
    Complex wp_inverse(Complex v, Complex v_prime) const;

    double scale() const;  // magnitude reference for tolerances

  private:
    Complex tau_, q_;

    struct Theta {
        Complex t0, t1, t2, t3;  // theta1 and v-derivatives at v
    };
    Theta theta1(Complex v) const;
    Complex wp_raw(Complex z) const;
    Complex wp_prime_raw(Complex z) const;
    Complex zeta_raw(Complex z) const;
    Complex sigma_raw(Complex z) const;

    friend Lattice lattice_from_half_periods(Complex omega1, Complex omega3, double tol);
};

Lattice lattice_from_half_periods(Complex omega1, Complex omega3, double tol = 1e-12);

// Real rational branch points, pairwise distinct, summing to zero.
Lattice lattice_from_branch_points(const Rational& e1, const Rational& e2, const Rational& e3,
                                   double tol = 1e-12);

}  // namespace heun

#endif
