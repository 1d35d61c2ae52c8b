#ifndef HEUN_RAT_E_HPP
#define HEUN_RAT_E_HPP

#include "heun/modular.hpp"
#include "heun/poly.hpp"

namespace heun {

// Rational function in E, normalized: gcd(num, den) = 1, den monic.
struct RatE {
    PolyQ num, den;

    RatE() : den(polyq({Rational(1)})) {}
    RatE(PolyQ n, PolyQ d) : num(std::move(n)), den(std::move(d)) { normalize(); }
    explicit RatE(const PolyQ& n) : num(n), den(polyq({Rational(1)})) {}

    void normalize() {
        if (den.zero()) throw Error("RatE: zero denominator");
        if (num.zero()) {
            den = polyq({Rational(1)});
            return;
        }
        PolyQ g = poly_gcd_adaptive(num, den);
        if (g.deg() > 0) {
            num = divexact(num, g);
            den = divexact(den, g);
        }
        Rational lc = den.lead();
        if (lc != Rational(1)) {
            Rational inv = 1 / lc;
            num = inv * num;
            den = inv * den;
        }
    }

    bool zero() const { return num.zero(); }

    friend RatE operator+(const RatE& a, const RatE& b) {
        return RatE(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend RatE operator-(const RatE& a, const RatE& b) {
        return RatE(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend RatE operator*(const RatE& a, const RatE& b) {
        return RatE(a.num * b.num, a.den * b.den);
    }
    friend RatE operator*(const Rational& s, const RatE& a) { return RatE(s * a.num, a.den); }
    friend RatE operator/(const RatE& a, const RatE& b) {
        if (b.zero()) throw Error("RatE: division by zero");
        return RatE(a.num * b.den, a.den * b.num);
    }
    friend bool operator==(const RatE& a, const RatE& b) {
        return (a.num * b.den) == (b.num * a.den);
    }

    RatE derivative() const {
        return RatE(num.derivative() * den - num * den.derivative(), den * den);
    }
    Complex eval(Complex x) const { return eval_c(num, x) / eval_c(den, x); }
};

}  // namespace heun

#endif
