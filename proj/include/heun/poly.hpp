#ifndef HEUN_POLY_HPP
#define HEUN_POLY_HPP

#include <algorithm>
#include <cstddef>
#include <vector>

#include "heun/base.hpp"

namespace heun {

// Dense univariate polynomial, coefficients ascending. Works over any
// commutative ring K that provides +, -, *, ==, default zero and an
// is_zero() overload; nested instantiations give multivariate layers.
template <class K>
struct Polynomial;

// customization point: embed a small integer into the coefficient ring
template <class K>
struct RingTraits;  // specialize for each coefficient ring
template <>
struct RingTraits<Rational> {
    static Rational from_int(int n) { return Rational(n); }
};
template <>
struct RingTraits<std::complex<double>> {
    static Complex from_int(int n) { return Complex(n, 0.0); }
};
template <class K>
struct RingTraits<Polynomial<K>> {
    static Polynomial<K> from_int(int n) { return Polynomial<K>(RingTraits<K>::from_int(n)); }
};

template <class K>
struct Polynomial {
    using coeff_type = K;
    std::vector<K> c;

    Polynomial() = default;
    explicit Polynomial(const K& k) {
        if (!is_zero(k)) c.push_back(k);
    }
    static Polynomial var() {
        Polynomial p;
        p.c = {K(), unit()};
        return p;
    }
    static K unit();

    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool zero() const { return c.empty(); }
    const K& lead() const { return c.back(); }
    K coeff(int i) const {
        if (i < 0 || i > deg()) return K();
        return c[static_cast<size_t>(i)];
    }
    void trim() {
        while (!c.empty() && is_zero(c.back())) c.pop_back();
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (c.size() < o.c.size()) c.resize(o.c.size());
        for (size_t i = 0; i < o.c.size(); ++i) c[i] = c[i] + o.c[i];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (c.size() < o.c.size()) c.resize(o.c.size());
        for (size_t i = 0; i < o.c.size(); ++i) c[i] = c[i] - o.c[i];
        trim();
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(const Polynomial& a) {
        Polynomial r;
        r.c.reserve(a.c.size());
        for (const auto& k : a.c) r.c.push_back(K() - k);
        return r;
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.zero() || b.zero()) return {};
        Polynomial r;
        r.c.assign(a.c.size() + b.c.size() - 1, K());
        for (size_t i = 0; i < a.c.size(); ++i) {
            if (is_zero(a.c[i])) continue;
            for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
        }
        r.trim();
        return r;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    friend Polynomial operator*(const K& k, const Polynomial& a) {
        Polynomial r;
        r.c.reserve(a.c.size());
        for (const auto& x : a.c) r.c.push_back(k * x);
        r.trim();
        return r;
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        Polynomial d = a;
        d -= b;
        return d.zero();
    }

    template <class V>
    V eval(const V& x) const {
        V r{};
        for (size_t i = c.size(); i-- > 0;) r = r * x + V(c[i]);
        return r;
    }
    Polynomial derivative() const {
        Polynomial r;
        for (int i = 1; i <= deg(); ++i)
            r.c.push_back(RingTraits<K>::from_int(i) * c[static_cast<size_t>(i)]);
        r.trim();
        return r;
    }
    Polynomial shifted_up(int n) const {  // multiply by x^n
        if (zero()) return {};
        Polynomial r;
        r.c.assign(static_cast<size_t>(n), K());
        r.c.insert(r.c.end(), c.begin(), c.end());
        return r;
    }
};

template <>
inline Rational Polynomial<Rational>::unit() { return Rational(1); }
template <>
inline Complex Polynomial<Complex>::unit() { return Complex(1.0, 0.0); }
template <class K>
K Polynomial<K>::unit() { return K(K::unit()); }

template <class K>
inline bool is_zero(const Polynomial<K>& p) { return p.zero(); }

using PolyQ = Polynomial<Rational>;
using PolyC = Polynomial<Complex>;

inline PolyQ polyq(std::initializer_list<Rational> asc) {
    PolyQ p;
    p.c = asc;
    p.trim();
    return p;
}

inline PolyC to_numeric(const PolyQ& p) {
    PolyC r;
    r.c.reserve(p.c.size());
    for (const auto& q : p.c) r.c.push_back(Complex(q.get_d(), 0.0));
    r.trim();
    return r;
}

inline Complex eval_c(const PolyQ& p, Complex x) {
    Complex r(0.0, 0.0);
    for (size_t i = p.c.size(); i-- > 0;) r = r * x + Complex(p.c[i].get_d(), 0.0);
    return r;
}

// ---- field-coefficient division (Rational) ----

inline void divrem(const PolyQ& a, const PolyQ& b, PolyQ& q, PolyQ& r) {
    if (b.zero()) throw Error("poly division by zero");
    q = PolyQ();
    r = a;
    const Rational& lb = b.lead();
    while (!r.zero() && r.deg() >= b.deg()) {
        int k = r.deg() - b.deg();
        Rational f = r.lead() / lb;
        if (q.deg() < k) q.c.resize(static_cast<size_t>(k) + 1);
        q.c[static_cast<size_t>(k)] = f;
        for (int i = 0; i <= b.deg(); ++i)
            r.c[static_cast<size_t>(i + k)] -= f * b.c[static_cast<size_t>(i)];
        r.trim();
    }
    q.trim();
}

inline PolyQ divexact(const PolyQ& a, const PolyQ& b) {
    PolyQ q, r;
    divrem(a, b, q, r);
    if (!r.zero()) throw Error("divexact: not divisible");
    return q;
}

inline bool divides(const PolyQ& b, const PolyQ& a) {
    if (b.zero()) return a.zero();
    PolyQ q, r;
    divrem(a, b, q, r);
    return r.zero();
}

inline PolyQ monic(const PolyQ& p) {
    if (p.zero()) return p;
    Rational inv = 1 / p.lead();
    return inv * p;
}

// Clears denominators and integer content; sign so the leading coeff > 0.
inline PolyQ primitive_part(const PolyQ& p) {
    if (p.zero()) return p;
    Integer den(1);
    for (const auto& q : p.c) den = lcm(den, q.get_den());
    Integer num(0);
    for (const auto& q : p.c) num = gcd(num, q.get_num() * (den / q.get_den()));
    if (sgn(num) == 0) num = 1;
    Rational f = Rational(den) / Rational(num);
    PolyQ r = f * p;
    if (sgn(r.lead()) < 0) r = Rational(-1) * r;
    return r;
}

// Subresultant-flavoured gcd: primitive PRS with content stripping.
inline PolyQ poly_gcd(PolyQ a, PolyQ b) {
    a = primitive_part(a);
    b = primitive_part(b);
    if (a.zero()) return monic(b);
    if (b.zero()) return monic(a);
    if (a.deg() < b.deg()) std::swap(a, b);
    while (!b.zero()) {
        PolyQ q, r;
        divrem(a, b, q, r);
        a = b;
        b = primitive_part(r);
    }
    return monic(a);
}

inline PolyQ squarefree_part(const PolyQ& p) {
    if (p.deg() <= 0) return monic(p);
    PolyQ g = poly_gcd(p, p.derivative());
    return monic(divexact(p, g));
}

// Lagrange interpolation through (xs[i], ys[i]); xs distinct.
inline PolyQ interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
    PolyQ acc;  // running Newton form
    PolyQ basis = polyq({1});
    std::vector<Rational> dd = ys;  // divided differences, updated in place
    for (size_t i = 0; i < xs.size(); ++i) {
        for (size_t j = xs.size() - 1; j > i; --j)
            dd[j] = (dd[j] - dd[j - 1]) / (xs[j] - xs[j - i - 1]);
        acc += dd[i] * basis;
        basis = basis * polyq({-xs[i], 1});
    }
    acc.trim();
    return acc;
}

// Sylvester resultant of a, b (coefficients in Q) by fraction-eliminating
// Gaussian determinant. Used for small instances and as a reference.
Rational resultant_q(const PolyQ& a, const PolyQ& b);

// Roots of a complex polynomial via companion-matrix eigenvalues with one
// Newton polish step.
std::vector<Complex> roots_numeric(const PolyC& p);
inline std::vector<Complex> roots_numeric(const PolyQ& p) { return roots_numeric(to_numeric(p)); }

// Bivariate layer: outer variable is the auxiliary one being eliminated,
// inner coefficients are polynomials in E.
using BivarQ = Polynomial<PolyQ>;

inline BivarQ bivar_of(const PolyQ& inner) { return BivarQ(inner); }

inline int max_inner_deg(const BivarQ& p) {
    int d = -1;
    for (const auto& q : p.c) d = std::max(d, q.deg());
    return d;
}

inline PolyQ bivar_eval_outer(const BivarQ& p, const Rational& x) {
    PolyQ r;
    for (size_t i = p.c.size(); i-- > 0;) r = r * polyq({x}) + p.c[i];
    // note: multiplying by constant poly {x}
    return r;
}

inline BivarQ bivar_subst_inner(const BivarQ& p, const Rational& e) {
    // substitute a value for the *inner* variable, keeping the outer one
    BivarQ r;
    r.c.reserve(p.c.size());
    for (const auto& q : p.c) r.c.push_back(polyq({q.eval(e)}));
    r.trim();
    return r;
}

// Resultant in the outer (auxiliary) variable of two bivariate polynomials:
// returns a polynomial in the inner variable. Exact; internally modular
// (CRT over word-size primes + evaluation/interpolation).
PolyQ resultant_bivar(const BivarQ& p, const BivarQ& q);

// Direct Sylvester-determinant route, for cross-checking on small inputs.
PolyQ resultant_bivar_direct(const BivarQ& p, const BivarQ& q);

}  // namespace heun

#endif
