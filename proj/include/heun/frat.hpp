#ifndef HEUN_FRAT_HPP
#define HEUN_FRAT_HPP

#include <vector>

#include "heun/poly.hpp"

namespace heun {

// Rational functions in one variable y whose denominators are products of a
// fixed list of monic linear factors (y - r_i), r_i scalars in S. Exactly the
// shape produced by the gauge-transformed operators: poles sit at branch
// points and at wp(alpha).
template <class S>
struct FactorCtx {
    std::vector<S> roots;
};

template <class S>
S eval_at_scalar(const Polynomial<S>& p, const S& x) {
    S r{};
    for (size_t i = p.c.size(); i-- > 0;) r = r * x + p.c[i];
    return r;
}

// divide p by (y - r); caller must know it divides (asserted)
template <class S>
Polynomial<S> divide_linear(const Polynomial<S>& p, const S& r) {
    if (p.zero()) return p;
    Polynomial<S> q;
    q.c.assign(p.c.size() - 1, S{});
    S carry{};
    for (size_t j = p.c.size(); j-- > 1;) {
        carry = p.c[j] + carry * r;
        q.c[j - 1] = carry;
    }
    S rem = p.c[0] + carry * r;
    if (!is_zero(rem)) throw Error("divide_linear: nonzero remainder");
    q.trim();
    return q;
}

template <class S>
struct FRat {
    Polynomial<S> num;
    std::vector<int> den;  // exponents, one per ctx factor
    const FactorCtx<S>* ctx = nullptr;

    FRat() = default;
    explicit FRat(const FactorCtx<S>* c) : den(c->roots.size(), 0), ctx(c) {}
    static FRat from_poly(const FactorCtx<S>* c, Polynomial<S> p) {
        FRat r(c);
        r.num = std::move(p);
        return r;
    }
    static FRat from_scalar(const FactorCtx<S>* c, const S& s) {
        return from_poly(c, Polynomial<S>(s));
    }
    bool zero() const { return num.zero(); }

    Polynomial<S> factor_poly(size_t i) const {  // (y - r_i)
        Polynomial<S> f;
        f.c = {S{} - ctx->roots[i], Polynomial<S>::unit()};
        return f;
    }

    // multiply numerator so denominator exponents reach target
    void raise_to(const std::vector<int>& target) {
        for (size_t i = 0; i < den.size(); ++i) {
            for (int k = den[i]; k < target[i]; ++k) num = num * factor_poly(i);
            den[i] = std::max(den[i], target[i]);
        }
    }

    friend FRat operator+(FRat a, FRat b) {
        std::vector<int> t(a.den.size());
        for (size_t i = 0; i < t.size(); ++i) t[i] = std::max(a.den[i], b.den[i]);
        a.raise_to(t);
        b.raise_to(t);
        a.num += b.num;
        return a;
    }
    friend FRat operator-(FRat a, FRat b) {
        std::vector<int> t(a.den.size());
        for (size_t i = 0; i < t.size(); ++i) t[i] = std::max(a.den[i], b.den[i]);
        a.raise_to(t);
        b.raise_to(t);
        a.num -= b.num;
        return a;
    }
    friend FRat operator*(const FRat& a, const FRat& b) {
        FRat r(a.ctx);
        r.num = a.num * b.num;
        for (size_t i = 0; i < r.den.size(); ++i) r.den[i] = a.den[i] + b.den[i];
        return r;
    }
    friend FRat operator*(const Polynomial<S>& p, FRat a) {
        a.num = p * a.num;
        return a;
    }
    friend FRat operator*(const S& s, FRat a) {
        a.num = Polynomial<S>(s) * a.num;
        return a;
    }
    FRat operator-() const {
        FRat r = *this;
        r.num = -r.num;
        return r;
    }

    FRat dy() const {
        // d/dy of num / prod (y-r_i)^{m_i}
        FRat r(ctx);
        Polynomial<S> G = Polynomial<S>(Polynomial<S>::unit());
        for (size_t i = 0; i < den.size(); ++i)
            if (den[i] > 0) G = G * factor_poly(i);
        Polynomial<S> acc = num.derivative() * G;
        for (size_t i = 0; i < den.size(); ++i) {
            if (den[i] == 0) continue;
            // subtract m_i * num * G/(y-r_i)
            Polynomial<S> Gi = divide_linear(G, ctx->roots[i]);
            S mi{};
            for (int k = 0; k < den[i]; ++k) mi = mi + Polynomial<S>::unit();
            acc -= Polynomial<S>(mi) * (num * Gi);
        }
        r.num = acc;
        r.den = den;
        for (size_t i = 0; i < den.size(); ++i)
            if (den[i] > 0) r.den[i] = den[i] + 1;
        return r;
    }

    // cancel common (y - r_i) factors
    void reduce() {
        for (size_t i = 0; i < den.size(); ++i) {
            while (den[i] > 0) {
                S v = eval_at_scalar(num, ctx->roots[i]);
                if (!is_zero(v)) break;
                num = divide_linear(num, ctx->roots[i]);
                --den[i];
            }
        }
    }
};

}  // namespace heun

#endif
