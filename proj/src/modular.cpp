#include "heun/modular.hpp"

#include <algorithm>
#include <cstdint>

namespace heun {
namespace modp {

using u64 = uint64_t;
using u128 = unsigned __int128;

static u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>((u128)a * b % p); }

static u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

static bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

u64 next_prime_below(u64 n) {
    u64 c = n - 1;
    if ((c & 1) == 0) --c;
    while (!is_prime(c)) c -= 2;
    return c;
}

static u64 invmod(u64 a, u64 p) { return powmod(a % p, p - 2, p); }

static u64 mpz_mod_u64(const Integer& z, u64 p) {
    Integer m = z % Integer(static_cast<unsigned long>(p));
    // gmp % keeps the sign of the dividend
    if (sgn(m) < 0) m += Integer(static_cast<unsigned long>(p));
    return m.get_ui();
}

std::vector<u64> reduce_poly(const PolyQ& q, u64 p, bool& ok) {
    ok = true;
    std::vector<u64> r(q.c.size());
    for (size_t i = 0; i < q.c.size(); ++i) {
        u64 den = mpz_mod_u64(Integer(q.c[i].get_den()), p);
        if (den == 0) {
            ok = false;
            return {};
        }
        u64 num = mpz_mod_u64(Integer(q.c[i].get_num()), p);
        r[i] = mulmod(num, invmod(den, p), p);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

static void trim_zp(std::vector<u64>& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

// Resultant of f, g over Z_p via the Euclidean remainder sequence.
u64 resultant_zp(std::vector<u64> f, std::vector<u64> g, u64 p) {
    trim_zp(f);
    trim_zp(g);
    if (f.empty() || g.empty()) return 0;
    u64 res = 1;
    while (true) {
        if (g.size() == 1) {
            res = mulmod(res, powmod(g[0], f.size() - 1, p), p);
            return res;
        }
        int df = static_cast<int>(f.size()) - 1;
        int dg = static_cast<int>(g.size()) - 1;
        if (df < dg) {
            std::swap(f, g);
            if ((static_cast<u64>(df) & 1) && (static_cast<u64>(dg) & 1)) res = p - res;
            continue;
        }
        // r = f mod g
        std::vector<u64> r = f;
        u64 lg = g.back();
        u64 ilg = invmod(lg, p);
        for (int k = df; k >= dg; --k) {
            u64 c = mulmod(r[static_cast<size_t>(k)], ilg, p);
            if (c == 0) continue;
            for (int i = 0; i <= dg; ++i) {
                size_t idx = static_cast<size_t>(k - dg + i);
                u64 sub = mulmod(c, g[static_cast<size_t>(i)], p);
                r[idx] = (r[idx] + p - sub) % p;
            }
        }
        trim_zp(r);
        if (r.empty()) return 0;
        int dr = static_cast<int>(r.size()) - 1;
        res = mulmod(res, powmod(lg, static_cast<u64>(df - dr), p), p);
        if ((static_cast<u64>(df) & 1) && (static_cast<u64>(dg) & 1)) res = p - res;
        f = std::move(g);
        g = std::move(r);
    }
}

static u64 eval_zp(const std::vector<u64>& f, u64 x, u64 p) {
    u64 r = 0;
    for (size_t i = f.size(); i-- > 0;) r = (mulmod(r, x, p) + f[i]) % p;
    return r;
}

// Lagrange interpolation over Z_p through n distinct points.
static std::vector<u64> interpolate_zp(const std::vector<u64>& xs, const std::vector<u64>& ys,
                                       u64 p) {
    size_t n = xs.size();
    std::vector<u64> acc, master{1};
    master.reserve(n + 1);
    for (size_t i = 0; i < n; ++i) {
        // master *= (x - xs[i])
        std::vector<u64> nm(master.size() + 1, 0);
        for (size_t j = 0; j < master.size(); ++j) {
            nm[j + 1] = (nm[j + 1] + master[j]) % p;
            nm[j] = (nm[j] + mulmod(master[j], p - xs[i] % p, p)) % p;
        }
        master = std::move(nm);
    }
    acc.assign(n, 0);
    std::vector<u64> quot(n), tmp(n + 1);
    for (size_t i = 0; i < n; ++i) {
        // quot = master / (x - xs[i]) by synthetic division
        u64 carry = 0;
        for (size_t j = master.size(); j-- > 1;) {
            carry = (master[j] + mulmod(carry, xs[i], p)) % p;
            quot[j - 1] = carry;
        }
        u64 denom = eval_zp(quot, xs[i], p);
        u64 f = mulmod(ys[i], invmod(denom, p), p);
        for (size_t j = 0; j < n; ++j) acc[j] = (acc[j] + mulmod(f, quot[j], p)) % p;
    }
    trim_zp(acc);
    return acc;
}

struct PrimeGen {
    u64 cur = (1ull << 62);
    u64 next() {
        cur = next_prime_below(cur);
        return cur;
    }
};

}  // namespace modp

using modp::u64;

// ---------- CRT helpers over mpz ----------

namespace {

struct CrtAccum {
    Integer value{0};    // 0 <= value < modulus
    Integer modulus{1};

    void add(u64 residue, u64 prime) {
        Integer p(static_cast<unsigned long>(prime));
        Integer r(static_cast<unsigned long>(residue));
        // solve x = value (mod modulus), x = r (mod p)
        Integer mInv;
        if (mpz_invert(mInv.get_mpz_t(), modulus.get_mpz_t(), p.get_mpz_t()) == 0)
            throw Error("crt: moduli not coprime");
        Integer t = ((r - value % p) * mInv) % p;
        if (sgn(t) < 0) t += p;
        value += modulus * t;
        modulus *= p;
    }
    Integer symmetric() const {
        if (value * 2 > modulus) return value - modulus;
        return value;
    }
};

// Rational reconstruction of x mod m with |num|, den <= sqrt(m/2).
bool rational_reconstruct(const Integer& x, const Integer& m, Rational& out) {
    Integer r0 = m, r1 = x % m;
    if (sgn(r1) < 0) r1 += m;
    Integer t0(0), t1(1);
    Integer bound;
    mpz_sqrt(bound.get_mpz_t(), Integer(m / 2).get_mpz_t());
    while (r1 > bound) {
        Integer q = r0 / r1;
        Integer r2 = r0 - q * r1;
        Integer t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (sgn(t1) == 0) return false;
    if (cmp(abs(t1), bound) > 0) return false;
    if (sgn(t1) < 0) {
        t1 = -t1;
        r1 = -r1;
    }
    if (gcd(r1, t1) != 1) return false;
    out = Rational(r1) / Rational(t1);
    out.canonicalize();
    return true;
}

}  // namespace

// ---------- modular gcd ----------

PolyQ gcd_modular(const PolyQ& A, const PolyQ& B) {
    if (A.zero()) return monic(B);
    if (B.zero()) return monic(A);
    PolyQ a = primitive_part(A), b = primitive_part(B);
    modp::PrimeGen gen;
    int bestDeg = std::min(a.deg(), b.deg()) + 1;
    std::vector<CrtAccum> acc;
    PolyQ lastCandidate;
    int stable = 0;
    for (int iter = 0; iter < 4000; ++iter) {
        u64 p = gen.next();
        bool ok1 = false, ok2 = false;
        auto fa = modp::reduce_poly(a, p, ok1);
        auto fb = modp::reduce_poly(b, p, ok2);
        if (!ok1 || !ok2) continue;
        if (static_cast<int>(fa.size()) - 1 != a.deg() || static_cast<int>(fb.size()) - 1 != b.deg())
            continue;  // leading coefficient vanished mod p
        // Euclid over Z_p
        while (!fb.empty()) {
            int df = static_cast<int>(fa.size()) - 1, dg = static_cast<int>(fb.size()) - 1;
            if (df < dg) {
                std::swap(fa, fb);
                continue;
            }
            u64 inv = 1;
            {
                u64 lg = fb.back();
                u64 x = lg, e = p - 2, r = 1;
                while (e) {
                    if (e & 1) r = static_cast<u64>((unsigned __int128)r * x % p);
                    x = static_cast<u64>((unsigned __int128)x * x % p);
                    e >>= 1;
                }
                inv = r;
            }
            for (int k = df; k >= dg; --k) {
                u64 c = static_cast<u64>((unsigned __int128)fa[static_cast<size_t>(k)] * inv % p);
                if (c == 0) continue;
                for (int i = 0; i <= dg; ++i) {
                    size_t idx = static_cast<size_t>(k - dg + i);
                    u64 sub = static_cast<u64>((unsigned __int128)c * fb[static_cast<size_t>(i)] % p);
                    fa[idx] = (fa[idx] + p - sub) % p;
                }
            }
            while (!fa.empty() && fa.back() == 0) fa.pop_back();
            std::swap(fa, fb);
        }
        // fa is gcd mod p; make monic
        if (fa.empty()) continue;
        {
            u64 lg = fa.back();
            u64 x = lg, e = p - 2, inv = 1;
            while (e) {
                if (e & 1) inv = static_cast<u64>((unsigned __int128)inv * x % p);
                x = static_cast<u64>((unsigned __int128)x * x % p);
                e >>= 1;
            }
            for (auto& c : fa) c = static_cast<u64>((unsigned __int128)c * inv % p);
        }
        int d = static_cast<int>(fa.size()) - 1;
        if (d == 0) return polyq({1});
        if (d < bestDeg) {
            bestDeg = d;
            acc.assign(static_cast<size_t>(d) + 1, CrtAccum());
            lastCandidate = PolyQ();
            stable = 0;
        } else if (d > bestDeg) {
            continue;  // unlucky prime
        }
        for (int i = 0; i <= d; ++i) acc[static_cast<size_t>(i)].add(fa[static_cast<size_t>(i)], p);
        // attempt reconstruction
        PolyQ cand;
        cand.c.resize(static_cast<size_t>(d) + 1);
        bool ok = true;
        for (int i = 0; i <= d && ok; ++i) {
            Rational q;
            ok = rational_reconstruct(acc[static_cast<size_t>(i)].value,
                                      acc[static_cast<size_t>(i)].modulus, q);
            if (ok) cand.c[static_cast<size_t>(i)] = q;
        }
        if (!ok) continue;
        cand.trim();
        if (cand == lastCandidate) {
            ++stable;
            if (stable >= 1) {
                if (divides(cand, a) && divides(cand, b)) return monic(cand);
                stable = 0;
            }
        } else {
            lastCandidate = cand;
            stable = 0;
        }
    }
    throw Error("gcd_modular: failed to stabilize");
}

PolyQ poly_gcd_adaptive(const PolyQ& a, const PolyQ& b) {
    if (a.deg() <= 48 && b.deg() <= 48) return poly_gcd(a, b);
    return gcd_modular(a, b);
}

PolyQ squarefree_part_adaptive(const PolyQ& p) {
    if (p.deg() <= 0) return monic(p);
    PolyQ g = poly_gcd_adaptive(p, p.derivative());
    return monic(divexact(p, g));
}

// ---------- modular bivariate resultant ----------

namespace {

// evaluate bivariate (outer aux, inner E) at inner value x, mod p
std::vector<std::vector<u64>> reduce_bivar(const BivarQ& f, u64 p, bool& ok) {
    std::vector<std::vector<u64>> out(f.c.size());
    ok = true;
    for (size_t i = 0; i < f.c.size(); ++i) {
        out[i] = modp::reduce_poly(f.c[i], p, ok);
        if (!ok) return {};
    }
    return out;
}

std::vector<u64> spec_at(const std::vector<std::vector<u64>>& f, u64 x, u64 p) {
    std::vector<u64> r(f.size());
    for (size_t i = 0; i < f.size(); ++i) {
        u64 v = 0;
        for (size_t j = f[i].size(); j-- > 0;)
            v = (static_cast<u64>((unsigned __int128)v * x % p) + f[i][j]) % p;
        r[i] = v;
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

}  // namespace

namespace {

// lcm of all coefficient denominators
Integer bivar_den_lcm(const BivarQ& f) {
    Integer d(1);
    for (const auto& inner : f.c)
        for (const auto& q : inner.c) d = lcm(d, q.get_den());
    return d;
}

}  // namespace

PolyQ resultant_bivar(const BivarQ& Pin, const BivarQ& Qin) {
    if (Pin.zero() || Qin.zero()) return PolyQ();
    int m = Pin.deg(), n = Qin.deg();
    if (m == 0 && n == 0) return polyq({1});
    if (m == 0) {
        // Res(c, Q) = c^n
        PolyQ r = polyq({1});
        for (int i = 0; i < n; ++i) r = r * Pin.c[0];
        return r;
    }
    if (n == 0) {
        PolyQ r = polyq({1});
        for (int i = 0; i < m; ++i) r = r * Qin.c[0];
        return r;
    }
    // integer-clear so the CRT symmetric lift sees integer coefficients
    Integer dp = bivar_den_lcm(Pin), dq = bivar_den_lcm(Qin);
    BivarQ P = Pin, Q = Qin;
    if (dp != 1)
        for (auto& inner : P.c) inner = Rational(dp) * inner;
    if (dq != 1)
        for (auto& inner : Q.c) inner = Rational(dq) * inner;
    Rational scale = rat_pow(Rational(dp), static_cast<unsigned long>(n)) *
                     rat_pow(Rational(dq), static_cast<unsigned long>(m));
    long D = static_cast<long>(m) * std::max(0, max_inner_deg(Q)) +
             static_cast<long>(n) * std::max(0, max_inner_deg(P));
    modp::PrimeGen gen;
    std::vector<CrtAccum> acc(static_cast<size_t>(D) + 1);
    PolyQ last;
    int stable = 0;
    bool first = true;
    for (int iter = 0; iter < 6000; ++iter) {
        u64 p = gen.next();
        bool ok = true;
        auto fp = reduce_bivar(P, p, ok);
        if (!ok) continue;
        auto fq = reduce_bivar(Q, p, ok);
        if (!ok) continue;
        if (fp.back().empty() || fq.back().empty()) continue;  // lc vanished mod p entirely? skip
        // choose D+1 points with both leading coefficients nonzero
        std::vector<u64> xs, ys;
        xs.reserve(static_cast<size_t>(D) + 1);
        u64 x = 0;
        long need = D + 1;
        u64 tries = 0;
        while (static_cast<long>(xs.size()) < need) {
            ++tries;
            if (tries > static_cast<u64>(4 * need + 64)) break;
            u64 lcp = 0, lcq = 0;
            for (size_t j = fp.back().size(); j-- > 0;)
                lcp = (static_cast<u64>((unsigned __int128)lcp * x % p) + fp.back()[j]) % p;
            for (size_t j = fq.back().size(); j-- > 0;)
                lcq = (static_cast<u64>((unsigned __int128)lcq * x % p) + fq.back()[j]) % p;
            if (lcp != 0 && lcq != 0) {
                auto sf = spec_at(fp, x, p);
                auto sg = spec_at(fq, x, p);
                ys.push_back(modp::resultant_zp(sf, sg, p));
                xs.push_back(x);
            }
            ++x;
        }
        if (static_cast<long>(xs.size()) < need) continue;
        std::vector<u64> rp = modp::interpolate_zp(xs, ys, p);
        rp.resize(static_cast<size_t>(D) + 1, 0);
        for (long i = 0; i <= D; ++i) acc[static_cast<size_t>(i)].add(rp[static_cast<size_t>(i)], p);
        // symmetric lift candidate
        PolyQ cand;
        cand.c.resize(static_cast<size_t>(D) + 1);
        for (long i = 0; i <= D; ++i)
            cand.c[static_cast<size_t>(i)] = Rational(acc[static_cast<size_t>(i)].symmetric());
        cand.trim();
        if (!first && cand == last) {
            ++stable;
            if (stable >= 2) return (1 / scale) * cand;
        } else {
            last = cand;
            stable = 0;
        }
        first = false;
    }
    throw Error("resultant_bivar: failed to stabilize");
}

}  // namespace heun
