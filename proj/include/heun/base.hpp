#ifndef HEUN_BASE_HPP
#define HEUN_BASE_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace heun {

using Rational = mpq_class;
using Integer = mpz_class;
using Complex = std::complex<double>;

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegenerateLattice : Error {
    explicit DegenerateLattice(const std::string& m) : Error("DegenerateLattice: " + m) {}
};
struct PoleAtArgument : Error {
    explicit PoleAtArgument(const std::string& m) : Error("PoleAtArgument: " + m) {}
};
struct NotOnCurve : Error {
    explicit NotOnCurve(const std::string& m) : Error("NotOnCurve: " + m) {}
};
struct KernelDimError : Error {
    explicit KernelDimError(const std::string& m) : Error("KernelDimError: " + m) {}
};
struct NotConstant : Error {
    explicit NotConstant(const std::string& m) : Error("NotConstant: " + m) {}
};
struct NotImplementedCase : Error {
    explicit NotImplementedCase(const std::string& m) : Error("NotImplemented: " + m) {}
};
struct EliminationCollapse : Error {
    explicit EliminationCollapse(const std::string& m) : Error("EliminationCollapse: " + m) {}
};
struct InconsistentCovering : Error {
    explicit InconsistentCovering(const std::string& m) : Error("InconsistentCovering: " + m) {}
};
struct AtBranchPoint : Error {
    explicit AtBranchPoint(const std::string& m) : Error("AtBranchPoint: " + m) {}
};
struct CollidingRoots : Error {
    explicit CollidingRoots(const std::string& m) : Error("CollidingRoots: " + m) {}
};
struct Unclassified : Error {
    explicit Unclassified(const std::string& m) : Error("Unclassified: " + m) {}
};
struct BranchLost : Error {
    explicit BranchLost(const std::string& m) : Error("BranchLost: " + m) {}
};
struct PoleOnPath : Error {
    explicit PoleOnPath(const std::string& m) : Error("PoleOnPath: " + m) {}
};
struct StiffFailure : Error {
    explicit StiffFailure(const std::string& m) : Error("StiffFailure: " + m) {}
};
struct UsageError : Error {
    explicit UsageError(const std::string& m) : Error("usage: " + m) {}
};

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const Complex& x) { return x == Complex(0.0, 0.0); }

inline double to_double(const Rational& x) { return x.get_d(); }

// mpq_class(n, d) does not canonicalize; this does
inline Rational frac(long n, long d) {
    Rational r(n, d);
    r.canonicalize();
    return r;
}

inline Rational rat_pow(Rational b, unsigned long e) {
    Rational r(1);
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// Parses "a/b", "a", allowing leading '-'.
inline Rational rational_from_string(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw Error("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

}  // namespace heun

#endif
