#ifndef HEUN_MODULAR_HPP
#define HEUN_MODULAR_HPP

#include <cstdint>
#include <vector>

#include "heun/poly.hpp"

namespace heun {

// gcd that switches to a CRT/evaluation scheme for large operands
PolyQ poly_gcd_adaptive(const PolyQ& a, const PolyQ& b);
PolyQ gcd_modular(const PolyQ& a, const PolyQ& b);

PolyQ squarefree_part_adaptive(const PolyQ& p);

namespace modp {
uint64_t next_prime_below(uint64_t n);
std::vector<uint64_t> reduce_poly(const PolyQ& p, uint64_t prime, bool& ok);
uint64_t resultant_zp(std::vector<uint64_t> f, std::vector<uint64_t> g, uint64_t p);
}  // namespace modp

}  // namespace heun

#endif
