#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace circpoly {

// Dense univariate polynomial over Z, ascending coefficients, no trailing zeros.
using ZPoly = std::vector<mpz_class>;

namespace upoly {

int degree(const ZPoly& a);
void trim(ZPoly& a);
mpz_class content(const ZPoly& a);
ZPoly primitive(const ZPoly& a);  // positive leading coefficient
ZPoly add(const ZPoly& a, const ZPoly& b);
ZPoly sub(const ZPoly& a, const ZPoly& b);
ZPoly mul(const ZPoly& a, const ZPoly& b);
ZPoly derivative(const ZPoly& a);
// Exact quotient over Z, or false when b does not divide a.
bool divide(const ZPoly& a, const ZPoly& b, ZPoly& q);
// Primitive gcd with positive leading coefficient.
ZPoly gcd(const ZPoly& a, const ZPoly& b);

struct Factored {
    mpz_class content;
    std::vector<std::pair<ZPoly, int>> factors;  // primitive, positive leading coefficient
};

// Squarefree decomposition of a primitive polynomial (Yun).
std::vector<std::pair<ZPoly, int>> squarefree(const ZPoly& a);
// Complete factorization over Z.
Factored factor(const ZPoly& a);
// Irreducible factors of a squarefree primitive polynomial of positive degree.
std::vector<ZPoly> factor_squarefree(const ZPoly& a);

}  // namespace upoly

// Univariate arithmetic modulo a prime below 2^62.
namespace zp {

using Poly = std::vector<std::uint64_t>;

std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t inverse(std::uint64_t a, std::uint64_t p);

Poly reduce(const ZPoly& a, std::uint64_t p);
void trim(Poly& a);
Poly mul(const Poly& a, const Poly& b, std::uint64_t p);
void divrem(const Poly& a, const Poly& b, Poly& q, Poly& r, std::uint64_t p);
Poly gcd(Poly a, Poly b, std::uint64_t p);  // monic
Poly monic(const Poly& a, std::uint64_t p);
bool is_squarefree(const Poly& a, std::uint64_t p);
// Monic irreducible factors of a monic squarefree polynomial.
std::vector<Poly> factor_squarefree(const Poly& a, std::uint64_t p, std::uint64_t seed);

}  // namespace zp

}  // namespace circpoly
