#pragma once

#include <gmpxx.h>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace nearmiss::exactcore {

// All acceptance decisions (is this triple a hit?) are made with exact
// integer arithmetic; floats only ever shape candidate boxes.
using Integer  = mpz_class;
using Rational = mpq_class;

inline Integer ipow(const Integer& base, unsigned long exp) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline Integer isqrt(const Integer& n) {
    if (n < 0) throw std::domain_error("isqrt: negative input");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// The integer y >= 0 minimizing |x^3 - y^2|; ties (cannot occur, by parity)
// would break toward the smaller y.
inline Integer nearest_to_x32(const Integer& x) {
    if (x < 1) throw std::domain_error("nearest_to_x32: x must be >= 1");
    Integer cube = x * x * x;
    Integer lo = isqrt(cube);
    Integer hi = lo + 1;
    Integer dlo = cube - lo * lo;
    Integer dhi = hi * hi - cube;
    return dhi < dlo ? hi : lo;
}

// z^n - y^n - x^n
inline Integer power_residual(unsigned n, const Integer& x, const Integer& y,
                              const Integer& z) {
    if (n < 2) throw std::domain_error("power_residual: n must be >= 2");
    return ipow(z, n) - ipow(y, n) - ipow(x, n);
}

// 4x^3 - 3y^2 expressed in the (zeta, eta, xi) coordinates
// x = 3 zeta^2 + eta, y = 6 zeta^3 + 3 eta zeta + xi.
// Expansion: 9 z^2 e^2 + 4 e^3 - 36 z^3 xi - 18 e z xi - 3 xi^2.
inline Integer hall_raw_residual(const Integer& zeta, const Integer& eta,
                                 const Integer& xi) {
    Integer z2 = zeta * zeta;
    Integer e2 = eta * eta;
    return 9 * z2 * e2 + 4 * e2 * eta - 36 * z2 * zeta * xi -
           18 * eta * zeta * xi - 3 * xi * xi;
}

inline Integer integer_from_i128(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? -(unsigned __int128)v : (unsigned __int128)v;
    Integer hi((unsigned long)(u >> 64));
    Integer out = (hi << 64) + (unsigned long)(u & ~0UL);
    return neg ? Integer(-out) : out;
}

// Fast unsigned-128 integer sqrt, used by the direct Hall scan where x^3
// still fits in 128 bits.
inline unsigned __int128 isqrt_u128(unsigned __int128 n) {
    if (n == 0) return 0;
    unsigned __int128 r = (unsigned __int128)std::sqrt((double)n);
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace nearmiss::exactcore
