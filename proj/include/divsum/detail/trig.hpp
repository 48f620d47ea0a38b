#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace divsum::detail {

inline constexpr long double pi_ld = std::numbers::pi_v<long double>;

/// a mod m in [0, m), correct for negative a.
inline long long pos_mod(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

/// e^{2 i pi a / m} with the angle reduced in integer arithmetic first,
/// so huge a (drifts, lattice values) lose no precision.
inline std::complex<long double> unit_phase(long long a, long long m) {
    const long long r = pos_mod(a, m);
    const long double angle = 2.0L * pi_ld * static_cast<long double>(r) / static_cast<long double>(m);
    return {std::cos(angle), std::sin(angle)};
}

/// cos(pi a / m), reduced mod 2m.
inline long double cos_pi_ratio(long long a, long long m) {
    const long long r = pos_mod(a, 2 * m);
    return std::cos(pi_ld * static_cast<long double>(r) / static_cast<long double>(m));
}

/// z^n by binary exponentiation; stable for |z| <= 1.
inline std::complex<long double> pow_n(std::complex<long double> z, long long n) {
    std::complex<long double> acc{1.0L, 0.0L};
    while (n > 0) {
        if (n & 1) acc *= z;
        z *= z;
        n >>= 1;
    }
    return acc;
}

/// x^n for real x, sign handled exactly for integer exponents.
inline long double pow_n(long double x, long long n) {
    long double acc = 1.0L;
    while (n > 0) {
        if (n & 1) acc *= x;
        x *= x;
        n >>= 1;
    }
    return acc;
}

}  // namespace divsum::detail
