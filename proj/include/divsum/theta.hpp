#pragma once

namespace divsum {

/// A truncated theta sum together with its truncation certificate.
struct ThetaValue {
    long double value = 0.0L;
    long long truncation_radius = 0;  // L: terms |l| <= L were summed
    long double tail_bound = 0.0L;    // certified bound on the omitted mass
    long long drift = 0;              // u
};

/// Drifted theta sum sum_l e^{i pi (2u+n) l / d} e^{-n pi^2 l^2 / (2 d^2)},
/// truncated at a radius whose geometric-majorant tail is below tol.
/// The symmetric partial sum is real up to rounding; the imaginary residue
/// is checked against 1e-14 of the magnitude.
ThetaValue theta_u(long long d, long long n, long long u, long double tol = 1e-16L);

/// sqrt(2/(pi n)) * sum over z = -u (mod d) of e^{-(2z-n)^2/(2n)};
/// terms below 1e-18 of the running sum are dropped. Equals
/// theta_u(d,n,u)/d by Poisson summation.
long double gaussian_residue_sum(long long d, long long n, long long u);

struct PoissonPair {
    long double lhs;  // sum_l e^{-(l+delta)^2 pi / x}
    long double rhs;  // x^{1/2} sum_l e^{2 i pi l delta - l^2 pi x}, real part
};

/// Both sides of the Poisson summation identity, truncated to tails
/// below 1e-16 of the totals.
PoissonPair poisson_check(long double x, long double delta);

struct ThetaTail {
    long double remainder;  // r = sum_{j >= d/2} e^{-n pi^2 j^2 / (2 d^2)}
    long double reference;  // e^{-pi^2 n / 72}
    long double ratio;      // remainder / reference
};

/// Exact tail of the theta sum beyond |l| < d/2, measured against the
/// e^{-pi^2 n/72} envelope.
ThetaTail theta_tail_bound(long long d, long long n);

}  // namespace divsum
