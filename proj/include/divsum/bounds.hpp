#pragma once

#include <string>

#include "divsum/rational.hpp"

namespace divsum {

/// Chernoff rate ((1-vartheta)/(1-theta))^{1-theta} (vartheta/theta)^theta,
/// evaluated in log space. Requires 0 < theta <= vartheta < 1.
/// psi(vartheta, vartheta) = 1 and psi -> 1 - vartheta as theta -> 0+.
double psi(double vartheta, double theta);

/// The unique theta in (0, vartheta) with psi(vartheta, theta) = rho,
/// found by bisection on the nondecreasing psi; |psi(theta) - rho| <= 1e-12.
/// Requires 1 - vartheta < rho < 1.
double solve_theta(double vartheta, double rho);

struct ChernoffComparison {
    double bound;    // psi(vartheta, theta)^n
    Rat exact_tail;  // P{B_n <= theta n}, exact binomial sum
};

/// Exact binomial tail P{B_n <= floor(theta n)} against the Chernoff bound
/// psi^n. The threshold floor is taken in exact rational arithmetic, so
/// integer ties are included.
ChernoffComparison chernoff_vs_exact(const Rat& vartheta, const Rat& theta, long long n);

/// Validity conditions and admissible divisor ranges for the two
/// small-divisor regimes: the polynomial-decay window
/// d < pi sqrt(n/(2 alpha log n)) with bound n^{-alpha'}, and the
/// stretched-exponential window d < (pi/sqrt 2) n^{(1-rho)/2} with bound
/// e^{-(1-eps) n^rho}.
struct RegimeReport {
    long long n = 0;
    double alpha = 0, alpha_prime = 0, rho = 0, eps = 0;

    double phi_n = 0;       // sqrt(2 alpha log n / n)
    double tau_n = 0;       // sin(phi_n/2)/(phi_n/2)
    bool regime_i_ok = false;   // tau_n >= sqrt(alpha'/alpha)
    double d_limit_i = 0;   // pi sqrt(n/(2 alpha log n))
    double bound_i = 0;     // n^{-alpha'}

    double psi_n = 0;       // sqrt(2 n^rho / n)
    double tau_tilde_n = 0; // sin(psi_n/2)/(psi_n/2)
    bool regime_ii_ok = false;  // tau_tilde_n >= sqrt(1 - eps)
    double d_limit_ii = 0;  // (pi/sqrt 2) n^{(1-rho)/2}
    double bound_ii = 0;    // e^{-(1-eps) n^rho}

    std::string to_text() const;
};

RegimeReport smallcase_regimes(long long n, double alpha, double alpha_prime, double rho,
                               double eps);

struct HolderPair {
    double lhs;  // (e^{-pi^2 l^2/(2d^2)} vartheta + 1 - vartheta)^{np}
    double rhs;  // (e^{-pi^2 p l^2/(2d^2)} vartheta + 1 - vartheta)^{n}
};

/// Power-mean comparison behind splitting S_{np} into S_n blocks:
/// lhs <= rhs for every integer p >= 2.
HolderPair holder_power_check(double vartheta, long long ell, long long d, long long n,
                              long long p);

}  // namespace divsum
