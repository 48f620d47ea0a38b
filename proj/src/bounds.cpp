#include "divsum/bounds.hpp"

#include <cmath>
#include <sstream>

#include "divsum/detail/trig.hpp"

namespace divsum {

namespace {

long double log_psi(long double vartheta, long double theta) {
    return (1.0L - theta) * (std::log1p(-vartheta) - std::log1p(-theta)) +
           theta * (std::log(vartheta) - std::log(theta));
}

}  // namespace

double psi(double vartheta, double theta) {
    if (!(vartheta > 0.0 && vartheta < 1.0))
        throw validation_error("vartheta must lie in (0, 1)");
    if (!(theta > 0.0 && theta <= vartheta))
        throw validation_error("theta must lie in (0, vartheta]");
    return static_cast<double>(std::exp(log_psi(vartheta, theta)));
}

double solve_theta(double vartheta, double rho) {
    if (!(vartheta > 0.0 && vartheta < 1.0))
        throw validation_error("vartheta must lie in (0, 1)");
    if (!(rho > 1.0 - vartheta && rho < 1.0))
        throw validation_error("rho must lie in (1 - vartheta, 1)");
    long double lo = 0.0L;  // psi -> 1 - vartheta < rho there
    long double hi = vartheta;
    const long double target = std::log(static_cast<long double>(rho));
    for (int iter = 0; iter < 200; ++iter) {
        const long double mid = (lo + hi) / 2.0L;
        const long double v = log_psi(vartheta, mid);
        if (std::abs(std::exp(v) - static_cast<long double>(rho)) <= 1e-13L)
            return static_cast<double>(mid);
        if (v < target)
            lo = mid;
        else
            hi = mid;
    }
    return static_cast<double>((lo + hi) / 2.0L);
}

ChernoffComparison chernoff_vs_exact(const Rat& vartheta, const Rat& theta, long long n) {
    if (n < 1) throw validation_error("n must be >= 1");
    if (!(vartheta > 0 && vartheta < 1))
        throw validation_error("vartheta must lie in (0, 1)");
    if (!(theta > 0 && theta <= vartheta))
        throw validation_error("theta must lie in (0, vartheta]");

    const Int kmax_int = rat_floor(theta * n);
    const long long kmax = kmax_int.convert_to<long long>();

    // sum_{k<=kmax} C(n,k) vartheta^k (1-vartheta)^{n-k}, all exact
    const Rat one_minus = 1 - vartheta;
    Rat term = rat_pow(one_minus, static_cast<unsigned>(n));  // k = 0
    Rat tail = term;
    for (long long k = 1; k <= kmax; ++k) {
        term *= vartheta * Rat(n - k + 1, k) / one_minus;
        tail += term;
    }

    const double bound =
        static_cast<double>(std::exp(static_cast<long double>(n) *
                                     log_psi(to_ld(vartheta), to_ld(theta))));
    return ChernoffComparison{bound, tail};
}

RegimeReport smallcase_regimes(long long n, double alpha, double alpha_prime, double rho,
                               double eps) {
    if (n < 2) throw validation_error("n must be >= 2");
    if (!(alpha > alpha_prime && alpha_prime > 0))
        throw validation_error("need alpha > alpha' > 0");
    if (!(rho > 0 && rho < 1)) throw validation_error("rho must lie in (0, 1)");
    if (!(eps > 0 && eps < 1)) throw validation_error("eps must lie in (0, 1)");

    auto sinc_half = [](double x) { return std::sin(x / 2) / (x / 2); };

    RegimeReport r;
    r.n = n;
    r.alpha = alpha;
    r.alpha_prime = alpha_prime;
    r.rho = rho;
    r.eps = eps;

    const double logn = std::log(static_cast<double>(n));
    r.phi_n = std::sqrt(2.0 * alpha * logn / static_cast<double>(n));
    r.tau_n = sinc_half(r.phi_n);
    r.regime_i_ok = r.tau_n >= std::sqrt(alpha_prime / alpha);
    r.d_limit_i = detail::pi_ld * std::sqrt(static_cast<double>(n) / (2.0 * alpha * logn));
    r.bound_i = std::pow(static_cast<double>(n), -alpha_prime);

    r.psi_n = std::sqrt(2.0 * std::pow(static_cast<double>(n), rho) / static_cast<double>(n));
    r.tau_tilde_n = sinc_half(r.psi_n);
    r.regime_ii_ok = r.tau_tilde_n >= std::sqrt(1.0 - eps);
    r.d_limit_ii =
        detail::pi_ld / std::sqrt(2.0) * std::pow(static_cast<double>(n), (1.0 - rho) / 2.0);
    r.bound_ii = std::exp(-(1.0 - eps) * std::pow(static_cast<double>(n), rho));
    return r;
}

std::string RegimeReport::to_text() const {
    std::ostringstream os;
    os.precision(12);
    os << "regime-report\n"
       << "n " << n << "\n"
       << "alpha " << alpha << "\n"
       << "alpha_prime " << alpha_prime << "\n"
       << "rho " << rho << "\n"
       << "eps " << eps << "\n"
       << "phi_n " << phi_n << "\n"
       << "tau_n " << tau_n << "\n"
       << "regime_i_ok " << (regime_i_ok ? "yes" : "no") << "\n"
       << "d_limit_i " << d_limit_i << "\n"
       << "bound_i " << bound_i << "\n"
       << "psi_n " << psi_n << "\n"
       << "tau_tilde_n " << tau_tilde_n << "\n"
       << "regime_ii_ok " << (regime_ii_ok ? "yes" : "no") << "\n"
       << "d_limit_ii " << d_limit_ii << "\n"
       << "bound_ii " << bound_ii << "\n";
    return os.str();
}

HolderPair holder_power_check(double vartheta, long long ell, long long d, long long n,
                              long long p) {
    if (p < 2) throw validation_error("p must be an integer >= 2");
    if (d < 2) throw validation_error("d must be >= 2");
    if (ell < 1 || ell >= d) throw validation_error("ell must satisfy 1 <= ell < d");
    if (!(vartheta >= 0.0 && vartheta <= 1.0))
        throw validation_error("vartheta must lie in [0, 1]");
    const long double g = detail::pi_ld * detail::pi_ld * static_cast<long double>(ell * ell) /
                          (2.0L * static_cast<long double>(d) * static_cast<long double>(d));
    const long double vt = static_cast<long double>(vartheta);
    const long double lhs =
        detail::pow_n(std::exp(-g) * vt + (1.0L - vt), n * p);
    const long double rhs =
        detail::pow_n(std::exp(-g * static_cast<long double>(p)) * vt + (1.0L - vt), n);
    return HolderPair{static_cast<double>(lhs), static_cast<double>(rhs)};
}

}  // namespace divsum
