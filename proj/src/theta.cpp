#include "divsum/theta.hpp"

#include <cmath>
#include <complex>

#include "divsum/detail/trig.hpp"
#include "divsum/rational.hpp"

namespace divsum {

namespace {

// tail of 2 * sum_{l > L} e^{-c l^2} via the majorant e^{-c L l}
long double majorant_tail(long double c, long long big_l) {
    const long double step = std::exp(-c * static_cast<long double>(big_l));
    if (step >= 1.0L) return std::numeric_limits<long double>::infinity();
    return 2.0L * std::exp(-c * static_cast<long double>(big_l) *
                           static_cast<long double>(big_l + 1)) /
           (1.0L - step);
}

}  // namespace

ThetaValue theta_u(long long d, long long n, long long u, long double tol) {
    if (d < 2) throw validation_error("d must be >= 2");
    if (n < 1) throw validation_error("n must be >= 1");
    if (!(tol > 0.0L)) throw validation_error("tol must be positive");

    const long double c = static_cast<long double>(n) * detail::pi_ld * detail::pi_ld /
                          (2.0L * static_cast<long double>(d) * static_cast<long double>(d));
    long long big_l =
        1 + static_cast<long long>(std::ceil(std::sqrt(std::max(0.0L, std::log(1.0L / tol) / c))));
    while (majorant_tail(c, big_l) >= tol) ++big_l;

    // phase period: e^{i pi m l / d} repeats in m with period 2d
    const long long m = 2 * detail::pos_mod(u, d) + detail::pos_mod(n, 2 * d);
    std::complex<long double> total{1.0L, 0.0L};  // l = 0 term
    for (long long l = 1; l <= big_l; ++l) {
        const long double damp = std::exp(-c * static_cast<long double>(l) *
                                          static_cast<long double>(l));
        if (damp == 0.0L) break;
        const long long r = detail::pos_mod(m * l, 2 * d);
        const long double angle = detail::pi_ld * static_cast<long double>(r) /
                                  static_cast<long double>(d);
        total += damp * std::complex<long double>{std::cos(angle), std::sin(angle)};
        const long long r2 = detail::pos_mod(-m * l, 2 * d);
        const long double angle2 = detail::pi_ld * static_cast<long double>(r2) /
                                   static_cast<long double>(d);
        total += damp * std::complex<long double>{std::cos(angle2), std::sin(angle2)};
    }
    const long double scale = std::max(1.0L, std::abs(total.real()));
    if (std::abs(total.imag()) > 1e-14L * scale)
        throw numeric_error("theta sum imaginary residue exceeds tolerance");
    return ThetaValue{total.real(), big_l, majorant_tail(c, big_l), u};
}

long double gaussian_residue_sum(long long d, long long n, long long u) {
    if (d < 2) throw validation_error("d must be >= 2");
    if (n < 1) throw validation_error("n must be >= 1");
    const long double inv2n = 1.0L / (2.0L * static_cast<long double>(n));
    auto term = [&](long long z) {
        const long double x = static_cast<long double>(2 * z - n);
        return std::exp(-x * x * inv2n);
    };
    // walk outward from the residue-class point nearest n/2
    const long long z0 = detail::pos_mod(-u, d);
    const long long zc = z0 + d * ((n / 2 - z0) / d);
    long double total = term(zc);
    for (int dir : {+1, -1}) {
        long long z = zc;
        while (true) {
            z += dir * d;
            const long double t = term(z);
            total += t;
            if (t == 0.0L || t < 1e-18L * total) break;
        }
    }
    return std::sqrt(2.0L / (detail::pi_ld * static_cast<long double>(n))) * total;
}

PoissonPair poisson_check(long double x, long double delta) {
    if (!(x > 0.0L)) throw validation_error("x must be positive");

    long double lhs = 0.0L;
    {
        const long long center = static_cast<long long>(std::llround(-delta));
        auto term = [&](long long l) {
            const long double a = (static_cast<long double>(l) + delta);
            return std::exp(-a * a * detail::pi_ld / x);
        };
        lhs = term(center);
        for (int dir : {+1, -1}) {
            long long l = center;
            while (true) {
                l += dir;
                const long double t = term(l);
                lhs += t;
                if (t == 0.0L || t < 1e-18L * lhs) break;
            }
        }
    }

    std::complex<long double> rhs{1.0L, 0.0L};
    for (long long l = 1;; ++l) {
        const long double damp =
            std::exp(-static_cast<long double>(l) * static_cast<long double>(l) *
                     detail::pi_ld * x);
        const long double angle = 2.0L * detail::pi_ld * static_cast<long double>(l) * delta;
        rhs += damp * std::complex<long double>{std::cos(angle), std::sin(angle)};
        rhs += damp * std::complex<long double>{std::cos(angle), -std::sin(angle)};
        if (damp == 0.0L || 2.0L * damp < 1e-18L * std::abs(rhs.real())) break;
    }
    return PoissonPair{lhs, std::sqrt(x) * rhs.real()};
}

ThetaTail theta_tail_bound(long long d, long long n) {
    if (d < 2) throw validation_error("d must be >= 2");
    if (n < 2) throw validation_error("n must be >= 2");
    const long double c = static_cast<long double>(n) * detail::pi_ld * detail::pi_ld /
                          (2.0L * static_cast<long double>(d) * static_cast<long double>(d));
    long double r = 0.0L;
    for (long long j = (d + 1) / 2;; ++j) {
        const long double t =
            std::exp(-c * static_cast<long double>(j) * static_cast<long double>(j));
        r += t;
        if (t < 1e-18L * r || t == 0.0L) break;
    }
    const long double reference =
        std::exp(-detail::pi_ld * detail::pi_ld * static_cast<long double>(n) / 72.0L);
    return ThetaTail{r, reference, r / reference};
}

}  // namespace divsum
