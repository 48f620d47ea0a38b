#include "divsum/semilocal.hpp"

#include <algorithm>
#include <cmath>

#include "divsum/bounds.hpp"
#include "divsum/detail/parallel.hpp"
#include "divsum/detail/trig.hpp"

namespace divsum {

std::complex<long double> s_of_t(const MuSequence& mu, long long v0, long long span,
                                 long double t) {
    std::complex<long double> total{0.0L, 0.0L};
    for (const auto& [k, m] : mu.mu) {
        const long double angle =
            2.0L * detail::pi_ld * static_cast<long double>(v0 + span * k) * t;
        total += to_ld(m) * std::complex<long double>{std::cos(angle), std::sin(angle)};
    }
    return total;
}

namespace {

// a(l/d) with every phase reduced exactly; ell may be negative.
std::complex<long double> symbol_at(const CouplingSpec& spec, long long ell, long long d) {
    const LatticeLaw& base = spec.base();
    const long double t = static_cast<long double>(ell) / static_cast<long double>(d);

    std::complex<long double> tau_part{0.0L, 0.0L};
    for (const auto& [k, tk] : spec.tau().tau)
        tau_part += to_ld(tk) * detail::unit_phase(base.value_at(k) * ell, d);
    std::complex<long double> mu_part{0.0L, 0.0L};
    for (const auto& [k, mk] : spec.mu().mu)
        mu_part += to_ld(mk) * detail::unit_phase(base.value_at(k) * ell, d);

    // e^{i pi l / d} with the half-angle reduced mod 2d
    const long long r = detail::pos_mod(ell, 2 * d);
    const long double half_angle = detail::pi_ld * static_cast<long double>(r) /
                                   static_cast<long double>(d);
    const std::complex<long double> gauss =
        std::exp(-detail::pi_ld * detail::pi_ld * t * t / 2.0L) *
        std::complex<long double>{std::cos(half_angle), std::sin(half_angle)};
    return gauss * tau_part + mu_part;
}

}  // namespace

std::complex<long double> per_factor_symbol(const CouplingSpec& spec, long double t) {
    const LatticeLaw& base = spec.base();
    std::complex<long double> tau_part{0.0L, 0.0L};
    for (const auto& [k, tk] : spec.tau().tau) {
        const long double angle =
            2.0L * detail::pi_ld * static_cast<long double>(base.value_at(k)) * t;
        tau_part += to_ld(tk) * std::complex<long double>{std::cos(angle), std::sin(angle)};
    }
    const std::complex<long double> gauss =
        std::exp(std::complex<long double>{-detail::pi_ld * detail::pi_ld * t * t / 2.0L,
                                           detail::pi_ld * t});
    return gauss * tau_part + s_of_t(spec.mu(), base.v0(), base.span(), t);
}

long double approximant(const CouplingSpec& spec, const DivisibilityQuery& q) {
    q.validate();
    const long long d = q.d;
    const long long u = detail::pos_mod(q.u, d);

    std::complex<long double> total{0.0L, 0.0L};
    for (long long ell = -(d - 1); ell <= d - 1; ++ell) {
        const std::complex<long double> phase = detail::unit_phase(u * ell, d);
        total += phase * detail::pow_n(symbol_at(spec, ell, d), q.n);
    }
    total /= static_cast<long double>(d);
    if (std::abs(total.imag()) > 1e-10L)
        throw numeric_error("approximant imaginary residue " +
                            std::to_string(static_cast<double>(total.imag())) +
                            " exceeds tolerance");
    return total.real();
}

ScanSummary discrepancy_scan(const CouplingSpec& spec, const std::vector<long long>& n_set,
                             long long d_min, long long d_max,
                             const std::vector<long long>& u_set, double rho,
                             int workers) {
    const double vartheta = to_d(spec.vartheta());
    if (!(rho > 1.0 - vartheta && rho < 1.0))
        throw validation_error("rho must lie in (1 - vartheta, 1)");
    ScanSummary out;
    out.rho = rho;
    out.theta = solve_theta(vartheta, rho);

    std::vector<long long> d_values;
    for (long long d = std::max<long long>(2, d_min); d <= d_max; ++d) d_values.push_back(d);

    for (long long n : n_set) {
        const long double logn = std::log(static_cast<long double>(n));
        const long double smooth = std::pow(logn, 2.5L) /
                                   (std::pow(static_cast<long double>(out.theta), 1.5L) *
                                    std::pow(static_cast<long double>(n), 1.5L));
        const long double chernoff =
            2.0L * detail::pow_n(static_cast<long double>(rho), n);

        std::vector<std::vector<DiscrepancyRecord>> rows(d_values.size());
        detail::parallel_for(0, static_cast<long long>(d_values.size()), workers,
                             [&](long long i) {
                                 const long long d = d_values[static_cast<std::size_t>(i)];
                                 ResidueDistribution exact(spec.base(), n, d);
                                 for (long long u : u_set) {
                                     DiscrepancyRecord rec;
                                     rec.query = DivisibilityQuery{n, d, u};
                                     rec.exact = exact.prob_divisible(u);
                                     rec.approx = approximant(spec, rec.query);
                                     rec.abs_error =
                                         std::abs(to_ld(rec.exact) - rec.approx);
                                     rec.bound_smooth = smooth;
                                     rec.bound_chernoff = chernoff;
                                     rows[static_cast<std::size_t>(i)].push_back(rec);
                                 }
                             });

        long double sup = 0.0L;
        for (auto& row : rows)
            for (auto& rec : row) {
                sup = std::max(sup, rec.abs_error);
                out.records.push_back(std::move(rec));
            }
        out.sup_by_n[n] = sup;
    }

    double c_emp = 0.0;
    for (const auto& [n, sup] : out.sup_by_n) {
        const double logn = std::log(static_cast<double>(n));
        c_emp = std::max(c_emp, static_cast<double>(sup) *
                                    std::pow(out.theta, 1.5) *
                                    std::pow(static_cast<double>(n), 1.5) /
                                    std::pow(logn, 2.5));
    }
    out.c_emp = c_emp;
    return out;
}

}  // namespace divsum
