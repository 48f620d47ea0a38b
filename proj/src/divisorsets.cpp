#include "divsum/divisorsets.hpp"

#include <algorithm>
#include <cmath>

#include "divsum/detail/trig.hpp"
#include "divsum/exactprob.hpp"

namespace divsum {

DivisorTestSet::DivisorTestSet(std::string kind, std::vector<long long> members)
    : kind_(std::move(kind)), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    for (long long d : members_)
        if (d < 2) throw validation_error("divisor test sets require members >= 2");
}

DivisorTestSet DivisorTestSet::from_list(std::vector<long long> members) {
    return DivisorTestSet("list", std::move(members));
}

DivisorTestSet DivisorTestSet::primes_up_to(long long bound) {
    std::vector<bool> sieve(static_cast<std::size_t>(std::max<long long>(bound + 1, 2)), true);
    std::vector<long long> primes;
    for (long long p = 2; p <= bound; ++p) {
        if (!sieve[static_cast<std::size_t>(p)]) continue;
        primes.push_back(p);
        for (long long q = p * p; q <= bound; q += p) sieve[static_cast<std::size_t>(q)] = false;
    }
    return DivisorTestSet("primes", std::move(primes));
}

DivisorTestSet DivisorTestSet::range(long long lo, long long hi) {
    if (lo < 2) lo = 2;
    std::vector<long long> members;
    for (long long d = lo; d <= hi; ++d) members.push_back(d);
    return DivisorTestSet("range", std::move(members));
}

DivisorTestSet DivisorTestSet::section(long long phi) const {
    std::vector<long long> kept;
    for (long long d : members_) {
        if (d > phi) break;
        kept.push_back(d);
    }
    return DivisorTestSet(kind_, std::move(kept));
}

double averaged_discrepancy(const LatticeLaw& law, long long n, const DivisorTestSet& ts,
                            long long phi, long long u) {
    const DivisorTestSet sec = ts.section(phi);
    if (sec.empty()) throw validation_error("empty divisor section at height " +
                                            std::to_string(phi));
    long double total = 0.0L;
    for (long long d : sec.members()) {
        ResidueDistribution dist(law, n, d);
        total += std::abs(to_ld(dist.prob_divisible(u)) -
                          1.0L / static_cast<long double>(d));
    }
    return static_cast<double>(total / static_cast<long double>(sec.members().size()));
}

SeriesOfSups series_of_sups(const LatticeLaw& law, const CouplingSpec& coupling,
                            const DivisorTestSet& ts, long long n_from, long long n_to,
                            const std::vector<long long>& u_set,
                            const std::vector<long long>& phi_set) {
    if (ts.empty()) throw validation_error("empty divisor test set");
    if (n_from < 1 || n_to < n_from) throw validation_error("need 1 <= n_from <= n_to");
    if (u_set.empty() || phi_set.empty())
        throw validation_error("u_set and phi_set must be nonempty");

    // one incremental residue walker per divisor
    std::vector<ResidueWalker> walkers;
    walkers.reserve(ts.members().size());
    for (long long d : ts.members()) walkers.emplace_back(law, d);

    // members per section, as prefix lengths of the sorted member list
    std::vector<std::size_t> section_size;
    for (long long phi : phi_set) {
        std::size_t c = 0;
        while (c < ts.members().size() && ts.members()[c] <= phi) ++c;
        section_size.push_back(c);
    }

    SeriesOfSups out;
    out.n_from = n_from;
    out.n_to = n_to;
    out.vartheta = coupling.vartheta();

    std::vector<long double> disc(ts.members().size());
    for (long long n = 1; n <= n_to; ++n) {
        for (auto& w : walkers) w.step();
        if (n < n_from) continue;
        long double best = 0.0L;
        for (long long u : u_set) {
            for (std::size_t i = 0; i < walkers.size(); ++i)
                disc[i] = walkers[i].abs_discrepancy_ld(u);
            long double prefix = 0.0L;
            std::size_t covered = 0;
            for (std::size_t si = 0; si < section_size.size(); ++si) {
                // phi_set need not be sorted; recompute prefix when it shrinks
                if (section_size[si] < covered) {
                    prefix = 0.0L;
                    covered = 0;
                }
                while (covered < section_size[si]) prefix += disc[covered++];
                if (section_size[si] == 0) continue;
                best = std::max(best, prefix / static_cast<long double>(section_size[si]));
            }
        }
        out.per_n_max.emplace_back(n, static_cast<double>(best));
        out.partial_sum += static_cast<double>(best);
    }
    return out;
}

double log_power_series(long long N) {
    if (N < 2) throw validation_error("series starts at N >= 2");
    const long long cutoff = std::max<long long>(N + 1, 1 << 20);
    long double sum = 0.0L;
    for (long long n = N; n <= cutoff; ++n) {
        const long double logn = std::log(static_cast<long double>(n));
        sum += std::pow(logn, 2.5L) / (static_cast<long double>(n) *
                                       std::sqrt(static_cast<long double>(n)));
    }
    // tail: integral of (log x)^{5/2} x^{-3/2} from cutoff + 1/2, via x = e^t
    const long double t0 = std::log(static_cast<long double>(cutoff) + 0.5L);
    auto integrand = [](long double t) { return std::pow(t, 2.5L) * std::exp(-t / 2.0L); };
    // composite Simpson on [t0, t0 + 120]; the integrand decays like e^{-t/2}
    const int panels = 4096;
    const long double h = 120.0L / panels;
    long double integral = integrand(t0) + integrand(t0 + 120.0L);
    for (int i = 1; i < panels; ++i)
        integral += integrand(t0 + h * i) * ((i & 1) ? 4.0L : 2.0L);
    integral *= h / 3.0L;
    return static_cast<double>(sum + integral);
}

double series_bound_rhs(double vartheta, double theta, double rho, double c_emp, long long N) {
    if (!(vartheta > 0 && vartheta < 1))
        throw validation_error("vartheta must lie in (0, 1)");
    if (!(theta > 0 && theta <= vartheta))
        throw validation_error("theta must lie in (0, vartheta]");
    if (!(rho > 0 && rho < 1)) throw validation_error("rho must lie in (0, 1)");
    const double pi2 = detail::pi_ld * detail::pi_ld;
    const double c1 = 2.0 * std::exp(pi2 / 4.0) / (1.0 - std::exp(-pi2 / 16.0));
    const double c2 = c_emp * log_power_series(N);
    return c1 / vartheta + c2 / std::pow(theta, 1.5) + 2.0 * rho * rho / (1.0 - rho);
}

double remark52_sum(long long m, long long phi) {
    if (m < 1) throw validation_error("m must be >= 1");
    if (phi < 2) throw validation_error("phi must be >= 2");
    long double total = 0.0L;
    for (long long d = 2; d < phi; ++d) {
        long double inner = 0.0L;
        for (long long l = 1; l < d; ++l)
            inner += std::exp(-static_cast<long double>(m) * detail::pi_ld * detail::pi_ld *
                              static_cast<long double>(l * l) /
                              (2.0L * static_cast<long double>(d * d)));
        total += inner / static_cast<long double>(d);
    }
    return static_cast<double>(total / static_cast<long double>(phi));
}

double negative_binomial_partial(double x, long long z, long long vmax) {
    if (!(std::abs(x) < 1.0)) throw validation_error("need |x| < 1");
    if (z < 0 || vmax < 0) throw validation_error("need z >= 0 and vmax >= 0");
    long double term = 1.0L;  // C(z, z) x^0
    long double sum = term;
    for (long long v = 1; v <= vmax; ++v) {
        term *= static_cast<long double>(v + z) / static_cast<long double>(v) *
                static_cast<long double>(x);
        sum += term;
    }
    return static_cast<double>(sum);
}

double negative_binomial_closed(double x, long long z) {
    if (!(std::abs(x) < 1.0)) throw validation_error("need |x| < 1");
    return static_cast<double>(
        std::pow(1.0L - static_cast<long double>(x), -static_cast<long double>(z) - 1.0L));
}

}  // namespace divsum
