#pragma once

#include <string>
#include <vector>

#include "divsum/coupling.hpp"
#include "divsum/lattice.hpp"

namespace divsum {

/// A set of candidate moduli >= 2 with its provenance tag.
class DivisorTestSet {
public:
    static DivisorTestSet from_list(std::vector<long long> members);
    static DivisorTestSet primes_up_to(long long bound);
    static DivisorTestSet range(long long lo, long long hi);  // all integers in [lo, hi]

    const std::vector<long long>& members() const noexcept { return members_; }
    const std::string& kind() const noexcept { return kind_; }
    bool empty() const noexcept { return members_.empty(); }

    /// {d in set : d <= phi}.
    DivisorTestSet section(long long phi) const;

private:
    DivisorTestSet(std::string kind, std::vector<long long> members);
    std::string kind_;
    std::vector<long long> members_;  // sorted, deduplicated, all >= 2
};

/// (1/|D_phi|) sum over the section of |P{d | S_n + u} - 1/d|,
/// exact-convolution route. Throws on an empty section.
double averaged_discrepancy(const LatticeLaw& law, long long n, const DivisorTestSet& ts,
                            long long phi, long long u);

struct SeriesOfSups {
    double partial_sum = 0.0;
    long long n_from = 0, n_to = 0;
    std::vector<std::pair<long long, double>> per_n_max;  // n -> max_{u, phi} averaged value
    Rat vartheta;                                         // from the coupling, for reporting
};

/// sum_{n = n_from}^{n_to} max over u_set x phi_set of the averaged
/// discrepancy. Exact probabilities come from per-divisor residue walkers
/// advanced once per n. Sections with no members are skipped.
SeriesOfSups series_of_sups(const LatticeLaw& law, const CouplingSpec& coupling,
                            const DivisorTestSet& ts, long long n_from, long long n_to,
                            const std::vector<long long>& u_set,
                            const std::vector<long long>& phi_set);

/// C1/vartheta + C2/theta^{3/2} + 2 rho^2/(1-rho) with
/// C1 = 2 e^{pi^2/4} / (1 - e^{-pi^2/16}) and
/// C2 = c_emp * sum_{n=N}^infty (log n)^{5/2} n^{-3/2}.
double series_bound_rhs(double vartheta, double theta, double rho, double c_emp, long long N);

/// sum_{n=N}^infty (log n)^{5/2} n^{-3/2}: direct summation plus a
/// certified integral tail, accurate to relative 1e-10.
double log_power_series(long long N);

/// (1/phi) sum_{2 <= d < phi} (1/d) sum_{1 <= l < d} e^{-m pi^2 l^2 / (2 d^2)}.
/// Decays like 1/sqrt(m).
double remark52_sum(long long m, long long phi);

/// Partial sum of sum_v C(v+z, z) x^v up to v = vmax.
double negative_binomial_partial(double x, long long z, long long vmax);
/// Its limit 1/(1-x)^{z+1}.
double negative_binomial_closed(double x, long long z);

}  // namespace divsum
