#include "divsum/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "divsum/detail/trig.hpp"

namespace divsum {

namespace {

const Rat& lookup(const std::vector<std::pair<long long, Rat>>& table, long long k) {
    static const Rat zero = 0;
    auto it = std::lower_bound(table.begin(), table.end(), k,
                               [](const auto& e, long long key) { return e.first < key; });
    if (it != table.end() && it->first == k) return it->second;
    return zero;
}

}  // namespace

const Rat& MuSequence::at(long long k) const { return lookup(mu, k); }
const Rat& TauSequence::at(long long k) const { return lookup(tau, k); }

MuSequence default_mu(const LatticeLaw& law, const Rat& theta) {
    if (law.span() != 1) throw validation_error("default_mu requires a unit-span law");
    const Rat theta_x = theta_characteristic(law);
    if (theta_x == 0) throw validation_error("law has no Bernoulli component (theta_X = 0)");
    if (theta <= 0) throw validation_error("theta must be positive");
    if (theta >= theta_x)
        throw validation_error("theta = " + format_rational(theta) +
                               " must be strictly below theta_X = " + format_rational(theta_x));
    const Rat scale = theta / theta_x;
    MuSequence out;
    out.total = 0;
    for (const auto& [k, p] : law.entries()) {
        const Rat tau_prev = scale * std::min(law.prob(k - 1), p);
        const Rat tau_here = scale * std::min(p, law.prob(k + 1));
        Rat mu_k = p - (tau_prev + tau_here) / 2;
        out.mu.emplace_back(k, mu_k);
        out.total += mu_k;
    }
    return out;
}

TauSequence solve_tau(const LatticeLaw& law, const MuSequence& mu) {
    // mu must align with the support and leave positive removable mass
    for (const auto& [k, m] : mu.mu) {
        const Rat& f = law.prob(k);
        if (f == 0 && m != 0)
            throw validation_error("mu is positive at index " + std::to_string(k) +
                                   " outside the support");
        if (m < 0 || m > f)
            throw validation_error("mu at index " + std::to_string(k) + " outside [0, f(k)]");
    }
    TauSequence out;
    out.theta = 1 - mu.total;
    if (out.theta <= 0) throw validation_error("mu leaves no Bernoulli mass (sum mu >= 1)");

    Rat prev = 0;  // tau below the support is zero
    Rat accounted = 0;
    for (long long k = law.min_index(); k <= law.max_index(); ++k) {
        const Rat x = 2 * (law.prob(k) - mu.at(k));
        Rat tau_k = x - prev;
        if (tau_k < 0)
            throw infeasible_mu_error("no non-negative tau: recursion turns negative at index " +
                                          std::to_string(k),
                                      k);
        if (k == law.max_index() && tau_k != 0)
            throw infeasible_mu_error(
                "no solution: residual " + format_rational(tau_k) +
                    " past the right support edge at index " + std::to_string(k),
                k);
        if (tau_k != 0) out.tau.emplace_back(k, tau_k);
        accounted += tau_k;
        prev = tau_k;
    }
    if (accounted != out.theta)
        throw infeasible_mu_error("tau mass " + format_rational(accounted) +
                                      " does not match 1 - mu = " + format_rational(out.theta),
                                  law.max_index());
    return out;
}

CouplingSpec::CouplingSpec(LatticeLaw base, MuSequence mu, TauSequence tau)
    : base_(std::move(base)),
      mu_(std::move(mu)),
      tau_(std::move(tau)),
      tilde_([&] {
          if (tau_.theta <= 0) throw validation_error("coupling requires sum tau > 0");
          if (mu_.total + tau_.theta != 1)
              throw validation_error("tau and mu masses do not add to 1");
          for (const auto& [k, t] : tau_.tau)
              if (t < 0) throw validation_error("negative tau entry");
          for (const auto& [k, m] : mu_.mu)
              if (m < 0) throw validation_error("negative mu entry");
          // half-sum equation must hold everywhere it can be nonzero
          for (long long k = base_.min_index(); k <= base_.max_index() + 1; ++k) {
              if (tau_.at(k - 1) + tau_.at(k) != 2 * (base_.prob(k) - mu_.at(k)))
                  throw validation_error("tau does not solve the half-sum equation at index " +
                                         std::to_string(k));
          }
          std::vector<LatticeLaw::Entry> entries;
          entries.reserve(tau_.tau.size());
          for (const auto& [k, t] : tau_.tau) entries.emplace_back(k, t / tau_.theta);
          return LatticeLaw(base_.v0(), base_.span(), std::move(entries));
      }()) {}

Rat CouplingSpec::joint(long long k, int eps) const {
    if (eps == 1) return tau_.at(k);
    return mu_.at(k);
}

Rat CouplingSpec::v_marginal(long long k) const {
    return base_.prob(k) + (tau_.at(k) - tau_.at(k - 1)) / 2;
}

CouplingSpec build_coupling(const LatticeLaw& law, const TauSequence& tau, const MuSequence& mu) {
    return CouplingSpec(law, mu, tau);
}

CouplingSpec coupling_from_theta(const LatticeLaw& law, const Rat& theta) {
    MuSequence mu = default_mu(law, theta);
    TauSequence tau = solve_tau(law, mu);
    return build_coupling(law, tau, mu);
}

CouplingSpec coupling_from_tau(const LatticeLaw& law,
                               std::vector<std::pair<long long, Rat>> tau_entries) {
    std::sort(tau_entries.begin(), tau_entries.end());
    TauSequence tau;
    tau.theta = 0;
    for (const auto& [k, t] : tau_entries) {
        if (t < 0) throw validation_error("tau must be non-negative");
        if (t != 0) tau.tau.emplace_back(k, t);
        tau.theta += t;
    }
    if (tau.theta <= 0 || tau.theta > 1)
        throw validation_error("sum tau must lie in (0, 1]");
    MuSequence mu;
    mu.total = 0;
    for (const auto& [k, p] : law.entries()) {
        Rat m = p - (tau.at(k - 1) + tau.at(k)) / 2;
        if (m < 0)
            throw validation_error("tau violates tau_{k-1} + tau_k <= 2 f(k) at index " +
                                   std::to_string(k));
        mu.mu.emplace_back(k, m);
        mu.total += m;
    }
    // tau_k > 0 needs mass at both ends of the step k -> k+1
    for (const auto& [k, t] : tau.tau) {
        if (law.prob(k) == 0 || law.prob(k + 1) == 0)
            throw validation_error("tau at index " + std::to_string(k) +
                                   " exceeds the neighbour-constraint of the support");
    }
    return CouplingSpec(law, mu, tau);
}

LatticeLaw verify_coupling_identity(const CouplingSpec& spec) {
    const LatticeLaw& base = spec.base();
    std::vector<LatticeLaw::Entry> entries;
    // P{Z = v_k} = P{V=v_k, eps=0} + (P{V=v_k, eps=1} + P{V=v_{k-1}, eps=1})/2
    for (long long k = base.min_index(); k <= base.max_index() + 1; ++k) {
        Rat p = spec.joint(k, 0) + (spec.joint(k - 1, 1) + spec.joint(k, 1)) / 2;
        if (p != 0) entries.emplace_back(k, p);
    }
    return LatticeLaw(base.v0(), base.span(), std::move(entries));
}

std::complex<long double> joint_mgf(const CouplingSpec& spec, std::complex<long double> a,
                                    std::complex<long double> b) {
    const LatticeLaw& base = spec.base();
    std::complex<long double> total{0.0L, 0.0L};
    const std::complex<long double> eb = std::exp(b);
    for (long long k = base.min_index(); k <= base.max_index(); ++k) {
        const Rat tau_k = spec.tau().at(k);
        const Rat mu_k = spec.joint(k, 0);
        if (tau_k == 0 && mu_k == 0) continue;
        const std::complex<long double> ea =
            std::exp(a * static_cast<long double>(base.value_at(k)));
        total += to_ld(tau_k) * ea * eb + to_ld(mu_k) * ea;
    }
    return total;
}

namespace {

// 53-bit uniform in [0, 1); keeps the seed-to-stream contract independent of
// library distribution implementations.
double next_u01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace

SampleSummary sample_coupled_paths(const CouplingSpec& spec, long long n, long long count,
                                   std::uint64_t seed) {
    if (n < 1) throw validation_error("n must be >= 1");
    if (count < 1) throw validation_error("count must be >= 1");

    // cumulative table over the joint (V, eps) law
    struct Cell {
        long long value;
        int eps;
        double cum;
    };
    std::vector<Cell> cells;
    double cum = 0.0;
    const LatticeLaw& base = spec.base();
    for (long long k = base.min_index(); k <= base.max_index(); ++k) {
        for (int e : {1, 0}) {
            Rat p = spec.joint(k, e);
            if (p == 0) continue;
            cum += to_d(p);
            cells.push_back({base.value_at(k), e, cum});
        }
    }
    cells.back().cum = 1.0;

    SampleSummary out;
    out.n = n;
    out.count = count;
    out.seed = seed;
    out.generator = "mt19937_64";
    out.b_freq.assign(static_cast<std::size_t>(n) + 1, 0);

    std::mt19937_64 gen(seed);
    long long b_total = 0;
    for (long long rep = 0; rep < count; ++rep) {
        long long w = 0, m = 0, b = 0;
        for (long long j = 0; j < n; ++j) {
            const double u = next_u01(gen);
            const Cell* cell = &cells.back();
            for (const Cell& c : cells) {
                if (u < c.cum) {
                    cell = &c;
                    break;
                }
            }
            w += cell->value;
            if (cell->eps) {
                b += 1;
                m += static_cast<long long>(gen() >> 63);  // fair Bernoulli L_j
            }
        }
        const long long s = w + base.span() * m;
        out.s_freq[s] += 1;
        out.b_freq[static_cast<std::size_t>(b)] += 1;
        b_total += b;
    }
    out.mean_b = static_cast<double>(b_total) / static_cast<double>(count);
    return out;
}

double SampleSummary::empirical_prob_divisible(long long d, long long u) const {
    if (d < 2) throw validation_error("d must be >= 2");
    long long hits = 0;
    for (const auto& [value, freq] : s_freq)
        if (detail::pos_mod(value + u, d) == 0) hits += freq;
    return static_cast<double>(hits) / static_cast<double>(count);
}

double chi_square_statistic(const SampleSummary& summary,
                            const std::vector<std::pair<long long, Rat>>& expected) {
    double stat = 0.0;
    long long seen = 0;
    for (const auto& [value, p] : expected) {
        const double exp_count = to_d(p) * static_cast<double>(summary.count);
        auto it = summary.s_freq.find(value);
        const double obs = it == summary.s_freq.end() ? 0.0 : static_cast<double>(it->second);
        seen += it == summary.s_freq.end() ? 0 : it->second;
        stat += (obs - exp_count) * (obs - exp_count) / exp_count;
    }
    if (seen != summary.count)
        throw numeric_error("sampled values outside the expected support");
    return stat;
}

}  // namespace divsum
