#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "divsum/lattice.hpp"

namespace divsum {

/// Removable mass mu_k per support index; the remainder 1 - mu feeds the
/// Bernoulli component.
struct MuSequence {
    std::vector<std::pair<long long, Rat>> mu;  // sorted by index, aligned with a law's support
    Rat total;                                  // sum of all mu_k

    const Rat& at(long long k) const;
};

/// Non-negative solution of (tau_{k-1} + tau_k)/2 = f(k) - mu_k.
struct TauSequence {
    std::vector<std::pair<long long, Rat>> tau;  // sorted by index; zero entries omitted
    Rat theta;                                   // sum of all tau_k = 1 - mu

    const Rat& at(long long k) const;
};

/// The full Bernoulli-part decomposition of a lattice law: the pair (V, eps)
/// with P{(V,eps)=(v_k,1)} = tau_k and P{(V,eps)=(v_k,0)} = mu_k, together
/// with the auxiliary law P{X~ = v_k} = tau_k / vartheta.
///
/// Immutable; all identities hold in exact rational arithmetic.
class CouplingSpec {
public:
    CouplingSpec(LatticeLaw base, MuSequence mu, TauSequence tau);

    const LatticeLaw& base() const noexcept { return base_; }
    const MuSequence& mu() const noexcept { return mu_; }
    const TauSequence& tau() const noexcept { return tau_; }
    const Rat& vartheta() const noexcept { return tau_.theta; }

    /// P{(V, eps) = (v_k, e)}.
    Rat joint(long long k, int eps) const;
    /// P{V = v_k} = f(k) + (tau_k - tau_{k-1})/2.
    Rat v_marginal(long long k) const;
    /// The tilde law; entries tau_k / vartheta.
    const LatticeLaw& tilde() const noexcept { return tilde_; }

private:
    LatticeLaw base_;
    MuSequence mu_;
    TauSequence tau_;
    LatticeLaw tilde_;
};

/// The canonical removable-mass choice: tau_k = (theta/theta_X) min(f(k), f(k+1)),
/// then mu_k = f(k) - (tau_{k-1} + tau_k)/2. Requires 0 < theta < theta_X.
/// Always feasible; at isolated support points mu_k = f(k) is forced.
MuSequence default_mu(const LatticeLaw& law, const Rat& theta);

/// Solves the half-sum equation by the left-to-right recursion
/// tau_k = 2(f(k) - mu_k) - tau_{k-1}. Throws infeasible_mu_error when some
/// tau_k turns negative or the residual past the right support edge is
/// nonzero; the offending index is reported.
TauSequence solve_tau(const LatticeLaw& law, const MuSequence& mu);

/// Assembles the (V, eps) table and tilde law, verifying the marginal
/// identities exactly.
CouplingSpec build_coupling(const LatticeLaw& law, const TauSequence& tau, const MuSequence& mu);

/// default_mu + solve_tau + build_coupling in one step.
CouplingSpec coupling_from_theta(const LatticeLaw& law, const Rat& theta);

/// Builds a coupling straight from a tau sequence, checking only the
/// lenient conditions tau >= 0, tau_{k-1} + tau_k <= 2 f(k) and
/// 0 < sum tau <= 1. Admits the boundary choice tau = f-minima with
/// vartheta = theta_X, and the Bernoulli limit tau_0 = 1 with mu = 0.
CouplingSpec coupling_from_tau(const LatticeLaw& law,
                               std::vector<std::pair<long long, Rat>> tau);

/// Law of Z = V + eps * span * L with L an independent fair Bernoulli.
/// Equals the base law exactly for every valid spec.
LatticeLaw verify_coupling_identity(const CouplingSpec& spec);

/// E e^{a V + b eps} = sum_k { tau_k e^{a v_k + b} + mu_k e^{a v_k} }.
std::complex<long double> joint_mgf(const CouplingSpec& spec,
                                    std::complex<long double> a,
                                    std::complex<long double> b);

/// Empirical summary of coupled paths (V_j, eps_j, L_j) with
/// S_n = W_n + span * M_n. Reproducible: a fixed seed yields a fixed summary.
struct SampleSummary {
    long long n = 0;
    long long count = 0;
    std::uint64_t seed = 0;
    std::string generator;               // RNG identifier, "mt19937_64"
    std::map<long long, long long> s_freq;  // S_n value -> occurrences
    std::vector<long long> b_freq;          // B_n = 0..n occurrences
    double mean_b = 0.0;

    double empirical_prob_divisible(long long d, long long u) const;
};

SampleSummary sample_coupled_paths(const CouplingSpec& spec, long long n, long long count,
                                   std::uint64_t seed);

/// Pearson statistic of the sampled S_n frequencies against an exact law
/// given as (value, probability) pairs.
double chi_square_statistic(const SampleSummary& summary,
                            const std::vector<std::pair<long long, Rat>>& expected);

}  // namespace divsum
