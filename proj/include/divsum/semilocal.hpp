#pragma once

#include <complex>
#include <map>
#include <vector>

#include "divsum/coupling.hpp"
#include "divsum/exactprob.hpp"

namespace divsum {

/// s(t) = sum_k mu_k e^{2 i pi v_k t} with v_k = v0 + span k.
std::complex<long double> s_of_t(const MuSequence& mu, long long v0, long long span,
                                 long double t);

/// Per-factor symbol of the approximant:
///   a(t) = vartheta e^{i pi t - pi^2 t^2 / 2} E e^{2 i pi t X~} + s(t).
/// a(0) = vartheta + mu = 1.
std::complex<long double> per_factor_symbol(const CouplingSpec& spec, long double t);

/// (1/d) sum_{|l| <= d-1} e^{2 i pi u l / d} a(l/d)^n, real part. The l = 0
/// summand contributes exactly 1/d. Phases are reduced in integer
/// arithmetic; the imaginary residue is checked against 1e-10.
long double approximant(const CouplingSpec& spec, const DivisibilityQuery& q);

/// Exact probability, approximant, and the error-budget terms for one query.
struct DiscrepancyRecord {
    DivisibilityQuery query;
    Rat exact;
    long double approx = 0.0L;
    long double abs_error = 0.0L;
    long double bound_smooth = 0.0L;    // (log n)^{5/2} / (theta^{3/2} n^{3/2})
    long double bound_chernoff = 0.0L;  // 2 rho^n
};

struct ScanSummary {
    std::vector<DiscrepancyRecord> records;            // ordered by (n, d, u)
    std::map<long long, long double> sup_by_n;         // per-n sup over (d, u)
    double c_emp = 0.0;   // max_n sup(n) * theta^{3/2} n^{3/2} / (log n)^{5/2}
    double theta = 0.0;   // Chernoff split point solved from (vartheta, rho)
    double rho = 0.0;
};

/// Exact-vs-approximant sweep over a (n, d, u) grid. The exact side runs the
/// residue-convolution route once per (n, d) and serves every u.
ScanSummary discrepancy_scan(const CouplingSpec& spec, const std::vector<long long>& n_set,
                             long long d_min, long long d_max,
                             const std::vector<long long>& u_set, double rho,
                             int workers = 1);

}  // namespace divsum
