#include "divsum/exactprob.hpp"

#include <algorithm>
#include <cmath>

#include "divsum/detail/trig.hpp"

namespace divsum {

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::lcm;
using boost::multiprecision::numerator;
using boost::multiprecision::pow;

Int common_denominator(const LatticeLaw& law) {
    Int q = 1;
    for (const auto& [k, p] : law.entries()) q = lcm(q, denominator(p));
    return q;
}

// numerators of one summand's law grouped by residue class mod d
std::vector<std::pair<long long, Int>> base_residues(const LatticeLaw& law, long long d,
                                                     const Int& q) {
    std::vector<Int> acc(static_cast<std::size_t>(d), 0);
    for (const auto& [k, p] : law.entries())
        acc[static_cast<std::size_t>(detail::pos_mod(law.value_at(k), d))] +=
            numerator(p) * (q / denominator(p));
    std::vector<std::pair<long long, Int>> out;
    for (long long r = 0; r < d; ++r)
        if (acc[static_cast<std::size_t>(r)] != 0)
            out.emplace_back(r, std::move(acc[static_cast<std::size_t>(r)]));
    return out;
}

std::vector<Int> cyclic_multiply(const std::vector<Int>& a, const std::vector<Int>& b,
                                 long long d) {
    std::vector<Int> out(static_cast<std::size_t>(d), 0);
    for (long long i = 0; i < d; ++i) {
        if (a[static_cast<std::size_t>(i)] == 0) continue;
        for (long long j = 0; j < d; ++j) {
            if (b[static_cast<std::size_t>(j)] == 0) continue;
            long long r = i + j;
            if (r >= d) r -= d;
            out[static_cast<std::size_t>(r)] +=
                a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
        }
    }
    return out;
}

}  // namespace

void DivisibilityQuery::validate() const {
    if (n < 1) throw validation_error("query requires n >= 1");
    if (d < 2) throw validation_error("query requires d >= 2");
    if (u < 0) throw validation_error("query requires u >= 0");
}

ResidueDistribution::ResidueDistribution(const LatticeLaw& law, long long n, long long d)
    : d_(d), n_(n) {
    if (n < 1) throw validation_error("n must be >= 1");
    if (d < 2) throw validation_error("d must be >= 2");
    const Int q = common_denominator(law);
    std::vector<Int> base(static_cast<std::size_t>(d), 0);
    for (const auto& [r, a] : base_residues(law, d, q)) base[static_cast<std::size_t>(r)] = a;

    std::vector<Int> acc(static_cast<std::size_t>(d), 0);
    acc[0] = 1;
    long long e = n;
    while (e > 0) {
        if (e & 1) acc = cyclic_multiply(acc, base, d);
        e >>= 1;
        if (e > 0) base = cyclic_multiply(base, base, d);
    }
    num_ = std::move(acc);
    den_ = pow(q, static_cast<unsigned>(n));
}

Rat ResidueDistribution::prob_residue(long long r) const {
    return Rat(num_[static_cast<std::size_t>(detail::pos_mod(r, d_))], den_);
}

Rat ResidueDistribution::prob_divisible(long long u) const { return prob_residue(-u); }

long double ResidueDistribution::prob_divisible_ld(long long u) const {
    return ld_ratio(num_[static_cast<std::size_t>(detail::pos_mod(-u, d_))], den_);
}

bool ResidueDistribution::mass_complete() const {
    Int total = 0;
    for (const Int& v : num_) total += v;
    return total == den_;
}

ResidueWalker::ResidueWalker(const LatticeLaw& law, long long d) : d_(d), n_(0) {
    if (d < 2) throw validation_error("d must be >= 2");
    q_ = common_denominator(law);
    base_ = base_residues(law, d, q_);
    num_.assign(static_cast<std::size_t>(d), 0);
    num_[0] = 1;
    den_ = 1;
}

void ResidueWalker::step() {
    std::vector<Int> next(static_cast<std::size_t>(d_), 0);
    for (long long r = 0; r < d_; ++r) {
        const Int& cur = num_[static_cast<std::size_t>(r)];
        if (cur == 0) continue;
        for (const auto& [s, a] : base_) {
            long long t = r + s;
            if (t >= d_) t -= d_;
            next[static_cast<std::size_t>(t)] += cur * a;
        }
    }
    num_ = std::move(next);
    den_ *= q_;
    ++n_;
}

Rat ResidueWalker::prob_divisible(long long u) const {
    return Rat(num_[static_cast<std::size_t>(detail::pos_mod(-u, d_))], den_);
}

long double ResidueWalker::prob_divisible_ld(long long u) const {
    return ld_ratio(num_[static_cast<std::size_t>(detail::pos_mod(-u, d_))], den_);
}

long double ResidueWalker::abs_discrepancy_ld(long long u) const {
    const Int& a = num_[static_cast<std::size_t>(detail::pos_mod(-u, d_))];
    const Int diff = a * d_ - den_;
    return std::abs(ld_ratio(diff, den_ * d_));
}

Rat prob_divisible_convolution(const LatticeLaw& law, const DivisibilityQuery& q) {
    q.validate();
    return ResidueDistribution(law, q.n, q.d).prob_divisible(q.u);
}

long double prob_divisible_charsum(const LatticeLaw& law, const DivisibilityQuery& q) {
    q.validate();
    const long long d = q.d;
    const long long u = detail::pos_mod(q.u, d);

    // per-support residues so every phase reduces exactly
    std::vector<std::pair<long long, long double>> terms;
    terms.reserve(law.support_size());
    for (const auto& [k, p] : law.entries())
        terms.emplace_back(detail::pos_mod(law.value_at(k), d), to_ld(p));

    std::complex<long double> total{0.0L, 0.0L};
    for (long long j = 0; j < d; ++j) {
        std::complex<long double> phi{0.0L, 0.0L};
        for (const auto& [r, w] : terms) phi += w * detail::unit_phase(r * j, d);
        total += detail::unit_phase(u * j, d) * detail::pow_n(phi, q.n);
    }
    total /= static_cast<long double>(d);
    if (std::abs(total.imag()) > 1e-12L)
        throw numeric_error("character-sum imaginary residue " +
                            std::to_string(static_cast<double>(total.imag())) +
                            " exceeds tolerance");
    long double value = total.real();
    if (value < 0.0L && value >= -1e-12L) value = 0.0L;
    if (value > 1.0L && value <= 1.0L + 1e-12L) value = 1.0L;
    return value;
}

long double bernoulli_closed_form(const DivisibilityQuery& q) {
    q.validate();
    const long long d = q.d;
    const long long m = 2 * detail::pos_mod(q.u, d) + detail::pos_mod(q.n, 2 * d);
    long double total = 1.0L / static_cast<long double>(d);
    for (long long j = 1; 2 * j < d; ++j) {
        const long double base = detail::cos_pi_ratio(j, d);  // positive: j/d < 1/2
        total += (2.0L / static_cast<long double>(d)) * detail::cos_pi_ratio(m * j, d) *
                 detail::pow_n(base, q.n);
    }
    if (total < 0.0L && total >= -1e-12L) total = 0.0L;
    if (total > 1.0L && total <= 1.0L + 1e-12L) total = 1.0L;
    return total;
}

namespace {

struct PathAtom {
    long long value;
    Int weight;
};

void enumerate_paths(const std::vector<PathAtom>& atoms, long long depth, long long value_sum,
                     const Int& weight, long long d, long long u, Int& hits) {
    if (depth == 0) {
        if (detail::pos_mod(value_sum + u, d) == 0) hits += weight;
        return;
    }
    for (const PathAtom& atom : atoms)
        enumerate_paths(atoms, depth - 1, value_sum + atom.value, weight * atom.weight, d, u,
                        hits);
}

}  // namespace

Rat enumerate_oracle(const LatticeLaw& law, const DivisibilityQuery& q, long long cap) {
    q.validate();
    long long paths = 1;
    for (long long i = 0; i < q.n; ++i) {
        if (paths > cap / static_cast<long long>(law.support_size()))
            throw enumeration_cap_error("support^n exceeds the enumeration cap");
        paths *= static_cast<long long>(law.support_size());
    }
    const Int q_den = common_denominator(law);
    std::vector<PathAtom> atoms;
    atoms.reserve(law.support_size());
    for (const auto& [k, p] : law.entries())
        atoms.push_back({law.value_at(k), Int(numerator(p) * (q_den / denominator(p)))});
    Int hits = 0;
    enumerate_paths(atoms, q.n, 0, Int(1), q.d, detail::pos_mod(q.u, q.d), hits);
    return Rat(hits, pow(q_den, static_cast<unsigned>(q.n)));
}

double llt_gaussian_pointmass(long long n, long long z) {
    if (n < 1) throw validation_error("n must be >= 1");
    const long double x = static_cast<long double>(2 * z - n);
    return static_cast<double>(std::sqrt(2.0L / (detail::pi_ld * static_cast<long double>(n))) *
                               std::exp(-x * x / (2.0L * static_cast<long double>(n))));
}

}  // namespace divsum
