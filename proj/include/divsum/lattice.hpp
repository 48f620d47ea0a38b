#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "divsum/rational.hpp"

namespace divsum {

/// A finitely supported probability law on the lattice {v0 + span*k, k in Z}.
///
/// Probabilities are exact rationals; every stored entry is strictly positive
/// and the total mass is exactly 1. Entries are kept sorted by index.
/// Immutable after construction.
class LatticeLaw {
public:
    using Entry = std::pair<long long, Rat>;

    LatticeLaw(long long v0, long long span, std::vector<Entry> probs);

    /// Fair Bernoulli on {0, 1}.
    static LatticeLaw bernoulli_half();

    long long v0() const noexcept { return v0_; }
    long long span() const noexcept { return span_; }
    const std::vector<Entry>& entries() const noexcept { return entries_; }
    std::size_t support_size() const noexcept { return entries_.size(); }
    bool degenerate() const noexcept { return entries_.size() == 1; }

    long long min_index() const noexcept { return entries_.front().first; }
    long long max_index() const noexcept { return entries_.back().first; }
    long long value_at(long long k) const noexcept { return v0_ + span_ * k; }

    /// f(k); zero for indices outside the support.
    const Rat& prob(long long k) const;

    bool operator==(const LatticeLaw& other) const = default;

private:
    long long v0_;
    long long span_;
    std::vector<Entry> entries_;
};

struct ReducedLaw {
    LatticeLaw law;        // unit span, v0 = 0, gcd of support gaps = 1
    long long offset;      // minimal support value of the original law
    long long span_found;  // maximal span of the original law
};

/// Rescales X to X' = (X - offset)/span_found so the support sits on
/// {0, ..., K} with gcd of gaps 1. Probabilities carry over index-for-index.
/// Throws for single-point laws (their maximal span is undefined).
ReducedLaw reduce_to_unit_span(const LatticeLaw& law);

/// Sum of min(f(k), f(k+1)) over consecutive integer indices.
/// Requires unit span. Always in [0, 1).
Rat theta_characteristic(const LatticeLaw& law);

struct SmoothnessReport {
    Rat theta_x;
    Rat delta_x;          // = 2 (1 - theta_x), exactly
    bool maximal_span;    // gcd of support gaps equals 1
    long long span_found; // gcd of support gaps (1 for single-point laws)
};

/// Total-variation-of-increments characteristic sum_m |f(m) - f(m-1)|,
/// reported together with theta_x. Requires unit span.
SmoothnessReport smoothness_delta(const LatticeLaw& law);

/// E e^{2 i pi t X} = sum_k f(k) e^{2 i pi v_k t}.
std::complex<long double> char_function(const LatticeLaw& law, long double t);

}  // namespace divsum
