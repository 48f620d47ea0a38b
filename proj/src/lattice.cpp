#include "divsum/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "divsum/detail/trig.hpp"

namespace divsum {

LatticeLaw::LatticeLaw(long long v0, long long span, std::vector<Entry> probs)
    : v0_(v0), span_(span), entries_(std::move(probs)) {
    if (span_ < 1) throw validation_error("span must be a positive integer");
    if (entries_.empty()) throw validation_error("law must have nonempty support");
    std::sort(entries_.begin(), entries_.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    Rat total = 0;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].second <= 0)
            throw validation_error("probability at index " + std::to_string(entries_[i].first) +
                                   " is not positive");
        if (i > 0 && entries_[i].first == entries_[i - 1].first)
            throw validation_error("duplicate support index " + std::to_string(entries_[i].first));
        total += entries_[i].second;
    }
    if (total != 1)
        throw validation_error("probabilities sum to " + format_rational(total) + ", expected 1");
}

LatticeLaw LatticeLaw::bernoulli_half() {
    return LatticeLaw(0, 1, {{0, Rat(1, 2)}, {1, Rat(1, 2)}});
}

const Rat& LatticeLaw::prob(long long k) const {
    static const Rat zero = 0;
    auto it = std::lower_bound(entries_.begin(), entries_.end(), k,
                               [](const Entry& e, long long key) { return e.first < key; });
    if (it != entries_.end() && it->first == k) return it->second;
    return zero;
}

ReducedLaw reduce_to_unit_span(const LatticeLaw& law) {
    if (law.degenerate())
        throw validation_error("degenerate law: maximal span undefined for single-point support");
    const long long k0 = law.min_index();
    long long g = 0;
    for (const auto& [k, p] : law.entries()) g = std::gcd(g, k - k0);
    const long long span_found = law.span() * g;
    const long long offset = law.value_at(k0);
    std::vector<LatticeLaw::Entry> probs;
    probs.reserve(law.support_size());
    for (const auto& [k, p] : law.entries()) probs.emplace_back((k - k0) / g, p);
    return ReducedLaw{LatticeLaw(0, 1, std::move(probs)), offset, span_found};
}

Rat theta_characteristic(const LatticeLaw& law) {
    if (law.span() != 1) throw validation_error("theta_characteristic requires unit span");
    Rat total = 0;
    for (const auto& [k, p] : law.entries()) total += std::min(p, law.prob(k + 1));
    return total;
}

SmoothnessReport smoothness_delta(const LatticeLaw& law) {
    if (law.span() != 1) throw validation_error("smoothness_delta requires unit span");
    Rat delta = 0;
    // |f(m) - f(m-1)| is nonzero only when m or m-1 carries mass
    for (const auto& [k, p] : law.entries()) {
        delta += boost::multiprecision::abs(Rat(p - law.prob(k - 1)));
        if (law.prob(k + 1) == 0) delta += p;  // the drop at m = k+1
    }
    Rat theta = theta_characteristic(law);
    long long g = 0;
    if (!law.degenerate()) {
        const long long k0 = law.min_index();
        for (const auto& [k, p] : law.entries()) g = std::gcd(g, k - k0);
    } else {
        g = 1;
    }
    return SmoothnessReport{theta, delta, g == 1 && !law.degenerate(), g};
}

std::complex<long double> char_function(const LatticeLaw& law, long double t) {
    std::complex<long double> total{0.0L, 0.0L};
    for (const auto& [k, p] : law.entries()) {
        const long double angle = 2.0L * detail::pi_ld * static_cast<long double>(law.value_at(k)) * t;
        total += to_ld(p) * std::complex<long double>{std::cos(angle), std::sin(angle)};
    }
    return total;
}

}  // namespace divsum
