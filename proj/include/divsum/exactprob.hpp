#pragma once

#include <vector>

#include "divsum/lattice.hpp"

namespace divsum {

/// One divisibility question: P{d | S_n + u}.
struct DivisibilityQuery {
    long long n;  // number of summands, >= 1
    long long d;  // modulus, >= 2
    long long u;  // drift, >= 0; enters mod d only

    void validate() const;
};

/// Exact law of S_n mod d, held as integer numerators over a common
/// denominator Q^n (Q = lcm of the base probabilities' denominators).
/// Built by square-and-multiply on the residue vector: O(d^2 log n)
/// big-integer products per query.
class ResidueDistribution {
public:
    ResidueDistribution(const LatticeLaw& law, long long n, long long d);

    long long modulus() const noexcept { return d_; }
    long long n() const noexcept { return n_; }

    Rat prob_residue(long long r) const;
    /// P{d | S_n + u} = mass at residue (-u) mod d.
    Rat prob_divisible(long long u) const;
    long double prob_divisible_ld(long long u) const;

    /// Exact total-mass check: sum of numerators must equal Q^n.
    bool mass_complete() const;

private:
    long long d_;
    long long n_;
    std::vector<Int> num_;
    Int den_;
};

/// Same residue law evolved one summand at a time; each step costs
/// O(d * support) products by small integers. Use for dense n sweeps.
class ResidueWalker {
public:
    ResidueWalker(const LatticeLaw& law, long long d);

    void step();  // advance n by one
    long long n() const noexcept { return n_; }
    long long modulus() const noexcept { return d_; }
    Rat prob_divisible(long long u) const;
    long double prob_divisible_ld(long long u) const;
    /// |P{d | S_n + u} - 1/d| without constructing normalized rationals.
    long double abs_discrepancy_ld(long long u) const;

private:
    long long d_;
    long long n_;
    std::vector<std::pair<long long, Int>> base_;  // (residue, numerator) of one summand
    std::vector<Int> num_;
    Int q_;    // common denominator of one summand
    Int den_;  // q_^n
};

/// Exact probability by cyclic-convolution exponentiation.
Rat prob_divisible_convolution(const LatticeLaw& law, const DivisibilityQuery& q);

/// (1/d) sum_j e^{2 i pi j u / d} (E e^{2 i pi j X / d})^n, real part.
/// Evaluated in extended precision with exact angle reduction; throws
/// numeric_error if the imaginary residue exceeds 1e-12.
long double prob_divisible_charsum(const LatticeLaw& law, const DivisibilityQuery& q);

/// Fair-Bernoulli closed form
/// 1/d + (2/d) sum_{1 <= j < d/2} cos(pi (2u+n) j / d) cos(pi j / d)^n.
long double bernoulli_closed_form(const DivisibilityQuery& q);

/// Brute force over support^n; exact. Throws enumeration_cap_error when
/// |support|^n exceeds the cap.
Rat enumerate_oracle(const LatticeLaw& law, const DivisibilityQuery& q,
                     long long cap = 10'000'000);

/// sqrt(2/(pi n)) e^{-(2z-n)^2/(2n)}, the Gaussian point-mass surrogate
/// for P{B_n = z}.
double llt_gaussian_pointmass(long long n, long long z);

}  // namespace divsum
