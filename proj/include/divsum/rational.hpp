#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace divsum {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Input validation failure (bad parameters, malformed files, infeasible
/// configurations). Maps to CLI exit code 1.
class validation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numeric integrity failure: an internal consistency check (imaginary
/// residue, normalization) exceeded its tolerance. Maps to CLI exit code 2.
class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown by solve_tau when a user-supplied mu sequence admits no
/// non-negative tau solution. Carries the first offending support index.
class infeasible_mu_error : public validation_error {
public:
    infeasible_mu_error(const std::string& what, long long index)
        : validation_error(what), index_(index) {}
    long long index() const noexcept { return index_; }

private:
    long long index_;
};

class enumeration_cap_error : public validation_error {
public:
    using validation_error::validation_error;
};

/// Parses "p/q", plain integers, and decimal strings ("0.35" = 35/100).
/// Decimal inputs convert exactly, so every accepted form is lossless.
Rat parse_rational(const std::string& text);

/// "p/q", or just "p" when the denominator is 1.
std::string format_rational(const Rat& value);

long double to_ld(const Rat& value);
double to_d(const Rat& value);

/// num/den as long double without building a normalized rational.
/// Scales both operands down when they exceed the long double range.
long double ld_ratio(const Int& num, const Int& den);

/// Floor of a rational (exact, works for negative values).
Int rat_floor(const Rat& value);

/// value^e for non-negative integer exponents.
Rat rat_pow(const Rat& value, unsigned e);

}  // namespace divsum
