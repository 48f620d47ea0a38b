#include "divsum/rational.hpp"

#include <cctype>
#include <cmath>

namespace divsum {

namespace {

bool is_integer_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Rat parse_rational(const std::string& text) {
    std::string s = text;
    // trim
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    if (s.empty()) throw validation_error("empty rational literal");

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (!is_integer_token(num) || !is_integer_token(den))
            throw validation_error("malformed rational literal '" + text + "'");
        Int d(den);
        if (d == 0) throw validation_error("zero denominator in '" + text + "'");
        return Rat(Int(num), d);
    }

    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string head = s.substr(0, dot);
        std::string frac = s.substr(dot + 1);
        bool neg = !head.empty() && head[0] == '-';
        if (!head.empty() && (head[0] == '+' || head[0] == '-')) head.erase(head.begin());
        if (head.empty()) head = "0";
        if (!is_integer_token(head) || (!frac.empty() && !is_integer_token(frac)))
            throw validation_error("malformed decimal literal '" + text + "'");
        Int scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        Int value = Int(head) * scale + (frac.empty() ? Int(0) : Int(frac));
        if (neg) value = -value;
        return Rat(value, scale);
    }

    if (!is_integer_token(s)) throw validation_error("malformed rational literal '" + text + "'");
    return Rat(Int(s));
}

std::string format_rational(const Rat& value) {
    const Int& num = boost::multiprecision::numerator(value);
    const Int& den = boost::multiprecision::denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

long double to_ld(const Rat& value) {
    return ld_ratio(boost::multiprecision::numerator(value),
                    boost::multiprecision::denominator(value));
}

double to_d(const Rat& value) { return static_cast<double>(to_ld(value)); }

long double ld_ratio(const Int& num, const Int& den) {
    if (num == 0) return 0.0L;
    // keep both operands well inside the long double exponent range
    const auto bn = boost::multiprecision::msb(boost::multiprecision::abs(num));
    const auto bd = boost::multiprecision::msb(boost::multiprecision::abs(den));
    const long shift = static_cast<long>(std::max(bn, bd)) - 512;
    if (shift <= 0)
        return num.convert_to<long double>() / den.convert_to<long double>();
    const long double top = Int(num >> shift).convert_to<long double>();
    const long double bot = Int(den >> shift).convert_to<long double>();
    return top / bot;
}

Int rat_floor(const Rat& value) {
    Int q = boost::multiprecision::numerator(value) / boost::multiprecision::denominator(value);
    if (value < 0 && q * boost::multiprecision::denominator(value) != boost::multiprecision::numerator(value))
        --q;
    return q;
}

Rat rat_pow(const Rat& value, unsigned e) {
    return Rat(boost::multiprecision::pow(boost::multiprecision::numerator(value), e),
               boost::multiprecision::pow(boost::multiprecision::denominator(value), e));
}

}  // namespace divsum
