#ifndef SPARSECUT_RATIONAL_HPP
#define SPARSECUT_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "sparsecut/errors.hpp"

namespace sparsecut {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Parses a non-negative decimal string ("3", "0.25", "12.5") into an exact
// rational. Also accepts "p/q" fractions so round-tripped reports stay exact.
// cpp_int's string constructor treats a leading 0 as an octal prefix;
// always parse through this wrapper, which forces base 10.
inline BigInt parse_bigint(const std::string& s) {
    std::string t = s;
    bool neg = !t.empty() && t[0] == '-';
    if (neg) t.erase(t.begin());
    size_t nz = t.find_first_not_of('0');
    t = (nz == std::string::npos) ? "0" : t.substr(nz);
    if (t.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("bad integer '" + s + "'");
    BigInt v(t);
    return neg ? -v : v;
}

inline Rat parse_rational(const std::string& s) {
    if (s.empty()) throw ParseError("empty number");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        BigInt num = parse_bigint(s.substr(0, slash));
        BigInt den = parse_bigint(s.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + s + "'");
        return Rat(num, den);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rat(parse_bigint(s));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    if (digits.empty() || digits == "-") throw ParseError("bad number '" + s + "'");
    BigInt num = parse_bigint(digits);
    BigInt den = 1;
    for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    return Rat(num, den);
}

// Exact decimal rendering; only defined when the reduced denominator is of
// the form 2^a * 5^b (which covers everything parsed from decimal input).
inline std::string to_decimal_string(const Rat& r) {
    BigInt num = numerator(r);
    BigInt den = denominator(r);
    int twos = 0, fives = 0;
    BigInt d = den;
    while (d % 2 == 0) { d /= 2; ++twos; }
    while (d % 5 == 0) { d /= 5; ++fives; }
    if (d != 1)
        throw ParseError("rational " + num.str() + "/" + den.str() +
                         " has no finite decimal form");
    int shift = std::max(twos, fives);
    for (int i = twos; i < shift; ++i) num *= 2;
    for (int i = fives; i < shift; ++i) num *= 5;
    bool neg = num < 0;
    if (neg) num = -num;
    std::string digits = num.str();
    std::string out;
    if (shift == 0) {
        out = digits;
    } else {
        while ((int)digits.size() <= shift) digits.insert(digits.begin(), '0');
        out = digits.substr(0, digits.size() - shift) + "." +
              digits.substr(digits.size() - shift);
    }
    return neg ? "-" + out : out;
}

// Canonical fraction rendering: "p" for integers, "p/q" otherwise.
inline std::string to_fraction_string(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline double to_double(const Rat& r) { return static_cast<double>(r); }

} // namespace sparsecut

#endif
