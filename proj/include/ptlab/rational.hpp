#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ptlab {

// All distances and proximity parameters are exact rationals so that
// invariants like "distance >= eps" are decidable, never float-fuzzy.
using rational = boost::rational<std::int64_t>;

inline std::int64_t ceil_to_int(const rational& x) {
    if (x.numerator() <= 0) return 0;
    return (x.numerator() + x.denominator() - 1) / x.denominator();
}

inline std::int64_t floor_to_int(const rational& x) {
    if (x.numerator() < 0) throw std::invalid_argument("floor_to_int: negative rational");
    return x.numerator() / x.denominator();
}

inline double to_double(const rational& x) {
    return static_cast<double>(x.numerator()) / static_cast<double>(x.denominator());
}

// Accepts "a/b", integers ("2"), and decimal literals ("0.3"), all parsed
// exactly (no round trip through double).
inline rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("parse_rational: empty string");
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const std::int64_t num = std::stoll(text.substr(0, slash));
        const std::int64_t den = std::stoll(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
        return {num, den};
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return {std::stoll(text), 1};
    const std::string whole = text.substr(0, dot);
    const std::string frac = text.substr(dot + 1);
    if (frac.size() > 18) throw std::invalid_argument("parse_rational: too many decimal digits");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    std::int64_t num = frac.empty() ? 0 : std::stoll(frac);
    const bool negative = !whole.empty() && whole[0] == '-';
    const std::int64_t whole_val = (whole.empty() || whole == "-") ? 0 : std::stoll(whole);
    num = (negative ? -1 : 1) * num + whole_val * den;
    return {num, den};
}

inline std::string to_string(const rational& x) {
    if (x.denominator() == 1) return std::to_string(x.numerator());
    return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

}  // namespace ptlab
