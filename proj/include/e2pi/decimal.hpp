// e2pi -- decimal rendering of HPReal values.
//
// All transport formats carry decimal strings, never binary floats. Rendering
// at d digits is correctly rounded; the shortest-round-trip form is the least
// d whose rendering parses back to the identical HPReal at the same
// precision.

#ifndef E2PI_DECIMAL_HPP
#define E2PI_DECIMAL_HPP

#include <cctype>
#include <string>

#include "e2pi/hpreal.hpp"

namespace e2pi {

namespace detail {

// floor(log10 |v|) for nonzero rational v, exact.
inline long dec_exponent(const BigRational& v) {
    long guess = static_cast<long>(std::floor(
        (static_cast<double>(bit_length(v.num())) - static_cast<double>(bit_length(v.den()))) *
        0.30102999566398119));
    auto pow10 = [](long k) {
        mpz_class t;
        mpz_ui_pow_ui(t.get_mpz_t(), 10, static_cast<unsigned long>(k >= 0 ? k : -k));
        return k >= 0 ? BigRational(t) : BigRational(mpz_class(1), t);
    };
    BigRational a = v.abs();
    while (a < pow10(guess))
        --guess;
    while (a >= pow10(guess + 1))
        ++guess;
    return guess;
}

}  // namespace detail

// Correctly rounded d-digit scientific rendering, e.g. "3.1415e0".
inline std::string hp_to_decimal(const HPReal& x, unsigned long d) {
    if (d < 1)
        throw UsageError("hp_to_decimal: need at least one digit");
    if (x.is_zero())
        return "0";
    BigRational v = x.to_rational().abs();
    long de = detail::dec_exponent(v);
    // N = round(v * 10^(d-1-de)), ties to even
    long s = static_cast<long>(d) - 1 - de;
    mpz_class num = v.num(), den = v.den();
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(s >= 0 ? s : -s));
    if (s >= 0)
        num *= p10;
    else
        den *= p10;
    mpz_class q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_class twice = rem * 2;
    int c = cmp(twice, den);
    if (c > 0 || (c == 0 && mpz_odd_p(q.get_mpz_t())))
        q += 1;
    std::string digits = q.get_str();
    if (digits.size() > d) {  // rounded up to the next power of ten
        digits.resize(d);
        ++de;
    }
    std::string out;
    if (x.sign() < 0)
        out += '-';
    out += digits[0];
    if (digits.size() > 1) {
        out += '.';
        out += digits.substr(1);
    }
    out += 'e';
    out += std::to_string(de);
    return out;
}

// Exact rational value of a decimal string ("-3.14e-2" style).
inline BigRational decimal_to_rational(const std::string& s) {
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = (s[i] == '-');
        ++i;
    }
    std::string digits;
    long frac = 0;
    bool seen_point = false, seen_digit = false;
    for (; i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.'); ++i) {
        if (s[i] == '.') {
            if (seen_point)
                throw UsageError("decimal_to_rational: malformed number");
            seen_point = true;
            continue;
        }
        digits.push_back(s[i]);
        seen_digit = true;
        if (seen_point)
            ++frac;
    }
    if (!seen_digit)
        throw UsageError("decimal_to_rational: malformed number");
    long exp10 = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        exp10 = std::stol(s.substr(i + 1));
        i = s.size();
    }
    if (i != s.size())
        throw UsageError("decimal_to_rational: trailing junk");
    mpz_class n(digits, 10);
    if (neg)
        n = -n;
    long k = exp10 - frac;
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(k >= 0 ? k : -k));
    if (k >= 0)
        return BigRational(n * p10);
    return BigRational(n, p10);
}

inline HPReal decimal_to_hp(const std::string& s, PrecisionSpec p) {
    return rat_to_hp(decimal_to_rational(s), p);
}

// Shortest decimal string that parses back to the identical value at the
// same precision.
inline std::string hp_to_shortest_decimal(const HPReal& x) {
    if (x.is_zero())
        return "0";
    unsigned long dmax =
        static_cast<unsigned long>(std::ceil(x.prec().bits * 0.30102999566398119)) + 3;
    auto round_trips = [&](unsigned long d) {
        return decimal_to_hp(hp_to_decimal(x, d), x.prec()) == x;
    };
    unsigned long lo = 1, hi = dmax;
    while (lo < hi) {
        unsigned long mid = (lo + hi) / 2;
        if (round_trips(mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    // the predicate is monotone for nearest-even rendering, but verify anyway
    while (lo <= dmax && !round_trips(lo))
        ++lo;
    return hp_to_decimal(x, lo);
}

}  // namespace e2pi

#endif  // E2PI_DECIMAL_HPP
