#ifndef POWCIRC_RATIONAL_HPP
#define POWCIRC_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <string>

#include "powcirc/errors.hpp"

namespace powcirc {

// Small exact rational for the epsilon parameters. Always reduced, den > 0.
struct Rat {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rat() = default;
    Rat(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (den == 0) fail(errc::parameter, "rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }
    static Rat of(std::int64_t n) { return Rat(n, 1); }

    bool positive() const { return num > 0; }
    Rat half() const { return Rat(num, 2 * den); }

    friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator<(const Rat& a, const Rat& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<=(const Rat& a, const Rat& b) { return a == b || a < b; }

    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

// ceil(x / r) for integer x >= 0 and positive rational r.
inline std::uint64_t ceil_div_rat(std::uint64_t x, const Rat& r) {
    if (!r.positive()) fail(errc::parameter, "ceil_div_rat needs a positive rational");
    __int128 t = static_cast<__int128>(x) * r.den;
    return static_cast<std::uint64_t>((t + r.num - 1) / r.num);
}

// Exact comparisons against a quotient a/r for positive r:
// x > a/r  <=>  x*r.num > a*r.den.
inline bool gt_div(std::uint64_t x, std::uint64_t a, const Rat& r) {
    return static_cast<__int128>(x) * r.num > static_cast<__int128>(a) * r.den;
}
inline bool lt_div(std::uint64_t x, std::uint64_t a, const Rat& r) {
    return static_cast<__int128>(x) * r.num < static_cast<__int128>(a) * r.den;
}

}  // namespace powcirc

#endif
