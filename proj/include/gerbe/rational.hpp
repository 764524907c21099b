#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "gerbe/errors.hpp"

namespace gerbe {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

/// Exact floor of a rational.
inline Int rat_floor(const Rat& r) {
    Int p = num(r), q = den(r);  // q > 0 by normalization
    if (p >= 0) return p / q;
    return -((-p + q - 1) / q);
}

inline bool is_integer(const Rat& r) { return den(r) == 1; }

/// Canonical string form: "p" when the denominator is 1, else "p/q".
inline std::string rat_to_string(const Rat& r) {
    if (is_integer(r)) return num(r).str();
    return num(r).str() + "/" + den(r).str();
}

/// Parses "p" or "p/q" (q > 0 after normalization; "3/-4" is rejected).
inline Rat rat_from_string(const std::string& s) {
    auto bad = [&] { throw MalformedInputError("not a rational: '" + s + "'"); };
    if (s.empty()) bad();
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int p(s.substr(0, slash));
        Int q(s.substr(slash + 1));
        if (q <= 0) bad();
        return Rat(p, q);
    } catch (const std::runtime_error&) {
        bad();
    }
    return Rat();  // unreachable
}

inline RatVec operator+(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline RatVec operator-(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline bool is_zero(const RatVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

}  // namespace gerbe
