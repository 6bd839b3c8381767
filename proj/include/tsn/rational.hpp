#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

#include "tsn/errors.hpp"

namespace tsn {

// All norm arithmetic is exact. cpp_rational keeps numerator/denominator in
// lowest terms automatically, so equality tests are plain ==.
using bigint = boost::multiprecision::cpp_int;
using rat = boost::multiprecision::cpp_rational;

inline bigint rat_num(const rat& r) { return boost::multiprecision::numerator(r); }
inline bigint rat_den(const rat& r) { return boost::multiprecision::denominator(r); }

// r^e for nonnegative integer e. boost::pow wants the pieces separately.
inline rat rat_pow(const rat& r, unsigned long long e) {
    if (e == 0) return rat(1);
    if (r == 0) return rat(0);
    bigint n = boost::multiprecision::pow(rat_num(r), static_cast<unsigned>(e));
    bigint d = boost::multiprecision::pow(rat_den(r), static_cast<unsigned>(e));
    return rat(n, d);
}

inline std::string rat_str(const rat& r) {
    std::string s = rat_num(r).str();
    if (rat_den(r) != 1) s += "/" + rat_den(r).str();
    return s;
}

// Accepts "3", "-3", "3/4". Whitespace is the caller's problem.
inline rat rat_parse(const std::string& s) {
    auto bad = [&]() { fail(errc::parse, "bad rational '" + s + "'"); };
    if (s.empty()) bad();
    size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) return rat(bigint(s));
        bigint n(s.substr(0, slash));
        bigint d(s.substr(slash + 1));
        if (d == 0) bad();
        return rat(n, d);
    } catch (const std::runtime_error&) {
        bad();
    }
    return rat(0); // unreachable
}

inline double rat_double(const rat& r) { return r.convert_to<double>(); }

// FNV-1a, used for cache keys. Stable across platforms by construction.
inline std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 1469598103934665603ull) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace tsn
