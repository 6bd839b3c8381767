#pragma once

#include <numeric>
#include <string>

#include "tsn/errors.hpp"
#include "tsn/logcmp.hpp"
#include "tsn/ordinal.hpp"
#include "tsn/rational.hpp"

namespace tsn {

// base^(num/den) with base a rational in (0,1] and num/den a positive
// rational exponent. Comparisons cross-multiply the exponents and compare
// exact integer powers, so no rounding is ever involved.
struct ScalarPower {
    rat base;
    unsigned long long num = 1;
    unsigned long long den = 1;

    ScalarPower() : base(1) {}
    ScalarPower(const rat& b, unsigned long long n, unsigned long long d) : base(b), num(n), den(d) {
        if (b <= 0 || b > 1) fail(errc::internal, "scalar base outside (0,1]");
        if (n == 0 || d == 0) fail(errc::internal, "scalar exponent must be positive");
        unsigned long long g = std::gcd(n, d);
        num = n / g;
        den = d / g;
    }
};

inline std::string scalar_str(const ScalarPower& s) {
    std::string out = "(" + rat_str(s.base) + ")";
    if (s.num != 1 || s.den != 1)
        out += "^(" + std::to_string(s.num) + "/" + std::to_string(s.den) + ")";
    return out;
}

namespace detail {
inline unsigned long long checked_mul_u64(unsigned long long a, unsigned long long b) {
    if (a != 0 && b > ~0ull / a) fail(errc::cap_exceeded, "scalar exponent product overflows");
    return a * b;
}
} // namespace detail

// Sign of x - y where x = bx^(nx/dx), y = by^(ny/dy).
// x ? y  <=>  bx^(nx*dy) ? by^(ny*dx), both integer exponents.
inline cmp3 scalar_cmp(const ScalarPower& x, const ScalarPower& y) {
    unsigned long long ex = detail::checked_mul_u64(x.num, y.den);
    unsigned long long ey = detail::checked_mul_u64(y.num, x.den);
    // keep the blowup sane; classification exponents are tiny in practice
    if (ex > (1u << 20) || ey > (1u << 20))
        fail(errc::cap_exceeded, "scalar power exponent too large");
    rat a = rat_pow(x.base, ex);
    rat b = rat_pow(y.base, ey);
    if (a == b) return cmp3::eq;
    return a < b ? cmp3::lt : cmp3::gt;
}

// The strength preorder on weighted index pairs (alpha, theta): does
// (alpha0, theta0) norm no harder than (alpha1, theta1)?
//   both finite:   compare log_{alpha0}(theta0) <= log_{alpha1}(theta1)
//   any infinite:  compare gamma classes first, then theta0^{n(alpha1)}
//                  against theta1^{n(alpha0)}
// Total on its domain. IndexOne when a finite side is 1 (its log base
// degenerates); UndecidableAtPrecision can escape from the finite branch.
inline bool leq_T(const Ordinal& a0, const rat& t0,
                  const Ordinal& a1, const rat& t1,
                  unsigned max_bits = 1024) {
    if (a0.is_zero() || a1.is_zero()) fail(errc::zero_ordinal, "leq_T needs alpha > 0");
    if (t0 <= 0 || t0 >= 1 || t1 <= 0 || t1 >= 1)
        fail(errc::internal, "leq_T weight outside (0,1)");
    if (!a0.is_finite() || !a1.is_finite()) {
        Ordinal g0 = gamma_of(a0), g1 = gamma_of(a1);
        int c = ord_cmp(g0, g1);
        if (c != 0) return c < 0;
        rat lhs = rat_pow(t0, n_of(a1));
        rat rhs = rat_pow(t1, n_of(a0));
        return lhs <= rhs;
    }
    unsigned long long m0 = a0.fin_value(), m1 = a1.fin_value();
    if (m0 == 1 || m1 == 1) fail(errc::index_one, "finite index 1 has no log scale");
    return log_compare(m0, t0, m1, t1, max_bits) != cmp3::gt;
}

} // namespace tsn
