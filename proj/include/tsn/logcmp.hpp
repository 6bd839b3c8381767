#pragma once

#include <mpfr.h>

#include <optional>
#include <string>
#include <utility>

#include "tsn/errors.hpp"
#include "tsn/rational.hpp"

namespace tsn {

enum class cmp3 { lt, eq, gt };

namespace detail {

// Directed-rounding interval [lo, hi] at a fixed precision. Only what the
// sign test below needs: ln of exact integers, subtraction, multiplication.
struct MpInterval {
    mpfr_t lo, hi;
    explicit MpInterval(mpfr_prec_t p) {
        mpfr_init2(lo, p);
        mpfr_init2(hi, p);
    }
    ~MpInterval() {
        mpfr_clear(lo);
        mpfr_clear(hi);
    }
    MpInterval(const MpInterval&) = delete;
    MpInterval& operator=(const MpInterval&) = delete;
};

// ln(v) for an exact positive integer v, rounded outward.
inline void int_ln(MpInterval& out, const bigint& v, mpfr_prec_t p) {
    mpfr_t x;
    mpfr_init2(x, p);
    const std::string s = v.str();
    mpfr_set_str(x, s.c_str(), 10, MPFR_RNDD);
    mpfr_log(out.lo, x, MPFR_RNDD);
    mpfr_set_str(x, s.c_str(), 10, MPFR_RNDU);
    mpfr_log(out.hi, x, MPFR_RNDU);
    mpfr_clear(x);
}

// out = a - b, outward
inline void isub(MpInterval& out, const MpInterval& a, const MpInterval& b) {
    mpfr_sub(out.lo, a.lo, b.hi, MPFR_RNDD);
    mpfr_sub(out.hi, a.hi, b.lo, MPFR_RNDU);
}

// out = a * b, outward; general sign handling via min/max of the four
// endpoint products, each computed with both roundings
inline void imul(MpInterval& out, const MpInterval& a, const MpInterval& b, mpfr_prec_t p) {
    mpfr_t t;
    mpfr_init2(t, p);
    const mpfr_srcptr as[2] = {a.lo, a.hi};
    const mpfr_srcptr bs[2] = {b.lo, b.hi};
    bool first = true;
    for (auto x : as)
        for (auto y : bs) {
            mpfr_mul(t, x, y, MPFR_RNDD);
            if (first || mpfr_cmp(t, out.lo) < 0) mpfr_set(out.lo, t, MPFR_RNDD);
            mpfr_mul(t, x, y, MPFR_RNDU);
            if (first || mpfr_cmp(t, out.hi) > 0) mpfr_set(out.hi, t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
}

// Search for integers 1 <= a, b <= 64 with theta^b == n^{-a}. When one
// exists, log_n(theta) is exactly -a/b; when none exists we fall back to the
// interval ladder, which can then only ever answer strictly.
inline std::optional<std::pair<unsigned, unsigned>>
exact_log_relation(unsigned long long n, const rat& theta) {
    rat tp(1);
    for (unsigned b = 1; b <= 64; ++b) {
        tp *= theta;
        // tp is in (0,1); it equals n^{-a} only if its numerator is 1
        if (rat_num(tp) != 1) continue;
        bigint d = rat_den(tp);
        bigint base(n);
        for (unsigned a = 1; a <= 64; ++a) {
            bigint pw = boost::multiprecision::pow(base, a);
            if (pw == d) return std::make_pair(a, b);
            if (pw > d) break;
        }
    }
    return std::nullopt;
}

} // namespace detail

// Sign of log_{n0}(theta0) - log_{n1}(theta1), i.e. of
// ln(theta0)*ln(n1) - ln(theta1)*ln(n0). Preconditions: n >= 2 and
// theta in (0,1) on both sides. Equality is reported only when both logs are
// exactly rational (small exponent relation) or the inputs coincide;
// otherwise the ladder either separates the values or gives up, because no
// finite precision can certify equality of irrational logs.
inline cmp3 log_compare(unsigned long long n0, const rat& t0,
                        unsigned long long n1, const rat& t1,
                        unsigned max_bits = 1024) {
    if (n0 < 2 || n1 < 2) fail(errc::index_one, "log base must be >= 2");
    if (t0 <= 0 || t0 >= 1 || t1 <= 0 || t1 >= 1)
        fail(errc::internal, "log_compare weight outside (0,1)");
    if (n0 == n1 && t0 == t1) return cmp3::eq;

    auto r0 = detail::exact_log_relation(n0, t0);
    auto r1 = detail::exact_log_relation(n1, t1);
    if (r0 && r1) {
        // compare -a0/b0 with -a1/b1 as exact fractions
        unsigned long long lhs = static_cast<unsigned long long>(r0->first) * r1->second;
        unsigned long long rhs = static_cast<unsigned long long>(r1->first) * r0->second;
        if (lhs == rhs) return cmp3::eq;
        return lhs > rhs ? cmp3::lt : cmp3::gt;
    }

    const bigint p0 = rat_num(t0), q0 = rat_den(t0);
    const bigint p1 = rat_num(t1), q1 = rat_den(t1);
    for (mpfr_prec_t bits = 64; bits <= static_cast<mpfr_prec_t>(max_bits); bits *= 4) {
        detail::MpInterval lp0(bits), lq0(bits), lp1(bits), lq1(bits);
        detail::MpInterval ln0(bits), ln1(bits);
        detail::int_ln(lp0, p0, bits);
        detail::int_ln(lq0, q0, bits);
        detail::int_ln(lp1, p1, bits);
        detail::int_ln(lq1, q1, bits);
        detail::int_ln(ln0, bigint(n0), bits);
        detail::int_ln(ln1, bigint(n1), bits);

        detail::MpInterval lt0(bits), lt1(bits);   // ln(theta) = ln p - ln q, negative
        detail::isub(lt0, lp0, lq0);
        detail::isub(lt1, lp1, lq1);

        detail::MpInterval prod0(bits), prod1(bits), diff(bits);
        detail::imul(prod0, lt0, ln1, bits);
        detail::imul(prod1, lt1, ln0, bits);
        detail::isub(diff, prod0, prod1);

        if (mpfr_sgn(diff.hi) < 0) return cmp3::lt;
        if (mpfr_sgn(diff.lo) > 0) return cmp3::gt;
    }
    fail(errc::undecidable_at_precision,
         "log comparison undecided at " + std::to_string(max_bits) + " bits");
}

} // namespace tsn
