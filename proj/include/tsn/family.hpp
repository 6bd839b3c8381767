#pragma once

#include <cctype>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "tsn/errors.hpp"
#include "tsn/finset.hpp"
#include "tsn/ordinal.hpp"

namespace tsn {

// Symbolic compact-family expressions. Nodes are immutable and shared; the
// canonical printed form is computed once at construction and doubles as the
// memoization key everywhere downstream.
//
// Grammar (parse/print round-trips):
//   family := 'S[' ordinal ']'        Schreier family of that order
//           | '[<=' nat ']'           sets of at most n elements
//           | family '(+)' family     block sum; the left operand's sets sit low (to the left)
//           | family '(x)' family     F (x) G: F-blocks whose minima form a G-set
//           | family '^' nat          (x)-power
//           | 'Ad(' family ')'        singleton-admissibility closure
//           | 'spr(' family ')'       spreading closure
//           | family '|' ground       restriction to a ground set
//           | 'IL(' family ')'        interlaced copy living on even positions
//   ground := 'full' | 'tail(' nat ')' | 'ap(' nat ',' nat ')'
// Precedence: ^ binds tightest, then (x), then (+), then '|'.
struct Family;
using FamilyP = std::shared_ptr<const Family>;

struct Family {
    enum class Kind { card, schreier, sum, conv, power, spread, ad, restrict_, interlace };

    Kind kind;
    unsigned long long n = 0;   // card bound or power exponent
    Ordinal alpha;              // schreier order
    FamilyP a, b;               // operands (a only, for unary)
    Ground ground;              // restrict_
    std::string canon;          // canonical text, set by make()

    explicit Family(Kind k) : kind(k) {}
};

inline std::string family_str(const FamilyP& f);

namespace detail {
inline FamilyP finish(std::shared_ptr<Family> f) {
    f->canon = family_str(f);
    return f;
}
} // namespace detail

inline FamilyP fam_card(unsigned long long n) {
    auto f = std::make_shared<Family>(Family::Kind::card);
    f->n = n;
    return detail::finish(f);
}

inline FamilyP fam_schreier(const Ordinal& alpha) {
    if (alpha.is_zero()) fail(errc::zero_ordinal, "Schreier order must be >= 1");
    auto f = std::make_shared<Family>(Family::Kind::schreier);
    f->alpha = alpha;
    return detail::finish(f);
}

inline FamilyP fam_sum(FamilyP hi, FamilyP lo) {
    auto f = std::make_shared<Family>(Family::Kind::sum);
    f->a = std::move(hi);
    f->b = std::move(lo);
    return detail::finish(f);
}

inline FamilyP fam_conv(FamilyP parts, FamilyP mins) {
    auto f = std::make_shared<Family>(Family::Kind::conv);
    f->a = std::move(parts);
    f->b = std::move(mins);
    return detail::finish(f);
}

inline FamilyP fam_power(FamilyP base, unsigned long long m) {
    if (m == 0) fail(errc::parse, "power exponent must be >= 1");
    auto f = std::make_shared<Family>(Family::Kind::power);
    f->a = std::move(base);
    f->n = m;
    return detail::finish(f);
}

inline FamilyP fam_spread(FamilyP base) {
    auto f = std::make_shared<Family>(Family::Kind::spread);
    f->a = std::move(base);
    return detail::finish(f);
}

inline FamilyP fam_ad(FamilyP base) {
    auto f = std::make_shared<Family>(Family::Kind::ad);
    f->a = std::move(base);
    return detail::finish(f);
}

inline FamilyP fam_restrict(FamilyP base, const Ground& g) {
    auto f = std::make_shared<Family>(Family::Kind::restrict_);
    f->a = std::move(base);
    f->ground = g;
    return detail::finish(f);
}

inline FamilyP fam_interlace(FamilyP base) {
    auto f = std::make_shared<Family>(Family::Kind::interlace);
    f->a = std::move(base);
    return detail::finish(f);
}

// ---- printing ------------------------------------------------------------

namespace detail {
// binding strength of each construct, for minimal parenthesization
inline int fam_prec(const Family& f) {
    switch (f.kind) {
        case Family::Kind::restrict_: return 0;
        case Family::Kind::sum: return 1;
        case Family::Kind::conv: return 2;
        case Family::Kind::power: return 3;
        default: return 4; // atoms and function-style forms
    }
}

inline std::string fam_print(const FamilyP& f, int need) {
    const Family& x = *f;
    std::string s;
    switch (x.kind) {
        case Family::Kind::card:
            s = "[<=" + std::to_string(x.n) + "]";
            break;
        case Family::Kind::schreier:
            s = "S[" + ord_str(x.alpha) + "]";
            break;
        case Family::Kind::sum:
            s = fam_print(x.b, 1) + "(+)" + fam_print(x.a, 2);
            break;
        case Family::Kind::conv:
            s = fam_print(x.a, 2) + "(x)" + fam_print(x.b, 3);
            break;
        case Family::Kind::power:
            s = fam_print(x.a, 4) + "^" + std::to_string(x.n);
            break;
        case Family::Kind::spread:
            s = "spr(" + fam_print(x.a, 0) + ")";
            break;
        case Family::Kind::ad:
            s = "Ad(" + fam_print(x.a, 0) + ")";
            break;
        case Family::Kind::restrict_:
            s = fam_print(x.a, 1) + "|" + ground_str(x.ground);
            break;
        case Family::Kind::interlace:
            s = "IL(" + fam_print(x.a, 0) + ")";
            break;
    }
    if (fam_prec(x) < need) s = "(" + s + ")";
    return s;
}
} // namespace detail

inline std::string family_str(const FamilyP& f) {
    return detail::fam_print(f, 0);
}

inline bool family_eq(const FamilyP& f, const FamilyP& g) { return f->canon == g->canon; }

// ---- parsing ---------------------------------------------------------------

namespace detail {

struct FamParser {
    const std::string& s;
    size_t i = 0;

    explicit FamParser(const std::string& str) : s(str) {}

    void ws() { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; }
    [[noreturn]] void bad() { fail(errc::parse, "bad family '" + s + "'"); }

    bool lit(const char* t) {
        ws();
        size_t n = std::char_traits<char>::length(t);
        if (s.compare(i, n, t) == 0) { i += n; return true; }
        return false;
    }

    unsigned long long nat() {
        ws();
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) bad();
        unsigned long long v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            v = v * 10 + (s[i++] - '0');
        return v;
    }

    // the region between matching brackets, for handing to ord_parse
    std::string bracketed(char open, char close) {
        ws();
        if (i >= s.size() || s[i] != open) bad();
        size_t depth = 0, start = ++i;
        while (i < s.size()) {
            if (s[i] == open) ++depth;
            else if (s[i] == close) {
                if (depth == 0) { std::string body = s.substr(start, i - start); ++i; return body; }
                --depth;
            }
            ++i;
        }
        bad();
    }

    Ground ground() {
        if (lit("full")) return Ground::full();
        if (lit("tail")) {
            if (!lit("(")) bad();
            long long m = static_cast<long long>(nat());
            if (!lit(")")) bad();
            return Ground::tail(m);
        }
        if (lit("ap")) {
            if (!lit("(")) bad();
            long long a = static_cast<long long>(nat());
            if (!lit(",")) bad();
            long long d = static_cast<long long>(nat());
            if (!lit(")")) bad();
            if (d < 1) bad();
            return Ground::ap(a, d);
        }
        if (lit("xt")) {
            if (!lit("(")) bad();
            ws();
            size_t close = s.find('}', i);
            if (i >= s.size() || s[i] != '{' || close == std::string::npos) bad();
            FinSet pre = set_parse(s.substr(i, close - i + 1));
            i = close + 1;
            if (!lit(",")) bad();
            long long m = static_cast<long long>(nat());
            if (!lit(")")) bad();
            return Ground::xtail(pre, m);
        }
        bad();
    }

    FamilyP atom() {
        ws();
        if (lit("S[")) {
            size_t start = i;
            size_t depth = 0;
            while (i < s.size() && (s[i] != ']' || depth)) {
                if (s[i] == '[') ++depth;
                if (s[i] == ']') --depth;
                ++i;
            }
            if (i >= s.size()) bad();
            Ordinal a = ord_parse(s.substr(start, i - start));
            ++i;
            return fam_schreier(a);
        }
        if (lit("[<=")) {
            unsigned long long n = nat();
            if (!lit("]")) bad();
            return fam_card(n);
        }
        if (lit("Ad(")) { FamilyP f = family(); if (!lit(")")) bad(); return fam_ad(f); }
        if (lit("spr(")) { FamilyP f = family(); if (!lit(")")) bad(); return fam_spread(f); }
        if (lit("IL(")) { FamilyP f = family(); if (!lit(")")) bad(); return fam_interlace(f); }
        if (lit("(")) { FamilyP f = family(); if (!lit(")")) bad(); return f; }
        bad();
    }

    FamilyP powexpr() {
        FamilyP f = atom();
        while (true) {
            ws();
            if (i < s.size() && s[i] == '^') { ++i; f = fam_power(f, nat()); }
            else break;
        }
        return f;
    }

    FamilyP convexpr() {
        FamilyP f = powexpr();
        while (lit("(x)")) f = fam_conv(f, powexpr());
        return f;
    }

    FamilyP sumexpr() {
        FamilyP f = convexpr();
        while (lit("(+)")) f = fam_sum(convexpr(), f);
        return f;
    }

    FamilyP family() {
        FamilyP f = sumexpr();
        while (true) {
            ws();
            // '|' restricts; make sure we are not looking at something else
            if (i < s.size() && s[i] == '|') { ++i; f = fam_restrict(f, ground()); }
            else break;
        }
        return f;
    }
};

} // namespace detail

inline FamilyP family_parse(const std::string& str) {
    detail::FamParser p(str);
    FamilyP f = p.family();
    p.ws();
    if (p.i != str.size()) p.bad();
    return f;
}

// ---- syntactic classifiers -------------------------------------------------

// The regular fragment: compositions of [<=n] and S[alpha] under (+), (x),
// power, and restriction. Everything here is compact, hereditary and
// spreading on its ground set, with a computable exact index.
inline bool regular_fragment(const FamilyP& f) {
    switch (f->kind) {
        case Family::Kind::card:
        case Family::Kind::schreier:
            return true;
        case Family::Kind::sum:
        case Family::Kind::conv:
            return regular_fragment(f->a) && regular_fragment(f->b);
        case Family::Kind::power:
        case Family::Kind::restrict_:
            return regular_fragment(f->a);
        default:
            return false;
    }
}

// Sound but incomplete test for spreading (closed under moving elements to
// the right). Used to pick the fast admissibility path; "false" only means
// we take the general path.
inline bool spreading_syntactic(const FamilyP& f) {
    switch (f->kind) {
        case Family::Kind::card:
        case Family::Kind::schreier:
        case Family::Kind::spread:
            return true;
        case Family::Kind::sum:
        case Family::Kind::conv:
            return spreading_syntactic(f->a) && spreading_syntactic(f->b);
        case Family::Kind::power:
            return spreading_syntactic(f->a);
        case Family::Kind::ad:
            // Ad of a spreading family is that family again
            return spreading_syntactic(f->a);
        default:
            return false;
    }
}

} // namespace tsn
