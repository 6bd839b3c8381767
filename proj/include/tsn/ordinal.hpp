#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "tsn/errors.hpp"

namespace tsn {

// Ordinals below epsilon_0 in Cantor normal form:
//   alpha = w^{e_1}*c_1 + ... + w^{e_k}*c_k,  e_1 > e_2 > ... > e_k,  c_i >= 1.
// Exponents are ordinals again, so the representation is a finite tree.
// Zero is the empty sum. The vector member with an incomplete element type is
// fine: std::vector supports that since C++17.
struct Ordinal {
    struct Term;
    std::vector<Term> terms;

    bool is_zero() const { return terms.empty(); }
    bool is_finite() const;
    bool is_limit() const;      // nonzero with no finite part
    bool is_successor() const;  // nonzero with a finite part

    // value of a finite ordinal; callers must check is_finite first
    unsigned long long fin_value() const;

    static Ordinal zero() { return Ordinal{}; }
    static Ordinal fin(unsigned long long n);
    static Ordinal omega();
    // w^e * c
    static Ordinal mono(const Ordinal& e, unsigned long long c);
};

struct Ordinal::Term {
    Ordinal exp;
    unsigned long long coeff = 0;
};

inline Ordinal Ordinal::fin(unsigned long long n) {
    Ordinal a;
    if (n) a.terms.push_back({Ordinal{}, n});
    return a;
}

inline Ordinal Ordinal::mono(const Ordinal& e, unsigned long long c) {
    Ordinal a;
    if (c) a.terms.push_back({e, c});
    return a;
}

inline Ordinal Ordinal::omega() { return mono(fin(1), 1); }

inline bool Ordinal::is_finite() const {
    return terms.empty() || (terms.size() == 1 && terms[0].exp.is_zero());
}

inline unsigned long long Ordinal::fin_value() const {
    if (terms.empty()) return 0;
    if (!is_finite()) fail(errc::internal, "fin_value on infinite ordinal");
    return terms[0].coeff;
}

inline bool Ordinal::is_limit() const {
    return !terms.empty() && !terms.back().exp.is_zero();
}

inline bool Ordinal::is_successor() const {
    return !terms.empty() && terms.back().exp.is_zero();
}

// -1 / 0 / +1. CNF compares lexicographically term by term; if one term list
// is a proper prefix of the other, the longer one is larger (its extra terms
// are a positive remainder).
inline int ord_cmp(const Ordinal& a, const Ordinal& b) {
    size_t n = a.terms.size() < b.terms.size() ? a.terms.size() : b.terms.size();
    for (size_t i = 0; i < n; ++i) {
        int c = ord_cmp(a.terms[i].exp, b.terms[i].exp);
        if (c != 0) return c;
        if (a.terms[i].coeff != b.terms[i].coeff)
            return a.terms[i].coeff < b.terms[i].coeff ? -1 : 1;
    }
    if (a.terms.size() == b.terms.size()) return 0;
    return a.terms.size() < b.terms.size() ? -1 : 1;
}

inline bool ord_eq(const Ordinal& a, const Ordinal& b) { return ord_cmp(a, b) == 0; }
inline bool ord_lt(const Ordinal& a, const Ordinal& b) { return ord_cmp(a, b) < 0; }

namespace detail {
inline unsigned long long mul_coeff(unsigned long long a, unsigned long long b) {
    if (a != 0 && b > ~0ull / a) fail(errc::internal, "ordinal coefficient overflow");
    return a * b;
}
inline unsigned long long add_coeff(unsigned long long a, unsigned long long b) {
    if (b > ~0ull - a) fail(errc::internal, "ordinal coefficient overflow");
    return a + b;
}
} // namespace detail

// a + b: terms of a strictly below the leading exponent of b are absorbed.
inline Ordinal ord_add(const Ordinal& a, const Ordinal& b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return b;
    const Ordinal& e = b.terms[0].exp;
    Ordinal r;
    size_t i = 0;
    while (i < a.terms.size() && ord_cmp(a.terms[i].exp, e) > 0)
        r.terms.push_back(a.terms[i++]);
    if (i < a.terms.size() && ord_eq(a.terms[i].exp, e)) {
        r.terms.push_back({e, detail::add_coeff(a.terms[i].coeff, b.terms[0].coeff)});
    } else {
        r.terms.push_back(b.terms[0]);
    }
    for (size_t j = 1; j < b.terms.size(); ++j) r.terms.push_back(b.terms[j]);
    return r;
}

// a * b via left distributivity a*(x+y) = a*x + a*y, which is valid for
// ordinals. For a single right term:
//   a * w^f * d        = w^{e1 + f} * d          (f > 0, e1 leading exp of a)
//   a * d (finite d>0) = w^{e1} * (c1*d) + tail(a)
inline Ordinal ord_mul(const Ordinal& a, const Ordinal& b) {
    if (a.is_zero() || b.is_zero()) return Ordinal{};
    Ordinal r;
    const Ordinal& e1 = a.terms[0].exp;
    for (const auto& t : b.terms) {
        Ordinal part;
        if (t.exp.is_zero()) {
            part.terms.push_back({e1, detail::mul_coeff(a.terms[0].coeff, t.coeff)});
            for (size_t j = 1; j < a.terms.size(); ++j) part.terms.push_back(a.terms[j]);
        } else {
            part.terms.push_back({ord_add(e1, t.exp), t.coeff});
        }
        r = ord_add(r, part);
    }
    return r;
}

// a^k for natural k
inline Ordinal ord_pow_nat(const Ordinal& a, unsigned long long k) {
    Ordinal r = Ordinal::fin(1);
    for (unsigned long long i = 0; i < k; ++i) r = ord_mul(r, a);
    return r;
}

// alpha = w^lambda * k + xi with xi < w^lambda
struct Decomp {
    Ordinal lambda;
    unsigned long long k = 0;
    Ordinal xi;
};

inline Decomp decompose(const Ordinal& a) {
    if (a.is_zero()) fail(errc::zero_ordinal, "decompose needs alpha > 0");
    Decomp d;
    d.lambda = a.terms[0].exp;
    d.k = a.terms[0].coeff;
    d.xi.terms.assign(a.terms.begin() + 1, a.terms.end());
    return d;
}

// gamma(alpha): alpha itself when finite, else w^{w^{lambda(lambda(alpha))}}.
inline Ordinal gamma_of(const Ordinal& a) {
    if (a.is_zero()) fail(errc::zero_ordinal, "gamma needs alpha > 0");
    if (a.is_finite()) return a;
    const Ordinal& l1 = a.terms[0].exp;      // lambda(alpha) > 0
    const Ordinal& l2 = l1.terms[0].exp;     // lambda of that
    return Ordinal::mono(Ordinal::mono(l2, 1), 1);
}

// n(alpha): 1 when finite, else the leading coefficient of lambda(alpha).
inline unsigned long long n_of(const Ordinal& a) {
    if (a.is_zero()) fail(errc::zero_ordinal, "n needs alpha > 0");
    if (a.is_finite()) return 1;
    return a.terms[0].exp.terms[0].coeff;
}

// predecessor of a successor ordinal
inline Ordinal ord_pred(const Ordinal& a) {
    if (!a.is_successor()) fail(errc::internal, "pred of non-successor");
    Ordinal r = a;
    if (r.terms.back().coeff > 1)
        r.terms.back().coeff -= 1;
    else
        r.terms.pop_back();
    return r;
}

// Canonical fundamental sequence of a limit ordinal, n >= 1:
//   (gamma + w^{e+1})[n] = gamma + w^{e} * n
//   (gamma + w^{e})[n]   = gamma + w^{e[n]}   for e a limit
inline Ordinal fundamental_seq(const Ordinal& lam, unsigned long long n) {
    if (!lam.is_limit()) fail(errc::not_limit, "fundamental sequence of a non-limit");
    if (n == 0) fail(errc::internal, "fundamental sequence index must be >= 1");
    Ordinal prefix = lam;
    Ordinal e = prefix.terms.back().exp;
    if (prefix.terms.back().coeff > 1)
        prefix.terms.back().coeff -= 1;
    else
        prefix.terms.pop_back();
    if (e.is_successor()) {
        // append w^{e-1} * n; exponent strictly drops so CNF order is kept
        prefix.terms.push_back({ord_pred(e), n});
    } else {
        prefix.terms.push_back({fundamental_seq(e, n), 1});
    }
    return prefix;
}

// ---- text form ----------------------------------------------------------
// term := nat | 'w' ('^' '{' ordinal '}' | '^' nat)? ('*' nat)?
// ordinal := term ('+' term)*
// Terms are folded with ord_add, so non-canonical input like "w+w" or "1+w"
// is accepted and means exactly what ordinal addition says it means.

inline std::string ord_str(const Ordinal& a) {
    if (a.is_zero()) return "0";
    std::string out;
    for (size_t i = 0; i < a.terms.size(); ++i) {
        const auto& t = a.terms[i];
        if (i) out += "+";
        if (t.exp.is_zero()) {
            out += std::to_string(t.coeff);
            continue;
        }
        if (t.exp.is_finite() && t.exp.fin_value() == 1)
            out += "w";
        else if (t.exp.is_finite())
            out += "w^" + std::to_string(t.exp.fin_value());
        else
            out += "w^{" + ord_str(t.exp) + "}";
        if (t.coeff != 1) out += "*" + std::to_string(t.coeff);
    }
    return out;
}

namespace detail {

struct OrdParser {
    const std::string& s;
    size_t i = 0;

    explicit OrdParser(const std::string& str) : s(str) {}

    void ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        ws();
        if (i < s.size() && s[i] == c) { ++i; return true; }
        return false;
    }
    [[noreturn]] void bad() { fail(errc::parse, "bad ordinal '" + s + "'"); }

    unsigned long long nat() {
        ws();
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) bad();
        unsigned long long v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            unsigned long long d = s[i] - '0';
            if (v > (~0ull - d) / 10) bad();
            v = v * 10 + d;
            ++i;
        }
        return v;
    }

    Ordinal term() {
        ws();
        if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            return Ordinal::fin(nat());
        if (i >= s.size() || s[i] != 'w') bad();
        ++i;
        Ordinal e = Ordinal::fin(1);
        if (eat('^')) {
            if (eat('{')) {
                e = ordinal();
                if (!eat('}')) bad();
            } else {
                e = Ordinal::fin(nat());
            }
        }
        unsigned long long c = 1;
        if (eat('*')) c = nat();
        if (e.is_zero()) return Ordinal::fin(c); // w^{0} is 1
        return Ordinal::mono(e, c);
    }

    Ordinal ordinal() {
        Ordinal r = term();
        while (eat('+')) r = ord_add(r, term());
        return r;
    }
};

} // namespace detail

inline Ordinal ord_parse(const std::string& s) {
    detail::OrdParser p(s);
    Ordinal r = p.ordinal();
    p.ws();
    if (p.i != s.size()) p.bad();
    return r;
}

} // namespace tsn
