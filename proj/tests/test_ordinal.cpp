#include <catch2/catch_amalgamated.hpp>

#include <optional>
#include <random>

#include "tsn/ordinal.hpp"

using namespace tsn;

namespace {

// Independent model of ordinals below w^4 as packed coefficient quadruples
// w^3*c3 + w^2*c2 + w*c1 + c0, with textbook case analysis for the
// arithmetic. Deliberately not sharing code with the tree representation, so
// the two implementations can disagree.
struct Q4 {
    unsigned long long c[4] = {0, 0, 0, 0}; // c[k] multiplies w^k

    bool zero() const { return !c[0] && !c[1] && !c[2] && !c[3]; }
    int top() const {
        for (int k = 3; k >= 0; --k)
            if (c[k]) return k;
        return -1;
    }
};

int q4_cmp(const Q4& a, const Q4& b) {
    for (int k = 3; k >= 0; --k)
        if (a.c[k] != b.c[k]) return a.c[k] < b.c[k] ? -1 : 1;
    return 0;
}

// addition erases everything on the left below the leading term of the right
Q4 q4_add(const Q4& a, const Q4& b) {
    int k = b.top();
    if (k < 0) return a;
    Q4 r;
    for (int j = 3; j > k; --j) r.c[j] = a.c[j];
    r.c[k] = a.c[k] + b.c[k];
    for (int j = k - 1; j >= 0; --j) r.c[j] = b.c[j];
    return r;
}

// a * w^k*m for a single term; nullopt when the product escapes w^4
std::optional<Q4> q4_mul_term(const Q4& a, int k, unsigned long long m) {
    Q4 r;
    if (a.zero() || m == 0) return r;
    int h = a.top();
    if (k == 0) {
        r = a;
        r.c[h] = a.c[h] * m;
        return r;
    }
    if (h + k > 3) return std::nullopt;
    r.c[h + k] = m;
    return r;
}

// left distributivity over the right-hand normal form
std::optional<Q4> q4_mul(const Q4& a, const Q4& b) {
    Q4 r;
    for (int k = 3; k >= 0; --k) {
        if (!b.c[k]) continue;
        auto part = q4_mul_term(a, k, b.c[k]);
        if (!part) return std::nullopt;
        r = q4_add(r, *part);
    }
    return r;
}

Ordinal to_ord(const Q4& a) {
    Ordinal r;
    for (int k = 3; k >= 0; --k)
        if (a.c[k]) r = ord_add(r, Ordinal::mono(Ordinal::fin(k), a.c[k]));
    return r;
}

Q4 rand_q4(std::mt19937_64& g, int maxtop) {
    Q4 a;
    for (int k = 0; k <= maxtop; ++k) a.c[k] = g() % 5;
    return a;
}

} // namespace

TEST_CASE("ordinal comparison agrees with the packed model") {
    std::mt19937_64 g(101);
    for (int t = 0; t < 500; ++t) {
        Q4 a = rand_q4(g, 3), b = rand_q4(g, 3);
        CAPTURE(ord_str(to_ord(a)), ord_str(to_ord(b)));
        REQUIRE(ord_cmp(to_ord(a), to_ord(b)) == q4_cmp(a, b));
    }
}

TEST_CASE("ordinal addition agrees with the packed model") {
    std::mt19937_64 g(102);
    for (int t = 0; t < 500; ++t) {
        Q4 a = rand_q4(g, 3), b = rand_q4(g, 3);
        CAPTURE(ord_str(to_ord(a)), ord_str(to_ord(b)));
        REQUIRE(ord_eq(ord_add(to_ord(a), to_ord(b)), to_ord(q4_add(a, b))));
    }
}

TEST_CASE("ordinal multiplication agrees with the packed model") {
    std::mt19937_64 g(103);
    int done = 0;
    for (int t = 0; t < 2000 && done < 500; ++t) {
        Q4 a = rand_q4(g, 2), b = rand_q4(g, 1);
        auto expect = q4_mul(a, b);
        if (!expect) continue; // product escaped the model's range
        CAPTURE(ord_str(to_ord(a)), ord_str(to_ord(b)));
        REQUIRE(ord_eq(ord_mul(to_ord(a), to_ord(b)), to_ord(*expect)));
        ++done;
    }
    REQUIRE(done == 500);
}

TEST_CASE("frozen arithmetic identities") {
    REQUIRE(ord_str(ord_add(ord_parse("w"), ord_parse("w"))) == "w*2");
    REQUIRE(ord_str(ord_add(ord_parse("1"), ord_parse("w"))) == "w");
    REQUIRE(ord_str(ord_add(ord_parse("w"), ord_parse("1"))) == "w+1");
    REQUIRE(ord_str(ord_mul(ord_parse("2"), ord_parse("w^2"))) == "w^2");
    REQUIRE(ord_str(ord_mul(ord_parse("w^2"), ord_parse("2"))) == "w^2*2");
    REQUIRE(ord_eq(ord_pow_nat(ord_parse("w+1"), 2), ord_parse("w^2+w+1")));
    REQUIRE(ord_eq(ord_pow_nat(ord_parse("w"), 3), ord_parse("w^3")));
    REQUIRE(ord_str(ord_pow_nat(ord_parse("w"), 0)) == "1");
}

TEST_CASE("decompose splits off the leading term and reassembles") {
    std::mt19937_64 g(104);
    for (int t = 0; t < 300; ++t) {
        Q4 q = rand_q4(g, 3);
        if (q.zero()) continue;
        Ordinal a = to_ord(q);
        Decomp d = decompose(a);
        REQUIRE(d.k >= 1);
        REQUIRE(ord_lt(d.xi, Ordinal::mono(d.lambda, 1)));
        REQUIRE(ord_eq(ord_add(Ordinal::mono(d.lambda, d.k), d.xi), a));
    }
    REQUIRE_THROWS_AS(decompose(Ordinal::zero()), error);
}

TEST_CASE("gamma lands on w^{w^beta} and is idempotent") {
    auto shapes = {"w", "w*3+2", "w^2", "w^{w}*5", "w^{w^2*3+w}*4+w^5", "w^{w^{w}}+w"};
    for (const char* s : shapes) {
        Ordinal a = ord_parse(s);
        Ordinal gam = gamma_of(a);
        CAPTURE(s, ord_str(gam));
        // single monomial, coefficient 1, exponent itself w^beta with coefficient 1
        REQUIRE(gam.terms.size() == 1);
        REQUIRE(gam.terms[0].coeff == 1);
        REQUIRE(gam.terms[0].exp.terms.size() == 1);
        REQUIRE(gam.terms[0].exp.terms[0].coeff == 1);
        REQUIRE(ord_eq(gamma_of(gam), gam));
    }
    REQUIRE(ord_eq(gamma_of(Ordinal::fin(7)), Ordinal::fin(7)));
}

TEST_CASE("gamma and n on the worked decomposition") {
    Ordinal a = ord_parse("w^{w^2*3+w}*4+w^5");
    REQUIRE(ord_eq(gamma_of(a), ord_parse("w^{w^2}")));
    REQUIRE(n_of(a) == 3);
    REQUIRE(n_of(ord_parse("w")) == 1);
    REQUIRE(n_of(ord_parse("w^{w*2}")) == 2);
    REQUIRE(n_of(Ordinal::fin(9)) == 1);
}

TEST_CASE("fundamental sequences") {
    REQUIRE(ord_eq(fundamental_seq(ord_parse("w"), 4), Ordinal::fin(4)));
    REQUIRE(ord_eq(fundamental_seq(ord_parse("w^2"), 3), ord_parse("w*3")));
    REQUIRE(ord_eq(fundamental_seq(ord_parse("w^2+w"), 5), ord_parse("w^2+5")));
    REQUIRE(ord_eq(fundamental_seq(ord_parse("w^{w}"), 3), ord_parse("w^3")));
    REQUIRE(ord_eq(fundamental_seq(ord_parse("w^{w}*2"), 3), ord_parse("w^{w}+w^3")));
    REQUIRE(ord_eq(fundamental_seq(ord_parse("w^{w+1}"), 2), ord_parse("w^{w}*2")));
    REQUIRE_THROWS_AS(fundamental_seq(ord_parse("w+1"), 2), error);
    REQUIRE_THROWS_AS(fundamental_seq(Ordinal::fin(5), 2), error);
    // the sequence climbs toward its limit
    Ordinal lam = ord_parse("w^{w}");
    for (unsigned long long n = 1; n < 6; ++n) {
        REQUIRE(ord_lt(fundamental_seq(lam, n), lam));
        REQUIRE(ord_lt(fundamental_seq(lam, n), fundamental_seq(lam, n + 1)));
    }
}

TEST_CASE("ordinal text round-trips and rejects garbage") {
    std::mt19937_64 g(105);
    for (int t = 0; t < 300; ++t) {
        Q4 q = rand_q4(g, 3);
        Ordinal a = to_ord(q);
        REQUIRE(ord_eq(ord_parse(ord_str(a)), a));
    }
    // deeper towers round-trip too
    for (const char* s : {"w^{w^{w}}", "w^{w*2+1}*7+w^2*2+1", "0", "w^{w^2}"}) {
        Ordinal a = ord_parse(s);
        REQUIRE(ord_eq(ord_parse(ord_str(a)), a));
    }
    REQUIRE(ord_str(ord_parse("w^{0}")) == "1");
    REQUIRE_THROWS_AS(ord_parse(""), error);
    REQUIRE_THROWS_AS(ord_parse("w^"), error);
    REQUIRE_THROWS_AS(ord_parse("w+"), error);
    REQUIRE_THROWS_AS(ord_parse("x"), error);
    REQUIRE_THROWS_AS(ord_parse("w^{w"), error);
}
