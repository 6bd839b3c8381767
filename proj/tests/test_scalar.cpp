#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "tsn/scalar.hpp"

using namespace tsn;

TEST_CASE("scalar power comparison is exact") {
    // (1/16)^(1/4) = 1/2 exactly
    REQUIRE(scalar_cmp(ScalarPower(rat(1, 16), 1, 4), ScalarPower(rat(1, 2), 1, 1)) == cmp3::eq);
    // sqrt(1/2) > 1/2
    REQUIRE(scalar_cmp(ScalarPower(rat(1, 2), 1, 2), ScalarPower(rat(1, 2), 1, 1)) == cmp3::gt);
    REQUIRE(scalar_cmp(ScalarPower(rat(1, 3), 1, 1), ScalarPower(rat(1, 2), 1, 1)) == cmp3::lt);
    // (2/3)^2 = 4/9
    REQUIRE(scalar_cmp(ScalarPower(rat(4, 9), 1, 2), ScalarPower(rat(2, 3), 1, 1)) == cmp3::eq);
    REQUIRE(scalar_str(ScalarPower(rat(1, 16), 1, 4)) == "(1/16)^(1/4)");
    REQUIRE(scalar_str(ScalarPower(rat(1, 2), 1, 1)) == "(1/2)");
    // exponents reduce
    REQUIRE(scalar_str(ScalarPower(rat(1, 2), 2, 4)) == "(1/2)^(1/2)");
}

TEST_CASE("scalar comparison matches floating point when it clearly separates") {
    std::vector<ScalarPower> pool;
    for (auto [p, q] : {std::pair<int, int>{1, 2}, {1, 3}, {2, 3}, {1, 4}, {3, 4}, {3, 5}})
        for (auto [n, d] : {std::pair<int, int>{1, 1}, {1, 2}, {2, 1}, {1, 3}, {3, 2}})
            pool.emplace_back(rat(p, q), n, d);
    for (const auto& x : pool)
        for (const auto& y : pool) {
            double fx = std::pow(static_cast<double>(rat_num(x.base)) /
                                     static_cast<double>(rat_den(x.base)),
                                 static_cast<double>(x.num) / static_cast<double>(x.den));
            double fy = std::pow(static_cast<double>(rat_num(y.base)) /
                                     static_cast<double>(rat_den(y.base)),
                                 static_cast<double>(y.num) / static_cast<double>(y.den));
            if (std::abs(fx - fy) < 1e-9) continue; // too close for doubles to vote
            CAPTURE(scalar_str(x), scalar_str(y), fx, fy);
            REQUIRE(scalar_cmp(x, y) == (fx < fy ? cmp3::lt : cmp3::gt));
        }
}

TEST_CASE("log comparison decides exact relations and clear separations") {
    // log_2(1/2) = -1, log_2(1/4) = -2
    REQUIRE(log_compare(2, rat(1, 2), 2, rat(1, 4)) == cmp3::gt);
    // log_3(1/9) = -2 = log_9(1/81)
    REQUIRE(log_compare(3, rat(1, 9), 9, rat(1, 81)) == cmp3::eq);
    // log_2(1/2) = -1 = log_3(1/3)
    REQUIRE(log_compare(2, rat(1, 2), 3, rat(1, 3)) == cmp3::eq);
    // log_4(1/2) = -1/2 > log_2(1/2) = -1
    REQUIRE(log_compare(4, rat(1, 2), 2, rat(1, 2)) == cmp3::gt);
    // irrational logs separated by the interval ladder
    REQUIRE(log_compare(2, rat(1, 3), 2, rat(1, 2)) == cmp3::lt);
    REQUIRE(log_compare(3, rat(2, 3), 2, rat(1, 2)) == cmp3::gt);
    REQUIRE(log_compare(2, rat(1, 2), 2, rat(1, 2)) == cmp3::eq);
    REQUIRE_THROWS_AS(log_compare(1, rat(1, 2), 2, rat(1, 2)), error);
}

TEST_CASE("equal irrational logs are refused rather than guessed") {
    // log_3(2/3) and log_9(4/9) are the same real number, but neither is a
    // rational power relation the exact search can express, so the ladder
    // must give up instead of claiming equality or inventing a side.
    try {
        log_compare(3, rat(2, 3), 9, rat(4, 9), 256);
        FAIL("expected UndecidableAtPrecision");
    } catch (const error& e) {
        REQUIRE(e.code == errc::undecidable_at_precision);
    }
}

TEST_CASE("strength order on weighted pairs: frozen verdicts") {
    Ordinal w = Ordinal::omega();
    Ordinal w2 = ord_parse("w^2");
    // any infinite index beats any finite one
    REQUIRE(leq_T(Ordinal::fin(3), rat(1, 3), w, rat(1, 2)));
    REQUIRE_FALSE(leq_T(w, rat(1, 2), Ordinal::fin(3), rat(1, 3)));
    // same gamma class: compare theta0^{n(a1)} against theta1^{n(a0)}
    REQUIRE(leq_T(w, rat(1, 4), w2, rat(1, 2)));
    REQUIRE_FALSE(leq_T(w2, rat(1, 2), w, rat(1, 4)));
    // (w, 1/2) sits strictly below (w^2, 1/2): n(w)=1 but n(w^2)=2
    REQUIRE(leq_T(w, rat(1, 2), w2, rat(1, 2)));
    REQUIRE_FALSE(leq_T(w2, rat(1, 2), w, rat(1, 2)));
    // genuinely equivalent pairs compare both ways
    REQUIRE(leq_T(w, rat(1, 2), ord_parse("w*5+3"), rat(1, 2)));
    REQUIRE(leq_T(ord_parse("w*5+3"), rat(1, 2), w, rat(1, 2)));
    // different gamma classes are ordered by gamma alone
    REQUIRE(leq_T(w, rat(1, 100), ord_parse("w^{w}"), rat(99, 100)));
    REQUIRE_FALSE(leq_T(ord_parse("w^{w}"), rat(99, 100), w, rat(1, 100)));
    // finite side follows the log scale: a bigger log_n(theta) is a stronger pair
    REQUIRE(leq_T(Ordinal::fin(2), rat(1, 4), Ordinal::fin(2), rat(1, 2)));
    // log_4(1/2) = -1/2 beats log_2(1/2) = -1, so (4,1/2) sits strictly above
    REQUIRE(leq_T(Ordinal::fin(2), rat(1, 2), Ordinal::fin(4), rat(1, 2)));
    REQUIRE_FALSE(leq_T(Ordinal::fin(4), rat(1, 2), Ordinal::fin(2), rat(1, 2)));
    try {
        leq_T(Ordinal::fin(1), rat(1, 2), Ordinal::fin(2), rat(1, 2));
        FAIL("expected IndexOne");
    } catch (const error& e) {
        REQUIRE(e.code == errc::index_one);
    }
}

TEST_CASE("strength order is total and transitive on a mixed pool") {
    struct P {
        Ordinal a;
        rat t;
    };
    std::vector<P> pool = {
        {Ordinal::fin(2), rat(1, 2)},  {Ordinal::fin(2), rat(1, 4)},
        {Ordinal::fin(3), rat(1, 3)},  {Ordinal::fin(4), rat(1, 2)},
        {Ordinal::omega(), rat(1, 2)}, {Ordinal::omega(), rat(1, 3)},
        {ord_parse("w^2"), rat(1, 2)}, {ord_parse("w^2"), rat(1, 4)},
        {ord_parse("w*2+1"), rat(1, 2)}, {ord_parse("w^{w}"), rat(1, 2)},
        {ord_parse("w^{w*2}"), rat(1, 2)}, {ord_parse("w^{w}*3+w"), rat(2, 3)},
    };
    auto le = [](const P& x, const P& y) { return leq_T(x.a, x.t, y.a, y.t); };
    for (const auto& x : pool)
        for (const auto& y : pool) {
            CAPTURE(ord_str(x.a), rat_str(x.t), ord_str(y.a), rat_str(y.t));
            REQUIRE((le(x, y) || le(y, x)));
        }
    for (const auto& x : pool)
        for (const auto& y : pool)
            for (const auto& z : pool)
                if (le(x, y) && le(y, z)) {
                    CAPTURE(ord_str(x.a), rat_str(x.t), ord_str(z.a), rat_str(z.t));
                    REQUIRE(le(x, z));
                }
}
