#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <random>

#include "tsn/cache.hpp"
#include "tsn/json_io.hpp"
#include "tsn/norm.hpp"

using namespace tsn;

TEST_CASE("ordinal JSON round-trips") {
    std::vector<std::string> cases = {"0", "1", "w", "w*2+1", "w^3*4+w*5", "w^{w}",
                                      "w^{w^2+1}*3+w^4+7"};
    for (const auto& s : cases) {
        Ordinal a = ord_parse(s);
        CAPTURE(s);
        REQUIRE(ord_eq(ord_from_json(ord_to_json(a)), a));
    }
    REQUIRE_THROWS_AS(ord_from_json(json{{"exp", 1}}), error);
    REQUIRE_THROWS_AS(ord_from_json(json::array({json{{"coeff", 2}}})), error);
}

TEST_CASE("vector JSON round-trips and rejects duplicates") {
    std::mt19937_64 g(901);
    for (int t = 0; t < 50; ++t) {
        Vector x;
        long long sz = (long long)(g() % 6);
        while ((long long)x.w.size() < sz) {
            long long num = (long long)(g() % 11) - 5;
            if (num == 0) num = 3;
            x.set(1 + (long long)(g() % 30), rat(num) / (long long)(1 + g() % 7));
        }
        REQUIRE(vec_from_json(vec_to_json(x)) == x);
    }
    json dup = json::array({json{{"pos", 2}, {"num", 1}, {"den", 2}},
                            json{{"pos", 2}, {"num", 1}, {"den", 3}}});
    REQUIRE_THROWS_AS(vec_from_json(dup), error);
    json zero = json::array({json{{"pos", 2}, {"num", 1}, {"den", 0}}});
    REQUIRE_THROWS_AS(vec_from_json(zero), error);
}

TEST_CASE("functional JSON round-trips, including norm certificates") {
    FunP f = Fun::node(0, {Fun::leaf(rat(1), 2), Fun::node(1, {Fun::leaf(rat(-1, 2), 4),
                                                               Fun::leaf(rat(1), 7)})});
    FunP back = fun_from_json(fun_to_json(f));
    REQUIRE(fun_to_json(back) == fun_to_json(f));
    REQUIRE(back->support == f->support);

    Space sp = space_parse("{S[1],1/2;[<=3],2/3}");
    Vector x;
    for (long long p = 2; p <= 6; ++p) x.set(p, rat(1, p));
    NormResult r = norm(sp, x);
    FunP cert = fun_from_json(fun_to_json(r.cert));
    REQUIRE(fun_to_json(cert) == fun_to_json(r.cert));
    REQUIRE(eval(sp, cert, x) == r.value);

    REQUIRE_THROWS_AS(fun_from_json(json{{"twig", 1}}), error);
}

TEST_CASE("canonical class JSON shapes") {
    json inf = class_to_json(canonical_class(space_parse("{S[w^3*4+w*5],1/16}")));
    REQUIRE(inf["kind"] == "infinite");
    REQUIRE(ord_eq(ord_from_json(inf["alpha"]), Ordinal::fin(3)));
    REQUIRE(inf["theta"]["base"] == "1/16");
    REQUIRE(inf["theta"]["exp"] == "1/4");

    json c0 = class_to_json(canonical_class(space_parse("{[<=2],1/2}")));
    REQUIRE(c0 == json{{"kind", "c0"}});

    json lp = class_to_json(canonical_class(space_parse("{[<=3],2/3}")));
    REQUIRE(lp["kind"] == "lp");
    REQUIRE(lp["n"] == 3);
    REQUIRE(lp["theta"] == "2/3");
}

TEST_CASE("cache round-trip, key stability, version gating") {
    std::string file = "/tmp/tsn_cache_test.json";
    std::remove(file.c_str());

    Space sp = space_parse("{S[1],1/2}");
    Vector x;
    for (long long p = 2; p <= 5; ++p) x.set(p, rat(1));
    std::string key = cache_key(sp, x);
    REQUIRE(key.size() == 16);
    REQUIRE(key == cache_key(sp, x));

    Vector y = x;
    y.set(6, rat(1));
    REQUIRE(key != cache_key(sp, y));
    REQUIRE(key != cache_key(space_parse("{S[1],1/3}"), x));

    {
        Cache c = Cache::load(file);
        REQUIRE_FALSE(c.lookup(key).has_value());
        c.store(key, json{{"value", "3/2"}});
        c.save();
    }
    {
        Cache c = Cache::load(file);
        auto hit = c.lookup(key);
        REQUIRE(hit.has_value());
        REQUIRE((*hit)["value"] == "3/2");
        REQUIRE((*hit).contains("timestamp"));
    }

    // stamp a different engine version: every entry goes cold
    {
        std::ifstream in(file);
        json doc;
        in >> doc;
        doc["version"] = "0.0.0";
        std::ofstream out(file);
        out << doc.dump(2) << "\n";
    }
    {
        Cache c = Cache::load(file);
        REQUIRE_FALSE(c.lookup(key).has_value());
    }

    // garbage on disk is just a cold cache
    {
        std::ofstream out(file);
        out << "not json";
    }
    REQUIRE_FALSE(Cache::load(file).lookup(key).has_value());
    std::remove(file.c_str());
}
