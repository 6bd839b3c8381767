#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "tsn/classify.hpp"
#include "tsn/errors.hpp"
#include "tsn/functional.hpp"
#include "tsn/ordinal.hpp"
#include "tsn/rational.hpp"
#include "tsn/vector.hpp"

namespace tsn {

using json = nlohmann::json;

namespace detail {

// Big integers ride as JSON numbers while they fit, strings past that.
inline json bigint_to_json(const bigint& x) {
    if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
        return static_cast<long long>(x);
    return x.str();
}

inline bigint bigint_from_json(const json& j) {
    if (j.is_number_integer()) return bigint(j.get<long long>());
    if (j.is_string()) return bigint(j.get<std::string>());
    fail(errc::parse, "expected an integer");
}

} // namespace detail

// Ordinals as arrays of {exp, coeff} with exp nested recursively.
inline json ord_to_json(const Ordinal& a) {
    json arr = json::array();
    for (const auto& t : a.terms) arr.push_back(json{{"exp", ord_to_json(t.exp)}, {"coeff", t.coeff}});
    return arr;
}

inline Ordinal ord_from_json(const json& j) {
    if (!j.is_array()) fail(errc::parse, "ordinal JSON must be an array");
    Ordinal a;
    for (const auto& t : j) {
        if (!t.is_object() || !t.contains("exp") || !t.contains("coeff"))
            fail(errc::parse, "ordinal term needs exp and coeff");
        Ordinal e = ord_from_json(t["exp"]);
        unsigned long long c = t["coeff"].get<unsigned long long>();
        a = ord_add(a, Ordinal::mono(e, c));
    }
    return a;
}

// Vectors as sorted rows of {pos, num, den}.
inline json vec_to_json(const Vector& x) {
    json arr = json::array();
    for (const auto& [p, c] : x.w)
        arr.push_back(json{{"pos", p},
                           {"num", detail::bigint_to_json(rat_num(c))},
                           {"den", detail::bigint_to_json(rat_den(c))}});
    return arr;
}

inline Vector vec_from_json(const json& j) {
    if (!j.is_array()) fail(errc::parse, "vector JSON must be an array");
    Vector x;
    for (const auto& row : j) {
        long long p = row.at("pos").get<long long>();
        bigint num = detail::bigint_from_json(row.at("num"));
        bigint den = detail::bigint_from_json(row.at("den"));
        if (den == 0) fail(errc::parse, "zero denominator");
        if (x.w.count(p)) fail(errc::parse, "duplicate position in vector JSON");
        x.set(p, rat(num) / rat(den));
    }
    return x;
}

// Functionals: {"leaf":{coeff:{num,den},pos}} | {"node":{family,children}}.
inline json fun_to_json(const FunP& f) {
    if (f->is_leaf)
        return json{{"leaf",
                     json{{"coeff",
                           json{{"num", detail::bigint_to_json(rat_num(f->coeff))},
                                {"den", detail::bigint_to_json(rat_den(f->coeff))}}},
                          {"pos", f->pos}}}};
    json kids = json::array();
    for (const auto& k : f->kids) kids.push_back(fun_to_json(k));
    return json{{"node", json{{"family", f->family}, {"children", std::move(kids)}}}};
}

inline FunP fun_from_json(const json& j) {
    if (j.contains("leaf")) {
        const json& l = j["leaf"];
        bigint num = detail::bigint_from_json(l.at("coeff").at("num"));
        bigint den = detail::bigint_from_json(l.at("coeff").at("den"));
        if (den == 0) fail(errc::parse, "zero denominator");
        return Fun::leaf(rat(num) / rat(den), l.at("pos").get<long long>());
    }
    if (j.contains("node")) {
        const json& n = j["node"];
        std::vector<FunP> kids;
        for (const auto& k : n.at("children")) kids.push_back(fun_from_json(k));
        return Fun::node(n.at("family").get<int>(), std::move(kids));
    }
    fail(errc::parse, "functional JSON needs a leaf or node field");
}

// Canonical classes for the report schema.
inline json class_to_json(const CanonicalClass& c) {
    switch (c.kind) {
        case CanonicalClass::Kind::infinite:
            return json{{"kind", "infinite"},
                        {"alpha", ord_to_json(c.alpha)},
                        {"theta",
                         json{{"base", rat_str(c.theta_star.base)},
                              {"exp", std::to_string(c.theta_star.num) + "/" +
                                          std::to_string(c.theta_star.den)}}}};
        case CanonicalClass::Kind::c0:
            return json{{"kind", "c0"}};
        case CanonicalClass::Kind::lp:
            return json{{"kind", "lp"}, {"n", c.n}, {"theta", rat_str(c.theta)}};
    }
    fail(errc::internal, "bad class kind");
}

} // namespace tsn
