#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "tsn/errors.hpp"
#include "tsn/family.hpp"
#include "tsn/rational.hpp"

namespace tsn {

// One admissibility family together with its weight.
struct Pair {
    FamilyP fam;
    rat theta;

    Pair(FamilyP f, const rat& t) : fam(std::move(f)), theta(t) {
        if (theta <= 0 || theta >= 1)
            fail(errc::parse, "weight must lie strictly between 0 and 1");
    }
};

// The implicit-norm data: finitely many weighted families. The norm is the
// largest value any iterated weighted split with admissible parts achieves,
// floored by the sup norm.
struct Space {
    std::vector<Pair> pairs;
};

// "{ S[1] , 1/2 ; [<=3] , 2/3 }"
inline Space space_parse(const std::string& str) {
    auto bad = [&]() { fail(errc::parse, "bad space '" + str + "'"); };
    size_t open = str.find('{');
    size_t close = str.rfind('}');
    if (open == std::string::npos || close == std::string::npos || close < open) bad();
    std::string body = str.substr(open + 1, close - open - 1);
    // reject trailing garbage around the braces
    for (size_t k = 0; k < open; ++k)
        if (!std::isspace(static_cast<unsigned char>(str[k]))) bad();
    for (size_t k = close + 1; k < str.size(); ++k)
        if (!std::isspace(static_cast<unsigned char>(str[k]))) bad();

    Space sp;
    size_t start = 0;
    while (start <= body.size()) {
        size_t semi = body.find(';', start);
        std::string piece =
            body.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
        if (piece.find_first_not_of(" \t") != std::string::npos) {
            // split on the last comma: family text may contain commas (ap(a,d))
            size_t comma = piece.rfind(',');
            if (comma == std::string::npos) bad();
            FamilyP f = family_parse(piece.substr(0, comma));
            rat theta = rat_parse([&] {
                std::string t = piece.substr(comma + 1);
                size_t b = t.find_first_not_of(" \t");
                size_t e = t.find_last_not_of(" \t");
                if (b == std::string::npos) bad();
                return t.substr(b, e - b + 1);
            }());
            sp.pairs.emplace_back(f, theta);
        }
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    if (sp.pairs.empty()) bad();
    return sp;
}

inline std::string space_str(const Space& sp) {
    std::string out = "{";
    for (size_t i = 0; i < sp.pairs.size(); ++i) {
        if (i) out += ";";
        out += sp.pairs[i].fam->canon + "," + rat_str(sp.pairs[i].theta);
    }
    return out + "}";
}

} // namespace tsn
