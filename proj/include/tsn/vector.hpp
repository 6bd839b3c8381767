#pragma once

#include <map>
#include <string>

#include "tsn/errors.hpp"
#include "tsn/finset.hpp"
#include "tsn/rational.hpp"

namespace tsn {

// Finitely supported rational vector over the unit basis, positions >= 1.
// Zero coefficients are never stored.
struct Vector {
    std::map<long long, rat> w;

    void set(long long pos, const rat& c) {
        if (pos < 1) fail(errc::parse, "vector position must be >= 1");
        if (c == 0)
            w.erase(pos);
        else
            w[pos] = c;
    }

    rat at(long long pos) const {
        auto it = w.find(pos);
        return it == w.end() ? rat(0) : it->second;
    }

    FinSet supp() const {
        std::vector<long long> xs;
        xs.reserve(w.size());
        for (const auto& [p, c] : w) xs.push_back(p);
        FinSet s;
        s.v = std::move(xs); // already sorted, map order
        return s;
    }

    rat total() const {
        rat t(0);
        for (const auto& [p, c] : w) t += c;
        return t;
    }

    bool nonnegative() const {
        for (const auto& [p, c] : w)
            if (c < 0) return false;
        return true;
    }

    bool operator==(const Vector& o) const { return w == o.w; }
};

// "e:2=1,3=1/2" -> e_2 + (1/2) e_3
inline Vector vector_parse(const std::string& str) {
    auto bad = [&]() { fail(errc::parse, "bad vector '" + str + "'"); };
    if (str.compare(0, 2, "e:") != 0) bad();
    Vector x;
    size_t i = 2;
    while (i < str.size()) {
        size_t eq = str.find('=', i);
        if (eq == std::string::npos) bad();
        long long pos = 0;
        try {
            size_t used = 0;
            pos = std::stoll(str.substr(i, eq - i), &used);
            if (used != eq - i) bad();
        } catch (const std::exception&) {
            bad();
        }
        size_t comma = str.find(',', eq + 1);
        std::string num = str.substr(eq + 1, comma == std::string::npos ? std::string::npos
                                                                        : comma - eq - 1);
        rat c = rat_parse(num);
        if (pos < 1) bad();
        if (x.w.count(pos)) bad();
        x.set(pos, c);
        if (comma == std::string::npos) break;
        i = comma + 1;
    }
    return x;
}

inline std::string vector_str(const Vector& x) {
    std::string out = "e:";
    bool first = true;
    for (const auto& [p, c] : x.w) {
        if (!first) out += ",";
        first = false;
        out += std::to_string(p) + "=" + rat_str(c);
    }
    return out;
}

} // namespace tsn
