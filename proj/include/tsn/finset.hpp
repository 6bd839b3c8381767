#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "tsn/errors.hpp"

namespace tsn {

// Finite subset of {1, 2, 3, ...}, kept sorted and duplicate-free.
struct FinSet {
    std::vector<long long> v;

    FinSet() = default;
    explicit FinSet(std::vector<long long> xs) : v(std::move(xs)) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        if (!v.empty() && v.front() < 1) fail(errc::parse, "set elements must be >= 1");
    }

    size_t size() const { return v.size(); }
    bool empty() const { return v.empty(); }
    long long min() const { return v.front(); }
    long long max() const { return v.back(); }

    bool has(long long x) const {
        return std::binary_search(v.begin(), v.end(), x);
    }
    bool subset_of(const FinSet& o) const {
        return std::includes(o.v.begin(), o.v.end(), v.begin(), v.end());
    }

    bool operator==(const FinSet& o) const { return v == o.v; }
    bool operator<(const FinSet& o) const { return v < o.v; } // lex, for ordering output
};

// s entirely to the left of t (both nonempty)
inline bool set_before(const FinSet& s, const FinSet& t) {
    return !s.empty() && !t.empty() && s.max() < t.min();
}

inline FinSet set_union(const FinSet& s, const FinSet& t) {
    std::vector<long long> out;
    out.reserve(s.size() + t.size());
    std::set_union(s.v.begin(), s.v.end(), t.v.begin(), t.v.end(), std::back_inserter(out));
    FinSet r;
    r.v = std::move(out);
    return r;
}

// t pointwise below s, same length: the spreading order
inline bool spread_leq(const FinSet& t, const FinSet& s) {
    if (t.size() != s.size()) return false;
    for (size_t i = 0; i < t.size(); ++i)
        if (t.v[i] > s.v[i]) return false;
    return true;
}

inline std::string set_str(const FinSet& s) {
    std::string out = "{";
    for (size_t i = 0; i < s.v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s.v[i]);
    }
    return out + "}";
}

inline FinSet set_parse(const std::string& str) {
    std::vector<long long> xs;
    size_t i = 0;
    auto ws = [&]() { while (i < str.size() && std::isspace(static_cast<unsigned char>(str[i]))) ++i; };
    ws();
    bool braced = i < str.size() && str[i] == '{';
    if (braced) ++i;
    ws();
    while (i < str.size() && std::isdigit(static_cast<unsigned char>(str[i]))) {
        long long v = 0;
        while (i < str.size() && std::isdigit(static_cast<unsigned char>(str[i])))
            v = v * 10 + (str[i++] - '0');
        xs.push_back(v);
        ws();
        if (i < str.size() && str[i] == ',') { ++i; ws(); }
    }
    if (braced) {
        if (i >= str.size() || str[i] != '}') fail(errc::parse, "bad set '" + str + "'");
        ++i;
    }
    ws();
    if (i != str.size()) fail(errc::parse, "bad set '" + str + "'");
    return FinSet(std::move(xs));
}

// A sequence of nonempty successive sets. MalformedBlocks on anything else.
inline void check_blocks(const std::vector<FinSet>& blocks) {
    for (size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].empty()) fail(errc::malformed_blocks, "empty block");
        if (i && blocks[i - 1].max() >= blocks[i].min())
            fail(errc::malformed_blocks, "blocks not successive");
    }
}

// "{2,3};{6};{9,10}"
inline std::vector<FinSet> blocks_parse(const std::string& str) {
    std::vector<FinSet> out;
    size_t start = 0;
    while (start <= str.size()) {
        size_t semi = str.find(';', start);
        std::string piece = str.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
        // allow a trailing separator but not an empty middle piece
        bool blank = piece.find_first_not_of(" \t") == std::string::npos;
        if (!blank) out.push_back(set_parse(piece));
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    check_blocks(out);
    return out;
}

inline std::string blocks_str(const std::vector<FinSet>& blocks) {
    std::string out;
    for (size_t i = 0; i < blocks.size(); ++i) {
        if (i) out += ";";
        out += set_str(blocks[i]);
    }
    return out;
}

// ---- ground sets ---------------------------------------------------------
// Infinite subsets of N used to relativize a family:
//   full          all of {1,2,...}
//   tail(m)       {m, m+1, ...}
//   ap(a,d)       {a, a+d, a+2d, ...}
//   xt({...},m)   an explicit finite prefix plus the tail from m on
struct Ground {
    enum class Kind { full, tail, ap, xtail };
    Kind kind = Kind::full;
    long long a = 1, d = 1;
    FinSet prefix;
    long long tail_from = 1;

    static Ground full() { return Ground{}; }
    static Ground tail(long long m) {
        Ground g;
        g.kind = Kind::tail;
        g.a = m;
        return g;
    }
    static Ground ap(long long a0, long long d0) {
        Ground g;
        g.kind = Kind::ap;
        g.a = a0;
        g.d = d0;
        return g;
    }
    static Ground xtail(FinSet pre, long long from) {
        Ground g;
        g.kind = Kind::xtail;
        g.prefix = std::move(pre);
        g.tail_from = from;
        return g;
    }

    bool member(long long x) const {
        switch (kind) {
            case Kind::full: return x >= 1;
            case Kind::tail: return x >= a;
            case Kind::ap: return x >= a && (x - a) % d == 0;
            case Kind::xtail: return x >= tail_from || prefix.has(x);
        }
        return false;
    }
};

inline std::string ground_str(const Ground& g) {
    switch (g.kind) {
        case Ground::Kind::full: return "full";
        case Ground::Kind::tail: return "tail(" + std::to_string(g.a) + ")";
        case Ground::Kind::ap: return "ap(" + std::to_string(g.a) + "," + std::to_string(g.d) + ")";
        case Ground::Kind::xtail:
            return "xt(" + set_str(g.prefix) + "," + std::to_string(g.tail_from) + ")";
    }
    return "full";
}

} // namespace tsn
