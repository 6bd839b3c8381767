#pragma once

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tsn/errors.hpp"
#include "tsn/family.hpp"
#include "tsn/finset.hpp"
#include "tsn/ordinal.hpp"

namespace tsn {

inline bool contains(const FamilyP& f, const FinSet& s);
inline bool is_admissible(const FamilyP& f, const std::vector<FinSet>& blocks);

namespace detail {

inline std::unordered_map<std::string, bool>& member_memo() {
    static std::unordered_map<std::string, bool> m;
    return m;
}

inline std::string member_key(const FamilyP& f, const FinSet& s) {
    std::string k = f->canon;
    k += '|';
    for (auto x : s.v) {
        k += std::to_string(x);
        k += ',';
    }
    return k;
}

// Sound but incomplete hereditariness test, used only to enable pruning.
// "false" merely disables a shortcut. A convolution is hereditary when the
// minima family is spreading (shrinking blocks pushes minima right), a power
// likewise needs its base spreading once the exponent exceeds one.
inline bool hereditary_syntactic(const FamilyP& f) {
    switch (f->kind) {
        case Family::Kind::card:
        case Family::Kind::schreier:
            return true;
        case Family::Kind::sum:
            return hereditary_syntactic(f->a) && hereditary_syntactic(f->b);
        case Family::Kind::conv:
            return hereditary_syntactic(f->a) && hereditary_syntactic(f->b) &&
                   spreading_syntactic(f->b);
        case Family::Kind::power:
            return hereditary_syntactic(f->a) && (f->n == 1 || spreading_syntactic(f->a));
        case Family::Kind::spread:
        case Family::Kind::ad:
        case Family::Kind::restrict_:
        case Family::Kind::interlace:
            return hereditary_syntactic(f->a);
    }
    return false;
}

inline FinSet subrange(const FinSet& s, size_t from, size_t to) { // inclusive ends
    FinSet r;
    r.v.assign(s.v.begin() + from, s.v.begin() + to + 1);
    return r;
}

// Greedy decision for pure Schreier families. absorb(alpha, i) returns the
// largest j with s[i..j) a member of S_alpha; taking maximal prefixes is
// optimal because each S_beta is hereditary and spreading, so any split can
// be pushed into greedy form part by part.
struct SchreierGreedy {
    const FinSet& s;

    explicit SchreierGreedy(const FinSet& set) : s(set) {}

    size_t absorb(const Ordinal& alpha, size_t i) {
        size_t n = s.size();
        if (i >= n) return i;
        if (alpha.is_finite() && alpha.fin_value() == 1) {
            unsigned long long cap = static_cast<unsigned long long>(s.v[i]);
            size_t j = i + static_cast<size_t>(cap < n - i ? cap : n - i);
            return j;
        }
        if (alpha.is_successor()) {
            Ordinal beta = ord_pred(alpha);
            unsigned long long budget = static_cast<unsigned long long>(s.v[i]);
            size_t j = i;
            for (unsigned long long parts = 0; parts < budget && j < n; ++parts)
                j = absorb(beta, j);
            return j;
        }
        // limit: a member with minimum m may enter through any S_{alpha[n]},
        // n <= m, so the reachable prefix is the best among them
        size_t best = i;
        unsigned long long m = static_cast<unsigned long long>(s.v[i]);
        for (unsigned long long k = 1; k <= m; ++k) {
            size_t j = absorb(fundamental_seq(alpha, k), i);
            if (j > best) best = j;
            if (best == n) break;
        }
        return best;
    }

    bool member(const Ordinal& alpha) {
        if (s.empty()) return true;
        return absorb(alpha, 0) == s.size();
    }
};

inline FamilyP power_unfold(const FamilyP& f) {
    // F^m = (F^{m-1}) (x) F, shared across calls
    static std::unordered_map<std::string, FamilyP> cache;
    auto it = cache.find(f->canon);
    if (it != cache.end()) return it->second;
    FamilyP r = f->n == 1 ? f->a : fam_conv(fam_power(f->a, f->n - 1), f->a);
    cache.emplace(f->canon, r);
    return r;
}

inline bool contains_impl(const FamilyP& f, const FinSet& s) {
    if (s.empty()) return true; // every family here is nonempty and contains {}
    switch (f->kind) {
        case Family::Kind::card:
            return s.size() <= f->n;

        case Family::Kind::schreier: {
            SchreierGreedy g(s);
            return g.member(f->alpha);
        }

        case Family::Kind::sum: {
            // a low b-part followed by an a-part; either side may be empty
            for (size_t cut = 0; cut <= s.size(); ++cut) {
                FinSet lo, hi;
                lo.v.assign(s.v.begin(), s.v.begin() + cut);
                hi.v.assign(s.v.begin() + cut, s.v.end());
                if (contains(f->b, lo) && contains(f->a, hi)) return true;
            }
            return false;
        }

        case Family::Kind::conv: {
            const FamilyP& part_fam = f->a;
            const FamilyP& min_fam = f->b;
            bool hered_p = hereditary_syntactic(part_fam);
            bool hered_m = hereditary_syntactic(min_fam);
            size_t n = s.size();
            std::vector<long long> mins;
            std::function<bool(size_t)> go = [&](size_t from) -> bool {
                if (from == n) {
                    FinSet m;
                    m.v = mins;
                    return contains(min_fam, m);
                }
                mins.push_back(s.v[from]);
                if (hered_m) {
                    FinSet m;
                    m.v = mins;
                    if (!contains(min_fam, m)) {
                        mins.pop_back();
                        return false;
                    }
                }
                for (size_t end = from; end < n; ++end) {
                    bool in = contains(part_fam, subrange(s, from, end));
                    if (in && go(end + 1)) {
                        mins.pop_back();
                        return true;
                    }
                    if (!in && hered_p) break;
                }
                mins.pop_back();
                return false;
            };
            return go(0);
        }

        case Family::Kind::power:
            return contains(power_unfold(f), s);

        case Family::Kind::spread: {
            const FamilyP& base = f->a;
            if (contains(base, s)) return true; // t = s
            bool hered = hereditary_syntactic(base);
            size_t k = s.size();
            std::vector<long long> t(k);
            std::function<bool(size_t)> go = [&](size_t i) -> bool {
                if (i == k) {
                    FinSet w;
                    w.v = t;
                    return contains(base, w);
                }
                long long lo = i ? t[i - 1] + 1 : 1;
                for (long long v = s.v[i]; v >= lo; --v) {
                    t[i] = v;
                    if (hered) {
                        FinSet pre;
                        pre.v.assign(t.begin(), t.begin() + i + 1);
                        if (!contains(base, pre)) continue;
                    }
                    if (go(i + 1)) return true;
                }
                return false;
            };
            return go(0);
        }

        case Family::Kind::ad: {
            std::vector<FinSet> singles;
            singles.reserve(s.size());
            for (long long x : s.v) singles.push_back(FinSet({x}));
            return is_admissible(f->a, singles);
        }

        case Family::Kind::restrict_: {
            for (long long x : s.v)
                if (!f->ground.member(x)) return false;
            return contains(f->a, s);
        }

        case Family::Kind::interlace: {
            if (s.has(1)) return false;
            std::vector<long long> lowered;
            lowered.reserve(s.size());
            for (long long x : s.v) lowered.push_back(x % 2 == 0 ? x : x - 1);
            return contains(f->a, FinSet(std::move(lowered)));
        }
    }
    return false;
}

} // namespace detail

inline bool contains(const FamilyP& f, const FinSet& s) {
    auto& memo = detail::member_memo();
    std::string key = detail::member_key(f, s);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    bool r = detail::contains_impl(f, s);
    memo.emplace(std::move(key), r);
    return r;
}

// Does t = {m_1 < ... < m_k} interpolate the successive blocks (s_i)?
// Requires m_i <= min s_i and max s_i < m_{i+1}.
inline bool interpolates(const FinSet& t, const std::vector<FinSet>& blocks) {
    check_blocks(blocks);
    if (t.size() != blocks.size()) return false;
    for (size_t i = 0; i < blocks.size(); ++i) {
        if (t.v[i] > blocks[i].min()) return false;
        if (i && t.v[i] <= blocks[i - 1].max()) return false;
    }
    return true;
}

// Are the blocks admissible for f, i.e. does some member of f interpolate
// them? For a spreading family the pointwise-smallest candidate {min s_i}
// already decides it; otherwise search the finitely many interpolants.
inline bool is_admissible(const FamilyP& f, const std::vector<FinSet>& blocks) {
    check_blocks(blocks);
    if (blocks.empty()) return true;
    std::vector<long long> mins;
    mins.reserve(blocks.size());
    for (const auto& b : blocks) mins.push_back(b.min());
    if (spreading_syntactic(f)) return contains(f, FinSet(std::move(mins)));

    bool hered = detail::hereditary_syntactic(f);
    size_t k = blocks.size();
    std::vector<long long> t(k);
    std::function<bool(size_t)> go = [&](size_t i) -> bool {
        if (i == k) {
            FinSet w;
            w.v = t;
            return contains(f, w);
        }
        long long lo = i ? blocks[i - 1].max() + 1 : 1;
        for (long long m = blocks[i].min(); m >= lo; --m) {
            t[i] = m;
            if (hered) {
                FinSet pre;
                pre.v.assign(t.begin(), t.begin() + i + 1);
                if (!contains(f, pre)) continue;
            }
            if (go(i + 1)) return true;
        }
        return false;
    };
    return go(0);
}

// All members inside {1..N}, the empty set included.
inline std::vector<FinSet> truncate(const FamilyP& f, long long N, long long cap = 20) {
    if (N < 0 || N > cap)
        fail(errc::cap_exceeded, "truncation window " + std::to_string(N) +
                                     " exceeds cap " + std::to_string(cap));
    std::vector<FinSet> out;
    for (unsigned long long mask = 0; mask < (1ull << N); ++mask) {
        std::vector<long long> xs;
        for (long long x = 1; x <= N; ++x)
            if (mask & (1ull << (x - 1))) xs.push_back(x);
        FinSet s(std::move(xs));
        if (contains(f, s)) out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

enum class MaxMode { subset, endext };

// Members of the truncation with no proper extension inside it: either no
// superset at all (subset mode) or no extension past the right end
// (endext mode). Single-element probes decide both modes.
inline std::vector<FinSet> maximal_sets(const FamilyP& f, long long N, MaxMode mode,
                                        long long cap = 20) {
    std::vector<FinSet> members = truncate(f, N, cap);
    std::vector<FinSet> out;
    for (const auto& s : members) {
        bool maximal = true;
        long long from = (mode == MaxMode::endext && !s.empty()) ? s.max() + 1 : 1;
        for (long long x = from; x <= N && maximal; ++x) {
            if (s.has(x)) continue;
            if (contains(f, set_union(s, FinSet({x})))) maximal = false;
        }
        if (maximal) out.push_back(s);
    }
    return out;
}

// Is every member of f inside {1..N} also a member of g?
inline bool included_at(const FamilyP& f, const FamilyP& g, long long N, long long cap = 20) {
    if (N < 0 || N > cap)
        fail(errc::cap_exceeded, "inclusion window " + std::to_string(N) +
                                     " exceeds cap " + std::to_string(cap));
    for (unsigned long long mask = 0; mask < (1ull << N); ++mask) {
        std::vector<long long> xs;
        for (long long x = 1; x <= N; ++x)
            if (mask & (1ull << (x - 1))) xs.push_back(x);
        FinSet s(std::move(xs));
        if (contains(f, s) && !contains(g, s)) return false;
    }
    return true;
}

// Closure under removing one element, checked inside {1..N}. Removing
// elements one at a time reaches every subset, so this decides hereditariness
// on the window.
inline bool is_hereditary_at(const FamilyP& f, long long N, long long cap = 20) {
    for (const auto& s : truncate(f, N, cap)) {
        for (size_t i = 0; i < s.size(); ++i) {
            FinSet t = s;
            t.v.erase(t.v.begin() + i);
            if (!contains(f, t)) return false;
        }
    }
    return true;
}

// Closure under moving one element a single step right, checked inside
// {1..N}. Arbitrary right-shifts compose from such steps.
inline bool is_spreading_at(const FamilyP& f, long long N, long long cap = 20) {
    for (const auto& s : truncate(f, N, cap)) {
        for (size_t i = 0; i < s.size(); ++i) {
            long long next = s.v[i] + 1;
            if (next > N) continue;
            if (i + 1 < s.size() && next >= s.v[i + 1]) continue;
            FinSet t = s;
            t.v[i] = next;
            if (!contains(f, t)) return false;
        }
    }
    return true;
}

// Does the residue class of s still reach membership through t? Defined as
// s < t and s u t a member; with t empty it degenerates to plain membership.
inline bool residual_member(const FamilyP& f, const FinSet& s, const FinSet& t) {
    if (t.empty()) return contains(f, s);
    if (!s.empty() && s.max() >= t.min()) return false;
    return contains(f, set_union(s, t));
}

} // namespace tsn
