#pragma once

#include <algorithm>
#include <functional>
#include <utility>
#include <vector>

#include "tsn/errors.hpp"
#include "tsn/functional.hpp"
#include "tsn/membership.hpp"
#include "tsn/space.hpp"
#include "tsn/vector.hpp"

namespace tsn {

struct NormResult {
    rat value;
    FunP cert; // strict norming functional attaining value on the input
};

namespace detail {

struct IntervalChoice {
    int kind = 0; // 0 leaf, 1 drop left endpoint, 2 drop right, 3 weighted node
    int family = -1;
    std::vector<std::pair<size_t, size_t>> parts;
};

// Best weighted-node value over compositions of [i..j] whose part count is
// the only admissibility constraint (true for [<=n], and for S[1] with the
// count bounded by the first position). Plain DP over (parts used, end).
inline bool node_value_counted(const std::vector<rat>& best, size_t d, size_t i, size_t j,
                               size_t bound, const rat& theta, rat& out,
                               std::vector<std::pair<size_t, size_t>>& out_parts) {
    size_t L = j - i + 1;
    if (bound > L) bound = L;
    if (bound < 2) return false;
    auto idx = [&](size_t a, size_t b) { return a * d + b; };
    // g[c][b]: best sum of c parts, first part starting at i, last ending at b
    std::vector<std::vector<rat>> g(bound + 1, std::vector<rat>(j + 1, rat(-1)));
    std::vector<std::vector<std::pair<size_t, size_t>>> par(
        bound + 1, std::vector<std::pair<size_t, size_t>>(j + 1, {0, 0})); // (a, prev b)
    for (size_t b = i; b <= j; ++b) g[1][b] = best[idx(i, b)];
    for (size_t c = 2; c <= bound; ++c) {
        for (size_t b = i + 1; b <= j; ++b) {
            for (size_t a = i + 1; a <= b; ++a) {
                for (size_t e = i; e < a; ++e) {
                    if (g[c - 1][e] < 0) continue;
                    rat cand = g[c - 1][e] + best[idx(a, b)];
                    if (cand > g[c][b]) {
                        g[c][b] = cand;
                        par[c][b] = {a, e};
                    }
                }
            }
        }
    }
    rat bestsum(-1);
    size_t bestc = 0;
    for (size_t c = 2; c <= bound; ++c)
        if (g[c][j] > bestsum) {
            bestsum = g[c][j];
            bestc = c;
        }
    if (bestc == 0) return false;
    out = theta * bestsum;
    out_parts.clear();
    size_t b = j;
    for (size_t c = bestc; c >= 2; --c) {
        auto [a, e] = par[c][b];
        out_parts.emplace_back(a, b);
        b = e;
    }
    out_parts.emplace_back(i, b);
    std::reverse(out_parts.begin(), out_parts.end());
    return true;
}

// General families: search compositions directly. For a spreading hereditary
// family the running minima prefix prunes hard; otherwise admissibility is
// settled per complete composition on the part hulls.
inline bool node_value_search(const FamilyP& F, const std::vector<rat>& best,
                              const FinSet& supp, size_t d, size_t i, size_t j,
                              const rat& theta, rat& out,
                              std::vector<std::pair<size_t, size_t>>& out_parts) {
    auto idx = [&](size_t a, size_t b) { return a * d + b; };
    bool spr = spreading_syntactic(F);
    bool prune = spr && hereditary_syntactic(F);
    std::vector<std::pair<size_t, size_t>> parts;
    std::vector<long long> mins;
    rat acc(0), found(-1);
    std::function<void(size_t)> go = [&](size_t nexta) {
        size_t alo = parts.empty() ? i : nexta;
        size_t ahi = parts.empty() ? i : j;
        for (size_t a = alo; a <= ahi; ++a) {
            for (size_t b = a; b <= j; ++b) {
                parts.emplace_back(a, b);
                mins.push_back(supp.v[a]);
                bool viable = true;
                if (prune) {
                    FinSet m;
                    m.v = mins;
                    viable = contains(F, m);
                }
                if (viable) {
                    acc += best[idx(a, b)];
                    if (b == j && parts.size() >= 2) {
                        bool adm;
                        if (spr) {
                            FinSet m;
                            m.v = mins;
                            adm = prune ? true : contains(F, m);
                        } else {
                            std::vector<FinSet> hulls;
                            hulls.reserve(parts.size());
                            for (auto [pa, pb] : parts) hulls.push_back(subrange(supp, pa, pb));
                            adm = is_admissible(F, hulls);
                        }
                        rat cand = theta * acc;
                        if (adm && cand > found) {
                            found = cand;
                            out_parts = parts;
                        }
                    }
                    if (b < j) go(b + 1);
                    acc -= best[idx(a, b)];
                }
                parts.pop_back();
                mins.pop_back();
            }
        }
    };
    go(i);
    if (found < 0) return false;
    out = found;
    return true;
}

} // namespace detail

// Exact implicit norm with a certifying functional. Dynamic program over
// support index intervals: an interval's value is the biggest of its largest
// single coordinate, the values of its two trimmed subintervals, and every
// weighted admissible composition into at least two covered parts (interior
// gaps allowed; a part's contribution is the value of its own interval).
// Using part hulls for admissibility loses nothing: hulls share their minima
// and maxima with the actual child supports, and interpolation sees only
// those.
inline NormResult norm(const Space& sp, const Vector& x, size_t cap = 14) {
    FinSet supp = x.supp();
    const size_t d = supp.size();
    if (d == 0) return {rat(0), Fun::leaf(rat(1), 1)};
    if (d > cap)
        fail(errc::cap_exceeded, "support size " + std::to_string(d) +
                                     " exceeds norm cap " + std::to_string(cap));

    std::vector<rat> w(d);
    for (size_t i = 0; i < d; ++i) {
        rat c = x.at(supp.v[i]);
        w[i] = c < 0 ? rat(-c) : c;
    }
    auto idx = [&](size_t a, size_t b) { return a * d + b; };
    std::vector<rat> best(d * d, rat(0));
    std::vector<detail::IntervalChoice> choice(d * d);

    for (size_t len = 0; len < d; ++len) {
        for (size_t i = 0; i + len < d; ++i) {
            size_t j = i + len;
            rat b;
            detail::IntervalChoice ch;
            if (len == 0) {
                b = w[i];
                ch.kind = 0;
            } else {
                b = best[idx(i + 1, j)];
                ch.kind = 1;
                if (best[idx(i, j - 1)] > b) {
                    b = best[idx(i, j - 1)];
                    ch.kind = 2;
                }
                for (size_t fi = 0; fi < sp.pairs.size(); ++fi) {
                    const FamilyP& F = sp.pairs[fi].fam;
                    const rat& theta = sp.pairs[fi].theta;
                    rat nv;
                    std::vector<std::pair<size_t, size_t>> parts;
                    bool got = false;
                    if (F->kind == Family::Kind::card) {
                        got = detail::node_value_counted(best, d, i, j, F->n, theta, nv, parts);
                    } else if (F->kind == Family::Kind::schreier && F->alpha.is_finite() &&
                               F->alpha.fin_value() == 1) {
                        size_t bound = supp.v[i] > static_cast<long long>(d)
                                           ? d
                                           : static_cast<size_t>(supp.v[i]);
                        got = detail::node_value_counted(best, d, i, j, bound, theta, nv, parts);
                    } else {
                        got = detail::node_value_search(F, best, supp, d, i, j, theta, nv, parts);
                    }
                    if (got && nv > b) {
                        b = nv;
                        ch.kind = 3;
                        ch.family = static_cast<int>(fi);
                        ch.parts = std::move(parts);
                    }
                }
            }
            best[idx(i, j)] = b;
            choice[idx(i, j)] = std::move(ch);
        }
    }

    std::function<FunP(size_t, size_t)> build = [&](size_t i, size_t j) -> FunP {
        const auto& ch = choice[idx(i, j)];
        switch (ch.kind) {
            case 0:
                return Fun::leaf(x.at(supp.v[i]) < 0 ? rat(-1) : rat(1), supp.v[i]);
            case 1:
                return build(i + 1, j);
            case 2:
                return build(i, j - 1);
            default: {
                std::vector<FunP> kids;
                kids.reserve(ch.parts.size());
                for (auto [a, b] : ch.parts) kids.push_back(build(a, b));
                return Fun::node(ch.family, std::move(kids));
            }
        }
    };

    return {best[idx(0, d - 1)], build(0, d - 1)};
}

// Independent cross-check for small supports: recursion over exact leaf
// sets. A functional with leaf set S is either the unit at the single point
// of S or a weighted node whose children partition S into successive pieces;
// admissibility is checked on those pieces themselves, never on hulls, and
// skipped coordinates are handled by maximizing over subsets at the top.
inline rat norm_oracle(const Space& sp, const Vector& x, size_t cap = 10) {
    FinSet supp = x.supp();
    const size_t d = supp.size();
    if (d == 0) return rat(0);
    if (d > cap || d > 20)
        fail(errc::cap_exceeded, "support size " + std::to_string(d) +
                                     " exceeds oracle cap " + std::to_string(cap));
    std::vector<rat> w(d);
    for (size_t i = 0; i < d; ++i) {
        rat c = x.at(supp.v[i]);
        w[i] = c < 0 ? rat(-c) : c;
    }
    std::vector<rat> g(1u << d, rat(-1));
    std::function<rat(unsigned)> val = [&](unsigned mask) -> rat {
        if (g[mask] >= 0) return g[mask];
        std::vector<size_t> elems;
        for (size_t i = 0; i < d; ++i)
            if (mask & (1u << i)) elems.push_back(i);
        rat bestv(-1);
        if (elems.size() == 1) bestv = w[elems[0]];
        // split the sorted elements into >= 2 consecutive chunks
        size_t m = elems.size();
        if (m >= 2) {
            for (unsigned cuts = 1; cuts < (1u << (m - 1)); ++cuts) {
                std::vector<FinSet> chunks;
                std::vector<unsigned> chunkmasks;
                FinSet cur;
                unsigned curmask = 0;
                for (size_t t = 0; t < m; ++t) {
                    cur.v.push_back(supp.v[elems[t]]);
                    curmask |= 1u << elems[t];
                    bool cut = t + 1 < m && (cuts & (1u << t));
                    if (cut || t + 1 == m) {
                        chunks.push_back(cur);
                        chunkmasks.push_back(curmask);
                        cur = FinSet();
                        curmask = 0;
                    }
                }
                rat sum(0);
                for (unsigned cm : chunkmasks) sum += val(cm);
                for (size_t fi = 0; fi < sp.pairs.size(); ++fi) {
                    if (!is_admissible(sp.pairs[fi].fam, chunks)) continue;
                    rat cand = sp.pairs[fi].theta * sum;
                    if (cand > bestv) bestv = cand;
                }
            }
        }
        g[mask] = bestv;
        return bestv;
    };
    rat out(0);
    for (unsigned mask = 1; mask < (1u << d); ++mask) {
        rat v = val(mask);
        if (v > out) out = v;
    }
    return out;
}

} // namespace tsn
