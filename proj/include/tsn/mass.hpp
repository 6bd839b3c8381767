#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "tsn/errors.hpp"
#include "tsn/family.hpp"
#include "tsn/finset.hpp"
#include "tsn/rational.hpp"
#include "tsn/space.hpp"
#include "tsn/vector.hpp"

namespace tsn {

// Largest weight a single member of the family can collect from a
// nonnegative vector, with the member that does it.
struct MassResult {
    rat mass;
    FinSet witness;
};

namespace detail {

// Window solver over the support of one vector. Two mutually recursive
// quantities, both memoized per call:
//   best_set(F, i, e)                  heaviest F-member inside index window
//                                      [i..e] that contains position i
//   best_packing(P, budget, i, e, a)   heaviest union of at most `budget`
//                                      successive P-members inside [i..e];
//                                      with `a` set the first member must
//                                      contain position i
// Free maximization is the loop over anchors. Budgeted packing is exactly
// what a convolution needs when its minima family is a size constraint:
// [<=n] caps the count at n, S[1] caps it at the first minimum.
struct MassSolver {
    std::vector<long long> p;
    std::vector<rat> w;

    struct Entry {
        bool feasible = false;
        rat mass;
        std::vector<long long> set;
    };

    std::unordered_map<std::string, int> fam_ids;
    std::vector<FamilyP> fams;
    std::unordered_map<std::uint64_t, Entry> set_memo, pack_memo;

    int id_of(const FamilyP& f) {
        auto it = fam_ids.find(f->canon);
        if (it != fam_ids.end()) return it->second;
        int id = static_cast<int>(fams.size());
        fams.push_back(f);
        fam_ids.emplace(f->canon, id);
        return id;
    }

    static std::uint64_t key(int id, std::uint64_t a, std::uint64_t b, std::uint64_t c,
                             std::uint64_t d) {
        // fields stay tiny (support <= a few thousand); 12 bits each is ample
        return ((((static_cast<std::uint64_t>(id) << 13 | a) << 13 | b) << 13 | c) << 1) | d;
    }

    // sum of the k heaviest weights with indexes in [from..to], plus i0's
    // own weight; deterministic tie-break by position
    Entry anchored_top(size_t i0, size_t from, size_t to, unsigned long long k) {
        std::vector<size_t> idxs;
        for (size_t t = from; t <= to && t < p.size(); ++t) idxs.push_back(t);
        std::sort(idxs.begin(), idxs.end(), [&](size_t a, size_t b) {
            if (w[a] != w[b]) return w[a] > w[b];
            return p[a] < p[b];
        });
        Entry r;
        r.feasible = true;
        r.mass = w[i0];
        r.set.push_back(p[i0]);
        for (size_t t = 0; t < idxs.size() && t < k; ++t) {
            r.mass += w[idxs[t]];
            r.set.push_back(p[idxs[t]]);
        }
        std::sort(r.set.begin(), r.set.end());
        return r;
    }

    Entry infeasible() { return Entry{}; }

    Entry best_set(const FamilyP& f, size_t i, size_t e) {
        std::uint64_t k = key(id_of(f), i, e, 0x1fff, 0);
        auto it = set_memo.find(k);
        if (it != set_memo.end()) return it->second;
        Entry r = best_set_impl(f, i, e);
        set_memo.emplace(k, r);
        return r;
    }

    Entry best_set_impl(const FamilyP& f, size_t i, size_t e) {
        if (i >= p.size() || i > e) return infeasible();
        switch (f->kind) {
            case Family::Kind::card:
                if (f->n == 0) return infeasible();
                return anchored_top(i, i + 1, e, f->n - 1);

            case Family::Kind::schreier: {
                const Ordinal& a = f->alpha;
                if (!a.is_finite())
                    fail(errc::unsupported_family,
                         "mass maximization needs a finite Schreier order, got S[" +
                             ord_str(a) + "]");
                unsigned long long ord = a.fin_value();
                if (ord == 1) {
                    // |t| <= min t = p[i]
                    return anchored_top(i, i + 1, e, static_cast<unsigned long long>(p[i]) - 1);
                }
                return best_packing(fam_schreier(Ordinal::fin(ord - 1)),
                                    static_cast<unsigned long long>(p[i]), i, e, true);
            }

            case Family::Kind::power: {
                if (f->n == 1) return best_set(f->a, i, e);
                if (f->a->kind == Family::Kind::card) {
                    unsigned long long m = 1;
                    for (unsigned long long t = 0; t < f->n; ++t) {
                        if (f->a->n != 0 && m > 1000000ull)
                            fail(errc::cap_exceeded, "power of size family too large");
                        m *= f->a->n;
                    }
                    return best_set(fam_card(m), i, e);
                }
                unsigned long long budget = conv_budget(f->a, i);
                return best_packing(fam_power(f->a, f->n - 1), budget, i, e, true);
            }

            case Family::Kind::conv: {
                unsigned long long budget = conv_budget(f->b, i);
                return best_packing(f->a, budget, i, e, true);
            }

            case Family::Kind::sum: {
                // a low b-part then an a-part; the anchor sits in whichever
                // part comes first
                Entry best = best_set(f->a, i, e); // empty low part
                for (size_t c = i; c <= e; ++c) {
                    Entry lo = best_set(f->b, i, c);
                    if (!lo.feasible) continue;
                    Entry hi = free_best(f->a, c + 1, e);
                    Entry cand;
                    cand.feasible = true;
                    cand.mass = lo.mass + hi.mass;
                    cand.set = lo.set;
                    cand.set.insert(cand.set.end(), hi.set.begin(), hi.set.end());
                    if (!best.feasible || cand.mass > best.mass) best = cand;
                }
                return best;
            }

            default:
                fail(errc::unsupported_family,
                     "mass maximization not implemented for " + f->canon);
        }
    }

    unsigned long long conv_budget(const FamilyP& mins, size_t i) {
        if (mins->kind == Family::Kind::card) return mins->n;
        if (mins->kind == Family::Kind::schreier && mins->alpha.is_finite() &&
            mins->alpha.fin_value() == 1)
            return static_cast<unsigned long long>(p[i]);
        fail(errc::unsupported_family,
             "convolution minima family must be [<=n] or S[1], got " + mins->canon);
    }

    Entry best_packing(const FamilyP& parts, unsigned long long budget, size_t i, size_t e,
                       bool anchored) {
        if (e >= p.size()) e = p.size() ? p.size() - 1 : 0;
        if (i >= p.size() || i > e) {
            if (anchored) return infeasible();
            Entry r;
            r.feasible = true;
            r.mass = 0;
            return r;
        }
        unsigned long long span = static_cast<unsigned long long>(e - i + 1);
        if (budget > span) budget = span;
        std::uint64_t k = key(id_of(parts), i, e, budget, anchored ? 1 : 0);
        auto it = pack_memo.find(k);
        if (it != pack_memo.end()) return it->second;

        Entry best;
        if (!anchored) {
            best.feasible = true;
            best.mass = 0; // take nothing
            if (budget > 0) {
                Entry skip = best_packing(parts, budget, i + 1, e, false);
                if (skip.mass > best.mass) best = skip;
            }
        }
        if (budget > 0) {
            for (size_t e1 = i; e1 <= e; ++e1) {
                Entry head = best_set(parts, i, e1);
                if (!head.feasible) continue;
                Entry tail = best_packing(parts, budget - 1, e1 + 1, e, false);
                Entry cand;
                cand.feasible = true;
                cand.mass = head.mass + tail.mass;
                cand.set = head.set;
                cand.set.insert(cand.set.end(), tail.set.begin(), tail.set.end());
                if (!best.feasible || cand.mass > best.mass) best = cand;
            }
        }
        pack_memo.emplace(k, best);
        return best;
    }

    Entry free_best(const FamilyP& f, size_t lo, size_t hi) {
        Entry best;
        best.feasible = true;
        best.mass = 0;
        for (size_t i = lo; i <= hi && i < p.size(); ++i) {
            Entry cand = best_set(f, i, hi);
            if (cand.feasible && cand.mass > best.mass) best = cand;
        }
        return best;
    }
};

} // namespace detail

inline MassResult max_mass(const FamilyP& f, const Vector& mu, long long cap = 2000) {
    if (!mu.nonnegative()) fail(errc::parse, "mass maximization needs a nonnegative vector");
    if (static_cast<long long>(mu.w.size()) > cap)
        fail(errc::cap_exceeded, "vector support " + std::to_string(mu.w.size()) +
                                     " exceeds mass cap " + std::to_string(cap));

    // restrictions act on the vector, not the search
    FamilyP base = f;
    Vector filtered = mu;
    while (base->kind == Family::Kind::restrict_) {
        Vector keep;
        for (const auto& [pos, c] : filtered.w)
            if (base->ground.member(pos)) keep.set(pos, c);
        filtered = std::move(keep);
        base = base->a;
    }

    detail::MassSolver solver;
    for (const auto& [pos, c] : filtered.w) {
        solver.p.push_back(pos);
        solver.w.push_back(c);
    }
    if (solver.p.empty()) return {rat(0), FinSet{}};
    auto r = solver.free_best(base, 0, solver.p.size() - 1);
    MassResult out;
    out.mass = r.mass;
    out.witness = FinSet(r.set);
    return out;
}

// Upper bound for the implicit norm of a nonnegative vector by splitting any
// norming functional at depth l: the shallow part acts through a member of
// F^(x)(l-1) with unit coefficients, everything deeper is crushed below
// theta^l and bounded by the total weight. Sound for every l >= 1; the
// depth-0 "power" degenerates to singletons.
struct SplitBound {
    rat shallow;   // max_mass of the depth cut
    rat deep;      // theta^l * total
    rat total;     // their sum, the bound itself
    FinSet witness;
};

inline SplitBound norm_upper_split(const Pair& pr, const Vector& mu, unsigned long long l,
                                   long long cap = 2000) {
    if (l == 0) fail(errc::parse, "split depth must be >= 1");
    FamilyP cut = l == 1 ? fam_card(1) : fam_power(pr.fam, l - 1);
    MassResult m = max_mass(cut, mu, cap);
    SplitBound b;
    b.shallow = m.mass;
    b.deep = rat_pow(pr.theta, l) * mu.total();
    b.total = b.shallow + b.deep;
    b.witness = m.witness;
    return b;
}

} // namespace tsn
