#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tsn/errors.hpp"
#include "tsn/finset.hpp"
#include "tsn/membership.hpp"
#include "tsn/rational.hpp"
#include "tsn/space.hpp"
#include "tsn/vector.hpp"

namespace tsn {

// A norming-set functional: a signed unit at one position, or a weighted
// combination of successive children taken under one of the space's
// families. Nodes carry the family index into the space, not the weight; the
// weight comes from the space at evaluation time.
struct Fun;
using FunP = std::shared_ptr<const Fun>;

struct Fun {
    bool is_leaf = true;
    rat coeff;        // leaf only
    long long pos = 0;
    int family = -1;  // node only: index into Space::pairs
    std::vector<FunP> kids;
    FinSet support;   // formal support, cached

    static FunP leaf(const rat& c, long long p) {
        auto f = std::make_shared<Fun>();
        f->is_leaf = true;
        f->coeff = c;
        f->pos = p;
        f->support = FinSet({p});
        return f;
    }

    static FunP node(int family_index, std::vector<FunP> children) {
        if (children.empty()) fail(errc::internal, "functional node needs children");
        auto f = std::make_shared<Fun>();
        f->is_leaf = false;
        f->family = family_index;
        f->kids = std::move(children);
        FinSet s;
        for (const auto& k : f->kids) s = set_union(s, k->support);
        f->support = s;
        return f;
    }
};

// f(x), exact
inline rat eval(const Space& sp, const FunP& f, const Vector& x) {
    if (f->is_leaf) return f->coeff * x.at(f->pos);
    rat sum(0);
    for (const auto& k : f->kids) sum += eval(sp, k, x);
    if (f->family < 0 || f->family >= static_cast<int>(sp.pairs.size()))
        fail(errc::internal, "functional references a family the space lacks");
    return sp.pairs[f->family].theta * sum;
}

// Positions where the functional acts with a nonzero accumulated weight.
inline void analytic_supp_rec(const Space& sp, const FunP& f, const rat& scale, Vector& acc) {
    if (f->is_leaf) {
        acc.set(f->pos, acc.at(f->pos) + scale * f->coeff);
        return;
    }
    rat s = scale * sp.pairs[f->family].theta;
    for (const auto& k : f->kids) analytic_supp_rec(sp, k, s, acc);
}

inline FinSet analytic_supp(const Space& sp, const FunP& f) {
    Vector acc;
    analytic_supp_rec(sp, f, rat(1), acc);
    return acc.supp();
}

// Structural check: children supports successive and admissible for the
// node's family, every leaf coefficient within the bound in absolute value.
// Returns false with a reason instead of throwing, so callers can report.
inline bool validate(const Space& sp, const FunP& f, const rat& leaf_bound,
                     std::string* why = nullptr) {
    auto reject = [&](const std::string& r) {
        if (why) *why = r;
        return false;
    };
    if (f->is_leaf) {
        rat a = f->coeff < 0 ? rat(-f->coeff) : f->coeff;
        if (a > leaf_bound)
            return reject("leaf coefficient " + rat_str(f->coeff) + " exceeds bound " +
                          rat_str(leaf_bound));
        return true;
    }
    if (f->family < 0 || f->family >= static_cast<int>(sp.pairs.size()))
        return reject("node references a family the space lacks");
    std::vector<FinSet> blocks;
    blocks.reserve(f->kids.size());
    for (const auto& k : f->kids) blocks.push_back(k->support);
    try {
        check_blocks(blocks);
    } catch (const error&) {
        return reject("child supports not successive");
    }
    if (!is_admissible(sp.pairs[f->family].fam, blocks))
        return reject("children not admissible for " + sp.pairs[f->family].fam->canon);
    for (const auto& k : f->kids)
        if (!validate(sp, k, leaf_bound, why)) return false;
    return true;
}

} // namespace tsn
