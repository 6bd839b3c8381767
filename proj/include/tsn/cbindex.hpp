#pragma once

#include <string>

#include "tsn/errors.hpp"
#include "tsn/family.hpp"
#include "tsn/ordinal.hpp"

namespace tsn {

// Symbolic Cantor-Bendixson index of a family expression. Exact on the
// regular fragment; bracketed or unknown elsewhere.
struct IndexResult {
    enum class Kind { exact, interval, unknown };
    Kind kind = Kind::unknown;
    Ordinal lo, hi; // exact keeps the value in both

    static IndexResult exact(const Ordinal& v) { return {Kind::exact, v, v}; }
    static IndexResult interval(const Ordinal& l, const Ordinal& h) {
        if (ord_eq(l, h)) return exact(l);
        return {Kind::interval, l, h};
    }
    static IndexResult unknown() { return {}; }

    bool is_exact() const { return kind == Kind::exact; }
};

inline std::string index_str(const IndexResult& r) {
    switch (r.kind) {
        case IndexResult::Kind::exact: return ord_str(r.lo);
        case IndexResult::Kind::interval:
            return "[" + ord_str(r.lo) + "," + ord_str(r.hi) + "]";
        case IndexResult::Kind::unknown: return "unknown";
    }
    return "unknown";
}

// Index algebra:
//   [<=n]    -> n               S[alpha]      -> w^alpha
//   F (+) G  -> i(F) + i(G)     F (x) G       -> i(F) * i(G)
//   F^m      -> i(F)^m          F|ground      -> i(F) on the regular fragment
//   Ad(F)    -> [i, 2i]         spr(F)        -> [i, 2i] over exact regular input
//   IL(B)    -> i(B) over exact regular input
// The doubling bound collapses for infinite indexes (2*w^a*k = w^a*k), which
// matches the fact that regular families are spreading, hence fixed by Ad.
inline IndexResult cb_index_symbolic(const FamilyP& f) {
    auto two = Ordinal::fin(2);
    switch (f->kind) {
        case Family::Kind::card:
            return IndexResult::exact(Ordinal::fin(f->n));
        case Family::Kind::schreier:
            return IndexResult::exact(Ordinal::mono(f->alpha, 1));
        case Family::Kind::sum: {
            IndexResult a = cb_index_symbolic(f->a), b = cb_index_symbolic(f->b);
            if (a.kind == IndexResult::Kind::unknown || b.kind == IndexResult::Kind::unknown)
                return IndexResult::unknown();
            return IndexResult::interval(ord_add(a.lo, b.lo), ord_add(a.hi, b.hi));
        }
        case Family::Kind::conv: {
            IndexResult a = cb_index_symbolic(f->a), b = cb_index_symbolic(f->b);
            if (a.kind == IndexResult::Kind::unknown || b.kind == IndexResult::Kind::unknown)
                return IndexResult::unknown();
            return IndexResult::interval(ord_mul(a.lo, b.lo), ord_mul(a.hi, b.hi));
        }
        case Family::Kind::power: {
            IndexResult a = cb_index_symbolic(f->a);
            if (a.kind == IndexResult::Kind::unknown) return IndexResult::unknown();
            return IndexResult::interval(ord_pow_nat(a.lo, f->n), ord_pow_nat(a.hi, f->n));
        }
        case Family::Kind::restrict_: {
            if (!regular_fragment(f->a)) return IndexResult::unknown();
            return cb_index_symbolic(f->a);
        }
        case Family::Kind::ad: {
            IndexResult a = cb_index_symbolic(f->a);
            if (a.kind == IndexResult::Kind::unknown) return IndexResult::unknown();
            return IndexResult::interval(a.lo, ord_mul(two, a.hi));
        }
        case Family::Kind::spread: {
            IndexResult a = cb_index_symbolic(f->a);
            if (!regular_fragment(f->a) || !a.is_exact()) return IndexResult::unknown();
            return IndexResult::interval(a.lo, ord_mul(two, a.hi));
        }
        case Family::Kind::interlace: {
            IndexResult a = cb_index_symbolic(f->a);
            if (!regular_fragment(f->a) || !a.is_exact()) return IndexResult::unknown();
            // the witness map is an order isomorphism onto the even copy, so
            // the derivative structure carries over unchanged
            return a;
        }
    }
    return IndexResult::unknown();
}

} // namespace tsn
