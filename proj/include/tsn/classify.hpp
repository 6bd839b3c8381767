#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tsn/cbindex.hpp"
#include "tsn/errors.hpp"
#include "tsn/mass.hpp"
#include "tsn/membership.hpp"
#include "tsn/norm.hpp"
#include "tsn/scalar.hpp"
#include "tsn/space.hpp"

namespace tsn {

// Where a mixed space lands up to isomorphism of its natural basis:
// either the Schreier-type class with representative order w^alpha and
// weight theta_star, or one of the two finite-index classes.
struct CanonicalClass {
    enum class Kind { infinite, c0, lp };
    Kind kind = Kind::c0;
    Ordinal alpha;           // infinite: representative order is w^alpha
    ScalarPower theta_star;  // infinite
    long long n = 0;         // lp: finite index, >= 2
    rat theta;               // lp
};

inline std::string class_str(const CanonicalClass& c) {
    switch (c.kind) {
        case CanonicalClass::Kind::infinite:
            return "InfiniteClass(" + ord_str(c.alpha) + ", " + scalar_str(c.theta_star) + ")";
        case CanonicalClass::Kind::c0:
            return "FiniteC0";
        case CanonicalClass::Kind::lp:
            return "FiniteLp(" + std::to_string(c.n) + ", " + rat_str(c.theta) + ")";
    }
    fail(errc::internal, "bad class kind");
}

// Every family's index, demanded exact.
inline std::vector<Ordinal> exact_indexes(const Space& sp) {
    std::vector<Ordinal> out;
    out.reserve(sp.pairs.size());
    for (const auto& pr : sp.pairs) {
        IndexResult r = cb_index_symbolic(pr.fam);
        if (r.kind != IndexResult::Kind::exact)
            fail(errc::unknown_index, "index not exactly known for " + family_str(pr.fam));
        out.push_back(r.lo);
    }
    return out;
}

// Position of the strongest (index, weight) pair. Ties keep the earliest
// position; a singleton space never reaches a comparison.
inline std::size_t dominant_pair(const Space& sp, unsigned max_bits = 1024) {
    std::vector<Ordinal> idx = exact_indexes(sp);
    std::size_t best = 0;
    for (std::size_t i = 1; i < sp.pairs.size(); ++i) {
        // replace the incumbent only on a strict win
        if (!leq_T(idx[i], sp.pairs[i].theta, idx[best], sp.pairs[best].theta, max_bits))
            best = i;
    }
    return best;
}

inline CanonicalClass canonical_class(const Space& sp, unsigned max_bits = 1024) {
    std::vector<Ordinal> idx = exact_indexes(sp);
    std::size_t i0 = dominant_pair(sp, max_bits);
    const Ordinal& iota = idx[i0];
    const rat& th = sp.pairs[i0].theta;
    CanonicalClass out;
    if (iota.is_finite()) {
        unsigned long long m = iota.fin_value();
        if (th * rat(m) <= 1) {
            out.kind = CanonicalClass::Kind::c0;
        } else {
            // th*m > 1 with th < 1 forces m >= 2
            out.kind = CanonicalClass::Kind::lp;
            out.n = static_cast<long long>(m);
            out.theta = th;
        }
        return out;
    }
    // iota = w^{w^alpha * k + delta} * m + gamma: peel the leading exponent,
    // then the leading term of that exponent
    Decomp d1 = decompose(iota);
    Decomp d2 = decompose(d1.lambda);
    out.kind = CanonicalClass::Kind::infinite;
    out.alpha = d2.lambda;
    out.theta_star = ScalarPower(th, 1, d2.k);
    return out;
}

// Equality of classes. The lp case compares log_n theta scales and can be
// undecidable at the precision cap, which escapes as an error.
inline bool class_eq(const CanonicalClass& a, const CanonicalClass& b, unsigned max_bits = 1024) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case CanonicalClass::Kind::c0:
            return true;
        case CanonicalClass::Kind::lp:
            return log_compare(static_cast<unsigned long long>(a.n), a.theta,
                               static_cast<unsigned long long>(b.n), b.theta,
                               max_bits) == cmp3::eq;
        case CanonicalClass::Kind::infinite:
            return ord_cmp(a.alpha, b.alpha) == 0 &&
                   scalar_cmp(a.theta_star, b.theta_star) == cmp3::eq;
    }
    fail(errc::internal, "bad class kind");
}

inline bool same_class(const Space& s0, const Space& s1, unsigned max_bits = 1024) {
    return class_eq(canonical_class(s0, max_bits), canonical_class(s1, max_bits), max_bits);
}

// Positive rational weights summing to exactly 1.
struct ConvexMean {
    Vector mu;

    explicit ConvexMean(Vector v) : mu(std::move(v)) {
        for (const auto& [p, w] : mu.w)
            if (w <= 0) fail(errc::internal, "mean weight must be positive");
        if (mu.total() != 1) fail(errc::internal, "mean weights must sum to 1");
    }

    FinSet support() const { return mu.supp(); }
};

inline Ordinal leading_exp(const Ordinal& a) {
    if (a.is_zero()) return Ordinal::zero();
    return a.terms[0].exp;
}

namespace detail {

// Repeated-averages recursion. A mean for f "based at" the cursor is an
// equal-weight average of means for f's constituents planted at consecutive
// bases; atoms are planted by the callback so convolution can substitute
// block means for points. The cursor always sits just past the support
// built so far.
struct MeanBuilder {
    long long cap;
    long long leaves = 0;

    using Atom = std::function<Vector(long long&)>;

    Vector point(long long& cur) {
        if (++leaves > cap) fail(errc::cap_exceeded, "mean support exceeds the cap");
        Vector v;
        v.set(cur, 1);
        ++cur;
        return v;
    }

    Vector average_k(long long k, long long& cur, const Atom& part) {
        if (k <= 0) fail(errc::internal, "mean arity must be positive");
        Vector out;
        rat w = rat(1) / k;
        for (long long i = 0; i < k; ++i) {
            Vector piece = part(cur);
            for (const auto& [p, c] : piece.w) out.set(p, out.at(p) + w * c);
        }
        return out;
    }

    Vector build(const FamilyP& f, long long& cur, const Atom& atom) {
        switch (f->kind) {
            case Family::Kind::card:
                if (f->n == 0) fail(errc::unsupported_family, "cannot base a mean on [<=0]");
                return average_k(static_cast<long long>(f->n), cur, atom);
            case Family::Kind::schreier: {
                if (f->alpha.is_finite() && f->alpha.fin_value() == 1)
                    return average_k(cur, cur, atom);       // maximal set based at cur
                if (f->alpha.is_successor()) {
                    FamilyP down = fam_schreier(ord_pred(f->alpha));
                    return average_k(cur, cur, [&](long long& c) { return build(down, c, atom); });
                }
                // limit order: step down the canonical sequence at the base
                FamilyP stage =
                    fam_schreier(fundamental_seq(f->alpha, static_cast<unsigned long long>(cur)));
                return build(stage, cur, atom);
            }
            case Family::Kind::sum: {
                // recurse into the side that can grow; ties go to the high part
                IndexResult ia = cb_index_symbolic(f->a), ib = cb_index_symbolic(f->b);
                if (ia.kind != IndexResult::Kind::exact || ib.kind != IndexResult::Kind::exact)
                    fail(errc::unknown_index, "mean construction needs exact indexes");
                bool low = ord_cmp(leading_exp(ib.lo), leading_exp(ia.lo)) > 0;
                return build(low ? f->b : f->a, cur, atom);
            }
            case Family::Kind::conv:
                // block means from the part family planted on a min pattern
                return build(f->b, cur, [&](long long& c) { return build(f->a, c, atom); });
            case Family::Kind::power:
                if (f->n == 1) return build(f->a, cur, atom);
                return build(power_unfold(f), cur, atom);
            case Family::Kind::restrict_:
                if (f->ground.kind == Ground::Kind::full) return build(f->a, cur, atom);
                if (f->ground.kind == Ground::Kind::tail) {
                    cur = std::max(cur, f->ground.a);
                    return build(f->a, cur, atom);
                }
                fail(errc::unsupported_family, "mean construction needs a full or tail ground");
            default:
                fail(errc::unsupported_family, "mean construction works on the regular fragment");
        }
    }
};

} // namespace detail

// A convex mean supported in f1 whose mass on every member of f0 stays
// below eps, both facts re-verified exactly before returning. Requires the
// separation hypothesis: the leading Cantor exponent of f0's index strictly
// below f1's. The base point doubles until the mass bound holds; the result
// is deterministic in (f0, f1, eps).
inline ConvexMean ptak_mean(const FamilyP& f0, const FamilyP& f1, const rat& eps,
                            long long cap = 2000, long long m0 = 3) {
    if (eps <= 0) fail(errc::parse, "mass bound must be positive");
    if (m0 < 1) fail(errc::parse, "base point must be >= 1");
    if (!regular_fragment(f0) || !regular_fragment(f1))
        fail(errc::unsupported_family, "mean separation needs regular-fragment families");
    IndexResult i0 = cb_index_symbolic(f0), i1 = cb_index_symbolic(f1);
    if (i0.kind != IndexResult::Kind::exact || i1.kind != IndexResult::Kind::exact)
        fail(errc::unknown_index, "mean separation needs exactly known indexes");
    if (ord_cmp(leading_exp(i0.lo), leading_exp(i1.lo)) >= 0)
        fail(errc::hypothesis_fails, "leading index exponents must strictly increase");
    std::optional<rat> best;
    for (long long m = m0;; m *= 2) {
        Vector raw;
        try {
            detail::MeanBuilder b{cap};
            long long cur = m;
            raw = b.build(f1, cur, [&](long long& c) { return b.point(c); });
        } catch (const error& e) {
            if (e.code != errc::cap_exceeded) throw;
            std::string msg = "support cap hit at base " + std::to_string(m);
            if (best) msg += "; best mass reached " + rat_str(*best);
            fail(errc::diverged, msg);
        }
        ConvexMean cm(std::move(raw));
        if (!contains(f1, cm.support()))
            fail(errc::internal, "constructed mean escapes its family");
        MassResult mm = max_mass(f0, cm.mu, cap);
        if (mm.mass < eps) return cm;
        best = best ? std::min(*best, mm.mass) : mm.mass;
        if (m > cap) {
            std::string msg = "base " + std::to_string(m) + " passed the cap; best mass reached " +
                              rat_str(*best);
            fail(errc::diverged, msg);
        }
    }
}

// A numeric certificate that the second pair norms a suitable mean at least
// C times harder than the first. lower1 is the one-operation bound theta1,
// upper0 the depth-l split bound; the ratio is re-verified exactly.
struct Witness {
    ConvexMean mean;
    rat lower1;
    rat upper0;
    unsigned long long l = 1;  // split depth
    rat eps;
};

inline Witness incomparability_witness(const Pair& p0, const Pair& p1, const rat& C,
                                       long long cap = 2000) {
    if (C <= 0) fail(errc::parse, "ratio target must be positive");
    IndexResult i0 = cb_index_symbolic(p0.fam), i1 = cb_index_symbolic(p1.fam);
    if (i0.kind != IndexResult::Kind::exact || i1.kind != IndexResult::Kind::exact)
        fail(errc::unknown_index, "witness needs exactly known indexes");
    if (!leq_T(i0.lo, p0.theta, i1.lo, p1.theta) || leq_T(i1.lo, p1.theta, i0.lo, p0.theta))
        fail(errc::hypothesis_fails, "second pair must strictly dominate the first");
    rat eps = p1.theta / (2 * C);
    unsigned long long l = 1;
    rat pw = p0.theta;
    while (pw >= eps) {
        ++l;
        pw *= p0.theta;
        if (l > 4096) fail(errc::cap_exceeded, "split depth cap");
    }
    FamilyP shallow = l == 1 ? fam_card(1) : fam_power(p0.fam, l - 1);
    ConvexMean mu = ptak_mean(shallow, p1.fam, eps, cap);
    SplitBound sb = norm_upper_split(p0, mu.mu, l, cap);
    rat lower1 = p1.theta;  // theta1 * sum(mu), one operation over supp(mu)
    if (lower1 < C * sb.total) fail(errc::internal, "witness ratio fell short");
    return Witness{std::move(mu), lower1, sb.total, l, eps};
}

// Sampled exact norm ratios between two spaces. Deterministic in the seed;
// raw engine draws only, so no library distribution enters the stream.
struct ExperimentReport {
    rat max_ratio_01;  // max over samples of norm0/norm1
    rat max_ratio_10;  // max of norm1/norm0
    long long samples = 0;
};

inline ExperimentReport equivalence_experiment(const Space& s0, const Space& s1,
                                               long long samples, long long max_supp,
                                               unsigned long long seed, std::size_t cap = 14) {
    if (samples <= 0 || max_supp <= 0) fail(errc::parse, "sampler config must be positive");
    std::mt19937_64 rng(seed);
    auto draw = [&](long long lo, long long hi) {
        return lo + static_cast<long long>(rng() % static_cast<unsigned long long>(hi - lo + 1));
    };
    ExperimentReport rep;
    rep.max_ratio_01 = 0;
    rep.max_ratio_10 = 0;
    for (long long k = 0; k < samples; ++k) {
        long long sz = draw(1, max_supp);
        std::set<long long> pos;
        while (static_cast<long long>(pos.size()) < sz) pos.insert(draw(1, 3 * max_supp));
        Vector x;
        for (long long p : pos) {
            long long num = draw(-4, 4);
            if (num == 0) num = 1;
            x.set(p, rat(num) / draw(1, 3));
        }
        rat n0 = norm(s0, x, cap).value;
        rat n1 = norm(s1, x, cap).value;
        rep.max_ratio_01 = std::max(rep.max_ratio_01, rat(n0 / n1));
        rep.max_ratio_10 = std::max(rep.max_ratio_10, rat(n1 / n0));
        ++rep.samples;
    }
    return rep;
}

} // namespace tsn
