#pragma once

#include <map>
#include <string>
#include <vector>

#include "tsn/errors.hpp"
#include "tsn/functional.hpp"
#include "tsn/membership.hpp"
#include "tsn/norm.hpp"
#include "tsn/space.hpp"
#include "tsn/vector.hpp"

namespace tsn {

// Result of pushing a norming functional through a block sequence: the
// functional g that acts on the unit vectors sitting at the blocks' right
// endpoints the way f acts on the blocks themselves.
struct TransferRecord {
    Space transferred;                    // families [<=2] (x) Ad(F_i), same weights
    FunP g;
    std::vector<size_t> engaged;          // blocks whose range meets supp f
    std::vector<long long> q;             // right endpoint per block (all blocks)
    std::vector<std::string> stop_node;   // per engaged block: path of its deepest node
    std::vector<int> left_child, right_child; // per engaged block: boundary children there
    std::map<std::string, std::vector<size_t>> covered;  // node path -> engaged blocks below
    std::map<std::string, std::vector<size_t>> settled;  // node path -> blocks stopping here
    bool identity_ok = false;
    bool supp_ok = false;
    bool admissible_ok = false;
    std::string note;
};

namespace detail {

inline std::string path_str(const std::vector<int>& path) {
    if (path.empty()) return "root";
    std::string s;
    for (size_t i = 0; i < path.size(); ++i) {
        if (i) s += ".";
        s += std::to_string(path[i]);
    }
    return s;
}

// positions of supp(f) falling inside [lo, hi]
inline FinSet supp_in_range(const FunP& f, long long lo, long long hi) {
    FinSet out;
    for (long long x : f->support.v)
        if (x >= lo && x <= hi) out.v.push_back(x);
    return out;
}

} // namespace detail

// For each block x_n, the deepest node of f whose support meets the block's
// range exactly where the root does defines where that block is "settled".
// g mirrors f on the settled skeleton: a settled block becomes the leaf
// f_t(x_n)/theta_i at the block's right endpoint q_n (plain f_t(x_n) when the
// node is itself a leaf), and surviving children are transferred recursively.
// The record carries the per-block identity f(x_n) = g(e_{q_n}) and the
// structural checks on g; by linearity the identity extends to every
// combination sum a_n x_n over engaged blocks.
inline TransferRecord transfer(const Space& sp, const FunP& f, const std::vector<Vector>& xs) {
    TransferRecord rec;

    std::vector<FinSet> supports;
    supports.reserve(xs.size());
    for (const auto& x : xs) {
        if (x.w.empty()) fail(errc::malformed_blocks, "empty block vector");
        supports.push_back(x.supp());
    }
    check_blocks(supports);
    for (const auto& s : supports) rec.q.push_back(s.max());

    for (size_t i = 0; i < sp.pairs.size(); ++i)
        rec.transferred.pairs.emplace_back(
            fam_conv(fam_card(2), fam_ad(sp.pairs[i].fam)), sp.pairs[i].theta);

    // a block is engaged when the root support meets its range
    std::vector<FinSet> target; // per engaged block: the positions to capture
    for (size_t n = 0; n < xs.size(); ++n) {
        FinSet I = detail::supp_in_range(f, supports[n].min(), supports[n].max());
        if (!I.empty()) {
            rec.engaged.push_back(n);
            target.push_back(I);
        }
    }
    if (rec.engaged.empty())
        fail(errc::empty_intersection, "no block range meets the functional support");

    // descend per engaged block: stop when no single child holds the whole target
    std::vector<std::vector<int>> settle_path(rec.engaged.size());
    for (size_t t = 0; t < rec.engaged.size(); ++t) {
        size_t n = rec.engaged[t];
        long long lo = supports[n].min(), hi = supports[n].max();
        FunP cur = f;
        std::vector<int> path;
        int lc = -1, rc = -1;
        while (!cur->is_leaf) {
            int inside = -1, meets = 0, first = -1, last = -1;
            for (size_t c = 0; c < cur->kids.size(); ++c) {
                FinSet part = detail::supp_in_range(cur->kids[c], lo, hi);
                if (part.empty()) continue;
                ++meets;
                if (first < 0) first = static_cast<int>(c);
                last = static_cast<int>(c);
                if (part == target[t]) inside = static_cast<int>(c);
            }
            if (inside < 0) {
                lc = first;
                rc = last;
                break;
            }
            path.push_back(inside);
            cur = cur->kids[inside];
        }
        settle_path[t] = path;
        rec.stop_node.push_back(detail::path_str(path));
        rec.left_child.push_back(lc);
        rec.right_child.push_back(rc);
        for (size_t k = 0; k <= path.size(); ++k) {
            std::vector<int> pre(path.begin(), path.begin() + k);
            rec.covered[detail::path_str(pre)].push_back(n);
        }
        rec.settled[detail::path_str(path)].push_back(n);
    }

    // assemble g over the covered skeleton
    std::function<FunP(const FunP&, std::vector<int>&)> build =
        [&](const FunP& node, std::vector<int>& path) -> FunP {
        std::string key = detail::path_str(path);
        std::vector<std::pair<long long, FunP>> pieces; // (min position, part)
        auto settled_it = rec.settled.find(key);
        if (settled_it != rec.settled.end()) {
            for (size_t n : settled_it->second) {
                rat v = eval(sp, node, xs[n]);
                rat coeff = node->is_leaf ? v : v / sp.pairs[node->family].theta;
                pieces.emplace_back(rec.q[n], Fun::leaf(coeff, rec.q[n]));
            }
        }
        if (node->is_leaf) {
            // a leaf settles exactly one block; pieces cannot be empty here
            return pieces.size() == 1 ? pieces[0].second : node;
        }
        for (size_t c = 0; c < node->kids.size(); ++c) {
            path.push_back(static_cast<int>(c));
            if (rec.covered.count(detail::path_str(path))) {
                FunP sub = build(node->kids[c], path);
                pieces.emplace_back(sub->support.min(), sub);
            }
            path.pop_back();
        }
        std::sort(pieces.begin(), pieces.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<FunP> kids;
        kids.reserve(pieces.size());
        for (auto& [pos, fp] : pieces) kids.push_back(fp);
        if (kids.size() == 1) {
            // a node that kept a single piece contributes theta * that piece;
            // keep the node so evaluation stays literal
            return Fun::node(node->family, std::move(kids));
        }
        return Fun::node(node->family, std::move(kids));
    };

    std::vector<int> rootpath;
    if (f->is_leaf) {
        size_t n = rec.engaged[0];
        rec.g = Fun::leaf(eval(sp, f, xs[n]), rec.q[n]);
    } else {
        rec.g = build(f, rootpath);
    }

    // identity check per engaged block, enough for all combinations
    rec.identity_ok = true;
    for (size_t t = 0; t < rec.engaged.size(); ++t) {
        size_t n = rec.engaged[t];
        Vector unit;
        unit.set(rec.q[n], rat(1));
        if (eval(sp, f, xs[n]) != eval(rec.transferred, rec.g, unit)) {
            rec.identity_ok = false;
            rec.note = "identity fails at block " + std::to_string(n);
            break;
        }
    }

    // support check: the leaves of g sit at exactly the engaged right
    // endpoints. This is the formal leaf set, zero values included; the
    // admissibility argument below consumes these sets, so dropping a
    // vanished coefficient would be wrong here.
    FinSet expect;
    for (size_t n : rec.engaged) expect.v.push_back(rec.q[n]);
    rec.supp_ok = rec.g->support == expect;

    std::string why;
    rat worst(1);
    for (const auto& pr : sp.pairs)
        if (pr.theta < worst) worst = pr.theta;
    rec.admissible_ok = validate(rec.transferred, rec.g, rat(1) / worst, &why);
    if (!rec.admissible_ok && rec.note.empty()) rec.note = why;
    return rec;
}

} // namespace tsn
