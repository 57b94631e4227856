// designs.hpp
// Complete mappings, orthomorphisms, subsquare transversals and near
// transversals, and the structural classification of subsquares without
// transversals.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypergraph.hpp"

namespace groupkit {

// sum X + sum Y == sum Z in G^ab, the basic obstruction for a complete
// mapping from X to Y hitting Z
inline bool necessary_condition(const Group& g, std::span<const Elem> xs,
                                std::span<const Elem> ys, std::span<const Elem> zs) {
    if (xs.size() != ys.size() || ys.size() != zs.size())
        throw UnbalancedParts("necessary_condition needs equal sizes");
    int lhs = g.ab_add(subset_sum_ab(g, xs), subset_sum_ab(g, ys));
    return lhs == subset_sum_ab(g, zs);
}

// bijection X -> Y as sorted (x, phi(x)) pairs
struct BijectionWitness {
    std::vector<std::pair<Elem, Elem>> pairs;
};

namespace detail {
inline std::vector<Elem> inverted(const Group& g, std::span<const Elem> s) {
    std::vector<Elem> out;
    out.reserve(s.size());
    for (Elem x : s) out.push_back(g.inv(x));
    return out;
}
}  // namespace detail

// phi: X -> Y with x (x)phi(x) a bijection onto Z; a perfect matching of
// H_G[X, Y, Z^-1]
inline SearchResult<BijectionWitness> complete_mapping(const Group& g,
                                                       std::vector<Elem> xs,
                                                       std::vector<Elem> ys,
                                                       std::vector<Elem> zs,
                                                       uint64_t budget = kDefaultBudget) {
    MulSlice s = build_slice(g, std::move(xs), std::move(ys), detail::inverted(g, zs));
    auto res = find_perfect_matching(s, budget);
    SearchResult<BijectionWitness> out;
    out.status = res.status;
    out.nodes = res.nodes;
    if (res.found()) {
        BijectionWitness w;
        for (const Edge3& ed : res.value->edges) w.pairs.push_back({ed.a, ed.b});
        std::sort(w.pairs.begin(), w.pairs.end());
        out.value = std::move(w);
    }
    return out;
}

// phi: X -> Y with x -> x^-1 phi(x) a bijection onto Z; a perfect matching
// of H_G[X^-1, Y, Z^-1]
inline SearchResult<BijectionWitness> orthomorphism(const Group& g, std::vector<Elem> xs,
                                                    std::vector<Elem> ys,
                                                    std::vector<Elem> zs,
                                                    uint64_t budget = kDefaultBudget) {
    MulSlice s = build_slice(g, detail::inverted(g, xs), std::move(ys),
                             detail::inverted(g, zs));
    auto res = find_perfect_matching(s, budget);
    SearchResult<BijectionWitness> out;
    out.status = res.status;
    out.nodes = res.nodes;
    if (res.found()) {
        BijectionWitness w;
        for (const Edge3& ed : res.value->edges) w.pairs.push_back({g.inv(ed.a), ed.b});
        std::sort(w.pairs.begin(), w.pairs.end());
        out.value = std::move(w);
    }
    return out;
}

inline bool verify_complete_mapping(const Group& g, std::span<const Elem> xs,
                                    std::span<const Elem> ys, std::span<const Elem> zs,
                                    const BijectionWitness& w, bool ortho = false) {
    if (w.pairs.size() != xs.size()) return false;
    std::vector<uint8_t> in_y(g.order(), 0), in_z(g.order(), 0), used_y(g.order(), 0),
        used_z(g.order(), 0), used_x(g.order(), 0), in_x(g.order(), 0);
    for (Elem y : ys) in_y[y] = 1;
    for (Elem z : zs) in_z[z] = 1;
    for (Elem x : xs) in_x[x] = 1;
    for (auto [x, y] : w.pairs) {
        if (!in_x[x] || !in_y[y]) return false;
        Elem prod = ortho ? g.mul(g.inv(x), y) : g.mul(x, y);
        if (!in_z[prod]) return false;
        if (used_x[x]++ || used_y[y]++ || used_z[prod]++) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// subsquare transversals

struct TransversalCell {
    Elem row, col, symbol;
};

struct Transversal {
    std::vector<TransversalCell> cells;
};

// Row-major backtracking over the |A| x |B| array: one cell per row, columns
// and symbols distinct.
inline SearchResult<Transversal> subsquare_transversal(const Group& g,
                                                       std::vector<Elem> rows,
                                                       std::vector<Elem> cols,
                                                       uint64_t budget = kDefaultBudget) {
    if (rows.size() != cols.size())
        throw UnbalancedParts("subsquare needs |A| == |B|");
    std::sort(rows.begin(), rows.end());
    std::sort(cols.begin(), cols.end());
    size_t m = rows.size();
    std::vector<uint8_t> used_col(m, 0), used_sym(g.order(), 0);
    std::vector<int> pick(m, -1);
    uint64_t nodes = 0;
    bool out_of_budget = false;
    auto rec = [&](auto&& self, size_t r) -> bool {
        if (r == m) return true;
        if (++nodes > budget) {
            out_of_budget = true;
            return false;
        }
        for (size_t c = 0; c < m; ++c) {
            if (used_col[c]) continue;
            Elem sym = g.mul(rows[r], cols[c]);
            if (used_sym[sym]) continue;
            used_col[c] = 1;
            used_sym[sym] = 1;
            pick[r] = int(c);
            if (self(self, r + 1)) return true;
            used_col[c] = 0;
            used_sym[sym] = 0;
            if (out_of_budget) return false;
        }
        return false;
    };
    SearchResult<Transversal> out;
    bool ok = rec(rec, 0);
    out.nodes = nodes;
    if (ok) {
        Transversal t;
        for (size_t r = 0; r < m; ++r)
            t.cells.push_back({rows[r], cols[size_t(pick[r])],
                               g.mul(rows[r], cols[size_t(pick[r])])});
        out.status = SearchStatus::Found;
        out.value = std::move(t);
    } else {
        out.status = out_of_budget ? SearchStatus::BudgetExceeded : SearchStatus::Exhausted;
    }
    return out;
}

inline bool verify_transversal(const Group& g, std::span<const Elem> rows,
                               std::span<const Elem> cols, const Transversal& t,
                               bool near = false) {
    size_t want = rows.size() - (near ? 1 : 0);
    if (t.cells.size() != want) return false;
    std::vector<uint8_t> ur(g.order(), 0), uc(g.order(), 0), us(g.order(), 0);
    std::vector<uint8_t> in_r(g.order(), 0), in_c(g.order(), 0);
    for (Elem r : rows) in_r[r] = 1;
    for (Elem c : cols) in_c[c] = 1;
    for (const auto& cell : t.cells) {
        if (!in_r[cell.row] || !in_c[cell.col]) return false;
        if (g.mul(cell.row, cell.col) != cell.symbol) return false;
        if (ur[cell.row]++ || uc[cell.col]++ || us[cell.symbol]++) return false;
    }
    return true;
}

// n-1 cells with no shared row/column/symbol, via dropping the identity
// from rows and columns and one element of [sum G] from the symbols
inline SearchResult<Transversal> near_transversal(const Group& g,
                                                  uint64_t budget = kDefaultBudget) {
    int n = g.order();
    SearchResult<Transversal> out;
    if (n == 1) {
        out.status = SearchStatus::Found;
        out.value = Transversal{};
        return out;
    }
    std::vector<Elem> xs, zs;
    int target = 0;
    for (Elem x = 0; x < n; ++x) target = g.ab_add(target, g.coset_of(x));
    Elem drop = -1;
    for (Elem z = 0; z < n && drop < 0; ++z)
        if (g.coset_of(z) == target) drop = z;
    for (Elem x = 1; x < n; ++x) xs.push_back(x);
    for (Elem z = 0; z < n; ++z)
        if (z != drop) zs.push_back(z);
    auto res = complete_mapping(g, xs, xs, zs, budget);
    out.status = res.status;
    out.nodes = res.nodes;
    if (res.found()) {
        Transversal t;
        for (auto [x, y] : res.value->pairs) t.cells.push_back({x, y, g.mul(x, y)});
        out.value = std::move(t);
    }
    return out;
}

// ---------------------------------------------------------------------------
// classification of subsquares without transversals

enum class SubsquareVerdict {
    HasTransversal,
    Case1,           // A = g1 H, B = H g2 for a subgroup H failing Hall-Paige
    Case2,           // boolean H minus zero-sum pairs on each side
    NoTransversal,   // exhaustively none, but no structural witness found
    Unresolved,      // budget exceeded
};

struct SubsquareClassification {
    SubsquareVerdict verdict = SubsquareVerdict::Unresolved;
    std::optional<Transversal> transversal;
    // Case1 structure
    std::vector<Elem> subgroup;
    Elem g1 = -1, g2 = -1;
    // Case2 structure
    int boolean_rank = 0;
    Elem a1 = -1, a2 = -1, b1 = -1, b2 = -1;
    bool small_order_exception = false;  // set on NoTransversal
};

namespace detail {

inline bool is_subgroup_set(const Group& g, const std::vector<uint8_t>& in,
                            const std::vector<Elem>& elems) {
    if (!in[Group::e]) return false;
    for (Elem a : elems) {
        if (!in[g.inv(a)]) return false;
        for (Elem b : elems)
            if (!in[g.mul(a, b)]) return false;
    }
    return true;
}

// A == g1 * H for the (unique candidate) subgroup H = g1^-1 A with g1 = min A
inline std::optional<std::pair<Elem, std::vector<Elem>>> left_coset_structure(
    const Group& g, const std::vector<Elem>& a) {
    if (a.empty()) return std::nullopt;
    Elem g1 = a.front();
    std::vector<Elem> h;
    std::vector<uint8_t> in(g.order(), 0);
    for (Elem x : a) {
        Elem y = g.mul(g.inv(g1), x);
        h.push_back(y);
        in[y] = 1;
    }
    std::sort(h.begin(), h.end());
    if (!is_subgroup_set(g, in, h)) return std::nullopt;
    return std::make_pair(g1, h);
}

inline std::optional<std::pair<Elem, std::vector<Elem>>> right_coset_structure(
    const Group& g, const std::vector<Elem>& b) {
    if (b.empty()) return std::nullopt;
    Elem g2 = b.front();
    std::vector<Elem> h;
    std::vector<uint8_t> in(g.order(), 0);
    for (Elem x : b) {
        Elem y = g.mul(x, g.inv(g2));
        h.push_back(y);
        in[y] = 1;
    }
    std::sort(h.begin(), h.end());
    if (!is_subgroup_set(g, in, h)) return std::nullopt;
    return std::make_pair(g2, h);
}

// boolean subgroups H with |H| = |s|+2 containing the set s; the two extra
// elements are returned
inline std::optional<std::tuple<std::vector<Elem>, Elem, Elem>> boolean_plus_two(
    const Group& g, const std::vector<Elem>& s) {
    for (Elem x : s)
        if (g.mul(x, x) != Group::e) return std::nullopt;
    std::vector<uint8_t> in_s(g.order(), 0);
    for (Elem x : s) in_s[x] = 1;
    // candidates for the two missing elements: involutions or e, not in s,
    // and must include every product of s-pairs that escapes s
    std::vector<Elem> escapes;
    for (Elem a : s)
        for (Elem b : s) {
            Elem p = g.mul(a, b);
            if (!in_s[p]) {
                if (std::find(escapes.begin(), escapes.end(), p) == escapes.end())
                    escapes.push_back(p);
                if (escapes.size() > 2) return std::nullopt;
            }
        }
    std::vector<Elem> cands;
    for (Elem x = 0; x < g.order(); ++x)
        if (!in_s[x] && g.mul(x, x) == Group::e) cands.push_back(x);
    for (size_t i = 0; i < cands.size(); ++i)
        for (size_t j = i + 1; j < cands.size(); ++j) {
            Elem e1 = cands[i], e2 = cands[j];
            bool covers = true;
            for (Elem p : escapes) covers &= (p == e1 || p == e2);
            if (!covers) continue;
            std::vector<Elem> h = s;
            h.push_back(e1);
            h.push_back(e2);
            std::sort(h.begin(), h.end());
            std::vector<uint8_t> in(g.order(), 0);
            for (Elem x : h) in[x] = 1;
            if (is_subgroup_set(g, in, h)) return std::make_tuple(h, e1, e2);
        }
    return std::nullopt;
}

}  // namespace detail

inline SubsquareClassification classify_subsquare(const Group& g, std::vector<Elem> a,
                                                  std::vector<Elem> b,
                                                  uint64_t budget = kDefaultBudget) {
    if (a.size() != b.size()) throw UnbalancedParts("subsquare needs |A| == |B|");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    SubsquareClassification out;

    // Case 2 first: an instance can satisfy both shapes (in Z2^2 a 2-set is
    // always a coset as well), and the two-deleted-pairs reading is the more
    // specific one
    // g1 A = H \ {a1,a2}, g2 B = H \ {b1,b2} for boolean H with
    // a1+a2+b1+b2 = 0
    if (a.size() >= 2) {
        size_t target = a.size() + 2;
        if ((target & (target - 1)) == 0) {
            for (Elem g1 = 0; g1 < g.order(); ++g1) {
                std::vector<Elem> s;
                s.reserve(a.size());
                for (Elem x : a) s.push_back(g.mul(g1, x));
                std::sort(s.begin(), s.end());
                auto ha = detail::boolean_plus_two(g, s);
                if (!ha) continue;
                auto& [h, a1, a2] = *ha;
                std::vector<uint8_t> in_h(g.order(), 0);
                for (Elem x : h) in_h[x] = 1;
                for (Elem g2 = 0; g2 < g.order(); ++g2) {
                    std::vector<Elem> t;
                    bool inside = true;
                    std::vector<uint8_t> in_t(g.order(), 0);
                    for (Elem x : b) {
                        Elem y = g.mul(g2, x);
                        if (!in_h[y]) {
                            inside = false;
                            break;
                        }
                        t.push_back(y);
                        in_t[y] = 1;
                    }
                    if (!inside) continue;
                    std::vector<Elem> extra;
                    for (Elem x : h)
                        if (!in_t[x]) extra.push_back(x);
                    if (extra.size() != 2) continue;
                    Elem sum = g.mul(g.mul(a1, a2), g.mul(extra[0], extra[1]));
                    if (sum == Group::e) {
                        out.verdict = SubsquareVerdict::Case2;
                        out.subgroup = h;
                        int rank = 0;
                        while ((size_t(1) << rank) < h.size()) ++rank;
                        out.boolean_rank = rank;
                        out.g1 = g1;
                        out.g2 = g2;
                        out.a1 = a1;
                        out.a2 = a2;
                        out.b1 = extra[0];
                        out.b2 = extra[1];
                        return out;
                    }
                }
            }
        }
    }

    // Case 1: A = g1 H and B = H g2 with a common H failing Hall-Paige
    if (auto la = detail::left_coset_structure(g, a)) {
        if (auto rb = detail::right_coset_structure(g, b)) {
            if (la->second == rb->second) {
                Subgroup h{&g, la->second};
                if (!hall_paige_product(h.as_group())) {
                    out.verdict = SubsquareVerdict::Case1;
                    out.subgroup = la->second;
                    out.g1 = la->first;
                    out.g2 = rb->first;
                    return out;
                }
            }
        }
    }

    auto res = subsquare_transversal(g, a, b, budget);
    if (res.found()) {
        out.verdict = SubsquareVerdict::HasTransversal;
        out.transversal = std::move(res.value);
    } else if (res.status == SearchStatus::Exhausted) {
        out.verdict = SubsquareVerdict::NoTransversal;
        out.small_order_exception = true;
    } else {
        out.verdict = SubsquareVerdict::Unresolved;
    }
    return out;
}

// |{(a1,a2,b1,b2) in A^4 : a1 a2^-1 = b1 b2^-1}| via a difference histogram
inline long multiplicative_energy(const Group& g, std::span<const Elem> a) {
    std::vector<long> hist(g.order(), 0);
    for (Elem x : a)
        for (Elem y : a) ++hist[g.mul(x, g.inv(y))];
    long e = 0;
    for (long h : hist) e += h * h;
    return e;
}

}  // namespace groupkit
