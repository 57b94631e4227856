// sequencing.hpp
// Sequencings, R-sequencings, harmonious orderings, and rainbow Hamilton
// paths in the multiplication/division digraphs of a group.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hypergraph.hpp"

namespace groupkit {

enum class DigraphKind { Multiplication, Division };

// complete edge-coloured digraph on V with colour(a,b) = ab or a^-1 b,
// edges restricted to the allowed colour set
struct ColoredDigraph {
    const Group* g = nullptr;
    DigraphKind kind = DigraphKind::Multiplication;
    std::vector<Elem> verts;
    std::vector<Elem> colors;  // allowed colours

    Elem color(Elem a, Elem b) const {
        return kind == DigraphKind::Multiplication ? g->mul(a, b)
                                                   : g->mul(g->inv(a), b);
    }
};

inline ColoredDigraph make_digraph(const Group& g, DigraphKind kind,
                                   std::vector<Elem> verts, std::vector<Elem> colors) {
    ColoredDigraph d;
    d.g = &g;
    d.kind = kind;
    d.verts = std::move(verts);
    d.colors = std::move(colors);
    std::sort(d.verts.begin(), d.verts.end());
    std::sort(d.colors.begin(), d.colors.end());
    return d;
}

enum class OrderingKind { Sequencing, RSequencing, Harmonious };

struct OrderingWitness {
    OrderingKind kind;
    std::vector<Elem> seq;      // the ordering of G
    std::vector<Elem> derived;  // partial products / consecutive products
};

// R-sequencing convention: ordering (e, b1, ..., b_{n-1}) with the partial
// products of the b's pairwise distinct; Closed additionally requires the
// full product b1...b_{n-1} = e. The Closed form is the default.
enum class RSequencingVariant { Closed, Open };

namespace detail {

inline std::vector<Elem> partial_products(const Group& g, std::span<const Elem> seq) {
    std::vector<Elem> out;
    Elem acc = Group::e;
    for (Elem b : seq) {
        acc = g.mul(acc, b);
        out.push_back(acc);
    }
    return out;
}

inline std::vector<Elem> cyclic_products(const Group& g, std::span<const Elem> seq) {
    std::vector<Elem> out;
    for (size_t i = 0; i < seq.size(); ++i)
        out.push_back(g.mul(seq[i], seq[(i + 1) % seq.size()]));
    return out;
}

}  // namespace detail

// Ordering of all of G whose partial products are pairwise distinct. The
// identity is forced to the front: b_i = e for i > 1 repeats a partial.
inline SearchResult<OrderingWitness> find_sequencing(const Group& g,
                                                     uint64_t budget = kDefaultBudget) {
    const int n = g.order();
    SearchResult<OrderingWitness> out;
    std::vector<Elem> seq = {Group::e};
    std::vector<uint8_t> used(n, 0), used_partial(n, 0);
    used[Group::e] = 1;
    used_partial[Group::e] = 1;  // first partial product is b1 = e
    uint64_t nodes = 0;
    bool over = false;
    auto rec = [&](auto&& self, Elem prefix) -> bool {
        if (int(seq.size()) == n) return true;
        if (++nodes > budget) {
            over = true;
            return false;
        }
        for (Elem b = 1; b < n; ++b) {
            if (used[b]) continue;
            Elem p = g.mul(prefix, b);
            if (used_partial[p]) continue;
            used[b] = 1;
            used_partial[p] = 1;
            seq.push_back(b);
            if (self(self, p)) return true;
            seq.pop_back();
            used[b] = 0;
            used_partial[p] = 0;
            if (over) return false;
        }
        return false;
    };
    bool ok = n == 1 ? true : rec(rec, Group::e);
    out.nodes = nodes;
    if (ok) {
        out.status = SearchStatus::Found;
        out.value = OrderingWitness{OrderingKind::Sequencing, seq,
                                    detail::partial_products(g, seq)};
    } else {
        out.status = over ? SearchStatus::BudgetExceeded : SearchStatus::Exhausted;
    }
    return out;
}

inline SearchResult<OrderingWitness> find_r_sequencing(
    const Group& g, uint64_t budget = kDefaultBudget,
    RSequencingVariant variant = RSequencingVariant::Closed) {
    const int n = g.order();
    SearchResult<OrderingWitness> out;
    if (n == 1) {
        out.status = SearchStatus::Found;
        out.value = OrderingWitness{OrderingKind::RSequencing, {Group::e}, {}};
        return out;
    }
    std::vector<Elem> seq = {Group::e};
    std::vector<uint8_t> used(n, 0), used_partial(n, 0);
    used[Group::e] = 1;
    uint64_t nodes = 0;
    bool over = false;
    const bool closed = variant == RSequencingVariant::Closed;
    auto rec = [&](auto&& self, Elem prefix) -> bool {
        if (int(seq.size()) == n) return !closed || prefix == Group::e;
        if (++nodes > budget) {
            over = true;
            return false;
        }
        bool last = int(seq.size()) == n - 1;
        for (Elem b = 1; b < n; ++b) {
            if (used[b]) continue;
            Elem p = g.mul(prefix, b);
            if (used_partial[p]) continue;
            if (closed && p == Group::e && !last) continue;  // e must be the final partial
            used[b] = 1;
            used_partial[p] = 1;
            seq.push_back(b);
            if (self(self, p)) return true;
            seq.pop_back();
            used[b] = 0;
            used_partial[p] = 0;
            if (over) return false;
        }
        return false;
    };
    bool ok = rec(rec, Group::e);
    out.nodes = nodes;
    if (ok) {
        out.status = SearchStatus::Found;
        std::vector<Elem> bs(seq.begin() + 1, seq.end());
        out.value = OrderingWitness{OrderingKind::RSequencing, seq,
                                    detail::partial_products(g, bs)};
    } else {
        out.status = over ? SearchStatus::BudgetExceeded : SearchStatus::Exhausted;
    }
    return out;
}

// Ordering of all of G whose cyclically consecutive products enumerate G.
// Rotations preserve the property, so the first element is pinned to e.
inline SearchResult<OrderingWitness> find_harmonious(const Group& g,
                                                     uint64_t budget = kDefaultBudget) {
    const int n = g.order();
    SearchResult<OrderingWitness> out;
    if (n == 1) {
        out.status = SearchStatus::Found;
        out.value = OrderingWitness{OrderingKind::Harmonious, {Group::e}, {Group::e}};
        return out;
    }
    std::vector<Elem> seq = {Group::e};
    std::vector<uint8_t> used(n, 0), used_color(n, 0);
    used[Group::e] = 1;
    uint64_t nodes = 0;
    bool over = false;
    auto rec = [&](auto&& self) -> bool {
        if (int(seq.size()) == n) {
            Elem closing = g.mul(seq.back(), seq.front());
            return !used_color[closing];
        }
        if (++nodes > budget) {
            over = true;
            return false;
        }
        for (Elem b = 1; b < n; ++b) {
            if (used[b]) continue;
            Elem c = g.mul(seq.back(), b);
            if (used_color[c]) continue;
            used[b] = 1;
            used_color[c] = 1;
            seq.push_back(b);
            if (self(self)) return true;
            seq.pop_back();
            used[b] = 0;
            used_color[c] = 0;
            if (over) return false;
        }
        return false;
    };
    bool ok = rec(rec);
    out.nodes = nodes;
    if (ok) {
        out.status = SearchStatus::Found;
        out.value = OrderingWitness{OrderingKind::Harmonious, seq,
                                    detail::cyclic_products(g, seq)};
    } else {
        out.status = over ? SearchStatus::BudgetExceeded : SearchStatus::Exhausted;
    }
    return out;
}

struct OrderingVerdict {
    bool ok = true;
    std::string violation;
    int index = -1;  // first offending position where applicable
};

inline OrderingVerdict verify_ordering(const Group& g, const OrderingWitness& w,
                                       RSequencingVariant variant = RSequencingVariant::Closed) {
    OrderingVerdict v;
    const int n = g.order();
    auto fail = [&](std::string msg, int idx = -1) {
        v.ok = false;
        v.violation = std::move(msg);
        v.index = idx;
        return v;
    };
    if (int(w.seq.size()) != n) return fail("wrong length");
    std::vector<uint8_t> seen(n, 0);
    for (Elem x : w.seq) {
        if (x < 0 || x >= n || seen[x]) return fail("sequence is not a permutation of G");
        seen[x] = 1;
    }
    std::vector<uint8_t> dup(n, 0);
    switch (w.kind) {
        case OrderingKind::Sequencing: {
            auto ps = detail::partial_products(g, w.seq);
            for (size_t i = 0; i < ps.size(); ++i)
                if (dup[ps[i]]++) return fail("repeated partial product", int(i));
            break;
        }
        case OrderingKind::RSequencing: {
            if (n == 1) break;
            if (w.seq[0] != Group::e) return fail("R-sequencing must start at e");
            std::vector<Elem> bs(w.seq.begin() + 1, w.seq.end());
            auto ps = detail::partial_products(g, bs);
            for (size_t i = 0; i < ps.size(); ++i)
                if (dup[ps[i]]++) return fail("repeated partial product", int(i));
            if (variant == RSequencingVariant::Closed && ps.back() != Group::e)
                return fail("full product is not the identity", int(ps.size()) - 1);
            break;
        }
        case OrderingKind::Harmonious: {
            auto cs = detail::cyclic_products(g, w.seq);
            for (size_t i = 0; i < cs.size(); ++i)
                if (dup[cs[i]]++) return fail("repeated consecutive product", int(i));
            break;
        }
    }
    return v;
}

// ---------------------------------------------------------------------------
// rainbow Hamilton paths

struct RainbowPath {
    std::vector<Elem> verts;
    std::vector<Elem> colors;
};

// Directed Hamilton path from x to y through all of D.verts, edge colours
// pairwise distinct and drawn from D.colors.
inline SearchResult<RainbowPath> rainbow_hamilton_path(const ColoredDigraph& d, Elem x,
                                                       Elem y,
                                                       uint64_t budget = kDefaultBudget) {
    const Group& g = *d.g;
    if (x == y) throw std::invalid_argument("rainbow path endpoints must differ");
    SearchResult<RainbowPath> out;
    std::vector<uint8_t> in_v(g.order(), 0), in_c(g.order(), 0);
    for (Elem v : d.verts) in_v[v] = 1;
    for (Elem c : d.colors) in_c[c] = 1;
    if (!in_v[x] || !in_v[y])
        throw std::invalid_argument("rainbow path endpoints must lie in the vertex set");
    std::vector<uint8_t> used_v(g.order(), 0), used_c(g.order(), 0);
    std::vector<Elem> path = {x};
    std::vector<Elem> colors;
    used_v[x] = 1;
    uint64_t nodes = 0;
    bool over = false;
    size_t want = d.verts.size();
    auto rec = [&](auto&& self) -> bool {
        if (path.size() == want) return path.back() == y;
        if (++nodes > budget) {
            over = true;
            return false;
        }
        Elem cur = path.back();
        for (Elem nxt : d.verts) {
            if (used_v[nxt] || nxt == cur) continue;
            if (nxt == y && path.size() != want - 1) continue;  // y is the terminus
            Elem c = d.color(cur, nxt);
            if (!in_c[c] || used_c[c]) continue;
            used_v[nxt] = 1;
            used_c[c] = 1;
            path.push_back(nxt);
            colors.push_back(c);
            if (self(self)) return true;
            path.pop_back();
            colors.pop_back();
            used_v[nxt] = 0;
            used_c[c] = 0;
            if (over) return false;
        }
        return false;
    };
    bool ok = rec(rec);
    out.nodes = nodes;
    if (ok) {
        out.status = SearchStatus::Found;
        out.value = RainbowPath{path, colors};
    } else {
        out.status = over ? SearchStatus::BudgetExceeded : SearchStatus::Exhausted;
    }
    return out;
}

// which colour-sum identity a (V, C, x, y) instance satisfies in G^ab
struct HamiltonHypothesisReport {
    bool size_ok = false;           // |V| + 1 == |C|
    bool multiplication_sum = false; // sum C == x + y + 2 sum V
    bool division_sum = false;       // sum C == y - x
    bool boolean_identity_ok = true; // e not in C whenever G is boolean
    bool multiplication_branch() const {
        return size_ok && multiplication_sum && boolean_identity_ok;
    }
    bool division_branch() const { return size_ok && division_sum; }
};

inline HamiltonHypothesisReport hamilton_hypothesis(const Group& g,
                                                    std::span<const Elem> interior,
                                                    std::span<const Elem> colors, Elem x,
                                                    Elem y) {
    HamiltonHypothesisReport r;
    r.size_ok = interior.size() + 1 == colors.size();
    int sum_c = subset_sum_ab(g, colors);
    int sum_v = subset_sum_ab(g, interior);
    int mult = g.ab_add(g.ab_add(g.coset_of(x), g.coset_of(y)), g.ab_add(sum_v, sum_v));
    r.multiplication_sum = sum_c == mult;
    r.division_sum = sum_c == g.ab_add(g.coset_of(y), g.ab_neg(g.coset_of(x)));
    if (is_elementary_abelian_2(g))
        r.boolean_identity_ok =
            std::find(colors.begin(), colors.end(), Group::e) == colors.end();
    return r;
}

// sequencing <-> Hamilton path in the division digraph: the partial products
// walk K^-_G with colours b_2..b_n
inline bool sequencing_matches_path(const Group& g, const OrderingWitness& w) {
    if (w.kind != OrderingKind::Sequencing) return false;
    auto ps = detail::partial_products(g, w.seq);
    for (size_t i = 0; i + 1 < ps.size(); ++i) {
        Elem c = g.mul(g.inv(ps[i]), ps[i + 1]);
        if (c != w.seq[i + 1]) return false;
    }
    return true;
}

// harmonious ordering <-> rainbow Hamilton cycle in K^+_G
inline bool harmonious_matches_cycle(const Group& g, const OrderingWitness& w) {
    if (w.kind != OrderingKind::Harmonious) return false;
    std::vector<uint8_t> seen(g.order(), 0);
    for (size_t i = 0; i < w.seq.size(); ++i) {
        Elem c = g.mul(w.seq[i], w.seq[(i + 1) % w.seq.size()]);
        if (seen[c]++) return false;
    }
    return true;
}

}  // namespace groupkit
