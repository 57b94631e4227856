// hypergraph.hpp
// The 3-partite multiplication hypergraph H_G and induced slices
// H_G[X,Y,Z] with edges {(a,b,c) : abc = e}, plus an exact backtracking
// perfect-matching solver.
#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "group.hpp"
#include "search.hpp"

namespace groupkit {

struct UnbalancedParts : std::invalid_argument {
    explicit UnbalancedParts(const std::string& msg) : std::invalid_argument(msg) {}
};
struct IdOutOfRange : std::invalid_argument {
    explicit IdOutOfRange(const std::string& msg) : std::invalid_argument(msg) {}
};

// Edges are implicit: (a,b) extends to the unique c = (ab)^-1 when that c
// is present in the Z part.
struct MulSlice {
    const Group* g = nullptr;
    std::vector<Elem> xs, ys, zs;          // sorted unique ids
    std::vector<uint8_t> in_x, in_y, in_z; // membership over 0..n-1

    bool has_edge(Elem a, Elem b, Elem c) const {
        return in_x[a] && in_y[b] && in_z[c] && g->mul(g->mul(a, b), c) == Group::e;
    }
    Elem complete(Elem a, Elem b) const { return g->inv(g->mul(a, b)); }
    size_t edge_count() const {
        size_t cnt = 0;
        for (Elem a : xs)
            for (Elem b : ys) cnt += in_z[complete(a, b)];
        return cnt;
    }
};

inline MulSlice build_slice(const Group& g, std::vector<Elem> xs, std::vector<Elem> ys,
                            std::vector<Elem> zs) {
    MulSlice s;
    s.g = &g;
    auto prep = [&](std::vector<Elem>& v, std::vector<uint8_t>& mask, const char* part) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        mask.assign(g.order(), 0);
        for (Elem x : v) {
            if (x < 0 || x >= g.order())
                throw IdOutOfRange(std::string("slice part ") + part + " has id out of range");
            mask[x] = 1;
        }
    };
    s.xs = std::move(xs);
    s.ys = std::move(ys);
    s.zs = std::move(zs);
    prep(s.xs, s.in_x, "X");
    prep(s.ys, s.in_y, "Y");
    prep(s.zs, s.in_z, "Z");
    return s;
}

inline MulSlice full_slice(const Group& g) {
    std::vector<Elem> all(g.order());
    std::iota(all.begin(), all.end(), 0);
    return build_slice(g, all, all, all);
}

struct Edge3 {
    Elem a, b, c;
    bool operator==(const Edge3&) const = default;
};

struct Matching {
    std::vector<Edge3> edges;
};

// ---------------------------------------------------------------------------
// degree / pair-degree report (Observation: the full slice is (0,1,n)-typical
// and linear)

struct TypicalityReport {
    int min_degree[3] = {0, 0, 0};
    int max_degree[3] = {0, 0, 0};
    // pair degrees of same-part vertex pairs into each other part, indexed
    // [source part][target part]; the diagonal is unused
    int min_pair_degree[3][3] = {};
    int max_pair_degree[3][3] = {};
    bool linear = true;
};

inline TypicalityReport typicality_stats(const MulSlice& s) {
    const Group& g = *s.g;
    TypicalityReport r;
    // the third vertex of the edge through (part p vertex u, part q vertex w)
    auto third = [&](int p, Elem u, int q, Elem w) -> Elem {
        if (p > q) {
            std::swap(p, q);
            std::swap(u, w);
        }
        if (p == 0 && q == 1) return s.complete(u, w);           // c = (ab)^-1
        if (p == 0 && q == 2) return g.mul(g.inv(u), g.inv(w));  // b = a^-1 c^-1
        return g.inv(g.mul(u, w));                               // a = (bc)^-1
    };
    const std::vector<Elem>* parts[3] = {&s.xs, &s.ys, &s.zs};
    const std::vector<uint8_t>* masks[3] = {&s.in_x, &s.in_y, &s.in_z};
    auto scan_part = [&](int p) {
        int mn = std::numeric_limits<int>::max(), mx = 0;
        int q = (p + 1) % 3, t = (p + 2) % 3;
        for (Elem v : *parts[p]) {
            int d = 0;
            for (Elem w : *parts[q]) d += (*masks[t])[third(p, v, q, w)];
            mn = std::min(mn, d);
            mx = std::max(mx, d);
        }
        if (parts[p]->empty()) mn = 0;
        r.min_degree[p] = mn;
        r.max_degree[p] = mx;
    };
    for (int p = 0; p < 3; ++p) scan_part(p);

    // pair degree of (u, v) from part p into part q: vertices w of q such
    // that both (u, w) and (v, w) extend to edges of the slice
    auto scan_pairs = [&](int p, int q) {
        int t = 3 - p - q;
        int mn = std::numeric_limits<int>::max(), mx = 0;
        for (size_t i = 0; i < parts[p]->size(); ++i)
            for (size_t j = i + 1; j < parts[p]->size(); ++j) {
                Elem u = (*parts[p])[i], v = (*parts[p])[j];
                int d = 0;
                for (Elem w : *parts[q])
                    d += (*masks[t])[third(p, u, q, w)] && (*masks[t])[third(p, v, q, w)];
                mn = std::min(mn, d);
                mx = std::max(mx, d);
            }
        if (parts[p]->size() < 2) mn = 0;
        r.min_pair_degree[p][q] = mn;
        r.max_pair_degree[p][q] = mx;
    };
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q)
            if (p != q) scan_pairs(p, q);
    // linearity holds structurally: two vertices determine the third
    r.linear = true;
    return r;
}

// ---------------------------------------------------------------------------
// exact perfect-matching search

namespace detail {

struct MatchState {
    const MulSlice* s;
    std::vector<Elem> xs, ys, zs;
    std::vector<uint8_t> used_y, used_z;  // indexed by element id
    std::vector<Edge3> chosen;
    uint64_t nodes = 0, budget = 0;
    bool out_of_budget = false;
};

// Branch on the X vertex with the fewest remaining completions. Every edge
// sums to zero in G^ab, so the necessary condition sum(X)+sum(Y)+sum(Z)=0
// is checked once at the root.
inline bool match_rec(MatchState& st, size_t depth) {
    if (depth == st.xs.size()) return true;
    if (++st.nodes > st.budget) {
        st.out_of_budget = true;
        return false;
    }
    const MulSlice& s = *st.s;
    // most-constrained X vertex among the unmatched (ties: smallest id)
    int best = -1, best_deg = std::numeric_limits<int>::max();
    for (size_t i = depth; i < st.xs.size(); ++i) {
        int d = 0;
        for (Elem b : st.ys) {
            if (st.used_y[b]) continue;
            Elem c = s.complete(st.xs[i], b);
            if (s.in_z[c] && !st.used_z[c]) ++d;
        }
        if (d < best_deg) {
            best_deg = d;
            best = int(i);
            if (d == 0) break;
        }
    }
    if (best_deg == 0) return false;
    std::swap(st.xs[depth], st.xs[size_t(best)]);
    Elem a = st.xs[depth];
    for (Elem b : st.ys) {
        if (st.used_y[b]) continue;
        Elem c = s.complete(a, b);
        if (!s.in_z[c] || st.used_z[c]) continue;
        st.used_y[b] = 1;
        st.used_z[c] = 1;
        st.chosen.push_back({a, b, c});
        if (match_rec(st, depth + 1)) return true;
        st.chosen.pop_back();
        st.used_y[b] = 0;
        st.used_z[c] = 0;
        if (st.out_of_budget) break;
    }
    std::swap(st.xs[depth], st.xs[size_t(best)]);
    return false;
}

}  // namespace detail

inline SearchResult<Matching> find_perfect_matching(const MulSlice& s,
                                                    uint64_t budget = kDefaultBudget) {
    if (s.xs.size() != s.ys.size() || s.ys.size() != s.zs.size())
        throw UnbalancedParts("slice parts have different sizes");
    SearchResult<Matching> res;
    const Group& g = *s.g;
    int sum = subset_sum_ab(g, s.xs);
    sum = g.ab_add(sum, subset_sum_ab(g, s.ys));
    sum = g.ab_add(sum, subset_sum_ab(g, s.zs));
    if (sum != 0) {
        res.status = SearchStatus::Exhausted;  // necessary condition fails
        return res;
    }
    detail::MatchState st;
    st.s = &s;
    st.xs = s.xs;
    st.ys = s.ys;
    st.zs = s.zs;
    st.used_y.assign(g.order(), 0);
    st.used_z.assign(g.order(), 0);
    st.budget = budget;
    bool ok = detail::match_rec(st, 0);
    res.nodes = st.nodes;
    if (ok) {
        res.status = SearchStatus::Found;
        res.value = Matching{std::move(st.chosen)};
    } else {
        res.status = st.out_of_budget ? SearchStatus::BudgetExceeded : SearchStatus::Exhausted;
    }
    return res;
}

// exact count of perfect matchings, stopping at cap; parts at most 12
inline long count_perfect_matchings(const MulSlice& s, long cap = std::numeric_limits<long>::max()) {
    if (s.xs.size() != s.ys.size() || s.ys.size() != s.zs.size())
        throw UnbalancedParts("slice parts have different sizes");
    if (s.xs.size() > 12) throw TooLarge("counting restricted to parts of size <= 12");
    const Group& g = *s.g;
    std::vector<uint8_t> used_y(g.order(), 0), used_z(g.order(), 0);
    long count = 0;
    auto rec = [&](auto&& self, size_t i) -> void {
        if (count >= cap) return;
        if (i == s.xs.size()) {
            ++count;
            return;
        }
        Elem a = s.xs[i];
        for (Elem b : s.ys) {
            if (used_y[b]) continue;
            Elem c = s.complete(a, b);
            if (!s.in_z[c] || used_z[c]) continue;
            used_y[b] = 1;
            used_z[c] = 1;
            self(self, i + 1);
            used_y[b] = 0;
            used_z[c] = 0;
        }
    };
    rec(rec, 0);
    return count;
}

struct MatchingVerdict {
    bool valid = true;    // edges well-formed and disjoint
    bool perfect = false; // additionally covers all of X,Y,Z
    std::string violation;
};

inline MatchingVerdict verify_matching(const MulSlice& s, const Matching& m) {
    MatchingVerdict v;
    const Group& g = *s.g;
    std::vector<uint8_t> ua(g.order(), 0), ub(g.order(), 0), uc(g.order(), 0);
    for (const Edge3& ed : m.edges) {
        if (ed.a < 0 || ed.a >= g.order() || ed.b < 0 || ed.b >= g.order() || ed.c < 0 ||
            ed.c >= g.order()) {
            v.valid = false;
            v.violation = "vertex id out of range";
            return v;
        }
        if (!s.in_x[ed.a] || !s.in_y[ed.b] || !s.in_z[ed.c]) {
            v.valid = false;
            v.violation = "edge endpoint not in slice";
            return v;
        }
        if (g.mul(g.mul(ed.a, ed.b), ed.c) != Group::e) {
            v.valid = false;
            v.violation = "edge product is not the identity";
            return v;
        }
        if (ua[ed.a]++) {
            v.valid = false;
            v.violation = "duplicate in part A";
            return v;
        }
        if (ub[ed.b]++) {
            v.valid = false;
            v.violation = "duplicate in part B";
            return v;
        }
        if (uc[ed.c]++) {
            v.valid = false;
            v.violation = "duplicate in part C";
            return v;
        }
    }
    v.perfect = m.edges.size() == s.xs.size() && m.edges.size() == s.ys.size() &&
                m.edges.size() == s.zs.size();
    return v;
}

}  // namespace groupkit
