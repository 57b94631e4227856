// gadgets.hpp
// Deterministic absorber and path-gadget constructions: m-absorber
// verification, the commutator absorber word table, comparator and wire
// gadgets in the coloured digraphs, sorting-network templates and routing,
// robustly-matchable-graph verification, and seeded symmetric samplers.
#pragma once

#include <array>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "designs.hpp"
#include "free_product.hpp"
#include "sequencing.hpp"

namespace groupkit {

// ---------------------------------------------------------------------------
// vertices of H_G with their part

enum class Part : uint8_t { A = 0, B = 1, C = 2 };

struct HVertex {
    Part part;
    Elem g;
    auto operator<=>(const HVertex&) const = default;
};

inline HVertex va(Elem g) { return {Part::A, g}; }
inline HVertex vb(Elem g) { return {Part::B, g}; }
inline HVertex vc(Elem g) { return {Part::C, g}; }

struct AbsorberInstance {
    std::vector<HVertex> r;
    std::vector<std::vector<HVertex>> family;
    int m = 1;
};

struct AbsorberVerdict {
    bool ok = false;
    SearchStatus status = SearchStatus::Exhausted;
    std::string reason;
    // one witness matching per size-m subfamily, in subset enumeration order
    std::vector<Matching> witnesses;
};

namespace detail {

inline void split_parts(const std::vector<HVertex>& vs, std::vector<Elem>& xs,
                        std::vector<Elem>& ys, std::vector<Elem>& zs) {
    for (const HVertex& v : vs) {
        switch (v.part) {
            case Part::A: xs.push_back(v.g); break;
            case Part::B: ys.push_back(v.g); break;
            case Part::C: zs.push_back(v.g); break;
        }
    }
}

inline void subsets_of_size(int n, int k, const std::function<void(const std::vector<int>&)>& cb) {
    std::vector<int> pick;
    auto rec = [&](auto&& self, int start) -> void {
        if (int(pick.size()) == k) {
            cb(pick);
            return;
        }
        for (int i = start; i + (k - int(pick.size())) <= n; ++i) {
            pick.push_back(i);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
}

}  // namespace detail

// R m-absorbs F iff for every size-m subfamily F', R together with the
// union of F' spans a perfect matching. Exhaustive over subfamilies.
inline AbsorberVerdict verify_m_absorber(const MulSlice& slice,
                                         const std::vector<HVertex>& r,
                                         const std::vector<std::vector<HVertex>>& family,
                                         int m, uint64_t budget = kDefaultBudget) {
    if (family.size() > 8)
        throw TooLarge("absorber family limited to 8 sets");
    AbsorberVerdict out;
    // R must avoid the family and family sets must not repeat vertices
    {
        std::set<HVertex> seen(r.begin(), r.end());
        if (seen.size() != r.size()) {
            out.reason = "repeated vertex in R";
            return out;
        }
        for (const auto& f : family)
            for (const HVertex& v : f)
                if (!seen.insert(v).second) {
                    out.reason = "family sets must be disjoint from R and each other";
                    return out;
                }
    }
    if (m < 0 || size_t(m) > family.size()) {
        out.reason = "subfamily size out of range";
        return out;
    }
    bool all_ok = true;
    std::string why;
    SearchStatus status = SearchStatus::Found;
    std::vector<Matching> ws;
    detail::subsets_of_size(int(family.size()), m, [&](const std::vector<int>& pick) {
        if (!all_ok) return;
        std::vector<Elem> xs, ys, zs;
        detail::split_parts(r, xs, ys, zs);
        for (int i : pick) detail::split_parts(family[size_t(i)], xs, ys, zs);
        if (xs.size() != ys.size() || ys.size() != zs.size()) {
            all_ok = false;
            why = "subfamily union is not balanced";
            return;
        }
        for (Elem x : xs)
            if (!slice.in_x[x]) {
                all_ok = false;
                why = "vertex outside slice part A";
                return;
            }
        for (Elem y : ys)
            if (!slice.in_y[y]) {
                all_ok = false;
                why = "vertex outside slice part B";
                return;
            }
        for (Elem z : zs)
            if (!slice.in_z[z]) {
                all_ok = false;
                why = "vertex outside slice part C";
                return;
            }
        MulSlice sub = build_slice(*slice.g, xs, ys, zs);
        if (sub.xs.size() != xs.size() || sub.ys.size() != ys.size() ||
            sub.zs.size() != zs.size()) {
            all_ok = false;
            why = "repeated vertex within a part";
            return;
        }
        auto res = find_perfect_matching(sub, budget);
        if (res.status == SearchStatus::BudgetExceeded) {
            all_ok = false;
            status = SearchStatus::BudgetExceeded;
            why = "budget exceeded";
            return;
        }
        if (!res.found()) {
            all_ok = false;
            why = "subfamily has no perfect matching";
            return;
        }
        ws.push_back(std::move(*res.value));
    });
    out.ok = all_ok;
    out.status = all_ok ? SearchStatus::Found : status;
    out.reason = all_ok ? "" : why;
    out.witnesses = std::move(ws);
    return out;
}

// ---------------------------------------------------------------------------
// commutator absorber: 14 words over G * F_3 that 1-absorb {[a,b]c, c}

struct CommutatorAbsorberWords {
    std::vector<Word> part_a, part_b, part_c;  // 4 + 5 + 5 words
    // matchings as (slot_a, slot_b, slot_c) word triples; slot -1 in part A
    // stands for the absorbed element
    struct EdgeTemplate {
        int a, b, c;  // indices into part lists; a == -1 means absorbed slot
    };
    std::array<EdgeTemplate, 5> match_with_c;    // covers R' + {c}
    std::array<EdgeTemplate, 5> match_with_abc;  // covers R' + {[a,b]c}
};

// variables: x = v1, y = v2, z = v3
inline CommutatorAbsorberWords commutator_absorber_words(const Group& g, Elem a, Elem b,
                                                         Elem c) {
    const int k = 3;
    Elem ai = g.inv(a), bi = g.inv(b), ci = g.inv(c);
    Elem comm = g.commutator(a, b);  // aba^-1b^-1
    Elem kk = g.mul(comm, c);        // [a,b]c
    auto W = [&](std::vector<std::pair<bool, int>> toks) { return make_word(g, k, toks); };
    CommutatorAbsorberWords out;
    const bool V = true, G = false;
    out.part_a = {
        W({{V, 2}}),                   // y
        W({{G, ai}, {V, 2}}),          // a^-1 y
        W({{V, 3}}),                   // z
        W({{G, bi}, {V, 3}}),          // b^-1 z
    };
    Elem babici = g.mul(g.mul(b, g.mul(ai, bi)), c);  // b a^-1 b^-1 c
    out.part_b = {
        W({{V, 1}}),                              // x
        W({{V, -2}, {G, kk}, {V, 1}}),            // y^-1 [a,b]c x
        W({{V, -2}, {G, g.mul(bi, c)}, {V, 1}}),  // y^-1 b^-1 c x
        W({{V, -3}, {G, babici}, {V, 1}}),        // z^-1 b a^-1 b^-1 c x
        W({{V, -3}, {G, c}, {V, 1}}),             // z^-1 c x
    };
    out.part_c = {
        W({{V, -1}, {G, ci}}),                                   // x^-1 c^-1
        W({{V, -1}, {G, g.mul(ci, g.commutator(b, a))}}),        // x^-1 c^-1 bab^-1a^-1
        W({{V, -1}, {G, g.mul(ci, g.mul(b, g.mul(a, bi)))}}),    // x^-1 c^-1 bab^-1
        W({{V, -1}, {G, g.mul(ci, g.mul(b, a))}}),               // x^-1 c^-1 ba
        W({{V, -1}, {G, g.mul(ci, b)}}),                         // x^-1 c^-1 b
    };
    out.match_with_c = {{{-1, 0, 0}, {0, 1, 1}, {1, 2, 3}, {2, 3, 2}, {3, 4, 4}}};
    out.match_with_abc = {{{-1, 0, 1}, {0, 2, 4}, {1, 1, 2}, {2, 4, 0}, {3, 3, 3}}};
    return out;
}

enum class AbsorberBuildStatus { Built, BuiltTrivial, PreconditionFailed, NoProjection };

struct CommutatorAbsorberBuild {
    AbsorberBuildStatus status = AbsorberBuildStatus::NoProjection;
    AbsorberInstance instance;
    Matching match_minus, match_plus;  // witness matchings incl. absorbed vertex
    std::vector<Elem> non_generic;     // populated on PreconditionFailed
};

struct ProjectionSearchOptions {
    uint64_t exhaustive_cap = 10'000'000;  // enumerate when n^k fits
    uint64_t random_tries = 100'000;
    uint64_t seed = 1;
};

// builds and verifies a size <= 14 set 1-absorbing {[a,b]c, c}; requires
// c, c^-1 b a b^-1 a^-1, c^-1 b a b^-1, c^-1 b a, c^-1 b generic
inline CommutatorAbsorberBuild build_commutator_absorber(
    const Group& g, Elem a, Elem b, Elem c, int tau, std::vector<HVertex> forbidden = {},
    ProjectionSearchOptions opts = {}) {
    CommutatorAbsorberBuild out;
    Elem bi = g.inv(b), ci = g.inv(c);
    Elem kk = g.mul(g.commutator(a, b), c);
    std::vector<Elem> need_generic = {
        c,
        g.mul(ci, g.commutator(b, a)),
        g.mul(ci, g.mul(b, g.mul(a, bi))),
        g.mul(ci, g.mul(b, a)),
        g.mul(ci, b),
    };
    for (Elem x : need_generic)
        if (!is_generic(g, x, tau)) out.non_generic.push_back(x);
    if (!out.non_generic.empty()) {
        out.status = AbsorberBuildStatus::PreconditionFailed;
        return out;
    }
    std::array<std::vector<uint8_t>, 3> in_u;
    for (auto& m : in_u) m.assign(g.order(), 0);
    for (const HVertex& v : forbidden) in_u[int(v.part)][v.g] = 1;
    // the absorber must avoid the absorbed vertices themselves
    in_u[int(Part::A)][c] = 1;
    in_u[int(Part::A)][kk] = 1;

    if (g.commutator(a, b) == Group::e) {
        // [a,b]c = c: a single edge through c suffices
        for (Elem s = 0; s < g.order(); ++s) {
            if (in_u[int(Part::B)][s]) continue;
            Elem t = g.inv(g.mul(c, s));
            if (in_u[int(Part::C)][t]) continue;
            out.status = AbsorberBuildStatus::BuiltTrivial;
            out.instance.r = {vb(s), vc(t)};
            out.instance.family = {{va(c)}};
            out.instance.m = 1;
            out.match_minus = out.match_plus = Matching{{{c, s, t}}};
            return out;
        }
        return out;  // NoProjection
    }

    CommutatorAbsorberWords words = commutator_absorber_words(g, a, b, c);
    auto accept = [&](const Projection& pi) -> bool {
        auto distinct_and_free = [&](const std::vector<Word>& ws, Part part) {
            std::vector<Elem> img;
            for (const Word& w : ws) {
                Elem x = apply_projection(g, pi, w);
                if (in_u[int(part)][x]) return false;
                img.push_back(x);
            }
            std::sort(img.begin(), img.end());
            return std::adjacent_find(img.begin(), img.end()) == img.end();
        };
        return distinct_and_free(words.part_a, Part::A) &&
               distinct_and_free(words.part_b, Part::B) &&
               distinct_and_free(words.part_c, Part::C);
    };
    std::optional<Projection> found;
    long double space = 1;
    for (int i = 0; i < 3; ++i) space *= g.order();
    if (space <= (long double)opts.exhaustive_cap) {
        for_each_projection(g, 3, [&](const Projection& pi) {
            if (accept(pi)) {
                found = pi;
                return false;
            }
            return true;
        });
    } else {
        std::mt19937_64 rng(opts.seed);
        Projection pi;
        pi.images.assign(3, Group::e);
        for (uint64_t it = 0; it < opts.random_tries && !found; ++it) {
            for (auto& im : pi.images) im = Elem(rng() % g.order());
            if (accept(pi)) found = pi;
        }
    }
    if (!found) return out;  // NoProjection
    const Projection& pi = *found;
    auto img = [&](const std::vector<Word>& ws, int i) {
        return apply_projection(g, pi, ws[size_t(i)]);
    };
    out.instance.m = 1;
    for (const Word& w : words.part_a) out.instance.r.push_back(va(apply_projection(g, pi, w)));
    for (const Word& w : words.part_b) out.instance.r.push_back(vb(apply_projection(g, pi, w)));
    for (const Word& w : words.part_c) out.instance.r.push_back(vc(apply_projection(g, pi, w)));
    out.instance.family = {{va(kk)}, {va(c)}};
    auto realize = [&](const CommutatorAbsorberWords::EdgeTemplate& t, Elem absorbed) {
        Elem ea = t.a < 0 ? absorbed : img(words.part_a, t.a);
        return Edge3{ea, img(words.part_b, t.b), img(words.part_c, t.c)};
    };
    for (const auto& t : words.match_with_abc) out.match_minus.edges.push_back(realize(t, kk));
    for (const auto& t : words.match_with_c) out.match_plus.edges.push_back(realize(t, c));
    // both matchings must cover R' plus the absorbed vertex exactly
    auto witnessed = [&](const Matching& m, Elem absorbed) {
        std::set<HVertex> want(out.instance.r.begin(), out.instance.r.end());
        want.insert(va(absorbed));
        std::set<HVertex> got;
        for (const Edge3& e : m.edges) {
            if (g.mul(g.mul(e.a, e.b), e.c) != Group::e) return false;
            got.insert(va(e.a));
            got.insert(vb(e.b));
            got.insert(vc(e.c));
        }
        return got == want;
    };
    if (!witnessed(out.match_minus, kk) || !witnessed(out.match_plus, c)) {
        out = CommutatorAbsorberBuild{};
        return out;  // cannot happen for a separated projection
    }
    out.status = AbsorberBuildStatus::Built;
    return out;
}

// ---------------------------------------------------------------------------
// wire gadget: a length-3 rainbow path x -> u -> v -> y in K^+/K^-

struct WireGadget {
    DigraphKind kind;
    Elem x = -1, u = -1, v = -1, y = -1;
    std::array<Elem, 3> colors{};
};

struct WireForbidden {
    std::vector<Elem> verts;
    std::vector<Elem> colors;
};

inline std::optional<WireGadget> build_wire_gadget(const Group& g, DigraphKind kind, Elem x,
                                                   Elem y, const WireForbidden& forbidden = {}) {
    if (x == y) throw std::invalid_argument("wire endpoints must differ");
    std::vector<uint8_t> bad_v(g.order(), 0), bad_c(g.order(), 0);
    for (Elem t : forbidden.verts) bad_v[t] = 1;
    for (Elem t : forbidden.colors) bad_c[t] = 1;
    auto color = [&](Elem p, Elem q) {
        return kind == DigraphKind::Multiplication ? g.mul(p, q) : g.mul(g.inv(p), q);
    };
    for (Elem u = 0; u < g.order(); ++u) {
        if (u == x || u == y || bad_v[u]) continue;
        for (Elem v = 0; v < g.order(); ++v) {
            if (v == x || v == y || v == u || bad_v[v]) continue;
            Elem c1 = color(x, u), c2 = color(u, v), c3 = color(v, y);
            if (c1 == c2 || c2 == c3 || c1 == c3) continue;
            if (bad_c[c1] || bad_c[c2] || bad_c[c3]) continue;
            return WireGadget{kind, x, u, v, y, {c1, c2, c3}};
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// comparator gadget: 12 vertices, 10 colours, four length-5 paths whose
// pairings both partition the vertices and colours

struct ComparatorGadget {
    DigraphKind kind;
    std::array<Elem, 12> verts{};
    std::array<Elem, 10> colors{};
    Elem entry_minus() const { return verts[0]; }
    Elem entry_plus() const { return verts[1]; }
    Elem exit_minus() const { return verts[10]; }
    Elem exit_plus() const { return verts[11]; }
    // paths: 0 = (-,-), 1 = (+,+), 2 = (-,+), 3 = (+,-); vertex and colour
    // index tables shared by both digraph kinds
    static constexpr int path_verts[4][6] = {
        {0, 3, 5, 6, 8, 10},
        {1, 2, 4, 7, 9, 11},
        {0, 2, 4, 6, 8, 11},
        {1, 3, 5, 7, 9, 10},
    };
    static constexpr int path_colors[4][5] = {
        {2, 7, 1, 8, 0},
        {3, 6, 4, 9, 5},
        {0, 6, 2, 8, 4},
        {1, 7, 5, 9, 3},
    };
};

// the 22 comparator words over G * F_7; variables x,y,a,b,c,d,f = v1..v7
inline std::pair<std::vector<Word>, std::vector<Word>> comparator_words(const Group& g,
                                                                        DigraphKind kind) {
    const int k = 7;
    auto W = [&](std::vector<int> vars) {
        WordBuilder b(g, k);
        for (int v : vars) b.mul_var(v);
        return b.take();
    };
    constexpr int X = 1, Y = 2, A = 3, B = 4, C = 5, D = 6, F = 7;
    std::vector<Word> verts, colors;
    if (kind == DigraphKind::Multiplication) {
        verts = {W({X}),      W({Y}),      W({A}),     W({B}),
                 W({X, D}),   W({Y, D}),   W({-D, B}), W({-D, C}),
                 W({X, F}),   W({Y, F}),   W({-F, A}), W({-F, C})};
        colors = {W({X, A}), W({Y, B}), W({X, B}), W({Y, A}), W({X, C}),
                  W({Y, C}), W({A, X, D}), W({B, Y, D}), W({-D, B, X, F}),
                  W({-D, C, Y, F})};
    } else {
        // division digraph: vertices at even path positions are inverted so
        // that colour(u,v) = u^-1 v realises the same incidence structure
        verts = {W({-X}),      W({-Y}),      W({A}),     W({B}),
                 W({-D, -X}),  W({-D, -Y}),  W({-D, B}), W({-D, C}),
                 W({-F, -X}),  W({-F, -Y}),  W({-F, A}), W({-F, C})};
        colors = {W({X, A}), W({Y, B}), W({X, B}), W({Y, A}), W({X, C}),
                  W({Y, C}), W({-A, -D, -X}), W({-B, -D, -Y}), W({-B, D, -F, -X}),
                  W({-C, D, -F, -Y})};
    }
    return {verts, colors};
}

// recompute the edge colours from the group; exercised by construction and
// in tests on hand-mutated gadgets
inline bool verify_comparator(const Group& g, const ComparatorGadget& c) {
    auto color = [&](Elem p, Elem q) {
        return c.kind == DigraphKind::Multiplication ? g.mul(p, q) : g.mul(g.inv(p), q);
    };
    {
        std::set<Elem> vs(c.verts.begin(), c.verts.end());
        std::set<Elem> cs(c.colors.begin(), c.colors.end());
        if (vs.size() != 12 || cs.size() != 10) return false;
    }
    for (int p = 0; p < 4; ++p)
        for (int e = 0; e < 5; ++e) {
            Elem from = c.verts[size_t(ComparatorGadget::path_verts[p][e])];
            Elem to = c.verts[size_t(ComparatorGadget::path_verts[p][e + 1])];
            Elem col = c.colors[size_t(ComparatorGadget::path_colors[p][e])];
            if (color(from, to) != col) return false;
        }
    // both pairings partition vertices and colours
    for (int pairing = 0; pairing < 2; ++pairing) {
        std::set<Elem> vs, cs;
        for (int p : {pairing == 0 ? 0 : 2, pairing == 0 ? 1 : 3}) {
            for (int i = 0; i < 6; ++i)
                vs.insert(c.verts[size_t(ComparatorGadget::path_verts[p][i])]);
            for (int i = 0; i < 5; ++i)
                cs.insert(c.colors[size_t(ComparatorGadget::path_colors[p][i])]);
        }
        if (vs.size() != 12 || cs.size() != 10) return false;
    }
    return true;
}

inline std::optional<ComparatorGadget> build_comparator_gadget(
    const Group& g, DigraphKind kind, const WireForbidden& forbidden = {},
    ProjectionSearchOptions opts = {}) {
    auto [vwords, cwords] = comparator_words(g, kind);
    std::vector<uint8_t> bad_v(g.order(), 0), bad_c(g.order(), 0);
    for (Elem t : forbidden.verts) bad_v[t] = 1;
    for (Elem t : forbidden.colors) bad_c[t] = 1;
    auto realize = [&](const Projection& pi) -> std::optional<ComparatorGadget> {
        ComparatorGadget c;
        c.kind = kind;
        std::vector<uint8_t> seen_v(g.order(), 0), seen_c(g.order(), 0);
        for (size_t i = 0; i < 12; ++i) {
            Elem x = apply_projection(g, pi, vwords[i]);
            if (bad_v[x] || seen_v[x]) return std::nullopt;
            seen_v[x] = 1;
            c.verts[i] = x;
        }
        for (size_t i = 0; i < 10; ++i) {
            Elem x = apply_projection(g, pi, cwords[i]);
            if (bad_c[x] || seen_c[x]) return std::nullopt;
            seen_c[x] = 1;
            c.colors[i] = x;
        }
        if (!verify_comparator(g, c)) return std::nullopt;
        return c;
    };
    long double space = 1;
    for (int i = 0; i < 7; ++i) space *= g.order();
    if (space <= (long double)opts.exhaustive_cap) {
        std::optional<ComparatorGadget> found;
        for_each_projection(g, 7, [&](const Projection& pi) {
            if (auto c = realize(pi)) {
                found = c;
                return false;
            }
            return true;
        });
        return found;
    }
    std::mt19937_64 rng(opts.seed);
    Projection pi;
    pi.images.assign(7, Group::e);
    for (uint64_t it = 0; it < opts.random_tries; ++it) {
        for (auto& im : pi.images) im = Elem(rng() % g.order());
        if (auto c = realize(pi)) return c;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// sorting networks (Batcher odd-even mergesort, layered; optional padding
// to uniform input->output path length)

struct NetComparator {
    int in0, in1, out_min, out_max;  // node ids
    int layer = 0;
    int line0 = -1, line1 = -1;      // lines at insertion time (line0 < line1)
};

struct NetWire {
    int from, to;
};

struct SortingNetwork {
    int m = 0;
    int node_count = 0;
    std::vector<int> inputs, outputs;  // node ids
    std::vector<NetComparator> comparators;
    std::vector<NetWire> wires;
    int depth = 0;
    bool uniform = false;
};

namespace detail {

// Batcher odd-even compare-exchange schedule for power-of-two m
inline void batcher_merge(int lo, int hi, int r, std::vector<std::pair<int, int>>& out) {
    int step = r * 2;
    if (step < hi - lo) {
        batcher_merge(lo, hi - r, step, out);
        batcher_merge(lo + r, hi, step, out);
        for (int i = lo + r; i < hi - r; i += step) out.push_back({i, i + r});
    } else {
        out.push_back({lo, lo + r});
    }
}

inline void batcher_sort_range(int lo, int hi, std::vector<std::pair<int, int>>& out) {
    if (hi - lo >= 1) {
        int mid = lo + (hi - lo) / 2;
        batcher_sort_range(lo, mid, out);
        batcher_sort_range(mid + 1, hi, out);
        batcher_merge(lo, hi, 1, out);
    }
}

// compare-exchange list for arbitrary m: run the power-of-two network on
// virtual +inf lines and drop comparators touching them
inline std::vector<std::pair<int, int>> batcher_schedule(int m) {
    if (m <= 1) return {};
    int m2 = 1;
    while (m2 < m) m2 *= 2;
    std::vector<std::pair<int, int>> all, keep;
    batcher_sort_range(0, m2 - 1, all);
    for (auto [i, j] : all)
        if (i < m && j < m) keep.push_back({i, j});
    return keep;
}

inline bool simulate_sorts(const SortingNetwork& net, const std::vector<int>& input) {
    std::vector<int> value(size_t(net.node_count), -1);
    for (int i = 0; i < net.m; ++i) value[size_t(net.inputs[size_t(i)])] = input[size_t(i)];
    // propagate until fixpoint; the contracted digraph is acyclic
    bool progress = true;
    while (progress) {
        progress = false;
        for (const NetWire& w : net.wires)
            if (value[size_t(w.from)] >= 0 && value[size_t(w.to)] < 0) {
                value[size_t(w.to)] = value[size_t(w.from)];
                progress = true;
            }
        for (const NetComparator& c : net.comparators)
            if (value[size_t(c.in0)] >= 0 && value[size_t(c.in1)] >= 0 &&
                value[size_t(c.out_min)] < 0) {
                value[size_t(c.out_min)] = std::min(value[size_t(c.in0)], value[size_t(c.in1)]);
                value[size_t(c.out_max)] = std::max(value[size_t(c.in0)], value[size_t(c.in1)]);
                progress = true;
            }
    }
    std::vector<int> sorted_in = input;
    std::sort(sorted_in.begin(), sorted_in.end());
    for (int i = 0; i < net.m; ++i) {
        int v = value[size_t(net.outputs[size_t(i)])];
        if (v != sorted_in[size_t(i)]) return false;
    }
    return true;
}

}  // namespace detail

// checked exhaustively over all permutations for m <= 6 and by the 0-1
// principle for m <= 16
inline bool network_sorts(const SortingNetwork& net) {
    if (net.m <= 6) {
        std::vector<int> perm(size_t(net.m));
        std::iota(perm.begin(), perm.end(), 1);
        do {
            if (!detail::simulate_sorts(net, perm)) return false;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return true;
    }
    if (net.m <= 16) {
        for (int mask = 0; mask < (1 << net.m); ++mask) {
            std::vector<int> in(size_t(net.m));
            for (int i = 0; i < net.m; ++i) in[size_t(i)] = (mask >> i) & 1;
            if (!detail::simulate_sorts(net, in)) return false;
        }
        return true;
    }
    return true;  // not checked beyond 16 lines
}

namespace detail {

struct LayerCmp {
    int lo, hi;
    bool min_to_lo = true;
};

inline std::vector<std::vector<LayerCmp>> batcher_layers(int m) {
    // greedy layering of the odd-even schedule: a comparator sits one layer
    // after its lines' last use
    std::vector<int> avail(size_t(m), 0);
    std::vector<std::vector<LayerCmp>> layers;
    for (auto [i, j] : batcher_schedule(m)) {
        int layer = std::max(avail[size_t(i)], avail[size_t(j)]);
        if (int(layers.size()) <= layer) layers.resize(size_t(layer) + 1);
        layers[size_t(layer)].push_back({i, j, true});
        avail[size_t(i)] = avail[size_t(j)] = layer + 1;
    }
    return layers;
}

// Bitonic sorter for power-of-two m: every pass pairs all lines, so the
// network is graded as built. Descending passes route min to the higher
// line, which the wiring expresses via min_to_lo.
inline std::vector<std::vector<LayerCmp>> bitonic_layers(int m) {
    std::vector<std::vector<LayerCmp>> layers;
    for (int kk = 2; kk <= m; kk <<= 1) {
        for (int j = kk >> 1; j > 0; j >>= 1) {
            std::vector<LayerCmp> layer;
            for (int i = 0; i < m; ++i) {
                int l = i ^ j;
                if (l > i) layer.push_back({i, l, (i & kk) == 0});
            }
            layers.push_back(std::move(layer));
        }
    }
    return layers;
}

// Brick-wall (odd-even transposition) with a wrap comparator completing the
// odd layers; every layer pairs all lines. Sorts even m in m rounds.
inline std::vector<std::vector<LayerCmp>> brick_layers(int m) {
    std::vector<std::vector<LayerCmp>> layers;
    for (int ell = 0; ell < m; ++ell) {
        std::vector<LayerCmp> layer;
        if (ell % 2 == 0) {
            for (int i = 0; i + 1 < m; i += 2) layer.push_back({i, i + 1, true});
        } else {
            for (int i = 1; i + 1 < m; i += 2) layer.push_back({i, i + 1, true});
            layer.push_back({0, m - 1, true});
        }
        layers.push_back(std::move(layer));
    }
    return layers;
}

}  // namespace detail

// A uniform network needs every line to meet exactly one comparator in every
// layer (any skipped layer yields input->output paths of unequal length), so
// pad_uniform switches to layer-complete constructions: bitonic for powers
// of two, brick-wall with wrap pairs otherwise. A layer over an odd number
// of lines always leaves one line out, so odd m > 1 cannot be made uniform.
inline SortingNetwork build_sorting_network(int m, bool pad_uniform = false) {
    if (m < 1) throw std::invalid_argument("network needs at least one line");
    if (pad_uniform && m > 1 && m % 2 != 0)
        throw std::invalid_argument("uniform padding requires an even number of lines");
    std::vector<std::vector<detail::LayerCmp>> layers;
    if (!pad_uniform || m == 1) {
        layers = detail::batcher_layers(m);
    } else if ((m & (m - 1)) == 0) {
        layers = detail::bitonic_layers(m);
    } else {
        layers = detail::brick_layers(m);
    }
    SortingNetwork net;
    net.m = m;
    net.depth = int(layers.size());
    net.uniform = pad_uniform;
    int next = 0;
    for (int i = 0; i < m; ++i) net.inputs.push_back(next++);
    std::vector<int> cursor = net.inputs;  // current head node per line
    for (size_t ell = 0; ell < layers.size(); ++ell) {
        for (const detail::LayerCmp& lc : layers[ell]) {
            NetComparator c;
            c.in0 = next++;
            c.in1 = next++;
            c.out_min = next++;
            c.out_max = next++;
            c.layer = int(ell);
            c.line0 = lc.lo;
            c.line1 = lc.hi;
            net.wires.push_back({cursor[size_t(lc.lo)], c.in0});
            net.wires.push_back({cursor[size_t(lc.hi)], c.in1});
            cursor[size_t(lc.lo)] = lc.min_to_lo ? c.out_min : c.out_max;
            cursor[size_t(lc.hi)] = lc.min_to_lo ? c.out_max : c.out_min;
            net.comparators.push_back(c);
        }
    }
    for (int i = 0; i < m; ++i) {
        int out = next++;
        net.outputs.push_back(out);
        net.wires.push_back({cursor[size_t(i)], out});
    }
    net.node_count = next;
    if (net.m <= 16 && !network_sorts(net))
        throw std::logic_error("constructed network failed its sorting check");
    return net;
}

// all input -> output path lengths in the comparator-contracted digraph
inline std::vector<int> network_path_lengths(const SortingNetwork& net) {
    // contracted nodes: inputs, outputs, one node per comparator
    std::map<int, int> owner;  // raw node id -> contracted id
    int cn = 0;
    for (int x : net.inputs) owner[x] = cn++;
    for (const NetComparator& c : net.comparators) {
        owner[c.in0] = owner[c.in1] = owner[c.out_min] = owner[c.out_max] = cn;
        ++cn;
    }
    for (int x : net.outputs) owner[x] = cn++;
    auto adj = std::vector<std::vector<int>>(size_t(cn));
    for (const NetWire& w : net.wires) adj[size_t(owner[w.from])].push_back(owner[w.to]);
    std::set<int> lengths;
    std::vector<std::pair<int, int>> stack;
    for (int i = 0; i < net.m; ++i) stack.push_back({owner[net.inputs[size_t(i)]], 0});
    std::set<int> outs;
    for (int i = 0; i < net.m; ++i) outs.insert(owner[net.outputs[size_t(i)]]);
    while (!stack.empty()) {
        auto [node, d] = stack.back();
        stack.pop_back();
        if (outs.count(node)) {
            lengths.insert(d);
            continue;
        }
        for (int nxt : adj[size_t(node)]) stack.push_back({nxt, d + 1});
    }
    return std::vector<int>(lengths.begin(), lengths.end());
}

// ---------------------------------------------------------------------------
// routing a bijection through a gadget pool

struct GadgetCollision : std::runtime_error {
    explicit GadgetCollision(const std::string& msg) : std::runtime_error(msg) {}
};
struct RoutingInvariantViolation : std::runtime_error {
    explicit RoutingInvariantViolation(const std::string& msg) : std::runtime_error(msg) {}
};

struct PathSystem {
    std::vector<std::vector<Elem>> paths;        // vertex sequences, paths[i] ends at B
    std::vector<std::vector<Elem>> path_colors;  // parallel colour sequences
};

struct RoutingPool {
    SortingNetwork net;
    std::vector<ComparatorGadget> comparators;  // one per net comparator
    std::vector<WireGadget> wires;              // one per net wire
};

inline PathSystem route_path_system(const Group& g, DigraphKind kind, const RoutingPool& pool,
                                    const std::vector<Elem>& a, const std::vector<Elem>& b,
                                    const std::vector<std::pair<Elem, Elem>>& phi) {
    const SortingNetwork& net = pool.net;
    if (int(a.size()) != net.m || int(b.size()) != net.m)
        throw std::invalid_argument("terminal sets must match the network width");
    if (pool.comparators.size() != net.comparators.size() ||
        pool.wires.size() != net.wires.size())
        throw GadgetCollision("gadget pool does not match the network");

    // realize network nodes as group elements
    std::vector<Elem> at(size_t(net.node_count), -1);
    for (int i = 0; i < net.m; ++i) {
        at[size_t(net.inputs[size_t(i)])] = a[size_t(i)];
        at[size_t(net.outputs[size_t(i)])] = b[size_t(i)];
    }
    for (size_t k = 0; k < net.comparators.size(); ++k) {
        const NetComparator& c = net.comparators[k];
        const ComparatorGadget& cg = pool.comparators[k];
        if (cg.kind != kind) throw GadgetCollision("comparator gadget has the wrong kind");
        at[size_t(c.in0)] = cg.entry_minus();
        at[size_t(c.in1)] = cg.entry_plus();
        at[size_t(c.out_min)] = cg.exit_minus();
        at[size_t(c.out_max)] = cg.exit_plus();
    }
    for (size_t k = 0; k < net.wires.size(); ++k) {
        const WireGadget& w = pool.wires[k];
        if (w.kind != kind) throw GadgetCollision("wire gadget has the wrong kind");
        if (w.x != at[size_t(net.wires[k].from)] || w.y != at[size_t(net.wires[k].to)])
            throw GadgetCollision("wire gadget endpoints do not match the network");
    }

    // global disjointness of vertices and colours
    {
        std::set<Elem> vs, cs;
        auto add_v = [&](Elem x, const char* what) {
            if (!vs.insert(x).second)
                throw GadgetCollision(std::string("vertex reused by ") + what);
        };
        auto add_c = [&](Elem x, const char* what) {
            if (!cs.insert(x).second)
                throw GadgetCollision(std::string("colour reused by ") + what);
        };
        for (Elem x : a) add_v(x, "terminals");
        for (Elem x : b) add_v(x, "terminals");
        for (const ComparatorGadget& c : pool.comparators) {
            for (Elem x : c.verts) add_v(x, "a comparator");
            for (Elem x : c.colors) add_c(x, "a comparator");
        }
        for (const WireGadget& w : pool.wires) {
            add_v(w.u, "a wire");
            add_v(w.v, "a wire");
            for (Elem x : w.colors) add_c(x, "a wire");
        }
    }

    // values: phi(a_i) = b_{sigma(i)}, v(input_i) = sigma(i)
    std::vector<int> sigma(size_t(net.m), -1);
    {
        std::map<Elem, int> bpos;
        for (int j = 0; j < net.m; ++j) bpos[b[size_t(j)]] = j;
        std::map<Elem, Elem> pm(phi.begin(), phi.end());
        if (pm.size() != size_t(net.m))
            throw std::invalid_argument("phi must be a bijection A -> B");
        for (int i = 0; i < net.m; ++i) {
            auto it = pm.find(a[size_t(i)]);
            if (it == pm.end() || !bpos.count(it->second))
                throw std::invalid_argument("phi must map A onto B");
            sigma[size_t(i)] = bpos[it->second];
        }
    }
    std::vector<int> value(size_t(net.node_count), -1);
    for (int i = 0; i < net.m; ++i) value[size_t(net.inputs[size_t(i)])] = sigma[size_t(i)];
    bool progress = true;
    while (progress) {
        progress = false;
        for (const NetWire& w : net.wires)
            if (value[size_t(w.from)] >= 0 && value[size_t(w.to)] < 0) {
                value[size_t(w.to)] = value[size_t(w.from)];
                progress = true;
            }
        for (const NetComparator& c : net.comparators)
            if (value[size_t(c.in0)] >= 0 && value[size_t(c.in1)] >= 0 &&
                value[size_t(c.out_min)] < 0) {
                value[size_t(c.out_min)] = std::min(value[size_t(c.in0)], value[size_t(c.in1)]);
                value[size_t(c.out_max)] = std::max(value[size_t(c.in0)], value[size_t(c.in1)]);
                progress = true;
            }
    }
    for (int j = 0; j < net.m; ++j)
        if (value[size_t(net.outputs[size_t(j)])] != j)
            throw RoutingInvariantViolation("network did not sort the assigned values");

    // stitch paths: follow wires and the active comparator paths
    std::map<int, size_t> wire_from;  // source node -> wire index
    for (size_t k = 0; k < net.wires.size(); ++k) wire_from[net.wires[k].from] = k;
    std::map<int, size_t> comp_of_entry;  // in-node -> comparator index
    for (size_t k = 0; k < net.comparators.size(); ++k) {
        comp_of_entry[net.comparators[k].in0] = k;
        comp_of_entry[net.comparators[k].in1] = k;
    }
    std::set<int> output_nodes(net.outputs.begin(), net.outputs.end());

    PathSystem out;
    for (int i = 0; i < net.m; ++i) {
        std::vector<Elem> path = {a[size_t(i)]};
        std::vector<Elem> cols;
        int node = net.inputs[size_t(i)];
        while (!output_nodes.count(node)) {
            size_t wk = wire_from.at(node);
            const WireGadget& w = pool.wires[wk];
            path.push_back(w.u);
            path.push_back(w.v);
            path.push_back(at[size_t(net.wires[wk].to)]);
            for (Elem c : w.colors) cols.push_back(c);
            node = net.wires[wk].to;
            if (output_nodes.count(node)) break;
            size_t ck = comp_of_entry.at(node);
            const NetComparator& nc = net.comparators[ck];
            const ComparatorGadget& cg = pool.comparators[ck];
            bool straight = value[size_t(nc.out_min)] == value[size_t(nc.in0)];
            bool arrived_minus = node == nc.in0;
            int path_id;
            if (straight)
                path_id = arrived_minus ? 0 : 1;  // (-,-) or (+,+)
            else
                path_id = arrived_minus ? 2 : 3;  // (-,+) or (+,-)
            for (int e = 1; e < 6; ++e)
                path.push_back(cg.verts[size_t(ComparatorGadget::path_verts[path_id][e])]);
            for (int e = 0; e < 5; ++e)
                cols.push_back(cg.colors[size_t(ComparatorGadget::path_colors[path_id][e])]);
            node = (path_id == 0 || path_id == 3) ? nc.out_min : nc.out_max;
        }
        out.paths.push_back(std::move(path));
        out.path_colors.push_back(std::move(cols));
    }

    // post-checks: endpoints per phi, disjoint rainbow cover of the pool
    std::map<Elem, Elem> pm(phi.begin(), phi.end());
    std::set<Elem> used_v, used_c;
    size_t expect_len = out.paths.empty() ? 0 : out.paths[0].size();
    for (int i = 0; i < net.m; ++i) {
        const auto& p = out.paths[size_t(i)];
        if (p.front() != a[size_t(i)] || pm[a[size_t(i)]] != p.back())
            throw RoutingInvariantViolation("path endpoints disagree with phi");
        if (net.uniform && p.size() != expect_len)
            throw RoutingInvariantViolation("path lengths are not uniform");
        for (Elem x : p)
            if (!used_v.insert(x).second)
                throw RoutingInvariantViolation("paths are not vertex-disjoint");
        for (Elem c : out.path_colors[size_t(i)])
            if (!used_c.insert(c).second)
                throw RoutingInvariantViolation("paths are not rainbow");
        // edge colours are genuine
        for (size_t e = 0; e + 1 < p.size(); ++e) {
            Elem want = kind == DigraphKind::Multiplication ? g.mul(p[e], p[e + 1])
                                                            : g.mul(g.inv(p[e]), p[e + 1]);
            if (want != out.path_colors[size_t(i)][e])
                throw RoutingInvariantViolation("path colour disagrees with the digraph");
        }
    }
    size_t expect_verts = a.size() + b.size() + 12 * pool.comparators.size() +
                          2 * pool.wires.size();
    size_t expect_cols = 10 * pool.comparators.size() + 3 * pool.wires.size();
    if (used_v.size() != expect_verts || used_c.size() != expect_cols)
        throw RoutingInvariantViolation("paths do not cover the gadget pool exactly");
    return out;
}

// construct the full pool for |A| = |B| = m terminals: network, comparator
// gadgets, and wires, all vertex- and colour-disjoint
inline std::optional<RoutingPool> build_routing_pool(const Group& g, DigraphKind kind,
                                                     const std::vector<Elem>& a,
                                                     const std::vector<Elem>& b,
                                                     ProjectionSearchOptions opts = {}) {
    if (a.size() != b.size() || a.empty())
        throw std::invalid_argument("terminal sets must be equal-sized and non-empty");
    RoutingPool pool;
    int m = int(a.size());
    pool.net = build_sorting_network(m, /*pad_uniform=*/m == 1 || m % 2 == 0);
    WireForbidden used;
    used.verts = a;
    used.verts.insert(used.verts.end(), b.begin(), b.end());
    for (size_t k = 0; k < pool.net.comparators.size(); ++k) {
        ProjectionSearchOptions o = opts;
        o.seed = opts.seed + 7919 * (k + 1);
        auto cg = build_comparator_gadget(g, kind, used, o);
        if (!cg) return std::nullopt;
        pool.comparators.push_back(*cg);
        used.verts.insert(used.verts.end(), cg->verts.begin(), cg->verts.end());
        used.colors.insert(used.colors.end(), cg->colors.begin(), cg->colors.end());
    }
    // realize endpoints for wires
    std::vector<Elem> at(size_t(pool.net.node_count), -1);
    for (int i = 0; i < m; ++i) {
        at[size_t(pool.net.inputs[size_t(i)])] = a[size_t(i)];
        at[size_t(pool.net.outputs[size_t(i)])] = b[size_t(i)];
    }
    for (size_t k = 0; k < pool.net.comparators.size(); ++k) {
        const NetComparator& c = pool.net.comparators[k];
        at[size_t(c.in0)] = pool.comparators[k].entry_minus();
        at[size_t(c.in1)] = pool.comparators[k].entry_plus();
        at[size_t(c.out_min)] = pool.comparators[k].exit_minus();
        at[size_t(c.out_max)] = pool.comparators[k].exit_plus();
    }
    for (const NetWire& w : pool.net.wires) {
        auto wg = build_wire_gadget(g, kind, at[size_t(w.from)], at[size_t(w.to)], used);
        if (!wg) return std::nullopt;
        pool.wires.push_back(*wg);
        used.verts.push_back(wg->u);
        used.verts.push_back(wg->v);
        used.colors.insert(used.colors.end(), wg->colors.begin(), wg->colors.end());
    }
    return pool;
}

// ---------------------------------------------------------------------------
// robustly matchable bipartite graphs

struct BipartiteGraph {
    int left = 0, right = 0;
    std::vector<std::vector<int>> adj;  // adj[l] = neighbours on the right
};

namespace detail {

inline bool kuhn_try(const BipartiteGraph& k, int u, std::vector<int>& match_r,
                     std::vector<uint8_t>& visited, const std::vector<uint8_t>& allowed) {
    for (int v : k.adj[size_t(u)]) {
        if (!allowed[size_t(v)] || visited[size_t(v)]) continue;
        visited[size_t(v)] = 1;
        if (match_r[size_t(v)] < 0 || kuhn_try(k, match_r[size_t(v)], match_r, visited, allowed)) {
            match_r[size_t(v)] = u;
            return true;
        }
    }
    return false;
}

inline bool has_perfect_matching(const BipartiteGraph& k, const std::vector<uint8_t>& allowed,
                                 int want) {
    std::vector<int> match_r(size_t(k.right), -1);
    int matched = 0;
    for (int u = 0; u < k.left; ++u) {
        std::vector<uint8_t> visited(size_t(k.right), 0);
        if (kuhn_try(k, u, match_r, visited, allowed)) ++matched;
    }
    return matched == want;
}

}  // namespace detail

// X vs Y u Y' with |X| = 3h, |Y| = |Y'| = 2h (right side: Y = 0..2h-1,
// Y' = 2h..4h-1): true iff X matches Y u Y0 perfectly for every h-subset
// Y0 of Y'
inline bool verify_rmbg(const BipartiteGraph& k, int h) {
    if (h > 6) throw TooLarge("rmbg verification limited to h <= 6");
    if (k.left != 3 * h || k.right != 4 * h)
        throw std::invalid_argument("rmbg needs |X| = 3h and |Y| + |Y'| = 4h");
    bool ok = true;
    detail::subsets_of_size(2 * h, h, [&](const std::vector<int>& pick) {
        if (!ok) return;
        std::vector<uint8_t> allowed(size_t(k.right), 0);
        for (int i = 0; i < 2 * h; ++i) allowed[size_t(i)] = 1;
        for (int i : pick) allowed[size_t(2 * h + i)] = 1;
        ok = detail::has_perfect_matching(k, allowed, 3 * h);
    });
    return ok;
}

// random search for a sparse robustly matchable graph at a given degree cap
inline std::optional<BipartiteGraph> search_rmbg(int h, int max_degree, uint64_t seed,
                                                 int tries = 2000) {
    std::mt19937_64 rng(seed);
    for (int t = 0; t < tries; ++t) {
        BipartiteGraph k;
        k.left = 3 * h;
        k.right = 4 * h;
        k.adj.assign(size_t(k.left), {});
        std::vector<int> rdeg(size_t(k.right), 0);
        for (int u = 0; u < k.left; ++u) {
            std::vector<int> perm(size_t(k.right));
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            int d = std::min(max_degree, k.right);
            for (int v : perm) {
                if (int(k.adj[size_t(u)].size()) >= d) break;
                if (rdeg[size_t(v)] >= max_degree) continue;
                k.adj[size_t(u)].push_back(v);
                ++rdeg[size_t(v)];
            }
        }
        if (verify_rmbg(k, h)) return k;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// seeded symmetric samplers (experiment harness)

struct InvalidP : std::invalid_argument {
    explicit InvalidP(const std::string& msg) : std::invalid_argument(msg) {}
};

// `count` disjoint symmetric p-random subsets: one decision per inverse
// pair {g, g^-1}, landing in set i with probability p each
inline std::vector<std::vector<Elem>> sample_disjoint_symmetric(const Group& g, double p,
                                                                int count, uint64_t seed) {
    if (p < 0 || count < 1 || p * count > 1.0)
        throw InvalidP("need 0 <= p and p * count <= 1");
    std::mt19937_64 rng(seed);
    auto out = std::vector<std::vector<Elem>>(size_t(count));
    for (Elem x = 0; x < g.order(); ++x) {
        if (g.inv(x) < x) continue;  // one decision per pair
        double roll = double(rng() >> 11) * 0x1p-53;
        int target = -1;
        for (int i = 0; i < count; ++i)
            if (roll < p * (i + 1)) {
                target = i;
                break;
            }
        if (target < 0) continue;
        out[size_t(target)].push_back(x);
        if (g.inv(x) != x) out[size_t(target)].push_back(g.inv(x));
    }
    for (auto& s : out) std::sort(s.begin(), s.end());
    return out;
}

}  // namespace groupkit
