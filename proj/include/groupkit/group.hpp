// group.hpp
// Finite groups as validated Cayley tables: standard families, commutator
// subgroup, abelianization, Hall-Paige condition, square-root statistics.
#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace groupkit {

using Elem = int32_t;

struct NotAGroup : std::runtime_error {
    explicit NotAGroup(const std::string& msg) : std::runtime_error(msg) {}
};
struct UnknownFamily : std::runtime_error {
    explicit UnknownFamily(const std::string& msg) : std::runtime_error(msg) {}
};
struct OrderTooLarge : std::runtime_error {
    explicit OrderTooLarge(const std::string& msg) : std::runtime_error(msg) {}
};

// Element 0 is always the identity. Rows/columns of the Cayley table are
// permutations; associativity is checked in full for n <= 512 and on 10^6
// random triples above that (the group is then flagged sampled-validated).
class Group {
  public:
    static constexpr Elem e = 0;

    static Group from_cayley_table(const std::vector<std::vector<Elem>>& grid,
                                   std::string name = "");
    static Group from_flat(int n, std::vector<Elem> flat, std::string name = "",
                           bool trusted = false);

    int order() const { return n_; }
    Elem mul(Elem a, Elem b) const { return table_[size_t(a) * n_ + b]; }
    Elem inv(Elem a) const { return inv_[a]; }
    Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inv(g)); }
    Elem commutator(Elem g, Elem h) const {
        return mul(mul(g, h), mul(inv(g), inv(h)));
    }
    Elem pow(Elem g, long k) const;
    int elem_order(Elem g) const;
    bool is_abelian() const;
    bool fully_validated() const { return fully_validated_; }
    const std::string& name() const { return name_; }
    const std::vector<Elem>& flat_table() const { return table_; }

    // commutator subgroup, sorted; computed eagerly at construction
    const std::vector<Elem>& commutator_elems() const { return gprime_; }
    bool in_commutator_subgroup(Elem g) const { return in_gprime_[g]; }

    // abelianization: coset ids, 0 = coset of the identity
    int ab_order() const { return ab_order_; }
    int coset_of(Elem g) const { return coset_of_[g]; }
    int ab_add(int c1, int c2) const { return ab_sum_[size_t(c1) * ab_order_ + c2]; }
    int ab_neg(int c) const { return ab_neg_[c]; }

  private:
    Group() = default;
    void validate(bool trusted);
    void build_quotient();

    int n_ = 0;
    std::vector<Elem> table_;
    std::vector<Elem> inv_;
    std::string name_;
    bool fully_validated_ = true;

    std::vector<Elem> gprime_;
    std::vector<uint8_t> in_gprime_;
    int ab_order_ = 1;
    std::vector<int> coset_of_;
    std::vector<int> ab_sum_;
    std::vector<int> ab_neg_;
};

struct Subgroup {
    const Group* parent = nullptr;
    std::vector<Elem> elems;  // sorted, closed, contains 0
    int order() const { return int(elems.size()); }
    bool contains(Elem g) const {
        return std::binary_search(elems.begin(), elems.end(), g);
    }
    // Cayley table of the subgroup re-indexed to 0..|H|-1 (0 stays identity,
    // remaining elements keep their parent order)
    Group as_group(std::string name = "") const;
};

struct AbelianizationView {
    int quotient_order = 1;
    std::vector<int> coset_of;  // parent element -> coset id, coset_of[0] == 0
    std::vector<int> sum;       // q x q addition table on coset ids
    std::vector<int> neg;
    int add(int a, int b) const { return sum[size_t(a) * quotient_order + b]; }
    int negate(int a) const { return neg[a]; }
    static constexpr int zero = 0;
};

// ---------------------------------------------------------------------------

inline Elem Group::pow(Elem g, long k) const {
    if (k < 0) return pow(inv(g), -k);
    Elem acc = e, base = g;
    while (k > 0) {
        if (k & 1) acc = mul(acc, base);
        base = mul(base, base);
        k >>= 1;
    }
    return acc;
}

inline int Group::elem_order(Elem g) const {
    Elem x = g;
    int k = 1;
    while (x != e) {
        x = mul(x, g);
        ++k;
    }
    return k;
}

inline bool Group::is_abelian() const {
    for (Elem a = 0; a < n_; ++a)
        for (Elem b = a + 1; b < n_; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

inline void Group::validate(bool trusted) {
    const int n = n_;
    if (n <= 0) throw NotAGroup("empty table");
    // locate identity: element k with row k and column k the identity map
    int id = -1;
    for (Elem k = 0; k < n && id < 0; ++k) {
        bool ok = true;
        for (Elem x = 0; x < n && ok; ++x)
            ok = mul(k, x) == x && mul(x, k) == x;
        if (ok) id = k;
    }
    if (id < 0) throw NotAGroup("no identity element");
    if (id != 0) {
        // relabel so the identity becomes element 0
        std::vector<Elem> perm(n);  // old id -> new id
        for (Elem x = 0; x < n; ++x) perm[x] = x;
        std::swap(perm[0], perm[id]);
        std::vector<Elem> t(size_t(n) * n);
        for (Elem a = 0; a < n; ++a)
            for (Elem b = 0; b < n; ++b)
                t[size_t(perm[a]) * n + perm[b]] = perm[mul(a, b)];
        table_ = std::move(t);
    }
    for (Elem a = 0; a < n; ++a) {
        std::vector<uint8_t> seen_row(n, 0), seen_col(n, 0);
        for (Elem b = 0; b < n; ++b) {
            Elem r = mul(a, b), c = mul(b, a);
            if (r < 0 || r >= n || c < 0 || c >= n)
                throw NotAGroup("entry out of range");
            if (seen_row[r]++)
                throw NotAGroup("row " + std::to_string(a) + " not a permutation");
            if (seen_col[c]++)
                throw NotAGroup("column " + std::to_string(a) + " not a permutation");
        }
    }
    inv_.assign(n, -1);
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
            if (mul(a, b) == e) inv_[a] = b;
    for (Elem a = 0; a < n; ++a)
        if (inv_[a] < 0 || mul(inv_[a], a) != e)
            throw NotAGroup("element " + std::to_string(a) + " has no two-sided inverse");
    if (trusted) {
        fully_validated_ = true;
        return;
    }
    auto assoc_fail = [&](Elem a, Elem b, Elem c) {
        return mul(mul(a, b), c) != mul(a, mul(b, c));
    };
    if (n <= 512) {
        for (Elem a = 0; a < n; ++a)
            for (Elem b = 0; b < n; ++b)
                for (Elem c = 0; c < n; ++c)
                    if (assoc_fail(a, b, c))
                        throw NotAGroup("associativity fails at (" + std::to_string(a) +
                                        "," + std::to_string(b) + "," + std::to_string(c) + ")");
        fully_validated_ = true;
    } else {
        std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
        for (int it = 0; it < 1'000'000; ++it) {
            Elem a = Elem(rng() % n), b = Elem(rng() % n), c = Elem(rng() % n);
            if (assoc_fail(a, b, c))
                throw NotAGroup("associativity fails at (" + std::to_string(a) +
                                "," + std::to_string(b) + "," + std::to_string(c) + ")");
        }
        fully_validated_ = false;  // sampled-validated
    }
}

// closure of a generating set under product; result sorted. Index-based
// loops so growth during iteration is safe; inverses come for free in a
// finite group.
inline std::vector<Elem> closure(const Group& g, const std::vector<Elem>& gens) {
    std::vector<uint8_t> in(g.order(), 0);
    std::vector<Elem> out = {Group::e};
    in[Group::e] = 1;
    for (Elem x : gens)
        if (!in[x]) {
            in[x] = 1;
            out.push_back(x);
        }
    for (size_t i = 0; i < out.size(); ++i) {
        for (size_t j = 0; j < out.size(); ++j) {
            Elem z = g.mul(out[i], out[j]);
            if (!in[z]) {
                in[z] = 1;
                out.push_back(z);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline void Group::build_quotient() {
    const int n = n_;
    // generators: all commutators
    std::vector<uint8_t> is_comm(n, 0);
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) is_comm[commutator(a, b)] = 1;
    std::vector<Elem> gens;
    for (Elem x = 0; x < n; ++x)
        if (is_comm[x]) gens.push_back(x);
    gprime_ = closure(*this, gens);
    in_gprime_.assign(n, 0);
    for (Elem x : gprime_) in_gprime_[x] = 1;

    // cosets of G', ids assigned in increasing order of minimal member
    coset_of_.assign(n, -1);
    int next = 0;
    for (Elem x = 0; x < n; ++x) {
        if (coset_of_[x] >= 0) continue;
        for (Elem h : gprime_) coset_of_[mul(x, h)] = next;
        ++next;
    }
    ab_order_ = next;
    std::vector<Elem> rep(next, -1);
    for (Elem x = n - 1; x >= 0; --x) rep[coset_of_[x]] = x;
    ab_sum_.assign(size_t(next) * next, 0);
    ab_neg_.assign(next, 0);
    for (int i = 0; i < next; ++i) {
        ab_neg_[i] = coset_of_[inv(rep[i])];
        for (int j = 0; j < next; ++j)
            ab_sum_[size_t(i) * next + j] = coset_of_[mul(rep[i], rep[j])];
    }
}

inline Group Group::from_flat(int n, std::vector<Elem> flat, std::string name,
                              bool trusted) {
    if (flat.size() != size_t(n) * n) throw NotAGroup("table is not n x n");
    Group g;
    g.n_ = n;
    g.table_ = std::move(flat);
    g.name_ = std::move(name);
    g.validate(trusted);
    g.build_quotient();
    return g;
}

inline Group Group::from_cayley_table(const std::vector<std::vector<Elem>>& grid,
                                      std::string name) {
    int n = int(grid.size());
    std::vector<Elem> flat;
    flat.reserve(size_t(n) * n);
    for (auto& row : grid) {
        if (int(row.size()) != n) throw NotAGroup("table is not square");
        for (Elem x : row) {
            if (x < 0 || x >= n) throw NotAGroup("entry out of range");
            flat.push_back(x);
        }
    }
    return from_flat(n, std::move(flat), std::move(name));
}

inline Group Subgroup::as_group(std::string name) const {
    const Group& g = *parent;
    std::vector<int> idx(g.order(), -1);
    for (size_t i = 0; i < elems.size(); ++i) idx[elems[i]] = int(i);
    int m = int(elems.size());
    std::vector<Elem> flat(size_t(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            int k = idx[g.mul(elems[i], elems[j])];
            if (k < 0) throw NotAGroup("subgroup element list is not closed");
            flat[size_t(i) * m + j] = k;
        }
    return Group::from_flat(m, std::move(flat), std::move(name), g.fully_validated());
}

// ---------------------------------------------------------------------------
// families

namespace detail {

inline std::vector<Elem> cyclic_flat(int n) {
    std::vector<Elem> t(size_t(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[size_t(a) * n + b] = Elem((a + b) % n);
    return t;
}

inline std::vector<Elem> elem2_flat(int k) {
    int n = 1 << k;
    std::vector<Elem> t(size_t(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[size_t(a) * n + b] = Elem(a ^ b);
    return t;
}

// r^i f^j with f r = r^-1 f; id = i + m*j
inline std::vector<Elem> dihedral_flat(int m) {
    int n = 2 * m;
    auto enc = [m](int i, int j) { return Elem(i + m * j); };
    std::vector<Elem> t(size_t(n) * n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < 2; ++j)
            for (int i2 = 0; i2 < m; ++i2)
                for (int j2 = 0; j2 < 2; ++j2) {
                    int ri = j == 0 ? (i + i2) % m : ((i - i2) % m + m) % m;
                    t[size_t(enc(i, j)) * n + enc(i2, j2)] = enc(ri, j ^ j2);
                }
    return t;
}

inline std::vector<std::vector<int>> perms_lex(int m, bool even_only) {
    std::vector<int> p(m);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        if (even_only) {
            int inversions = 0;
            for (int i = 0; i < m; ++i)
                for (int j = i + 1; j < m; ++j) inversions += p[i] > p[j];
            if (inversions % 2) continue;
        }
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// permutations in lexicographic one-line order, (s*t)(x) = s(t(x))
inline std::vector<Elem> perm_group_flat(int m, bool even_only) {
    auto ps = perms_lex(m, even_only);
    int n = int(ps.size());
    std::vector<std::vector<int>> sorted = ps;  // already sorted (lex gen order)
    auto rank = [&](const std::vector<int>& q) {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), q);
        return Elem(it - sorted.begin());
    };
    std::vector<Elem> t(size_t(n) * n);
    std::vector<int> comp(m);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            for (int x = 0; x < m; ++x) comp[x] = ps[a][ps[b][x]];
            t[size_t(a) * n + b] = rank(comp);
        }
    return t;
}

// {1,-1,i,-i,j,-j,k,-k} as 0..7; id = 2*unit + (sign<0), units 1,i,j,k
inline std::vector<Elem> quaternion_flat() {
    // unit multiplication with sign: i*j=k, j*k=i, k*i=j
    static const int umul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int usig[4][4] = {{+1, +1, +1, +1},
                                   {+1, -1, +1, -1},
                                   {+1, -1, -1, +1},
                                   {+1, +1, -1, -1}};
    auto enc = [](int unit, int sign) { return Elem(2 * unit + (sign < 0)); };
    std::vector<Elem> t(64);
    for (int u1 = 0; u1 < 4; ++u1)
        for (int s1 : {+1, -1})
            for (int u2 = 0; u2 < 4; ++u2)
                for (int s2 : {+1, -1}) {
                    int u = umul[u1][u2];
                    int s = s1 * s2 * usig[u1][u2];
                    t[size_t(enc(u1, s1)) * 8 + enc(u2, s2)] = enc(u, s);
                }
    return t;
}

// direct product, first factor most significant: id = i1 * |G2| + i2
inline std::vector<Elem> product_flat(const Group& g1, const Group& g2) {
    int n1 = g1.order(), n2 = g2.order(), n = n1 * n2;
    std::vector<Elem> t(size_t(n) * n);
    for (int a1 = 0; a1 < n1; ++a1)
        for (int a2 = 0; a2 < n2; ++a2)
            for (int b1 = 0; b1 < n1; ++b1)
                for (int b2 = 0; b2 < n2; ++b2)
                    t[size_t(a1 * n2 + a2) * n + (b1 * n2 + b2)] =
                        Elem(g1.mul(a1, b1) * n2 + g2.mul(a2, b2));
    return t;
}

}  // namespace detail

// Family spec grammar:
//   spec := "cyclic:N" | "elem2:K" | "dihedral:M" | "sym:M" | "alt:M"
//         | "quaternion" | "product(" spec {"," spec} ")"
// Element numbering is fixed per family (see each builder above).
Group make_family(const std::string& spec, int order_cap = 2048);

namespace detail {

inline std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    size_t b = s.find_last_not_of(" \t");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

inline Group parse_family(const std::string& raw, int cap) {
    std::string s = strip(raw);
    auto want_int = [&](const std::string& body) {
        try {
            size_t pos = 0;
            int v = std::stoi(body, &pos);
            if (pos != body.size() || v < 0) throw std::invalid_argument("");
            return v;
        } catch (...) {
            throw UnknownFamily("bad parameter in family spec '" + s + "'");
        }
    };
    auto check_cap = [&](long n) {
        if (n > cap)
            throw OrderTooLarge("family '" + s + "' has order " + std::to_string(n) +
                                " > cap " + std::to_string(cap));
    };
    if (s.rfind("product(", 0) == 0 && s.back() == ')') {
        std::string inner = s.substr(8, s.size() - 9);
        std::vector<std::string> parts;
        int depth = 0;
        size_t start = 0;
        for (size_t i = 0; i < inner.size(); ++i) {
            if (inner[i] == '(') ++depth;
            if (inner[i] == ')') --depth;
            if (inner[i] == ',' && depth == 0) {
                parts.push_back(inner.substr(start, i - start));
                start = i + 1;
            }
        }
        parts.push_back(inner.substr(start));
        if (parts.size() < 2) throw UnknownFamily("product needs at least two factors");
        Group acc = parse_family(parts[0], cap);
        for (size_t i = 1; i < parts.size(); ++i) {
            Group next = parse_family(parts[i], cap);
            check_cap(long(acc.order()) * next.order());
            std::string nm = acc.name() + "x" + next.name();
            acc = Group::from_flat(acc.order() * next.order(),
                                   detail::product_flat(acc, next), nm, true);
        }
        return acc;
    }
    size_t colon = s.find(':');
    std::string head = colon == std::string::npos ? s : s.substr(0, colon);
    std::string tail = colon == std::string::npos ? "" : s.substr(colon + 1);
    if (head == "cyclic") {
        int n = want_int(tail);
        if (n < 1) throw UnknownFamily("cyclic:N needs N >= 1");
        check_cap(n);
        return Group::from_flat(n, detail::cyclic_flat(n), "Z" + std::to_string(n), true);
    }
    if (head == "elem2") {
        int k = want_int(tail);
        if (k < 0 || k > 11) throw UnknownFamily("elem2:K needs 0 <= K <= 11");
        check_cap(1 << k);
        return Group::from_flat(1 << k, detail::elem2_flat(k),
                                "Z2^" + std::to_string(k), true);
    }
    if (head == "dihedral") {
        int m = want_int(tail);
        if (m < 1) throw UnknownFamily("dihedral:M needs M >= 1");
        check_cap(2L * m);
        return Group::from_flat(2 * m, detail::dihedral_flat(m),
                                "D" + std::to_string(m), true);
    }
    if (head == "sym" || head == "alt") {
        int m = want_int(tail);
        if (m < 1 || m > 8) throw UnknownFamily(head + ":M needs 1 <= M <= 8");
        long n = 1;
        for (int i = 2; i <= m; ++i) n *= i;
        if (head == "alt" && m >= 2) n /= 2;
        check_cap(n);
        return Group::from_flat(int(n), detail::perm_group_flat(m, head == "alt"),
                                (head == "sym" ? "S" : "A") + std::to_string(m), true);
    }
    if (head == "quaternion" && tail.empty()) {
        check_cap(8);
        return Group::from_flat(8, detail::quaternion_flat(), "Q8", true);
    }
    throw UnknownFamily("unknown family '" + s + "'");
}

}  // namespace detail

inline Group make_family(const std::string& spec, int order_cap) {
    return detail::parse_family(spec, order_cap);
}

// ---------------------------------------------------------------------------
// derived structure

inline Subgroup commutator_subgroup(const Group& g) {
    return Subgroup{&g, g.commutator_elems()};
}

inline AbelianizationView abelianization(const Group& g) {
    AbelianizationView v;
    v.quotient_order = g.ab_order();
    v.coset_of.assign(g.order(), 0);
    for (Elem x = 0; x < g.order(); ++x) v.coset_of[x] = g.coset_of(x);
    int q = v.quotient_order;
    v.sum.assign(size_t(q) * q, 0);
    v.neg.assign(q, 0);
    for (int i = 0; i < q; ++i) {
        v.neg[i] = g.ab_neg(i);
        for (int j = 0; j < q; ++j) v.sum[size_t(i) * q + j] = g.ab_add(i, j);
    }
    return v;
}

inline int subset_sum_ab(const Group& g, std::span<const Elem> s) {
    int acc = 0;
    for (Elem x : s) acc = g.ab_add(acc, g.coset_of(x));
    return acc;
}

inline bool hall_paige_product(const Group& g) {
    int acc = 0;
    for (Elem x = 0; x < g.order(); ++x) acc = g.ab_add(acc, g.coset_of(x));
    return acc == 0;
}

// maximal 2-subgroup by iterative extension; sound because a non-Sylow
// 2-subgroup always extends inside its normaliser
inline Subgroup sylow_2_subgroup(const Group& g) {
    int n = g.order();
    int target = 1;
    {
        int m = n;
        while (m % 2 == 0) {
            m /= 2;
            target *= 2;
        }
    }
    std::vector<Elem> two_power;
    for (Elem x = 0; x < n; ++x) {
        int o = g.elem_order(x);
        if ((o & (o - 1)) == 0) two_power.push_back(x);
    }
    std::vector<Elem> h = {Group::e};
    auto is_pow2 = [](size_t v) { return v > 0 && (v & (v - 1)) == 0; };
    while (int(h.size()) < target) {
        bool grown = false;
        for (Elem x : two_power) {
            if (std::binary_search(h.begin(), h.end(), x)) continue;
            std::vector<Elem> gens = h;
            gens.push_back(x);
            std::vector<Elem> k = closure(g, gens);
            if (is_pow2(k.size()) && k.size() > h.size()) {
                h = std::move(k);
                grown = true;
                break;
            }
        }
        if (!grown) break;  // cannot happen for a valid group
    }
    return Subgroup{&g, std::move(h)};
}

inline bool hall_paige_sylow(const Group& g) {
    Subgroup p = sylow_2_subgroup(g);
    if (p.order() == 1) return true;
    for (Elem x : p.elems)
        if (g.elem_order(x) == p.order()) return false;  // cyclic
    return true;
}

inline int square_root_count(const Group& g, Elem target) {
    int c = 0;
    for (Elem x = 0; x < g.order(); ++x)
        if (g.mul(x, x) == target) ++c;
    return c;
}

inline int default_generic_tau(const Group& g) { return g.order() / 16; }

inline bool is_generic(const Group& g, Elem x, int tau) {
    return x != Group::e && square_root_count(g, x) <= tau;
}
inline bool is_generic(const Group& g, Elem x) {
    return is_generic(g, x, default_generic_tau(g));
}

// minimum t such that g is a product of t commutators; nullopt outside G'
inline std::optional<int> commutator_width(const Group& g, Elem target) {
    if (!g.in_commutator_subgroup(target)) return std::nullopt;
    if (target == Group::e) return 0;
    int n = g.order();
    std::vector<uint8_t> is_comm(n, 0);
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) is_comm[g.commutator(a, b)] = 1;
    std::vector<Elem> comms;
    for (Elem x = 0; x < n; ++x)
        if (is_comm[x] && x != Group::e) comms.push_back(x);
    std::vector<int> dist(n, -1);
    dist[Group::e] = 0;
    std::vector<Elem> frontier = {Group::e};
    int d = 0;
    while (!frontier.empty()) {
        ++d;
        std::vector<Elem> next;
        for (Elem x : frontier)
            for (Elem c : comms) {
                Elem y = g.mul(x, c);
                if (dist[y] < 0) {
                    dist[y] = d;
                    if (y == target) return d;
                    next.push_back(y);
                }
            }
        frontier = std::move(next);
    }
    return std::nullopt;  // unreachable for g in G'
}

// ---------------------------------------------------------------------------
// phi-triple: a*b*c = e with all three scarce in square roots

struct PhiParams {
    int sq_threshold = -1;     // default 2*ceil(n/8)
    long coset_threshold = -1; // default 2*ceil(n/8)*|G'|
    double gprime_frac = 0.125; // condition (d) active when |G'| <= frac*n
};

struct PhiTriple {
    Elem a = -1, b = -1, c = -1;
    int sq_solutions = 0;      // solutions to x^2 in {a,b,c}
    long coset_solutions = 0;  // solutions to x^2 in [a] u [b] u [c]
    bool cond_b = false, cond_c = false, cond_d = false;
    int sq_threshold = 0;
    long coset_threshold = 0;
};

struct PhiTripleReport {
    bool found = false;
    PhiTriple best;      // valid when found
    std::string note;    // diagnostic when not found
};

inline PhiTripleReport find_phi_triple(const Group& g, PhiParams params = {}) {
    const int n = g.order();
    PhiTripleReport rep;
    if (params.sq_threshold < 0) params.sq_threshold = 2 * ((n + 7) / 8);
    if (params.coset_threshold < 0)
        params.coset_threshold = long(2 * ((n + 7) / 8)) * long(g.commutator_elems().size());
    if (n < 3) {
        rep.note = "no identity-product triple of non-identity elements exists";
        return rep;
    }
    std::vector<int> sq(n, 0);
    for (Elem x = 0; x < n; ++x) ++sq[g.mul(x, x)];
    std::vector<long> sq_coset(g.ab_order(), 0);
    for (Elem x = 0; x < n; ++x) sq_coset[g.coset_of(g.mul(x, x))] += 1;

    bool have = false;
    PhiTriple best;
    long gprime = long(g.commutator_elems().size());
    bool d_active = double(gprime) <= params.gprime_frac * n;
    for (Elem a = 1; a < n; ++a) {
        for (Elem b = 1; b < n; ++b) {
            Elem c = g.inv(g.mul(a, b));
            if (c == Group::e) continue;
            int s = sq[a] + (b == a ? 0 : sq[b]);
            if (c != a && c != b) s += sq[c];
            long sc = sq_coset[g.coset_of(a)];
            if (g.coset_of(b) != g.coset_of(a)) sc += sq_coset[g.coset_of(b)];
            if (g.coset_of(c) != g.coset_of(a) && g.coset_of(c) != g.coset_of(b))
                sc += sq_coset[g.coset_of(c)];
            PhiTriple t;
            t.a = a;
            t.b = b;
            t.c = c;
            t.sq_solutions = s;
            t.coset_solutions = sc;
            t.sq_threshold = params.sq_threshold;
            t.coset_threshold = params.coset_threshold;
            t.cond_b = s <= params.sq_threshold;
            t.cond_c = sc <= params.coset_threshold;
            t.cond_d = !d_active ||
                       (!g.in_commutator_subgroup(a) && !g.in_commutator_subgroup(b) &&
                        !g.in_commutator_subgroup(c));
            auto better = [](const PhiTriple& x, const PhiTriple& y) {
                int bx = int(x.cond_b) + int(x.cond_c) + int(x.cond_d);
                int by = int(y.cond_b) + int(y.cond_c) + int(y.cond_d);
                if (bx != by) return bx > by;
                if (x.sq_solutions != y.sq_solutions) return x.sq_solutions < y.sq_solutions;
                if (x.coset_solutions != y.coset_solutions)
                    return x.coset_solutions < y.coset_solutions;
                return std::tie(x.a, x.b) < std::tie(y.a, y.b);
            };
            if (!have || better(t, best)) {
                best = t;
                have = true;
            }
        }
    }
    if (!have) {
        rep.note = "no identity-product triple of non-identity elements exists";
        return rep;
    }
    rep.found = true;
    rep.best = best;
    return rep;
}

// involution count and inverse-pair count f(G) = (n - |I| - 1)/2
inline std::pair<int, int> involution_stats_any(const Group& g) {
    int invol = 0;
    for (Elem x = 1; x < g.order(); ++x)
        if (g.mul(x, x) == Group::e) ++invol;
    return {invol, (g.order() - invol - 1) / 2};
}

inline bool is_elementary_abelian_2(const Group& g) {
    for (Elem x = 0; x < g.order(); ++x)
        if (g.mul(x, x) != Group::e) return false;
    return true;
}

}  // namespace groupkit
