// free_product.hpp
// Words in G * F_k in normal form g0 x1 g1 ... xt gt, projections to G,
// linearity, strong/weak separability, and separating-projection search.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "group.hpp"
#include "search.hpp"

namespace groupkit {

// Normal form: consts has one more entry than vars, interleaved
//   consts[0] vars[0] consts[1] vars[1] ... vars[t-1] consts[t]
// vars hold +i for v_i and -i for v_i^-1 (1-based index), and we never have
// vars[j+1] == -vars[j] with consts[j+1] == e. This representation is unique,
// so equality is structural.
struct Word {
    int arity = 0;
    std::vector<Elem> consts{Group::e};
    std::vector<int> vars;

    int length() const { return int(vars.size()); }
    bool is_constant() const { return vars.empty(); }
    bool operator==(const Word&) const = default;
};

class WordBuilder {
  public:
    WordBuilder(const Group& g, int arity) : g_(&g) { w_.arity = arity; }

    WordBuilder& mul_const(Elem x) {
        w_.consts.back() = g_->mul(w_.consts.back(), x);
        return *this;
    }
    WordBuilder& mul_var(int signed_var) {
        assert(signed_var != 0 && std::abs(signed_var) <= w_.arity);
        if (!w_.vars.empty() && w_.vars.back() == -signed_var &&
            w_.consts.back() == Group::e) {
            w_.consts.pop_back();
            w_.vars.pop_back();
        } else {
            w_.vars.push_back(signed_var);
            w_.consts.push_back(Group::e);
        }
        return *this;
    }
    WordBuilder& mul_word(const Word& o) {
        mul_const(o.consts[0]);
        for (size_t i = 0; i < o.vars.size(); ++i) {
            mul_var(o.vars[i]);
            mul_const(o.consts[i + 1]);
        }
        return *this;
    }
    Word take() { return std::move(w_); }

  private:
    const Group* g_;
    Word w_;
};

inline Word word_constant(const Group& g, int arity, Elem x) {
    return WordBuilder(g, arity).mul_const(x).take();
}
inline Word word_variable(const Group& g, int arity, int signed_var) {
    return WordBuilder(g, arity).mul_var(signed_var).take();
}

inline Word word_mul(const Group& g, const Word& a, const Word& b) {
    assert(a.arity == b.arity);
    return WordBuilder(g, a.arity).mul_word(a).mul_word(b).take();
}

inline Word word_inv(const Group& g, const Word& a) {
    WordBuilder b(g, a.arity);
    b.mul_const(g.inv(a.consts.back()));
    for (int i = int(a.vars.size()) - 1; i >= 0; --i) {
        b.mul_var(-a.vars[i]);
        b.mul_const(g.inv(a.consts[i]));
    }
    return b.take();
}

// convenience for building words from a token-like list: positive/negative
// ints are signed variables, and mul_const handles group elements
inline Word make_word(const Group& g, int arity,
                      const std::vector<std::pair<bool, int>>& tokens) {
    WordBuilder b(g, arity);
    for (auto [is_var, v] : tokens) {
        if (is_var)
            b.mul_var(v);
        else
            b.mul_const(Elem(v));
    }
    return b.take();
}

// ---------------------------------------------------------------------------
// projections

struct Projection {
    std::vector<Elem> images;  // images[i] = image of v_{i+1}
    int arity() const { return int(images.size()); }
};

inline Projection zero_projection(int arity) {
    return Projection{std::vector<Elem>(arity, Group::e)};
}

inline Elem apply_projection(const Group& g, const Projection& pi, const Word& w) {
    assert(pi.arity() >= w.arity);
    Elem acc = w.consts[0];
    for (size_t i = 0; i < w.vars.size(); ++i) {
        int v = w.vars[i];
        Elem img = pi.images[std::abs(v) - 1];
        acc = g.mul(acc, v > 0 ? img : g.inv(img));
        acc = g.mul(acc, w.consts[i + 1]);
    }
    return acc;
}

inline Elem pi0(const Group& g, const Word& w) {
    return apply_projection(g, zero_projection(w.arity), w);
}

// ---------------------------------------------------------------------------
// linearity

inline int occurrences(const Word& w, int var) {
    int c = 0;
    for (int v : w.vars) c += std::abs(v) == var;
    return c;
}

inline bool linear_in(const Word& w, int var) { return occurrences(w, var) == 1; }

// every variable at most once, and at least one variable present
inline bool is_linear(const Word& w) {
    if (w.vars.empty()) return false;
    std::vector<int> cnt(w.arity + 1, 0);
    for (int v : w.vars)
        if (++cnt[std::abs(v)] > 1) return false;
    return true;
}

// set of variables occurring in w (indices, 1-based)
inline std::vector<int> variable_set(const Word& w) {
    std::vector<uint8_t> seen(w.arity + 1, 0);
    for (int v : w.vars) seen[std::abs(v)] = 1;
    std::vector<int> out;
    for (int i = 1; i <= w.arity; ++i)
        if (seen[i]) out.push_back(i);
    return out;
}

// ---------------------------------------------------------------------------
// separability

enum class SepCase { None, A, B, C, BPrime };

struct SeparabilityVerdict {
    enum class Relation { NotSeparable, WeaklySeparable, StronglySeparable };
    Relation relation = Relation::NotSeparable;
    SepCase which = SepCase::None;
    int variable = 0;        // case (a): a variable w^-1 w' is linear in
    Elem certificate = -1;   // case (b): the generic g; case (b'): the non-identity g
    bool strong() const { return relation == Relation::StronglySeparable; }
    bool weak_or_strong() const { return relation != Relation::NotSeparable; }
};

struct SeparabilityParams {
    double gprime_frac = 0.125;  // case (c): require |G'| <= frac * n
    double count_mult = 2.0;     // case (c): <= count_mult * |G'| solutions
};

// Cyclic reduction: the constant of G that w is conjugate to, if any.
// Internal syllables are already reduced (normal form), so the only
// reduction site is the boundary pair after absorbing the leading constant
// into the tail; a cyclically reduced word with variables is never
// conjugate to a constant.
inline std::optional<Elem> cyclic_constant(const Group& g, Word w) {
    while (!w.vars.empty()) {
        if (w.consts[0] != Group::e) {
            w.consts.back() = g.mul(w.consts.back(), w.consts[0]);
            w.consts[0] = Group::e;
        }
        if (w.vars.size() >= 2 && w.vars.front() == -w.vars.back() &&
            w.consts.back() == Group::e) {
            // x1 g1 ... x_t e with x_t = x1^-1 is conjugate to g1 ... g_{t-1}
            w.vars.pop_back();
            w.consts.pop_back();
            w.vars.erase(w.vars.begin());
            w.consts.erase(w.consts.begin());
        } else {
            return std::nullopt;
        }
    }
    return w.consts[0];
}

namespace detail {
inline std::optional<Elem> pattern_certificate(const Group& g, const Word& w,
                                               const Word& wp, int tau) {
    // w' in {gw, g^-1 w, g w^-1, g^-1 w^-1, wg, wg^-1, w^-1 g, w^-1 g^-1}
    // for a generic g; solve each pattern for g and test genericity
    const Word wi = word_inv(g, w);
    auto check = [&](const Word& lhs_base, bool left) -> std::optional<Elem> {
        // left:  w' = g^s * base  ->  g^s = w' * base^-1
        // right: w' = base * g^s  ->  g^s = base^-1 * w'
        Word gs = left ? word_mul(g, wp, word_inv(g, lhs_base))
                       : word_mul(g, word_inv(g, lhs_base), wp);
        if (!gs.is_constant()) return std::nullopt;
        Elem cand = gs.consts[0];
        if (is_generic(g, cand, tau)) return cand;
        Elem ci = g.inv(cand);
        if (is_generic(g, ci, tau)) return ci;
        return std::nullopt;
    };
    for (const Word* base : {&w, &wi}) {
        if (auto c = check(*base, true)) return c;
        if (auto c = check(*base, false)) return c;
    }
    return std::nullopt;
}
}  // namespace detail

inline SeparabilityVerdict strongly_separable(const Group& g, const Word& w,
                                              const Word& wp, int tau,
                                              SeparabilityParams params = {}) {
    SeparabilityVerdict out;
    using R = SeparabilityVerdict::Relation;
    // (a): some free variable occurs once in one of w/w' and never in the
    // other (the inverse-symmetric form; it implies w^-1 w' is linear in
    // that variable)
    for (int i = 1; i <= std::max(w.arity, wp.arity); ++i) {
        int c1 = occurrences(w, i), c2 = occurrences(wp, i);
        if ((c1 == 1 && c2 == 0) || (c1 == 0 && c2 == 1)) {
            out.relation = R::StronglySeparable;
            out.which = SepCase::A;
            out.variable = i;
            return out;
        }
    }
    // (b): both linear with >= 1 variable, w' a one-sided generic translate
    if (is_linear(w) && is_linear(wp)) {
        if (auto cert = detail::pattern_certificate(g, w, wp, tau)) {
            out.relation = R::StronglySeparable;
            out.which = SepCase::B;
            out.certificate = *cert;
            return out;
        }
    }
    // (c)
    long gprime = long(g.commutator_elems().size());
    if (double(gprime) <= params.gprime_frac * g.order() && is_linear(w) && is_linear(wp) &&
        variable_set(w) == variable_set(wp) && !w.vars.empty()) {
        auto sign_of = [](const Word& u, int var) {
            for (int v : u.vars)
                if (std::abs(v) == var) return v > 0 ? 1 : -1;
            return 0;
        };
        bool same_sign = false, opp_sign = false;
        for (int var : variable_set(w)) {
            int s1 = sign_of(w, var), s2 = sign_of(wp, var);
            if (s1 == s2) same_sign = true;
            if (s1 == -s2) opp_sign = true;
        }
        Elem p_ww = pi0(g, word_mul(g, w, wp));
        Elem p_iw = pi0(g, word_mul(g, word_inv(g, w), wp));
        bool b3 = !g.in_commutator_subgroup(p_ww) || same_sign;
        bool b4 = !g.in_commutator_subgroup(p_iw) || opp_sign;
        long solutions = 0;
        for (Elem x = 0; x < g.order(); ++x)
            solutions += g.coset_of(g.mul(x, x)) == g.coset_of(p_ww);
        bool b5 = double(solutions) <= params.count_mult * double(gprime);
        if (b3 && b4 && b5) {
            out.relation = R::StronglySeparable;
            out.which = SepCase::C;
            return out;
        }
    }
    return out;
}

inline SeparabilityVerdict weakly_separable(const Group& g, const Word& w, const Word& wp,
                                            int tau, SeparabilityParams params = {}) {
    SeparabilityVerdict v = strongly_separable(g, w, wp, tau, params);
    if (v.strong()) return v;
    // (b'): w = w' rearranges to e = g for a non-identity g, i.e. w^-1 w'
    // is conjugate to a non-identity constant
    Word diff = word_mul(g, word_inv(g, w), wp);
    if (auto c = cyclic_constant(g, diff); c.has_value() && *c != Group::e) {
        v.relation = SeparabilityVerdict::Relation::WeaklySeparable;
        v.which = SepCase::BPrime;
        v.certificate = *c;
    }
    return v;
}

// ---------------------------------------------------------------------------
// separating projections

struct SeparatesVerdict {
    bool ok = true;
    int first_i = -1, first_j = -1;  // indices of the first violated pair
};

inline SeparatesVerdict separates(const Group& g, const Projection& pi,
                                  const std::vector<Word>& s, int tau,
                                  SeparabilityParams params = {}) {
    SeparatesVerdict out;
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = i + 1; j < s.size(); ++j) {
            if (!weakly_separable(g, s[i], s[j], tau, params).weak_or_strong()) continue;
            if (apply_projection(g, pi, s[i]) == apply_projection(g, pi, s[j])) {
                out.ok = false;
                out.first_i = int(i);
                out.first_j = int(j);
                return out;
            }
        }
    return out;
}

inline int common_arity(const std::vector<Word>& s) {
    int k = 0;
    for (const Word& w : s) k = std::max(k, w.arity);
    return k;
}

// all n^k assignments in lexicographic order; cb returning false stops early
inline void for_each_projection(const Group& g, int k,
                                const std::function<bool(const Projection&)>& cb) {
    Projection pi;
    pi.images.assign(k, Group::e);
    if (k == 0) {
        cb(pi);
        return;
    }
    auto rec = [&](auto&& self, int pos) -> bool {
        if (pos == k) return cb(pi);
        for (Elem x = 0; x < g.order(); ++x) {
            pi.images[pos] = x;
            if (!self(self, pos + 1)) return false;
        }
        return true;
    };
    rec(rec, 0);
}

// Enumerates all projections (lexicographic over assignments) that separate S
// and whose image avoids U; stops early if the callback returns false.
// Throws TooLarge beyond the cap.
inline void for_each_separating_projection(
    const Group& g, const std::vector<Word>& s, int tau, const std::vector<Elem>& forbidden,
    const std::function<bool(const Projection&)>& cb, uint64_t cap = 10'000'000,
    SeparabilityParams params = {}) {
    int k = common_arity(s);
    long double total = 1;
    for (int i = 0; i < k; ++i) total *= g.order();
    if (total > (long double)cap)
        throw TooLarge("projection space exceeds enumeration cap");
    std::vector<uint8_t> in_u(g.order(), 0);
    for (Elem u : forbidden) in_u[u] = 1;
    // cache pairwise weak separability
    std::vector<std::pair<int, int>> pairs;
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = i + 1; j < s.size(); ++j)
            if (weakly_separable(g, s[i], s[j], tau, params).weak_or_strong())
                pairs.push_back({int(i), int(j)});
    std::vector<Elem> img(s.size());
    for_each_projection(g, k, [&](const Projection& pi) {
        for (size_t i = 0; i < s.size(); ++i) {
            img[i] = apply_projection(g, pi, s[i]);
            if (in_u[img[i]]) return true;
        }
        for (auto [i, j] : pairs)
            if (img[i] == img[j]) return true;
        return cb(pi);
    });
}

inline std::vector<Projection> enumerate_separating_projections(
    const Group& g, const std::vector<Word>& s, int tau, const std::vector<Elem>& forbidden = {},
    uint64_t cap = 10'000'000, SeparabilityParams params = {}) {
    std::vector<Projection> out;
    for_each_separating_projection(
        g, s, tau, forbidden,
        [&](const Projection& pi) {
            out.push_back(pi);
            return true;
        },
        cap, params);
    return out;
}

inline uint64_t count_separating_projections(const Group& g, const std::vector<Word>& s,
                                             int tau, const std::vector<Elem>& forbidden = {},
                                             uint64_t cap = 10'000'000,
                                             SeparabilityParams params = {}) {
    uint64_t n = 0;
    for_each_separating_projection(
        g, s, tau, forbidden,
        [&](const Projection&) {
            ++n;
            return true;
        },
        cap, params);
    return n;
}

struct GreedyDisjointOptions {
    bool restrict_images_to_commutator = false;  // mirrors the |G'| > frac*n branch
    uint64_t cap = 10'000'000;
};

// greedy family of separating projections with pairwise disjoint images pi(S)
inline std::vector<Projection> greedy_disjoint_separating(const Group& g,
                                                          const std::vector<Word>& s, int tau,
                                                          int want,
                                                          GreedyDisjointOptions opts = {},
                                                          SeparabilityParams params = {}) {
    std::vector<Projection> picked;
    if (want <= 0) return picked;
    std::vector<uint8_t> taken(g.order(), 0);
    for_each_separating_projection(
        g, s, tau, {},
        [&](const Projection& pi) {
            if (opts.restrict_images_to_commutator) {
                for (Elem im : pi.images)
                    if (!g.in_commutator_subgroup(im)) return true;
            }
            std::vector<Elem> img;
            for (const Word& w : s) img.push_back(apply_projection(g, pi, w));
            for (Elem x : img)
                if (taken[x]) return true;
            std::sort(img.begin(), img.end());
            if (std::adjacent_find(img.begin(), img.end()) != img.end()) return true;
            for (Elem x : img) taken[x] = 1;
            picked.push_back(pi);
            return int(picked.size()) < want;
        },
        opts.cap, params);
    return picked;
}

// ---------------------------------------------------------------------------
// word literal syntax: whitespace-separated tokens "g:<id>", "v<i>", "v<i>^-1"

inline Word parse_word(const Group& g, int arity, const std::string& text) {
    WordBuilder b(g, arity);
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok.rfind("g:", 0) == 0) {
            int id = std::stoi(tok.substr(2));
            if (id < 0 || id >= g.order())
                throw std::invalid_argument("element id out of range in word literal");
            b.mul_const(Elem(id));
        } else if (tok.size() >= 2 && tok[0] == 'v') {
            bool inv = false;
            std::string body = tok.substr(1);
            if (auto pos = body.find("^-1"); pos != std::string::npos) {
                inv = true;
                body = body.substr(0, pos);
            }
            int idx = std::stoi(body);
            if (idx < 1 || idx > arity)
                throw std::invalid_argument("variable index out of range in word literal");
            b.mul_var(inv ? -idx : idx);
        } else {
            throw std::invalid_argument("bad token '" + tok + "' in word literal");
        }
    }
    return b.take();
}

inline std::string word_to_string(const Word& w) {
    std::ostringstream out;
    bool first = true;
    auto emit = [&](const std::string& tok) {
        if (!first) out << ' ';
        out << tok;
        first = false;
    };
    if (w.consts[0] != Group::e || w.vars.empty()) emit("g:" + std::to_string(w.consts[0]));
    for (size_t i = 0; i < w.vars.size(); ++i) {
        int v = w.vars[i];
        emit("v" + std::to_string(std::abs(v)) + (v < 0 ? "^-1" : ""));
        if (w.consts[i + 1] != Group::e) emit("g:" + std::to_string(w.consts[i + 1]));
    }
    return out.str();
}

}  // namespace groupkit
