// suites.hpp
// Exhaustive verification sweeps tying the solvers to the structural
// facts they are supposed to reproduce. Each suite returns a summary with
// per-check failures; the CLI exposes them under `verify-suite`.
#pragma once

#include <functional>
#include <sstream>

#include "designs.hpp"
#include "gadgets.hpp"
#include "sequencing.hpp"
#include "zero_sum.hpp"

namespace groupkit {

struct SuiteResult {
    std::string name;
    long checked = 0;
    std::vector<std::string> failures;
    bool passed() const { return failures.empty(); }
};

// deterministic zoo of built-in groups up to a size cap
inline std::vector<Group> built_in_groups(int max_order) {
    std::vector<std::string> specs;
    for (int n = 1; n <= max_order; ++n) specs.push_back("cyclic:" + std::to_string(n));
    for (int k = 2; (1 << k) <= max_order; ++k) specs.push_back("elem2:" + std::to_string(k));
    for (int m = 3; 2 * m <= max_order; ++m) specs.push_back("dihedral:" + std::to_string(m));
    if (max_order >= 6) specs.push_back("sym:3");
    if (max_order >= 24) specs.push_back("sym:4");
    if (max_order >= 12) specs.push_back("alt:4");
    if (max_order >= 8) specs.push_back("quaternion");
    for (const char* s : {"product(cyclic:2,cyclic:4)", "product(cyclic:2,cyclic:6)",
                          "product(cyclic:3,cyclic:3)", "product(cyclic:4,elem2:2)",
                          "product(cyclic:2,quaternion)", "product(cyclic:2,sym:3)",
                          "product(cyclic:3,cyclic:4)", "product(cyclic:4,cyclic:4)",
                          "product(cyclic:2,alt:4)", "product(cyclic:3,sym:3)",
                          "product(cyclic:2,dihedral:4)", "product(cyclic:5,cyclic:5)",
                          "product(cyclic:2,cyclic:8)", "product(elem2:2,cyclic:5)",
                          "product(elem2:3,cyclic:3)", "product(cyclic:2,cyclic:4,cyclic:3)",
                          "product(cyclic:3,cyclic:6)", "product(cyclic:2,cyclic:10)",
                          "product(cyclic:3,quaternion)", "product(cyclic:2,dihedral:6)"}) {
        specs.push_back(s);
    }
    std::vector<Group> out;
    for (const auto& s : specs) {
        try {
            Group g = make_family(s, 4096);
            if (g.order() <= max_order) out.push_back(std::move(g));
        } catch (const std::exception&) {
        }
    }
    return out;
}

inline std::vector<Group> abelian_built_ins(int max_order) {
    std::vector<Group> out;
    for (Group& g : built_in_groups(max_order))
        if (g.is_abelian()) out.push_back(std::move(g));
    return out;
}

namespace detail {
inline std::vector<Elem> everything(const Group& g) {
    std::vector<Elem> v(g.order());
    std::iota(v.begin(), v.end(), 0);
    return v;
}
}  // namespace detail

// product form == Sylow form == exact solver existence, over the zoo
inline SuiteResult suite_hall_paige_equivalence(int cap = 16) {
    SuiteResult r;
    r.name = "hall-paige-equivalence";
    for (const Group& g : built_in_groups(cap)) {
        ++r.checked;
        bool prod = hall_paige_product(g);
        bool sylow = hall_paige_sylow(g);
        auto all = detail::everything(g);
        auto solver = complete_mapping(g, all, all, all);
        bool exists = solver.found();
        if (solver.status == SearchStatus::BudgetExceeded)
            r.failures.push_back(g.name() + ": solver budget exceeded");
        else if (prod != sylow || prod != exists)
            r.failures.push_back(g.name() + ": product=" + std::to_string(prod) +
                                 " sylow=" + std::to_string(sylow) +
                                 " solver=" + std::to_string(exists));
    }
    return r;
}

// every subsquare of an odd-order cyclic group has a transversal
inline SuiteResult suite_snevily_small(int cap = 7) {
    SuiteResult r;
    r.name = "snevily-small";
    for (int n = 1; n <= cap; n += 2) {
        Group g = make_family("cyclic:" + std::to_string(n));
        std::vector<std::vector<Elem>> by_size[2];
        for (int mask = 1; mask < (1 << n); ++mask) {
            std::vector<Elem> s;
            for (int i = 0; i < n; ++i)
                if (mask >> i & 1) s.push_back(Elem(i));
            by_size[0].push_back(s);
        }
        for (const auto& a : by_size[0])
            for (const auto& b : by_size[0]) {
                if (a.size() != b.size()) continue;
                ++r.checked;
                if (!subsquare_transversal(g, a, b).found()) {
                    std::ostringstream os;
                    os << "Z" << n << ": missing transversal for |A|=" << a.size();
                    r.failures.push_back(os.str());
                }
            }
    }
    return r;
}

// solver success on abelian groups with >= 3 involutions implies the
// decision conditions; runs all part multisets with parts <= max_part
inline SuiteResult suite_zero_sum_necessity(int cap = 24, int max_part = 6,
                                            uint64_t budget = kDefaultBudget) {
    SuiteResult r;
    r.name = "zero-sum-necessity";
    for (const Group& g : abelian_built_ins(cap)) {
        auto [invol, f] = involution_stats(g);
        if (invol < 3) continue;
        int n = g.order();
        std::vector<std::vector<int>> specs;
        std::vector<int> cur;
        auto gen = [&](auto&& self, int remaining, int max_allowed) -> void {
            if (remaining == 0) {
                specs.push_back(cur);
                return;
            }
            for (int p = std::min(remaining, max_allowed); p >= 2; --p) {
                if (remaining - p == 1) continue;
                cur.push_back(p);
                self(self, remaining - p, p);
                cur.pop_back();
            }
        };
        gen(gen, n - 1, max_part);
        for (const auto& parts : specs) {
            ++r.checked;
            PartitionSpec m = PartitionSpec::from_parts(parts);
            auto res = find_partition(g, m, budget);
            if (res.status == SearchStatus::BudgetExceeded) {
                r.failures.push_back(g.name() + " M=" + m.to_string() + ": budget exceeded");
                continue;
            }
            if (res.found()) {
                auto rep = decide_partition(g, m);
                if (!(rep.cond_sum && rep.cond_pairs && rep.cond_gap1 && rep.cond_gap2))
                    r.failures.push_back(g.name() + " M=" + m.to_string() +
                                         ": solver succeeded but conditions fail");
                std::vector<Elem> uni;
                for (Elem x = 1; x < g.order(); ++x) uni.push_back(x);
                if (!verify_zero_sum_partition(g, uni, m, *res.value))
                    r.failures.push_back(g.name() + " M=" + m.to_string() +
                                         ": witness failed verification");
            } else if (decide_partition(g, m).verdict == PartitionDecision::Yes) {
                // sufficiency claims for |I| in {0, 3} hold for every order
                r.failures.push_back(g.name() + " M=" + m.to_string() +
                                     ": decision Yes but solver exhausted");
            }
        }
    }
    return r;
}

// boolean groups 2^m (m <= cap_exponent) admit every all->=3 partition
inline SuiteResult suite_z2m_partitions(int cap_exponent = 4) {
    SuiteResult r;
    r.name = "z2m-partitions";
    for (int m = 1; m <= cap_exponent; ++m) {
        Group g = make_family("elem2:" + std::to_string(m));
        int n = g.order();
        std::vector<std::vector<int>> specs;
        std::vector<int> cur;
        auto gen = [&](auto&& self, int remaining, int max_allowed) -> void {
            if (remaining == 0) {
                specs.push_back(cur);
                return;
            }
            for (int p = std::min(remaining, max_allowed); p >= 3; --p) {
                if (remaining - p > 0 && remaining - p < 3) continue;
                cur.push_back(p);
                self(self, remaining - p, p);
                cur.pop_back();
            }
        };
        gen(gen, n - 1, n - 1);
        for (const auto& parts : specs) {
            ++r.checked;
            PartitionSpec spec = PartitionSpec::from_parts(parts);
            auto res = find_partition(g, spec);
            if (!res.found())
                r.failures.push_back(g.name() + " M=" + spec.to_string() + ": no partition");
        }
    }
    return r;
}

// sequencing facts: small nonabelian groups fail, Z4/Z8 succeed, and the
// unique-involution characterisation holds for abelian groups of order
// 2..cap
inline SuiteResult suite_sequencing_facts(int cap = 10) {
    SuiteResult r;
    r.name = "sequencing-facts";
    for (const char* spec : {"sym:3", "dihedral:4", "quaternion"}) {
        ++r.checked;
        if (find_sequencing(make_family(spec)).status != SearchStatus::Exhausted)
            r.failures.push_back(std::string(spec) + ": expected exhaustive None");
    }
    for (const char* spec : {"cyclic:4", "cyclic:8"}) {
        ++r.checked;
        Group g = make_family(spec);
        auto res = find_sequencing(g);
        if (!res.found() || !verify_ordering(g, *res.value).ok)
            r.failures.push_back(std::string(spec) + ": expected a sequencing");
    }
    for (const Group& g : abelian_built_ins(cap)) {
        if (g.order() < 2) continue;  // the trivial group is vacuously sequenceable
        ++r.checked;
        int invol = 0;
        for (Elem x = 1; x < g.order(); ++x) invol += g.mul(x, x) == Group::e;
        auto res = find_sequencing(g);
        if (res.status == SearchStatus::BudgetExceeded)
            r.failures.push_back(g.name() + ": budget exceeded");
        else if (res.found() != (invol == 1))
            r.failures.push_back(g.name() + ": sequencing existence != unique involution");
        else if (res.found() && !sequencing_matches_path(g, *res.value))
            r.failures.push_back(g.name() + ": witness does not walk the division digraph");
    }
    return r;
}

// gadget word tables and small constructions
inline SuiteResult suite_gadget_figures(uint64_t seed = 1) {
    SuiteResult r;
    r.name = "gadget-figures";
    // commutator absorber word identities in S4
    {
        Group s4 = make_family("sym:4");
        std::mt19937 rng(7);
        for (int it = 0; it < 20; ++it) {
            Elem a = Elem(rng() % 24), b = Elem(rng() % 24), c = Elem(rng() % 24);
            if (s4.commutator(a, b) == Group::e) continue;
            ++r.checked;
            auto words = commutator_absorber_words(s4, a, b, c);
            Elem kk = s4.mul(s4.commutator(a, b), c);
            auto check = [&](const std::array<CommutatorAbsorberWords::EdgeTemplate, 5>& mt,
                             Elem absorbed) {
                for (const auto& t : mt) {
                    Word wa = t.a < 0 ? word_constant(s4, 3, absorbed)
                                      : words.part_a[size_t(t.a)];
                    Word prod = word_mul(s4, word_mul(s4, wa, words.part_b[size_t(t.b)]),
                                         words.part_c[size_t(t.c)]);
                    if (!prod.is_constant() || prod.consts[0] != Group::e)
                        r.failures.push_back("absorber word triangle is not the identity");
                }
            };
            check(words.match_with_c, c);
            check(words.match_with_abc, kk);
        }
    }
    // comparator word identities over a symbolic check in Z101
    {
        Group z101 = make_family("cyclic:101");
        for (DigraphKind kind : {DigraphKind::Multiplication, DigraphKind::Division}) {
            ++r.checked;
            ProjectionSearchOptions opts;
            opts.seed = seed;
            auto c = build_comparator_gadget(z101, kind, {}, opts);
            if (!c || !verify_comparator(z101, *c))
                r.failures.push_back("comparator gadget construction failed in Z101");
        }
    }
    // networks sort
    for (int m = 1; m <= 6; ++m) {
        ++r.checked;
        if (!network_sorts(build_sorting_network(m)))
            r.failures.push_back("network m=" + std::to_string(m) + " does not sort");
    }
    for (int m : {2, 4, 6}) {
        ++r.checked;
        auto lens = network_path_lengths(build_sorting_network(m, true));
        if (lens.size() != 1)
            r.failures.push_back("padded network m=" + std::to_string(m) + " not uniform");
    }
    return r;
}

// projection counting: n^k total and n^{k-1} fixing one linear image
inline SuiteResult suite_free_product_counts(int word_samples = 100, uint64_t seed = 5) {
    SuiteResult r;
    r.name = "free-product-counts";
    std::mt19937_64 rng(seed);
    for (int n : {2, 3, 4, 5, 6, 7}) {
        Group g = make_family("cyclic:" + std::to_string(n));
        for (int k : {1, 2}) {
            ++r.checked;
            long total = 0;
            for_each_projection(g, k, [&](const Projection&) {
                ++total;
                return true;
            });
            long expect = 1;
            for (int i = 0; i < k; ++i) expect *= n;
            if (total != expect)
                r.failures.push_back("projection count mismatch at n=" + std::to_string(n));
        }
    }
    Group s3 = make_family("sym:3");
    for (int it = 0; it < word_samples; ++it) {
        // random linear word over two variables
        WordBuilder b(s3, 2);
        int v1 = rng() % 2 ? 1 : -1;
        int v2 = rng() % 2 ? 2 : -2;
        b.mul_const(Elem(rng() % 6));
        b.mul_var(v1);
        b.mul_const(Elem(rng() % 6));
        if (rng() % 2) {
            b.mul_var(v2);
            b.mul_const(Elem(rng() % 6));
        }
        Word w = b.take();
        if (!is_linear(w)) continue;
        ++r.checked;
        Elem target = Elem(rng() % 6);
        long hits = 0;
        for_each_projection(s3, 2, [&](const Projection& pi) {
            hits += apply_projection(s3, pi, w) == target;
            return true;
        });
        if (hits != 6)
            r.failures.push_back("linear image count != n^{k-1} for " + word_to_string(w));
    }
    return r;
}

inline SuiteResult run_suite(const std::string& name, int cap = -1) {
    if (name == "hall-paige-equivalence") return suite_hall_paige_equivalence(cap > 0 ? cap : 16);
    if (name == "snevily-small") return suite_snevily_small(cap > 0 ? cap : 7);
    if (name == "zero-sum-necessity") return suite_zero_sum_necessity(cap > 0 ? cap : 24);
    if (name == "z2m-partitions") return suite_z2m_partitions(cap > 0 ? cap : 4);
    if (name == "sequencing-facts") return suite_sequencing_facts(cap > 0 ? cap : 10);
    if (name == "gadget-figures") return suite_gadget_figures();
    if (name == "free-product-counts") return suite_free_product_counts();
    throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace groupkit
