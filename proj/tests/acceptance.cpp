// Acceptance suite: exact small-scale reproduction of the order-free facts
// plus the property sweeps. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fail.

#include <chrono>
#include <cstdio>
#include <random>

#include "groupkit/suites.hpp"

using namespace groupkit;

namespace {

int failures = 0;

void criterion(int number, const char* what, bool ok, double seconds) {
    std::printf("%s  criterion %2d  (%6.2fs)  %s\n", ok ? "PASS" : "FAIL", number, seconds,
                what);
    if (!ok) ++failures;
}

template <class F>
void run(int number, const char* what, F&& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body();
    } catch (const std::exception& e) {
        std::printf("      exception: %s\n", e.what());
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    criterion(number, what, ok, secs);
}

std::vector<Elem> everything(const Group& g) {
    std::vector<Elem> v(g.order());
    std::iota(v.begin(), v.end(), 0);
    return v;
}

void report(const SuiteResult& r) {
    for (const auto& f : r.failures) std::printf("      %s\n", f.c_str());
}

}  // namespace

int main() {
    // 1. Hall-Paige equivalence sweep over >= 20 groups of order <= 16
    run(1, "hall-paige product == sylow == solver on all built-ins of order <= 16", [] {
        SuiteResult r = suite_hall_paige_equivalence(16);
        report(r);
        return r.passed() && r.checked >= 20;
    });

    // 2. even-cyclic impossibility and the Z99 footnote triple
    run(2, "complete mappings: none on Z_{2k} (k <= 6) and none on the Z99 triple", [] {
        for (int k = 1; k <= 6; ++k) {
            Group g = make_family("cyclic:" + std::to_string(2 * k));
            auto all = everything(g);
            if (complete_mapping(g, all, all, all).status != SearchStatus::Exhausted)
                return false;
        }
        Group z99 = make_family("cyclic:99");
        std::vector<Elem> xy = {98, 1}, z = {49, 50};
        return complete_mapping(z99, xy, xy, z).status == SearchStatus::Exhausted;
    });

    // 3. near transversals exist for every group of order <= 16
    run(3, "near transversals on every built-in of order <= 16", [] {
        for (const Group& g : built_in_groups(16)) {
            auto res = near_transversal(g);
            if (!res.found()) {
                std::printf("      %s: no near transversal\n", g.name().c_str());
                return false;
            }
            if (int(res.value->cells.size()) != g.order() - 1) return false;
            std::vector<Elem> all = everything(g);
            if (!verify_transversal(g, all, all, *res.value, /*near=*/true)) return false;
        }
        return true;
    });

    // 4. Snevily odd case: every subsquare of Z5 and Z7 has a transversal
    run(4, "all subsquares of Z5 and Z7 have transversals (exhaustive)", [] {
        SuiteResult r = suite_snevily_small(7);
        report(r);
        return r.passed();
    });

    // 5. boolean obstruction: Z2^k minus zero-sum pairs has no transversal
    run(5, "Z2^k minus zero-sum pairs has no transversal for k = 2, 3", [] {
        for (int k : {2, 3}) {
            Group g = make_family("elem2:" + std::to_string(k));
            int n = g.order();
            for (Elem a1 = 0; a1 < n; ++a1)
                for (Elem a2 = Elem(a1 + 1); a2 < n; ++a2)
                    for (Elem b1 = 0; b1 < n; ++b1)
                        for (Elem b2 = Elem(b1 + 1); b2 < n; ++b2) {
                            if (g.mul(g.mul(a1, a2), g.mul(b1, b2)) != Group::e) continue;
                            std::vector<Elem> a, b;
                            for (Elem x = 0; x < n; ++x) {
                                if (x != a1 && x != a2) a.push_back(x);
                                if (x != b1 && x != b2) b.push_back(x);
                            }
                            if (subsquare_transversal(g, a, b).status !=
                                SearchStatus::Exhausted)
                                return false;
                        }
        }
        return true;
    });

    // 6. sequencing facts and Gordon's characterisation up to order 10
    run(6, "sequencing facts: small nonabelian None, Z4/Z8 witnesses, Gordon <= 10", [] {
        SuiteResult r = suite_sequencing_facts(10);
        report(r);
        return r.passed();
    });

    // 7. zero-sum necessity sweep, boolean partitions, and the counterexample
    run(7, "zero-sum: necessity on |G| <= 24, Z2^m partitions, Z4xZ2^2 counterexample", [] {
        SuiteResult nec = suite_zero_sum_necessity(24, 6);
        report(nec);
        if (!nec.passed()) return false;
        SuiteResult z2m = suite_z2m_partitions(4);
        report(z2m);
        if (!z2m.passed()) return false;
        Group g = make_family("product(cyclic:4,elem2:2)");
        PartitionSpec m = PartitionSpec::parse("2,2,2,3,3,3");
        if (decide_partition(g, m).verdict != PartitionDecision::No) return false;
        return find_partition(g, m).status == SearchStatus::Exhausted;
    });

    // 8. projection counting lemmas
    run(8, "projection counts n^k and n^{k-1} by full enumeration (n <= 7, k <= 2)", [] {
        SuiteResult r = suite_free_product_counts(100);
        report(r);
        return r.passed() && r.checked >= 100;
    });

    // 9. separability symmetry and the homomorphism law on 10^4 random pairs
    run(9, "separability symmetric under inverses; projections homomorphic (10^4 pairs)", [] {
        for (const char* spec : {"sym:3", "cyclic:8"}) {
            Group g = make_family(spec);
            int tau = default_generic_tau(g);
            std::mt19937_64 rng(2024);
            auto random_word = [&](int syllables) {
                WordBuilder b(g, 2);
                for (int i = 0; i < syllables; ++i) {
                    if (rng() % 2) {
                        b.mul_const(Elem(rng() % g.order()));
                    } else {
                        int v = 1 + int(rng() % 2);
                        b.mul_var(rng() % 2 ? v : -v);
                    }
                }
                return b.take();
            };
            for (int it = 0; it < 5000; ++it) {
                Word w1 = random_word(1 + int(rng() % 5));
                Word w2 = random_word(1 + int(rng() % 5));
                bool s = strongly_separable(g, w1, w2, tau).strong();
                if (s != strongly_separable(g, word_inv(g, w1), w2, tau).strong())
                    return false;
                if (s != strongly_separable(g, w1, word_inv(g, w2), tau).strong())
                    return false;
                if (s != strongly_separable(g, word_inv(g, w1), word_inv(g, w2), tau).strong())
                    return false;
                Projection pi{{Elem(rng() % g.order()), Elem(rng() % g.order())}};
                if (apply_projection(g, pi, word_mul(g, w1, w2)) !=
                    g.mul(apply_projection(g, pi, w1), apply_projection(g, pi, w2)))
                    return false;
            }
        }
        return true;
    });

    // 10. gadget figures: absorbers in S4, comparator/wire routing in Z101,
    //     and exhaustive sorting checks
    run(10, "gadgets: 5 absorbers in S4, Z101 comparator+wire routing, networks sort", [] {
        Group s4 = make_family("sym:4");
        int tau = default_generic_tau(s4);
        MulSlice full = full_slice(s4);
        int built = 0;
        for (Elem a = 1; a < 24 && built < 5; ++a)
            for (Elem b = Elem(a + 1); b < 24 && built < 5; ++b) {
                if (s4.commutator(a, b) == Group::e) continue;
                for (Elem c = 1; c < 24 && built < 5; ++c) {
                    auto res = build_commutator_absorber(s4, a, b, c, tau);
                    if (res.status != AbsorberBuildStatus::Built) continue;
                    auto v = verify_m_absorber(full, res.instance.r, res.instance.family, 1);
                    if (!v.ok) return false;
                    ++built;
                }
            }
        if (built < 5) return false;

        Group z101 = make_family("cyclic:101");
        for (DigraphKind kind : {DigraphKind::Multiplication, DigraphKind::Division}) {
            std::vector<Elem> a = {1, 2}, b = {3, 4};
            auto pool = build_routing_pool(z101, kind, a, b);
            if (!pool) return false;
            std::vector<std::pair<Elem, Elem>> id = {{1, 3}, {2, 4}};
            std::vector<std::pair<Elem, Elem>> swapped = {{1, 4}, {2, 3}};
            auto p1 = route_path_system(z101, kind, *pool, a, b, id);
            auto p2 = route_path_system(z101, kind, *pool, a, b, swapped);
            if (p1.paths.size() != 2 || p2.paths.size() != 2) return false;
            if (p1.paths == p2.paths) return false;  // complementary comparator pairs
        }
        for (int m = 1; m <= 6; ++m)
            if (!network_sorts(build_sorting_network(m))) return false;
        for (int m : {2, 4, 6})
            if (network_path_lengths(build_sorting_network(m, true)).size() != 1) return false;
        return true;
    });

    // 11. Gallagher bound over nonabelian built-ins of order <= 64
    run(11, "commutator width <= max(1, ceil(log4 |G'|)) on nonabelian groups <= 64", [] {
        for (const Group& g : built_in_groups(64)) {
            if (g.is_abelian()) continue;
            long gp = long(g.commutator_elems().size());
            int bound = 1;
            while ((1L << (2 * bound)) < gp) ++bound;
            bound = std::max(1, bound);
            for (Elem x : g.commutator_elems()) {
                auto w = commutator_width(g, x);
                if (!w || *w > bound) {
                    std::printf("      %s element %d width issue\n", g.name().c_str(), x);
                    return false;
                }
            }
        }
        return true;
    });

    // 12. square-root overflow forces boolean groups
    run(12, "s(g) > 3n/4 implies boolean group and g = e, over built-ins <= 64", [] {
        for (const Group& g : built_in_groups(64)) {
            for (Elem x = 0; x < g.order(); ++x) {
                if (4 * square_root_count(g, x) > 3 * g.order()) {
                    if (!is_elementary_abelian_2(g) || x != Group::e) return false;
                }
            }
        }
        return true;
    });

    std::printf("%s\n", failures == 0 ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED");
    return failures == 0 ? 0 : 1;
}
