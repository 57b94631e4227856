#include <catch2/catch_amalgamated.hpp>

#include "groupkit/group.hpp"

using namespace groupkit;

TEST_CASE("cayley table construction") {
    Group t = Group::from_cayley_table({{0}});
    CHECK(t.order() == 1);

    Group z2 = Group::from_cayley_table({{0, 1}, {1, 0}});
    CHECK(z2.order() == 2);
    CHECK(z2.mul(1, 1) == 0);

    CHECK_THROWS_AS(Group::from_cayley_table({{0, 1}, {0, 1}}), NotAGroup);
    CHECK_THROWS_AS(Group::from_cayley_table({{0, 1}}), NotAGroup);
    CHECK_THROWS_AS(Group::from_cayley_table({{0, 2}, {2, 0}}), NotAGroup);
}

TEST_CASE("identity relabelling") {
    // Z2 written with identity at position 1
    Group g = Group::from_cayley_table({{1, 0}, {0, 1}});
    CHECK(g.mul(0, 0) == 0);
    CHECK(g.mul(0, 1) == 1);
    CHECK(g.mul(1, 1) == 0);
}

TEST_CASE("families") {
    CHECK(make_family("cyclic:6").order() == 6);
    CHECK(make_family("sym:3").order() == 6);
    CHECK_FALSE(make_family("sym:3").is_abelian());
    CHECK(make_family("product(cyclic:4,elem2:2)").order() == 16);
    CHECK(make_family("quaternion").order() == 8);
    CHECK(make_family("dihedral:4").order() == 8);
    CHECK(make_family("alt:4").order() == 12);
    CHECK_THROWS_AS(make_family("foo:3"), UnknownFamily);
    CHECK_THROWS_AS(make_family("cyclic:5000"), OrderTooLarge);

    // quaternion sanity: i*j = k, j*i = -k
    Group q = make_family("quaternion");
    CHECK(q.mul(2, 4) == 6);
    CHECK(q.mul(4, 2) == 7);
    CHECK(q.elem_order(1) == 2);  // -1
    CHECK(q.elem_order(2) == 4);  // i
}

TEST_CASE("commutator subgroup and abelianization") {
    Group z6 = make_family("cyclic:6");
    CHECK(commutator_subgroup(z6).order() == 1);
    CHECK(z6.ab_order() == 6);

    Group s3 = make_family("sym:3");
    CHECK(commutator_subgroup(s3).order() == 3);
    CHECK(s3.ab_order() == 2);

    Group q8 = make_family("quaternion");
    CHECK(commutator_subgroup(q8).order() == 2);
    CHECK(q8.ab_order() == 4);

    // [g]+[h] == [gh] for all g,h
    for (const char* spec : {"sym:3", "quaternion", "dihedral:5"}) {
        Group g = make_family(spec);
        AbelianizationView ab = abelianization(g);
        for (Elem a = 0; a < g.order(); ++a)
            for (Elem b = 0; b < g.order(); ++b)
                CHECK(ab.add(ab.coset_of[a], ab.coset_of[b]) == ab.coset_of[g.mul(a, b)]);
    }
}

TEST_CASE("subset sums in the abelianization") {
    Group z6 = make_family("cyclic:6");
    std::vector<Elem> all = {0, 1, 2, 3, 4, 5};
    CHECK(subset_sum_ab(z6, all) == z6.coset_of(3));
    CHECK(subset_sum_ab(z6, std::vector<Elem>{}) == 0);

    Group z5 = make_family("cyclic:5");
    std::vector<Elem> a5 = {0, 1, 2, 3, 4};
    CHECK(subset_sum_ab(z5, a5) == 0);
}

TEST_CASE("hall-paige conditions") {
    CHECK(hall_paige_product(make_family("cyclic:5")));
    CHECK(hall_paige_sylow(make_family("cyclic:5")));
    CHECK_FALSE(hall_paige_product(make_family("cyclic:6")));
    CHECK_FALSE(hall_paige_sylow(make_family("cyclic:6")));
    CHECK(hall_paige_product(make_family("quaternion")));
    CHECK(hall_paige_sylow(make_family("quaternion")));

    // the two forms agree on a spread of groups
    for (const char* spec :
         {"cyclic:1", "cyclic:2", "cyclic:7", "cyclic:8", "cyclic:12", "elem2:3",
          "sym:3", "sym:4", "alt:4", "dihedral:3", "dihedral:4", "dihedral:6",
          "quaternion", "product(cyclic:2,cyclic:4)", "product(cyclic:3,cyclic:3)"}) {
        Group g = make_family(spec);
        INFO(spec);
        CHECK(hall_paige_product(g) == hall_paige_sylow(g));
    }
}

TEST_CASE("square root counts and genericity") {
    Group b3 = make_family("elem2:3");
    CHECK(square_root_count(b3, 0) == 8);
    CHECK(square_root_count(b3, 3) == 0);
    CHECK(is_generic(b3, 3, 0));
    CHECK_FALSE(is_generic(b3, 0, 0));

    Group z5 = make_family("cyclic:5");
    for (Elem g = 0; g < 5; ++g) CHECK(square_root_count(z5, g) == 1);
    CHECK_FALSE(is_generic(z5, 1, 0));
}

TEST_CASE("commutator width") {
    Group s3 = make_family("sym:3");
    CHECK(commutator_width(s3, 0) == 0);
    // 3-cycles are single commutators
    for (Elem g : commutator_subgroup(s3).elems)
        if (g != 0) CHECK(commutator_width(s3, g) == 1);
    Group z4 = make_family("cyclic:4");
    CHECK_FALSE(commutator_width(z4, 1).has_value());

    // every product with a permutation multiplying to e lies in G'
    Group q8 = make_family("quaternion");
    for (Elem a = 0; a < 8; ++a)
        for (Elem b = 0; b < 8; ++b) {
            // a * b * a^-1 * b^-1 rearranges to e
            Elem w = q8.commutator(a, b);
            CHECK(q8.in_commutator_subgroup(w));
        }
}

TEST_CASE("gallagher bound on small groups") {
    for (const char* spec : {"sym:3", "sym:4", "alt:4", "dihedral:3", "dihedral:4",
                             "dihedral:6", "dihedral:10", "quaternion"}) {
        Group g = make_family(spec);
        long gp = long(commutator_subgroup(g).order());
        int bound = 1;
        while ((1L << (2 * bound)) < gp) ++bound;  // ceil(log4 |G'|), at least 1
        for (Elem x : g.commutator_elems()) {
            auto w = commutator_width(g, x);
            REQUIRE(w.has_value());
            INFO(spec << " element " << x);
            CHECK(*w <= std::max(1, bound));
        }
    }
}

TEST_CASE("proposition: huge square-root counts force boolean groups") {
    for (const char* spec : {"cyclic:8", "cyclic:15", "elem2:4", "sym:4", "dihedral:8",
                             "quaternion", "product(cyclic:4,elem2:2)"}) {
        Group g = make_family(spec);
        for (Elem x = 0; x < g.order(); ++x) {
            if (4 * square_root_count(g, x) > 3 * g.order()) {
                CHECK(is_elementary_abelian_2(g));
                CHECK(x == Group::e);
            }
        }
    }
}

TEST_CASE("sylow 2-subgroups") {
    Group s4 = make_family("sym:4");
    CHECK(sylow_2_subgroup(s4).order() == 8);
    Group z12 = make_family("cyclic:12");
    CHECK(sylow_2_subgroup(z12).order() == 4);
    Group z15 = make_family("cyclic:15");
    CHECK(sylow_2_subgroup(z15).order() == 1);
}

TEST_CASE("phi triples") {
    Group b3 = make_family("elem2:3");
    auto rep = find_phi_triple(b3);
    REQUIRE(rep.found);
    CHECK(b3.mul(b3.mul(rep.best.a, rep.best.b), rep.best.c) == Group::e);
    CHECK(rep.best.a != 0);
    CHECK(rep.best.b != 0);
    CHECK(rep.best.c != 0);

    Group z7 = make_family("cyclic:7");
    auto rep7 = find_phi_triple(z7);
    REQUIRE(rep7.found);
    CHECK(z7.mul(z7.mul(rep7.best.a, rep7.best.b), rep7.best.c) == Group::e);

    Group t = make_family("cyclic:1");
    CHECK_FALSE(find_phi_triple(t).found);
    CHECK_FALSE(find_phi_triple(make_family("cyclic:2")).found);
}

TEST_CASE("observation: squaring counts match across related cosets") {
    std::mt19937 rng(7);
    for (const char* spec : {"sym:3", "quaternion", "dihedral:6"}) {
        Group gr = make_family(spec);
        for (int it = 0; it < 50; ++it) {
            Elem g = Elem(rng() % gr.order());
            Elem h = Elem(rng() % gr.order());
            Elem h2g = gr.mul(gr.mul(h, h), g);
            int c1 = 0, c2 = 0;
            for (Elem x = 0; x < gr.order(); ++x) {
                c1 += gr.coset_of(gr.mul(x, x)) == gr.coset_of(g);
                c2 += gr.coset_of(gr.mul(x, x)) == gr.coset_of(h2g);
            }
            CHECK(c1 == c2);
        }
    }
}

TEST_CASE("subgroup as group") {
    Group s4 = make_family("sym:4");
    Subgroup a4{&s4, commutator_subgroup(s4).elems};
    Group a4g = a4.as_group("A4");
    CHECK(a4g.order() == 12);
    CHECK_FALSE(a4g.is_abelian());
}

TEST_CASE("involution stats") {
    auto [i1, f1] = involution_stats_any(make_family("elem2:3"));
    CHECK(i1 == 7);
    CHECK(f1 == 0);
    auto [i2, f2] = involution_stats_any(make_family("product(cyclic:4,elem2:2)"));
    CHECK(i2 == 7);
    CHECK(f2 == 4);
    auto [i3, f3] = involution_stats_any(make_family("cyclic:7"));
    CHECK(i3 == 0);
    CHECK(f3 == 3);
}

TEST_CASE("multiset products with an identity rearrangement lie in G'") {
    // pick random pairs {x, x^-1}; any shuffled product of the multiset has
    // a permutation multiplying to e, so every ordering's product is in G'
    std::mt19937 rng(41);
    for (const char* spec : {"sym:3", "sym:4", "quaternion", "dihedral:6"}) {
        Group g = make_family(spec);
        for (int it = 0; it < 100; ++it) {
            std::vector<Elem> word;
            int pairs = 1 + int(rng() % 4);
            for (int i = 0; i < pairs; ++i) {
                Elem x = Elem(rng() % g.order());
                word.push_back(x);
                word.push_back(g.inv(x));
            }
            std::shuffle(word.begin(), word.end(), rng);
            Elem prod = Group::e;
            for (Elem x : word) prod = g.mul(prod, x);
            INFO(spec);
            CHECK(g.in_commutator_subgroup(prod));
        }
    }
}

TEST_CASE("large tables fall back to sampled validation") {
    int n = 600;
    std::vector<Elem> flat(size_t(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) flat[size_t(a) * n + b] = Elem((a + b) % n);
    Group g = Group::from_flat(n, std::move(flat), "Z600");
    CHECK_FALSE(g.fully_validated());
    CHECK(g.order() == 600);
}
