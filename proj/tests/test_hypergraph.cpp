#include <catch2/catch_amalgamated.hpp>
#include <climits>

#include "groupkit/hypergraph.hpp"

using namespace groupkit;

TEST_CASE("slice construction and edge counts") {
    Group z2 = make_family("cyclic:2");
    MulSlice s = full_slice(z2);
    CHECK(s.edge_count() == 4);  // one edge per (a,b)

    Group z3 = make_family("cyclic:3");
    CHECK(full_slice(z3).edge_count() == 9);

    MulSlice empty = build_slice(z3, {}, {0, 1}, {0, 1});
    CHECK(empty.edge_count() == 0);

    CHECK_THROWS_AS(build_slice(z3, {5}, {}, {}), IdOutOfRange);
}

TEST_CASE("typicality of full slices") {
    Group z5 = make_family("cyclic:5");
    TypicalityReport r = typicality_stats(full_slice(z5));
    for (int p = 0; p < 3; ++p) {
        CHECK(r.min_degree[p] == 5);
        CHECK(r.max_degree[p] == 5);
        for (int q = 0; q < 3; ++q) {
            if (p == q) continue;
            CHECK(r.min_pair_degree[p][q] == 5);
            CHECK(r.max_pair_degree[p][q] == 5);
        }
    }
    CHECK(r.linear);

    Group z2 = make_family("cyclic:2");
    TypicalityReport r2 = typicality_stats(full_slice(z2));
    CHECK(r2.min_degree[0] == 2);
    CHECK(r2.max_degree[2] == 2);
}

TEST_CASE("perfect matching on full slices") {
    // Z3: diagonal matching (x,x,x) exists
    Group z3 = make_family("cyclic:3");
    auto res = find_perfect_matching(full_slice(z3));
    REQUIRE(res.found());
    CHECK(verify_matching(full_slice(z3), *res.value).perfect);

    // Z2: no perfect matching (even cyclic, Hall-Paige fails)
    Group z2 = make_family("cyclic:2");
    auto res2 = find_perfect_matching(full_slice(z2));
    CHECK(res2.status == SearchStatus::Exhausted);

    // Z99 footnote triple: necessary condition holds but no matching
    Group z99 = make_family("cyclic:99");
    MulSlice s = build_slice(z99, {98, 1}, {98, 1}, {49, 50});
    auto res3 = find_perfect_matching(s);
    CHECK(res3.status == SearchStatus::Exhausted);
}

TEST_CASE("solver vs exhaustive count on small slices") {
    // completeness: solver agrees with exhaustive enumeration
    std::mt19937 rng(11);
    for (const char* spec : {"cyclic:6", "sym:3", "cyclic:8", "quaternion"}) {
        Group g = make_family(spec);
        for (int it = 0; it < 40; ++it) {
            int k = 1 + int(rng() % 6);
            auto pick = [&]() {
                std::vector<Elem> v(g.order());
                std::iota(v.begin(), v.end(), 0);
                std::shuffle(v.begin(), v.end(), rng);
                v.resize(k);
                return v;
            };
            MulSlice s = build_slice(g, pick(), pick(), pick());
            long cnt = count_perfect_matchings(s);
            auto res = find_perfect_matching(s);
            INFO(spec << " iteration " << it);
            CHECK((cnt > 0) == res.found());
        }
    }
}

TEST_CASE("count_perfect_matchings") {
    Group z3 = make_family("cyclic:3");
    MulSlice empty = build_slice(z3, {}, {}, {});
    CHECK(count_perfect_matchings(empty) == 1);
    CHECK(count_perfect_matchings(full_slice(z3)) >= 1);
    Group z2 = make_family("cyclic:2");
    CHECK(count_perfect_matchings(full_slice(z2)) == 0);

    Group big = make_family("cyclic:16");
    CHECK_THROWS_AS(count_perfect_matchings(full_slice(big)), TooLarge);
}

TEST_CASE("matching verification") {
    Group z3 = make_family("cyclic:3");
    MulSlice s = full_slice(z3);
    MatchingVerdict empty_on_empty = verify_matching(build_slice(z3, {}, {}, {}), Matching{});
    CHECK(empty_on_empty.valid);
    CHECK(empty_on_empty.perfect);

    Matching bad{{{0, 0, 0}, {0, 1, 2}}};
    MatchingVerdict v = verify_matching(s, bad);
    CHECK_FALSE(v.valid);
    CHECK(v.violation == "duplicate in part A");

    Matching wrong{{{0, 1, 1}}};
    CHECK_FALSE(verify_matching(s, wrong).valid);
}

TEST_CASE("solver success implies zero-sum parts") {
    std::mt19937 rng(23);
    for (const char* spec : {"cyclic:7", "sym:3", "elem2:3"}) {
        Group g = make_family(spec);
        for (int it = 0; it < 30; ++it) {
            int k = 1 + int(rng() % 4);
            auto pick = [&]() {
                std::vector<Elem> v(g.order());
                std::iota(v.begin(), v.end(), 0);
                std::shuffle(v.begin(), v.end(), rng);
                v.resize(k);
                return v;
            };
            MulSlice s = build_slice(g, pick(), pick(), pick());
            auto res = find_perfect_matching(s);
            if (res.found()) {
                int sum = subset_sum_ab(g, s.xs);
                sum = g.ab_add(sum, subset_sum_ab(g, s.ys));
                sum = g.ab_add(sum, subset_sum_ab(g, s.zs));
                CHECK(sum == 0);
            }
        }
    }
}

TEST_CASE("unbalanced parts rejected") {
    Group z3 = make_family("cyclic:3");
    MulSlice s = build_slice(z3, {0, 1}, {0}, {0});
    CHECK_THROWS_AS(find_perfect_matching(s), UnbalancedParts);
}

TEST_CASE("pair degrees agree with explicit edge enumeration") {
    std::mt19937 rng(31);
    for (const char* spec : {"sym:3", "cyclic:7"}) {
        Group g = make_family(spec);
        for (int it = 0; it < 25; ++it) {
            auto pick = [&]() {
                std::vector<Elem> v(g.order());
                std::iota(v.begin(), v.end(), 0);
                std::shuffle(v.begin(), v.end(), rng);
                v.resize(2 + rng() % 4);
                return v;
            };
            MulSlice s = build_slice(g, pick(), pick(), pick());
            // materialize edges
            std::vector<Edge3> edges;
            for (Elem a : s.xs)
                for (Elem b : s.ys) {
                    Elem c = s.complete(a, b);
                    if (s.in_z[c]) edges.push_back({a, b, c});
                }
            TypicalityReport r = typicality_stats(s);
            const std::vector<Elem>* parts[3] = {&s.xs, &s.ys, &s.zs};
            auto coord = [](const Edge3& e, int p) { return p == 0 ? e.a : p == 1 ? e.b : e.c; };
            for (int p = 0; p < 3; ++p)
                for (int q = 0; q < 3; ++q) {
                    if (p == q) continue;
                    int mn = INT_MAX, mx = 0;
                    for (size_t i = 0; i < parts[p]->size(); ++i)
                        for (size_t j = i + 1; j < parts[p]->size(); ++j) {
                            Elem u = (*parts[p])[i], v = (*parts[p])[j];
                            int d = 0;
                            for (Elem w : *parts[q]) {
                                bool eu = false, ev = false;
                                for (const Edge3& e : edges) {
                                    if (coord(e, p) == u && coord(e, q) == w) eu = true;
                                    if (coord(e, p) == v && coord(e, q) == w) ev = true;
                                }
                                d += eu && ev;
                            }
                            mn = std::min(mn, d);
                            mx = std::max(mx, d);
                        }
                    if (parts[p]->size() < 2) mn = 0;
                    INFO(spec << " it=" << it << " p=" << p << " q=" << q);
                    CHECK(r.min_pair_degree[p][q] == mn);
                    CHECK(r.max_pair_degree[p][q] == mx);
                }
        }
    }
}

TEST_CASE("budget trips are reported as their own outcome") {
    Group z15 = make_family("cyclic:15");
    auto res = find_perfect_matching(full_slice(z15), 2);
    CHECK(res.status == SearchStatus::BudgetExceeded);
    CHECK_FALSE(res.value.has_value());
    // with a real budget the same instance is solvable
    CHECK(find_perfect_matching(full_slice(z15)).found());
}
