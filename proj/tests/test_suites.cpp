#include <catch2/catch_amalgamated.hpp>

#include "groupkit/suites.hpp"

using namespace groupkit;

TEST_CASE("all verification suites pass") {
    for (const char* name :
         {"hall-paige-equivalence", "snevily-small", "zero-sum-necessity", "z2m-partitions",
          "sequencing-facts", "gadget-figures", "free-product-counts"}) {
        SuiteResult r = run_suite(name);
        INFO(name);
        for (const auto& f : r.failures) UNSCOPED_INFO(f);
        CHECK(r.passed());
        CHECK(r.checked > 0);
    }
    CHECK_THROWS(run_suite("no-such-suite"));
}

TEST_CASE("group zoo covers every abelian type with involutions up to 24") {
    // invariant profiles (order, |I|) that the sweep must include
    std::vector<std::pair<int, int>> want = {{4, 3},  {8, 7},  {8, 3},  {12, 3},
                                             {16, 15}, {16, 7}, {16, 3}, {20, 3},
                                             {24, 7},  {24, 3}};
    auto groups = abelian_built_ins(24);
    for (auto [n, invol] : want) {
        bool present = false;
        for (const Group& g : groups) {
            auto [i, f] = involution_stats(g);
            present |= g.order() == n && i == invol;
        }
        INFO("order " << n << " involutions " << invol);
        CHECK(present);
    }
}
