// The classical even-order obstruction: Z4 x Z2 x Z2 admits no zero-sum
// partition with parts (2,2,2,3,3,3), while every all->=3 multiset over
// Z2^3 works.
#include <cstdio>

#include "groupkit/zero_sum.hpp"

using namespace groupkit;

int main() {
    Group g = make_family("product(cyclic:4,elem2:2)");
    PartitionSpec m = PartitionSpec::parse("2,2,2,3,3,3");
    auto rep = decide_partition(g, m);
    std::printf("%s with M = {%s}: %s\n", g.name().c_str(), m.to_string().c_str(),
                rep.reason.c_str());
    auto search = find_partition(g, m);
    std::printf("exact search: %s (%llu nodes)\n",
                search.found() ? "found (unexpected!)" : "no partition, exhausted",
                (unsigned long long)search.nodes);

    Group b3 = make_family("elem2:3");
    for (const char* spec : {"3,4", "7"}) {
        auto res = find_partition(b3, PartitionSpec::parse(spec));
        std::printf("Z2^3 with M = {%s}: %s\n", spec, res.found() ? "partitioned" : "none");
        if (res.found())
            for (const auto& s : res.value->sets) {
                std::printf(" ");
                for (Elem x : s) std::printf(" %d", x);
                std::printf("\n");
            }
    }
    return 0;
}
