// zero_sum.hpp
// Zero-sum M-partitions of abelian groups: the exact decision procedure,
// backtracking partition search, zero-sum subset selection, and
// sigma-generic involution sets.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "group.hpp"
#include "search.hpp"

namespace groupkit {

struct NotAbelian : std::invalid_argument {
    explicit NotAbelian(const std::string& msg) : std::invalid_argument(msg) {}
};
struct InvalidSpec : std::invalid_argument {
    explicit InvalidSpec(const std::string& msg) : std::invalid_argument(msg) {}
};

// multiset of part sizes, all >= 2, kept sorted descending
struct PartitionSpec {
    std::vector<int> parts;
    long total = 0;
    int m2 = 0;
    int max_part = 0;

    static PartitionSpec from_parts(std::vector<int> p) {
        PartitionSpec s;
        std::sort(p.begin(), p.end(), std::greater<>());
        for (int x : p) {
            if (x < 2) throw InvalidSpec("part sizes must be >= 2");
            s.total += x;
            s.m2 += x == 2;
        }
        s.max_part = p.empty() ? 0 : p.front();
        s.parts = std::move(p);
        return s;
    }
    // comma-separated sizes, e.g. "2,2,2,3,3,3"
    static PartitionSpec parse(const std::string& text) {
        std::vector<int> p;
        std::string cur;
        for (char ch : text + ",") {
            if (ch == ',') {
                if (!cur.empty()) {
                    try {
                        p.push_back(std::stoi(cur));
                    } catch (...) {
                        throw InvalidSpec("bad part size '" + cur + "'");
                    }
                    cur.clear();
                }
            } else if (!isspace(ch)) {
                cur += ch;
            }
        }
        if (p.empty()) throw InvalidSpec("empty part list");
        return from_parts(std::move(p));
    }
    std::string to_string() const {
        std::string out;
        for (size_t i = parts.size(); i-- > 0;) {  // ascending for display
            out += std::to_string(parts[i]);
            if (i) out += ",";
        }
        return out;
    }
};

// involution count |I(G)| and f(G) = (n - |I(G)| - 1)/2
inline std::pair<int, int> involution_stats(const Group& g) {
    if (!g.is_abelian()) throw NotAbelian("involution_stats needs an abelian group");
    return involution_stats_any(g);
}

struct ZeroSumPartition {
    std::vector<std::vector<Elem>> sets;
};

inline bool verify_zero_sum_partition(const Group& g, std::span<const Elem> universe,
                                      const PartitionSpec& m, const ZeroSumPartition& p) {
    std::vector<uint8_t> used(g.order(), 0), in_u(g.order(), 0);
    for (Elem x : universe) in_u[x] = 1;
    std::vector<int> sizes;
    size_t covered = 0;
    for (const auto& s : p.sets) {
        Elem acc = Group::e;
        for (Elem x : s) {
            if (!in_u[x] || used[x]++) return false;
            acc = g.mul(acc, x);
            ++covered;
        }
        if (acc != Group::e) return false;
        sizes.push_back(int(s.size()));
    }
    if (covered != universe.size()) return false;
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    return sizes == m.parts;
}

// ---------------------------------------------------------------------------
// decision procedure

enum class PartitionDecision { Yes, No, SmallOrderSearch };

struct DecideReport {
    PartitionDecision verdict = PartitionDecision::SmallOrderSearch;
    std::string reason;
    int involutions = 0, f = 0;
    bool cond_sum = false;    // (1a) sum M == n-1
    bool cond_pairs = false;  // (1b) f(G) >= m2(M)
    bool cond_gap1 = false;   // (2) f == m2+1 implies max M >= 5
    bool cond_gap2 = false;   // (3) f == m2+2 implies max M >= 4
};

// Exact conditions per regime. Failures are final for every order (the
// necessity arguments are order-free); positive answers for groups with
// more than three involutions defer to the solver below a configurable
// order floor, where the sufficiency direction is not yet guaranteed.
inline DecideReport decide_partition(const Group& g, const PartitionSpec& m,
                                     int order_floor = 32) {
    if (!g.is_abelian()) throw NotAbelian("decide_partition needs an abelian group");
    const int n = g.order();
    for (int p : m.parts)
        if (p > n - 1) throw InvalidSpec("part size exceeds |G| - 1");
    DecideReport r;
    auto [invol, f] = involution_stats(g);
    r.involutions = invol;
    r.f = f;
    r.cond_sum = m.total == n - 1;
    r.cond_pairs = f >= m.m2;
    r.cond_gap1 = !(f == m.m2 + 1) || m.max_part >= 5;
    r.cond_gap2 = !(f == m.m2 + 2) || m.max_part >= 4;
    auto no = [&](std::string why) {
        r.verdict = PartitionDecision::No;
        r.reason = std::move(why);
        return r;
    };
    if (!r.cond_sum) return no("condition (1): sum M = n-1 required");
    if (invol == 1) return no("group has exactly one involution, so sum G != 0");
    if (!r.cond_pairs)
        return no("condition (1): f(G) >= m2(M) required (" + std::to_string(f) + " < " +
                  std::to_string(m.m2) + ")");
    if (!r.cond_gap1) return no("condition (2): max M >= 5 required when f = m2 + 1");
    if (!r.cond_gap2) return no("condition (3): max M >= 4 required when f = m2 + 2");
    if (invol == 0) {
        r.verdict = PartitionDecision::Yes;
        r.reason = "odd order: sum M = n-1 suffices";
        return r;
    }
    if (invol == 3) {
        r.verdict = PartitionDecision::Yes;
        r.reason = "three involutions: sum M = n-1 and f >= m2 suffice";
        return r;
    }
    if (n >= order_floor) {
        r.verdict = PartitionDecision::Yes;
        r.reason = "all conditions hold at order >= floor";
    } else {
        r.verdict = PartitionDecision::SmallOrderSearch;
        r.reason = "conditions hold; order below floor, defer to exact search";
    }
    return r;
}

// ---------------------------------------------------------------------------
// exact partition search

namespace detail {

struct PartitionSearcher {
    const Group* g;
    std::vector<Elem> order;  // universe, ascending
    std::vector<int> slot_size;
    std::vector<int> slot_fill;
    std::vector<Elem> slot_sum;
    std::vector<std::vector<Elem>> slot_elems;
    std::vector<uint8_t> used;
    uint64_t nodes = 0, budget = 0;
    bool over = false;

    bool place(size_t idx) {
        if (idx == order.size()) return true;
        if (++nodes > budget) {
            over = true;
            return false;
        }
        Elem x = order[idx];
        bool opened_size[16] = {};  // first empty slot per size class only
        for (size_t s = 0; s < slot_size.size(); ++s) {
            int cap = slot_size[s] - slot_fill[s];
            if (cap == 0) continue;
            if (slot_fill[s] == 0) {
                int sz = slot_size[s];
                if (sz < 16) {
                    if (opened_size[sz]) continue;
                    opened_size[sz] = true;
                }
            }
            // closing element is forced once capacity reaches 1
            Elem new_sum = g->mul(slot_sum[s], x);
            if (cap == 1 && new_sum != Group::e) continue;
            if (cap == 2) {
                // the final element -new_sum must be a later unused element
                Elem need = g->inv(new_sum);
                if (need <= x || used[need]) continue;
            }
            slot_fill[s] += 1;
            slot_sum[s] = new_sum;
            slot_elems[s].push_back(x);
            used[x] = 1;
            if (place(idx + 1)) return true;
            used[x] = 0;
            slot_elems[s].pop_back();
            slot_sum[s] = g->mul(new_sum, g->inv(x));
            slot_fill[s] -= 1;
            if (over) return false;
        }
        return false;
    }
};

}  // namespace detail

// partition an arbitrary zero-sum universe into zero-sum sets of the given
// sizes; smallest unplaced element first with forced-closure pruning
inline SearchResult<ZeroSumPartition> find_zero_sum_multiset_partition(
    const Group& g, std::vector<Elem> universe, const PartitionSpec& m,
    uint64_t budget = kDefaultBudget) {
    if (!g.is_abelian()) throw NotAbelian("zero-sum partitions need an abelian group");
    std::sort(universe.begin(), universe.end());
    if (long(universe.size()) != m.total)
        throw InvalidSpec("part sizes must sum to the universe size");
    detail::PartitionSearcher st;
    st.g = &g;
    st.order = std::move(universe);
    st.slot_size = m.parts;
    st.slot_fill.assign(m.parts.size(), 0);
    st.slot_sum.assign(m.parts.size(), Group::e);
    st.slot_elems.resize(m.parts.size());
    st.used.assign(g.order(), 0);
    st.budget = budget;
    bool ok = st.place(0);
    SearchResult<ZeroSumPartition> out;
    out.nodes = st.nodes;
    if (ok) {
        out.status = SearchStatus::Found;
        out.value = ZeroSumPartition{std::move(st.slot_elems)};
    } else {
        out.status = st.over ? SearchStatus::BudgetExceeded : SearchStatus::Exhausted;
    }
    return out;
}

// zero-sum M-partition of G \ {0}
inline SearchResult<ZeroSumPartition> find_partition(const Group& g, const PartitionSpec& m,
                                                     uint64_t budget = kDefaultBudget) {
    if (!g.is_abelian()) throw NotAbelian("find_partition needs an abelian group");
    if (m.total != g.order() - 1) throw InvalidSpec("sum M must equal |G| - 1");
    std::vector<Elem> universe;
    for (Elem x = 1; x < g.order(); ++x) universe.push_back(x);
    return find_zero_sum_multiset_partition(g, std::move(universe), m, budget);
}

// R' subseteq Z with |R'| = m and sum R' = target; meet-in-the-middle for
// m <= 4, backtracking otherwise
inline SearchResult<std::vector<Elem>> find_zero_sum_subset(const Group& g,
                                                            std::vector<Elem> z, int m,
                                                            Elem target,
                                                            uint64_t budget = kDefaultBudget) {
    if (!g.is_abelian()) throw NotAbelian("find_zero_sum_subset needs an abelian group");
    if (m < 0 || size_t(m) > z.size()) throw InvalidSpec("subset size out of range");
    std::sort(z.begin(), z.end());
    z.erase(std::unique(z.begin(), z.end()), z.end());
    SearchResult<std::vector<Elem>> out;
    if (m == 0) {
        if (target == Group::e) {
            out.status = SearchStatus::Found;
            out.value = std::vector<Elem>{};
        }
        return out;
    }
    if (m <= 4) {
        int m1 = m / 2, m2 = m - m1;
        // sums of m1-subsets keyed by the index after their last element
        std::map<std::pair<int, Elem>, std::vector<Elem>> first_by_prefix;
        std::vector<Elem> pick;
        auto gen1 = [&](auto&& self, int start, Elem sum) -> void {
            if (int(pick.size()) == m1) {
                auto key = std::make_pair(start, sum);
                if (!first_by_prefix.count(key)) first_by_prefix[key] = pick;
                return;
            }
            for (int i = start; i < int(z.size()); ++i) {
                pick.push_back(z[i]);
                self(self, i + 1, g.mul(sum, z[i]));
                pick.pop_back();
            }
        };
        gen1(gen1, 0, Group::e);
        // accumulate: allow the m1 half to end before the m2 half starts
        std::map<std::pair<int, Elem>, std::vector<Elem>> best;
        for (auto& [k, v] : first_by_prefix) {
            for (int s = k.first; s <= int(z.size()); ++s) {
                auto key = std::make_pair(s, k.second);
                if (!best.count(key)) best[key] = v;
            }
        }
        std::vector<Elem> pick2;
        std::optional<std::vector<Elem>> found;
        auto gen2 = [&](auto&& self, int start, Elem sum, int lowest) -> void {
            if (found) return;
            if (int(pick2.size()) == m2) {
                Elem need = g.mul(target, g.inv(sum));
                auto it = best.find(std::make_pair(lowest, need));
                if (it != best.end()) {
                    found = it->second;
                    found->insert(found->end(), pick2.begin(), pick2.end());
                }
                return;
            }
            for (int i = start; i < int(z.size()); ++i) {
                pick2.push_back(z[i]);
                self(self, i + 1, g.mul(sum, z[i]),
                     pick2.size() == 1 ? i : lowest);
                pick2.pop_back();
                if (found) return;
            }
        };
        gen2(gen2, 0, Group::e, 0);
        if (found) {
            out.status = SearchStatus::Found;
            out.value = std::move(*found);
        }
        return out;
    }
    // plain combination backtracking
    uint64_t nodes = 0;
    bool over = false;
    std::vector<Elem> pick;
    auto rec = [&](auto&& self, int start, Elem sum) -> bool {
        if (int(pick.size()) == m) return sum == target;
        if (++nodes > budget) {
            over = true;
            return false;
        }
        int remaining = m - int(pick.size());
        for (int i = start; i + remaining <= int(z.size()); ++i) {
            pick.push_back(z[i]);
            if (self(self, i + 1, g.mul(sum, z[i]))) return true;
            pick.pop_back();
            if (over) return false;
        }
        return false;
    };
    bool ok = rec(rec, 0, Group::e);
    out.nodes = nodes;
    if (ok) {
        out.status = SearchStatus::Found;
        out.value = pick;
    } else {
        out.status = over ? SearchStatus::BudgetExceeded : SearchStatus::Exhausted;
    }
    return out;
}

// partition X into zero-sum sets of uniform size k in {3,4,5}
inline SearchResult<ZeroSumPartition> equipartition_k(const Group& g, std::vector<Elem> x,
                                                      int k,
                                                      uint64_t budget = kDefaultBudget) {
    if (!g.is_abelian()) throw NotAbelian("equipartition_k needs an abelian group");
    if (k < 3 || k > 5) throw InvalidSpec("equipartition size must be 3, 4, or 5");
    if (x.size() % size_t(k) != 0) throw InvalidSpec("|X| must be divisible by k");
    SearchResult<ZeroSumPartition> out;
    if (x.empty()) {
        out.status = SearchStatus::Found;
        out.value = ZeroSumPartition{};
        return out;
    }
    Elem sum = Group::e;
    for (Elem v : x) {
        if (v == Group::e) throw InvalidSpec("identity cannot be in a zero-sum part");
        sum = g.mul(sum, v);
    }
    if (sum != Group::e) throw InvalidSpec("X must be zero-sum");
    PartitionSpec m = PartitionSpec::from_parts(std::vector<int>(x.size() / size_t(k), k));
    return find_zero_sum_multiset_partition(g, std::move(x), m, budget);
}

// zero-sum subset of I(G) of size k whose proper non-empty subsets all have
// generic sums
inline SearchResult<std::vector<Elem>> sigma_generic_subset(const Group& g, int k, int tau) {
    if (!g.is_abelian()) throw NotAbelian("sigma_generic_subset needs an abelian group");
    if (k < 3 || k > 10) throw InvalidSpec("k must be between 3 and 10");
    std::vector<Elem> inv;
    for (Elem x = 1; x < g.order(); ++x)
        if (g.mul(x, x) == Group::e) inv.push_back(x);
    SearchResult<std::vector<Elem>> out;
    if (int(inv.size()) < k) return out;  // NotFound
    std::vector<int> idx;
    std::vector<Elem> pick;
    auto full_check = [&]() {
        // every proper non-empty subset sum generic under tau
        int total = 1 << k;
        for (int mask = 1; mask + 1 < total; ++mask) {
            Elem s = Group::e;
            for (int i = 0; i < k; ++i)
                if (mask >> i & 1) s = g.mul(s, pick[size_t(i)]);
            if (!is_generic(g, s, tau)) return false;
        }
        return true;
    };
    auto rec = [&](auto&& self, int start, Elem sum) -> bool {
        if (int(pick.size()) == k) return sum == Group::e && full_check();
        for (int i = start; i < int(inv.size()); ++i) {
            pick.push_back(inv[size_t(i)]);
            if (self(self, i + 1, g.mul(sum, inv[size_t(i)]))) return true;
            pick.pop_back();
        }
        return false;
    };
    if (rec(rec, 0, Group::e)) {
        out.status = SearchStatus::Found;
        out.value = pick;
    }
    return out;
}

}  // namespace groupkit
