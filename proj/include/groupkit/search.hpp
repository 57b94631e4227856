// search.hpp
// Shared outcome types for the exact backtracking solvers. Exhausted means
// the whole space was searched without success; BudgetExceeded is a
// distinct, inconclusive outcome.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace groupkit {

struct TooLarge : std::invalid_argument {
    explicit TooLarge(const std::string& msg) : std::invalid_argument(msg) {}
};

enum class SearchStatus { Found, Exhausted, BudgetExceeded };

template <class T>
struct SearchResult {
    SearchStatus status = SearchStatus::Exhausted;
    std::optional<T> value;
    uint64_t nodes = 0;
    bool found() const { return status == SearchStatus::Found; }
};

constexpr uint64_t kDefaultBudget = 10'000'000;

}  // namespace groupkit
