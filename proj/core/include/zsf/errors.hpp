#pragma once

#include <stdexcept>
#include <string>

namespace zsf {

// Search exceeded its configured node budget. Never returned as a wrong
// answer: callers either enlarge the budget or give up.
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// Structurally invalid input: mismatched groups, bad cardinalities, malformed text.
struct structural_error : std::invalid_argument {
    explicit structural_error(const std::string& what) : std::invalid_argument(what) {}
};

// Group shape outside the supported range of an operation (e.g. automorphisms
// of a non-elementary group).
struct unsupported_group_error : std::invalid_argument {
    explicit unsupported_group_error(const std::string& what) : std::invalid_argument(what) {}
};

struct SearchBudget {
    long long node_limit = 1'000'000'000;
};

}  // namespace zsf
