#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "zsf/group.hpp"

namespace zsf {

namespace detail {
struct GroupTable;
}

// Value-semantic set of reachable nonempty subset sums, for incremental
// backtracking searches: grown(e) returns the set after adding one more copy
// of element e. Copies share the group's addition table.
class SumSet {
public:
    explicit SumSet(const GroupSpec& g);
    SumSet(const SumSet&) = default;
    SumSet& operator=(const SumSet&) = default;
    ~SumSet();

    bool contains(int elem_index) const;
    int size() const;
    SumSet grown(int elem_index) const;  // this | (this + e) | {e}

private:
    std::shared_ptr<const detail::GroupTable> table_;
    std::vector<uint64_t> bits_;
};

// A packing of pairwise disjoint nonempty zero-sum sub-multisets of a host.
struct ZeroSumSystem {
    GMultiSet host;
    std::vector<GMultiSet> parts;  // each sums to zero; summed multiplicities <= host
};

// true iff no nonempty sub-multiset sums to zero. Subset-sum DP over reachable
// group elements, one copy at a time.
bool is_zero_sum_free(const GMultiSet& ms);

// true iff some nonempty sub-multiset of cardinality <= max_len sums to zero.
bool has_short_zero_sum(const GMultiSet& ms, int max_len);

// Characteristic vector over element indices: entry s is nonzero iff some
// nonempty sub-multiset sums to s.
std::vector<char> subset_sums(const GMultiSet& ms);

// min(cap, maximum number of pairwise disjoint nonempty zero-sum
// sub-multisets). Exact backtracking that branches on minimal zero-sums
// through the lowest-index element still present. cap >= 1.
int max_disjoint_zero_sums(const GMultiSet& ms, int cap);

// As above, but reconstructs one maximum packing (parts are minimal zero-sums).
ZeroSumSystem find_disjoint_zero_sums(const GMultiSet& ms, int cap);

struct DavenportResult {
    int value = 0;
    GMultiSet witness;      // extremal multiset of cardinality value - 1
    long long nodes = 0;    // search nodes visited
};

// Least N such that every multiset of cardinality N over G contains a
// nonempty zero-sum. Exhaustive depth-first search; throws budget_error if the
// node limit is exceeded (never returns a wrong answer).
DavenportResult davenport(const GroupSpec& g, const SearchBudget& budget = {});

// Least N such that every multiset of cardinality N contains m pairwise
// disjoint nonempty zero-sums. davenport_m(g, 1) == davenport(g).
DavenportResult davenport_m(const GroupSpec& g, int m, const SearchBudget& budget = {});

// Least N such that every multiset of cardinality N contains a nonempty
// zero-sum of cardinality <= max_len.
DavenportResult davenport_short(const GroupSpec& g, int max_len, const SearchBudget& budget = {});

// davenport_short(Z_k^ell, k) - k.
int c_const(int k, int ell, const SearchBudget& budget = {});

}  // namespace zsf
