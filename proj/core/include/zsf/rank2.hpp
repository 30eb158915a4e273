#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "zsf/group.hpp"

namespace zsf::rank2 {

// True iff every zero-sum free multiset of maximal cardinality 2n-2 over
// Z_n^2 contains an element with multiplicity >= n-2. Exhaustive counter-
// example search; for prime n the search fixes the first element using the
// transitivity of GL_2 on nonzero vectors.
bool property_b(int n, const SearchBudget& budget = {});

// True iff every zero-sum free multiset A over Z_n with N = |A| >= ceil(2n/3)
// has an element of multiplicity > 2N - n that generates Z_n.
bool ben_check(int n);

// True iff for every multiset A over Z_n with |A| >= ceil(3n/4):
// A is zero-sum free <=> 0 not in A and some unit alpha has
// sum of least non-negative representatives of alpha*A at most n-1.
// (Cardinalities >= n make both sides false, so the scan stops at n-1.)
bool corcd_check(int n);

enum class CompletionClass { C1, C2, C3, NONE };

// How a large zero-sum free B over Z_n^2 can be completed to a maximal
// zero-sum free multiset: the elements (singles) and unordered element pairs
// whose addition keeps B zero-sum free, plus the classification of the pair
// set up to automorphism against the three reference pair families.
struct CompletionReport {
    GMultiSet base;
    int n = 0;
    std::vector<int> singles;                   // element indices
    std::vector<std::pair<int, int>> pairs;     // index pairs, first <= second
    CompletionClass classification = CompletionClass::NONE;
    // 2x2 matrix (row-major) over Z_n witnessing the classification
    std::vector<int> sigma;
    // B = {b1^(n-2), b2^(n-2)} with b1, b2 generating Z_n^2: the one shape for
    // which the all-ones / zero-one homomorphism below need not exist.
    bool exception = false;
};

// Requires |B| in {2n-3, 2n-4}, B over Z_n^2. Pairs are scanned only for
// |B| = 2n-4 (a pair on top of 2n-3 elements reaches the Davenport bound).
CompletionReport completion_report(const GMultiSet& b);

// Search for F(x, y) = u x + v y over Z_n with F(c) = 1 for every single
// completion c (use when |B| = 2n-3). Returns (u, v) if one exists.
std::optional<std::pair<int, int>> find_hom_all_ones(const CompletionReport& report);

// Search for F with F(c1), F(c2) in {0, 1} and at least one value 1, for
// every completion pair (use when |B| = 2n-4).
std::optional<std::pair<int, int>> find_hom_zero_one(const CompletionReport& report);

}  // namespace zsf::rank2
