#pragma once

#include <functional>
#include <vector>

#include "zsf/group.hpp"

namespace zsf {

// Automorphism of Z_k^ell, k prime: an invertible ell x ell matrix over Z_k
// (row-major). Acts on elements by matrix-vector multiplication mod k.
struct Automorphism {
    int k = 0;
    int ell = 0;
    std::vector<int> matrix;  // ell*ell entries in [0, k)

    int apply_index(const GroupSpec& g, int elem_index) const;
    GElem apply(const GroupSpec& g, const GElem& e) const;
};

// Supported groups: Z_k^ell with k prime in {2, 3, 5} and ell <= 3.
void require_automorphism_support(const GroupSpec& g);

// Visits each invertible matrix exactly once, in lexicographic matrix order.
void for_each_automorphism(const GroupSpec& g, const std::function<void(const Automorphism&)>& fn);

std::vector<Automorphism> automorphisms(const GroupSpec& g);

// prod_{i=0}^{ell-1} (k^ell - k^i)
long long automorphism_count(int k, int ell);

GMultiSet apply(const Automorphism& sigma, const GMultiSet& ms);

// Lexicographically minimal image of the multiplicity vector over the full
// automorphism orbit. Two multisets are equivalent under automorphism iff
// their canonical forms are equal.
GMultiSet canonicalize(const GMultiSet& ms);

// Canonical multiplicity vector without constructing a GMultiSet; the hot path
// for orbit deduplication. Uses a cached permutation table for small groups.
std::vector<int> canonical_counts(const GroupSpec& g, const std::vector<int>& counts);

}  // namespace zsf
