#pragma once

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zsf/errors.hpp"

namespace zsf {

// Finite abelian group Z_{n_1} + ... + Z_{n_k} given by its invariant factors,
// n_1 | n_2 | ... | n_k, n_i >= 2. Elements are addressed either by coordinate
// vectors or by a mixed-radix index in [0, order): index = sum coords[i] * stride_i
// with stride_0 = 1. Index 0 is the zero element.
class GroupSpec {
public:
    explicit GroupSpec(std::vector<int> invariant_factors);

    static GroupSpec elementary(int k, int ell);  // Z_k^ell
    // "3,3,15" (invariant factors), "3^3" (elementary abelian), "5" (cyclic)
    static GroupSpec parse(std::string_view text);

    int rank() const { return static_cast<int>(factors_.size()); }
    long long order() const { return order_; }
    const std::vector<int>& invariant_factors() const { return factors_; }
    bool is_elementary(int* k_out = nullptr) const;

    int index_of(std::span<const int> coords) const;
    std::vector<int> coords_of(int index) const;

    int add(int a, int b) const;
    int neg(int a) const;
    int scale(int a, long long t) const;  // t*a, t may be negative
    int element_order(int a) const;

    std::string format() const;                // "3,3,15"
    std::string format_elem(int index) const;  // "(1,0,2)"

    friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
        return a.factors_ == b.factors_;
    }

private:
    std::vector<int> factors_;
    std::vector<int> strides_;
    long long order_ = 1;
};

// An element as a coordinate vector; reduced mod n_i on construction.
struct GElem {
    std::vector<int> coords;

    friend bool operator==(const GElem&, const GElem&) = default;
    friend auto operator<=>(const GElem&, const GElem&) = default;
};

// Multiset over a fixed group, stored densely as one multiplicity per element
// index. Lexicographic order on the multiplicity vector is the total order
// used for canonical forms.
class GMultiSet {
public:
    explicit GMultiSet(GroupSpec group);

    const GroupSpec& group() const { return group_; }
    long long cardinality() const { return card_; }
    int count(int elem_index) const { return counts_[elem_index]; }
    const std::vector<int>& counts() const { return counts_; }

    void add(int elem_index, int mult = 1);
    void add(const GElem& e, int mult = 1);
    void remove(int elem_index, int mult = 1);
    void clear();

    std::vector<int> support() const;  // element indices with positive count

    // "(1,0)^3 (0,1)^3"; bare integers allowed for rank-1 groups
    static GMultiSet parse(const GroupSpec& group, std::string_view text);
    std::string format() const;

    friend bool operator==(const GMultiSet& a, const GMultiSet& b) {
        return a.group_ == b.group_ && a.counts_ == b.counts_;
    }
    // lexicographic on the multiplicity vector; groups must match
    friend bool operator<(const GMultiSet& a, const GMultiSet& b);

private:
    GroupSpec group_;
    std::vector<int> counts_;
    long long card_ = 0;
};

// Componentwise modular sum over all entries with multiplicity; the empty
// multiset sums to zero.
GElem sum_of(const GMultiSet& ms);

int m_of(const GroupSpec& g);  // 1 + sum (n_i - 1)

// Text grid format for Z_3^3 multisets: three 3x3 planes (z = 0,1,2 left to
// right), rows y = 2 down to y = 0, columns x = 0..2; digit = multiplicity,
// '.' = absent. (0,0,0) is the lower-left cell of the first plane.
std::string to_grid(const GMultiSet& ms);
GMultiSet from_grid(std::string_view text);
bool is_z333(const GroupSpec& g);

}  // namespace zsf
