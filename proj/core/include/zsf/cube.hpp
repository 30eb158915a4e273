#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "zsf/group.hpp"

namespace zsf::cube {

// Results of the exhaustive short-zero-sum scan over distinct subsets of
// Z_3^3: subsets with no zero-sum of cardinality <= 3, by size.
struct Length3Report {
    std::vector<long long> survivors_by_size;  // index = subset size, 0..9
    int eight_orbit_count = 0;                 // orbits of maximal (8-element) subsets
    bool explicit_set_is_survivor = false;     // the reference 8-element set
    bool explicit_set_in_unique_orbit = false;
    int seventeen_bound = 0;                   // 2 * max survivor size + 1
};

// Exhaustively verifies: no 9 distinct elements of Z_3^3 avoid zero-sums of
// length <= 3; exactly one orbit of 8-element survivors; the reference set
// {x, y, z, x+y, x+y+z, x+2y+z, 2x+z, y+2z} lies in it; and hence any 17
// elements (multiplicities <= 2) contain a zero-sum of length <= 3.
Length3Report verify_length3();

// All multisets over Z_3^3 of the given cardinality with no zero-sum of
// length <= 3 and max_disjoint_zero_sums <= max_disjoint, as canonical orbit
// representatives under the automorphism group, sorted by canonical encoding.
// size in {10, 13}, max_disjoint in {1, 2}.
std::vector<GMultiSet> enumerate_candidates(int size, int max_disjoint);

// All nonempty zero-sum sub-multisets of host, identified by bitmasks over
// the copy slots (each copy of a repeated element is its own slot).
struct CopyExpansion {
    std::vector<int> copy_elem;  // ascending element index per copy slot
    std::vector<uint32_t> zero_sum_masks;  // sorted ascending
};
CopyExpansion zero_sum_subsets(const GMultiSet& host);

// The pairing graph: vertices are the zero-sum copy-subsets that admit a
// disjoint zero-sum partner; edges join disjoint pairs. Vertex order is
// deterministic (ascending mask).
struct ZeroSumGraph {
    GMultiSet host;
    std::vector<int> copy_elem;
    std::vector<uint32_t> vertices;
    std::vector<std::pair<int, int>> edges;      // vertex index pairs, i < j
    std::vector<std::vector<int>> adj;           // adjacency lists
};
ZeroSumGraph build_zero_sum_graph(const GMultiSet& host);

enum class TargetKind { C1, C2, C3 };

std::string to_string(TargetKind k);
TargetKind target_kind_from_string(const std::string& s);

// The reduced completion-pair graph a zero-sum graph must map into, together
// with the linear-equation schema each node and loop edge imposes on the
// per-copy unknowns (x_i, y_i).
struct TargetGraph {
    TargetKind kind;
    struct Node {
        std::string name;
        bool merged = false;
        // full node: sum x = ax and sum y = ay over the vertex's copies
        int ax = 0, ay = 0;
        // merged node: single equation (sum of coordinate eq_coord) = 1
        int eq_coord = 0;
        bool loop = false;
        // equation when an edge maps onto this node's loop: sum of coordinate
        // loop_joint_coord over both endpoints' copies = 1; -1 for none
        int loop_joint_coord = -1;
    };
    std::vector<Node> nodes;
    std::vector<std::pair<int, int>> edges;  // between distinct nodes

    // candidate images adjacent to `node` (bit per node id, self included iff loop)
    uint32_t adj_mask(int node) const;
};
TargetGraph target_graph(TargetKind kind);

}  // namespace zsf::cube
