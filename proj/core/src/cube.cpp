#include "zsf/cube.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "zsf/automorphism.hpp"
#include "zsf/zerosum.hpp"

namespace zsf::cube {

namespace {

constexpr int kOrder = 27;

struct CubeTables {
    int add[kOrder][kOrder];
    int neg[kOrder];
    std::vector<uint8_t> perms;  // one 27-entry permutation per automorphism
    long long perm_count = 0;

    CubeTables() {
        GroupSpec g = GroupSpec::elementary(3, 3);
        for (int a = 0; a < kOrder; ++a) {
            neg[a] = g.neg(a);
            for (int b = 0; b < kOrder; ++b) add[a][b] = g.add(a, b);
        }
        for_each_automorphism(g, [&](const Automorphism& s) {
            for (int e = 0; e < kOrder; ++e)
                perms.push_back(static_cast<uint8_t>(s.apply_index(g, e)));
            ++perm_count;
        });
    }
};

const CubeTables& tables() {
    static const CubeTables t;
    return t;
}

uint32_t canonical_mask(uint32_t mask) {
    const CubeTables& t = tables();
    uint32_t best = ~uint32_t{0};
    const uint8_t* p = t.perms.data();
    for (long long i = 0; i < t.perm_count; ++i, p += kOrder) {
        uint32_t img = 0;
        uint32_t m = mask;
        while (m) {
            int e = std::countr_zero(m);
            m &= m - 1;
            img |= uint32_t{1} << p[e];
        }
        if (img < best) best = img;
    }
    return best;
}

// Enumerates subsets of the 26 nonzero elements of Z_3^3 containing no
// zero-sum of cardinality <= 3 among distinct elements: no pair {a, -a} and
// no triple a + b + c = 0. Visits every survivor once, in ascending element
// order; `forbidden` carries the elements that would close a pair or triple.
template <typename Visit>
void survivor_dfs(std::vector<int>& support, uint32_t forbidden, int start, const Visit& visit) {
    const CubeTables& t = tables();
    visit(support);
    for (int e = start; e < kOrder; ++e) {
        if (forbidden & (uint32_t{1} << e)) continue;
        uint32_t nf = forbidden | (uint32_t{1} << t.neg[e]);
        for (int a : support) nf |= uint32_t{1} << t.neg[t.add[a][e]];
        support.push_back(e);
        survivor_dfs(support, nf, e + 1, visit);
        support.pop_back();
    }
}

std::vector<std::vector<uint32_t>> survivor_orbit_reps_by_size() {
    std::vector<std::unordered_set<uint32_t>> reps(10);
    std::vector<int> support;
    survivor_dfs(support, 1 /* exclude the zero element */, 1, [&](const std::vector<int>& s) {
        if (s.empty()) return;
        uint32_t mask = 0;
        for (int e : s) mask |= uint32_t{1} << e;
        reps[s.size()].insert(canonical_mask(mask));
    });
    std::vector<std::vector<uint32_t>> out(10);
    for (size_t i = 0; i < reps.size(); ++i) {
        out[i].assign(reps[i].begin(), reps[i].end());
        std::sort(out[i].begin(), out[i].end());
    }
    return out;
}

}  // namespace

Length3Report verify_length3() {
    Length3Report rep;
    rep.survivors_by_size.assign(10, 0);
    std::unordered_set<uint32_t> eight_orbits;
    std::vector<int> support;
    survivor_dfs(support, 1, 1, [&](const std::vector<int>& s) {
        rep.survivors_by_size[s.size()] += 1;
        if (s.size() == 8) {
            uint32_t mask = 0;
            for (int e : s) mask |= uint32_t{1} << e;
            eight_orbits.insert(canonical_mask(mask));
        }
    });
    rep.survivors_by_size[0] = 0;  // the empty set is not counted
    rep.eight_orbit_count = static_cast<int>(eight_orbits.size());

    // reference maximal set over the standard basis x, y, z
    GroupSpec g = GroupSpec::elementary(3, 3);
    auto idx = [&](int x, int y, int z) { return g.index_of(std::vector<int>{x, y, z}); };
    std::vector<int> explicit_set = {
        idx(1, 0, 0), idx(0, 1, 0), idx(0, 0, 1), idx(1, 1, 0),
        idx(1, 1, 1), idx(1, 2, 1), idx(2, 0, 1), idx(0, 1, 2),
    };
    GMultiSet ms(g);
    for (int e : explicit_set) ms.add(e);
    rep.explicit_set_is_survivor = !has_short_zero_sum(ms, 3);
    uint32_t mask = 0;
    for (int e : explicit_set) mask |= uint32_t{1} << e;
    rep.explicit_set_in_unique_orbit =
        eight_orbits.size() == 1 && eight_orbits.count(canonical_mask(mask)) > 0;

    int max_size = 0;
    for (int s = 0; s <= 9; ++s)
        if (rep.survivors_by_size[s] > 0) max_size = s;
    // multiplicity <= 2 everywhere, so 2*max + 1 elements force either a
    // triple copy or more than max distinct elements
    rep.seventeen_bound = 2 * max_size + 1;
    return rep;
}

std::vector<GMultiSet> enumerate_candidates(int size, int max_disjoint) {
    if ((size != 10 && size != 13) || (max_disjoint != 1 && max_disjoint != 2))
        throw structural_error("enumerate_candidates supports (10, 1) and (13, 2)");
    GroupSpec g = GroupSpec::elementary(3, 3);
    auto reps = survivor_orbit_reps_by_size();

    std::set<std::vector<int>> canon;
    for (int s = (size + 1) / 2; s <= 9; ++s) {
        if (s > static_cast<int>(reps.size()) - 1) break;
        int doubles = size - s;
        if (doubles < 0 || doubles > s) continue;
        for (uint32_t mask : reps[static_cast<size_t>(s)]) {
            std::vector<int> elems;
            for (int e = 0; e < kOrder; ++e)
                if (mask & (uint32_t{1} << e)) elems.push_back(e);
            // choose which elements get multiplicity 2
            std::vector<int> pick(static_cast<size_t>(s), 0);
            std::fill(pick.begin(), pick.begin() + doubles, 1);
            std::sort(pick.begin(), pick.end());
            do {
                GMultiSet ms(g);
                for (int i = 0; i < s; ++i)
                    ms.add(elems[static_cast<size_t>(i)], 1 + pick[static_cast<size_t>(i)]);
                if (max_disjoint_zero_sums(ms, max_disjoint + 1) > max_disjoint) continue;
                canon.insert(canonical_counts(g, ms.counts()));
            } while (std::next_permutation(pick.begin(), pick.end()));
        }
    }

    std::vector<GMultiSet> out;
    for (const auto& counts : canon) {
        GMultiSet ms(g);
        for (int e = 0; e < kOrder; ++e)
            if (counts[static_cast<size_t>(e)]) ms.add(e, counts[static_cast<size_t>(e)]);
        out.push_back(std::move(ms));
    }
    return out;
}

CopyExpansion zero_sum_subsets(const GMultiSet& host) {
    if (!is_z333(host.group())) throw unsupported_group_error("copy expansion is defined for Z_3^3");
    if (host.cardinality() > 16) throw structural_error("host cardinality must be <= 16");
    const CubeTables& t = tables();
    CopyExpansion out;
    for (int e = 0; e < kOrder; ++e)
        for (int c = host.count(e); c > 0; --c) out.copy_elem.push_back(e);
    int n = static_cast<int>(out.copy_elem.size());
    std::vector<uint8_t> sum(size_t{1} << n, 0);
    for (uint32_t m = 1; m < (uint32_t{1} << n); ++m) {
        int b = std::countr_zero(m);
        sum[m] = static_cast<uint8_t>(t.add[sum[m & (m - 1)]][out.copy_elem[static_cast<size_t>(b)]]);
        if (sum[m] == 0) out.zero_sum_masks.push_back(m);
    }
    return out;
}

ZeroSumGraph build_zero_sum_graph(const GMultiSet& host) {
    CopyExpansion ex = zero_sum_subsets(host);
    ZeroSumGraph gr{host, std::move(ex.copy_elem), {}, {}, {}};
    const auto& zs = ex.zero_sum_masks;
    std::vector<char> has_partner(zs.size(), 0);
    for (size_t i = 0; i < zs.size(); ++i)
        for (size_t j = i + 1; j < zs.size(); ++j)
            if ((zs[i] & zs[j]) == 0) has_partner[i] = has_partner[j] = 1;
    for (size_t i = 0; i < zs.size(); ++i)
        if (has_partner[i]) gr.vertices.push_back(zs[i]);
    gr.adj.resize(gr.vertices.size());
    for (size_t i = 0; i < gr.vertices.size(); ++i)
        for (size_t j = i + 1; j < gr.vertices.size(); ++j)
            if ((gr.vertices[i] & gr.vertices[j]) == 0) {
                gr.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
                gr.adj[i].push_back(static_cast<int>(j));
                gr.adj[j].push_back(static_cast<int>(i));
            }
    return gr;
}

std::string to_string(TargetKind k) {
    switch (k) {
        case TargetKind::C1: return "C1";
        case TargetKind::C2: return "C2";
        case TargetKind::C3: return "C3";
    }
    throw structural_error("bad target kind");
}

TargetKind target_kind_from_string(const std::string& s) {
    if (s == "C1") return TargetKind::C1;
    if (s == "C2") return TargetKind::C2;
    if (s == "C3") return TargetKind::C3;
    throw structural_error("bad target kind: " + s);
}

uint32_t TargetGraph::adj_mask(int node) const {
    uint32_t m = 0;
    for (auto& [a, b] : edges) {
        if (a == node) m |= uint32_t{1} << b;
        if (b == node) m |= uint32_t{1} << a;
    }
    if (nodes[static_cast<size_t>(node)].loop) m |= uint32_t{1} << node;
    return m;
}

TargetGraph target_graph(TargetKind kind) {
    TargetGraph t;
    t.kind = kind;
    using Node = TargetGraph::Node;
    switch (kind) {
        case TargetKind::C1:
            // every completion point merged into one looped node; only the
            // second coordinate is pinned
            t.nodes.push_back(Node{"(*,1)", true, 0, 0, /*eq_coord=*/1, true, -1});
            break;
        case TargetKind::C2:
            t.nodes.push_back(Node{"(1,0)", false, 1, 0, 0, false, -1});    // 0
            t.nodes.push_back(Node{"(0,1)", false, 0, 1, 0, false, -1});    // 1
            t.nodes.push_back(Node{"(1,1)", false, 1, 1, 0, false, -1});    // 2
            t.nodes.push_back(Node{"(1,>=2)", true, 0, 0, 0, true, 1});     // 3: sum x = 1
            t.nodes.push_back(Node{"(>=2,1)", true, 0, 0, 1, true, 0});     // 4: sum y = 1
            t.edges = {{0, 1}, {1, 2}, {1, 3}, {0, 2}, {0, 4}};
            break;
        case TargetKind::C3:
            t.nodes.push_back(Node{"(1,0)", false, 1, 0, 0, true, -1});
            t.nodes.push_back(Node{"(-1,1)", false, -1, 1, 0, false, -1});
            t.nodes.push_back(Node{"(0,1)", false, 0, 1, 0, true, -1});
            t.nodes.push_back(Node{"(1,-1)", false, 1, -1, 0, false, -1});
            t.edges = {{0, 1}, {2, 3}};
            break;
    }
    return t;
}

}  // namespace zsf::cube
