#include "zsf/rank2.hpp"

#include <algorithm>
#include <numeric>

#include "zsf/zerosum.hpp"

namespace zsf::rank2 {

namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

int require_rank2(const GroupSpec& g) {
    const auto& f = g.invariant_factors();
    if (f.size() != 2 || f[0] != f[1])
        throw structural_error("expected a group of the form Z_n x Z_n");
    return f[0];
}

struct NodeCounter {
    long long nodes = 0;
    long long limit;
    explicit NodeCounter(const SearchBudget& b) : limit(b.node_limit) {}
    void tick() {
        if (++nodes > limit) throw budget_error("search node budget exceeded");
    }
};

// Depth-first search for a zero-sum free multiset of cardinality `target`
// with all multiplicities <= max_mult; returns true if one exists.
struct PropertyBSearch {
    GroupSpec g;
    int order, target, max_mult;
    std::vector<int> counts;
    NodeCounter nc;

    PropertyBSearch(const GroupSpec& gs, int t, int mm, const SearchBudget& b)
        : g(gs), order(static_cast<int>(gs.order())), target(t), max_mult(mm),
          counts(static_cast<size_t>(order), 0), nc(b) {}

    bool dfs(int start, int card, const SumSet& r) {
        nc.tick();
        for (int e = start; e < order; ++e) {
            if (counts[e] >= max_mult) continue;
            SumSet nr = r.grown(e);
            if (nr.contains(0)) continue;
            if (card + 1 + (order - 1 - nr.size()) < target) continue;
            if (card + 1 == target) return true;
            ++counts[e];
            if (dfs(e, card + 1, nr)) return true;
            --counts[e];
        }
        return false;
    }
};

}  // namespace

bool property_b(int n, const SearchBudget& budget) {
    if (n < 2) throw structural_error("n must be >= 2");
    if (n <= 3) return true;  // a counterexample needs multiplicities <= n-3 <= 0
    GroupSpec g(std::vector<int>{n, n});
    PropertyBSearch s(g, 2 * n - 2, n - 3, budget);
    SumSet r(g);
    if (is_prime(n)) {
        // GL_2 acts transitively on nonzero vectors, so any counterexample has
        // one whose lowest-index element is element 1.
        s.counts[1] = 1;
        return !s.dfs(1, 1, r.grown(1));
    }
    return !s.dfs(1, 0, r);
}

namespace {

// Shared scan over multisets of Z_n in non-decreasing element order.
// visit(counts, card, zsf) is called at every node; returns false to abort.
template <typename Visit>
bool scan_z_n(int n, int first_elem, int max_card, bool zsf_only, const Visit& visit) {
    GroupSpec g(std::vector<int>{n});
    std::vector<int> counts(static_cast<size_t>(n), 0);
    SumSet root(g);
    auto dfs = [&](auto&& self, int start, int card, const SumSet& r) -> bool {
        if (card == max_card) return true;
        for (int e = start; e < n; ++e) {
            SumSet nr = r.grown(e);
            if (zsf_only && nr.contains(0)) continue;
            ++counts[e];
            bool ok = visit(counts, card + 1, !nr.contains(0)) &&
                      self(self, e, card + 1, nr);
            --counts[e];
            if (!ok) return false;
        }
        return true;
    };
    return dfs(dfs, first_elem, 0, root);
}

}  // namespace

bool ben_check(int n) {
    if (n < 2 || n > 30) throw structural_error("ben_check supports 2 <= n <= 30");
    int threshold = (2 * n + 2) / 3;
    return scan_z_n(n, 1, n - 1, /*zsf_only=*/true,
                    [&](const std::vector<int>& counts, int card, bool) {
                        if (card < threshold) return true;
                        for (int a = 1; a < n; ++a)
                            if (counts[a] > 2 * card - n && std::gcd(a, n) == 1) return true;
                        return false;
                    });
}

bool corcd_check(int n) {
    if (n < 2 || n > 30) throw structural_error("corcd_check supports 2 <= n <= 30");
    int lower = (3 * n + 3) / 4;
    return scan_z_n(n, 0, n - 1, /*zsf_only=*/false,
                    [&](const std::vector<int>& counts, int card, bool zsf) {
                        if (card < lower) return true;
                        bool rhs = false;
                        if (counts[0] == 0) {
                            for (int alpha = 1; alpha < n && !rhs; ++alpha) {
                                if (std::gcd(alpha, n) != 1) continue;
                                long long total = 0;
                                for (int a = 1; a < n; ++a)
                                    total += static_cast<long long>(counts[a]) * ((alpha * a) % n);
                                rhs = total <= n - 1;
                            }
                        }
                        return rhs == zsf;
                    });
}

namespace {

struct Coord {
    int x, y;
};

// Membership of an unordered pair in the three reference completion-pair
// families over Z_n^2 (second coordinate displayed second).
bool in_c1(const Coord& a, const Coord& b, int) { return a.y == 1 && b.y == 1; }

bool in_c2(const Coord& a, const Coord& b, int n) {
    auto half = [&](const Coord& p, const Coord& q) {  // {(1,0),(x,1)} or {(x,1),(1-x,1)}
        if (p.x == 1 && p.y == 0 && q.y == 1) return true;
        if (q.x == 1 && q.y == 0 && p.y == 1) return true;
        return p.y == 1 && q.y == 1 && (p.x + q.x) % n == 1;
    };
    auto swap_xy = [](const Coord& p) { return Coord{p.y, p.x}; };
    return half(a, b) || half(swap_xy(a), swap_xy(b));
}

bool in_c3(const Coord& a, const Coord& b, int n) {
    auto is = [&](const Coord& p, int x, int y) {
        return p.x == ((x % n) + n) % n && p.y == ((y % n) + n) % n;
    };
    auto match = [&](const Coord& p, const Coord& q) {
        return (is(p, 1, 0) && is(q, 1, 0)) || (is(p, 1, 0) && is(q, -1, 1)) ||
               (is(p, 0, 1) && is(q, 0, 1)) || (is(p, 0, 1) && is(q, 1, -1));
    };
    return match(a, b) || match(b, a);
}

}  // namespace

CompletionReport completion_report(const GMultiSet& b) {
    const GroupSpec& g = b.group();
    int n = require_rank2(g);
    long long card = b.cardinality();
    if (card != 2 * n - 3 && card != 2 * n - 4)
        throw structural_error("completion_report needs |B| in {2n-3, 2n-4}");

    CompletionReport rep{b, n, {}, {}, CompletionClass::NONE, {}, false};
    int order = static_cast<int>(g.order());
    std::vector<char> sums = subset_sums(b);
    bool base_zsf = !sums[0];

    if (base_zsf) {
        for (int c = 1; c < order; ++c)
            if (!sums[static_cast<size_t>(g.neg(c))]) rep.singles.push_back(c);
        if (card == 2 * n - 4) {
            for (size_t i = 0; i < rep.singles.size(); ++i)
                for (size_t j = i; j < rep.singles.size(); ++j) {
                    int c1 = rep.singles[i], c2 = rep.singles[j];
                    int s = g.add(c1, c2);
                    if (s != 0 && !sums[static_cast<size_t>(g.neg(s))])
                        rep.pairs.emplace_back(c1, c2);
                }
        }
    }

    // exception shape: exactly two distinct elements, both multiplicity n-2,
    // together generating the group
    if (card == 2 * n - 4) {
        auto supp = b.support();
        if (supp.size() == 2 && b.count(supp[0]) == n - 2 && b.count(supp[1]) == n - 2) {
            auto u = g.coords_of(supp[0]);
            auto v = g.coords_of(supp[1]);
            int det = ((u[0] * v[1] - u[1] * v[0]) % n + n) % n;
            rep.exception = std::gcd(det, n) == 1;
        }
    }

    // classification: some invertible sigma maps every pair into the family
    std::vector<Coord> pc;
    for (auto& [c1, c2] : rep.pairs) {
        auto a = g.coords_of(c1);
        auto bb = g.coords_of(c2);
        pc.push_back({a[0], a[1]});
        pc.push_back({bb[0], bb[1]});
    }
    auto try_family = [&](auto member) {
        if (rep.pairs.empty()) {
            rep.sigma = {1, 0, 0, 1};
            return true;
        }
        for (int m00 = 0; m00 < n; ++m00)
            for (int m01 = 0; m01 < n; ++m01)
                for (int m10 = 0; m10 < n; ++m10)
                    for (int m11 = 0; m11 < n; ++m11) {
                        int det = ((m00 * m11 - m01 * m10) % n + n) % n;
                        if (std::gcd(det, n) != 1) continue;
                        bool ok = true;
                        for (size_t i = 0; i < pc.size() && ok; i += 2) {
                            Coord a{(m00 * pc[i].x + m01 * pc[i].y) % n,
                                    (m10 * pc[i].x + m11 * pc[i].y) % n};
                            Coord c{(m00 * pc[i + 1].x + m01 * pc[i + 1].y) % n,
                                    (m10 * pc[i + 1].x + m11 * pc[i + 1].y) % n};
                            ok = member(a, c, n);
                        }
                        if (ok) {
                            rep.sigma = {m00, m01, m10, m11};
                            return true;
                        }
                    }
        return false;
    };
    if (try_family(in_c1))
        rep.classification = CompletionClass::C1;
    else if (try_family(in_c2))
        rep.classification = CompletionClass::C2;
    else if (try_family(in_c3))
        rep.classification = CompletionClass::C3;
    return rep;
}

std::optional<std::pair<int, int>> find_hom_all_ones(const CompletionReport& report) {
    int n = report.n;
    const GroupSpec& g = report.base.group();
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            bool ok = true;
            for (int c : report.singles) {
                auto xy = g.coords_of(c);
                if ((u * xy[0] + v * xy[1]) % n != 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) return std::make_pair(u, v);
        }
    return std::nullopt;
}

std::optional<std::pair<int, int>> find_hom_zero_one(const CompletionReport& report) {
    int n = report.n;
    const GroupSpec& g = report.base.group();
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            bool ok = true;
            for (auto& [c1, c2] : report.pairs) {
                auto a = g.coords_of(c1);
                auto b = g.coords_of(c2);
                int f1 = (u * a[0] + v * a[1]) % n;
                int f2 = (u * b[0] + v * b[1]) % n;
                if (!((f1 == 0 || f1 == 1) && (f2 == 0 || f2 == 1) && (f1 == 1 || f2 == 1))) {
                    ok = false;
                    break;
                }
            }
            if (ok) return std::make_pair(u, v);
        }
    return std::nullopt;
}

}  // namespace zsf::rank2
