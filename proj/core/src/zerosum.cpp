#include "zsf/zerosum.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <unordered_map>

namespace zsf {

namespace {

struct Bits {
    std::vector<uint64_t> w;
    explicit Bits(int n) : w(static_cast<size_t>((n + 63) / 64), 0) {}
    bool test(int i) const { return (w[static_cast<size_t>(i) >> 6] >> (i & 63)) & 1; }
    void set(int i) { w[static_cast<size_t>(i) >> 6] |= uint64_t{1} << (i & 63); }
    int count() const {
        int c = 0;
        for (uint64_t x : w) c += std::popcount(x);
        return c;
    }
};

template <typename Fn>
void for_each_bit(const Bits& b, Fn fn) {
    for (size_t wi = 0; wi < b.w.size(); ++wi) {
        uint64_t x = b.w[wi];
        while (x) {
            fn(static_cast<int>(wi * 64) + std::countr_zero(x));
            x &= x - 1;
        }
    }
}

// Group arithmetic with a cached addition table for small groups; the searches
// below spend most of their time translating reachable-sum sets.
struct GroupCtx {
    const GroupSpec& g;
    int order;
    std::vector<int> addtab;

    explicit GroupCtx(const GroupSpec& gs) : g(gs), order(static_cast<int>(gs.order())) {
        if (gs.order() > (1 << 16)) throw structural_error("group too large for exhaustive search");
        if (order <= 1024) {
            addtab.resize(static_cast<size_t>(order) * order);
            for (int a = 0; a < order; ++a)
                for (int b = 0; b <= a; ++b)
                    addtab[static_cast<size_t>(a) * order + b] =
                        addtab[static_cast<size_t>(b) * order + a] = g.add(a, b);
        }
    }

    int add(int a, int b) const {
        return addtab.empty() ? g.add(a, b) : addtab[static_cast<size_t>(a) * order + b];
    }

    // Reachable sums after adding one copy of e to a multiset with reachable
    // set r: r | (r + e) | {e}.
    Bits grow(const Bits& r, int e) const {
        Bits out = r;
        for_each_bit(r, [&](int s) { out.set(add(s, e)); });
        out.set(e);
        return out;
    }
};

struct NodeCounter {
    long long nodes = 0;
    long long limit;
    explicit NodeCounter(const SearchBudget& b) : limit(b.node_limit) {}
    void tick() {
        if (++nodes > limit) throw budget_error("search node budget exceeded");
    }
};

// Exact maximum-disjoint-zero-sum packing. Branches on the lowest-index
// element still present: either some packing part is a minimal zero-sum
// through it, or no part uses it at all.
struct PackCtx {
    GroupCtx gc;
    std::vector<int> counts;
    std::unordered_map<std::string, int> memo;
    NodeCounter& nc;

    PackCtx(const GroupSpec& g, std::vector<int> c, NodeCounter& n)
        : gc(g), counts(std::move(c)), nc(n) {}

    std::string key(int cap) const {
        std::string k(counts.size() + 1, '\0');
        for (size_t i = 0; i < counts.size(); ++i) k[i] = static_cast<char>(counts[i]);
        k.back() = static_cast<char>(cap);
        return k;
    }

    // Visits every minimal zero-sum M with M <= counts containing the element
    // `anchor` (which must be the lowest-index present element). A partial set
    // that already contains a proper zero-sum cannot extend to a minimal one,
    // and a partial that first reaches sum zero is automatically minimal, so
    // no explicit minimality check is needed. cb receives the part's
    // multiplicity vector and returns true to stop; the callback may recurse
    // into best(), so the part lives on this call's stack.
    template <typename Cb>
    bool minimal_zero_sums(int anchor, const Cb& cb) {
        std::vector<int> part(static_cast<size_t>(gc.order), 0);
        if (anchor == 0) {
            part[0] = 1;
            return cb(part);
        }
        Bits r(gc.order);
        r.set(anchor);
        part[anchor] = 1;
        return extend_part(part, anchor, anchor, r, cb);
    }

    template <typename Cb>
    bool extend_part(std::vector<int>& part, int start, int sum, const Bits& r, const Cb& cb) {
        nc.tick();
        for (int x = start; x < gc.order; ++x) {
            if (counts[x] - part[x] <= 0) continue;
            int nsum = gc.add(sum, x);
            if (nsum == 0) {
                ++part[x];
                bool stop = cb(part);
                --part[x];
                if (stop) return true;
                continue;
            }
            Bits nr = gc.grow(r, x);
            if (nr.test(0)) continue;
            ++part[x];
            bool stop = extend_part(part, x, nsum, nr, cb);
            --part[x];
            if (stop) return true;
        }
        return false;
    }

    int best(int cap) {
        if (cap == 0) return 0;
        int e = 0;
        while (e < gc.order && counts[e] == 0) ++e;
        if (e == gc.order) return 0;
        std::string k = key(cap);
        if (auto it = memo.find(k); it != memo.end()) return it->second;
        nc.tick();

        int saved = counts[e];
        counts[e] = 0;
        int val = best(cap);
        counts[e] = saved;

        if (val < cap) {
            minimal_zero_sums(e, [&](const std::vector<int>& part) {
                for (int i = 0; i < gc.order; ++i) counts[i] -= part[i];
                int v = 1 + best(cap - 1);
                for (int i = 0; i < gc.order; ++i) counts[i] += part[i];
                val = std::max(val, v);
                return val >= cap;
            });
        }
        memo.emplace(std::move(k), val);
        return val;
    }
};

}  // namespace

namespace detail {
struct GroupTable {
    GroupCtx ctx;
    explicit GroupTable(const GroupSpec& g) : ctx(g) {}
};
}  // namespace detail

SumSet::SumSet(const GroupSpec& g)
    : table_(std::make_shared<detail::GroupTable>(g)),
      bits_(static_cast<size_t>((g.order() + 63) / 64), 0) {}

SumSet::~SumSet() = default;

bool SumSet::contains(int elem_index) const {
    return (bits_[static_cast<size_t>(elem_index) >> 6] >> (elem_index & 63)) & 1;
}

int SumSet::size() const {
    int c = 0;
    for (uint64_t w : bits_) c += std::popcount(w);
    return c;
}

SumSet SumSet::grown(int elem_index) const {
    SumSet out = *this;
    const GroupCtx& gc = table_->ctx;
    for (size_t wi = 0; wi < bits_.size(); ++wi) {
        uint64_t x = bits_[wi];
        while (x) {
            int s = static_cast<int>(wi * 64) + std::countr_zero(x);
            x &= x - 1;
            int t = gc.add(s, elem_index);
            out.bits_[static_cast<size_t>(t) >> 6] |= uint64_t{1} << (t & 63);
        }
    }
    out.bits_[static_cast<size_t>(elem_index) >> 6] |= uint64_t{1} << (elem_index & 63);
    return out;
}

bool is_zero_sum_free(const GMultiSet& ms) {
    GroupCtx gc(ms.group());
    Bits r(gc.order);
    for (int e = 0; e < gc.order; ++e) {
        for (int c = ms.count(e); c > 0; --c) {
            r = gc.grow(r, e);
            if (r.test(0)) return false;
        }
    }
    return true;
}

std::vector<char> subset_sums(const GMultiSet& ms) {
    GroupCtx gc(ms.group());
    Bits r(gc.order);
    for (int e = 0; e < gc.order; ++e)
        for (int c = ms.count(e); c > 0; --c) r = gc.grow(r, e);
    std::vector<char> out(static_cast<size_t>(gc.order), 0);
    for_each_bit(r, [&](int s) { out[s] = 1; });
    return out;
}

bool has_short_zero_sum(const GMultiSet& ms, int max_len) {
    if (max_len < 1) throw structural_error("max_len must be >= 1");
    GroupCtx gc(ms.group());
    std::vector<Bits> layer(static_cast<size_t>(max_len), Bits(gc.order));
    for (int e = 0; e < gc.order; ++e) {
        for (int c = ms.count(e); c > 0; --c) {
            for (int j = max_len - 1; j >= 1; --j)
                for_each_bit(layer[j - 1], [&](int s) { layer[j].set(gc.add(s, e)); });
            layer[0].set(e);
        }
    }
    for (const Bits& l : layer)
        if (l.test(0)) return true;
    return false;
}

int max_disjoint_zero_sums(const GMultiSet& ms, int cap) {
    if (cap < 1) throw structural_error("cap must be >= 1");
    NodeCounter nc(SearchBudget{});
    PackCtx ctx(ms.group(), ms.counts(), nc);
    return ctx.best(cap);
}

ZeroSumSystem find_disjoint_zero_sums(const GMultiSet& ms, int cap) {
    if (cap < 1) throw structural_error("cap must be >= 1");
    NodeCounter nc(SearchBudget{});
    PackCtx ctx(ms.group(), ms.counts(), nc);
    ZeroSumSystem sys{ms, {}};
    int remaining = ctx.best(cap);
    int cap_rem = cap;
    while (remaining > 0) {
        int e = 0;
        while (ctx.counts[e] == 0) ++e;
        int saved = ctx.counts[e];
        ctx.counts[e] = 0;
        if (ctx.best(cap_rem) == remaining) continue;  // no part uses e
        ctx.counts[e] = saved;
        std::vector<int> chosen;
        bool found = ctx.minimal_zero_sums(e, [&](const std::vector<int>& part) {
            for (int i = 0; i < ctx.gc.order; ++i) ctx.counts[i] -= part[i];
            if (ctx.best(cap_rem - 1) == remaining - 1) {
                chosen = part;  // counts stay reduced by the chosen part
                return true;
            }
            for (int i = 0; i < ctx.gc.order; ++i) ctx.counts[i] += part[i];
            return false;
        });
        if (!found) throw structural_error("internal error: packing reconstruction failed");
        GMultiSet p(ms.group());
        for (int i = 0; i < ctx.gc.order; ++i)
            if (chosen[i]) p.add(i, chosen[i]);
        sys.parts.push_back(std::move(p));
        --remaining;
        --cap_rem;
    }
    return sys;
}

namespace {

struct DavenportSearch {
    GroupCtx gc;
    NodeCounter nc;
    std::vector<int> counts;
    std::vector<int> best_counts;
    int best_card = 0;

    DavenportSearch(const GroupSpec& g, const SearchBudget& b)
        : gc(g), nc(b), counts(static_cast<size_t>(gc.order), 0),
          best_counts(counts) {}

    void record(int card) {
        if (card > best_card) {
            best_card = card;
            best_counts = counts;
        }
    }

    GMultiSet witness(const GroupSpec& g) const {
        GMultiSet w(g);
        for (int i = 0; i < gc.order; ++i)
            if (best_counts[i]) w.add(i, best_counts[i]);
        return w;
    }
};

// Longest zero-sum free multiset: depth-first extension in non-decreasing
// element order. A zero-sum free multiset's reachable-sum set grows strictly
// with each added element and avoids zero, which bounds the remaining depth.
void dfs_zsf(DavenportSearch& s, int start, int card, const Bits& r) {
    s.nc.tick();
    for (int e = start; e < s.gc.order; ++e) {
        Bits nr = s.gc.grow(r, e);
        if (nr.test(0)) continue;
        if (card + 1 + (s.gc.order - 1 - nr.count()) <= s.best_card) continue;
        ++s.counts[e];
        s.record(card + 1);
        dfs_zsf(s, e, card + 1, nr);
        --s.counts[e];
    }
}

// Longest multiset with no zero-sum of cardinality <= max_len. Layered DP:
// layer[j] holds sums reachable with exactly j+1 elements.
void dfs_short(DavenportSearch& s, int max_len, int start, int card,
               const std::vector<Bits>& layer) {
    s.nc.tick();
    for (int e = start; e < s.gc.order; ++e) {
        std::vector<Bits> nl = layer;
        for (int j = max_len - 1; j >= 1; --j)
            for_each_bit(layer[static_cast<size_t>(j) - 1],
                         [&](int sum) { nl[static_cast<size_t>(j)].set(s.gc.add(sum, e)); });
        nl[0].set(e);
        bool dead = false;
        for (const Bits& l : nl)
            if (l.test(0)) {
                dead = true;
                break;
            }
        if (dead) continue;
        ++s.counts[e];
        s.record(card + 1);
        dfs_short(s, max_len, e, card + 1, nl);
        --s.counts[e];
    }
}

// Longest multiset with fewer than m pairwise disjoint zero-sums.
void dfs_dm(DavenportSearch& s, PackCtx& pack, int m, int depth_cap, int start, int card) {
    s.nc.tick();
    for (int e = start; e < s.gc.order; ++e) {
        ++s.counts[e];
        ++pack.counts[e];
        if (pack.best(m) < m) {
            s.record(card + 1);
            if (card + 1 < depth_cap) dfs_dm(s, pack, m, depth_cap, e, card + 1);
        }
        --s.counts[e];
        --pack.counts[e];
    }
}

}  // namespace

DavenportResult davenport(const GroupSpec& g, const SearchBudget& budget) {
    DavenportSearch s(g, budget);
    Bits r(s.gc.order);
    dfs_zsf(s, 1, 0, r);
    return {s.best_card + 1, s.witness(g), s.nc.nodes};
}

DavenportResult davenport_m(const GroupSpec& g, int m, const SearchBudget& budget) {
    if (m < 1) throw structural_error("m must be >= 1");
    if (m == 1) return davenport(g, budget);
    int d = davenport(g, budget).value;
    DavenportSearch s(g, budget);
    PackCtx pack(g, std::vector<int>(static_cast<size_t>(s.gc.order), 0), s.nc);
    dfs_dm(s, pack, m, m * d - 1, 0, 0);
    return {s.best_card + 1, s.witness(g), s.nc.nodes};
}

DavenportResult davenport_short(const GroupSpec& g, int max_len, const SearchBudget& budget) {
    if (max_len < 1) throw structural_error("max_len must be >= 1");
    DavenportSearch s(g, budget);
    std::vector<Bits> layer(static_cast<size_t>(max_len), Bits(s.gc.order));
    dfs_short(s, max_len, 1, 0, layer);
    return {s.best_card + 1, s.witness(g), s.nc.nodes};
}

int c_const(int k, int ell, const SearchBudget& budget) {
    return davenport_short(GroupSpec::elementary(k, ell), k, budget).value - k;
}

}  // namespace zsf
