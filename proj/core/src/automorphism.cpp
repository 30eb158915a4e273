#include "zsf/automorphism.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>

namespace zsf {

namespace {

int det_mod(const std::vector<int>& m, int ell, int k) {
    if (ell == 1) return m[0] % k;
    if (ell == 2) return ((m[0] * m[3] - m[1] * m[2]) % k + k) % k;
    long long d = static_cast<long long>(m[0]) * (m[4] * m[8] - m[5] * m[7]) -
                  static_cast<long long>(m[1]) * (m[3] * m[8] - m[5] * m[6]) +
                  static_cast<long long>(m[2]) * (m[3] * m[7] - m[4] * m[6]);
    return static_cast<int>((d % k + k) % k);
}

struct PermTable {
    std::vector<uint16_t> perms;  // count x order, flattened
    long long count = 0;
    int order = 0;
};

// Permutation tables are cached for groups where they fit comfortably in
// memory (everything up to GL_3(F_3)); larger groups stream matrices instead.
std::shared_ptr<const PermTable> perm_table(const GroupSpec& g) {
    static std::mutex mu;
    static std::map<std::vector<int>, std::shared_ptr<const PermTable>> cache;
    std::scoped_lock lock(mu);
    auto it = cache.find(g.invariant_factors());
    if (it != cache.end()) return it->second;

    auto table = std::make_shared<PermTable>();
    table->order = static_cast<int>(g.order());
    for_each_automorphism(g, [&](const Automorphism& a) {
        for (int e = 0; e < table->order; ++e)
            table->perms.push_back(static_cast<uint16_t>(a.apply_index(g, e)));
        ++table->count;
    });
    cache.emplace(g.invariant_factors(), table);
    return table;
}

bool table_fits(const GroupSpec& g) {
    int k = 0;
    g.is_elementary(&k);
    int ell = g.rank();
    return automorphism_count(k, ell) * g.order() <= 2'000'000;
}

}  // namespace

int Automorphism::apply_index(const GroupSpec& g, int elem_index) const {
    auto coords = g.coords_of(elem_index);
    std::vector<int> out(static_cast<size_t>(ell));
    for (int r = 0; r < ell; ++r) {
        int acc = 0;
        for (int c = 0; c < ell; ++c) acc += matrix[r * ell + c] * coords[c];
        out[r] = acc % k;
    }
    return g.index_of(out);
}

GElem Automorphism::apply(const GroupSpec& g, const GElem& e) const {
    return GElem{g.coords_of(apply_index(g, g.index_of(e.coords)))};
}

void require_automorphism_support(const GroupSpec& g) {
    int k = 0;
    if (!g.is_elementary(&k))
        throw unsupported_group_error("automorphisms are supported for elementary abelian groups only");
    if (k != 2 && k != 3 && k != 5)
        throw unsupported_group_error("automorphisms are supported for prime k in {2,3,5}");
    if (g.rank() > 3) throw unsupported_group_error("automorphisms are supported for rank <= 3");
}

void for_each_automorphism(const GroupSpec& g, const std::function<void(const Automorphism&)>& fn) {
    require_automorphism_support(g);
    int k = g.invariant_factors()[0];
    int ell = g.rank();
    int cells = ell * ell;
    Automorphism a{k, ell, std::vector<int>(static_cast<size_t>(cells), 0)};
    while (true) {
        if (det_mod(a.matrix, ell, k) != 0) fn(a);
        int i = cells - 1;
        while (i >= 0 && a.matrix[i] == k - 1) a.matrix[i--] = 0;
        if (i < 0) break;
        ++a.matrix[i];
    }
}

std::vector<Automorphism> automorphisms(const GroupSpec& g) {
    std::vector<Automorphism> out;
    for_each_automorphism(g, [&](const Automorphism& a) { out.push_back(a); });
    return out;
}

long long automorphism_count(int k, int ell) {
    long long kl = 1;
    for (int i = 0; i < ell; ++i) kl *= k;
    long long n = 1, ki = 1;
    for (int i = 0; i < ell; ++i) {
        n *= kl - ki;
        ki *= k;
    }
    return n;
}

GMultiSet apply(const Automorphism& sigma, const GMultiSet& ms) {
    const GroupSpec& g = ms.group();
    GMultiSet out(g);
    for (int e = 0; e < static_cast<int>(g.order()); ++e)
        if (int c = ms.count(e); c > 0) out.add(sigma.apply_index(g, e), c);
    return out;
}

std::vector<int> canonical_counts(const GroupSpec& g, const std::vector<int>& counts) {
    require_automorphism_support(g);
    int order = static_cast<int>(g.order());
    std::vector<int> best = counts;
    std::vector<int> image(static_cast<size_t>(order));
    if (table_fits(g)) {
        auto table = perm_table(g);
        const uint16_t* p = table->perms.data();
        for (long long a = 0; a < table->count; ++a, p += order) {
            std::fill(image.begin(), image.end(), 0);
            for (int e = 0; e < order; ++e)
                if (counts[e]) image[p[e]] = counts[e];
            if (image < best) best = image;
        }
    } else {
        for_each_automorphism(g, [&](const Automorphism& a) {
            std::fill(image.begin(), image.end(), 0);
            for (int e = 0; e < order; ++e)
                if (counts[e]) image[a.apply_index(g, e)] = counts[e];
            if (image < best) best = image;
        });
    }
    return best;
}

GMultiSet canonicalize(const GMultiSet& ms) {
    auto best = canonical_counts(ms.group(), ms.counts());
    GMultiSet out(ms.group());
    for (int e = 0; e < static_cast<int>(best.size()); ++e)
        if (best[e]) out.add(e, best[e]);
    return out;
}

}  // namespace zsf
