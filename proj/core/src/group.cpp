#include "zsf/group.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace zsf {

namespace {

int parse_int(std::string_view s) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw structural_error("bad integer: '" + std::string(s) + "'");
    return v;
}

}  // namespace

GroupSpec::GroupSpec(std::vector<int> invariant_factors) : factors_(std::move(invariant_factors)) {
    if (factors_.empty()) throw structural_error("group needs at least one invariant factor");
    for (size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i] < 2) throw structural_error("invariant factors must be >= 2");
        if (i > 0 && factors_[i] % factors_[i - 1] != 0)
            throw structural_error("invariant factors must form a divisibility chain");
    }
    strides_.resize(factors_.size());
    for (size_t i = 0; i < factors_.size(); ++i) {
        strides_[i] = static_cast<int>(order_);
        order_ *= factors_[i];
        if (order_ > (1LL << 40)) throw structural_error("group order out of supported range");
    }
}

GroupSpec GroupSpec::elementary(int k, int ell) {
    if (k < 2 || ell < 1) throw structural_error("elementary group needs k >= 2, ell >= 1");
    return GroupSpec(std::vector<int>(static_cast<size_t>(ell), k));
}

GroupSpec GroupSpec::parse(std::string_view text) {
    if (auto caret = text.find('^'); caret != std::string_view::npos) {
        return elementary(parse_int(text.substr(0, caret)), parse_int(text.substr(caret + 1)));
    }
    std::vector<int> factors;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        factors.push_back(parse_int(text.substr(pos, comma - pos)));
        pos = comma + 1;
        if (comma == text.size()) break;
    }
    return GroupSpec(std::move(factors));
}

bool GroupSpec::is_elementary(int* k_out) const {
    for (int f : factors_)
        if (f != factors_[0]) return false;
    if (k_out) *k_out = factors_[0];
    return true;
}

int GroupSpec::index_of(std::span<const int> coords) const {
    if (coords.size() != factors_.size())
        throw structural_error("coordinate count does not match group rank");
    long long idx = 0;
    for (size_t i = 0; i < factors_.size(); ++i) {
        int c = coords[i] % factors_[i];
        if (c < 0) c += factors_[i];
        idx += static_cast<long long>(c) * strides_[i];
    }
    return static_cast<int>(idx);
}

std::vector<int> GroupSpec::coords_of(int index) const {
    std::vector<int> coords(factors_.size());
    for (size_t i = 0; i < factors_.size(); ++i) {
        coords[i] = index % factors_[i];
        index /= factors_[i];
    }
    return coords;
}

int GroupSpec::add(int a, int b) const {
    int out = 0;
    for (size_t i = 0; i < factors_.size(); ++i) {
        int ca = (a / strides_[i]) % factors_[i];
        int cb = (b / strides_[i]) % factors_[i];
        int c = ca + cb;
        if (c >= factors_[i]) c -= factors_[i];
        out += c * strides_[i];
    }
    return out;
}

int GroupSpec::neg(int a) const {
    int out = 0;
    for (size_t i = 0; i < factors_.size(); ++i) {
        int ca = (a / strides_[i]) % factors_[i];
        int c = ca == 0 ? 0 : factors_[i] - ca;
        out += c * strides_[i];
    }
    return out;
}

int GroupSpec::scale(int a, long long t) const {
    int out = 0;
    for (size_t i = 0; i < factors_.size(); ++i) {
        int ca = (a / strides_[i]) % factors_[i];
        long long c = (static_cast<long long>(ca) * t) % factors_[i];
        if (c < 0) c += factors_[i];
        out += static_cast<int>(c) * strides_[i];
    }
    return out;
}

int GroupSpec::element_order(int a) const {
    int ord = 1;
    int cur = a;
    while (cur != 0) {
        cur = add(cur, a);
        ++ord;
    }
    return ord;
}

std::string GroupSpec::format() const {
    std::ostringstream out;
    for (size_t i = 0; i < factors_.size(); ++i) {
        if (i) out << ',';
        out << factors_[i];
    }
    return out.str();
}

std::string GroupSpec::format_elem(int index) const {
    auto coords = coords_of(index);
    std::ostringstream out;
    out << '(';
    for (size_t i = 0; i < coords.size(); ++i) {
        if (i) out << ',';
        out << coords[i];
    }
    out << ')';
    return out.str();
}

GMultiSet::GMultiSet(GroupSpec group) : group_(std::move(group)) {
    counts_.assign(static_cast<size_t>(group_.order()), 0);
}

void GMultiSet::add(int elem_index, int mult) {
    if (elem_index < 0 || elem_index >= group_.order())
        throw structural_error("element index out of range for group");
    if (mult < 0 || counts_[elem_index] + mult < 0) throw structural_error("negative multiplicity");
    counts_[elem_index] += mult;
    card_ += mult;
}

void GMultiSet::add(const GElem& e, int mult) { add(group_.index_of(e.coords), mult); }

void GMultiSet::remove(int elem_index, int mult) {
    if (elem_index < 0 || elem_index >= group_.order() || counts_[elem_index] < mult)
        throw structural_error("removing more copies than present");
    counts_[elem_index] -= mult;
    card_ -= mult;
}

void GMultiSet::clear() {
    std::fill(counts_.begin(), counts_.end(), 0);
    card_ = 0;
}

std::vector<int> GMultiSet::support() const {
    std::vector<int> s;
    for (int i = 0; i < static_cast<int>(counts_.size()); ++i)
        if (counts_[i] > 0) s.push_back(i);
    return s;
}

bool operator<(const GMultiSet& a, const GMultiSet& b) {
    if (!(a.group_ == b.group_)) throw structural_error("comparing multisets over different groups");
    return a.counts_ < b.counts_;
}

GMultiSet GMultiSet::parse(const GroupSpec& group, std::string_view text) {
    GMultiSet ms(group);
    size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    };
    while (skip_ws(), pos < text.size()) {
        std::vector<int> coords;
        if (text[pos] == '(') {
            size_t close = text.find(')', pos);
            if (close == std::string_view::npos) throw structural_error("unterminated '(' in multiset");
            std::string_view body = text.substr(pos + 1, close - pos - 1);
            size_t p = 0;
            while (p <= body.size()) {
                size_t comma = body.find(',', p);
                if (comma == std::string_view::npos) comma = body.size();
                coords.push_back(parse_int(body.substr(p, comma - p)));
                p = comma + 1;
                if (comma == body.size()) break;
            }
            pos = close + 1;
        } else {
            size_t end = pos;
            while (end < text.size() && text[end] != ' ' && text[end] != '^') ++end;
            coords.push_back(parse_int(text.substr(pos, end - pos)));
            pos = end;
        }
        int mult = 1;
        if (pos < text.size() && text[pos] == '^') {
            size_t end = ++pos;
            while (end < text.size() && text[end] != ' ') ++end;
            mult = parse_int(text.substr(pos, end - pos));
            pos = end;
        }
        if (mult < 1) throw structural_error("multiplicity must be >= 1");
        ms.add(group.index_of(coords), mult);
    }
    return ms;
}

std::string GMultiSet::format() const {
    std::ostringstream out;
    bool first = true;
    for (int i = 0; i < static_cast<int>(counts_.size()); ++i) {
        if (counts_[i] == 0) continue;
        if (!first) out << ' ';
        first = false;
        out << group_.format_elem(i);
        if (counts_[i] > 1) out << '^' << counts_[i];
    }
    if (first) out << "{}";
    return out.str();
}

GElem sum_of(const GMultiSet& ms) {
    const GroupSpec& g = ms.group();
    int acc = 0;
    for (int i = 0; i < static_cast<int>(g.order()); ++i) {
        int c = ms.count(i);
        if (c) acc = g.add(acc, g.scale(i, c));
    }
    return GElem{g.coords_of(acc)};
}

int m_of(const GroupSpec& g) {
    int v = 1;
    for (int f : g.invariant_factors()) v += f - 1;
    return v;
}

bool is_z333(const GroupSpec& g) {
    return g.invariant_factors() == std::vector<int>{3, 3, 3};
}

std::string to_grid(const GMultiSet& ms) {
    if (!is_z333(ms.group())) throw unsupported_group_error("grid format is defined for Z_3^3");
    std::ostringstream out;
    for (int y = 2; y >= 0; --y) {
        for (int z = 0; z < 3; ++z) {
            if (z) out << "  ";
            for (int x = 0; x < 3; ++x) {
                int c = ms.count(x + 3 * y + 9 * z);
                if (c == 0)
                    out << '.';
                else if (c <= 9)
                    out << static_cast<char>('0' + c);
                else
                    throw structural_error("grid format supports multiplicities up to 9");
            }
        }
        out << '\n';
    }
    return out.str();
}

GMultiSet from_grid(std::string_view text) {
    GMultiSet ms(GroupSpec::elementary(3, 3));
    std::vector<std::string> lines;
    size_t pos = 0;
    while (pos < text.size() && lines.size() < 3) {
        size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        lines.emplace_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    if (lines.size() != 3) throw structural_error("grid needs three lines");
    for (int row = 0; row < 3; ++row) {
        int y = 2 - row;
        std::string_view line = lines[row];
        int z = 0, x = 0;
        for (char ch : line) {
            if (ch == ' ' || ch == '\t') continue;
            if (x == 3) {
                x = 0;
                ++z;
            }
            if (z >= 3) throw structural_error("grid row has too many cells");
            if (ch != '.') {
                if (ch < '1' || ch > '9') throw structural_error("bad grid cell");
                ms.add(x + 3 * y + 9 * z, ch - '0');
            }
            ++x;
        }
        if (x != 3 || z != 2) throw structural_error("grid row has too few cells");
    }
    return ms;
}

}  // namespace zsf
