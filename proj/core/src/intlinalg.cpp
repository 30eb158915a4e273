#include "zsf/intlinalg.hpp"

#include <algorithm>
#include <sstream>

namespace zsf::lin {

namespace {

Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

Int gcd_int(Int a, Int b) {
    a = abs_int(a);
    b = abs_int(b);
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::vector<Int> divisors_of(const Int& v) {
    std::vector<Int> small, large;
    for (Int i = 1; i * i <= v; ++i) {
        if (v % i == 0) {
            small.push_back(i);
            if (i * i != v) large.push_back(v / i);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

}  // namespace

IntMat IntMat::identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat IntMat::parse(std::string_view text) {
    std::vector<std::vector<Int>> rows;
    std::string row_buf;
    size_t pos = 0;
    auto flush_row = [&] {
        std::istringstream in(row_buf);
        std::vector<Int> row;
        std::string tok;
        while (in >> tok) row.emplace_back(tok);
        if (!row.empty()) rows.push_back(std::move(row));
        row_buf.clear();
    };
    while (pos <= text.size()) {
        char ch = pos < text.size() ? text[pos] : ';';
        if (ch == ';' || ch == '\n')
            flush_row();
        else
            row_buf.push_back(ch);
        ++pos;
    }
    if (rows.empty()) throw structural_error("empty matrix text");
    IntMat m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int r = 0; r < m.rows; ++r) {
        if (static_cast<int>(rows[r].size()) != m.cols)
            throw structural_error("ragged matrix text");
        for (int c = 0; c < m.cols; ++c) m.at(r, c) = rows[r][c];
    }
    return m;
}

std::string IntMat::format() const {
    std::ostringstream out;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (c) out << ' ';
            out << at(r, c);
        }
        out << '\n';
    }
    return out.str();
}

IntMat mul(const IntMat& x, const IntMat& y) {
    if (x.cols != y.rows) throw structural_error("matrix dimension mismatch in mul");
    IntMat out(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const Int& v = x.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < y.cols; ++j) out.at(i, j) += v * y.at(k, j);
        }
    return out;
}

int SnfDecomposition::diag_rank() const {
    int m = 0;
    int lim = std::min(d.rows, d.cols);
    while (m < lim && d.at(m, m) != 0) ++m;
    return m;
}

namespace {

// Row and column operations applied simultaneously to the working matrix and
// the transformation accumulators, keeping d = p * a0 * qinv and q = qinv^-1.
struct SnfWorker {
    IntMat d, p, q, qinv;

    explicit SnfWorker(const IntMat& a)
        : d(a),
          p(IntMat::identity(a.rows)),
          q(IntMat::identity(a.cols)),
          qinv(IntMat::identity(a.cols)) {}

    void row_swap(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < d.cols; ++c) std::swap(d.at(i, c), d.at(j, c));
        for (int c = 0; c < p.cols; ++c) std::swap(p.at(i, c), p.at(j, c));
    }
    void row_neg(int i) {
        for (int c = 0; c < d.cols; ++c) d.at(i, c) = -d.at(i, c);
        for (int c = 0; c < p.cols; ++c) p.at(i, c) = -p.at(i, c);
    }
    void row_addmul(int dst, int src, const Int& f) {  // row dst += f * row src
        for (int c = 0; c < d.cols; ++c) d.at(dst, c) += f * d.at(src, c);
        for (int c = 0; c < p.cols; ++c) p.at(dst, c) += f * p.at(src, c);
    }
    void col_swap(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < d.rows; ++r) std::swap(d.at(r, i), d.at(r, j));
        for (int r = 0; r < qinv.rows; ++r) std::swap(qinv.at(r, i), qinv.at(r, j));
        for (int c = 0; c < q.cols; ++c) std::swap(q.at(i, c), q.at(j, c));
    }
    void col_neg(int i) {
        for (int r = 0; r < d.rows; ++r) d.at(r, i) = -d.at(r, i);
        for (int r = 0; r < qinv.rows; ++r) qinv.at(r, i) = -qinv.at(r, i);
        for (int c = 0; c < q.cols; ++c) q.at(i, c) = -q.at(i, c);
    }
    void col_addmul(int dst, int src, const Int& f) {  // col dst += f * col src
        for (int r = 0; r < d.rows; ++r) d.at(r, dst) += f * d.at(r, src);
        for (int r = 0; r < qinv.rows; ++r) qinv.at(r, dst) += f * qinv.at(r, src);
        // inverse elementary op on q: row src -= f * row dst
        for (int c = 0; c < q.cols; ++c) q.at(src, c) -= f * q.at(dst, c);
    }

    // Diagonalize the trailing block starting at (t, t).
    void pivot_block(int t) {
        int lim = std::min(d.rows, d.cols);
        for (; t < lim; ++t) {
            // smallest nonzero |entry| in the block as the pivot
            int pi = -1, pj = -1;
            for (int i = t; i < d.rows; ++i)
                for (int j = t; j < d.cols; ++j)
                    if (d.at(i, j) != 0 &&
                        (pi < 0 || abs_int(d.at(i, j)) < abs_int(d.at(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi < 0) return;  // block is zero
            row_swap(t, pi);
            col_swap(t, pj);
            for (bool dirty = true; dirty;) {
                dirty = false;
                for (int i = t + 1; i < d.rows; ++i) {
                    if (d.at(i, t) == 0) continue;
                    Int f = d.at(i, t) / d.at(t, t);
                    row_addmul(i, t, -f);
                    if (d.at(i, t) != 0) {  // remainder becomes the smaller pivot
                        row_swap(t, i);
                        dirty = true;
                    }
                }
                for (int j = t + 1; j < d.cols; ++j) {
                    if (d.at(t, j) == 0) continue;
                    Int f = d.at(t, j) / d.at(t, t);
                    col_addmul(j, t, -f);
                    if (d.at(t, j) != 0) {
                        col_swap(t, j);
                        dirty = true;
                    }
                }
            }
            if (d.at(t, t) < 0) row_neg(t);
        }
    }

    void enforce_divisibility() {
        int lim = std::min(d.rows, d.cols);
        for (bool dirty = true; dirty;) {
            dirty = false;
            for (int i = 0; i + 1 < lim; ++i) {
                const Int& x = d.at(i, i);
                const Int& y = d.at(i + 1, i + 1);
                if (y == 0 && x != 0) continue;
                if (x == 0 && y != 0) {  // push zeros past nonzero entries
                    row_swap(i, i + 1);
                    col_swap(i, i + 1);
                    dirty = true;
                    continue;
                }
                if (x != 0 && y % x != 0) {
                    col_addmul(i, i + 1, 1);  // (i+1, i) entry becomes y
                    pivot_block(i);
                    dirty = true;
                }
            }
        }
    }
};

}  // namespace

SnfDecomposition smith_normal_form(const IntMat& a) {
    SnfWorker w(a);
    w.pivot_block(0);
    w.enforce_divisibility();
    return {std::move(w.p), std::move(w.q), std::move(w.qinv), std::move(w.d)};
}

namespace {

struct ReducedSystem {
    std::vector<Int> diag;   // nonzero d_ii
    std::vector<Int> bprime; // P*b, size = rows
    int m = 0;               // number of nonzero diagonal entries

    // Solvability of the diagonal part for modulus n: gcd(n, d_ii) | b'_i.
    bool diag_ok(const Int& n) const {
        for (int i = 0; i < m; ++i)
            if (bprime[static_cast<size_t>(i)] % gcd_int(n, diag[static_cast<size_t>(i)]) != 0)
                return false;
        return true;
    }
    // Tail rows (d_ii = 0): n | b'_j.
    bool tail_ok(const Int& n) const {
        for (size_t j = static_cast<size_t>(m); j < bprime.size(); ++j)
            if (bprime[j] % n != 0) return false;
        return true;
    }
};

ReducedSystem reduce(const IntMat& a, const IntMat& b) {
    if (b.cols != 1 || b.rows != a.rows)
        throw structural_error("b must be a column vector matching A's row count");
    SnfDecomposition s = smith_normal_form(a);
    ReducedSystem r;
    r.m = s.diag_rank();
    for (int i = 0; i < r.m; ++i) r.diag.push_back(s.diag(i));
    IntMat bp = mul(s.p, b);
    for (int i = 0; i < bp.rows; ++i) r.bprime.push_back(bp.at(i, 0));
    return r;
}

}  // namespace

bool SolvabilityPattern::contains(const Int& n) const {
    if (n < 1) throw structural_error("modulus must be >= 1");
    if (finite) return std::binary_search(moduli.begin(), moduli.end(), n);
    return std::binary_search(divisors.begin(), divisors.end(), gcd_int(n, d));
}

SolvabilityPattern solvability_pattern(const IntMat& a, const IntMat& b) {
    ReducedSystem r = reduce(a, b);
    Int tail_gcd = 0;
    bool tail_nonzero = false;
    for (size_t j = static_cast<size_t>(r.m); j < r.bprime.size(); ++j)
        if (r.bprime[j] != 0) {
            tail_nonzero = true;
            tail_gcd = gcd_int(tail_gcd, r.bprime[j]);
        }
    SolvabilityPattern out;
    if (tail_nonzero) {
        out.finite = true;
        for (const Int& n : divisors_of(tail_gcd))
            if (r.diag_ok(n)) out.moduli.push_back(n);
        return out;
    }
    out.finite = false;
    out.d = r.m > 0 ? r.diag.back() : Int(1);
    for (const Int& t : divisors_of(out.d))
        if (r.diag_ok(t)) out.divisors.push_back(t);
    return out;
}

bool solvable_mod(const IntMat& a, const IntMat& b, const Int& n) {
    if (n < 1) throw structural_error("modulus must be >= 1");
    ReducedSystem r = reduce(a, b);
    return r.diag_ok(n) && r.tail_ok(n);
}

std::optional<Int> unsolvability_witness(const IntMat& a, const IntMat& b) {
    if (b.cols != 1 || b.rows != a.rows)
        throw structural_error("b must be a column vector matching A's row count");
    int cols = a.cols;
    // basis[j], when present, has its leading nonzero coefficient at column j
    std::vector<std::vector<Int>> basis(static_cast<size_t>(cols));
    Int witness = 0;
    for (int r = 0; r < a.rows; ++r) {
        std::vector<Int> row(static_cast<size_t>(cols) + 1);
        for (int c = 0; c < cols; ++c) row[static_cast<size_t>(c)] = a.at(r, c);
        row.back() = b.at(r, 0);
        int lead = 0;
        while (lead < cols) {
            if (row[static_cast<size_t>(lead)] == 0) {
                ++lead;
                continue;
            }
            auto& piv = basis[static_cast<size_t>(lead)];
            if (piv.empty()) break;
            // row := (p/g)*row - (c/g)*piv keeps entries integral and the row
            // an integer combination of original rows (rows are never divided)
            Int c = row[static_cast<size_t>(lead)];
            Int p = piv[static_cast<size_t>(lead)];
            Int g = gcd_int(c, p);
            Int fr = p / g, fp = c / g;
            for (size_t i = 0; i < row.size(); ++i) row[i] = fr * row[i] - fp * piv[i];
        }
        if (lead < cols)
            basis[static_cast<size_t>(lead)] = std::move(row);
        else if (row.back() != 0)
            witness = gcd_int(witness, row.back());
    }
    if (witness == 0) return std::nullopt;
    return witness;
}

bool is_2_3_smooth(Int v) {
    v = abs_int(v);
    if (v == 0) return false;
    while (v % 2 == 0) v /= 2;
    while (v % 3 == 0) v /= 3;
    return v == 1;
}

bool interval_solvable(const SolvabilityPattern& pattern, long long z) {
    if (z < 1) throw structural_error("z must be >= 1");
    for (long long n = z; n <= 2 * z; ++n)
        if (pattern.contains(Int(n))) return true;
    return false;
}

}  // namespace zsf::lin
