#include "zsf/refute.hpp"

#include <atomic>
#include <bit>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

namespace zsf::refute {

namespace {

// ---------------------------------------------------------------------------
// arithmetic backends for the incremental elimination
// ---------------------------------------------------------------------------

// signals that 128-bit elimination overflowed; the search restarts with
// arbitrary precision
struct overflow_signal {};

struct Ops128 {
    using T = __int128;
    static T from_ll(long long v) { return v; }
    static T mul(T a, T b) {
        T r;
        if (__builtin_mul_overflow(a, b, &r)) throw overflow_signal{};
        return r;
    }
    static T sub(T a, T b) {
        T r;
        if (__builtin_sub_overflow(a, b, &r)) throw overflow_signal{};
        return r;
    }
    static T gcd(T a, T b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b) {
            T t = a % b;
            a = b;
            b = t;
        }
        return a;
    }
    static Int to_int(T v) {
        bool neg = v < 0;
        unsigned __int128 u =
            neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
        Int r = static_cast<unsigned long long>(u >> 64);
        r <<= 64;
        r += static_cast<unsigned long long>(u);
        return neg ? Int(-r) : r;
    }
};

struct OpsInt {
    using T = Int;
    static T from_ll(long long v) { return Int(v); }
    static T mul(const T& a, const T& b) { return a * b; }
    static T sub(const T& a, const T& b) { return a - b; }
    static T gcd(const T& a, const T& b) { return boost::multiprecision::gcd(a, b); }
    static Int to_int(const T& v) { return v; }
};

template <typename T>
bool smooth23(T v) {
    if (v == 0) return false;
    if (v < 0) v = -v;
    while (v % 2 == 0) v /= 2;
    while (v % 3 == 0) v /= 3;
    return v == 1;
}

// ---------------------------------------------------------------------------
// 64-bit factoring (Miller-Rabin + Pollard rho) for the witness gcd
// ---------------------------------------------------------------------------

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    // deterministic Miller-Rabin bases for 64-bit integers
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

uint64_t pollard_rho(uint64_t n) {
    if ((n & 1) == 0) return 2;
    for (uint64_t c = 1;; ++c) {
        auto f = [&](uint64_t x) { return (mulmod_u64(x, x, n) + c) % n; };
        uint64_t x = 2, y = 2, d = 1;
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

// distinct prime factors; false when v does not fit in 64 bits (caller must
// then treat the test as inconclusive)
bool distinct_prime_factors(const Int& v, std::vector<uint64_t>& out) {
    if (v > Int(std::numeric_limits<uint64_t>::max())) return false;
    uint64_t n = static_cast<uint64_t>(v);
    out.clear();
    std::vector<uint64_t> stack{n};
    while (!stack.empty()) {
        uint64_t m = stack.back();
        stack.pop_back();
        if (m == 1) continue;
        if (is_prime_u64(m)) {
            if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
            continue;
        }
        uint64_t d = pollard_rho(m);
        stack.push_back(d);
        stack.push_back(m / d);
    }
    std::sort(out.begin(), out.end());
    return true;
}

// Incremental Gaussian elimination over F_p: exactly detects whether the rows
// added so far are inconsistent mod p. Supports the same mark/rollback
// discipline as the integer ledger.
class ModLedger {
public:
    ModLedger(uint64_t p, int cols) : p_(p), cols_(cols), basis_(static_cast<size_t>(cols)) {}

    void push_mark() { marks_.emplace_back(filled_.size(), bad_); }

    void pop_mark() {
        auto& [n, b] = marks_.back();
        while (filled_.size() > n) {
            basis_[static_cast<size_t>(filled_.back())].clear();
            filled_.pop_back();
        }
        bad_ = b;
        marks_.pop_back();
    }

    // Returns the column where the reduced row was inserted, `cols` when the
    // row reduced away entirely, or -1 when the ledger is (or became)
    // inconsistent. The return value is the row's "stop column": against any
    // extension of the current basis the same walk halts there again unless a
    // pivot appears at that exact column.
    int add(const std::vector<long long>& in) {
        if (bad_) return -1;  // already inconsistent until rollback
        std::vector<uint64_t> row(in.size());
        for (size_t i = 0; i < in.size(); ++i) {
            long long v = in[i] % static_cast<long long>(p_);
            if (v < 0) v += static_cast<long long>(p_);
            row[i] = static_cast<uint64_t>(v);
        }
        constexpr uint64_t kM31 = 0x7fffffffu;  // 2^31 - 1, division-free modulo
        auto m31 = [](uint64_t x) {             // x < 2^62
            x = (x & kM31) + (x >> 31);
            x = (x & kM31) + (x >> 31);
            return x >= kM31 ? x - kM31 : x;
        };
        const bool mers = p_ == kM31;
        const bool small = p_ < (uint64_t(1) << 32);  // products fit in uint64
        int lead = 0;
        while (lead < cols_) {
            if (row[static_cast<size_t>(lead)] == 0) {
                ++lead;
                continue;
            }
            auto& piv = basis_[static_cast<size_t>(lead)];
            if (piv.empty()) break;
            // basis rows are normalized to a leading 1 on insertion
            uint64_t f = row[static_cast<size_t>(lead)];
            if (mers) {
                for (size_t i = static_cast<size_t>(lead); i < row.size(); ++i)
                    row[i] = m31(row[i] + kM31 - m31(f * piv[i]));
            } else if (small) {
                for (size_t i = static_cast<size_t>(lead); i < row.size(); ++i) {
                    uint64_t v = row[i] + p_ - f * piv[i] % p_;
                    row[i] = v >= p_ ? v - p_ : v;
                }
            } else {
                for (size_t i = static_cast<size_t>(lead); i < row.size(); ++i)
                    row[i] = (row[i] + p_ - mulmod_u64(f, piv[i], p_)) % p_;
            }
        }
        if (lead < cols_) {
            uint64_t inv = powmod_u64(row[static_cast<size_t>(lead)], p_ - 2, p_);
            for (size_t i = static_cast<size_t>(lead); i < row.size(); ++i)
                row[i] = mers ? m31(row[i] * inv)
                              : (small ? row[i] * inv % p_ : mulmod_u64(row[i], inv, p_));
            basis_[static_cast<size_t>(lead)] = std::move(row);
            filled_.push_back(lead);
        } else if (row.back() != 0) {
            bad_ = true;
            return -1;
        }
        return lead;
    }

    bool inconsistent() const { return bad_; }

    bool has_pivot(int col) const { return !basis_[static_cast<size_t>(col)].empty(); }

private:
    uint64_t p_;
    int cols_;
    std::vector<std::vector<uint64_t>> basis_;
    std::vector<int> filled_;
    bool bad_ = false;
    std::vector<std::pair<size_t, bool>> marks_;
};

// Incremental version of lin::unsolvability_witness: equations are appended
// one at a time and the basis/witness state can be rolled back to a mark.
// Produces, at every point, exactly the state the batch elimination reaches
// after the same rows in the same order: basis rows are never modified after
// insertion, so rollback is just forgetting the newest ones.
template <typename Ops>
class Ledger {
    using T = typename Ops::T;

public:
    explicit Ledger(int cols) : cols_(cols), basis_(static_cast<size_t>(cols)) {}

    void push_mark() { marks_.emplace_back(filled_.size(), witness_); }

    void pop_mark() {
        auto& [n, w] = marks_.back();
        while (filled_.size() > n) {
            basis_[static_cast<size_t>(filled_.back())].clear();
            filled_.pop_back();
        }
        witness_ = w;
        marks_.pop_back();
    }

    void add(const std::vector<long long>& in) {
        std::vector<T> row(in.size());
        for (size_t i = 0; i < in.size(); ++i) row[i] = Ops::from_ll(in[i]);
        int lead = 0;
        while (lead < cols_) {
            if (row[static_cast<size_t>(lead)] == 0) {
                ++lead;
                continue;
            }
            auto& piv = basis_[static_cast<size_t>(lead)];
            if (piv.empty()) break;
            T c = row[static_cast<size_t>(lead)];
            T p = piv[static_cast<size_t>(lead)];
            T g = Ops::gcd(c, p);
            T fr = p / g, fp = c / g;
            for (size_t i = 0; i < row.size(); ++i)
                row[i] = Ops::sub(Ops::mul(fr, row[i]), Ops::mul(fp, piv[i]));
        }
        if (lead < cols_) {
            basis_[static_cast<size_t>(lead)] = std::move(row);
            filled_.push_back(lead);
        } else if (row.back() != 0) {
            witness_ = Ops::gcd(witness_, row.back());
        }
    }

    // nonzero and 2-3-smooth: the accumulated system is unsolvable for every
    // n > 1 coprime to 6
    bool refuted() const { return witness_ != 0 && smooth23(witness_); }

    Int witness_int() const { return Ops::to_int(witness_); }

private:
    int cols_;
    std::vector<std::vector<T>> basis_;
    std::vector<int> filled_;  // columns filled, in insertion order
    T witness_{0};
    std::vector<std::pair<size_t, T>> marks_;
};

// Combines the integer elimination (gcd witness) with lazily created mod-p
// ledgers. A system is refuted for every n > 1 coprime to 6 when the witness
// g is nonzero and, for each prime p > 3 dividing g, the system is
// inconsistent mod p: any solvable n must divide g, and solvability mod n
// implies solvability mod each prime factor of n.
// A nonzero witness requires the accumulated system to be inconsistent over
// the rationals, which (outside a vanishing set of unlucky minors) shows up
// as inconsistency modulo any fixed large prime. Screening candidate rows
// against this prime with machine-word arithmetic skips most of the exact
// elimination work; a missed kill only weakens pruning, never soundness.
constexpr uint64_t kScreenPrime = 2147483647;  // Mersenne prime 2^31 - 1

template <typename Ops>
class Suite {
public:
    explicit Suite(int cols) : cols_(cols), z_(cols), screen_(kScreenPrime, cols) {}

    void push_mark() {
        z_.push_mark();
        screen_.push_mark();
        row_marks_.push_back(rows_.size());
        for (auto& [p, l] : mods_) l.push_mark();
    }

    void pop_mark() {
        z_.pop_mark();
        screen_.pop_mark();
        rows_.resize(row_marks_.back());
        row_marks_.pop_back();
        for (auto& [p, l] : mods_) l.pop_mark();
    }

    void add(const std::vector<long long>& row) {
        z_.add(row);
        screen_.add(row);
        rows_.push_back(row);
        for (auto& [p, l] : mods_) l.add(row);
    }

    // true when adding `rows` provably cannot produce a nonzero witness: the
    // system stays consistent modulo the screening prime. On a reject, `stops`
    // (when given) receives each row's stop column; the verdict is unchanged
    // at any descendant basis until a pivot lands on one of those columns.
    bool screen_rejects(const std::vector<std::vector<long long>>& rows,
                        std::vector<uint16_t>* stops = nullptr) {
        screen_.push_mark();
        bool consistent = true;
        for (const auto& r : rows) {
            int stop = screen_.add(r);
            if (stop < 0) {
                consistent = false;
                break;
            }
            if (stops) stops->push_back(static_cast<uint16_t>(stop));
        }
        screen_.pop_mark();
        return consistent;
    }

    bool screen_bad() const { return screen_.inconsistent(); }
    bool screen_pivot(int col) const { return screen_.has_pivot(col); }

    bool refuted() {
        Int g = z_.witness_int();
        if (g == 0) return false;
        while (g % 2 == 0) g /= 2;
        while (g % 3 == 0) g /= 3;
        if (g == 1) return true;
        std::vector<uint64_t> primes;
        if (!distinct_prime_factors(g, primes)) return false;  // inconclusive
        for (uint64_t p : primes)
            if (!ledger_for(p).inconsistent()) return false;
        return true;
    }

    Int witness_int() const { return z_.witness_int(); }

private:
    ModLedger& ledger_for(uint64_t p) {
        auto it = mods_.find(p);
        if (it != mods_.end()) return it->second;
        // replay the rows added so far, snapshotting at the outstanding marks
        ModLedger& l = mods_.emplace(p, ModLedger(p, cols_)).first->second;
        size_t next_mark = 0;
        for (size_t r = 0; r <= rows_.size(); ++r) {
            while (next_mark < row_marks_.size() && row_marks_[next_mark] == r) {
                l.push_mark();
                ++next_mark;
            }
            if (r < rows_.size()) l.add(rows_[r]);
        }
        return l;
    }

    int cols_;
    Ledger<Ops> z_;
    ModLedger screen_;
    std::vector<std::vector<long long>> rows_;
    std::vector<size_t> row_marks_;
    std::map<uint64_t, ModLedger> mods_;
};

// ---------------------------------------------------------------------------
// equation schema
// ---------------------------------------------------------------------------

// Equation rows contributed by mapping vertex v onto `node`, given the
// assignments so far (phi[w] == -1 when unassigned). Row layout: columns
// 2i (x) and 2i+1 (y) per element copy i, then the right-hand side.
void emit_vertex_rows(const cube::ZeroSumGraph& g, const cube::TargetGraph& t, int v, int node,
                      const std::vector<int>& phi, std::vector<std::vector<long long>>& out) {
    size_t ncols = 2 * g.copy_elem.size();
    auto row_for = [&](uint32_t mask, int coord, long long rhs) {
        std::vector<long long> row(ncols + 1, 0);
        while (mask) {
            int i = std::countr_zero(mask);
            mask &= mask - 1;
            row[static_cast<size_t>(2 * i + coord)] = 1;
        }
        row.back() = rhs;
        return row;
    };
    const auto& nd = t.nodes[static_cast<size_t>(node)];
    uint32_t mask = g.vertices[static_cast<size_t>(v)];
    if (nd.merged) {
        out.push_back(row_for(mask, nd.eq_coord, 1));
    } else {
        out.push_back(row_for(mask, 0, nd.ax));
        out.push_back(row_for(mask, 1, nd.ay));
    }
    if (nd.loop && nd.loop_joint_coord >= 0)
        for (int w : g.adj[static_cast<size_t>(v)])
            if (phi[static_cast<size_t>(w)] == node)
                out.push_back(
                    row_for(mask | g.vertices[static_cast<size_t>(w)], nd.loop_joint_coord, 1));
}

std::string render_assignment(const std::vector<std::pair<int, int>>& assigned) {
    std::ostringstream os;
    for (size_t i = 0; i < assigned.size(); ++i)
        os << (i ? " " : "") << assigned[i].first << ":" << assigned[i].second;
    return os.str();
}

// ---------------------------------------------------------------------------
// search skeleton shared by prover and verifier
// ---------------------------------------------------------------------------

struct Skeleton {
    const cube::ZeroSumGraph& g;
    const cube::TargetGraph& t;
    int nv, nt;
    std::vector<uint32_t> node_adj;  // allowed-neighbor mask per target node
    std::vector<int> phi;
    std::vector<std::pair<int, int>> order;
    int assigned_count = 0;

    Skeleton(const cube::ZeroSumGraph& graph, const cube::TargetGraph& target)
        : g(graph), t(target), nv(static_cast<int>(graph.vertices.size())),
          nt(static_cast<int>(target.nodes.size())), phi(static_cast<size_t>(nv), -1) {
        for (int n = 0; n < nt; ++n) node_adj.push_back(target.adj_mask(n));
    }

    // branch vertex: fewest surviving images, ties by higher degree, then
    // lower id; -1 when every vertex is assigned
    int pick_vertex(const std::vector<uint8_t>& images) const {
        int best = -1, best_pc = 0;
        for (int v = 0; v < nv; ++v) {
            if (phi[static_cast<size_t>(v)] >= 0) continue;
            int pc = std::popcount(images[static_cast<size_t>(v)]);
            if (best == -1 || pc < best_pc ||
                (pc == best_pc &&
                 g.adj[static_cast<size_t>(v)].size() > g.adj[static_cast<size_t>(best)].size())) {
                best = v;
                best_pc = pc;
            }
        }
        return best;
    }

    std::vector<uint8_t> propagate(const std::vector<uint8_t>& images, int v, int node) const {
        std::vector<uint8_t> next = images;
        for (int w : g.adj[static_cast<size_t>(v)])
            if (phi[static_cast<size_t>(w)] < 0)
                next[static_cast<size_t>(w)] &=
                    static_cast<uint8_t>(node_adj[static_cast<size_t>(node)]);
        return next;
    }

    std::vector<uint8_t> root_images() const {
        return std::vector<uint8_t>(static_cast<size_t>(nv),
                                    static_cast<uint8_t>((1u << nt) - 1));
    }
};

template <typename Ops>
struct Prover : Skeleton {
    // Per-pair screening memo: a pair rejected by the screen at an ancestor
    // node stays rejected as long as its probe has the same row count (joint
    // rows only ever accumulate along a branch) and no basis pivot has landed
    // on any of its recorded stop columns. Frames are inherited downward only,
    // so a sibling never sees state from a popped branch.
    struct ScreenMemo {
        int16_t nrows = -1;  // -1: no cached reject
        std::array<uint16_t, 8> stops{};
    };
    using Frame = std::vector<ScreenMemo>;  // indexed by u * nt + c

    Suite<Ops> ledger;
    Certificate& cert;
    const HomRefuteOptions& opt;
    long long nodes = 0;
    bool failed = false;
    std::vector<std::vector<long long>> rows;  // scratch
    std::vector<uint16_t> stops;               // scratch

    Prover(const cube::ZeroSumGraph& graph, const cube::TargetGraph& target, Certificate& c,
           const HomRefuteOptions& o)
        : Skeleton(graph, target), ledger(2 * static_cast<int>(graph.copy_elem.size())),
          cert(c), opt(o) {}

    void take_event(const Event& e) {
        ++cert.event_count;
        if (e.kind == Event::Kind::Kill) ++cert.kill_count;
        if (opt.event_sink)
            opt.event_sink(e);
        else
            cert.events.push_back(e);
    }

    void fail_at(const std::vector<std::pair<int, int>>& assigned) {
        failed = true;
        std::string note = "unrefuted assignment: " + render_assignment(assigned);
        if (opt.exact_on_failed) {
            auto [a, b] = assignment_system(g, t, assigned);
            auto pat = lin::solvability_pattern(a, b);
            bool coprime6_solvable = false;
            if (pat.finite) {
                for (const Int& m : pat.moduli)
                    if (m > 3 && boost::multiprecision::gcd(m, Int(6)) == 1)
                        coprime6_solvable = true;
            } else {
                // any divisor t of d with gcd(t, 6) = 1 is hit by n = t * p
                // for a large prime p, and such n is > 3 and coprime to 6
                for (const Int& tv : pat.divisors)
                    if (boost::multiprecision::gcd(tv, Int(6)) == 1) coprime6_solvable = true;
            }
            note += coprime6_solvable ? "; exact check: solvable for some n > 3 coprime to 6"
                                      : "; exact check: unsolvable for every n > 3 coprime to 6";
        }
        cert.note = note;
    }

    void dfs(std::vector<uint8_t> im, Frame frame) {
        if (++nodes > opt.node_limit) throw budget_error("homomorphism search budget exceeded");
        const bool sbad = ledger.screen_bad();
        const int scols = 2 * static_cast<int>(g.copy_elem.size());
        // kill scan: drop every image the current equations already refute
        for (int u = 0; u < nv; ++u) {
            if (phi[static_cast<size_t>(u)] >= 0) continue;
            uint8_t alive = im[static_cast<size_t>(u)];
            while (alive) {
                int c = std::countr_zero(static_cast<uint32_t>(alive));
                alive &= static_cast<uint8_t>(alive - 1);
                rows.clear();
                emit_vertex_rows(g, t, u, c, phi, rows);
                ScreenMemo& memo = frame[static_cast<size_t>(u * nt + c)];
                if (!sbad && memo.nrows == static_cast<int16_t>(rows.size())) {
                    bool untouched = true;
                    for (int i = 0; i < memo.nrows && untouched; ++i)
                        if (memo.stops[static_cast<size_t>(i)] < scols &&
                            ledger.screen_pivot(memo.stops[static_cast<size_t>(i)]))
                            untouched = false;
                    if (untouched) continue;  // ancestor reject still in force
                }
                memo.nrows = -1;
                if (!sbad) {
                    stops.clear();
                    if (ledger.screen_rejects(rows, &stops)) {
                        if (stops.size() <= memo.stops.size()) {
                            memo.nrows = static_cast<int16_t>(stops.size());
                            std::copy(stops.begin(), stops.end(), memo.stops.begin());
                        }
                        continue;
                    }
                }
                ledger.push_mark();
                for (const auto& r : rows) ledger.add(r);
                bool dead = ledger.refuted();
                Int w = dead ? ledger.witness_int() : Int(0);
                ledger.pop_mark();
                if (dead) {
                    take_event(Event{Event::Kind::Kill, u, c, std::move(w)});
                    im[static_cast<size_t>(u)] &= static_cast<uint8_t>(~(1u << c));
                }
            }
        }
        int v = pick_vertex(im);
        if (v < 0) {
            // every vertex assigned; reaching here means the last assignment
            // survived its kill test, so no refutation exists on this path
            fail_at(order);
            return;
        }
        uint8_t alive = im[static_cast<size_t>(v)];
        while (alive && !failed) {
            int c = std::countr_zero(static_cast<uint32_t>(alive));
            alive &= static_cast<uint8_t>(alive - 1);
            take_event(Event{Event::Kind::Down, v, c, Int(0)});
            order.emplace_back(v, c);
            ++assigned_count;
            ledger.push_mark();
            rows.clear();
            emit_vertex_rows(g, t, v, c, phi, rows);
            phi[static_cast<size_t>(v)] = c;
            for (const auto& r : rows) ledger.add(r);
            dfs(propagate(im, v, c), frame);
            ledger.pop_mark();
            phi[static_cast<size_t>(v)] = -1;
            --assigned_count;
            order.pop_back();
        }
        if (!failed) take_event(Event{Event::Kind::Up, 0, 0, Int(0)});
    }
};

template <typename Ops>
bool run_prover(const cube::ZeroSumGraph& graph, const cube::TargetGraph& target,
                Certificate& cert, const HomRefuteOptions& opt) {
    Prover<Ops> p(graph, target, cert, opt);
    p.dfs(p.root_images(), typename Prover<Ops>::Frame(graph.vertices.size() *
                                                       target.nodes.size()));
    cert.status = p.failed ? CertStatus::FAILED : CertStatus::REFUTED;
    cert.nodes_visited = p.nodes;
    return !p.failed;
}

}  // namespace

std::string to_string(CertStatus s) { return s == CertStatus::REFUTED ? "REFUTED" : "FAILED"; }

std::vector<std::vector<Int>> equations_for_step(const cube::ZeroSumGraph& graph,
                                                 const cube::TargetGraph& target,
                                                 const std::vector<std::pair<int, int>>& assigned,
                                                 size_t step) {
    std::vector<int> phi(graph.vertices.size(), -1);
    for (size_t i = 0; i < step; ++i)
        phi[static_cast<size_t>(assigned[i].first)] = assigned[i].second;
    std::vector<std::vector<long long>> rows;
    emit_vertex_rows(graph, target, assigned[step].first, assigned[step].second, phi, rows);
    std::vector<std::vector<Int>> out;
    for (const auto& r : rows) out.emplace_back(r.begin(), r.end());
    return out;
}

std::pair<lin::IntMat, lin::IntMat> assignment_system(
    const cube::ZeroSumGraph& graph, const cube::TargetGraph& target,
    const std::vector<std::pair<int, int>>& assigned) {
    std::vector<std::vector<Int>> rows;
    for (size_t k = 0; k < assigned.size(); ++k)
        for (auto& r : equations_for_step(graph, target, assigned, k)) rows.push_back(std::move(r));
    int cols = 2 * static_cast<int>(graph.copy_elem.size());
    lin::IntMat a(static_cast<int>(rows.size()), cols);
    lin::IntMat b(static_cast<int>(rows.size()), 1);
    for (size_t r = 0; r < rows.size(); ++r) {
        for (int c = 0; c < cols; ++c) a.at(static_cast<int>(r), c) = rows[r][static_cast<size_t>(c)];
        b.at(static_cast<int>(r), 0) = rows[r].back();
    }
    return {std::move(a), std::move(b)};
}

Certificate hom_refute(const cube::ZeroSumGraph& graph, const cube::TargetGraph& target,
                       const HomRefuteOptions& opt) {
    Certificate cert;
    cert.target = target.kind;
    cert.host_counts = graph.host.counts();
    if (graph.vertices.empty()) {
        cert.status = CertStatus::FAILED;
        cert.note = "empty pairing graph: the vacuous homomorphism cannot be refuted";
        return cert;
    }
    if (opt.exact_arithmetic) {
        run_prover<OpsInt>(graph, target, cert, opt);
        return cert;
    }
    try {
        run_prover<Ops128>(graph, target, cert, opt);
    } catch (const overflow_signal&) {
        // 128-bit elimination overflowed; restart with arbitrary precision
        cert.events.clear();
        cert.event_count = cert.kill_count = 0;
        cert.note.clear();
        if (opt.restart_sink) opt.restart_sink();
        run_prover<OpsInt>(graph, target, cert, opt);
    }
    return cert;
}

// ---------------------------------------------------------------------------
// verification
// ---------------------------------------------------------------------------

namespace {

// Pull interface over an event stream; both the in-memory certificate and the
// streaming file reader provide one.
struct EventSource {
    virtual ~EventSource() = default;
    virtual std::optional<Event> next() = 0;
    // rewind to the first event; used to retry verification with exact
    // arithmetic after a 128-bit overflow
    virtual void reset() = 0;
};

struct VectorEventSource : EventSource {
    const std::vector<Event>& events;
    size_t i = 0;
    explicit VectorEventSource(const std::vector<Event>& e) : events(e) {}
    std::optional<Event> next() override {
        if (i >= events.size()) return std::nullopt;
        return events[i++];
    }
    void reset() override { i = 0; }
};

template <typename Ops>
struct Verifier : Skeleton {
    Suite<Ops> ledger;
    EventSource& source;
    std::optional<Event> pending;
    long long position = 0;  // events consumed, for error messages
    std::string err;
    std::vector<std::vector<long long>> rows;

    Verifier(const cube::ZeroSumGraph& graph, const cube::TargetGraph& target, EventSource& src)
        : Skeleton(graph, target), ledger(2 * static_cast<int>(graph.copy_elem.size())),
          source(src) {
        pending = source.next();
    }

    void advance() {
        ++position;
        pending = source.next();
    }

    bool fail(const std::string& msg) {
        err = "event " + std::to_string(position) + ": " + msg;
        return false;
    }

    bool walk(std::vector<uint8_t> im) {
        // verify and apply the recorded kills for this node
        while (pending && pending->kind == Event::Kind::Kill) {
            int u = pending->u, c = pending->c;
            if (u < 0 || u >= nv || c < 0 || c >= nt) return fail("kill out of range");
            if (phi[static_cast<size_t>(u)] >= 0) return fail("kill of an assigned vertex");
            if (!(im[static_cast<size_t>(u)] & (1u << c))) return fail("kill of a dead image");
            rows.clear();
            emit_vertex_rows(g, t, u, c, phi, rows);
            ledger.push_mark();
            for (const auto& r : rows) ledger.add(r);
            bool dead = ledger.refuted();
            Int w = ledger.witness_int();
            ledger.pop_mark();
            if (!dead) return fail("claimed kill is not refuted by the equations");
            if (w != pending->witness) return fail("recomputed witness differs");
            im[static_cast<size_t>(u)] &= static_cast<uint8_t>(~(1u << c));
            advance();
        }
        int v = pick_vertex(im);
        if (v < 0) return fail("complete unrefuted assignment: " + render_assignment(order));
        uint8_t alive = im[static_cast<size_t>(v)];
        while (alive) {
            int c = std::countr_zero(static_cast<uint32_t>(alive));
            alive &= static_cast<uint8_t>(alive - 1);
            if (!pending || pending->kind != Event::Kind::Down || pending->u != v ||
                pending->c != c)
                return fail("expected descent into vertex " + std::to_string(v) + " image " +
                            std::to_string(c));
            advance();
            order.emplace_back(v, c);
            ++assigned_count;
            ledger.push_mark();
            rows.clear();
            emit_vertex_rows(g, t, v, c, phi, rows);
            phi[static_cast<size_t>(v)] = c;
            for (const auto& r : rows) ledger.add(r);
            bool ok = walk(propagate(im, v, c));
            ledger.pop_mark();
            phi[static_cast<size_t>(v)] = -1;
            --assigned_count;
            order.pop_back();
            if (!ok) return false;
        }
        if (!pending || pending->kind != Event::Kind::Up) return fail("expected end of branch");
        advance();
        return true;
    }
};

bool verify_with_source(const std::vector<int>& host_counts, cube::TargetKind target_kind,
                        EventSource& source, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (host_counts.size() != 27) return fail("host counts must have 27 entries");
    GMultiSet host(GroupSpec::elementary(3, 3));
    for (int e = 0; e < 27; ++e)
        if (host_counts[static_cast<size_t>(e)] > 0)
            host.add(e, host_counts[static_cast<size_t>(e)]);
    cube::ZeroSumGraph graph = cube::build_zero_sum_graph(host);
    if (graph.vertices.empty()) return fail("empty pairing graph cannot be refuted");
    cube::TargetGraph target = cube::target_graph(target_kind);
    try {
        Verifier<Ops128> v(graph, target, source);
        if (!v.walk(v.root_images())) return fail(v.err);
        if (v.pending) return fail("trailing events after the root branch closed");
    } catch (const overflow_signal&) {
        // 128-bit elimination overflowed; replay with arbitrary precision
        source.reset();
        Verifier<OpsInt> v(graph, target, source);
        if (!v.walk(v.root_images())) return fail(v.err);
        if (v.pending) return fail("trailing events after the root branch closed");
    }
    return true;
}

}  // namespace

bool verify_certificate(const Certificate& cert, std::string* why) {
    if (cert.status != CertStatus::REFUTED) {
        if (why) *why = "status is not REFUTED";
        return false;
    }
    VectorEventSource source(cert.events);
    return verify_with_source(cert.host_counts, cert.target, source, why);
}

GMultiSet Certificate::host() const {
    GMultiSet ms(GroupSpec::elementary(3, 3));
    for (int e = 0; e < 27; ++e)
        if (host_counts[static_cast<size_t>(e)] > 0) ms.add(e, host_counts[static_cast<size_t>(e)]);
    return ms;
}

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

namespace {

void write_metadata(std::ostream& os, cube::TargetKind target, const std::vector<int>& counts) {
    os << "zsfcert 1\n";
    os << "group 3^3\n";
    os << "counts";
    for (int c : counts) os << " " << c;
    os << "\n";
    GMultiSet ms(GroupSpec::elementary(3, 3));
    for (int e = 0; e < 27 && e < static_cast<int>(counts.size()); ++e)
        if (counts[static_cast<size_t>(e)] > 0) ms.add(e, counts[static_cast<size_t>(e)]);
    std::istringstream grid(to_grid(ms));
    std::string line;
    while (std::getline(grid, line)) os << "# " << line << "\n";
    os << "target " << cube::to_string(target) << "\n";
}

void write_event(std::ostream& os, const Event& e) {
    switch (e.kind) {
        case Event::Kind::Kill: os << "kill " << e.u << ":" << e.c << " " << e.witness << "\n"; break;
        case Event::Kind::Down: os << "down " << e.u << ":" << e.c << "\n"; break;
        case Event::Kind::Up: os << "up\n"; break;
    }
}

void write_trailer(std::ostream& os, long long events, long long kills, long long nodes,
                   CertStatus status, const std::string& note) {
    os << "events " << events << "\n";
    os << "kills " << kills << "\n";
    os << "nodes " << nodes << "\n";
    os << "status " << to_string(status) << "\n";
    if (!note.empty()) os << "note " << note << "\n";
    os << "end\n";
}

std::pair<int, int> parse_pair(const std::string& tok) {
    auto colon = tok.find(':');
    if (colon == std::string::npos)
        throw structural_error("bad certificate: malformed pair " + tok);
    return {std::stoi(tok.substr(0, colon)), std::stoi(tok.substr(colon + 1))};
}

}  // namespace

std::string Certificate::serialize() const {
    std::ostringstream os;
    write_metadata(os, target, host_counts);
    for (const Event& e : events) write_event(os, e);
    write_trailer(os, event_count, kill_count, nodes_visited, status, note);
    return os.str();
}

Certificate Certificate::parse(const std::string& text) {
    Certificate cert;
    std::istringstream is(text);
    std::string line;
    auto bad = [](const std::string& what) -> structural_error {
        return structural_error("bad certificate: " + what);
    };
    if (!std::getline(is, line) || line != "zsfcert 1") throw bad("missing 'zsfcert 1' header");
    long long nevents = -1, nkills = -1;
    bool saw_end = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "group") {
            std::string gs;
            ls >> gs;
            if (gs != "3^3") throw bad("unsupported group " + gs);
        } else if (key == "counts") {
            int c;
            while (ls >> c) cert.host_counts.push_back(c);
            if (cert.host_counts.size() != 27) throw bad("counts must have 27 entries");
        } else if (key == "target") {
            std::string ts;
            ls >> ts;
            cert.target = cube::target_kind_from_string(ts);
        } else if (key == "status") {
            std::string ss;
            ls >> ss;
            if (ss == "REFUTED")
                cert.status = CertStatus::REFUTED;
            else if (ss == "FAILED")
                cert.status = CertStatus::FAILED;
            else
                throw bad("unknown status " + ss);
        } else if (key == "nodes") {
            ls >> cert.nodes_visited;
        } else if (key == "note") {
            std::getline(ls, cert.note);
            if (!cert.note.empty() && cert.note[0] == ' ') cert.note.erase(0, 1);
        } else if (key == "events") {
            ls >> nevents;
        } else if (key == "kills") {
            ls >> nkills;
        } else if (key == "kill") {
            std::string tok;
            Event e{Event::Kind::Kill, 0, 0, Int(0)};
            if (!(ls >> tok)) throw bad("malformed kill line");
            std::tie(e.u, e.c) = parse_pair(tok);
            if (!(ls >> e.witness)) throw bad("kill missing witness");
            cert.events.push_back(std::move(e));
        } else if (key == "down") {
            std::string tok;
            Event e{Event::Kind::Down, 0, 0, Int(0)};
            if (!(ls >> tok)) throw bad("malformed down line");
            std::tie(e.u, e.c) = parse_pair(tok);
            cert.events.push_back(std::move(e));
        } else if (key == "up") {
            cert.events.push_back(Event{Event::Kind::Up, 0, 0, Int(0)});
        } else if (key == "end") {
            saw_end = true;
            break;
        } else {
            throw bad("unknown key " + key);
        }
    }
    if (!saw_end) throw bad("missing end marker");
    cert.event_count = static_cast<long long>(cert.events.size());
    for (const Event& e : cert.events)
        if (e.kind == Event::Kind::Kill) ++cert.kill_count;
    if (nevents >= 0 && nevents != cert.event_count) throw bad("event count mismatch");
    if (nkills >= 0 && nkills != cert.kill_count) throw bad("kill count mismatch");
    return cert;
}

void Certificate::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw structural_error("cannot write " + path);
    out << serialize();
}

Certificate Certificate::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw structural_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

struct CertWriter::Impl {
    std::string path;
    cube::TargetKind target;
    std::vector<int> counts;
    std::ofstream out;
    long long kills = 0;
};

CertWriter::CertWriter(const std::string& path, cube::TargetKind target,
                       const std::vector<int>& host_counts)
    : impl_(std::make_unique<Impl>()) {
    impl_->path = path;
    impl_->target = target;
    impl_->counts = host_counts;
    impl_->out.open(path, std::ios::trunc);
    if (!impl_->out) throw structural_error("cannot write " + path);
    write_metadata(impl_->out, target, host_counts);
}

CertWriter::~CertWriter() = default;

void CertWriter::add_event(const Event& e) {
    write_event(impl_->out, e);
    if (e.kind == Event::Kind::Kill) ++impl_->kills;
    ++count_;
}

void CertWriter::finish(CertStatus status, long long nodes_visited, const std::string& note) {
    write_trailer(impl_->out, count_, impl_->kills, nodes_visited, status, note);
    impl_->out.flush();
    if (!impl_->out) throw structural_error("certificate write failed");
}

namespace {

// Streams events straight from a certificate file; metadata is parsed up
// front, the trailer when the event lines run out.
struct FileEventSource : EventSource {
    std::string path;
    std::ifstream in;
    std::vector<int> counts;
    cube::TargetKind target = cube::TargetKind::C1;
    std::optional<CertStatus> status;
    long long declared_events = -1;
    long long seen_events = 0;
    bool saw_end = false;
    std::optional<std::string> stashed;  // first event line met during metadata scan

    static bool is_event_line(const std::string& line) {
        return line.starts_with("kill ") || line.starts_with("down ") || line == "up";
    }

    explicit FileEventSource(const std::string& p) : path(p) { init(); }

    void init() {
        in.open(path);
        if (!in) throw structural_error("cannot read " + path);
        std::string line;
        if (!std::getline(in, line) || line != "zsfcert 1")
            throw structural_error("bad certificate: missing 'zsfcert 1' header");
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            if (is_event_line(line)) {
                stashed = line;
                break;
            }
            if (!consume_meta(line)) break;  // hit "end"
        }
    }

    void reset() override {
        in.close();
        in.clear();
        counts.clear();
        status.reset();
        declared_events = -1;
        seen_events = 0;
        saw_end = false;
        stashed.reset();
        init();
    }

    // returns false when the end marker was consumed
    bool consume_meta(const std::string& line) {
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "group") {
            std::string gs;
            ls >> gs;
            if (gs != "3^3") throw structural_error("bad certificate: unsupported group " + gs);
        } else if (key == "counts") {
            int c;
            while (ls >> c) counts.push_back(c);
        } else if (key == "target") {
            std::string ts;
            ls >> ts;
            target = cube::target_kind_from_string(ts);
        } else if (key == "events") {
            ls >> declared_events;
        } else if (key == "kills" || key == "nodes" || key == "note") {
            // informational
        } else if (key == "status") {
            std::string ss;
            ls >> ss;
            if (ss == "REFUTED")
                status = CertStatus::REFUTED;
            else if (ss == "FAILED")
                status = CertStatus::FAILED;
            else
                throw structural_error("bad certificate: unknown status " + ss);
        } else if (key == "end") {
            saw_end = true;
            return false;
        } else {
            throw structural_error("bad certificate: unknown key " + key);
        }
        return true;
    }

    std::optional<Event> next() override {
        std::string line;
        for (;;) {
            if (stashed) {
                line = *stashed;
                stashed.reset();
            } else if (saw_end || !std::getline(in, line)) {
                return std::nullopt;
            }
            if (line.empty() || line[0] == '#') continue;
            if (is_event_line(line)) {
                ++seen_events;
                std::istringstream ls(line);
                std::string key;
                ls >> key;
                if (key == "up") return Event{Event::Kind::Up, 0, 0, Int(0)};
                std::string tok;
                if (!(ls >> tok)) throw structural_error("bad certificate: malformed event line");
                auto [u, c] = parse_pair(tok);
                if (key == "down") return Event{Event::Kind::Down, u, c, Int(0)};
                Event e{Event::Kind::Kill, u, c, Int(0)};
                if (!(ls >> e.witness)) throw structural_error("bad certificate: kill missing witness");
                return e;
            }
            if (!consume_meta(line)) return std::nullopt;
        }
    }

    void drain() {
        while (next()) {
        }
    }
};

}  // namespace

bool verify_certificate_file(const std::string& path, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    FileEventSource source(path);
    if (!verify_with_source(source.counts, source.target, source, why)) return false;
    source.drain();  // reach the trailer for status and the declared count
    if (!source.saw_end) return fail("missing end marker");
    if (source.status != CertStatus::REFUTED) return fail("status is not REFUTED");
    if (source.declared_events >= 0 && source.declared_events != source.seen_events)
        return fail("declared event count does not match the stream");
    return true;
}

// ---------------------------------------------------------------------------
// drivers
// ---------------------------------------------------------------------------

NoFunc2Summary prove_nofunc2(int workers, const std::string& out_dir,
                             const HomRefuteOptions& opt) {
    NoFunc2Summary summary;
    summary.candidates = cube::enumerate_candidates(13, 2);
    if (!out_dir.empty()) std::filesystem::create_directories(out_dir);

    const cube::TargetKind kinds[] = {cube::TargetKind::C1, cube::TargetKind::C2,
                                      cube::TargetKind::C3};
    std::vector<NoFunc2Job> jobs;
    for (size_t i = 0; i < summary.candidates.size(); ++i)
        for (auto k : kinds) {
            NoFunc2Job j;
            j.candidate = static_cast<int>(i);
            j.target = k;
            jobs.push_back(j);
        }

    std::atomic<size_t> cursor{0};
    auto run = [&]() {
        for (;;) {
            size_t i = cursor.fetch_add(1);
            if (i >= jobs.size()) return;
            NoFunc2Job& job = jobs[i];
            const GMultiSet& cand = summary.candidates[static_cast<size_t>(job.candidate)];
            auto graph = cube::build_zero_sum_graph(cand);
            auto target = cube::target_graph(job.target);
            auto t0 = std::chrono::steady_clock::now();
            HomRefuteOptions job_opt = opt;
            std::unique_ptr<CertWriter> writer;
            if (!out_dir.empty()) {
                char name[64];
                std::snprintf(name, sizeof(name), "cand%02d_%s.cert", job.candidate,
                              cube::to_string(job.target).c_str());
                job.cert_path = (std::filesystem::path(out_dir) / name).string();
                auto open_writer = [&writer, &job, &target, &cand]() {
                    writer = std::make_unique<CertWriter>(job.cert_path, target.kind,
                                                          cand.counts());
                };
                open_writer();
                job_opt.event_sink = [&writer](const Event& e) { writer->add_event(e); };
                job_opt.restart_sink = open_writer;  // truncate and start over
            }
            Certificate cert = hom_refute(graph, target, job_opt);
            if (writer) writer->finish(cert.status, cert.nodes_visited, cert.note);
            job.seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            job.status = cert.status;
            job.nodes = cert.nodes_visited;
            job.events = cert.event_count;
            job.kills = cert.kill_count;
        }
    };
    if (workers <= 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run);
        for (auto& th : pool) th.join();
    }

    summary.all_refuted = true;
    for (const NoFunc2Job& j : jobs)
        if (j.status != CertStatus::REFUTED) summary.all_refuted = false;
    summary.jobs = std::move(jobs);
    return summary;
}

NoFunc1Summary prove_nofunc1() {
    NoFunc1Summary summary;
    summary.all_refuted = true;
    for (GMultiSet& cand : cube::enumerate_candidates(10, 1)) {
        cube::CopyExpansion ex = cube::zero_sum_subsets(cand);
        int n = static_cast<int>(ex.copy_elem.size());
        lin::IntMat a(static_cast<int>(ex.zero_sum_masks.size()), n);
        lin::IntMat b(static_cast<int>(ex.zero_sum_masks.size()), 1);
        for (size_t r = 0; r < ex.zero_sum_masks.size(); ++r) {
            uint32_t m = ex.zero_sum_masks[r];
            while (m) {
                int i = std::countr_zero(m);
                m &= m - 1;
                a.at(static_cast<int>(r), i) = 1;
            }
            b.at(static_cast<int>(r), 0) = 1;
        }
        NoFunc1Entry entry{std::move(cand), static_cast<long long>(ex.zero_sum_masks.size()),
                           lin::unsolvability_witness(a, b), false};
        entry.refuted = entry.witness && lin::is_2_3_smooth(*entry.witness);
        if (!entry.refuted) summary.all_refuted = false;
        summary.entries.push_back(std::move(entry));
    }
    return summary;
}

}  // namespace zsf::refute
