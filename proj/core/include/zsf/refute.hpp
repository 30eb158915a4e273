#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zsf/cube.hpp"
#include "zsf/group.hpp"
#include "zsf/intlinalg.hpp"

namespace zsf::refute {

using lin::Int;

enum class CertStatus { REFUTED, FAILED };

std::string to_string(CertStatus s);

// One record of the refutation transcript, in depth-first order:
//   Kill: at the current node, mapping vertex u to target node c makes the
//         accumulated equation system unsolvable for every n > 1 coprime to
//         6. The witness is the gcd of the inconsistent rows of the integer
//         elimination (any solvable modulus must divide it); for each of its
//         prime factors p > 3 the system is additionally inconsistent mod p;
//   Down: descend by assigning u -> c (a surviving image);
//   Up:   all surviving images of the branch vertex are exhausted.
struct Event {
    enum class Kind { Kill, Down, Up } kind;
    int u = 0, c = 0;
    Int witness;  // Kill only

    friend bool operator==(const Event&, const Event&) = default;
};

// Replayable transcript of one candidate x target refutation. Self-contained:
// the pairing graph is rebuilt from host_counts, the branching is re-derived
// from the verified kills, and every witness is recomputed independently.
struct Certificate {
    cube::TargetKind target = cube::TargetKind::C1;
    CertStatus status = CertStatus::FAILED;
    std::vector<int> host_counts;   // 27 multiplicities over Z_3^3
    std::vector<Event> events;      // empty when streamed to a sink
    long long event_count = 0;      // total, also when streamed
    long long kill_count = 0;
    long long nodes_visited = 0;
    std::string note;  // FAILED diagnostics; single line

    std::string serialize() const;
    static Certificate parse(const std::string& text);
    void save(const std::string& path) const;
    static Certificate load(const std::string& path);

    GMultiSet host() const;
};

// Streaming certificate file writer: metadata first, then event lines as they
// arrive, then the status trailer. The produced file parses with
// Certificate::parse and replays with verify_certificate_file.
class CertWriter {
public:
    CertWriter(const std::string& path, cube::TargetKind target,
               const std::vector<int>& host_counts);
    ~CertWriter();
    void add_event(const Event& e);
    void finish(CertStatus status, long long nodes_visited, const std::string& note);
    long long event_count() const { return count_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    long long count_ = 0;
};

struct HomRefuteOptions {
    long long node_limit = 2'000'000'000;
    // on a completed assignment without a smooth witness, also run the exact
    // solvability pattern and report whether any n > 3 coprime to 6 solves it
    bool exact_on_failed = false;
    // force arbitrary-precision elimination (otherwise 128-bit arithmetic with
    // overflow detection is used and the search restarts exactly on overflow)
    bool exact_arithmetic = false;
    // when set, events are streamed here instead of stored in the certificate
    std::function<void(const Event&)> event_sink;
    // called if the search must restart (overflow fallback); must discard all
    // events streamed so far
    std::function<void()> restart_sink;
};

// Backtracking search for graph homomorphisms from the pairing graph into the
// target. At every node each still-possible vertex image is tested against
// the accumulated equation system; images whose system is unsolvable for all
// n > 1 coprime to 6 (see Event) are killed, and the search branches on a
// vertex with the fewest surviving images (ties: higher degree, then lower
// id). REFUTED iff every branch ends with some vertex out of images.
Certificate hom_refute(const cube::ZeroSumGraph& graph, const cube::TargetGraph& target,
                       const HomRefuteOptions& opt = {});

// Replays the certificate: walks the recorded tree, independently recomputes
// every kill witness by exact integer elimination, re-checks the kill rule
// (including the mod-p inconsistency for prime factors p > 3 of the witness),
// re-derives the branch vertex, and requires every surviving image to be
// covered by a subtree. False on any mismatch; the first problem is described
// in *why when given.
bool verify_certificate(const Certificate& cert, std::string* why = nullptr);

// Streaming variant: events are pulled from the file during the replay, so
// arbitrarily large certificates verify in bounded memory.
bool verify_certificate_file(const std::string& path, std::string* why = nullptr);

// The equation rows contributed when `assigned[step]` is applied, given the
// earlier assignments; rows have 2 * (host cardinality) coefficient columns
// (x then y per element copy) plus the right-hand side. Exposed so tests can
// cross-check partial systems against the solvability oracles.
std::vector<std::vector<Int>> equations_for_step(
    const cube::ZeroSumGraph& graph, const cube::TargetGraph& target,
    const std::vector<std::pair<int, int>>& assigned, size_t step);

// Full system of a partial assignment as matrices (rows in assignment order).
std::pair<lin::IntMat, lin::IntMat> assignment_system(
    const cube::ZeroSumGraph& graph, const cube::TargetGraph& target,
    const std::vector<std::pair<int, int>>& assigned);

struct NoFunc2Job {
    int candidate = 0;
    cube::TargetKind target = cube::TargetKind::C1;
    CertStatus status = CertStatus::FAILED;
    long long nodes = 0;
    long long events = 0;
    long long kills = 0;
    double seconds = 0.0;
    std::string cert_path;  // empty if not written
};

struct NoFunc2Summary {
    std::vector<GMultiSet> candidates;
    std::vector<NoFunc2Job> jobs;  // sorted by (candidate, target)
    bool all_refuted = false;
};

// Enumerates the 13-element candidates and refutes each against C1, C2, C3.
// Certificates are written to out_dir (created if needed) unless it is empty.
NoFunc2Summary prove_nofunc2(int workers = 1, const std::string& out_dir = "",
                             const HomRefuteOptions& opt = {});

struct NoFunc1Entry {
    GMultiSet candidate;
    long long equation_count = 0;
    std::optional<Int> witness;  // gcd witness, if any
    bool refuted = false;        // witness exists and is 2^a 3^b
};

struct NoFunc1Summary {
    std::vector<NoFunc1Entry> entries;
    bool all_refuted = false;
};

// Enumerates the 10-element candidates; for each, one system over 10 unknowns
// (one per element copy) with an equation sum_{z in Z} g_z = 1 for every
// nonempty zero-sum subset Z, refuted via the gcd witness.
NoFunc1Summary prove_nofunc1();

}  // namespace zsf::refute
