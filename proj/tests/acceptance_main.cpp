// Acceptance suite: one PASS/FAIL line per criterion, exit 0 iff all pass.
// Usage: acceptance [cert_output_dir]

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "modular_oracle.hpp"
#include "zsf/automorphism.hpp"
#include "zsf/bounds.hpp"
#include "zsf/cube.hpp"
#include "zsf/group.hpp"
#include "zsf/intlinalg.hpp"
#include "zsf/rank2.hpp"
#include "zsf/refute.hpp"
#include "zsf/zerosum.hpp"

using namespace zsf;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, bool ok, double seconds, const std::string& detail) {
    if (!ok) ++failures;
    std::cout << "criterion " << criterion << ": " << (ok ? "PASS" : "FAIL") << " (" << seconds
              << "s) " << detail << "\n"
              << std::flush;
}

template <typename Fn>
void run(int criterion, const Fn& fn) {
    auto t0 = Clock::now();
    bool ok = false;
    std::string detail;
    try {
        ok = fn(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    report(criterion, ok, std::chrono::duration<double>(Clock::now() - t0).count(), detail);
}

// every zero-sum free multiset of exact cardinality `target` over Z_n^2 that
// contains element index 1; every automorphism orbit has such a representative
template <typename Visit>
void scan_zsf(const GroupSpec& g, int target, const Visit& visit) {
    int order = static_cast<int>(g.order());
    std::vector<int> counts(static_cast<size_t>(order), 0);
    auto dfs = [&](auto&& self, int start, int card, const SumSet& r) -> void {
        if (card == target) {
            visit(counts);
            return;
        }
        for (int e = start; e < order; ++e) {
            SumSet nr = r.grown(e);
            if (nr.contains(0)) continue;
            if (card + 1 + (order - 1 - nr.size()) < target) continue;
            ++counts[static_cast<size_t>(e)];
            self(self, e, card + 1, nr);
            --counts[static_cast<size_t>(e)];
        }
    };
    SumSet r(g);
    counts[1] = 1;
    dfs(dfs, 1, 1, r.grown(1));
}

long long ipow(long long b, long long e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    std::string cert_dir = argc > 1 ? argv[1] : "acceptance_certs";

    run(1, [](std::string& detail) {
        auto d = davenport(GroupSpec::parse("3,3"));
        bool ok = d.value == 5;
        std::ostringstream os;
        os << "davenport(3,3)=" << d.value;
        for (int m = 1; m <= 4; ++m) {
            auto r = davenport_m(GroupSpec::parse("3,3"), m);
            ok = ok && r.value == 3 * m + 2;
            os << " dm(" << m << ")=" << r.value;
        }
        detail = os.str();
        return ok;
    });

    run(2, [](std::string& detail) {
        auto d = davenport(GroupSpec::parse("3,3,3"));
        auto s = davenport_short(GroupSpec::parse("3^3"), 3);
        detail = "davenport(3^3)=" + std::to_string(d.value) + " dk(3^3,3)=" + std::to_string(s.value);
        return d.value == 7 && s.value == 17;
    });

    run(3, [](std::string& detail) {
        auto rep = cube::verify_length3();
        std::ostringstream os;
        os << "nine=" << rep.survivors_by_size[9] << " eight_orbits=" << rep.eight_orbit_count
           << " reference_in_orbit=" << rep.explicit_set_in_unique_orbit;
        detail = os.str();
        return rep.survivors_by_size[9] == 0 && rep.eight_orbit_count == 1 &&
               rep.explicit_set_is_survivor && rep.explicit_set_in_unique_orbit;
    });

    run(4, [](std::string& detail) {
        auto cands = cube::enumerate_candidates(13, 2);
        std::set<std::vector<int>> ours;
        for (const auto& ms : cands) ours.insert(ms.counts());

        std::ifstream fixture(std::string(ZSUM_TEST_DATA_DIR) + "/nofunc2_grids.txt");
        if (!fixture) {
            detail = "fixture file missing";
            return false;
        }
        std::set<std::vector<int>> reference;
        std::string line, block;
        auto flush_block = [&]() {
            if (block.empty()) return;
            auto ms = from_grid(block);
            reference.insert(canonical_counts(ms.group(), ms.counts()));
            block.clear();
        };
        while (std::getline(fixture, line)) {
            if (line.empty())
                flush_block();
            else
                block += line + "\n";
        }
        flush_block();
        detail = "ours=" + std::to_string(ours.size()) + " grids=" + std::to_string(reference.size());
        return ours.size() == 15 && ours == reference;
    });

    run(5, [&](std::string& detail) {
        auto summary = refute::prove_nofunc2(1, cert_dir);
        long long refuted = 0;
        for (const auto& j : summary.jobs)
            if (j.status == refute::CertStatus::REFUTED) ++refuted;
        int verified = 0;
        std::string first_err;
        for (const auto& j : summary.jobs) {
            std::string why;
            if (refute::verify_certificate_file(j.cert_path, &why))
                ++verified;
            else if (first_err.empty())
                first_err = j.cert_path + ": " + why;
        }
        detail = "refuted=" + std::to_string(refuted) + "/45 verified=" + std::to_string(verified) +
                 "/45" + (first_err.empty() ? "" : " first_error=" + first_err);
        return summary.all_refuted && refuted == 45 && verified == 45;
    });

    run(6, [](std::string& detail) {
        auto summary = refute::prove_nofunc1();
        long long refuted = 0;
        for (const auto& e : summary.entries) refuted += e.refuted;
        detail = "refuted=" + std::to_string(refuted) + "/" + std::to_string(summary.entries.size());
        return summary.all_refuted && !summary.entries.empty();
    });

    run(7, [](std::string& detail) {
        std::mt19937 rng(20240817);
        std::uniform_int_distribution<int> dim_r(1, 4), dim_c(1, 5), entry(-9, 9);
        for (int iter = 0; iter < 1000; ++iter) {
            int rows = dim_r(rng), cols = dim_c(rng);
            lin::IntMat a(rows, cols), b(rows, 1);
            for (int r = 0; r < rows; ++r) {
                for (int c = 0; c < cols; ++c) a.at(r, c) = entry(rng);
                b.at(r, 0) = entry(rng);
            }
            auto s = lin::smith_normal_form(a);
            if (!(lin::mul(lin::mul(s.p, a), s.qinv) == s.d)) {
                detail = "SNF reconstruction failed at iteration " + std::to_string(iter);
                return false;
            }
            auto pat = lin::solvability_pattern(a, b);
            for (int n = 1; n <= 60; ++n) {
                bool expected = oracle::solvable_mod(a, b, n);
                if (n <= 8 && expected != oracle::solvable_mod_enumerate(a, b, n)) {
                    detail = "oracle self-check failed at iteration " + std::to_string(iter) +
                             " n=" + std::to_string(n);
                    return false;
                }
                if (pat.contains(n) != expected) {
                    detail = "pattern mismatch at iteration " + std::to_string(iter) +
                             " n=" + std::to_string(n);
                    return false;
                }
            }
        }
        detail = "1000 systems, all moduli <= 60 agree, SNF exact";
        return true;
    });

    run(8, [](std::string& detail) {
        bool p5 = rank2::property_b(5);
        bool p7 = rank2::property_b(7);
        bool bc = true, cc = true;
        for (int n = 2; n <= 12; ++n) {
            bc = bc && rank2::ben_check(n);
            cc = cc && rank2::corcd_check(n);
        }
        std::ostringstream os;
        os << "property_b(5)=" << p5 << " property_b(7)=" << p7 << " ben(<=12)=" << bc
           << " corcd(<=12)=" << cc;
        detail = os.str();
        return p5 && p7 && bc && cc;
    });

    run(9, [](std::string& detail) {
        long long scanned = 0, none = 0, nohom = 0, exceptions = 0;
        for (int n : {5, 7}) {
            GroupSpec g(std::vector<int>{n, n});
            for (int size : {2 * n - 4, 2 * n - 3}) {
                scan_zsf(g, size, [&](const std::vector<int>& counts) {
                    ++scanned;
                    GMultiSet b(g);
                    for (int e = 0; e < static_cast<int>(counts.size()); ++e)
                        if (counts[static_cast<size_t>(e)]) b.add(e, counts[static_cast<size_t>(e)]);
                    auto rep = rank2::completion_report(b);
                    if (rep.classification == rank2::CompletionClass::NONE) ++none;
                    if (rep.exception) {
                        ++exceptions;
                        return;
                    }
                    auto hom = b.cardinality() == 2 * n - 3 ? rank2::find_hom_all_ones(rep)
                                                            : rank2::find_hom_zero_one(rep);
                    if (!hom) ++nohom;
                });
            }
        }
        std::ostringstream os;
        os << "scanned=" << scanned << " none=" << none << " missing_hom=" << nohom
           << " exception_shapes=" << exceptions;
        detail = os.str();
        return scanned > 0 && none == 0 && nohom == 0;
    });

    run(10, [](std::string& detail) {
        for (long long k = 2; k <= 5; ++k)
            for (long long ell = 3; ell <= 5; ++ell)
                for (long long delta = 2; delta <= 10; ++delta) {
                    auto led = bounds::constants_ledger(k, ell, delta, ipow(k, ell + 1));
                    bool ok = led.c_defect <= 3 * ipow(k, ell) &&
                              led.c_less <= ipow(k, ell + 1) - delta &&
                              led.c_more <= 4 * ipow(k, ell + 1) &&
                              led.c_card <= 5 * ipow(k, ell + 1) &&
                              led.c_ws <= 3 * ipow(k, ell) &&
                              led.c_var <= 7 * ipow(k, ell + 1) + delta &&
                              led.c_eq <= 12 * ipow(k, ell + 1) + delta &&
                              led.n_min <= 27 * ipow(k, ell + 1) + 2 * delta;
                    if (!ok) {
                        detail = "violated at k=" + std::to_string(k) + " ell=" + std::to_string(ell) +
                                 " delta=" + std::to_string(delta);
                        return false;
                    }
                }
        detail = "grid k=2..5, ell=3..5, delta=2..10";
        return true;
    });

    std::cout << (failures == 0 ? "ALL CRITERIA PASS" : "FAILURES: " + std::to_string(failures))
              << "\n";
    return failures == 0 ? 0 : 1;
}
