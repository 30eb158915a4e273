#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "zsf/cube.hpp"
#include "zsf/refute.hpp"

using namespace zsf;
using refute::CertStatus;
using refute::Event;

namespace {

refute::Certificate refute_candidate(int idx, cube::TargetKind kind) {
    auto cands = cube::enumerate_candidates(13, 2);
    auto graph = cube::build_zero_sum_graph(cands[static_cast<size_t>(idx)]);
    return refute::hom_refute(graph, cube::target_graph(kind));
}

}  // namespace

TEST_CASE("single-target refutations produce verifiable certificates") {
    for (auto kind : {cube::TargetKind::C1, cube::TargetKind::C3}) {
        CAPTURE(cube::to_string(kind));
        auto cert = refute_candidate(0, kind);
        CHECK(cert.status == CertStatus::REFUTED);
        CHECK(cert.kill_count > 0);
        std::string why;
        CHECK_MESSAGE(refute::verify_certificate(cert, &why), why);

        // serialization round trip
        auto back = refute::Certificate::parse(cert.serialize());
        CHECK(back.events == cert.events);
        CHECK(back.status == cert.status);
        CHECK(back.host_counts == cert.host_counts);
        CHECK(refute::verify_certificate(back, &why));
    }
}

TEST_CASE("exact arithmetic backend agrees with the checked 128-bit one") {
    auto cands = cube::enumerate_candidates(13, 2);
    auto graph = cube::build_zero_sum_graph(cands[0]);
    auto target = cube::target_graph(cube::TargetKind::C3);
    refute::HomRefuteOptions exact;
    exact.exact_arithmetic = true;
    auto a = refute::hom_refute(graph, target);
    auto b = refute::hom_refute(graph, target, exact);
    CHECK(a.events == b.events);
    CHECK(a.nodes_visited == b.nodes_visited);
}

TEST_CASE("tampered certificates are rejected") {
    auto cert = refute_candidate(0, cube::TargetKind::C1);
    REQUIRE(cert.status == CertStatus::REFUTED);
    std::string why;

    SUBCASE("status not REFUTED") {
        cert.status = CertStatus::FAILED;
        CHECK_FALSE(refute::verify_certificate(cert, &why));
    }
    SUBCASE("forged kill witness") {
        for (auto& e : cert.events)
            if (e.kind == Event::Kind::Kill) {
                e.witness *= 2;
                break;
            }
        CHECK_FALSE(refute::verify_certificate(cert, &why));
    }
    SUBCASE("fabricated kill of a surviving image") {
        // claim the branch vertex's first surviving image was killed
        for (size_t i = 0; i < cert.events.size(); ++i)
            if (cert.events[i].kind == Event::Kind::Down) {
                Event fake{Event::Kind::Kill, cert.events[i].u, cert.events[i].c, lin::Int(6)};
                cert.events.insert(cert.events.begin() + static_cast<long>(i), fake);
                break;
            }
        CHECK_FALSE(refute::verify_certificate(cert, &why));
    }
    SUBCASE("dropped branch coverage") {
        for (size_t i = 0; i < cert.events.size(); ++i)
            if (cert.events[i].kind == Event::Kind::Down) {
                cert.events.erase(cert.events.begin() + static_cast<long>(i));
                break;
            }
        CHECK_FALSE(refute::verify_certificate(cert, &why));
    }
    SUBCASE("empty event stream for a nonempty graph") {
        cert.events.clear();
        CHECK_FALSE(refute::verify_certificate(cert, &why));
    }
    SUBCASE("wrong host multiset") {
        // move a point: the replayed graph no longer matches the transcript
        for (int e = 1; e < 27; ++e)
            if (cert.host_counts[static_cast<size_t>(e)] == 0) {
                cert.host_counts[static_cast<size_t>(e)] = 1;
                cert.host_counts[static_cast<size_t>(26)] -= 1;
                break;
            }
        CHECK_FALSE(refute::verify_certificate(cert, &why));
    }
}

TEST_CASE("certificate file round trip and streaming verification") {
    auto cert = refute_candidate(1, cube::TargetKind::C1);
    REQUIRE(cert.status == CertStatus::REFUTED);
    auto path = (std::filesystem::temp_directory_path() / "zsum_test_cert.cert").string();
    cert.save(path);
    std::string why;
    CHECK_MESSAGE(refute::verify_certificate_file(path, &why), why);
    auto loaded = refute::Certificate::load(path);
    CHECK(loaded.events == cert.events);
    std::remove(path.c_str());
    CHECK_THROWS_AS(refute::Certificate::parse("nonsense"), structural_error);
}

TEST_CASE("kill systems are unsolvable at small coprime moduli") {
    auto cands = cube::enumerate_candidates(13, 2);
    auto graph = cube::build_zero_sum_graph(cands[0]);
    auto target = cube::target_graph(cube::TargetKind::C1);
    auto cert = refute::hom_refute(graph, target);
    REQUIRE(cert.status == CertStatus::REFUTED);

    // replay the walk: each kill extends the current assignment prefix with a
    // system that is unsolvable for all n coprime to 6 -- spot-check the
    // first few with the direct modular solver
    int checked = 0;
    std::vector<std::pair<int, int>> prefix;
    for (const auto& e : cert.events) {
        if (e.kind == Event::Kind::Down) {
            prefix.emplace_back(e.u, e.c);
        } else if (e.kind == Event::Kind::Up) {
            prefix.pop_back();
        } else {
            auto assigned = prefix;
            assigned.emplace_back(e.u, e.c);
            auto [a, b] = refute::assignment_system(graph, target, assigned);
            for (int n : {5, 7, 11, 13})
                CHECK_FALSE(lin::solvable_mod(a, b, n));
            if (++checked == 5) break;
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("graphs without a refutation report FAILED") {
    // a host with no zero-sum at all gives an empty pairing graph
    auto g = GroupSpec::elementary(3, 3);
    GMultiSet host(g);
    host.add(g.index_of(std::vector<int>{1, 0, 0}), 1);
    auto graph = cube::build_zero_sum_graph(host);
    CHECK(graph.vertices.empty());
    auto cert = refute::hom_refute(graph, cube::target_graph(cube::TargetKind::C3));
    CHECK(cert.status == CertStatus::FAILED);
    CHECK_FALSE(refute::verify_certificate(cert));
}

TEST_CASE("ten-element candidates all refute with smooth witnesses") {
    auto summary = refute::prove_nofunc1();
    CHECK(summary.all_refuted);
    CHECK(summary.entries.size() == 43);
    for (const auto& e : summary.entries) {
        CHECK(e.refuted);
        REQUIRE(e.witness.has_value());
        CHECK(lin::is_2_3_smooth(*e.witness));
        // one equation per nonempty zero-sum subset
        CHECK(e.equation_count ==
              static_cast<long long>(cube::zero_sum_subsets(e.candidate).zero_sum_masks.size()));
    }
}
