// zsum: zero-sum / Davenport-constant toolbox.
//
// Exit codes: 0 success (all refuted / verified), 2 usage or malformed input,
// 3 search budget exhausted, 4 a refutation or verification failed.

#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zsf/bounds.hpp"
#include "zsf/cube.hpp"
#include "zsf/group.hpp"
#include "zsf/intlinalg.hpp"
#include "zsf/rank2.hpp"
#include "zsf/refute.hpp"
#include "zsf/zerosum.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;
constexpr int kExitRefutationFailed = 4;

struct Options {
    int workers = 1;
    long long budget = 1'000'000'000;
    std::string out_dir;
    std::string format = "text";  // text | structured
};

bool structured(const Options& o) { return o.format == "structured"; }

void record_header(const Options& o) {
    if (structured(o)) std::cout << "zsumrec 1\n";
}

void print_witness(const zsf::GMultiSet& ms) {
    if (zsf::is_z333(ms.group()))
        std::cout << zsf::to_grid(ms) << "\n";
    else
        std::cout << ms.format() << "\n";
}

int cmd_davenport(const Options& o, const std::string& group, int m, int k) {
    zsf::GroupSpec g = zsf::GroupSpec::parse(group);
    zsf::SearchBudget budget{o.budget};
    zsf::DavenportResult r =
        k > 0 ? zsf::davenport_short(g, k, budget) : zsf::davenport_m(g, m, budget);
    record_header(o);
    if (structured(o)) {
        std::cout << "group=" << g.format() << "\n";
        if (k > 0) std::cout << "max_length=" << k << "\n";
        if (m != 1) std::cout << "disjoint=" << m << "\n";
        std::cout << "value=" << r.value << "\nnodes=" << r.nodes
                  << "\nwitness=" << r.witness.format() << "\n";
    } else {
        std::cout << r.value << "\n";
        std::cout << "extremal multiset (" << r.witness.cardinality() << " elements):\n";
        print_witness(r.witness);
    }
    return kExitOk;
}

int cmd_snf(const Options& o, const std::string& matrix) {
    auto a = zsf::lin::IntMat::parse(matrix);
    auto s = zsf::lin::smith_normal_form(a);
    record_header(o);
    if (structured(o)) {
        std::cout << "rank=" << s.diag_rank() << "\ndiag=";
        for (int i = 0; i < std::min(s.d.rows, s.d.cols); ++i)
            std::cout << (i ? " " : "") << s.diag(i);
        auto one_line = [](const zsf::lin::IntMat& m) {
            std::ostringstream os;
            for (int r = 0; r < m.rows; ++r) {
                if (r) os << "; ";
                for (int c = 0; c < m.cols; ++c) os << (c ? " " : "") << m.at(r, c);
            }
            return os.str();
        };
        std::cout << "\nP=" << one_line(s.p) << "\nQ=" << one_line(s.q) << "\n";
    } else {
        std::cout << "D =\n" << s.d.format() << "P =\n" << s.p.format() << "Q =\n"
                  << s.q.format();
    }
    return kExitOk;
}

int cmd_solve_mod(const Options& o, const std::string& am, const std::string& bm, long long n) {
    auto a = zsf::lin::IntMat::parse(am);
    auto b = zsf::lin::IntMat::parse(bm);
    record_header(o);
    if (n > 0) {
        bool ok = zsf::lin::solvable_mod(a, b, zsf::lin::Int(n));
        if (structured(o))
            std::cout << "n=" << n << "\nsolvable=" << (ok ? "true" : "false") << "\n";
        else
            std::cout << (ok ? "solvable" : "unsolvable") << "\n";
        return kExitOk;
    }
    auto pat = zsf::lin::solvability_pattern(a, b);
    if (structured(o)) {
        std::cout << "variant=" << (pat.finite ? "finite" : "cofinite") << "\n";
        if (pat.finite) {
            std::cout << "N=";
            for (size_t i = 0; i < pat.moduli.size(); ++i)
                std::cout << (i ? " " : "") << pat.moduli[i];
        } else {
            std::cout << "d=" << pat.d << "\nT=";
            for (size_t i = 0; i < pat.divisors.size(); ++i)
                std::cout << (i ? " " : "") << pat.divisors[i];
        }
        std::cout << "\n";
    } else if (pat.finite) {
        std::cout << "solvable exactly for n in {";
        for (size_t i = 0; i < pat.moduli.size(); ++i)
            std::cout << (i ? ", " : "") << pat.moduli[i];
        std::cout << "}\n";
    } else {
        std::cout << "solvable exactly for n with gcd(n, " << pat.d << ") in {";
        for (size_t i = 0; i < pat.divisors.size(); ++i)
            std::cout << (i ? ", " : "") << pat.divisors[i];
        std::cout << "}\n";
    }
    return kExitOk;
}

int cmd_property_b(const Options& o, int n) {
    bool ok = zsf::rank2::property_b(n, zsf::SearchBudget{o.budget});
    record_header(o);
    if (structured(o))
        std::cout << "n=" << n << "\nproperty_b=" << (ok ? "true" : "false") << "\n";
    else
        std::cout << (ok ? "true" : "false") << "\n";
    return ok ? kExitOk : kExitRefutationFailed;
}

const char* class_name(zsf::rank2::CompletionClass c) {
    switch (c) {
        case zsf::rank2::CompletionClass::C1: return "C1";
        case zsf::rank2::CompletionClass::C2: return "C2";
        case zsf::rank2::CompletionClass::C3: return "C3";
        default: return "NONE";
    }
}

int cmd_completions(const Options& o, int n, const std::string& multiset) {
    zsf::GroupSpec g({n, n});
    auto b = zsf::GMultiSet::parse(g, multiset);
    auto rep = zsf::rank2::completion_report(b);
    record_header(o);
    if (structured(o)) {
        std::cout << "n=" << n << "\nclass=" << class_name(rep.classification)
                  << "\nexception=" << (rep.exception ? "true" : "false") << "\nsingles=";
        for (size_t i = 0; i < rep.singles.size(); ++i)
            std::cout << (i ? " " : "") << g.format_elem(rep.singles[i]);
        std::cout << "\npairs=";
        for (size_t i = 0; i < rep.pairs.size(); ++i)
            std::cout << (i ? " " : "") << g.format_elem(rep.pairs[i].first) << "+"
                      << g.format_elem(rep.pairs[i].second);
        std::cout << "\n";
    } else {
        std::cout << "classification: " << class_name(rep.classification)
                  << (rep.exception ? " (exception shape)" : "") << "\n";
        std::cout << rep.singles.size() << " completion elements, " << rep.pairs.size()
                  << " completion pairs\n";
    }
    auto hom = b.cardinality() == 2 * n - 3 ? zsf::rank2::find_hom_all_ones(rep)
                                            : zsf::rank2::find_hom_zero_one(rep);
    if (hom)
        std::cout << (structured(o) ? "hom=" : "linear map F(x,y) = ") << hom->first << "x + "
                  << hom->second << "y\n";
    else
        std::cout << (structured(o) ? "hom=none\n" : "no linear map found\n");
    return kExitOk;
}

int cmd_constants(const Options& o, long long k, long long ell, long long delta,
                  const std::string& cmode) {
    long long c = cmode == "exact" ? zsf::c_const(static_cast<int>(k), static_cast<int>(ell),
                                                 zsf::SearchBudget{o.budget})
                                   : [&] {
                                         long long v = 1;
                                         for (long long i = 0; i <= ell; ++i) v *= k;
                                         return v;
                                     }();
    auto ledger = zsf::bounds::constants_ledger(k, ell, delta, c);
    record_header(o);
    if (structured(o)) {
        std::cout << "k=" << k << "\nell=" << ell << "\ndelta=" << delta << "\nc=" << c
                  << "\nc_defect=" << ledger.c_defect << "\nc_less=" << ledger.c_less
                  << "\nc_more=" << ledger.c_more << "\nc_card=" << ledger.c_card
                  << "\nc_ws=" << ledger.c_ws << "\nc_nn=" << ledger.c_nn
                  << "\nc_var=" << ledger.c_var << "\nc_eq=" << ledger.c_eq
                  << "\nn_min=" << ledger.n_min << "\n";
    } else {
        std::cout << ledger.format();
        if (k >= 2 && ell >= 3 && delta >= 2) {
            std::cout << "least infinite-counterexample bound: "
                      << zsf::bounds::bound_infinite(k, ell, delta) << "\n";
            std::cout << "finite-case bound: "
                      << zsf::bounds::bound_finite_symbolic(k, ell, delta).rendering << "\n";
        }
    }
    return kExitOk;
}

int cmd_lemma_length3(const Options& o) {
    auto rep = zsf::cube::verify_length3();
    record_header(o);
    if (structured(o)) {
        std::cout << "survivors=";
        for (int s = 1; s <= 9; ++s) std::cout << (s > 1 ? " " : "") << rep.survivors_by_size[s];
        std::cout << "\neight_orbits=" << rep.eight_orbit_count
                  << "\nreference_set_in_orbit=" << (rep.explicit_set_in_unique_orbit ? "true" : "false")
                  << "\nbound=" << rep.seventeen_bound << "\n";
    } else {
        std::cout << "subsets of Z_3^3 with no zero-sum of length <= 3, by size:\n";
        for (int s = 1; s <= 9; ++s)
            std::cout << "  " << s << ": " << rep.survivors_by_size[s] << "\n";
        std::cout << "orbits of maximal (8-element) subsets: " << rep.eight_orbit_count << "\n";
        std::cout << "reference set {x,y,z,x+y,x+y+z,x+2y+z,2x+z,y+2z} in that orbit: "
                  << (rep.explicit_set_in_unique_orbit ? "yes" : "no") << "\n";
        std::cout << "any " << rep.seventeen_bound
                  << " elements (multiplicity <= 2) contain a zero-sum of length <= 3\n";
    }
    bool ok = rep.survivors_by_size[9] == 0 && rep.eight_orbit_count == 1 &&
              rep.explicit_set_in_unique_orbit;
    return ok ? kExitOk : kExitRefutationFailed;
}

int cmd_enumerate_a13(const Options& o) {
    auto cands = zsf::cube::enumerate_candidates(13, 2);
    record_header(o);
    if (structured(o)) std::cout << "count=" << cands.size() << "\n";
    for (size_t i = 0; i < cands.size(); ++i) {
        std::cout << "candidate " << i << ":\n" << zsf::to_grid(cands[i]);
        if (i + 1 < cands.size()) std::cout << "\n";
    }
    return kExitOk;
}

int cmd_prove_nofunc2(const Options& o) {
    zsf::refute::HomRefuteOptions opt;
    opt.node_limit = o.budget;
    auto summary = zsf::refute::prove_nofunc2(o.workers, o.out_dir, opt);
    record_header(o);
    for (const auto& j : summary.jobs) {
        if (structured(o))
            std::cout << "candidate=" << j.candidate << " target=" << zsf::cube::to_string(j.target)
                      << " status=" << zsf::refute::to_string(j.status) << " nodes=" << j.nodes
                      << " kills=" << j.kills << "\n";
        else
            std::cout << "candidate " << j.candidate << " x " << zsf::cube::to_string(j.target)
                      << ": " << zsf::refute::to_string(j.status) << " (" << j.nodes << " nodes, "
                      << j.kills << " kills)"
                      << (j.cert_path.empty() ? "" : " -> " + j.cert_path) << "\n";
    }
    std::cout << (structured(o) ? "all_refuted=" : "all refuted: ")
              << (summary.all_refuted ? "true" : "false") << "\n";
    return summary.all_refuted ? kExitOk : kExitRefutationFailed;
}

int cmd_prove_nofunc1(const Options& o) {
    auto summary = zsf::refute::prove_nofunc1();
    record_header(o);
    for (size_t i = 0; i < summary.entries.size(); ++i) {
        const auto& e = summary.entries[i];
        if (structured(o))
            std::cout << "candidate=" << i << " equations=" << e.equation_count << " witness="
                      << (e.witness ? e.witness->str() : std::string("none"))
                      << " refuted=" << (e.refuted ? "true" : "false") << "\n";
        else
            std::cout << "candidate " << i << ": " << e.equation_count << " equations, "
                      << (e.refuted ? "REFUTED (witness " + e.witness->str() + ")" : "FAILED")
                      << "\n";
    }
    std::cout << (structured(o) ? "all_refuted=" : "all refuted: ")
              << (summary.all_refuted ? "true" : "false") << "\n";
    return summary.all_refuted ? kExitOk : kExitRefutationFailed;
}

int cmd_verify_cert(const Options& o, const std::vector<std::string>& files) {
    record_header(o);
    bool all = true;
    for (const auto& f : files) {
        std::string why;
        bool ok = zsf::refute::verify_certificate_file(f, &why);
        all = all && ok;
        if (structured(o))
            std::cout << "file=" << f << " verified=" << (ok ? "true" : "false")
                      << (ok ? "" : " reason=" + why) << "\n";
        else
            std::cout << f << ": " << (ok ? "verified" : "FAILED (" + why + ")") << "\n";
    }
    return all ? kExitOk : kExitRefutationFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zero-sum structure toolbox: Davenport constants, modular linear systems, "
                 "and certificate-producing refutation searches"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    Options opt;
    app.add_option("--workers", opt.workers, "worker threads (results are order-independent)")
        ->check(CLI::PositiveNumber);
    app.add_option("--budget", opt.budget, "search node budget")->check(CLI::PositiveNumber);
    app.add_option("--out", opt.out_dir, "output directory for certificates");
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"text", "structured"}));

    std::string group, matrix_a, matrix_b, multiset, cmode = "exact";
    int m = 1, k = 3, n = 5;
    long long mod_n = 0, ck = 3, cell = 2, cdelta = 2;
    std::vector<std::string> files;

    auto* dav = app.add_subcommand("davenport", "Davenport constant D(G), e.g. `davenport 3,3` -> 5");
    dav->add_option("group", group, "group spec: invariant factors \"3,3,15\" or \"3^3\"")->required();

    auto* dm = app.add_subcommand("dm", "least N forcing m disjoint zero-sums, e.g. `dm 3,3 2` -> 8");
    dm->add_option("group", group)->required();
    dm->add_option("m", m, "number of disjoint zero-sums")->required()->check(CLI::PositiveNumber);

    auto* dk = app.add_subcommand("dk", "least N forcing a zero-sum of length <= k, e.g. `dk 3^3 3` -> 17");
    dk->add_option("group", group)->required();
    dk->add_option("k", k, "max zero-sum length")->required()->check(CLI::PositiveNumber);

    auto* snf = app.add_subcommand("snf", "Smith normal form, e.g. `snf \"2 4; 6 8\"`");
    snf->add_option("matrix", matrix_a, "rows split by ';', entries by spaces")->required();

    auto* solve = app.add_subcommand(
        "solve-mod", "solvability of Ax = b over Z_n, e.g. `solve-mod \"2\" \"1\" --n 4` -> unsolvable");
    solve->add_option("A", matrix_a)->required();
    solve->add_option("b", matrix_b)->required();
    solve->add_option("--n", mod_n, "single modulus; omit for the full pattern over all n");

    auto* pb = app.add_subcommand("property-b", "extremal zero-sum free multisets over Z_n^2, e.g. `property-b 5`");
    pb->add_option("n", n)->required()->check(CLI::Range(2, 1000));

    auto* comp = app.add_subcommand(
        "completions", "completion report for a zero-sum free B over Z_n^2, e.g. `completions 5 \"(1,0)^3 (0,1)^4\"`");
    comp->add_option("n", n)->required()->check(CLI::Range(2, 1000));
    comp->add_option("multiset", multiset, "e.g. \"(1,0)^3 (0,1)^3\"")->required();

    auto* cons = app.add_subcommand("constants", "derived-constant ledger, e.g. `constants 3 2 2`");
    cons->add_option("k", ck)->required();
    cons->add_option("ell", cell)->required();
    cons->add_option("delta", cdelta)->required();
    cons->add_option("--c", cmode, "short-zero-sum constant: exact search or k^(ell+1) bound")
        ->check(CLI::IsMember({"exact", "bound"}));

    app.add_subcommand("lemma-length3", "exhaustive scan for subsets of Z_3^3 without short zero-sums");
    app.add_subcommand("enumerate-a13", "the 13-element candidate multisets, up to automorphism");

    auto* pn2 = app.add_subcommand("prove-nofunc2",
                                   "refute all 13-element candidates against C1, C2, C3; "
                                   "e.g. `prove-nofunc2 --out certs/`");
    (void)pn2;
    app.add_subcommand("prove-nofunc1", "refute all 10-element candidates");

    auto* vc = app.add_subcommand("verify-cert", "replay certificate files, e.g. `verify-cert certs/*.cert`");
    vc->add_option("files", files, "certificate files")->required();

    // allow the global --workers/--budget/--out/--format after a subcommand
    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (dav->parsed()) return cmd_davenport(opt, group, 1, 0);
        if (dm->parsed()) return cmd_davenport(opt, group, m, 0);
        if (dk->parsed()) return cmd_davenport(opt, group, 1, k);
        if (snf->parsed()) return cmd_snf(opt, matrix_a);
        if (solve->parsed()) return cmd_solve_mod(opt, matrix_a, matrix_b, mod_n);
        if (pb->parsed()) return cmd_property_b(opt, n);
        if (comp->parsed()) return cmd_completions(opt, n, multiset);
        if (cons->parsed()) return cmd_constants(opt, ck, cell, cdelta, cmode);
        if (app.get_subcommand("lemma-length3")->parsed()) return cmd_lemma_length3(opt);
        if (app.get_subcommand("enumerate-a13")->parsed()) return cmd_enumerate_a13(opt);
        if (app.get_subcommand("prove-nofunc2")->parsed()) return cmd_prove_nofunc2(opt);
        if (app.get_subcommand("prove-nofunc1")->parsed()) return cmd_prove_nofunc1(opt);
        if (vc->parsed()) return cmd_verify_cert(opt, files);
    } catch (const zsf::budget_error& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return kExitBudget;
    } catch (const zsf::structural_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const zsf::unsupported_group_error& e) {
        std::cerr << "unsupported group: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
