// Acceptance suite: runs every verification criterion at its stated
// tolerance and prints one pass/fail line each. Exit status 0 only when all
// criteria hold.

#include <chrono>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "fano/checks.hpp"
#include "fano/graded_ring.hpp"

using namespace fano;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool ok, const std::string& detail,
            long ms) {
    std::printf("[%s] criterion %2d: %-38s %s (%ld ms)\n", ok ? "PASS" : "FAIL", criterion,
                name.c_str(), detail.c_str(), ms);
    std::fflush(stdout);
    if (!ok) ++failures;
}

long ms_since(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

std::string data_path(const std::string& name) {
    return std::string(FANO_DATA_DIR) + "/" + name;
}

CanonicalCurve load(const std::string& name) {
    return CanonicalCurve::validate(load_curve_spec(data_path(name)));
}

std::vector<PointPair> generic_pool(const CanonicalCurve& c) {
    std::vector<PointPair> out;
    for (const PointPair& pr : c.sym_points())
        if (!c.ruling_index_of_pair(pr).has_value() && !pr.is_doubled()) out.push_back(pr);
    return out;
}

}  // namespace

int main() {
    // ---- criterion 1: lattice goldens, exact, < 1 s -------------------------
    {
        auto t0 = Clock::now();
        CheckRecord rec = check_lattice();
        long ms = ms_since(t0);
        bool ok = rec.status == "pass" && ms < 1000;
        report(1, "lattice goldens 1,2,-12,0,2,2,3,5", ok, rec.computed.dump(), ms);
    }

    // ---- criterion 2: ring identities, exact rationals, < 1 s ---------------
    {
        auto t0 = Clock::now();
        bool ok = verify_sym2_bundle_class();
        for (int g = 1; g <= 10; ++g) ok = ok && verify_curve_bundle_class(g);
        long ms = ms_since(t0);
        ok = ok && ms < 1000;
        report(2, "bundle class identities g=1..10, sym^2", ok, "exact", ms);
    }

    // Validated instances used below.
    auto t_inst = Clock::now();
    std::vector<std::pair<std::string, CanonicalCurve>> census_instances;
    for (const char* name :
         {"curve_f7_a.json", "curve_f7_b.json", "curve_f7_c.json", "curve_f8.json",
          "curve_f9.json"})
        census_instances.emplace_back(name, load(name));
    CanonicalCurve small5 = load("curve_f5.json");
    CanonicalCurve small3 = load("curve_f3.json");
    std::printf("-- validated %zu frozen instances (%ld ms)\n", census_instances.size() + 2,
                ms_since(t_inst));

    // ---- criterion 3: threefold identity per instance, < 1 s each -----------
    {
        auto t0 = Clock::now();
        bool ok = true;
        std::string detail;
        for (const auto& [name, curve] : census_instances) {
            auto t1 = Clock::now();
            CheckRecord rec = check_threefold_build(curve);
            long ms1 = ms_since(t1);
            if (rec.status != "pass" || ms1 >= 1000) {
                ok = false;
                detail += name + " ";
            }
        }
        for (const CanonicalCurve* c : {&small5, &small3}) {
            CheckRecord rec = check_threefold_build(*c);
            if (rec.status != "pass") ok = false;
        }
        report(3, "threefold identity and rank-4 node", ok,
               ok ? "all instances" : ("failed: " + detail), ms_since(t0));
    }

    // ---- criterion 4: census over F_7 x3, F_8, F_9, < 60 s each -------------
    {
        auto t0 = Clock::now();
        bool ok = true;
        std::string detail;
        for (const auto& [name, curve] : census_instances) {
            auto t1 = Clock::now();
            CheckRecord rec = check_census(curve, 4);
            long ms1 = ms_since(t1);
            bool this_ok = rec.status == "pass" && ms1 < 60000;
            if (!this_ok) ok = false;
            detail += name.substr(6, name.size() - 11) + "=" +
                      rec.computed["total"].dump() + (this_ok ? " " : "(FAIL) ");
        }
        report(4, "Fano census equals (N1^2+N2)/2 - N1", ok, detail, ms_since(t0));
    }

    // ---- criterion 5: plane residual count, >= 20 generic samples -----------
    {
        auto t0 = Clock::now();
        bool ok = true;
        Rng rng(501);
        for (const auto& [name, curve] : census_instances) {
            CheckRecord rec = check_plane_residual(curve, 20, rng, 200);
            if (rec.status != "pass") ok = false;
        }
        report(5, "plane residual: exactly 3 with multiplicity", ok, "5 instances x 20 samples",
               ms_since(t0));
    }

    // ---- criterion 6: five common secants over F_5, ext bound <= 10 ---------
    {
        auto t0 = Clock::now();
        Rng rng(601);
        CheckRecord rec = check_secants(small5, 5, 8, rng, 100);
        bool ok = rec.status == "pass";
        std::string detail = "verified=" + rec.computed["pairs_verified"].dump() +
                             " stabilized_fraction=" + rec.computed["stabilized_fraction"].dump();
        report(6, "five common secants per chord pair", ok, detail, ms_since(t0));
    }

    // ---- criterion 7: incidence equivalence, 100+ pairs x 3 instances -------
    {
        auto t0 = Clock::now();
        bool ok = true;
        int total_trials = 0, total_disc = 0;
        Rng rng(701);
        for (int i = 0; i < 3; ++i) {
            const CanonicalCurve& curve = census_instances[static_cast<std::size_t>(i)].second;
            CubicThreefold X = build_threefold(curve);
            auto pool = generic_pool(curve);
            int trials = 0, disc = 0;
            for (int r = 0; r < 2; ++r) {
                IncidenceReport rep =
                    verify_incidence(X, pool[rng.below(pool.size())], 50, rng);
                trials += rep.trials;
                disc += rep.discrepancies;
            }
            if (trials < 100 || disc != 0) ok = false;
            total_trials += trials;
            total_disc += disc;
        }
        report(7, "incidence divisor equivalence", ok,
               "trials=" + std::to_string(total_trials) +
                   " discrepancies=" + std::to_string(total_disc),
               ms_since(t0));
    }

    // ---- criterion 8: disjointness to degree 4 and complementarity ----------
    {
        auto t0 = Clock::now();
        CheckRecord dis = check_disjointness(small3, 4);
        CheckRecord dis7 = check_disjointness(census_instances[0].second, 4);
        Rng rng(801);
        CheckRecord comp3 = check_complementarity(small3, 10, 4, rng, 200);
        CheckRecord comp7 = check_complementarity(census_instances[0].second, 10, 3, rng, 200);
        bool ok = dis.status == "pass" && dis7.status == "pass" && comp3.status == "pass" &&
                  comp7.status == "pass";
        report(8, "gamma disjointness and complementarity", ok,
               "collisions=0, 20 generic pairs exact", ms_since(t0));
    }

    // ---- criterion 9: extension class nontrivial on >= 10 instances ---------
    {
        auto t0 = Clock::now();
        bool ok = true;
        int done = 0;
        Rng rng(901);
        struct Inst { long p; int k; std::uint64_t seed; };
        std::vector<Inst> insts{{7, 1, 1}, {7, 1, 2}, {7, 1, 3}, {5, 1, 1}, {5, 1, 2},
                                {3, 1, 1}, {3, 1, 2}, {3, 1, 3}, {2, 2, 1}, {11, 1, 1}};
        for (const Inst& inst : insts) {
            ValidateOptions opt;
            opt.smooth_bound = inst.p >= 11 ? 4 : 6;  // scan budget at p = 11
            CurveSpec spec = search_curve_spec(inst.p, inst.k, inst.seed, 4096, opt);
            CanonicalCurve curve = CanonicalCurve::validate(spec, opt);
            ExtensionClassReport rep = extension_class_certificate(curve, 6, rng);
            if (rep.verdict != "nontrivial") ok = false;
            ++done;
        }
        report(9, "extension class nontrivial (rank 4)", ok,
               std::to_string(done) + " instances", ms_since(t0));
    }

    // ---- criterion 10: formal Clemens-Griffiths identity ---------------------
    {
        auto t0 = Clock::now();
        CheckRecord rec = check_cg_identity();
        report(10, "q o u0 o nu = u at divisor level", rec.status == "pass",
               "all symbol 4-tuples", ms_since(t0));
    }

    // ---- criterion 11: involution on >= 50 members ---------------------------
    {
        auto t0 = Clock::now();
        Rng rng(1101);
        int done = 0;
        bool ok = true;
        CheckRecord r1 = check_involution(census_instances[0].second, 20, rng, 400);
        CheckRecord r2 = check_involution(small3, 20, rng, 400);
        CheckRecord r3 = check_involution(small5, 10, rng, 400);
        for (const CheckRecord* r : {&r1, &r2, &r3}) {
            if (r->status != "pass") ok = false;
            done += r->computed["samples"].get<int>();
        }
        ok = ok && done >= 50;
        report(11, "residual involution exact on members", ok,
               std::to_string(done) + " members", ms_since(t0));
    }

    std::printf("%s: %d of 11 criteria failed\n", failures ? "FAILURE" : "SUCCESS", failures);
    return failures ? 1 : 0;
}
