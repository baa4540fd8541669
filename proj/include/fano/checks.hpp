#ifndef FANO_CHECKS_HPP
#define FANO_CHECKS_HPP

#include <optional>

#include "fano/report.hpp"
#include "fano/threefold.hpp"

namespace fano {

// Configuration shared by the command line and the aggregate runner. A fixed
// configuration and seed reproduce the report byte for byte apart from the
// runtime_ms fields.
struct RunConfig {
    std::optional<CurveSpec> spec;
    long prime = 7;
    int ext = 1;
    std::uint64_t seed = 1;
    int ext_bound = 10;
    int trials = 100;
    int jobs = 1;
    int resample_budget = 100;
    bool perturb = false;
    std::optional<int> genus;
};

// Frozen known-good instances (search seeds 1 over F_7 and F_3).
CurveSpec default_spec_f7();
CurveSpec default_spec_f3();
CurveSpec default_spec_f5();

// Intersection-number suite against the hardcoded goldens
// 1, 2, -12, 0, 2, 2, 3, 5; with a genus override only the general-g values
// are reported.
CheckRecord check_lattice(std::optional<int> genus_override = std::nullopt);

// Ring identities: the curve bundle class for g = 1..10, the symmetric
// square class, and the glueing section classes. perturb flips one
// coefficient as a negative control.
std::vector<CheckRecord> check_ring(bool perturb = false);

CheckRecord check_cg_identity();

CheckRecord check_curve_validate(const CurveSpec& spec);
CheckRecord check_counts(const CanonicalCurve& curve, int max_m);
CheckRecord check_threefold_build(const CanonicalCurve& curve);
CheckRecord check_census(const CanonicalCurve& curve, int jobs);
CheckRecord check_incidence(const CanonicalCurve& curve, int refs, int trials, Rng& rng);
CheckRecord check_extension_class(const CanonicalCurve& curve, int trials, Rng& rng);
CheckRecord check_disjointness(const CanonicalCurve& curve, int bound);
CheckRecord check_complementarity(const CanonicalCurve& curve, int samples, int scan_bound,
                                  Rng& rng, int budget);
CheckRecord check_plane_residual(const CanonicalCurve& curve, int samples, Rng& rng,
                                 int budget);
CheckRecord check_involution(const CanonicalCurve& curve, int samples, Rng& rng, int budget);
// Samples skew generic chord pairs until `pairs` of them ran to completion;
// verifies five secants each and reports the stabilized fraction.
CheckRecord check_secants(const CanonicalCurve& curve, int pairs, int ext_bound, Rng& rng,
                          int budget);

ojson run_report_all(const RunConfig& cfg);

// 0 all pass, 2 verification mismatch, 3 genericity budget exhausted.
int exit_code_for(const ojson& report);

}  // namespace fano

#endif
