#ifndef FANO_PICARD_HPP
#define FANO_PICARD_HPP

#include <string>

#include "fano/curve.hpp"
#include "fano/divisor.hpp"

namespace fano {

// Formal identity behind the factorization of the Abel-Jacobi map through the
// Picard variety of the Fano surface: the difference of the trace divisors of
// |K - p - q| and |K - p0 - q0| reduces to S over the base-point difference.
bool cg_map_identity(const std::string& p, const std::string& q, const std::string& p0,
                     const std::string& q0);
bool cg_map_identity();

// Concrete nontriviality certificate for the torus extension class: the
// difference of the two ruling pencils, realized on sampled ruling lines.
// The verdict never claims triviality; failing to find a rank-4 witness
// only leaves the question open.
struct ExtensionClassReport {
    std::uint64_t curve_hash = 0;
    int trials = 0;
    int rank4_count = 0;
    int degenerate_skips = 0;
    int witness_ext = 0;
    std::string witness_param;
    std::string verdict;  // "nontrivial" | "inconclusive"
    // The finer question whether the class is a difference of two points
    // needs group arithmetic on the Jacobian and stays out of scope.
    std::string scope_note;
};

ExtensionClassReport extension_class_certificate(const CanonicalCurve& curve, int trials,
                                                 Rng& rng);

}  // namespace fano

#endif
