#ifndef FANO_CURVE_HPP
#define FANO_CURVE_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "fano/form.hpp"
#include "fano/rng.hpp"

namespace fano {

// Unordered Galois-stable pair of curve points. Both points live in one
// field; either each is rational there, or the two are conjugate over the
// subfield of degree pair_ext (setwise stability).
struct PointPair {
    ProjPoint a, b;  // canonical order a <= b
    int point_ext = 1;  // degree over the curve's base field of the points' field
    int pair_ext = 1;   // degree over the base field of the pair's field of definition

    static PointPair make(const ProjPoint& x, const ProjPoint& y, int base_deg);

    const Field& field() const { return a.field(); }
    bool is_doubled() const { return a == b; }
    bool contains(const ProjPoint& p) const { return a == p || b == p; }
    PointPair embedded(const Field& top, int base_deg) const;

    friend bool operator==(const PointPair& x, const PointPair& y) {
        return x.a == y.a && x.b == y.b;
    }
    friend bool operator<(const PointPair& x, const PointPair& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    }
    std::string str() const;
};

// Parsed curve description: the split quadric and a cubic over F_{p^k}.
// Coefficient values encode base-p digits of the field element.
struct CurveSpec {
    long p = 0;
    int k = 1;
    std::map<std::string, long> q_coeffs;
    std::map<std::string, long> f_coeffs;
};

struct ValidateOptions {
    int smooth_bound = 6;  // singular-locus scan up to this extension degree
    int weil_bound = 2;    // point counts checked against the Weil bound up to here
};

// A certified genus-4 canonical curve Q = F = 0 in P^3 over F_q with the
// split quadric. Immutable after validation.
class CanonicalCurve {
  public:
    static CanonicalCurve validate(const CurveSpec& spec, const ValidateOptions& opt = {});
    static CanonicalCurve validate(const Field& base, const HForm& cubic,
                                   const ValidateOptions& opt = {});

    const Field& base() const { return *base_; }
    const HForm& quadric() const { return Q_; }
    const HForm& cubic() const { return F_; }
    int smooth_certified_bound() const { return smooth_bound_; }
    std::uint64_t hash() const { return hash_; }

    // Extension field F_{q^m}.
    const Field& ext(int m) const;

    // Exact number of F_{q^m} points by fiber scan over one ruling family.
    long count_points(int m) const;
    // All F_{q^m} points, sorted. Throws ResourceBound past the scan budget.
    std::vector<ProjPoint> points(int m) const;

    bool on_curve(const ProjPoint& pt) const;
    // Tangent line at a smooth curve point (kernel of the Jacobian).
    Line tangent_line(const ProjPoint& pt) const;

    // The two lines of the quadric through a point of it, tagged consistently:
    // index 1 holds (u:v) constant, index 2 holds (s:t) constant.
    std::pair<Line, Line> ruling_lines(const ProjPoint& pt) const;

    // The residual pair of the index-i ruling line through p: the remaining
    // intersection of that line with the curve. May live over a quadratic
    // extension of p's field.
    PointPair residual_pair(int ruling, const ProjPoint& p) const;
    // Third intersection point of the ruling line carrying the given pair;
    // inverse of residual_pair on its image.
    ProjPoint residual_base_point(const PointPair& pair) const;

    // Chord of the pair: the line through its two points, or the tangent line
    // for a doubled pair.
    Line chord_line(const PointPair& pair) const;

    // Index of the ruling whose line carries the pair, when the pair's chord
    // lies on the quadric; nullopt for an honest chord.
    std::optional<int> ruling_index_of_pair(const PointPair& pair) const;

    // Membership of {a, b} in the trace divisor of |K - p - q|: a hyperplane
    // through the four points with tangent-line substitution for doubled ones.
    bool is_on_trace(const ProjPoint& p, const ProjPoint& q, const ProjPoint& a,
                     const ProjPoint& b) const;

    // The three residual points (with multiplicity) of the plane through
    // p, q, a, over a splitting extension.
    std::vector<ProjPoint> plane_residual(const ProjPoint& p, const ProjPoint& q,
                                          const ProjPoint& a) const;

    // The involution of the trace divisor of |K - p - q| sending {a, b} to the
    // residual pair of the same hyperplane section.
    PointPair residual_involution(const ProjPoint& p, const ProjPoint& q, const ProjPoint& a,
                                  const ProjPoint& b) const;

    // All Galois-stable pairs over the base field: rational pairs (including
    // doubled points) and conjugate pairs over the quadratic extension.
    std::vector<PointPair> sym_points() const;

    // Representation-independent identity of a pair: both points rewritten
    // over their minimal common field. Two computations of the same
    // geometric pair agree on this key regardless of the ambient level.
    std::string canonical_pair_key(const PointPair& pair) const;

    std::string str() const;
    CurveSpec spec() const;

  private:
    CanonicalCurve() = default;

    const Field* base_ = nullptr;
    HForm Q_{Field::get(2, 1), 4, 2};
    HForm F_{Field::get(2, 1), 4, 3};
    int smooth_bound_ = 0;
    std::uint64_t hash_ = 0;
    std::vector<long> counts_;  // counts_[m-1] = N_m for the validated range

    // Enumeration memo; guarded, logically const.
    mutable std::shared_ptr<std::mutex> cache_mu_ = std::make_shared<std::mutex>();
    mutable std::shared_ptr<std::map<int, std::vector<ProjPoint>>> points_cache_ =
        std::make_shared<std::map<int, std::vector<ProjPoint>>>();
};

// Result of the tangent-plane rank search certifying that the two degree-3
// pencils cut by the rulings are not linearly equivalent.
struct G13Certificate {
    int trials = 0;
    int rank4_count = 0;
    int degenerate_skips = 0;
    int min_rank = 4;
    int witness_ext = 0;      // extension degree of the first rank-4 witness
    std::string witness_param;  // ruling parameter of that witness line
    bool nontrivial = false;
};

// Realizes divisors of the first ruling pencil on sampled ruling lines and
// tests whether any hyperplane contains all three tangent lines; rank 4 in a
// single trial already certifies the two pencils differ.
G13Certificate distinct_g13_certificate(const CanonicalCurve& curve, int trials, Rng& rng);

// Deterministic spec search: fixed split quadric, cubic coefficients drawn
// from the seeded generator until validation passes.
CurveSpec search_curve_spec(long p, int k, std::uint64_t seed, int max_tries = 4096,
                            const ValidateOptions& opt = {});

std::uint64_t spec_hash(const CurveSpec& spec);

}  // namespace fano

#endif
