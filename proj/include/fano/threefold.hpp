#ifndef FANO_THREEFOLD_HPP
#define FANO_THREEFOLD_HPP

#include <optional>
#include <string>
#include <vector>

#include "fano/curve.hpp"

namespace fano {

// The nodal cubic F(y0..y3) - Q(y0..y3) * y4 = 0 in P^4 cut out by the
// 5-dimensional system of cubics through the canonical curve. Built only
// through build_threefold, which certifies the defining identities.
struct CubicThreefold {
    const CanonicalCurve* curve = nullptr;
    HForm equation{Field::get(2, 1), 5, 3};
    ProjPoint node;

    const CanonicalCurve& C() const { return *curve; }
    const Field& base() const { return curve->base(); }
};

// Verifies symbolically that the equation vanishes identically on the image
// of (x0 Q : x1 Q : x2 Q : x3 Q : F), that all five partials vanish at the
// node, and that the tangent cone there is a rank-4 quadric.
CubicThreefold build_threefold(const CanonicalCurve& curve);

bool is_line_on(const CubicThreefold& X, const Line& L);

// The line joining the node to (r : 0) for a curve point r.
Line node_line(const CubicThreefold& X, const ProjPoint& r);

// A line on the threefold tagged by its origin on the Fano surface: the
// image of a secant chord, or a line through the node when the pair sits on
// a ruling (the two gamma images glue to the same line).
struct FanoLine {
    enum class Kind { Chord, Node };
    Kind kind = Kind::Chord;
    Line line;
    std::optional<ProjPoint> node_point;  // Node: the glued curve point
    PointPair pair;
};

FanoLine chord_image(const CubicThreefold& X, const PointPair& pair);

struct CensusReport {
    long n1 = 0, n2 = 0;
    long predicted_total = 0;   // (N1^2 + N2)/2 - N1
    long predicted_node = 0;    // N1
    long total = 0;             // exhaustive count over Gr(2,5)(F_q)
    long through_node = 0;
    long chord_type = 0;
    bool counts_match = false;
    bool classification_complete = false;  // enumerated set == predicted set
    long grassmannian_size = 0;
};

// Exhaustive enumeration of the lines of P^4 over the base field (one
// echelon representative per Schubert cell) against the glueing prediction.
CensusReport fano_census(const CubicThreefold& X, int jobs = 1);

struct SecantRecord {
    int found_level = 0;     // scan level where the pair was attributed
    int pair_degree = 0;     // definition degree of the pair over the base
    int endpoint_degree = 0; // minimal definition degree of an endpoint
    bool on_second_ruling = false;  // pair lies on the complementary trace curve
    bool contains_base_point = false;
    std::string pair_text;
};

struct SecantReport {
    long total = 0;
    bool stabilized = false;
    int stabilization_degree = 0;
    int ext_bound = 0;
    std::vector<long> new_per_level;
    std::vector<SecantRecord> secants;
};

// Counts the point pairs lying on both trace divisors by walking curve
// points over increasing extensions and intersecting the two transversal
// planes; complete once the splitting degrees of all members are passed.
// The tail rule declares stabilization when the upper half of the scanned
// range produced nothing new.
SecantReport common_secants(const CubicThreefold& X, const PointPair& chord1,
                            const PointPair& chord2, int ext_bound);

struct IncidenceReport {
    int trials = 0;
    int discrepancies = 0;
    int meets = 0;
    int skipped = 0;
};

// Samples Galois-stable pairs and checks that their lines meet the reference
// line exactly when the pair lies on the reference trace divisor or is one
// of the four gamma images of the reference points.
IncidenceReport verify_incidence(const CubicThreefold& X, const PointPair& ref, int trials,
                                 Rng& rng);

}  // namespace fano

#endif
