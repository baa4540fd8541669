#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "fano/threefold.hpp"

using namespace fano;

namespace {

const CanonicalCurve& curve_f3() {
    static CanonicalCurve c = [] {
        CurveSpec s;
        s.p = 3;
        s.k = 1;
        s.q_coeffs = {{"1001", 1}, {"0110", 2}};
        s.f_coeffs = {{"0012", 1}, {"0021", 2}, {"0111", 1}, {"0201", 2}, {"0210", 1},
                      {"1002", 1}, {"1011", 1}, {"1101", 1}, {"1110", 2}, {"1200", 1},
                      {"2010", 1}};
        return CanonicalCurve::validate(s);
    }();
    return c;
}

const CanonicalCurve& curve_f5() {
    static CanonicalCurve c = [] {
        CurveSpec s;
        s.p = 5;
        s.k = 1;
        s.q_coeffs = {{"1001", 1}, {"0110", 4}};
        s.f_coeffs = {{"0003", 1}, {"0012", 2}, {"0021", 4}, {"0030", 1}, {"0102", 1},
                      {"0111", 2}, {"0120", 1}, {"0201", 3}, {"0210", 2}, {"1002", 3},
                      {"1011", 2}, {"1101", 2}, {"1110", 4}, {"1200", 1}, {"2010", 2}};
        return CanonicalCurve::validate(s);  // search seed 1
    }();
    return c;
}

const CanonicalCurve& curve_f7() {
    static CanonicalCurve c = [] {
        CurveSpec s;
        s.p = 7;
        s.k = 1;
        s.q_coeffs = {{"1001", 1}, {"0110", 6}};
        s.f_coeffs = {{"0003", 1}, {"0012", 3}, {"0021", 5}, {"0030", 2}, {"0102", 1},
                      {"0111", 2}, {"0120", 1}, {"0201", 5}, {"0210", 3}, {"1002", 4},
                      {"1011", 3}, {"1101", 3}, {"1110", 6}, {"1200", 2}, {"2010", 3}};
        return CanonicalCurve::validate(s);  // search seed 1
    }();
    return c;
}

const CubicThreefold& threefold_f3() {
    static CubicThreefold X = build_threefold(curve_f3());
    return X;
}

std::vector<PointPair> generic_pairs(const CanonicalCurve& c) {
    std::vector<PointPair> out;
    for (const PointPair& pr : c.sym_points())
        if (!c.ruling_index_of_pair(pr).has_value() && !pr.is_doubled()) out.push_back(pr);
    return out;
}

}  // namespace

TEST_CASE("threefold build certifies its identities") {
    const CubicThreefold& X = threefold_f3();
    CHECK(X.node.str() == "([0]:[0]:[0]:[0]:[1])");
    // degree-2 tail in the chart y4 = 1 is minus the quadric: spot-check by
    // evaluating G at (y, 1) - F(y) + Q(y) = 0 for a few points
    const Field& F = X.base();
    for (const Fq& a : F.elements())
        for (const Fq& b : F.elements()) {
            std::vector<Fq> y{a, b, F.one(), a + b};
            std::vector<Fq> y5{a, b, F.one(), a + b, F.one()};
            Fq g = X.equation.eval(y5);
            Fq expect = X.C().cubic().eval(y) - X.C().quadric().eval(y);
            CHECK(g == expect);
        }
}

TEST_CASE("build rejects a broken equation through the identity check") {
    // sanity for the certification path: the identity fails when the cubic
    // of the threefold does not match the curve's system
    const CanonicalCurve& c = curve_f3();
    CubicThreefold X = build_threefold(c);
    // tamper: evaluating the composition with a wrong substituent is nonzero
    const Field& F = c.base();
    std::vector<HForm> subs;
    for (int i = 0; i < 4; ++i) {
        HForm xi(F, 4, 1);
        ExpVec e{};
        e[static_cast<std::size_t>(i)] = 1;
        xi.set(e, F.one());
        subs.push_back(xi * c.quadric());
    }
    HForm wrong = c.cubic() + c.cubic();  // 2F instead of F
    subs.push_back(wrong);
    CHECK(!X.equation.compose(subs).is_zero());
}

TEST_CASE("node lines are exactly the rational curve points") {
    const CubicThreefold& X = threefold_f3();
    const CanonicalCurve& c = X.C();
    const Field& F = X.base();
    // every curve point gives a line on X through the node
    for (const ProjPoint& r : c.points(1)) {
        Line L = node_line(X, r);
        CHECK(is_line_on(X, L));
        CHECK(L.contains(X.node));
    }
    // exhaustive direction scan over P^3(F_q): the lines through the node on
    // X correspond exactly to F = Q = 0
    long on_x = 0;
    auto elems = F.elements();
    std::vector<std::vector<Fq>> dirs;
    for (std::size_t cell = 0; cell < 4; ++cell) {
        // canonical representatives: first nonzero coordinate = 1
        std::vector<int> free_cols;
        for (std::size_t j = cell + 1; j < 4; ++j) free_cols.push_back(static_cast<int>(j));
        long count = 1;
        for (std::size_t i = 0; i < free_cols.size(); ++i) count *= static_cast<long>(elems.size());
        for (long idx = 0; idx < count; ++idx) {
            std::vector<Fq> v(4, F.zero());
            v[cell] = F.one();
            long rest = idx;
            for (int col : free_cols) {
                v[static_cast<std::size_t>(col)] =
                    elems[static_cast<std::size_t>(rest % static_cast<long>(elems.size()))];
                rest /= static_cast<long>(elems.size());
            }
            std::vector<Fq> v5 = v;
            v5.push_back(F.zero());
            ProjPoint dir(F, v5);
            std::vector<Fq> napex(5, F.zero());
            napex[4] = F.one();
            Line L(ProjPoint(F, napex), dir);
            if (is_line_on(X, L)) {
                ++on_x;
                // a direction with Q != 0 or F != 0 must not land on X
                CHECK(c.quadric().eval(std::span<const Fq>(v.data(), 4)).is_zero());
                CHECK(c.cubic().eval(std::span<const Fq>(v.data(), 4)).is_zero());
            }
        }
    }
    CHECK(on_x == c.count_points(1));
}

TEST_CASE("chord images lie on the threefold and avoid the node") {
    const CubicThreefold& X = threefold_f3();
    const CanonicalCurve& c = X.C();
    int chords = 0, nodes = 0;
    for (const PointPair& pr : c.sym_points()) {
        FanoLine img = chord_image(X, pr);
        CHECK(is_line_on(X, img.line));
        if (img.kind == FanoLine::Kind::Chord) {
            CHECK(!img.line.contains(X.node));
            ++chords;
        } else {
            CHECK(img.line.contains(X.node));
            REQUIRE(img.node_point.has_value());
            CHECK(c.on_curve(*img.node_point));
            ++nodes;
        }
    }
    CHECK(chords > 0);
    CHECK(nodes == 2 * c.count_points(1));  // two gamma images glue per point
}

TEST_CASE("gamma pairs map to the node line of the glued point") {
    const CubicThreefold& X = threefold_f3();
    const CanonicalCurve& c = X.C();
    for (const ProjPoint& r : c.points(1)) {
        for (int i : {1, 2}) {
            PointPair g = c.residual_pair(i, r);
            FanoLine img = chord_image(X, g);
            REQUIRE(img.kind == FanoLine::Kind::Node);
            const Field& EE = img.node_point->field();
            CHECK(*img.node_point == r.embedded(EE));
        }
    }
}

TEST_CASE("distinct generic pairs give distinct lines") {
    const CubicThreefold& X = threefold_f3();
    auto pairs = generic_pairs(X.C());
    std::set<Line> lines;
    for (const PointPair& pr : pairs) lines.insert(chord_image(X, pr).line);
    CHECK(lines.size() == pairs.size());
}

TEST_CASE("lines_meet conventions") {
    const Field& F = Field::get(7, 1);
    auto pt = [&](std::initializer_list<long> v) {
        std::vector<Fq> c;
        for (long x : v) c.push_back(F.from_int(x));
        return ProjPoint(F, c);
    };
    Line l1(pt({1, 0, 0, 0, 0}), pt({0, 1, 0, 0, 0}));
    Line l2(pt({0, 0, 1, 0, 0}), pt({0, 0, 0, 1, 0}));
    CHECK(lines_meet(l1, l1));   // self convention
    CHECK(!lines_meet(l1, l2));  // skew coordinate lines
    Line l3(pt({1, 0, 0, 0, 0}), pt({0, 0, 1, 0, 0}));
    CHECK(lines_meet(l1, l3));   // common point e0
    // two lines through the node meet
    const CubicThreefold& X = threefold_f3();
    auto p1 = X.C().points(1);
    CHECK(lines_meet(node_line(X, p1[0]), node_line(X, p1[1])));
}

TEST_CASE("census matches the glueing prediction on the F_3 instance") {
    const CubicThreefold& X = threefold_f3();
    CensusReport rep = fano_census(X, 2);
    CHECK(rep.n1 == 7);
    CHECK(rep.n2 == 21);
    CHECK(rep.grassmannian_size == 1210);  // [5 choose 2]_3
    CHECK(rep.predicted_total == (7 * 7 + 21) / 2 - 7);
    CHECK(rep.total == rep.predicted_total);
    CHECK(rep.through_node == 7);
    CHECK(rep.counts_match);
    CHECK(rep.classification_complete);
    // single-threaded run agrees
    CensusReport rep1 = fano_census(X, 1);
    CHECK(rep1.total == rep.total);
    CHECK(rep1.classification_complete);
}

TEST_CASE("common secants stabilize at five and cross-check the direct oracle") {
    const CubicThreefold& X = threefold_f3();
    const CanonicalCurve& c = X.C();
    auto pairs = generic_pairs(c);
    REQUIRE(pairs.size() >= 4);
    int verified = 0;
    for (std::size_t i = 0; i < pairs.size() && verified < 2; ++i)
        for (std::size_t j = i + 1; j < pairs.size() && verified < 2; ++j) {
            SecantReport rep;
            try {
                rep = common_secants(X, pairs[i], pairs[j], 10);
            } catch (const DegenerateConfiguration&) {
                continue;
            } catch (const NotStabilized&) {
                continue;
            }
            CHECK(rep.total == 5);
            CHECK(rep.stabilized);

            // independent oracle: scan all pairs of points over F_{3^2} and
            // test double trace membership directly; every member with both
            // endpoint degrees <= 2 must be among the recorded secants at
            // levels 1..2 and vice versa
            long oracle = 0;
            auto pts2 = c.points(2);
            for (std::size_t s = 0; s < pts2.size(); ++s)
                for (std::size_t t = s; t < pts2.size(); ++t) {
                    bool m1, m2;
                    try {
                        m1 = c.is_on_trace(pairs[i].a, pairs[i].b, pts2[s], pts2[t]);
                        m2 = c.is_on_trace(pairs[j].a, pairs[j].b, pts2[s], pts2[t]);
                    } catch (const DegenerateConfiguration&) {
                        continue;
                    }
                    if (m1 && m2) ++oracle;
                }
            long scanned = 0;
            for (const SecantRecord& r : rep.secants)
                if (r.found_level <= 2) ++scanned;
            CHECK(oracle == scanned);
            ++verified;
        }
    CHECK(verified == 2);
}

TEST_CASE("secants through a ruling chord decompose as two plus three") {
    const CubicThreefold& X = threefold_f3();
    const CanonicalCurve& c = X.C();
    // chord1 on the first trace curve, chord2 generic
    std::vector<PointPair> ruling1;
    for (const PointPair& pr : c.sym_points()) {
        auto idx = c.ruling_index_of_pair(pr);
        if (idx.has_value() && *idx == 1) ruling1.push_back(pr);
    }
    REQUIRE(!ruling1.empty());
    auto pairs = generic_pairs(c);
    int verified = 0;
    for (const PointPair& r1 : ruling1) {
        for (const PointPair& g : pairs) {
            SecantReport rep;
            try {
                rep = common_secants(X, r1, g, 10);
            } catch (const Error&) {
                continue;
            }
            CHECK(rep.total == 5);
            long on_c2 = 0, through_base = 0;
            for (const SecantRecord& rec : rep.secants) {
                if (rec.on_second_ruling) ++on_c2;
                if (rec.contains_base_point) ++through_base;
            }
            CHECK(on_c2 == 2);
            CHECK(through_base == 3);
            ++verified;
            break;
        }
        if (verified) break;
    }
    CHECK(verified == 1);
}

TEST_CASE("identical chords are rejected") {
    const CubicThreefold& X = threefold_f3();
    auto pairs = generic_pairs(X.C());
    CHECK_THROWS_AS(common_secants(X, pairs[0], pairs[0], 6), DegenerateConfiguration);
}

TEST_CASE("incidence equivalence has no discrepancies") {
    const CubicThreefold& X = threefold_f3();
    auto pairs = generic_pairs(X.C());
    Rng rng(71);
    int checked = 0;
    for (std::size_t i = 0; i < pairs.size() && checked < 3; ++i) {
        IncidenceReport rep = verify_incidence(X, pairs[i], 100, rng);
        CHECK(rep.trials == 100);
        CHECK(rep.discrepancies == 0);
        CHECK(rep.meets > 0);   // the divisor is nonempty
        CHECK(rep.meets < 100); // and proper
        ++checked;
    }
    CHECK(checked == 3);
}

TEST_CASE("gamma images of the reference meet its line") {
    const CubicThreefold& X = threefold_f3();
    const CanonicalCurve& c = X.C();
    auto pairs = generic_pairs(c);
    const PointPair& ref = pairs[0];
    Line ref_line = chord_image(X, ref).line;
    for (const ProjPoint* pt : {&ref.a, &ref.b})
        for (int i : {1, 2}) {
            PointPair g = c.residual_pair(i, *pt);
            Line gl = chord_image(X, g).line;
            int lcm_deg = static_cast<int>(std::lcm(gl.field().deg(), ref_line.field().deg()));
            const Field& EE = Field::get(3, lcm_deg);
            CHECK(lines_meet(gl.embedded(EE), ref_line.embedded(EE)));
        }
}

TEST_CASE("second-type detection agrees between trace test and tangent geometry") {
    // two routes on 50+ pairs: the rank test with tangent substitution
    // against the coplanarity of the two tangent lines
    int agreements = 0;
    for (const CanonicalCurve* c : {&curve_f3(), &curve_f5(), &curve_f7()}) {
        for (const PointPair& pr : generic_pairs(*c)) {
            if (pr.a == pr.b || agreements >= 80) continue;
            bool self_member = c->is_on_trace(pr.a, pr.b, pr.a, pr.b);
            bool tangents_coplanar = lines_meet(c->tangent_line(pr.a), c->tangent_line(pr.b));
            CHECK(self_member == tangents_coplanar);
            ++agreements;
        }
    }
    CHECK(agreements >= 50);
}

TEST_CASE("fiber divisors of a curve point are not complementary") {
    // For s on the curve, X_s meets C_1 at pairs {s, x} on ruling-1 lines;
    // the complementary image of such a pair is the gamma_2 pair of the
    // third point of that line. It never contains s on a smooth instance:
    // s would have to share a second-ruling line with the third point.
    int tested = 0;
    for (const CanonicalCurve* c : {&curve_f3(), &curve_f5()}) {
        for (const ProjPoint& s : c->points(1)) {
            PointPair g1 = c->residual_pair(1, s);
            if (g1.point_ext != 1) continue;
            PointPair m1 = PointPair::make(s, g1.a, 1);
            ProjPoint third = c->residual_base_point(m1.is_doubled() ? g1 : m1);
            PointPair comp = c->residual_pair(2, third);
            const Field& EE = comp.field();
            bool contains_s = comp.contains(s.embedded(EE));
            CHECK(!contains_s);
            ++tested;
            if (tested >= 12) break;
        }
        if (tested >= 12) break;
    }
    CHECK(tested >= 10);
}
