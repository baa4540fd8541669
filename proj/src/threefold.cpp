#include "fano/threefold.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <set>
#include <thread>

namespace fano {

namespace {

// Run fn(chunk_index) over [0, chunks) on up to `jobs` threads; merge order
// is the caller's responsibility (index it by chunk).
template <typename Fn>
void run_chunks(int jobs, int chunks, Fn&& fn) {
    if (jobs <= 1 || chunks <= 1) {
        for (int i = 0; i < chunks; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= chunks) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    int n = std::min(jobs, chunks);
    pool.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

HForm lift_to_five(const HForm& f) {
    HForm out(f.field(), 5, f.degree());
    for (const auto& [e, v] : f.terms()) out.set(e, v);
    return out;
}

std::vector<Fq> normal_of_plane(const Line& L, const ProjPoint& a) {
    const Field& E = a.field();
    Mat m = Mat::from_rows(E, {L.basis()[0], L.basis()[1], a.coords()});
    auto ker = m.kernel();
    if (ker.size() != 1) throw DegenerateConfiguration("point lies on the chord");
    return ker[0];
}

}  // namespace

CubicThreefold build_threefold(const CanonicalCurve& curve) {
    const Field& base = curve.base();
    CubicThreefold X;
    X.curve = &curve;

    HForm f5 = lift_to_five(curve.cubic());
    HForm q5 = lift_to_five(curve.quadric());
    HForm y4(base, 5, 1);
    y4.set(ExpVec{0, 0, 0, 0, 1}, base.one());
    X.equation = f5 - q5 * y4;

    std::vector<Fq> nc(5, base.zero());
    nc[4] = base.one();
    X.node = ProjPoint(base, nc);

    // The equation must vanish identically after substituting the cubic
    // system (x0 Q, x1 Q, x2 Q, x3 Q, F).
    std::vector<HForm> subs;
    for (int i = 0; i < 4; ++i) {
        HForm xi(base, 4, 1);
        ExpVec e{};
        e[static_cast<std::size_t>(i)] = 1;
        xi.set(e, base.one());
        subs.push_back(xi * curve.quadric());
    }
    subs.push_back(curve.cubic());
    if (!X.equation.compose(subs).is_zero())
        throw IdentityFailure("threefold equation does not contain the cubic system image");

    // All five partials vanish at the node.
    for (int j = 0; j < 5; ++j)
        if (!X.equation.partial(j).eval(X.node).is_zero())
            throw IdentityFailure("threefold gradient does not vanish at the node");

    // Tangent cone in the chart y4 = 1: the quadratic part is -Q; its polar
    // Gram matrix must have rank 4 (an ordinary node in any characteristic).
    Mat gram(base, 4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            ExpVec e{};
            e[static_cast<std::size_t>(i)] += 1;
            e[static_cast<std::size_t>(j)] += 1;
            Fq c = curve.quadric().coeff(e);
            gram.at(i, j) = i == j ? c + c : c;
        }
    if (gram.rank() != 4) throw IdentityFailure("tangent cone at the node is degenerate");

    return X;
}

bool is_line_on(const CubicThreefold& X, const Line& L) {
    return X.equation.restrict_to_line(L).is_zero();
}

Line node_line(const CubicThreefold& X, const ProjPoint& r) {
    if (!X.C().on_curve(r)) throw MismatchError("node line through a point off the curve");
    const Field& E = r.field();
    std::vector<Fq> dir(5, E.zero());
    for (int i = 0; i < 4; ++i) dir[static_cast<std::size_t>(i)] = r[i];
    std::vector<Fq> napex(5, E.zero());
    napex[4] = E.one();
    return Line(E, napex, dir);
}

FanoLine chord_image(const CubicThreefold& X, const PointPair& pair) {
    const CanonicalCurve& C = X.C();
    const Field& E = pair.field();
    Line L3 = C.chord_line(pair);
    FanoLine out;
    out.pair = pair;

    BForm qL = C.quadric().restrict_to_line(L3);
    if (qL.is_zero()) {
        // The chord sits on the quadric: the Fano point is glued to the line
        // through the node over the third point of the ruling divisor.
        ProjPoint r = C.residual_base_point(pair);
        out.kind = FanoLine::Kind::Node;
        out.node_point = r;
        out.line = node_line(X, r);
    } else {
        // On the chord the five cubics have the common quadratic factor Q|L;
        // after dividing it out the map is linear: (s, t) -> (P(s, t) : h(s, t))
        // with h = F|L / Q|L.
        BForm fL = C.cubic().restrict_to_line(L3);
        BForm h = fL.divide_exact(qL);
        const auto& B = L3.basis();
        std::vector<Fq> v0(5, E.zero()), v1(5, E.zero());
        for (int i = 0; i < 4; ++i) {
            v0[static_cast<std::size_t>(i)] = B[0][static_cast<std::size_t>(i)];
            v1[static_cast<std::size_t>(i)] = B[1][static_cast<std::size_t>(i)];
        }
        v0[4] = h.coeff(1);  // image of (s, t) = (1, 0)
        v1[4] = h.coeff(0);  // image of (s, t) = (0, 1)
        out.kind = FanoLine::Kind::Chord;
        out.line = Line(E, v0, v1);
    }
    // A Galois-stable pair yields a line defined over the pair's field.
    if (pair.pair_ext * X.base().deg() < E.deg()) {
        const Field& sub = Field::get(X.base().p(), X.base().deg() * pair.pair_ext);
        out.line = out.line.descended(sub);
        if (out.node_point) {
            // The glued point is fixed by the same Frobenius.
            out.node_point = ProjPoint(sub, [&] {
                std::vector<Fq> cs;
                for (const Fq& c : out.node_point->coords())
                    cs.push_back(E.descend(c, sub));
                return cs;
            }());
        }
    }
    if (!is_line_on(X, out.line)) throw IdentityFailure("image line is not on the threefold");
    return out;
}

CensusReport fano_census(const CubicThreefold& X, int jobs) {
    const CanonicalCurve& C = X.C();
    const Field& base = X.base();
    CensusReport rep;
    rep.n1 = C.count_points(1);
    rep.n2 = C.count_points(2);
    rep.predicted_node = rep.n1;
    rep.predicted_total = (rep.n1 * rep.n1 + rep.n2) / 2 - rep.n1;

    auto elems = base.elements();
    const long q = static_cast<long>(elems.size());

    // Schubert cells of Gr(2,5): pivot pair (i, j), free entries in row 0 at
    // columns > i except j, in row 1 at columns > j.
    struct Cell {
        int i, j;
        std::vector<int> free0, free1;
        long count;
    };
    std::vector<Cell> cells;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) {
            Cell c{i, j, {}, {}, 1};
            for (int col = i + 1; col < 5; ++col)
                if (col != j) c.free0.push_back(col);
            for (int col = j + 1; col < 5; ++col) c.free1.push_back(col);
            for (std::size_t f = 0; f < c.free0.size() + c.free1.size(); ++f) c.count *= q;
            cells.push_back(c);
        }
    rep.grassmannian_size = 0;
    for (const Cell& c : cells) rep.grassmannian_size += c.count;

    // Work items: (cell, index range); ranges sized for reasonable balance.
    struct Task {
        const Cell* cell;
        long lo, hi;
    };
    std::vector<Task> tasks;
    const long step = 65536;
    for (const Cell& c : cells)
        for (long lo = 0; lo < c.count; lo += step)
            tasks.push_back({&c, lo, std::min(c.count, lo + step)});

    std::vector<std::vector<Line>> hits(tasks.size());
    run_chunks(jobs, static_cast<int>(tasks.size()), [&](int ti) {
        const Task& task = tasks[static_cast<std::size_t>(ti)];
        const Cell& cell = *task.cell;
        const Field& F = base;
        std::vector<Fq> r0(5, F.zero()), r1(5, F.zero());
        r0[static_cast<std::size_t>(cell.i)] = F.one();
        r1[static_cast<std::size_t>(cell.j)] = F.one();
        for (long idx = task.lo; idx < task.hi; ++idx) {
            long rest = idx;
            for (int col : cell.free0) {
                r0[static_cast<std::size_t>(col)] = elems[static_cast<std::size_t>(rest % q)];
                rest /= q;
            }
            for (int col : cell.free1) {
                r1[static_cast<std::size_t>(col)] = elems[static_cast<std::size_t>(rest % q)];
                rest /= q;
            }
            // cheap rejection: both basis points must lie on the threefold
            if (!X.equation.eval(r0).is_zero()) continue;
            if (!X.equation.eval(r1).is_zero()) continue;
            Line L(F, r0, r1);
            if (is_line_on(X, L)) hits[static_cast<std::size_t>(ti)].push_back(L);
        }
    });

    std::vector<Line> found;
    for (auto& h : hits) found.insert(found.end(), h.begin(), h.end());
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    rep.total = static_cast<long>(found.size());
    for (const Line& L : found)
        if (L.contains(X.node)) ++rep.through_node;
    rep.chord_type = rep.total - rep.through_node;
    rep.counts_match =
        rep.total == rep.predicted_total && rep.through_node == rep.predicted_node;

    // Classification completeness: the images of all stable pairs, plus the
    // node lines of the rational points, must reproduce the enumerated set.
    std::set<Line> predicted;
    for (const ProjPoint& r : C.points(1)) predicted.insert(node_line(X, r));
    for (const PointPair& pr : C.sym_points()) predicted.insert(chord_image(X, pr).line);
    rep.classification_complete =
        std::equal(found.begin(), found.end(), predicted.begin(), predicted.end()) &&
        found.size() == predicted.size();
    return rep;
}

SecantReport common_secants(const CubicThreefold& X, const PointPair& chord1,
                            const PointPair& chord2, int ext_bound) {
    const CanonicalCurve& C = X.C();
    const Field& base = X.base();
    const int k = base.deg();
    if (chord1.pair_ext != 1 || chord2.pair_ext != 1)
        throw DegenerateConfiguration("chords must be defined over the base field");

    Line l1 = C.chord_line(chord1);
    Line l2 = C.chord_line(chord2);
    if (l1.field().deg() != k) l1 = l1.descended(base);
    if (l2.field().deg() != k) l2 = l2.descended(base);
    if (lines_meet(l1, l2)) throw DegenerateConfiguration("chords are not skew");

    SecantReport rep;
    rep.ext_bound = ext_bound;
    rep.new_per_level.assign(static_cast<std::size_t>(ext_bound) + 1, 0);

    // Membership of a candidate pair in both trace divisors; degenerate
    // coincidences are treated as non-members of the generic configuration.
    auto member = [&](const ProjPoint& x, const ProjPoint& y) {
        try {
            return C.is_on_trace(chord1.a, chord1.b, x, y) &&
                   C.is_on_trace(chord2.a, chord2.b, x, y);
        } catch (const DegenerateConfiguration&) {
            return false;
        }
    };

    // Base point of a ruling chord, for classifying the decomposition when
    // one of the chords lies on a trace curve. It is fixed by the stable
    // line and pair, hence rational over the base.
    std::optional<ProjPoint> base_point1;
    if (C.ruling_index_of_pair(chord1).has_value()) {
        ProjPoint r = C.residual_base_point(chord1);
        std::vector<Fq> cs;
        for (const Fq& v : r.coords()) cs.push_back(r.field().descend(v, base));
        base_point1 = ProjPoint(base, cs);
    }

    auto record = [&](int level, const ProjPoint& x, const ProjPoint& y) {
        int dx = point_degree(x, k), dy = point_degree(y, k);
        int min_deg = std::min(dx, dy);
        if (min_deg != level) return;  // attributed at its own minimal level
        PointPair pr = PointPair::make(x, y, k);
        SecantRecord rec;
        rec.found_level = level;
        rec.pair_degree = pr.pair_ext;
        rec.endpoint_degree = min_deg;
        rec.pair_text = pr.str();
        auto ruling = C.ruling_index_of_pair(pr);
        rec.on_second_ruling = ruling.has_value();
        if (base_point1) {
            const Field& EE = x.field();
            ProjPoint r = base_point1->embedded(EE);
            rec.contains_base_point = x == r || y == r;
        }
        rep.secants.push_back(rec);
        ++rep.new_per_level[static_cast<std::size_t>(level)];
    };

    for (int m = 1; m <= ext_bound; ++m) {
        const Field& E = C.ext(m);
        Line l1e = l1.embedded(E), l2e = l2.embedded(E);
        std::set<std::string> seen;  // per-level dedup, keyed across fields
        auto consider = [&](const ProjPoint& x, const ProjPoint& y) {
            ProjPoint a = x, b = y;
            if (b < a) std::swap(a, b);
            if (!seen.insert(std::to_string(a.field().deg()) + a.str() + b.str()).second)
                return;
            if (!member(a, b)) return;
            record(m, a, b);
        };
        for (const ProjPoint& a : C.points(m)) {
            if (l1e.contains(a) || l2e.contains(a)) continue;
            std::vector<Fq> n1 = normal_of_plane(l1e, a);
            std::vector<Fq> n2 = normal_of_plane(l2e, a);
            Mat sys = Mat::from_rows(E, {n1, n2});
            auto ker = sys.kernel();
            if (ker.size() != 2)
                throw DegenerateConfiguration("transversal through a curve point is not unique");
            Line T(E, ker[0], ker[1]);
            BForm qT = C.quadric().restrict_to_line(T);
            BForm fT = C.cubic().restrict_to_line(T);
            if (qT.is_zero()) {
                // Ruling transversal: every pair in its degree-3 divisor is a
                // candidate. Pairs with an endpoint of higher degree are
                // attributed at that endpoint's own scan level.
                if (fT.is_zero()) throw SingularCurve("ruling line inside the curve");
                auto rts = fT.proj_roots();
                for (std::size_t i = 0; i < rts.size(); ++i)
                    for (std::size_t j = i + 1; j < rts.size(); ++j)
                        consider(T.point_at(rts[i].first, rts[i].second),
                                 T.point_at(rts[j].first, rts[j].second));
                continue;
            }
            auto [sa, ta] = [&] {
                const auto& B = T.basis();
                int j0 = -1, j1 = -1;
                for (std::size_t col = 0; col < B[0].size(); ++col)
                    if (!B[0][col].is_zero()) { j0 = static_cast<int>(col); break; }
                for (std::size_t col = 0; col < B[1].size(); ++col)
                    if (!B[1][col].is_zero()) { j1 = static_cast<int>(col); break; }
                return std::pair<Fq, Fq>(a[j0], a[j1]);
            }();
            if (!qT.eval(sa, ta).is_zero() || !fT.eval(sa, ta).is_zero())
                throw IdentityFailure("curve point is off its own transversal restriction");
            BForm q1 = qT.deflate_at(sa, ta);
            BForm f2 = fT.deflate_at(sa, ta);
            // Second quadric point on the transversal; the pair is a secant
            // when the cubic vanishes there as well.
            Fq s1 = q1.coeff(1), t1 = q1.coeff(0);
            // root of u*s + w*t is (s : t) = (-w : u) ... q1 = u*s + w*t
            Fq rs = -t1, rt = s1;
            if (rs.is_zero() && rt.is_zero()) continue;
            if (!f2.eval(rs, rt).is_zero()) continue;
            consider(a, T.point_at(rs, rt));
        }
        // Direct check of endpoint pairs at their own level.
        if (m == 1) {
            for (const ProjPoint* x : {&chord1.a, &chord1.b})
                for (const ProjPoint* y : {&chord2.a, &chord2.b}) {
                    int lcm_deg = static_cast<int>(
                        std::lcm(x->field().deg(), y->field().deg()));
                    const Field& EE = Field::get(base.p(), lcm_deg);
                    ProjPoint xe = x->embedded(EE), ye = y->embedded(EE);
                    if (member(xe, ye)) record(std::min(point_degree(xe, k), point_degree(ye, k)),
                                               xe, ye);
                }
        }
        rep.total = 0;
        rep.stabilization_degree = 0;
        for (int lvl = 1; lvl <= ext_bound; ++lvl) {
            long n = rep.new_per_level[static_cast<std::size_t>(lvl)];
            rep.total += n;
            if (n > 0) rep.stabilization_degree = lvl;
        }
        // The lattice pairing bounds the intersection by 5, so five distinct
        // points exhaust it; levels past the current one cannot add more.
        if (rep.total >= 5) break;
    }

    if (rep.total > 5)
        throw DegenerateConfiguration("more than five intersection points: shared component");
    rep.stabilized = rep.total == 5;
    if (!rep.stabilized) throw NotStabilized(ext_bound);
    return rep;
}

IncidenceReport verify_incidence(const CubicThreefold& X, const PointPair& ref, int trials,
                                 Rng& rng) {
    const CanonicalCurve& C = X.C();
    const int k = X.base().deg();
    if (C.ruling_index_of_pair(ref).has_value())
        throw DegenerateConfiguration("reference pair lies on a trace curve");
    Line ref_line = chord_image(X, ref).line;

    // The four gamma images of the reference points.
    std::vector<PointPair> gammas;
    for (const ProjPoint* pt : {&ref.a, &ref.b})
        for (int i : {1, 2}) gammas.push_back(C.residual_pair(i, *pt));

    auto pool = C.sym_points();
    IncidenceReport rep;
    int guard = 0;
    while (rep.trials < trials && guard < 100 * trials) {
        ++guard;
        const PointPair& pr = pool[rng.below(pool.size())];
        // the self pair is excluded: a line always meets itself, membership
        // of the pair in its own divisor is the second-type condition
        if (pr.field().deg() == ref.field().deg() && pr == ref) continue;
        bool lhs = lines_meet(chord_image(X, pr).line, ref_line);
        bool rhs;
        try {
            rhs = C.is_on_trace(ref.a, ref.b, pr.a, pr.b);
        } catch (const DegenerateConfiguration&) {
            ++rep.skipped;
            continue;
        }
        if (!rhs) {
            for (const PointPair& g : gammas) {
                int lcm_deg =
                    static_cast<int>(std::lcm(g.field().deg(), pr.field().deg()));
                const Field& EE = Field::get(X.base().p(), lcm_deg);
                if (g.embedded(EE, k) == pr.embedded(EE, k)) {
                    rhs = true;
                    break;
                }
            }
        }
        if (lhs) ++rep.meets;
        if (lhs != rhs) ++rep.discrepancies;
        ++rep.trials;
    }
    return rep;
}

}  // namespace fano
