#include "fano/curve.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace fano {

namespace {

// Scan budget: largest extension field a fiber enumeration may walk.
constexpr std::uint64_t kScanBudget = 20'000'000;

// Bidegree (ds, du) form on P^1 x P^1; entry (i, j) multiplies
// s^i t^(ds-i) u^j v^(du-j).
struct BiForm {
    const Field* F = nullptr;
    int ds = 0, du = 0;
    std::vector<Fq> c;

    BiForm() = default;
    BiForm(const Field& f, int s_deg, int u_deg)
        : F(&f), ds(s_deg), du(u_deg),
          c(static_cast<std::size_t>((s_deg + 1) * (u_deg + 1)), f.zero()) {}

    Fq& at(int i, int j) { return c[static_cast<std::size_t>(i * (du + 1) + j)]; }
    const Fq& at(int i, int j) const { return c[static_cast<std::size_t>(i * (du + 1) + j)]; }

    // Pullback of a cubic in x0..x3 through the Segre map
    // (s:t),(u:v) -> (su, sv, tu, tv).
    static BiForm from_cubic(const HForm& cubic) {
        BiForm g(cubic.field(), 3, 3);
        for (const auto& [e, v] : cubic.terms()) {
            int a = e[0], b = e[1], cc = e[2], d = e[3];
            g.at(a + b, a + cc) = g.at(a + b, a + cc) + v;
        }
        return g;
    }

    BiForm d_s() const {
        BiForm r(*F, ds - 1, du);
        for (int i = 1; i <= ds; ++i)
            for (int j = 0; j <= du; ++j) r.at(i - 1, j) = F->from_int(i) * at(i, j);
        return r;
    }
    BiForm d_t() const {
        BiForm r(*F, ds - 1, du);
        for (int i = 0; i < ds; ++i)
            for (int j = 0; j <= du; ++j) r.at(i, j) = F->from_int(ds - i) * at(i, j);
        return r;
    }
    BiForm d_u() const {
        BiForm r(*F, ds, du - 1);
        for (int i = 0; i <= ds; ++i)
            for (int j = 1; j <= du; ++j) r.at(i, j - 1) = F->from_int(j) * at(i, j);
        return r;
    }
    BiForm d_v() const {
        BiForm r(*F, ds, du - 1);
        for (int i = 0; i <= ds; ++i)
            for (int j = 0; j < du; ++j) r.at(i, j) = F->from_int(du - j) * at(i, j);
        return r;
    }

    BiForm embedded(const Field& top) const {
        BiForm r(top, ds, du);
        for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = F->embed(c[i], top);
        return r;
    }

    // Restriction to the fiber over (u0 : v0): binary form in (s, t).
    BForm fiber(const Fq& u0, const Fq& v0) const {
        const Field& E = *u0.F;
        std::vector<Fq> upow(static_cast<std::size_t>(du) + 1, E.one());
        std::vector<Fq> vpow(static_cast<std::size_t>(du) + 1, E.one());
        for (int j = 1; j <= du; ++j) {
            upow[static_cast<std::size_t>(j)] = upow[static_cast<std::size_t>(j - 1)] * u0;
            vpow[static_cast<std::size_t>(j)] = vpow[static_cast<std::size_t>(j - 1)] * v0;
        }
        BForm h(E, ds);
        for (int i = 0; i <= ds; ++i) {
            Fq acc = E.zero();
            for (int j = 0; j <= du; ++j) {
                const Fq& cij = at(i, j);
                if (cij.is_zero()) continue;
                acc = acc + cij * upow[static_cast<std::size_t>(j)] *
                                vpow[static_cast<std::size_t>(du - j)];
            }
            h.coeff(i) = acc;
        }
        return h;
    }
};

// Visit P^1(E) as (1, 0) then (u, 1) in element order.
template <typename Fn>
void for_p1(const Field& E, Fn&& fn) {
    fn(E.one(), E.zero());
    for (const Fq& u : E.elements()) fn(u, E.one());
}

Fq polar_value(const HForm& Q, const ProjPoint& x, const ProjPoint& y) {
    const Field& E = x.field();
    std::vector<Fq> sum(x.coords());
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = sum[i] + y[static_cast<int>(i)];
    return Q.eval(sum) - Q.eval(x.coords()) - Q.eval(y.coords());
}

BForm bform_mul(const BForm& a, const BForm& b) {
    const Field& E = a.field();
    BForm r(E, a.degree() + b.degree());
    for (int i = 0; i <= a.degree(); ++i) {
        if (a.coeff(i).is_zero()) continue;
        for (int j = 0; j <= b.degree(); ++j)
            r.coeff(i + j) = r.coeff(i + j) + a.coeff(i) * b.coeff(j);
    }
    return r;
}

BForm bform_embed(const BForm& f, const Field& top) {
    const Field& E = f.field();
    BForm r(top, f.degree());
    for (int i = 0; i <= f.degree(); ++i) r.coeff(i) = E.embed(f.coeff(i), top);
    return r;
}

// Parameter of p on the line: read off at the pivot columns of the echelon
// basis.
std::pair<Fq, Fq> param_on_line(const Line& L, const ProjPoint& p) {
    const auto& B = L.basis();
    int j0 = -1, j1 = -1;
    for (std::size_t j = 0; j < B[0].size(); ++j)
        if (!B[0][j].is_zero()) { j0 = static_cast<int>(j); break; }
    for (std::size_t j = 0; j < B[1].size(); ++j)
        if (!B[1][j].is_zero()) { j1 = static_cast<int>(j); break; }
    return {p[j0], p[j1]};
}

std::pair<Fq, Fq> uv_params(const ProjPoint& x) {
    if (!x[0].is_zero() || !x[1].is_zero()) return {x[0], x[1]};
    return {x[2], x[3]};
}

std::pair<Fq, Fq> st_params(const ProjPoint& x) {
    if (!x[0].is_zero() || !x[2].is_zero()) return {x[0], x[2]};
    return {x[1], x[3]};
}

}  // namespace

// ---------------------------------------------------------------- PointPair

PointPair PointPair::make(const ProjPoint& x, const ProjPoint& y, int base_deg) {
    if (&x.field() != &y.field()) throw MismatchError("pair points in different fields");
    PointPair pr;
    if (y < x) {
        pr.a = y;
        pr.b = x;
    } else {
        pr.a = x;
        pr.b = y;
    }
    const Field& E = pr.a.field();
    if (E.deg() % base_deg != 0) throw MismatchError("pair field does not extend the base");
    pr.point_ext = E.deg() / base_deg;
    pr.pair_ext = pr.point_ext;
    for (int d = 1; d < pr.point_ext; ++d) {
        if (pr.point_ext % d != 0) continue;
        ProjPoint fa = pr.a.frobenius(base_deg * d);
        ProjPoint fb = pr.b.frobenius(base_deg * d);
        if ((fa == pr.a && fb == pr.b) || (fa == pr.b && fb == pr.a)) {
            pr.pair_ext = d;
            break;
        }
    }
    return pr;
}

PointPair PointPair::embedded(const Field& top, int base_deg) const {
    return make(a.embedded(top), b.embedded(top), base_deg);
}

std::string PointPair::str() const { return a.str() + "+" + b.str(); }

// ---------------------------------------------------------------- validation

namespace {

HForm cubic_from_spec(const Field& base, const CurveSpec& spec) {
    HForm f(base, 4, 3);
    for (const auto& [mono, value] : spec.f_coeffs) {
        if (mono.size() != 4) throw ParseError("exponent string must have 4 digits");
        ExpVec e{};
        int total = 0;
        for (int i = 0; i < 4; ++i) {
            if (mono[static_cast<std::size_t>(i)] < '0' || mono[static_cast<std::size_t>(i)] > '9')
                throw ParseError("bad exponent digit");
            e[static_cast<std::size_t>(i)] =
                static_cast<std::uint8_t>(mono[static_cast<std::size_t>(i)] - '0');
            total += e[static_cast<std::size_t>(i)];
        }
        if (total != 3) throw ParseError("monomial " + mono + " does not have degree 3");
        // value encodes base-p digits of the coefficient
        long v = value;
        if (v < 0) throw ParseError("coefficient values must be non-negative");
        std::vector<coeff_t> digits;
        while (v) {
            digits.push_back(static_cast<coeff_t>(v % base.p()));
            v /= base.p();
        }
        if (static_cast<int>(digits.size()) > base.deg())
            throw ParseError("coefficient value out of range for the field");
        f.set(e, f.coeff(e) + base.make(digits));
    }
    return f;
}

}  // namespace

CanonicalCurve CanonicalCurve::validate(const CurveSpec& spec, const ValidateOptions& opt) {
    const Field& base = Field::get(spec.p, spec.k);
    // Only the split quadric is accepted.
    HForm q(base, 4, 2);
    for (const auto& [mono, value] : spec.q_coeffs) {
        if (mono.size() != 4) throw ParseError("exponent string must have 4 digits");
        ExpVec e{};
        int total = 0;
        for (int i = 0; i < 4; ++i) {
            e[static_cast<std::size_t>(i)] =
                static_cast<std::uint8_t>(mono[static_cast<std::size_t>(i)] - '0');
            total += e[static_cast<std::size_t>(i)];
        }
        if (total != 2) throw ParseError("monomial " + mono + " does not have degree 2");
        q.set(e, base.from_int(value));
    }
    if (!(q == HForm::split_quadric(base)))
        throw SingularQuadric("only the split quadric x0*x3 - x1*x2 is accepted");
    return validate(base, cubic_from_spec(base, spec), opt);
}

CanonicalCurve CanonicalCurve::validate(const Field& base, const HForm& cubic,
                                        const ValidateOptions& opt) {
    if (cubic.nvars() != 4 || cubic.degree() != 3)
        throw ParseError("the curve cubic must have degree 3 in 4 variables");
    if (cubic.is_zero()) throw SingularCurve("zero cubic");

    CanonicalCurve c;
    c.base_ = &base;
    c.Q_ = HForm::split_quadric(base);
    c.F_ = cubic;

    // Singular-locus scan on the Segre side: a singular point of the curve is
    // a common zero of the bidegree (3,3) pullback and its four partials. For
    // each fiber over (u0 : v0) the five restrictions are binary forms in
    // (s, t); a nonconstant common divisor is a singular point over the
    // closure with this (u0 : v0).
    BiForm g = BiForm::from_cubic(cubic);
    BiForm gs = g.d_s(), gt = g.d_t(), gu = g.d_u(), gv = g.d_v();
    for (int m = 1; m <= opt.smooth_bound; ++m) {
        const Field& E = c.ext(m);
        if (E.order() > kScanBudget)
            throw ResourceBound("smoothness scan at extension degree " + std::to_string(m));
        BiForm ge = g.embedded(E), gse = gs.embedded(E), gte = gt.embedded(E),
               gue = gu.embedded(E), gve = gv.embedded(E);
        std::string witness;
        for_p1(E, [&](const Fq& u0, const Fq& v0) {
            if (!witness.empty()) return;
            BForm h0 = ge.fiber(u0, v0);
            if (h0.is_zero()) {
                witness = "fiber (" + u0.str() + ":" + v0.str() + ") lies in the curve";
                return;
            }
            BForm acc = h0;
            for (const BiForm* d : {&gse, &gte, &gue, &gve}) {
                if (acc.degree() == 0) break;
                BForm h = d->fiber(u0, v0);
                if (h.is_zero()) continue;
                acc = gcd(acc, h);
            }
            if (acc.degree() >= 1) {
                witness = "singular point over " + E.name() + " in fiber (" + u0.str() + ":" +
                          v0.str() + ")";
            }
        });
        if (!witness.empty()) throw SingularCurve(witness);
    }
    c.smooth_bound_ = opt.smooth_bound;

    // Weil range check, genus 4: |N_m - (q^m + 1)| <= 8 q^(m/2), kept in
    // integers as (N_m - q^m - 1)^2 <= 64 q^m.
    for (int m = 1; m <= opt.weil_bound; ++m) {
        long n = c.count_points(m);
        const std::uint64_t qm = c.ext(m).order();
        long long dev = static_cast<long long>(n) - static_cast<long long>(qm) - 1;
        if (dev * dev > 64 * static_cast<long long>(qm)) throw WeilBoundViolation(m, n);
        c.counts_.push_back(n);
    }

    c.hash_ = spec_hash(c.spec());
    return c;
}

const Field& CanonicalCurve::ext(int m) const {
    return Field::get(base_->p(), base_->deg() * m);
}

long CanonicalCurve::count_points(int m) const {
    const Field& E = ext(m);
    if (E.order() > kScanBudget)
        throw ResourceBound("point count at extension degree " + std::to_string(m));
    BiForm g = BiForm::from_cubic(F_).embedded(E);
    long total = 0;
    for_p1(E, [&](const Fq& u0, const Fq& v0) {
        BForm h0 = g.fiber(u0, v0);
        if (h0.is_zero()) throw SingularCurve("fiber contained in the curve");
        total += h0.count_proj_roots();
    });
    return total;
}

std::vector<ProjPoint> CanonicalCurve::points(int m) const {
    {
        std::lock_guard<std::mutex> lock(*cache_mu_);
        auto it = points_cache_->find(m);
        if (it != points_cache_->end()) return it->second;
    }
    const Field& E = ext(m);
    if (E.order() > kScanBudget)
        throw ResourceBound("point enumeration at extension degree " + std::to_string(m));
    BiForm g = BiForm::from_cubic(F_).embedded(E);
    std::vector<ProjPoint> out;
    for_p1(E, [&](const Fq& u0, const Fq& v0) {
        BForm h0 = g.fiber(u0, v0);
        if (h0.is_zero()) throw SingularCurve("fiber contained in the curve");
        auto rts = h0.proj_roots();
        std::sort(rts.begin(), rts.end());
        rts.erase(std::unique(rts.begin(), rts.end()), rts.end());
        for (const auto& [s0, t0] : rts) {
            std::vector<Fq> x{s0 * u0, s0 * v0, t0 * u0, t0 * v0};
            out.emplace_back(E, std::move(x));
        }
    });
    std::sort(out.begin(), out.end());
    std::lock_guard<std::mutex> lock(*cache_mu_);
    (*points_cache_)[m] = out;
    return out;
}

bool CanonicalCurve::on_curve(const ProjPoint& pt) const {
    return Q_.eval(pt).is_zero() && F_.eval(pt).is_zero();
}

Line CanonicalCurve::tangent_line(const ProjPoint& pt) const {
    const Field& E = pt.field();
    if (!on_curve(pt)) throw MismatchError("tangent line at a point off the curve");
    Mat jac(E, 2, 4);
    for (int j = 0; j < 4; ++j) {
        jac.at(0, j) = Q_.partial(j).eval(pt.coords());
        jac.at(1, j) = F_.partial(j).eval(pt.coords());
    }
    auto ker = jac.kernel();
    if (ker.size() != 2)
        throw SingularCurve("Jacobian kernel of dimension " + std::to_string(ker.size()) +
                            " at " + pt.str());
    return Line(E, ker[0], ker[1]);
}

std::pair<Line, Line> CanonicalCurve::ruling_lines(const ProjPoint& pt) const {
    const Field& E = pt.field();
    if (!Q_.eval(pt).is_zero()) throw MismatchError("point is not on the quadric");
    auto [u, v] = uv_params(pt);
    auto [s, t] = st_params(pt);
    Fq z = E.zero();
    Line l1(E, {u, v, z, z}, {z, z, u, v});
    Line l2(E, {s, z, t, z}, {z, s, z, t});
    return {l1, l2};
}

PointPair CanonicalCurve::residual_pair(int ruling, const ProjPoint& p) const {
    if (ruling != 1 && ruling != 2) throw ParseError("ruling index must be 1 or 2");
    if (!on_curve(p)) throw MismatchError("residual pair at a point off the curve");
    const Field& E = p.field();
    auto lines = ruling_lines(p);
    const Line& L = ruling == 1 ? lines.first : lines.second;
    BForm f3 = F_.restrict_to_line(L);
    auto [s0, t0] = param_on_line(L, p);
    BForm f2 = f3.deflate_at(s0, t0);
    auto rts = f2.proj_roots();
    if (rts.size() == 2) {
        return PointPair::make(L.point_at(rts[0].first, rts[0].second),
                               L.point_at(rts[1].first, rts[1].second), base_->deg());
    }
    // The residual quadratic is irreducible; its roots live one quadratic
    // extension up.
    const Field& E2 = Field::get(base_->p(), E.deg() * 2);
    BForm f2e = bform_embed(f2, E2);
    Line L2 = L.embedded(E2);
    auto rts2 = f2e.proj_roots();
    if (rts2.size() != 2) throw IdentityFailure("quadratic did not split over its extension");
    return PointPair::make(L2.point_at(rts2[0].first, rts2[0].second),
                           L2.point_at(rts2[1].first, rts2[1].second), base_->deg());
}

Line CanonicalCurve::chord_line(const PointPair& pair) const {
    if (pair.is_doubled()) return tangent_line(pair.a);
    return Line(pair.a, pair.b);
}

std::optional<int> CanonicalCurve::ruling_index_of_pair(const PointPair& pair) const {
    Line L = chord_line(pair);
    if (!Q_.restrict_to_line(L).is_zero()) return std::nullopt;
    const Field& E = L.field();
    ProjPoint r0 = L.point_at(E.one(), E.zero());
    ProjPoint r1 = L.point_at(E.zero(), E.one());
    auto [u0, v0] = uv_params(r0);
    auto [u1, v1] = uv_params(r1);
    if (u0 * v1 == u1 * v0) return 1;
    auto [s0me, t0me] = st_params(r0);
    auto [s1me, t1me] = st_params(r1);
    if (s0me * t1me == s1me * t0me) return 2;
    throw IdentityFailure("line on the quadric matches neither ruling");
}

ProjPoint CanonicalCurve::residual_base_point(const PointPair& pair) const {
    Line L = chord_line(pair);
    if (!Q_.restrict_to_line(L).is_zero())
        throw MismatchError("pair chord is not a ruling line");
    BForm f3 = F_.restrict_to_line(L);
    auto [sa, ta] = param_on_line(L, pair.a);
    auto [sb, tb] = param_on_line(L, pair.b);
    BForm f1 = f3.deflate_at(sa, ta).deflate_at(sb, tb);
    auto rts = f1.proj_roots();
    if (rts.size() != 1) throw IdentityFailure("residual root of a ruling line not unique");
    return L.point_at(rts[0].first, rts[0].second);
}

bool CanonicalCurve::is_on_trace(const ProjPoint& p, const ProjPoint& q, const ProjPoint& a,
                                 const ProjPoint& b) const {
    // Common field for all four points.
    int lcm_deg = 1;
    for (const ProjPoint* pt : {&p, &q, &a, &b})
        lcm_deg = static_cast<int>(std::lcm(lcm_deg, pt->field().deg()));
    const Field& E = Field::get(base_->p(), lcm_deg);
    std::vector<ProjPoint> pts{p.embedded(E), q.embedded(E), a.embedded(E), b.embedded(E)};
    for (const auto& pt : pts)
        if (!on_curve(pt)) throw MismatchError("trace membership for a point off the curve");

    // Group coincident points; a doubled point contributes its tangent line.
    std::vector<std::pair<ProjPoint, int>> groups;
    for (const auto& pt : pts) {
        bool found = false;
        for (auto& [gp, count] : groups)
            if (gp == pt) {
                ++count;
                found = true;
                break;
            }
        if (!found) groups.emplace_back(pt, 1);
    }
    std::vector<std::vector<Fq>> rows;
    for (const auto& [gp, count] : groups) {
        if (count == 1) {
            rows.push_back(gp.coords());
        } else if (count == 2) {
            Line t = tangent_line(gp);
            rows.push_back(t.basis()[0]);
            rows.push_back(t.basis()[1]);
        } else {
            throw DegenerateConfiguration("three or more coincident points in a trace test");
        }
    }
    return Mat::from_rows(E, rows).rank() <= 3;
}

std::vector<ProjPoint> CanonicalCurve::plane_residual(const ProjPoint& p, const ProjPoint& q,
                                                      const ProjPoint& a) const {
    int lcm_deg = 1;
    for (const ProjPoint* pt : {&p, &q, &a})
        lcm_deg = static_cast<int>(std::lcm(lcm_deg, pt->field().deg()));
    const Field& E = Field::get(base_->p(), lcm_deg);
    ProjPoint P = p.embedded(E), Qp = q.embedded(E), A = a.embedded(E);
    for (const ProjPoint* pt : {&P, &Qp, &A})
        if (!on_curve(*pt)) throw MismatchError("plane residual of a point off the curve");
    if (P == Qp || P == A || Qp == A)
        throw DegenerateConfiguration("coincident points spanning the plane");
    if (rank_of_points({P, Qp, A}) != 3)
        throw DegenerateConfiguration("collinear points do not span a plane");

    // The conic cut by the quadric on the plane, in span coordinates
    // alpha*P + beta*Q + gamma*A, is c1*ab + c2*ag + c3*bg with the polar
    // values below; it is smooth exactly when none vanishes.
    Fq c1 = polar_value(Q_, P, Qp);
    Fq c2 = polar_value(Q_, P, A);
    Fq c3 = polar_value(Q_, Qp, A);
    if (c1.is_zero() || c2.is_zero() || c3.is_zero())
        throw DegenerateConfiguration("singular conic section through the three points");

    // Degree-2 parametrization of the conic through P: the second
    // intersection of the pencil of lines through P.
    // alpha = c3*mu*nu, beta = -(c1*mu + c2*nu)*mu, gamma = -(c1*mu + c2*nu)*nu.
    BForm alpha(E, 2), beta(E, 2), gamma(E, 2);
    alpha.coeff(1) = c3;
    beta.coeff(2) = -c1;
    beta.coeff(1) = -c2;
    gamma.coeff(1) = -c1;
    gamma.coeff(0) = -c2;
    std::array<BForm, 4> coord;
    for (int j = 0; j < 4; ++j) {
        BForm cj(E, 2);
        for (int i = 0; i <= 2; ++i)
            cj.coeff(i) = alpha.coeff(i) * P[j] + beta.coeff(i) * Qp[j] + gamma.coeff(i) * A[j];
        coord[static_cast<std::size_t>(j)] = cj;
    }
    // Restriction of the cubic to the conic: binary sextic in (mu, nu).
    BForm sextic(E, 6);
    for (const auto& [e, v] : F_.terms()) {
        BForm term(E, 0);
        term.coeff(0) = base_->embed(v, E);
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < e[static_cast<std::size_t>(j)]; ++k)
                term = bform_mul(term, coord[static_cast<std::size_t>(j)]);
        for (int i = 0; i <= 6; ++i) sextic.coeff(i) = sextic.coeff(i) + term.coeff(i);
    }
    // Deflate at the parameters of P, Q, A: (c2 : -c1), (1 : 0), (0 : 1).
    BForm cubic = sextic.deflate_at(c2, -c1).deflate_at(E.one(), E.zero())
                      .deflate_at(E.zero(), E.one());
    // Splitting search for the remaining three roots; over a finite field the
    // splitting degree of a cubic is 1, 2 or 3.
    for (int mult : {1, 2, 3}) {
        if (E.deg() * mult > kMaxFieldDegree) break;
        const Field& E2 = Field::get(base_->p(), E.deg() * mult);
        BForm ce = bform_embed(cubic, E2);
        auto rts = ce.proj_roots();
        if (rts.size() != 3) continue;
        std::vector<ProjPoint> out;
        for (const auto& [mu, nu] : rts) {
            std::vector<Fq> x(4, E2.zero());
            for (int j = 0; j < 4; ++j)
                x[static_cast<std::size_t>(j)] =
                    E.embed(coord[static_cast<std::size_t>(j)].coeff(0), E2) * nu * nu +
                    E.embed(coord[static_cast<std::size_t>(j)].coeff(1), E2) * mu * nu +
                    E.embed(coord[static_cast<std::size_t>(j)].coeff(2), E2) * mu * mu;
            out.emplace_back(E2, std::move(x));
        }
        return out;
    }
    throw ResourceBound("splitting field of the residual cubic exceeds the degree cap");
}

PointPair CanonicalCurve::residual_involution(const ProjPoint& p, const ProjPoint& q,
                                              const ProjPoint& a, const ProjPoint& b) const {
    if (!is_on_trace(p, q, a, b))
        throw DegenerateConfiguration("pair is not on the trace divisor");
    auto res = plane_residual(p, q, a);
    int lcm_deg = static_cast<int>(std::lcm(res[0].field().deg(), b.field().deg()));
    const Field& E2 = Field::get(base_->p(), lcm_deg);
    for (auto& pt : res) pt = pt.embedded(E2);
    ProjPoint bb = b.embedded(E2);
    auto it = std::find(res.begin(), res.end(), bb);
    if (it == res.end())
        throw DegenerateConfiguration("second pair point missing from the hyperplane section");
    res.erase(it);
    return PointPair::make(res[0], res[1], base_->deg());
}

std::vector<PointPair> CanonicalCurve::sym_points() const {
    std::vector<PointPair> out;
    auto p1 = points(1);
    for (std::size_t i = 0; i < p1.size(); ++i)
        for (std::size_t j = i; j < p1.size(); ++j)
            out.push_back(PointPair::make(p1[i], p1[j], base_->deg()));
    const int k = base_->deg();
    for (const ProjPoint& pt : points(2)) {
        ProjPoint conj = pt.frobenius(k);
        if (conj == pt) continue;   // rational point, already covered
        if (conj < pt) continue;    // count each conjugate pair once
        out.push_back(PointPair::make(pt, conj, k));
    }
    // Rational pairs and conjugate pairs live over different fields; order by
    // level first so the comparison stays within one field.
    std::sort(out.begin(), out.end(), [](const PointPair& x, const PointPair& y) {
        if (x.point_ext != y.point_ext) return x.point_ext < y.point_ext;
        return x < y;
    });
    return out;
}

std::string CanonicalCurve::canonical_pair_key(const PointPair& pair) const {
    const int k = base_->deg();
    int da = point_degree(pair.a, k), db = point_degree(pair.b, k);
    int target = static_cast<int>(std::lcm(da, db)) * k;
    const Field& T = Field::get(base_->p(), target);
    const Field& E = pair.field();
    auto move_pt = [&](const ProjPoint& pt) {
        if (E.deg() == target) return pt;
        if (target % E.deg() == 0) return pt.embedded(T);
        std::vector<Fq> cs;
        for (const Fq& v : pt.coords()) cs.push_back(E.descend(v, T));
        return ProjPoint(T, std::move(cs));
    };
    ProjPoint a = move_pt(pair.a), b = move_pt(pair.b);
    if (b < a) std::swap(a, b);
    return std::to_string(target) + "|" + a.str() + "+" + b.str();
}

std::string CanonicalCurve::str() const {
    return base_->name() + " curve, cubic " + F_.str();
}

CurveSpec CanonicalCurve::spec() const {
    CurveSpec s;
    s.p = base_->p();
    s.k = base_->deg();
    auto encode = [&](const HForm& f, std::map<std::string, long>& out) {
        for (const auto& [e, v] : f.terms()) {
            std::string mono;
            for (int i = 0; i < 4; ++i)
                mono += static_cast<char>('0' + e[static_cast<std::size_t>(i)]);
            long value = 0;
            for (int i = base_->deg() - 1; i >= 0; --i)
                value = value * base_->p() + v.c[static_cast<std::size_t>(i)];
            out[mono] = value;
        }
    };
    encode(Q_, s.q_coeffs);
    encode(F_, s.f_coeffs);
    return s;
}

std::uint64_t spec_hash(const CurveSpec& spec) {
    std::ostringstream os;
    os << spec.p << "^" << spec.k << "|";
    for (const auto& [m, v] : spec.q_coeffs) os << m << ":" << v << ",";
    os << "|";
    for (const auto& [m, v] : spec.f_coeffs) os << m << ":" << v << ",";
    std::string s = os.str();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char ch : s) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// ---------------------------------------------------------------- certificate

G13Certificate distinct_g13_certificate(const CanonicalCurve& curve, int trials, Rng& rng) {
    G13Certificate cert;
    const Field& base = curve.base();
    auto elems = base.elements();
    for (int trial = 0; trial < trials; ++trial) {
        // A ruling line of the first family, chosen by its (u : v) parameter.
        std::uint64_t idx = rng.below(elems.size() + 1);
        Fq u = idx == elems.size() ? base.one() : elems[idx];
        Fq v = idx == elems.size() ? base.zero() : base.one();
        Fq z = base.zero();
        Line L(base, {u, v, z, z}, {z, z, u, v});
        BForm f3 = curve.cubic().restrict_to_line(L);
        if (f3.is_zero()) throw SingularCurve("ruling line contained in the curve");
        // Split the degree-3 divisor; skip non-reduced ones.
        bool done = false;
        for (int mult : {1, 2, 3}) {
            const Field& E = curve.ext(mult);
            BForm fe = bform_embed(f3, E);
            auto rts = fe.proj_roots();
            if (rts.size() != 3) continue;
            bool repeated = false;
            for (int i = 0; i < 3 && !repeated; ++i)
                for (int j = i + 1; j < 3; ++j)
                    if (rts[static_cast<std::size_t>(i)] == rts[static_cast<std::size_t>(j)])
                        repeated = true;
            if (repeated) {
                ++cert.degenerate_skips;
                done = true;
                break;
            }
            Line LE = L.embedded(E);
            std::vector<std::vector<Fq>> rows;
            for (const auto& [s0, t0] : rts) {
                Line tl = curve.tangent_line(LE.point_at(s0, t0));
                rows.push_back(tl.basis()[0]);
                rows.push_back(tl.basis()[1]);
            }
            int rank = Mat::from_rows(E, rows).rank();
            cert.min_rank = std::min(cert.min_rank, rank);
            if (rank == 4) {
                if (!cert.nontrivial) {
                    cert.witness_ext = mult;
                    cert.witness_param = "(" + u.str() + ":" + v.str() + ")";
                }
                cert.nontrivial = true;
                ++cert.rank4_count;
            }
            done = true;
            break;
        }
        if (!done) ++cert.degenerate_skips;
        ++cert.trials;
    }
    return cert;
}

CurveSpec search_curve_spec(long p, int k, std::uint64_t seed, int max_tries,
                            const ValidateOptions& opt) {
    const Field& base = Field::get(p, k);
    Rng rng(seed);
    std::uint64_t q = base.order();
    // All degree-3 exponent vectors in 4 variables, in lex order.
    std::vector<ExpVec> monos;
    for (int a = 3; a >= 0; --a)
        for (int b = 3 - a; b >= 0; --b)
            for (int c = 3 - a - b; c >= 0; --c) {
                ExpVec e{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
                         static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(3 - a - b - c),
                         0};
                monos.push_back(e);
            }
    for (int t = 0; t < max_tries; ++t) {
        HForm f(base, 4, 3);
        for (const ExpVec& e : monos) {
            std::uint64_t v = rng.below(q);
            std::vector<coeff_t> digits;
            std::uint64_t vv = v;
            while (vv) {
                digits.push_back(static_cast<coeff_t>(vv % static_cast<std::uint64_t>(p)));
                vv /= static_cast<std::uint64_t>(p);
            }
            f.set(e, base.make(digits));
        }
        if (f.is_zero()) continue;
        try {
            CanonicalCurve c = CanonicalCurve::validate(base, f, opt);
            return c.spec();
        } catch (const SingularCurve&) {
        } catch (const WeilBoundViolation&) {
        }
    }
    throw ResourceBound("no valid curve found in " + std::to_string(max_tries) + " tries");
}

}  // namespace fano
