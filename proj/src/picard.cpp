#include "fano/picard.hpp"

namespace fano {

bool cg_map_identity(const std::string& p, const std::string& q, const std::string& p0,
                     const std::string& q0) {
    CurveDivisor kpq =
        CurveDivisor::canonical() - CurveDivisor::point(p) - CurveDivisor::point(q);
    CurveDivisor kp0q0 =
        CurveDivisor::canonical() - CurveDivisor::point(p0) - CurveDivisor::point(q0);
    Sym2Divisor lhs = Sym2Divisor::trace(kpq) - Sym2Divisor::trace(kp0q0);
    Sym2Divisor rhs = Sym2Divisor::s_of(CurveDivisor::point(p0) + CurveDivisor::point(q0) -
                                        CurveDivisor::point(p) - CurveDivisor::point(q));
    return lin_equiv(lhs, rhs);
}

bool cg_map_identity() { return cg_map_identity("p", "q", "p0", "q0"); }

ExtensionClassReport extension_class_certificate(const CanonicalCurve& curve, int trials,
                                                 Rng& rng) {
    ExtensionClassReport rep;
    rep.curve_hash = curve.hash();
    G13Certificate cert = distinct_g13_certificate(curve, trials, rng);
    rep.trials = cert.trials;
    rep.rank4_count = cert.rank4_count;
    rep.degenerate_skips = cert.degenerate_skips;
    rep.witness_ext = cert.witness_ext;
    rep.witness_param = cert.witness_param;
    rep.verdict = cert.nontrivial ? "nontrivial" : "inconclusive";
    rep.scope_note =
        "certifies the two degree-3 pencils are not linearly equivalent; whether their "
        "difference is a difference of two points is not decided";
    return rep;
}

}  // namespace fano
