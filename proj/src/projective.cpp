#include "fano/projective.hpp"

#include <sstream>

namespace fano {

ProjPoint::ProjPoint(const Field& F, std::vector<Fq> coords) : x_(std::move(coords)) {
    for (auto& v : x_)
        if (v.F == nullptr) v = F.zero();
    std::size_t first = 0;
    while (first < x_.size() && x_[first].is_zero()) ++first;
    if (first == x_.size()) throw ParseError("projective point with all coordinates zero");
    Fq inv = F.inv(x_[first]);
    for (auto& v : x_) v = v * inv;
}

ProjPoint ProjPoint::embedded(const Field& top) const {
    const Field& F = field();
    std::vector<Fq> out;
    out.reserve(x_.size());
    for (const auto& v : x_) out.push_back(F.embed(v, top));
    return ProjPoint(top, std::move(out));
}

ProjPoint ProjPoint::frobenius(int times) const {
    const Field& F = field();
    std::vector<Fq> out;
    out.reserve(x_.size());
    for (const auto& v : x_) out.push_back(F.frobenius(v, times));
    return ProjPoint(F, std::move(out));
}

std::string ProjPoint::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < x_.size(); ++i) {
        if (i) os << ":";
        os << x_[i].str();
    }
    os << ")";
    return os.str();
}

Line::Line(const ProjPoint& a, const ProjPoint& b) {
    if (a.dim() != b.dim()) throw MismatchError("line through points of different spaces");
    rows_[0] = a.coords();
    rows_[1] = b.coords();
    reduce();
}

Line::Line(const Field& F, const std::vector<Fq>& u, const std::vector<Fq>& v) {
    rows_[0] = u;
    rows_[1] = v;
    for (auto& row : rows_)
        for (auto& x : row)
            if (x.F == nullptr) x = F.zero();
    reduce();
}

void Line::reduce() {
    const Field& F = *rows_[0][0].F;
    Mat m = Mat::from_rows(F, {rows_[0], rows_[1]});
    if (m.rref() != 2) throw DegenerateConfiguration("points do not span a line");
    for (int i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < rows_[0].size(); ++j)
            rows_[static_cast<std::size_t>(i)][j] = m.at(i, static_cast<int>(j));
}

ProjPoint Line::point_at(const Fq& s, const Fq& t) const {
    const Field& F = field();
    std::vector<Fq> out(rows_[0].size(), F.zero());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = s * rows_[0][j] + t * rows_[1][j];
    return ProjPoint(F, std::move(out));
}

bool Line::contains(const ProjPoint& p) const {
    const Field& F = field();
    Mat m = Mat::from_rows(F, {rows_[0], rows_[1], p.coords()});
    return m.rref() == 2;
}

std::vector<ProjPoint> Line::rational_points() const {
    const Field& F = field();
    std::vector<ProjPoint> out;
    out.push_back(point_at(F.one(), F.zero()));
    for (const Fq& t : F.elements()) out.push_back(point_at(t, F.one()));
    return out;
}

Line Line::embedded(const Field& top) const {
    const Field& F = field();
    std::array<std::vector<Fq>, 2> rows = rows_;
    for (auto& row : rows)
        for (auto& x : row) x = F.embed(x, top);
    Line l;
    l.rows_ = rows;
    return l;
}

Line Line::descended(const Field& sub) const {
    const Field& F = field();
    std::array<std::vector<Fq>, 2> rows = rows_;
    for (auto& row : rows)
        for (auto& x : row) x = F.descend(x, sub);
    Line l;
    l.rows_ = rows;
    return l;
}

bool Line::is_stable_under_frobenius(int times) const {
    const Field& F = field();
    std::array<std::vector<Fq>, 2> rows = rows_;
    for (auto& row : rows)
        for (auto& x : row) x = F.frobenius(x, times);
    // Rows of an echelon basis map to an echelon basis of the image span.
    Line img;
    img.rows_ = rows;
    img.reduce();
    return img.rows_ == rows_;
}

std::string Line::str() const {
    std::ostringstream os;
    os << "span{";
    for (int i = 0; i < 2; ++i) {
        if (i) os << ", ";
        os << "(";
        for (std::size_t j = 0; j < rows_[0].size(); ++j) {
            if (j) os << ":";
            os << rows_[static_cast<std::size_t>(i)][j].str();
        }
        os << ")";
    }
    os << "}";
    return os.str();
}

bool lines_meet(const Line& a, const Line& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw MismatchError("lines in different ambient spaces");
    const Field& F = a.field();
    Mat m = Mat::from_rows(F, {a.basis()[0], a.basis()[1], b.basis()[0], b.basis()[1]});
    return m.rref() <= 3;
}

int rank_of_points(const std::vector<ProjPoint>& pts) {
    if (pts.empty()) return 0;
    const Field& F = pts[0].field();
    std::vector<std::vector<Fq>> rows;
    rows.reserve(pts.size());
    for (const auto& p : pts) rows.push_back(p.coords());
    Mat m = Mat::from_rows(F, rows);
    return m.rref();
}

int point_degree(const ProjPoint& pt, int base_deg) {
    int ext = pt.field().deg() / base_deg;
    for (int d = 1; d < ext; ++d) {
        if (ext % d != 0) continue;
        if (pt.frobenius(base_deg * d) == pt) return d;
    }
    return ext;
}

ProjPoint descend_to_minimal(const ProjPoint& pt, int base_deg) {
    const Field& E = pt.field();
    int d = point_degree(pt, base_deg);
    if (d * base_deg == E.deg()) return pt;
    const Field& sub = Field::get(E.p(), base_deg * d);
    std::vector<Fq> cs;
    cs.reserve(pt.coords().size());
    for (const Fq& v : pt.coords()) cs.push_back(E.descend(v, sub));
    return ProjPoint(sub, std::move(cs));
}

}  // namespace fano
