#ifndef FANO_PROJECTIVE_HPP
#define FANO_PROJECTIVE_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fano/field.hpp"
#include "fano/linalg.hpp"

namespace fano {

// Point of P^n in canonical form: the first nonzero coordinate equals 1.
// Canonicalization is idempotent and equality is coordinate equality.
class ProjPoint {
  public:
    ProjPoint() = default;
    ProjPoint(const Field& F, std::vector<Fq> coords);

    const Field& field() const { return *x_[0].F; }
    int dim() const { return static_cast<int>(x_.size()) - 1; }  // ambient dimension
    const std::vector<Fq>& coords() const { return x_; }
    const Fq& operator[](int i) const { return x_[static_cast<std::size_t>(i)]; }

    ProjPoint embedded(const Field& top) const;
    // Coordinate-wise Frobenius x -> x^(p^times).
    ProjPoint frobenius(int times) const;

    friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.x_ == b.x_; }
    friend bool operator!=(const ProjPoint& a, const ProjPoint& b) { return !(a == b); }
    friend bool operator<(const ProjPoint& a, const ProjPoint& b) { return a.x_ < b.x_; }

    std::string str() const;

  private:
    std::vector<Fq> x_;
};

// Line in P^n (n = 3 or 4 here), stored as the reduced row echelon basis of
// its 2-dimensional span. Two lines are equal iff their bases coincide.
class Line {
  public:
    Line() = default;
    Line(const ProjPoint& a, const ProjPoint& b);
    Line(const Field& F, const std::vector<Fq>& u, const std::vector<Fq>& v);

    const Field& field() const { return *rows_[0][0].F; }
    int ambient_dim() const { return static_cast<int>(rows_[0].size()) - 1; }
    const std::array<std::vector<Fq>, 2>& basis() const { return rows_; }

    ProjPoint point_at(const Fq& s, const Fq& t) const;
    bool contains(const ProjPoint& p) const;
    // All q+1 points over the line's own field, in parameter order.
    std::vector<ProjPoint> rational_points() const;

    Line embedded(const Field& top) const;
    // Express the basis over a subfield; throws when entries do not descend.
    Line descended(const Field& sub) const;
    bool is_stable_under_frobenius(int times) const;

    friend bool operator==(const Line& a, const Line& b) { return a.rows_ == b.rows_; }
    friend bool operator!=(const Line& a, const Line& b) { return !(a == b); }
    friend bool operator<(const Line& a, const Line& b) { return a.rows_ < b.rows_; }

    std::string str() const;

  private:
    void reduce();
    std::array<std::vector<Fq>, 2> rows_;
};

// True iff the spans of the two lines intersect (rank of the stacked 4 x n
// basis <= 3). A line meets itself under this convention.
bool lines_meet(const Line& a, const Line& b);

// Rank of the matrix whose rows are the given points.
int rank_of_points(const std::vector<ProjPoint>& pts);

// Minimal d with Frobenius^(base_deg * d) fixing the point; divides the
// degree of the point's field over the degree-base_deg subfield.
int point_degree(const ProjPoint& pt, int base_deg);

// The point expressed over its minimal field of definition.
ProjPoint descend_to_minimal(const ProjPoint& pt, int base_deg);

}  // namespace fano

#endif
