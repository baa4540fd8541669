#ifndef FANO_FORM_HPP
#define FANO_FORM_HPP

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fano/projective.hpp"
#include "fano/upoly.hpp"

namespace fano {

// Exponent vector of a monomial; at most 5 variables here.
using ExpVec = std::array<std::uint8_t, 5>;

// Homogeneous form of fixed degree in n variables over a finite field,
// stored sparsely; zero coefficients are never kept.
class HForm {
  public:
    HForm(const Field& F, int nvars, int degree);

    const Field& field() const { return *F_; }
    int nvars() const { return n_; }
    int degree() const { return d_; }
    bool is_zero() const { return c_.empty(); }
    const std::map<ExpVec, Fq>& terms() const { return c_; }

    void set(const ExpVec& e, const Fq& v);
    Fq coeff(const ExpVec& e) const;

    HForm operator+(const HForm& o) const;
    HForm operator-(const HForm& o) const;
    HForm operator*(const HForm& o) const;  // degrees add
    HForm scaled(const Fq& a) const;
    HForm pow(int e) const;

    friend bool operator==(const HForm& a, const HForm& b);

    Fq eval(std::span<const Fq> x) const;
    Fq eval(const ProjPoint& p) const;
    HForm partial(int var) const;
    // Substitute forms (all of one common degree) for the variables; the
    // result is homogeneous of degree d * inner_degree.
    HForm compose(const std::vector<HForm>& subs) const;
    // Restriction to a line: substitute s*B0 + t*B1 for the canonical span
    // basis of L; binary form of the same degree. Identically zero iff the
    // line lies in the hypersurface.
    BForm restrict_to_line(const Line& L) const;
    // Restriction to a plane spanned by three points: ternary form evaluated
    // as a function of the three span coordinates.
    Fq eval_combination(const std::vector<ProjPoint>& basis, std::span<const Fq> lambda) const;

    HForm embedded(const Field& top) const;

    std::string str() const;

    // x0*x3 - x1*x2, the split quadric.
    static HForm split_quadric(const Field& F);

  private:
    const Field* F_;
    int n_, d_;
    std::map<ExpVec, Fq> c_;
};

}  // namespace fano

#endif
