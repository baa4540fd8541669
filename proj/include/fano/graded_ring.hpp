#ifndef FANO_GRADED_RING_HPP
#define FANO_GRADED_RING_HPP

#include <string>
#include <vector>

#include "fano/rational.hpp"

namespace fano {

// Element of Q[xi, eta] / (xi^(g+1), eta^2): the cohomology model for the
// P^1-bundle over a g-dimensional Picard variety, with eta the class of O(1)
// on the bundle and xi the polarization pulled back from the base.
class GradedClass {
  public:
    explicit GradedClass(int genus);

    int genus() const { return g_; }
    // Coefficient of xi^i eta^j (0 <= i <= g, j in {0, 1}).
    const Rational& coeff(int i, int j) const;
    void set(int i, int j, const Rational& v);

    static GradedClass zero(int genus) { return GradedClass(genus); }
    static GradedClass one(int genus);
    static GradedClass xi(int genus);
    static GradedClass eta(int genus);

    GradedClass operator+(const GradedClass& o) const;
    GradedClass operator-(const GradedClass& o) const;
    GradedClass operator*(const GradedClass& o) const;  // truncated product
    GradedClass scaled(const Rational& r) const;
    GradedClass power(int n) const;

    bool is_zero() const;
    friend bool operator==(const GradedClass& a, const GradedClass& b);

    // Pushforward along the bundle projection (integration over the P^1
    // fiber): extracts the eta-part as a polynomial in xi, coefficient i of
    // the result multiplying xi^i.
    std::vector<Rational> fiber_push() const;
    // Pullback of a xi-polynomial from the base (eta-free embedding).
    static GradedClass base_pull(int genus, const std::vector<Rational>& xi_poly);

    std::string str() const;

  private:
    int g_;
    std::vector<Rational> c_;  // index 2*i + j
};

// (xi + eta)^g / g! = xi^g/g! + xi^(g-1)/(g-1)! * eta: the Abel-Jacobi image
// of the curve in the compactified Jacobian decomposes as the point class
// plus the curve class times eta.
bool verify_curve_bundle_class(int genus);

// Same identity one dimension up, for g = 4 fixed:
// (xi + eta)^3 / 3! = xi^3/3! + (xi^2/2!) * eta, with xi^3/3! the class of the
// curve and xi^2/2! half the Pontryagin square of it.
bool verify_sym2_bundle_class();

// Classes of the two glueing sections T1, T2 of the P^1-bundle. Both equal
// eta up to algebraic equivalence; T2 differs from eta by the pullback of a
// line bundle that is only algebraically trivial, hence the note.
struct GlueingClasses {
    GradedClass t1;
    GradedClass t2;
    std::string note;
};
GlueingClasses glueing_divisor_classes(int genus);

// Grammar for the CLI: polynomials in xi, eta with rational coefficients,
// e.g. "(xi+eta)^3 / 6". Supports + - * / ^ and parentheses.
GradedClass parse_graded_expr(const std::string& text, int genus);

}  // namespace fano

#endif
