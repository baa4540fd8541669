#ifndef FANO_UPOLY_HPP
#define FANO_UPOLY_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "fano/field.hpp"

namespace fano {

// Dense univariate polynomial over a finite field. Coefficient i is the
// coefficient of X^i; the vector carries no trailing zeros.
class UPoly {
  public:
    UPoly() = default;
    explicit UPoly(const Field& F) : F_(&F) {}
    UPoly(const Field& F, std::vector<Fq> coeffs);

    const Field& field() const { return *F_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const std::vector<Fq>& coeffs() const { return c_; }
    Fq coeff(int i) const;
    Fq lead() const;

    static UPoly zero(const Field& F) { return UPoly(F); }
    static UPoly constant(const Field& F, const Fq& a);
    static UPoly x(const Field& F);  // the monomial X
    static UPoly from_roots_negated(const Field& F, const std::vector<Fq>& roots);

    UPoly operator+(const UPoly& o) const;
    UPoly operator-(const UPoly& o) const;
    UPoly operator*(const UPoly& o) const;
    UPoly scaled(const Fq& a) const;
    UPoly monic() const;

    Fq eval(const Fq& a) const;
    // Quotient and remainder; divisor must be nonzero.
    std::pair<UPoly, UPoly> divrem(const UPoly& d) const;
    UPoly mod(const UPoly& d) const { return divrem(d).second; }
    // Synthetic division by (X - r); eval(r) must vanish.
    UPoly deflate(const Fq& r) const;
    UPoly derivative() const;

    friend bool operator==(const UPoly& a, const UPoly& b);

    std::string str() const;

  private:
    void trim();
    const Field* F_ = nullptr;
    std::vector<Fq> c_;
};

UPoly gcd(UPoly a, UPoly b);

// base^e mod m by square and multiply.
UPoly powmod(const UPoly& base, std::uint64_t e, const UPoly& m);
// X^(p^e) mod m via iterated p-th powers; avoids forming p^e.
UPoly frobenius_powmod_x(int e, const UPoly& m);

// Rabin irreducibility test over the coefficient field.
bool is_irreducible(const UPoly& f);

// All roots of f in its coefficient field, with multiplicity, sorted.
// Small fields are scanned exhaustively with deflation; larger fields go
// through the Frobenius kernel gcd and deterministic equal-degree splitting.
// Both paths return the same multiset.
std::vector<Fq> roots(const UPoly& f);

// Number of distinct roots of f in the coefficient field (no enumeration).
int count_distinct_roots(const UPoly& f);

// Binary form of degree d in (s, t): coefficient i multiplies s^i t^(d-i).
// Unlike UPoly, leading zeros are kept; the degree is part of the type.
class BForm {
  public:
    BForm() = default;
    BForm(const Field& F, int d);
    BForm(const Field& F, std::vector<Fq> coeffs);  // degree = size - 1

    const Field& field() const { return *F_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const;
    Fq coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }
    Fq& coeff(int i) { return c_[static_cast<std::size_t>(i)]; }

    Fq eval(const Fq& s, const Fq& t) const;
    // Divide out (t0*s - s0*t), the linear form vanishing at (s0 : t0).
    BForm deflate_at(const Fq& s0, const Fq& t0) const;
    // Exact division; throws IdentityFailure when the division has remainder.
    BForm divide_exact(const BForm& d) const;

    // Projective roots in P^1 over the coefficient field, with multiplicity,
    // as canonical pairs (s : t) with the first nonzero coordinate equal 1.
    std::vector<std::pair<Fq, Fq>> proj_roots() const;
    // Distinct-root count over the coefficient field (includes (1:0)).
    int count_proj_roots() const;

    friend BForm gcd(const BForm& a, const BForm& b);

  private:
    const Field* F_ = nullptr;
    std::vector<Fq> c_;
};

}  // namespace fano

#endif
