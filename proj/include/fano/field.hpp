#ifndef FANO_FIELD_HPP
#define FANO_FIELD_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fano/errors.hpp"

namespace fano {

class Field;

using coeff_t = std::uint16_t;

// Largest extension degree over the prime field we ever instantiate.
inline constexpr int kMaxFieldDegree = 24;

// Element of F_{p^n}: coordinate vector of length n over F_p with respect to
// the field's modulus basis 1, t, ..., t^{n-1}. Plain value type; all
// arithmetic goes through the owning Field.
struct Fq {
    const Field* F = nullptr;
    std::array<coeff_t, kMaxFieldDegree> c{};

    bool is_zero() const;
    friend bool operator==(const Fq& a, const Fq& b);
    friend bool operator!=(const Fq& a, const Fq& b) { return !(a == b); }
    // Lexicographic on the coordinate vector; total order used for canonical
    // sorts and deterministic reports.
    friend bool operator<(const Fq& a, const Fq& b);

    Fq operator+(const Fq& o) const;
    Fq operator-(const Fq& o) const;
    Fq operator*(const Fq& o) const;
    Fq operator/(const Fq& o) const;
    Fq operator-() const;
    Fq& operator+=(const Fq& o) { return *this = *this + o; }
    Fq& operator-=(const Fq& o) { return *this = *this - o; }
    Fq& operator*=(const Fq& o) { return *this = *this * o; }

    std::string str() const;
};

// F_{p^n} with the deterministic modulus: the lexicographically smallest monic
// irreducible polynomial of degree n over F_p (coefficient word read from the
// t^{n-1} coefficient down to the constant). Instances are interned; use
// Field::get and compare by address.
class Field {
  public:
    static const Field& get(long p, int n);

    long p() const { return p_; }
    int deg() const { return n_; }
    // p^n; throws ResourceBound when it does not fit 62 bits.
    std::uint64_t order() const;
    // Non-leading modulus coefficients, c[i] = coefficient of t^i.
    const std::vector<coeff_t>& modulus() const { return mod_; }

    Fq zero() const;
    Fq one() const;
    Fq gen() const;
    Fq from_int(long v) const;
    Fq make(std::span<const coeff_t> coords) const;

    Fq add(const Fq& a, const Fq& b) const;
    Fq sub(const Fq& a, const Fq& b) const;
    Fq neg(const Fq& a) const;
    Fq mul(const Fq& a, const Fq& b) const;
    Fq inv(const Fq& a) const;
    Fq pow(const Fq& a, std::uint64_t e) const;
    // x -> x^(p^times)
    Fq frobenius(const Fq& a, int times = 1) const;
    // True when frobenius(a, d) == a, i.e. a lies in the subfield of degree d
    // over the prime field (d must divide n).
    bool in_subfield_of_degree(const Fq& a, int d) const;

    // All p^n elements in lexicographic coordinate order.
    std::vector<Fq> elements() const;

    // Embedding of this field into `top` (deg() must divide top.deg(), same p).
    // Built lazily; any two chains of embeddings between the same pair of
    // fields agree (tower maps commute).
    Fq embed(const Fq& a, const Field& top) const;
    // Partial inverse of embed: throws MismatchError when a is not in the
    // image of the subfield `sub`.
    Fq descend(const Fq& a, const Field& sub) const;

    std::string name() const;  // e.g. "F_49"

  private:
    Field(long p, int n);
    Field(const Field&) = delete;

    void reduce_once(std::uint64_t* acc) const;

    long p_;
    int n_;
    std::vector<coeff_t> mod_;  // non-leading coefficients, length n
    friend struct FieldRegistry;
};

// Convenience free functions.
inline Fq operator*(long k, const Fq& a) { return a.F->from_int(k) * a; }

}  // namespace fano

#endif
