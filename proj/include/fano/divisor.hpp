#ifndef FANO_DIVISOR_HPP
#define FANO_DIVISOR_HPP

#include <map>
#include <string>
#include <vector>

#include "fano/errors.hpp"

namespace fano {

// Algebraic-equivalence class a*x + b*(delta/2) in the Neron-Severi lattice of
// the symmetric square of a genus-g curve. The pairing is fixed by
// x^2 = 1, x.(delta/2) = 1, (delta/2)^2 = 1-g.
struct NSClass {
    int genus = 4;
    long x = 0;
    long half_delta = 0;

    friend NSClass operator+(const NSClass& a, const NSClass& b);
    friend NSClass operator-(const NSClass& a, const NSClass& b);
    friend bool operator==(const NSClass& a, const NSClass& b) = default;
    std::string str() const;
};

long pairing(const NSClass& a, const NSClass& b);

// Class of a trace divisor of a degree-d pencil: d*x - delta/2.
NSClass trace_class(long d, int genus);

// Formal divisor class on the curve: an integer combination of named points,
// the two triangle systems D1, D2 and the canonical class K, reduced modulo
// the single relation D1 + D2 = K (D2 is eliminated). Distinct point symbols
// are treated as independent; concrete relations on a specific curve are out
// of scope here.
class CurveDivisor {
  public:
    CurveDivisor() = default;

    static CurveDivisor point(const std::string& name);
    static CurveDivisor d1();
    static CurveDivisor d2();  // stored as K - D1
    static CurveDivisor canonical();

    CurveDivisor operator+(const CurveDivisor& o) const;
    CurveDivisor operator-(const CurveDivisor& o) const;
    CurveDivisor scaled(long k) const;
    CurveDivisor operator-() const { return scaled(-1); }

    bool is_zero() const;
    long degree() const;  // deg p = 1, deg D1 = 3, deg K = 6
    long coeff_d1() const { return d1_; }
    long coeff_k() const { return k_; }
    const std::map<std::string, long>& points() const { return pts_; }

    friend bool operator==(const CurveDivisor& a, const CurveDivisor& b) = default;

    std::string str() const;

  private:
    std::map<std::string, long> pts_;
    long d1_ = 0;
    long k_ = 0;
};

// Formal divisor expression on the symmetric square, generated by X_P for a
// point symbol P, half the diagonal, and the trace divisor of the pencil of a
// rank-1 system. reduce() rewrites every trace through the relation
// T_A ~ S_A - delta/2 and is confluent; S_A denotes the X-linear extension.
class Sym2Divisor {
  public:
    Sym2Divisor() = default;

    static Sym2Divisor x_point(const std::string& p);
    static Sym2Divisor half_delta();
    static Sym2Divisor trace(const CurveDivisor& system);
    // S_A for an arbitrary formal class A.
    static Sym2Divisor s_of(const CurveDivisor& a);

    Sym2Divisor operator+(const Sym2Divisor& o) const;
    Sym2Divisor operator-(const Sym2Divisor& o) const;
    Sym2Divisor scaled(long k) const;

    bool is_reduced() const { return traces_.empty(); }
    Sym2Divisor reduce() const;
    bool is_zero_reduced() const;

    NSClass ns_class(int genus) const;

    friend bool operator==(const Sym2Divisor& a, const Sym2Divisor& b) = default;

    std::string str() const;

    // Pullback along the inclusion q -> p + q: S_A -> A, delta/2 -> p,
    // T_A -> A - p.
    CurveDivisor inclusion_pullback(const std::string& p) const;
    // Pullback along the ruling embedding of index i (1 or 2):
    // X_P -> D_i - P, extended linearly over S; delta/2 -> 4 D_i - K, the
    // value forced by the vanishing of the pullback of the opposite trace
    // curve (derived rule, not a quoted one).
    CurveDivisor ruling_pullback(int i) const;

  private:
    // reduced part
    std::map<std::string, long> xpts_;
    long s_d1_ = 0;
    long s_k_ = 0;
    long half_delta_ = 0;
    // pending trace generators
    std::vector<std::pair<CurveDivisor, long>> traces_;
};

// True iff the two expressions are linearly equivalent: their difference
// reduces to zero under the formal zero test.
bool lin_equiv(const Sym2Divisor& a, const Sym2Divisor& b);

// Expression grammar used by the command line:
//   expr   := term (('+'|'-') term)*
//   term   := [int '*'?] atom | int
//   atom   := 'X' '[' ident ']' | 'Delta/2' | 'Trace' '(' dexpr ')'
//           | 'S' '(' dexpr ')'
//   dexpr  := dterm (('+'|'-') dterm)*, dterm := [int '*'?] (ident|'D1'|'D2'|'K')
// Whitespace-insensitive.
Sym2Divisor parse_sym2_expr(const std::string& text);
CurveDivisor parse_curve_divisor(const std::string& text);

}  // namespace fano

#endif
