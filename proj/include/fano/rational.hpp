#ifndef FANO_RATIONAL_HPP
#define FANO_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "fano/errors.hpp"

namespace fano {

// Exact rational number on 64-bit parts. The cohomology-ring computations
// stay tiny (denominators divide 10!), so 64 bits with overflow checks is
// plenty.
class Rational {
  public:
    Rational() = default;
    Rational(long long num) : n_(num), d_(1) {}
    Rational(long long num, long long den) : n_(num), d_(den) { normalize(); }

    long long num() const { return n_; }
    long long den() const { return d_; }

    bool is_zero() const { return n_ == 0; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(checked(a.n_, b.d_) + checked(b.n_, a.d_), checked(a.d_, b.d_));
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(checked(a.n_, b.d_) - checked(b.n_, a.d_), checked(a.d_, b.d_));
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(checked(a.n_, b.n_), checked(a.d_, b.d_));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.n_ == 0) throw Error("rational division by zero");
        return Rational(checked(a.n_, b.d_), checked(a.d_, b.n_));
    }
    Rational operator-() const { return Rational(-n_, d_); }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.n_ == b.n_ && a.d_ == b.d_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

    std::string str() const {
        if (d_ == 1) return std::to_string(n_);
        return std::to_string(n_) + "/" + std::to_string(d_);
    }
    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  private:
    static long long checked(long long a, long long b) {
        __int128 p = static_cast<__int128>(a) * b;
        if (p > INT64_MAX || p < INT64_MIN) throw Error("rational overflow");
        return static_cast<long long>(p);
    }

    void normalize() {
        if (d_ == 0) throw Error("rational with zero denominator");
        if (d_ < 0) { n_ = -n_; d_ = -d_; }
        long long g = std::gcd(n_ < 0 ? -n_ : n_, d_);
        if (g > 1) { n_ /= g; d_ /= g; }
    }

    long long n_ = 0;
    long long d_ = 1;
};

}  // namespace fano

#endif
