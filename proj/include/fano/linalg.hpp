#ifndef FANO_LINALG_HPP
#define FANO_LINALG_HPP

#include <vector>

#include "fano/field.hpp"

namespace fano {

// Small dense matrix over a finite field; exact Gaussian elimination.
class Mat {
  public:
    Mat(const Field& F, int rows, int cols)
        : F_(&F), r_(rows), c_(cols), a_(static_cast<std::size_t>(rows * cols), F.zero()) {}

    const Field& field() const { return *F_; }
    int rows() const { return r_; }
    int cols() const { return c_; }
    Fq& at(int i, int j) { return a_[static_cast<std::size_t>(i * c_ + j)]; }
    const Fq& at(int i, int j) const { return a_[static_cast<std::size_t>(i * c_ + j)]; }

    static Mat from_rows(const Field& F, const std::vector<std::vector<Fq>>& rows);

    // Reduced row echelon form in place; returns the rank.
    int rref();
    int rank() const;
    // Basis of the right kernel, rows in reduced form.
    std::vector<std::vector<Fq>> kernel() const;

  private:
    const Field* F_;
    int r_, c_;
    std::vector<Fq> a_;
};

}  // namespace fano

#endif
