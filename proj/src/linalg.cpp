#include "fano/linalg.hpp"

namespace fano {

Mat Mat::from_rows(const Field& F, const std::vector<std::vector<Fq>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows[0].size()) : 0;
    Mat m(F, r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c)
            throw MismatchError("ragged rows");
        for (int j = 0; j < c; ++j)
            m.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return m;
}

int Mat::rref() {
    const Field& F = *F_;
    int row = 0;
    for (int col = 0; col < c_ && row < r_; ++col) {
        int pivot = -1;
        for (int i = row; i < r_; ++i)
            if (!at(i, col).is_zero()) { pivot = i; break; }
        if (pivot < 0) continue;
        if (pivot != row)
            for (int j = 0; j < c_; ++j) std::swap(at(pivot, j), at(row, j));
        Fq inv = F.inv(at(row, col));
        for (int j = col; j < c_; ++j) at(row, j) = at(row, j) * inv;
        for (int i = 0; i < r_; ++i) {
            if (i == row || at(i, col).is_zero()) continue;
            Fq f = at(i, col);
            for (int j = col; j < c_; ++j) at(i, j) = at(i, j) - f * at(row, j);
        }
        ++row;
    }
    return row;
}

int Mat::rank() const {
    Mat copy = *this;
    return copy.rref();
}

std::vector<std::vector<Fq>> Mat::kernel() const {
    const Field& F = *F_;
    Mat m = *this;
    m.rref();
    // Identify pivot columns.
    std::vector<int> pivot_of_col(static_cast<std::size_t>(c_), -1);
    int row = 0;
    for (int col = 0; col < c_ && row < r_; ++col) {
        if (!m.at(row, col).is_zero()) {
            pivot_of_col[static_cast<std::size_t>(col)] = row;
            ++row;
        }
    }
    std::vector<std::vector<Fq>> basis;
    for (int free_col = 0; free_col < c_; ++free_col) {
        if (pivot_of_col[static_cast<std::size_t>(free_col)] >= 0) continue;
        std::vector<Fq> v(static_cast<std::size_t>(c_), F.zero());
        v[static_cast<std::size_t>(free_col)] = F.one();
        for (int col = 0; col < c_; ++col) {
            int pr = pivot_of_col[static_cast<std::size_t>(col)];
            if (pr >= 0) v[static_cast<std::size_t>(col)] = F.neg(m.at(pr, free_col));
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace fano
