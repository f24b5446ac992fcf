#ifndef HRCS_COMPOSE_HPP
#define HRCS_COMPOSE_HPP

#include <memory>
#include <utility>
#include <vector>

#include "hrcs/errors.hpp"
#include "hrcs/hash_family.hpp"
#include "hrcs/ingredient.hpp"
#include "hrcs/linalg.hpp"

namespace hrcs {

// Class-wise coordinate sums induced by pattern row i: w_sigma =
// sum_{j : p_ij = sigma} x_j for sigma in 1..k_i.  Missing-class coordinates
// contribute to no entry.
inline Vector project(const HashFamily& P, int i, const Vector& x) {
    if (i < 0 || i >= P.num_rows()) throw RowOutOfRange("row " + std::to_string(i));
    if (x.size() != P.num_cols()) throw DimensionMismatch("signal length != n");
    Vector w = Vector::Zero(P.alphabet_size(i));
    for (int j = 0; j < P.num_cols(); ++j) {
        int sym = P.entry(i, j);
        if (sym != kMissing) w(sym - 1) += x(j);
    }
    return w;
}

// The stacked result of column replacement.  The dense matrix is materialized
// on demand; entries are also available virtually so the sublinear recovery
// path never touches all n columns.
class ComposedMatrix {
  public:
    ComposedMatrix(HashFamily pattern, std::vector<Ingredient> ingredients)
        : P_(std::move(pattern)), ingredients_(std::move(ingredients)) {
        if (static_cast<int>(ingredients_.size()) != P_.num_rows())
            throw RowCountMismatch("need one ingredient per pattern row");
        block_offset_.resize(P_.num_rows() + 1, 0);
        for (int i = 0; i < P_.num_rows(); ++i) {
            if (ingredients_[i].cols() != P_.alphabet_size(i))
                throw AlphabetMismatch("ingredient " + std::to_string(i) + " has " +
                                       std::to_string(ingredients_[i].cols()) +
                                       " columns, row alphabet is " +
                                       std::to_string(P_.alphabet_size(i)));
            block_offset_[i + 1] = block_offset_[i] + ingredients_[i].rows();
        }
    }

    const HashFamily& pattern() const { return P_; }
    const std::vector<Ingredient>& ingredients() const { return ingredients_; }
    const Ingredient& ingredient(int i) const { return ingredients_[i]; }
    int num_rows() const { return block_offset_.back(); }
    int num_cols() const { return P_.num_cols(); }
    int block_start(int i) const { return block_offset_[i]; }
    int block_rows(int i) const { return block_offset_[i + 1] - block_offset_[i]; }

    // Virtual entry access: block row r of column j equals entry (r, p_ij - 1)
    // of the ingredient, or zero for a missing symbol.
    double entry(int row, int col) const {
        int i = block_of(row);
        int sym = P_.entry(i, col);
        if (sym == kMissing) return 0.0;
        return ingredients_[i].matrix()(row - block_offset_[i], sym - 1);
    }

    // One full column, without materializing the rest.
    Vector column(int col) const {
        Vector c(num_rows());
        for (int i = 0; i < P_.num_rows(); ++i) {
            int sym = P_.entry(i, col);
            if (sym == kMissing)
                c.segment(block_offset_[i], block_rows(i)).setZero();
            else
                c.segment(block_offset_[i], block_rows(i)) =
                    ingredients_[i].matrix().col(sym - 1);
        }
        return c;
    }

    const Matrix& dense() const {
        if (dense_.size() == 0) {
            dense_.resize(num_rows(), num_cols());
            for (int j = 0; j < num_cols(); ++j) dense_.col(j) = column(j);
        }
        return dense_;
    }

    Vector block_slice(const Vector& y, int i) const {
        if (y.size() != num_rows()) throw DimensionMismatch("sample length mismatch");
        return y.segment(block_offset_[i], block_rows(i));
    }

  private:
    int block_of(int row) const {
        int i = 0;
        while (block_offset_[i + 1] <= row) ++i;
        return i;
    }

    HashFamily P_;
    std::vector<Ingredient> ingredients_;
    std::vector<int> block_offset_;
    mutable Matrix dense_;
};

inline ComposedMatrix column_replace(HashFamily P, std::vector<Ingredient> ingredients) {
    return ComposedMatrix(std::move(P), std::move(ingredients));
}

// y = B x, dense product.
inline Vector sample(const ComposedMatrix& B, const Vector& x) {
    if (x.size() != B.num_cols()) throw DimensionMismatch("signal length != n");
    return B.dense() * x;
}

}  // namespace hrcs

#endif
