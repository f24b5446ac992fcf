#ifndef HRCS_LINALG_HPP
#define HRCS_LINALG_HPP

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hrcs/errors.hpp"
#include "hrcs/tolerance.hpp"

namespace hrcs {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline void require_finite(const Matrix& M, const char* what) {
    if (!M.allFinite()) throw DimensionMismatch(std::string(what) + " contains NaN/Inf");
}

// Numerical rank via column-pivoted QR; pivots below tol relative to the
// largest column norm count as zero.
inline int rank(const Matrix& M, const Tolerance& tol = {}) {
    if (M.size() == 0) return 0;
    require_finite(M, "rank input");
    Eigen::ColPivHouseholderQR<Matrix> qr(M);
    double scale = M.colwise().norm().maxCoeff();
    qr.setThreshold(tol.scaled(scale) / (scale > 0 ? scale : 1.0));
    return static_cast<int>(qr.rank());
}

// Minimizes ||Ax - y||_2 for A with full column rank.
inline std::pair<Vector, double> least_squares(const Matrix& A, const Vector& y,
                                               const Tolerance& tol = {}) {
    if (A.rows() < A.cols()) throw RankDeficient("system is underdetermined");
    if (A.rows() != y.size()) throw DimensionMismatch("rhs length mismatch");
    if (A.cols() == 0) return {Vector(0), y.norm()};
    if (rank(A, tol) < A.cols()) throw RankDeficient("matrix is column rank deficient");
    Vector x = A.colPivHouseholderQr().solve(y);
    double residual = (A * x - y).norm();
    return {x, residual};
}

// Orthonormal basis of the null space (may have zero columns).
inline Matrix nullspace_basis(const Matrix& A, const Tolerance& tol = {}) {
    if (A.cols() == 0) return Matrix(0, 0);
    require_finite(A, "nullspace input");
    Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeFullV);
    double scale = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
    int r = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > tol.scaled(scale)) ++r;
    return svd.matrixV().rightCols(A.cols() - r);
}

enum class LpStatus { Optimal, Unbounded, Infeasible };

struct LpResult {
    LpStatus status = LpStatus::Optimal;
    Vector x;
    double value = 0.0;
};

namespace detail {

// Two-phase dense simplex with Bland's rule on the standard form
//   max c^T z  s.t.  T z = rhs, z >= 0.
// Returns nullopt when unbounded; infeasibility is detected in phase 1.
class SimplexTableau {
  public:
    SimplexTableau(Matrix T, Vector rhs) : A_(std::move(T)), b_(std::move(rhs)) {
        rows_ = static_cast<int>(A_.rows());
        cols_ = static_cast<int>(A_.cols());
        for (int i = 0; i < rows_; ++i)
            if (b_(i) < 0) {
                A_.row(i) = -A_.row(i);
                b_(i) = -b_(i);
            }
    }

    LpResult solve(const Vector& c) {
        // Phase 1: artificial variable per row.
        Matrix T(rows_, cols_ + rows_);
        T.leftCols(cols_) = A_;
        T.rightCols(rows_) = Matrix::Identity(rows_, rows_);
        basis_.resize(rows_);
        for (int i = 0; i < rows_; ++i) basis_[i] = cols_ + i;
        Vector phase1 = Vector::Zero(cols_ + rows_);
        phase1.tail(rows_).setConstant(-1.0);
        tableau_ = T;
        rhs_ = b_;
        if (!iterate(phase1)) return {LpStatus::Unbounded, Vector(), 0.0};  // cannot happen
        if (objective(phase1) < -1e-7) return {LpStatus::Infeasible, Vector(), 0.0};
        // Drive remaining artificial variables out of the basis where possible.
        for (int i = 0; i < rows_; ++i) {
            if (basis_[i] < cols_) continue;
            int enter = -1;
            for (int j = 0; j < cols_; ++j)
                if (std::abs(tableau_(i, j)) > 1e-9) {
                    enter = j;
                    break;
                }
            if (enter >= 0) pivot(i, enter);
        }
        // Phase 2 on original columns only (artificials pinned at zero).
        Vector full_c = Vector::Zero(cols_ + rows_);
        full_c.head(cols_) = c;
        if (!iterate(full_c, /*restrict_to=*/cols_))
            return {LpStatus::Unbounded, Vector(), 0.0};
        LpResult res;
        res.status = LpStatus::Optimal;
        res.x = Vector::Zero(cols_);
        for (int i = 0; i < rows_; ++i)
            if (basis_[i] < cols_) res.x(basis_[i]) = rhs_(i);
        res.value = c.dot(res.x);
        return res;
    }

  private:
    double objective(const Vector& c) const {
        double v = 0.0;
        for (int i = 0; i < rows_; ++i) v += c(basis_[i]) * rhs_(i);
        return v;
    }

    void pivot(int row, int col) {
        double p = tableau_(row, col);
        tableau_.row(row) /= p;
        rhs_(row) /= p;
        for (int i = 0; i < rows_; ++i) {
            if (i == row) continue;
            double f = tableau_(i, col);
            if (f != 0.0) {
                tableau_.row(i) -= f * tableau_.row(row);
                rhs_(i) -= f * rhs_(row);
            }
        }
        basis_[row] = col;
    }

    // Bland's rule; returns false on unboundedness.
    bool iterate(const Vector& c, int restrict_to = -1) {
        int ncols = restrict_to < 0 ? static_cast<int>(tableau_.cols()) : restrict_to;
        while (true) {
            // reduced costs: c_j - c_B^T B^{-1} A_j
            int enter = -1;
            for (int j = 0; j < ncols; ++j) {
                double rc = c(j);
                for (int i = 0; i < rows_; ++i) rc -= c(basis_[i]) * tableau_(i, j);
                if (rc > 1e-9) {
                    enter = j;
                    break;  // Bland: smallest index
                }
            }
            if (enter < 0) return true;
            int leave = -1;
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i < rows_; ++i) {
                if (tableau_(i, enter) > 1e-11) {
                    double ratio = rhs_(i) / tableau_(i, enter);
                    if (ratio < best - 1e-12 ||
                        (ratio < best + 1e-12 && (leave < 0 || basis_[i] < basis_[leave]))) {
                        best = ratio;
                        leave = i;
                    }
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    }

    Matrix A_, tableau_;
    Vector b_, rhs_;
    std::vector<int> basis_;
    int rows_ = 0, cols_ = 0;
};

}  // namespace detail

// max c^T x  subject to  E x = f,  G x <= h,  x free.
// Free variables are split internally; G rows get slack variables.
inline LpResult lp_maximize(const Vector& c, const Matrix& E, const Vector& f, const Matrix& G,
                            const Vector& h, int max_variables = 200) {
    const int n = static_cast<int>(c.size());
    if ((E.size() > 0 && E.cols() != n) || (G.size() > 0 && G.cols() != n) ||
        E.rows() != f.size() || G.rows() != h.size())
        throw DimensionMismatch("LP dimensions inconsistent");
    if (2 * n > max_variables)
        throw SizeExceeded("LP exceeds configured variable bound");

    const int me = static_cast<int>(E.rows());
    const int mg = static_cast<int>(G.rows());
    const int nz = 2 * n + mg;  // x+, x-, slacks
    Matrix T = Matrix::Zero(me + mg, nz);
    Vector rhs(me + mg);
    if (me > 0) {
        T.block(0, 0, me, n) = E;
        T.block(0, n, me, n) = -E;
        rhs.head(me) = f;
    }
    if (mg > 0) {
        T.block(me, 0, mg, n) = G;
        T.block(me, n, mg, n) = -G;
        T.block(me, 2 * n, mg, mg) = Matrix::Identity(mg, mg);
        rhs.tail(mg) = h;
    }
    Vector cz = Vector::Zero(nz);
    cz.head(n) = c;
    cz.segment(n, n) = -c;

    detail::SimplexTableau simplex(std::move(T), std::move(rhs));
    LpResult res = simplex.solve(cz);
    if (res.status != LpStatus::Optimal) return res;
    Vector x(n);
    for (int i = 0; i < n; ++i) x(i) = res.x(i) - res.x(n + i);
    res.x = x;
    res.value = c.dot(x);
    return res;
}

}  // namespace hrcs

#endif
