#ifndef HRCS_RECOVER_HPP
#define HRCS_RECOVER_HPP

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "hrcs/compose.hpp"
#include "hrcs/errors.hpp"
#include "hrcs/field.hpp"
#include "hrcs/hash_family.hpp"
#include "hrcs/ingredient.hpp"
#include "hrcs/linalg.hpp"

namespace hrcs {

enum class ClassLabel { Discarded, Insignificant, SignificantPositive, SignificantNegative };

struct RecoveryResult {
    Vector x_hat;
    std::vector<int> positive_support;
    std::vector<int> negative_support;
    std::vector<std::optional<Vector>> row_solutions;
    std::vector<std::vector<ClassLabel>> labels;  // [row][symbol], slot 0 = missing class
    std::vector<int> max_positive_rows;
    std::vector<int> max_negative_rows;
    double residual = 0.0;
    std::int64_t candidate_count = 0;  // sublinear path only

    std::vector<int> support() const {
        std::vector<int> s = positive_support;
        s.insert(s.end(), negative_support.begin(), negative_support.end());
        std::sort(s.begin(), s.end());
        return s;
    }
};

// Applies each row's recovery scheme to its slice of y; failures are recorded
// as nullopt, not fatal.
inline std::vector<std::optional<Vector>> per_row_solve(const ComposedMatrix& C, const Vector& y,
                                                        const std::vector<int>& bounds) {
    const int m = C.pattern().num_rows();
    if (y.size() != C.num_rows()) throw DimensionMismatch("sample length mismatch");
    if (static_cast<int>(bounds.size()) != m)
        throw DimensionMismatch("need one sparsity bound per row");
    std::vector<std::optional<Vector>> zs(m);
    for (int i = 0; i < m; ++i) zs[i] = C.ingredient(i).recover(C.block_slice(y, i), bounds[i]);
    return zs;
}

namespace detail {

// Sign classification at the shared tolerance, scaled by ||y||_inf.
inline std::vector<std::vector<ClassLabel>> classify(const ComposedMatrix& C,
                                                     const std::vector<std::optional<Vector>>& zs,
                                                     double scale, const Tolerance& tol) {
    const HashFamily& P = C.pattern();
    std::vector<std::vector<ClassLabel>> labels(P.num_rows());
    for (int i = 0; i < P.num_rows(); ++i) {
        labels[i].assign(P.alphabet_size(i) + 1, ClassLabel::Discarded);
        if (!zs[i]) continue;
        for (int sym = 1; sym <= P.alphabet_size(i); ++sym) {
            double v = (*zs[i])(sym - 1);
            if (tol.is_zero(v, scale))
                labels[i][sym] = ClassLabel::Insignificant;
            else
                labels[i][sym] =
                    v > 0 ? ClassLabel::SignificantPositive : ClassLabel::SignificantNegative;
        }
    }
    return labels;
}

inline double positive_part_norm(const Vector& z) {
    double s = 0.0;
    for (int i = 0; i < z.size(); ++i)
        if (z(i) > 0) s += z(i);
    return s;
}

inline double negative_part_norm(const Vector& z) {
    double s = 0.0;
    for (int i = 0; i < z.size(); ++i)
        if (z(i) < 0) s -= z(i);
    return s;
}

// Rows whose key value ties the maximum within tolerance.
inline std::vector<int> argmax_rows(const std::vector<double>& vals,
                                    const std::vector<bool>& eligible, const Tolerance& tol) {
    double best = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < vals.size(); ++i)
        if (eligible[i]) {
            best = any ? std::max(best, vals[i]) : vals[i];
            any = true;
        }
    std::vector<int> rows;
    if (!any) return rows;
    for (std::size_t i = 0; i < vals.size(); ++i)
        if (eligible[i] && vals[i] >= best - tol.scaled(best)) rows.push_back(static_cast<int>(i));
    return rows;
}

// Final value extraction: re-solve least squares on the declared support.
inline void solve_on_support(const ComposedMatrix& C, const Vector& y, RecoveryResult& result,
                             const Tolerance& tol) {
    std::vector<int> support = result.support();
    if (static_cast<int>(support.size()) > C.num_rows())
        throw SupportTooLarge("declared support has " + std::to_string(support.size()) +
                              " coordinates, only " + std::to_string(C.num_rows()) +
                              " measurements");
    Matrix sub(C.num_rows(), support.size());
    for (std::size_t i = 0; i < support.size(); ++i) sub.col(i) = C.column(support[i]);
    auto [xs, residual] = least_squares(sub, y, tol);
    result.x_hat = Vector::Zero(C.num_cols());
    for (std::size_t i = 0; i < support.size(); ++i) result.x_hat(support[i]) = xs(i);
    result.residual = residual;
    double scale = y.size() > 0 ? y.lpNorm<Eigen::Infinity>() : 0.0;
    if (residual > 1e3 * tol.scaled(scale))
        throw ResidualTooLarge("final solve residual " + std::to_string(residual));
}

}  // namespace detail

// Positive-signal recovery: a coordinate is declared positive exactly when
// its class is significant positive or discarded in every row.
inline RecoveryResult recover_positive(const ComposedMatrix& C, const Vector& y, int t,
                                       const Tolerance& tol = {}) {
    const HashFamily& P = C.pattern();
    RecoveryResult result;
    result.row_solutions = per_row_solve(C, y, std::vector<int>(P.num_rows(), t));
    double scale = y.size() > 0 ? y.lpNorm<Eigen::Infinity>() : 0.0;
    result.labels = detail::classify(C, result.row_solutions, scale, tol);

    for (int j = 0; j < P.num_cols(); ++j) {
        bool positive = true;
        for (int i = 0; i < P.num_rows() && positive; ++i) {
            if (!result.row_solutions[i]) continue;  // failed row constrains nothing
            ClassLabel lab = result.labels[i][P.entry(i, j)];
            positive = lab == ClassLabel::SignificantPositive || lab == ClassLabel::Discarded;
        }
        if (positive) result.positive_support.push_back(j);
    }
    detail::solve_on_support(C, y, result, tol);
    return result;
}

namespace detail {

// The intersection criterion of the general case, shared by the naive and
// sublinear paths: positive coordinates lie in significant-positive classes
// of every maximum positive row, negatives symmetrically.
struct MaxRows {
    std::vector<int> positive;
    std::vector<int> negative;
};

inline MaxRows maximum_rows(const std::vector<std::optional<Vector>>& zs, const Tolerance& tol) {
    std::vector<double> pos(zs.size(), 0.0), neg(zs.size(), 0.0);
    std::vector<bool> eligible(zs.size(), false);
    for (std::size_t i = 0; i < zs.size(); ++i) {
        if (!zs[i]) continue;
        eligible[i] = true;
        pos[i] = positive_part_norm(*zs[i]);
        neg[i] = negative_part_norm(*zs[i]);
    }
    return {argmax_rows(pos, eligible, tol), argmax_rows(neg, eligible, tol)};
}

// Naive support identification: scans every column; Omega(n).
inline void identify_support_naive(const HashFamily& P,
                                   const std::vector<std::vector<ClassLabel>>& labels,
                                   const MaxRows& mx, RecoveryResult& result) {
    for (int j = 0; j < P.num_cols(); ++j) {
        bool positive = !mx.positive.empty();
        for (int rho : mx.positive)
            if (labels[rho][P.entry(rho, j)] != ClassLabel::SignificantPositive) {
                positive = false;
                break;
            }
        if (positive) {
            result.positive_support.push_back(j);
            continue;
        }
        bool negative = !mx.negative.empty();
        for (int rho : mx.negative)
            if (labels[rho][P.entry(rho, j)] != ClassLabel::SignificantNegative) {
                negative = false;
                break;
            }
        if (negative) result.negative_support.push_back(j);
    }
}

}  // namespace detail

// General-signal recovery via maximum positive / maximum negative rows.
inline RecoveryResult recover_general(const ComposedMatrix& C, const Vector& y, int t,
                                      const Tolerance& tol = {}) {
    const HashFamily& P = C.pattern();
    RecoveryResult result;
    result.row_solutions = per_row_solve(C, y, std::vector<int>(P.num_rows(), t));
    double scale = y.size() > 0 ? y.lpNorm<Eigen::Infinity>() : 0.0;
    result.labels = detail::classify(C, result.row_solutions, scale, tol);
    detail::MaxRows mx = detail::maximum_rows(result.row_solutions, tol);
    result.max_positive_rows = mx.positive;
    result.max_negative_rows = mx.negative;
    detail::identify_support_naive(P, result.labels, mx, result);
    detail::solve_on_support(C, y, result, tol);
    return result;
}

// Strengthened recovery: rows may be bound to sparsity levels d_i below t;
// maximum solutions (maximal overall l1 norm among rows whose scheme
// succeeded) provably equal their projections, and the intersection rule of
// the general case applies to those rows for both signs.
inline RecoveryResult recover_strengthened(const ComposedMatrix& C, const Vector& y, int t,
                                           const std::vector<int>& d, const Tolerance& tol = {}) {
    const HashFamily& P = C.pattern();
    (void)t;
    RecoveryResult result;
    result.row_solutions = per_row_solve(C, y, d);
    double scale = y.size() > 0 ? y.lpNorm<Eigen::Infinity>() : 0.0;
    result.labels = detail::classify(C, result.row_solutions, scale, tol);

    std::vector<double> norms(P.num_rows(), 0.0);
    std::vector<bool> eligible(P.num_rows(), false);
    for (int i = 0; i < P.num_rows(); ++i)
        if (result.row_solutions[i]) {
            eligible[i] = true;
            norms[i] = result.row_solutions[i]->lpNorm<1>();
        }
    std::vector<int> M = detail::argmax_rows(norms, eligible, tol);
    if (M.empty()) throw NoMaximumRow("every row scheme failed");
    result.max_positive_rows = M;
    result.max_negative_rows = M;
    detail::identify_support_naive(P, result.labels,
                                   detail::MaxRows{M, M}, result);
    detail::solve_on_support(C, y, result, tol);
    return result;
}

namespace detail {

// Interpolation constraints of a linear pattern row: finite labels give
// evaluations f(beta) = g, the infinity label pins the leading coefficient.
// Solves the alpha x alpha linear system over the field.
inline std::optional<Poly> solve_column_poly(const std::shared_ptr<const Field>& F, int alpha,
                                             const std::vector<RowLabel>& row_labels,
                                             const std::vector<int>& rows,
                                             const std::vector<FieldElement>& values) {
    // Build M c = g with unknowns c_0..c_{alpha-1}.
    std::vector<std::vector<FieldElement>> M(alpha,
                                             std::vector<FieldElement>(alpha, F->zero()));
    std::vector<FieldElement> g(alpha, F->zero());
    for (int r = 0; r < alpha; ++r) {
        const RowLabel& lab = row_labels[rows[r]];
        if (lab.infinity) {
            M[r][alpha - 1] = F->one();
        } else {
            FieldElement beta = F->element(lab.element_index);
            FieldElement pw = F->one();
            for (int c = 0; c < alpha; ++c) {
                M[r][c] = pw;
                pw = pw * beta;
            }
        }
        g[r] = values[r];
    }
    // Gaussian elimination over the field.
    for (int col = 0; col < alpha; ++col) {
        int pivot = -1;
        for (int r = col; r < alpha; ++r)
            if (!M[r][col].is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) return std::nullopt;
        std::swap(M[pivot], M[col]);
        std::swap(g[pivot], g[col]);
        FieldElement inv = F->one() / M[col][col];
        for (int c = col; c < alpha; ++c) M[col][c] = M[col][c] * inv;
        g[col] = g[col] * inv;
        for (int r = 0; r < alpha; ++r) {
            if (r == col || M[r][col].is_zero()) continue;
            FieldElement f = M[r][col];
            for (int c = col; c < alpha; ++c) M[r][c] = M[r][c] - f * M[col][c];
            g[r] = g[r] - f * g[col];
        }
    }
    return Poly(F, g);
}

// Symbol of the linear pattern at (row, column f) computed from f directly.
inline int linear_symbol(const std::shared_ptr<const Field>& F, const RowLabel& lab,
                         const Poly& f) {
    if (lab.infinity) return static_cast<int>(f.coeff(f.length() - 1).index()) + 1;
    return static_cast<int>(f.eval(F->element(lab.element_index)).index()) + 1;
}

// Candidate-product support identification over a linear pattern; runtime
// depends on t^alpha and m, not on n.
inline void identify_support_sublinear(const std::shared_ptr<const Field>& F, int alpha,
                                       const std::vector<RowLabel>& row_labels,
                                       const std::vector<std::vector<ClassLabel>>& labels,
                                       const MaxRows& mx, RecoveryResult& result) {
    auto one_sign = [&](const std::vector<int>& M, ClassLabel want, std::vector<int>& out) {
        if (static_cast<int>(M.size()) < alpha)
            throw InsufficientRows("maximum row set smaller than alpha");
        std::vector<int> chosen(M.begin(), M.begin() + alpha);
        // significant symbols per chosen row
        std::vector<std::vector<FieldElement>> sig(alpha);
        for (int r = 0; r < alpha; ++r)
            for (int sym = 1; sym < static_cast<int>(labels[chosen[r]].size()); ++sym)
                if (labels[chosen[r]][sym] == want) sig[r].push_back(F->element(sym - 1));
        // product set
        std::vector<int> pick(alpha, 0);
        for (const auto& s : sig)
            if (s.empty()) return;
        while (true) {
            ++result.candidate_count;
            std::vector<FieldElement> values;
            values.reserve(alpha);
            for (int r = 0; r < alpha; ++r) values.push_back(sig[r][pick[r]]);
            if (auto f = solve_column_poly(F, alpha, row_labels, chosen, values)) {
                bool ok = true;
                for (int rho : M) {
                    int sym = linear_symbol(F, row_labels[rho], *f);
                    if (labels[rho][sym] != want) {
                        ok = false;
                        break;
                    }
                }
                if (ok) out.push_back(static_cast<int>(linear_column_index(*f)));
            }
            int r = alpha - 1;
            while (r >= 0 && pick[r] + 1 == static_cast<int>(sig[r].size())) pick[r--] = 0;
            if (r < 0) break;
            ++pick[r];
        }
        std::sort(out.begin(), out.end());
    };
    one_sign(mx.positive, ClassLabel::SignificantPositive, result.positive_support);
    one_sign(mx.negative, ClassLabel::SignificantNegative, result.negative_support);
}

}  // namespace detail

// Sublinear recovery over a linear pattern: identical output contract to
// recover_general, but support identification works on the implicit
// representation via Lagrange interpolation of candidate symbol tuples.
inline RecoveryResult recover_sublinear(const ComposedMatrix& C, const Vector& y, int t,
                                        const std::shared_ptr<const Field>& F,
                                        const Tolerance& tol = {}) {
    const HashFamily& P = C.pattern();
    if (!P.row_labels()) throw NotLinearPattern("pattern has no row labels");
    const std::int64_t q = F->order();
    int alpha = 0;
    std::int64_t n = 1;
    while (n < P.num_cols()) {
        n *= q;
        ++alpha;
    }
    if (n != P.num_cols() || alpha < 2)
        throw NotLinearPattern("column count is not q^alpha for alpha >= 2");

    RecoveryResult result;
    result.row_solutions = per_row_solve(C, y, std::vector<int>(P.num_rows(), t));
    double scale = y.size() > 0 ? y.lpNorm<Eigen::Infinity>() : 0.0;
    result.labels = detail::classify(C, result.row_solutions, scale, tol);
    detail::MaxRows mx = detail::maximum_rows(result.row_solutions, tol);
    result.max_positive_rows = mx.positive;
    result.max_negative_rows = mx.negative;
    detail::identify_support_sublinear(F, alpha, *P.row_labels(), result.labels, mx, result);
    detail::solve_on_support(C, y, result, tol);
    return result;
}

// Interval estimates and the t-sparse output of noisy recovery.
struct NoisyEstimate {
    std::vector<double> upper;                  // u(i)
    std::vector<double> lower;                  // l(i)
    std::vector<std::vector<double>> u_class;   // [row][symbol-1]
    std::vector<std::vector<double>> l_class;   // [row][symbol-1]
    std::vector<double> signatures;             // ||z_rho||_1
    double max_signature = 0.0;                 // q
    Vector x_star;
    std::vector<std::optional<Vector>> row_solutions;
};

// Recovery of (s,t)-almost-sparse signals: per-class interval estimates from
// signatures, aggregated across rows, thresholded at s + eps.
inline NoisyEstimate recover_noisy(const ComposedMatrix& C, const Vector& y, int t, double s,
                                   double eps, const Tolerance& tol = {}, bool refit = false) {
    const HashFamily& P = C.pattern();
    if (P.has_missing()) throw MissingSymbolPresent("noisy recovery requires a plain pattern");
    NoisyEstimate est;
    est.row_solutions = per_row_solve(C, y, std::vector<int>(P.num_rows(), t));
    for (int i = 0; i < P.num_rows(); ++i)
        if (!est.row_solutions[i])
            throw Infeasible("row " + std::to_string(i) +
                             " scheme returned no solution; noisy contract violated");

    const int m = P.num_rows();
    est.signatures.resize(m);
    for (int i = 0; i < m; ++i) est.signatures[i] = est.row_solutions[i]->lpNorm<1>();
    est.max_signature = *std::max_element(est.signatures.begin(), est.signatures.end());

    est.u_class.resize(m);
    est.l_class.resize(m);
    for (int rho = 0; rho < m; ++rho) {
        double slack = 0.5 * (est.max_signature - est.signatures[rho]);
        const Vector& z = *est.row_solutions[rho];
        est.u_class[rho].resize(P.alphabet_size(rho));
        est.l_class[rho].resize(P.alphabet_size(rho));
        for (int sym = 1; sym <= P.alphabet_size(rho); ++sym) {
            double v = z(sym - 1);
            if (v >= 0) {
                est.u_class[rho][sym - 1] = v + slack;
                est.l_class[rho][sym - 1] = -slack;
            } else {
                est.u_class[rho][sym - 1] = slack;
                est.l_class[rho][sym - 1] = v - slack;
            }
        }
    }

    const int n = P.num_cols();
    est.upper.resize(n);
    est.lower.resize(n);
    est.x_star = Vector::Zero(n);
    double threshold = s + eps;
    for (int j = 0; j < n; ++j) {
        double u = std::numeric_limits<double>::infinity();
        double l = -std::numeric_limits<double>::infinity();
        for (int rho = 0; rho < m; ++rho) {
            int sym = P.entry(rho, j);
            u = std::min(u, est.u_class[rho][sym - 1]);
            l = std::max(l, est.l_class[rho][sym - 1]);
        }
        est.upper[j] = u;
        est.lower[j] = l;
        if (std::abs(u) <= threshold && std::abs(l) <= threshold)
            est.x_star(j) = 0.0;
        else
            est.x_star(j) = std::abs(u) >= std::abs(l) ? u : l;
    }

    if (refit) {
        std::vector<int> support;
        for (int j = 0; j < n; ++j)
            if (est.x_star(j) != 0.0) support.push_back(j);
        if (static_cast<int>(support.size()) <= C.num_rows()) {
            Matrix sub(C.num_rows(), support.size());
            for (std::size_t i = 0; i < support.size(); ++i) sub.col(i) = C.column(support[i]);
            auto [xs, residual] = least_squares(sub, y, tol);
            (void)residual;
            for (std::size_t i = 0; i < support.size(); ++i) est.x_star(support[i]) = xs(i);
        }
    }
    (void)tol;
    return est;
}

}  // namespace hrcs

#endif
