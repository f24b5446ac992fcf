#ifndef HRCS_HASH_FAMILY_HPP
#define HRCS_HASH_FAMILY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hrcs/errors.hpp"
#include "hrcs/field.hpp"

namespace hrcs {

// Entry value 0 encodes the missing symbol (circle); real symbols are
// 1..k_i per row.  Row and column indices are 0-based throughout the API.
constexpr int kMissing = 0;

// Row label of a linear hash family: the evaluation point, or infinity for
// the leading-coefficient row.
struct RowLabel {
    bool infinity = false;
    std::int64_t element_index = 0;  // valid when !infinity

    static RowLabel inf() { return RowLabel{true, 0}; }
    static RowLabel at(std::int64_t idx) { return RowLabel{false, idx}; }
};

// One part of a separation shape; marked parts may absorb missing entries.
struct ShapePart {
    int size = 1;
    bool marked = false;
};

struct PartitionShape {
    std::vector<ShapePart> parts;

    PartitionShape() = default;
    explicit PartitionShape(std::vector<ShapePart> p) : parts(std::move(p)) {}

    // Unmarked shape from plain part sizes.
    static PartitionShape plain(std::initializer_list<int> sizes) {
        PartitionShape s;
        for (int w : sizes) s.parts.push_back({w, false});
        return s;
    }

    int total() const {
        int t = 0;
        for (const auto& p : parts) t += p.size;
        return t;
    }
};

enum class Verdict { Holds, HoldsSampled, Fails };

struct SeparationWitness {
    Verdict verdict = Verdict::Holds;
    std::int64_t sampled_trials = 0;  // set for HoldsSampled

    // Failure data (empty unless verdict == Fails).
    std::vector<int> columns;                  // the column set C
    std::vector<std::vector<int>> partition;   // indexed parts C_1..C_s
    std::vector<int> tau_set;                  // T, strengthening checks only

    bool holds() const { return verdict != Verdict::Fails; }
};

struct CheckOptions {
    double budget = 1e7;            // exhaustive partition-row tests allowed
    std::int64_t samples = 100000;  // trials when sampling
    std::uint64_t seed = 0x5eed;
};

class HashFamily {
  public:
    HashFamily(std::vector<int> alphabet_sizes, std::vector<std::vector<int>> entries,
               std::optional<std::vector<RowLabel>> row_labels = std::nullopt)
        : k_(std::move(alphabet_sizes)), rows_(std::move(entries)),
          row_labels_(std::move(row_labels)) {
        m_ = static_cast<int>(rows_.size());
        if (m_ == 0 || static_cast<int>(k_.size()) != m_)
            throw DimensionMismatch("alphabet sizes must match the row count");
        n_ = static_cast<int>(rows_[0].size());
        if (n_ == 0) throw DimensionMismatch("hash family needs at least one column");
        for (int i = 0; i < m_; ++i) {
            if (k_[i] < 1) throw DimensionMismatch("alphabet sizes must be positive");
            if (static_cast<int>(rows_[i].size()) != n_)
                throw DimensionMismatch("ragged entry grid");
            for (int v : rows_[i])
                if (v < 0 || v > k_[i])
                    throw DimensionMismatch("entry " + std::to_string(v) + " outside {0..k_i}");
        }
        if (row_labels_ && static_cast<int>(row_labels_->size()) != m_)
            throw DimensionMismatch("row label count must match row count");
    }

    int num_rows() const { return m_; }
    int num_cols() const { return n_; }
    const std::vector<int>& alphabet_sizes() const { return k_; }
    int alphabet_size(int i) const { return k_[i]; }
    int entry(int i, int j) const { return rows_[i][j]; }
    const std::vector<int>& row(int i) const { return rows_[i]; }
    const std::optional<std::vector<RowLabel>>& row_labels() const { return row_labels_; }

    bool has_missing() const {
        for (const auto& r : rows_)
            for (int v : r)
                if (v == kMissing) return true;
        return false;
    }

    // The partition {S_i0, S_i1, ..., S_ik_i} of column indices induced by
    // row i; slot 0 is the missing-symbol class.
    std::vector<std::vector<int>> row_classes(int i) const {
        if (i < 0 || i >= m_) throw RowOutOfRange("row " + std::to_string(i));
        std::vector<std::vector<int>> classes(k_[i] + 1);
        for (int j = 0; j < n_; ++j) classes[rows_[i][j]].push_back(j);
        return classes;
    }

  private:
    int m_ = 0, n_ = 0;
    std::vector<int> k_;
    std::vector<std::vector<int>> rows_;
    std::optional<std::vector<RowLabel>> row_labels_;
};

// True when row `row` separates the indexed partition: no symbol (the missing
// symbol included) occurs in two different parts, and the missing symbol only
// occurs inside marked parts.
inline bool row_separates(const HashFamily& P, int row, const std::vector<std::vector<int>>& parts,
                          const std::vector<ShapePart>& shape) {
    thread_local std::vector<int> owner;  // symbol -> part id + 1
    owner.assign(P.alphabet_size(row) + 1, 0);
    for (std::size_t e = 0; e < parts.size(); ++e) {
        for (int col : parts[e]) {
            int sym = P.entry(row, col);
            if (sym == kMissing && !shape[e].marked) return false;
            int& w = owner[sym];
            if (w != 0 && w != static_cast<int>(e) + 1) return false;
            w = static_cast<int>(e) + 1;
        }
    }
    return true;
}

// Number of distinct symbols row `row` uses on the column set T.
inline int distinct_symbols_on(const HashFamily& P, int row, const std::vector<int>& cols) {
    thread_local std::vector<char> seen;
    seen.assign(P.alphabet_size(row) + 1, 0);
    int count = 0;
    for (int col : cols) {
        int sym = P.entry(row, col);
        if (!seen[sym]) {
            seen[sym] = 1;
            ++count;
        }
    }
    return count;
}

// Strengthened qualification: separation plus the symbol budget d_row on T.
inline bool row_separates_strengthened(const HashFamily& P, int row,
                                       const std::vector<std::vector<int>>& parts,
                                       const std::vector<ShapePart>& shape,
                                       const std::vector<int>& tau_set, int d_row) {
    return row_separates(P, row, parts, shape) &&
           distinct_symbols_on(P, row, tau_set) <= d_row;
}

namespace detail {

inline double binom(int n, int r) {
    if (r < 0 || r > n) return 0.0;
    double v = 1.0;
    for (int i = 0; i < r; ++i) v = v * (n - i) / (i + 1);
    return v;
}

// Visits combinations of size r from {0..n-1}; callback returns false to stop.
template <typename F>
bool for_each_combination(int n, int r, F&& visit) {
    std::vector<int> idx(r);
    for (int i = 0; i < r; ++i) idx[i] = i;
    if (r == 0) return visit(idx);
    while (true) {
        if (!visit(idx)) return false;
        int i = r - 1;
        while (i >= 0 && idx[i] == n - r + i) --i;
        if (i < 0) return true;
        ++idx[i];
        for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// Visits every indexed partition of `pool` into parts of the shape's sizes.
// Consecutive interchangeable parts (equal size, both unmarked) are
// deduplicated by requiring increasing leading elements.
template <typename F>
bool for_each_partition(const std::vector<int>& pool, const std::vector<ShapePart>& shape,
                        std::vector<std::vector<int>>& parts, std::size_t depth, F&& visit) {
    if (depth == shape.size()) return visit(parts);
    int w = shape[depth].size;
    int avail = static_cast<int>(pool.size());
    return for_each_combination(avail, w, [&](const std::vector<int>& sel) {
        parts[depth].clear();
        std::vector<int> rest;
        rest.reserve(avail - w);
        std::size_t s = 0;
        for (int i = 0; i < avail; ++i) {
            if (s < sel.size() && sel[s] == i) {
                parts[depth].push_back(pool[i]);
                ++s;
            } else {
                rest.push_back(pool[i]);
            }
        }
        if (depth > 0 && shape[depth].size == shape[depth - 1].size &&
            !shape[depth].marked && !shape[depth - 1].marked &&
            parts[depth].front() < parts[depth - 1].front())
            return true;  // symmetric duplicate
        return for_each_partition(rest, shape, parts, depth + 1, visit);
    });
}

inline std::vector<int> random_subset(std::mt19937_64& rng, int n, int r) {
    // partial Fisher-Yates on indices
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    for (int i = 0; i < r; ++i) {
        std::uniform_int_distribution<int> d(i, n - 1);
        std::swap(idx[i], idx[d(rng)]);
    }
    idx.resize(r);
    std::sort(idx.begin(), idx.end());
    return idx;
}

}  // namespace detail

// W'-separation check: exhaustive within options.budget, sampled above it.
inline SeparationWitness check_separating(const HashFamily& P,
                                          const std::vector<PartitionShape>& shapes,
                                          const CheckOptions& options = {}) {
    const int n = P.num_cols();
    const int m = P.num_rows();

    double cost = 0.0;
    for (const auto& shape : shapes) {
        int sigma = shape.total();
        if (sigma > n)
            throw SparsityExceedsColumns("shape needs " + std::to_string(sigma) +
                                         " columns, array has " + std::to_string(n));
        double partitions = 1.0;
        int remaining = sigma;
        for (const auto& part : shape.parts) {
            partitions *= detail::binom(remaining, part.size);
            remaining -= part.size;
        }
        cost += detail::binom(n, sigma) * partitions * m;
    }

    SeparationWitness w;
    auto test_instance = [&](const PartitionShape& shape, const std::vector<int>& cols,
                             const std::vector<std::vector<int>>& parts) {
        for (int row = 0; row < m; ++row)
            if (row_separates(P, row, parts, shape.parts)) return true;
        w.verdict = Verdict::Fails;
        w.columns = cols;
        w.partition = parts;
        return false;
    };

    if (cost <= options.budget) {
        for (const auto& shape : shapes) {
            int sigma = shape.total();
            std::vector<std::vector<int>> parts(shape.parts.size());
            bool ok = detail::for_each_combination(n, sigma, [&](const std::vector<int>& cols) {
                return detail::for_each_partition(cols, shape.parts, parts, 0,
                                                  [&](const std::vector<std::vector<int>>& pp) {
                                                      return test_instance(shape, cols, pp);
                                                  });
            });
            if (!ok) return w;
        }
        w.verdict = Verdict::Holds;
        return w;
    }

    // sampled mode
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::size_t> pick_shape(0, shapes.size() - 1);
    for (std::int64_t trial = 0; trial < options.samples; ++trial) {
        const auto& shape = shapes[pick_shape(rng)];
        int sigma = shape.total();
        std::vector<int> cols = detail::random_subset(rng, n, sigma);
        std::vector<int> shuffled = cols;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        std::vector<std::vector<int>> parts(shape.parts.size());
        int pos = 0;
        for (std::size_t e = 0; e < shape.parts.size(); ++e) {
            parts[e].assign(shuffled.begin() + pos, shuffled.begin() + pos + shape.parts[e].size);
            pos += shape.parts[e].size;
        }
        if (!test_instance(shape, cols, parts)) return w;
    }
    w.verdict = Verdict::HoldsSampled;
    w.sampled_trials = options.samples;
    return w;
}

// Perfect strength-t check: every m x t subarray has a row of t distinct
// symbols, i.e. separation of t unmarked singletons.
inline SeparationWitness check_perfect(const HashFamily& P, int t,
                                       const CheckOptions& options = {}) {
    if (P.has_missing()) throw ContainsMissingSymbol("perfect check requires a plain array");
    if (t > P.num_cols())
        throw SparsityExceedsColumns("t = " + std::to_string(t) + " > n = " +
                                     std::to_string(P.num_cols()));
    PartitionShape singletons;
    singletons.parts.assign(t, ShapePart{1, false});
    return check_separating(P, {singletons}, options);
}

// All multisets of s positive parts summing to t, as unmarked shapes.
inline std::vector<PartitionShape> distributing_shapes(int t, int s) {
    std::vector<PartitionShape> shapes;
    std::vector<int> cur;
    // non-increasing compositions of t into exactly s parts
    auto rec = [&](auto&& self, int remaining, int parts_left, int max_part) -> void {
        if (parts_left == 0) {
            if (remaining == 0) {
                PartitionShape shape;
                for (int w : cur) shape.parts.push_back({w, false});
                shapes.push_back(shape);
            }
            return;
        }
        for (int w = std::min(remaining - (parts_left - 1), max_part); w >= 1; --w) {
            cur.push_back(w);
            self(self, remaining - w, parts_left - 1, w);
            cur.pop_back();
        }
    };
    rec(rec, t, s, t);
    return shapes;
}

inline SeparationWitness check_distributing(const HashFamily& P, int t, int s,
                                            const CheckOptions& options = {}) {
    if (s > t || t > P.num_cols())
        throw SparsityExceedsColumns("need s <= t <= n");
    return check_separating(P, distributing_shapes(t, s), options);
}

// (d, tau)-strengthening check.  For every shape, column set C, indexed
// partition of C, and tau-set T with |C intersect T| = min(sigma, tau), some
// row must separate the partition while using at most d_row distinct symbols
// on T.
inline SeparationWitness check_strengthening(const HashFamily& P, const std::vector<int>& d,
                                             int tau, const std::vector<PartitionShape>& shapes,
                                             const CheckOptions& options = {}) {
    const int n = P.num_cols();
    const int m = P.num_rows();
    if (static_cast<int>(d.size()) != m)
        throw DimensionMismatch("d must have one entry per row");

    double cost = 0.0;
    for (const auto& shape : shapes) {
        int sigma = shape.total();
        if (sigma > n || tau > n) throw SparsityExceedsColumns("shape or tau exceeds columns");
        double partitions = 1.0;
        int remaining = sigma;
        for (const auto& part : shape.parts) {
            partitions *= detail::binom(remaining, part.size);
            remaining -= part.size;
        }
        double tcount = tau <= sigma ? detail::binom(sigma, tau)
                                     : detail::binom(n - sigma, tau - sigma);
        cost += detail::binom(n, sigma) * partitions * tcount * m;
    }

    SeparationWitness w;
    auto test_instance = [&](const PartitionShape& shape, const std::vector<int>& cols,
                             const std::vector<std::vector<int>>& parts,
                             const std::vector<int>& tau_set) {
        for (int row = 0; row < m; ++row)
            if (row_separates_strengthened(P, row, parts, shape.parts, tau_set, d[row]))
                return true;
        w.verdict = Verdict::Fails;
        w.columns = cols;
        w.partition = parts;
        w.tau_set = tau_set;
        return false;
    };

    // enumerate T given C: subsets of C when tau <= sigma, else C plus
    // tau - sigma outside columns
    auto for_each_tau = [&](const std::vector<int>& cols, auto&& visit) -> bool {
        int sigma = static_cast<int>(cols.size());
        if (tau <= sigma) {
            return detail::for_each_combination(sigma, tau, [&](const std::vector<int>& sel) {
                std::vector<int> T(tau);
                for (int i = 0; i < tau; ++i) T[i] = cols[sel[i]];
                return visit(T);
            });
        }
        std::vector<int> outside;
        outside.reserve(n - sigma);
        std::size_t ci = 0;
        for (int j = 0; j < n; ++j) {
            if (ci < cols.size() && cols[ci] == j) ++ci;
            else outside.push_back(j);
        }
        return detail::for_each_combination(static_cast<int>(outside.size()), tau - sigma,
                                            [&](const std::vector<int>& sel) {
                                                std::vector<int> T = cols;
                                                for (int s : sel) T.push_back(outside[s]);
                                                return visit(T);
                                            });
    };

    if (cost <= options.budget) {
        for (const auto& shape : shapes) {
            int sigma = shape.total();
            std::vector<std::vector<int>> parts(shape.parts.size());
            bool ok = detail::for_each_combination(n, sigma, [&](const std::vector<int>& cols) {
                return detail::for_each_partition(
                    cols, shape.parts, parts, 0, [&](const std::vector<std::vector<int>>& pp) {
                        return for_each_tau(cols, [&](const std::vector<int>& T) {
                            return test_instance(shape, cols, pp, T);
                        });
                    });
            });
            if (!ok) return w;
        }
        w.verdict = Verdict::Holds;
        return w;
    }

    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::size_t> pick_shape(0, shapes.size() - 1);
    for (std::int64_t trial = 0; trial < options.samples; ++trial) {
        const auto& shape = shapes[pick_shape(rng)];
        int sigma = shape.total();
        std::vector<int> cols = detail::random_subset(rng, n, sigma);
        std::vector<int> shuffled = cols;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        std::vector<std::vector<int>> parts(shape.parts.size());
        int pos = 0;
        for (std::size_t e = 0; e < shape.parts.size(); ++e) {
            parts[e].assign(shuffled.begin() + pos, shuffled.begin() + pos + shape.parts[e].size);
            pos += shape.parts[e].size;
        }
        std::vector<int> T;
        if (tau <= sigma) {
            T = shuffled;
            std::shuffle(T.begin(), T.end(), rng);
            T.resize(tau);
        } else {
            T = cols;
            std::vector<int> outside;
            std::size_t ci = 0;
            for (int j = 0; j < n; ++j) {
                if (ci < cols.size() && cols[ci] == j) ++ci;
                else outside.push_back(j);
            }
            std::vector<int> extra =
                detail::random_subset(rng, static_cast<int>(outside.size()), tau - sigma);
            for (int s : extra) T.push_back(outside[s]);
        }
        std::sort(T.begin(), T.end());
        if (!test_instance(shape, cols, parts, T)) return w;
    }
    w.verdict = Verdict::HoldsSampled;
    w.sampled_trials = options.samples;
    return w;
}

// Replays a failure witness: true when indeed no row of P qualifies.
inline bool witness_revalidates(const HashFamily& P, const SeparationWitness& w,
                                const std::vector<ShapePart>& shape,
                                const std::vector<int>* d = nullptr) {
    if (w.verdict != Verdict::Fails) return false;
    for (int row = 0; row < P.num_rows(); ++row) {
        bool sep = row_separates(P, row, w.partition, shape);
        if (sep && d != nullptr && !w.tau_set.empty())
            sep = distinct_symbols_on(P, row, w.tau_set) <= (*d)[row];
        if (sep) return false;
    }
    return true;
}

// Linear hash family over GF(q): rows labeled (infinity, omega_0, ...,
// omega_{q-1}) truncated to the first m, columns indexed by the q^alpha
// polynomials of degree < alpha in lexicographic coefficient order (constant
// coefficient most significant).  Entry = f(beta) for finite rows, leading
// coefficient for the infinity row, as 1-based symbols over q.
inline HashFamily gen_linear(const std::shared_ptr<const Field>& F, int alpha, int m) {
    const std::int64_t q = F->order();
    if (alpha < 2 || alpha > q)
        throw AlphaOutOfRange("alpha must satisfy 2 <= alpha <= q");
    if (m < 1 || m > q + 1)
        throw TooManyRows("m must satisfy 1 <= m <= q+1");
    double ncols = std::pow(static_cast<double>(q), alpha);
    if (ncols * m > 5e7)
        throw SizeExceeded("q^alpha * m too large to materialize");
    std::int64_t n = 1;
    for (int i = 0; i < alpha; ++i) n *= q;

    std::vector<FieldElement> omega;
    omega.reserve(q);
    for (std::int64_t i = 0; i < q; ++i) omega.push_back(F->element(i));

    std::vector<RowLabel> labels;
    std::vector<std::vector<int>> rows;
    for (int r = 0; r < m; ++r) {
        labels.push_back(r == 0 ? RowLabel::inf() : RowLabel::at(r - 1));
        rows.emplace_back(n, 0);
    }

    std::vector<std::int64_t> digits(alpha, 0);  // digits[0] = c_0 (most significant)
    for (std::int64_t j = 0; j < n; ++j) {
        std::int64_t v = j;
        for (int i = alpha - 1; i >= 0; --i) {
            digits[i] = v % q;
            v /= q;
        }
        std::vector<FieldElement> coeffs;
        coeffs.reserve(alpha);
        for (int i = 0; i < alpha; ++i) coeffs.push_back(omega[digits[i]]);
        Poly f(F, coeffs);
        for (int r = 0; r < m; ++r) {
            if (labels[r].infinity)
                rows[r][j] = static_cast<int>(digits[alpha - 1]) + 1;
            else
                rows[r][j] = static_cast<int>(f.eval(omega[labels[r].element_index]).index()) + 1;
        }
    }
    return HashFamily(std::vector<int>(m, static_cast<int>(q)), std::move(rows),
                      std::move(labels));
}

// Column index assigned by gen_linear to the polynomial f (inverse of the
// column enumeration).
inline std::int64_t linear_column_index(const Poly& f) {
    const std::int64_t q = f.field()->order();
    std::int64_t idx = 0;
    for (int i = 0; i < f.length(); ++i) idx = idx * q + f.coeff(i).index();
    return idx;
}

}  // namespace hrcs

#endif
