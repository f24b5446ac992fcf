#ifndef HRCS_INGREDIENT_HPP
#define HRCS_INGREDIENT_HPP

#include <cstdio>
#include <cstdlib>
#include <unistd.h>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hrcs/errors.hpp"
#include "hrcs/linalg.hpp"
#include "hrcs/tolerance.hpp"

namespace hrcs {

// Enumerates supports by increasing size (lexicographic within a size) and
// accepts the first one whose least-squares residual passes.  Under the
// (l0,d)-null space condition the accepted solution is the unique d-sparse
// one.
inline std::optional<Vector> l0_brute_recover(const Matrix& A, const Vector& y, int d,
                                              const Tolerance& tol = {}) {
    const int n = static_cast<int>(A.cols());
    if (d > A.rows()) throw SparsityTooLarge("d exceeds measurement count");
    if (d > n) throw SparsityTooLarge("d exceeds column count");
    double scale = y.size() > 0 ? y.lpNorm<Eigen::Infinity>() : 0.0;
    double accept = tol.scaled(scale);

    std::vector<int> support;
    auto try_support = [&]() -> std::optional<Vector> {
        Matrix sub(A.rows(), support.size());
        for (std::size_t i = 0; i < support.size(); ++i) sub.col(i) = A.col(support[i]);
        if (rank(sub, tol) < static_cast<int>(support.size())) return std::nullopt;
        auto [xs, residual] = least_squares(sub, y, tol);
        if (residual > accept) return std::nullopt;
        Vector z = Vector::Zero(n);
        for (std::size_t i = 0; i < support.size(); ++i) z(support[i]) = xs(i);
        return z;
    };

    for (int size = 0; size <= d; ++size) {
        support.resize(size);
        for (int i = 0; i < size; ++i) support[i] = i;
        if (size == 0) {
            if (y.norm() <= accept) return Vector::Zero(n);
            continue;
        }
        while (true) {
            if (auto z = try_support()) return z;
            int i = size - 1;
            while (i >= 0 && support[i] == n - size + i) --i;
            if (i < 0) break;
            ++support[i];
            for (int j = i + 1; j < size; ++j) support[j] = support[j - 1] + 1;
        }
    }
    return std::nullopt;
}

// min ||x||_1 s.t. Ax = y via the positive/negative split LP.
inline Vector l1_recover(const Matrix& A, const Vector& y, const Tolerance& tol = {}) {
    const int n = static_cast<int>(A.cols());
    // lp_maximize splits free variables itself, so pose the problem directly:
    // max -(sum u + sum v) with x = u - v is equivalent to min ||x||_1 but
    // needs sign constraints; instead solve over z = (u, v) >= 0 via G z <= 0.
    Vector c = Vector::Constant(2 * n, -1.0);
    Matrix E(A.rows(), 2 * n);
    E.leftCols(n) = A;
    E.rightCols(n) = -A;
    Matrix G = -Matrix::Identity(2 * n, 2 * n);
    Vector h = Vector::Zero(2 * n);
    LpResult res = lp_maximize(c, E, y, G, h, /*max_variables=*/4 * 2 * n + 8);
    if (res.status != LpStatus::Optimal) throw Infeasible("no solution to Ax = y");
    Vector x(n);
    for (int i = 0; i < n; ++i) x(i) = res.x(i) - res.x(n + i);
    (void)tol;
    return x;
}

// (l0,t)-null space condition: every min(2t, n) columns linearly independent.
inline bool check_l0_nsc(const Matrix& A, int t, const Tolerance& tol = {}) {
    const int n = static_cast<int>(A.cols());
    const int size = std::min(2 * t, n);
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    while (true) {
        Matrix sub(A.rows(), size);
        for (int i = 0; i < size; ++i) sub.col(i) = A.col(idx[i]);
        if (rank(sub, tol) < size) return false;
        int i = size - 1;
        while (i >= 0 && idx[i] == n - size + i) --i;
        if (i < 0) return true;
        ++idx[i];
        for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// (l1,t)-null space condition via the finite LP family: for every |C| = t and
// sign pattern s on C, the maximum of sum_{i in C} s_i y_i over null vectors
// with ||y||_1 <= 1 must stay below 1/2.
inline bool check_l1_nsc(const Matrix& A, int t, const Tolerance& tol = {},
                         int max_columns = 16) {
    const int n = static_cast<int>(A.cols());
    if (n > max_columns) throw SizeExceeded("l1 NSC check limited to small matrices");
    if (nullspace_basis(A, tol).cols() == 0) return true;  // null space is {0}

    // variables z = (u, v), y = u - v; A y = 0; sum(u + v) <= 1; u, v >= 0
    Matrix E(A.rows(), 2 * n);
    E.leftCols(n) = A;
    E.rightCols(n) = -A;
    Vector f = Vector::Zero(A.rows());
    Matrix G = Matrix::Zero(2 * n + 1, 2 * n);
    G.topRows(2 * n) = -Matrix::Identity(2 * n, 2 * n);
    G.row(2 * n).setOnes();
    Vector h = Vector::Zero(2 * n + 1);
    h(2 * n) = 1.0;

    std::vector<int> C(t);
    for (int i = 0; i < t; ++i) C[i] = i;
    while (true) {
        for (int mask = 0; mask < (1 << t); ++mask) {
            Vector c = Vector::Zero(2 * n);
            for (int i = 0; i < t; ++i) {
                double s = (mask >> i) & 1 ? -1.0 : 1.0;
                c(C[i]) = s;
                c(n + C[i]) = -s;
            }
            LpResult res = lp_maximize(c, E, f, G, h, /*max_variables=*/4 * 2 * n + 8);
            if (res.status != LpStatus::Optimal) return false;
            if (res.value >= 0.5 - tol.scaled(1.0)) return false;
        }
        int i = t - 1;
        while (i >= 0 && C[i] == n - t + i) --i;
        if (i < 0) return true;
        ++C[i];
        for (int j = i + 1; j < t; ++j) C[j] = C[j - 1] + 1;
    }
}

enum class SchemeKind {
    L0BruteForce,   // support enumeration + least squares
    L1Program,      // l1 minimization, d-sparsity verified on the minimizer
    LeastSquares,   // exact solve, requires full column rank (noisy recovery)
    External,       // subprocess speaking the JSON contract
};

inline std::string scheme_name(SchemeKind k) {
    switch (k) {
        case SchemeKind::L0BruteForce: return "l0-brute-force";
        case SchemeKind::L1Program: return "l1-program";
        case SchemeKind::LeastSquares: return "least-squares";
        case SchemeKind::External: return "external";
    }
    return "?";
}

inline SchemeKind scheme_from_name(const std::string& s) {
    if (s == "l0-brute-force") return SchemeKind::L0BruteForce;
    if (s == "l1-program") return SchemeKind::L1Program;
    if (s == "least-squares") return SchemeKind::LeastSquares;
    if (s == "external") return SchemeKind::External;
    throw ParseError("unknown scheme '" + s + "'");
}

namespace detail {

// Subprocess contract: JSON {A, y, d} on stdin, {"z": [...]} or
// {"status": "no_sparse_solution"} on stdout.
inline std::optional<Vector> external_recover(const std::string& command, const Matrix& A,
                                              const Vector& y, int d) {
    nlohmann::json in;
    in["A"] = nlohmann::json::array();
    for (int i = 0; i < A.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < A.cols(); ++j) row.push_back(A(i, j));
        in["A"].push_back(row);
    }
    in["y"] = std::vector<double>(y.data(), y.data() + y.size());
    in["d"] = d;

    static int counter = 0;
    std::string in_path = "/tmp/hrcs_ext_" + std::to_string(::getpid()) + "_" +
                          std::to_string(counter++) + ".json";
    std::string out_path = in_path + ".out";
    {
        std::FILE* fp = std::fopen(in_path.c_str(), "w");
        if (!fp) throw ParseError("cannot create temp file for external scheme");
        std::string s = in.dump();
        std::fwrite(s.data(), 1, s.size(), fp);
        std::fclose(fp);
    }
    std::string cmd = command + " < " + in_path + " > " + out_path;
    int rc = std::system(cmd.c_str());
    std::remove(in_path.c_str());
    if (rc != 0) {
        std::remove(out_path.c_str());
        throw ParseError("external scheme '" + command + "' failed");
    }
    nlohmann::json out;
    {
        std::FILE* fp = std::fopen(out_path.c_str(), "r");
        if (!fp) throw ParseError("external scheme produced no output");
        std::string s;
        char buf[4096];
        std::size_t got;
        while ((got = std::fread(buf, 1, sizeof buf, fp)) > 0) s.append(buf, got);
        std::fclose(fp);
        std::remove(out_path.c_str());
        out = nlohmann::json::parse(s);
    }
    if (out.contains("status") && out["status"] == "no_sparse_solution") return std::nullopt;
    std::vector<double> z = out.at("z").get<std::vector<double>>();
    if (static_cast<int>(z.size()) != A.cols())
        throw ParseError("external scheme returned wrong-length vector");
    return Eigen::Map<Vector>(z.data(), z.size());
}

}  // namespace detail

struct CertificationRecord {
    bool l0_checked = false;
    bool l0_holds = false;
    bool l1_checked = false;
    bool l1_holds = false;
    double eps0 = 0.0;
};

// A small real measurement matrix bundled with its recovery scheme and the
// sparsity level it is certified for.
class Ingredient {
  public:
    Ingredient(Matrix A, SchemeKind scheme, int certified_t, Tolerance tol = {},
               std::string external_command = {})
        : A_(std::move(A)), scheme_(scheme), certified_t_(certified_t), tol_(tol),
          external_command_(std::move(external_command)) {
        require_finite(A_, "ingredient matrix");
    }

    const Matrix& matrix() const { return A_; }
    int rows() const { return static_cast<int>(A_.rows()); }
    int cols() const { return static_cast<int>(A_.cols()); }
    SchemeKind scheme() const { return scheme_; }
    int certified_t() const { return certified_t_; }
    const Tolerance& tolerance() const { return tol_; }
    const std::string& external_command() const { return external_command_; }
    const CertificationRecord& certification() const { return cert_; }

    // Runs the NSC checks for the certified sparsity and records the result.
    void certify(bool check_l1 = false) {
        cert_.eps0 = tol_.eps0;
        cert_.l0_checked = true;
        cert_.l0_holds = check_l0_nsc(A_, certified_t_, tol_);
        if (check_l1) {
            cert_.l1_checked = true;
            cert_.l1_holds = check_l1_nsc(A_, certified_t_, tol_);
        }
    }

    // The unique d-sparse solution of A z = y, or nullopt when the scheme
    // reports that no such vector exists.
    std::optional<Vector> recover(const Vector& y, int d) const {
        switch (scheme_) {
            case SchemeKind::L0BruteForce:
                return l0_brute_recover(A_, y, std::min<int>(d, std::min(rows(), cols())), tol_);
            case SchemeKind::L1Program: {
                Vector z;
                try {
                    z = l1_recover(A_, y, tol_);
                } catch (const Infeasible&) {
                    return std::nullopt;
                }
                double scale = y.size() > 0 ? y.lpNorm<Eigen::Infinity>() : 0.0;
                if ((A_ * z - y).norm() > tol_.scaled(scale)) return std::nullopt;
                int nnz = 0;
                double zscale = z.size() > 0 ? z.lpNorm<Eigen::Infinity>() : 0.0;
                for (int i = 0; i < z.size(); ++i)
                    if (!tol_.is_zero(z(i), zscale)) ++nnz;
                if (nnz > d) return std::nullopt;
                return z;
            }
            case SchemeKind::LeastSquares: {
                auto [z, residual] = least_squares(A_, y, tol_);
                (void)residual;
                return z;
            }
            case SchemeKind::External:
                return detail::external_recover(external_command_, A_, y, d);
        }
        return std::nullopt;
    }

  private:
    Matrix A_;
    SchemeKind scheme_;
    int certified_t_;
    Tolerance tol_;
    std::string external_command_;
    CertificationRecord cert_;
};

// 2t x k Vandermonde on distinct nodes (defaults 1..k); every 2t columns are
// independent, so the (l0,t)-null space condition holds by construction.
inline Ingredient make_vandermonde_ingredient(int k, int t, std::vector<double> nodes = {},
                                              SchemeKind scheme = SchemeKind::L0BruteForce,
                                              Tolerance tol = {}) {
    if (nodes.empty()) {
        nodes.resize(k);
        for (int i = 0; i < k; ++i) nodes[i] = i + 1;
    }
    if (static_cast<int>(nodes.size()) != k)
        throw DimensionMismatch("need one node per column");
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            if (nodes[i] == nodes[j]) throw DuplicateNodes("repeated Vandermonde node");
    Matrix A(2 * t, k);
    for (int j = 0; j < k; ++j) {
        double v = 1.0;
        for (int p = 0; p < 2 * t; ++p) {
            A(p, j) = v;
            v *= nodes[j];
        }
    }
    Ingredient ing(std::move(A), scheme, t, tol);
    ing.certify();
    return ing;
}

}  // namespace hrcs

#endif
