#ifndef HRCS_IO_HPP
#define HRCS_IO_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hrcs/compose.hpp"
#include "hrcs/errors.hpp"
#include "hrcs/hash_family.hpp"
#include "hrcs/ingredient.hpp"
#include "hrcs/recover.hpp"

namespace hrcs {

using json = nlohmann::json;

// ---- hash family: {"m", "n", "k", "rows", "row_labels"?}, 0 encodes the
// missing symbol, labels use -1 for the infinity row ----

inline json hash_family_to_json(const HashFamily& P) {
    json j;
    j["m"] = P.num_rows();
    j["n"] = P.num_cols();
    j["k"] = P.alphabet_sizes();
    j["rows"] = json::array();
    for (int i = 0; i < P.num_rows(); ++i) j["rows"].push_back(P.row(i));
    if (P.row_labels()) {
        json labels = json::array();
        for (const auto& lab : *P.row_labels())
            labels.push_back(lab.infinity ? -1 : static_cast<std::int64_t>(lab.element_index));
        j["row_labels"] = labels;
    }
    return j;
}

inline HashFamily hash_family_from_json(const json& j) {
    try {
        std::vector<int> k = j.at("k").get<std::vector<int>>();
        std::vector<std::vector<int>> rows = j.at("rows").get<std::vector<std::vector<int>>>();
        std::optional<std::vector<RowLabel>> labels;
        if (j.contains("row_labels")) {
            std::vector<RowLabel> ls;
            for (const auto& v : j["row_labels"]) {
                std::int64_t x = v.get<std::int64_t>();
                ls.push_back(x < 0 ? RowLabel::inf() : RowLabel::at(x));
            }
            labels = std::move(ls);
        }
        HashFamily P(std::move(k), std::move(rows), std::move(labels));
        if (j.contains("m") && j["m"].get<int>() != P.num_rows())
            throw ParseError("declared m disagrees with rows");
        if (j.contains("n") && j["n"].get<int>() != P.num_cols())
            throw ParseError("declared n disagrees with rows");
        return P;
    } catch (const json::exception& e) {
        throw ParseError(std::string("hash family: ") + e.what());
    }
}

// ---- ingredient: {"r", "k", "entries", "scheme", "certified_t",
// "tolerance", "command"?} ----

inline json ingredient_to_json(const Ingredient& ing) {
    json j;
    j["r"] = ing.rows();
    j["k"] = ing.cols();
    j["entries"] = json::array();
    for (int i = 0; i < ing.rows(); ++i) {
        json row = json::array();
        for (int c = 0; c < ing.cols(); ++c) row.push_back(ing.matrix()(i, c));
        j["entries"].push_back(row);
    }
    j["scheme"] = scheme_name(ing.scheme());
    j["certified_t"] = ing.certified_t();
    j["tolerance"] = ing.tolerance().eps0;
    if (!ing.external_command().empty()) j["command"] = ing.external_command();
    return j;
}

inline Ingredient ingredient_from_json(const json& j) {
    try {
        int r = j.at("r").get<int>();
        int k = j.at("k").get<int>();
        auto entries = j.at("entries").get<std::vector<std::vector<double>>>();
        if (static_cast<int>(entries.size()) != r)
            throw ParseError("ingredient row count mismatch");
        Matrix A(r, k);
        for (int i = 0; i < r; ++i) {
            if (static_cast<int>(entries[i].size()) != k)
                throw ParseError("ingredient column count mismatch");
            for (int c = 0; c < k; ++c) A(i, c) = entries[i][c];
        }
        Tolerance tol;
        if (j.contains("tolerance")) tol.eps0 = j["tolerance"].get<double>();
        std::string cmd = j.value("command", std::string());
        return Ingredient(std::move(A), scheme_from_name(j.at("scheme").get<std::string>()),
                          j.at("certified_t").get<int>(), tol, cmd);
    } catch (const json::exception& e) {
        throw ParseError(std::string("ingredient: ") + e.what());
    }
}

// ---- composed matrix: compact implicit representation (pattern plus the
// ingredient list), the dense form is derivable ----

inline json composed_to_json(const ComposedMatrix& C) {
    json j;
    j["pattern"] = hash_family_to_json(C.pattern());
    j["ingredients"] = json::array();
    for (const auto& ing : C.ingredients()) j["ingredients"].push_back(ingredient_to_json(ing));
    return j;
}

inline ComposedMatrix composed_from_json(const json& j) {
    try {
        HashFamily P = hash_family_from_json(j.at("pattern"));
        std::vector<Ingredient> ingredients;
        for (const auto& ij : j.at("ingredients")) ingredients.push_back(ingredient_from_json(ij));
        return ComposedMatrix(std::move(P), std::move(ingredients));
    } catch (const json::exception& e) {
        throw ParseError(std::string("composed matrix: ") + e.what());
    }
}

// ---- plain vectors and dense CSV ----

inline json vector_to_json(const Vector& v) {
    json j = json::array();
    for (int i = 0; i < v.size(); ++i) j.push_back(v(i));
    return j;
}

inline Vector vector_from_json(const json& j) {
    std::vector<double> v = j.get<std::vector<double>>();
    return Eigen::Map<Vector>(v.data(), v.size());
}

inline std::string matrix_to_csv(const Matrix& M) {
    std::ostringstream out;
    out.precision(17);
    for (int i = 0; i < M.rows(); ++i) {
        for (int j = 0; j < M.cols(); ++j) {
            if (j) out << ',';
            out << M(i, j);
        }
        out << '\n';
    }
    return out.str();
}

inline json recovery_result_to_json(const RecoveryResult& r) {
    json j;
    j["x_hat"] = vector_to_json(r.x_hat);
    j["positive_support"] = r.positive_support;
    j["negative_support"] = r.negative_support;
    j["max_positive_rows"] = r.max_positive_rows;
    j["max_negative_rows"] = r.max_negative_rows;
    j["residual"] = r.residual;
    j["candidate_count"] = r.candidate_count;
    return j;
}

// ---- file helpers; parse failures never leave partial outputs because
// writing goes through a complete in-memory string ----

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline void save_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << text;
}

inline void save_json(const std::string& path, const json& j) { save_text(path, j.dump(2) + "\n"); }

}  // namespace hrcs

#endif
