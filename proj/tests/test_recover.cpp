#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hrcs/io.hpp"
#include "hrcs/recover.hpp"

using namespace hrcs;

namespace {

// Linear pattern over GF(5) with 4x5 Vandermonde ingredients: recovers
// 2-sparse signals on n = 25 coordinates.
struct Setup {
    std::shared_ptr<const Field> F = field_new(5, 1);
    HashFamily P;
    ComposedMatrix B;

    explicit Setup(int m)
        : P(gen_linear(F, 2, m)),
          B(P, std::vector<Ingredient>(m, make_vandermonde_ingredient(5, 2))) {}
};

Vector sparse_signal(std::mt19937_64& rng, int n, int pos, int neg) {
    std::uniform_real_distribution<double> mag(0.5, 3.0);
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    Vector x = Vector::Zero(n);
    for (int i = 0; i < pos; ++i) x(idx[i]) = mag(rng);
    for (int i = 0; i < neg; ++i) x(idx[pos + i]) = -mag(rng);
    return x;
}

std::vector<int> true_support(const Vector& x) {
    std::vector<int> s;
    for (int i = 0; i < x.size(); ++i)
        if (x(i) != 0.0) s.push_back(i);
    return s;
}

}  // namespace

TEST_CASE("per-row solve tolerates failing rows") {
    Setup s(3);
    std::mt19937_64 rng(41);
    Vector x = sparse_signal(rng, 25, 2, 0);
    Vector y = sample(s.B, x);
    // bound 0 on row 0 makes that row fail unless its projection is zero
    auto zs = per_row_solve(s.B, y, {0, 2, 2});
    CHECK_FALSE(zs[0].has_value());
    REQUIRE(zs[1].has_value());
    CHECK((*zs[1] - project(s.P, 1, x)).lpNorm<Eigen::Infinity>() < 1e-7);
    CHECK_THROWS_AS(per_row_solve(s.B, y, {2, 2}), DimensionMismatch);
    CHECK_THROWS_AS(per_row_solve(s.B, Vector::Zero(3), {2, 2, 2}), DimensionMismatch);
}

TEST_CASE("positive recovery round trips") {
    Setup s(3);  // {1,2}-separating suffices for nonnegative 2-sparse
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        Vector x = sparse_signal(rng, 25, 1 + static_cast<int>(rng() % 2), 0);
        auto res = recover_positive(s.B, sample(s.B, x), 2);
        CHECK(res.positive_support == true_support(x));
        CHECK((res.x_hat - x).lpNorm<Eigen::Infinity>() < 1e-7);
        CHECK(res.residual < 1e-7);
    }
}

TEST_CASE("positive recovery of the zero signal") {
    Setup s(3);
    auto res = recover_positive(s.B, Vector::Zero(s.B.num_rows()), 2);
    CHECK(res.positive_support.empty());
    CHECK(res.x_hat.norm() == 0.0);
}

TEST_CASE("positive recovery with a missing-symbol pattern") {
    // column 0 is invisible to row 0 and must be carried by row 1 alone
    HashFamily P({1, 2}, {{0, 1}, {1, 2}});
    Matrix one(1, 1);
    one << 1;
    std::vector<Ingredient> ings = {Ingredient(one, SchemeKind::L0BruteForce, 1),
                                    Ingredient(Matrix::Identity(2, 2), SchemeKind::L0BruteForce, 1)};
    ComposedMatrix B(P, ings);
    for (int which : {0, 1}) {
        Vector x = Vector::Zero(2);
        x(which) = 5.0;
        auto res = recover_positive(B, sample(B, x), 1);
        CHECK(res.positive_support == std::vector<int>{which});
        CHECK((res.x_hat - x).lpNorm<Eigen::Infinity>() < 1e-9);
    }
}

TEST_CASE("general recovery round trips") {
    Setup s(6);
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        int pos = static_cast<int>(rng() % 3);
        Vector x = sparse_signal(rng, 25, pos, 2 - pos);
        Vector y = sample(s.B, x);
        auto res = recover_general(s.B, y, 2);
        CHECK(res.support() == true_support(x));
        CHECK((res.x_hat - x).lpNorm<Eigen::Infinity>() < 1e-7);
    }
}

TEST_CASE("general recovery is sign symmetric") {
    Setup s(6);
    std::mt19937_64 rng(44);
    Vector x = sparse_signal(rng, 25, 1, 1);
    Vector y = sample(s.B, x);
    auto res = recover_general(s.B, y, 2);
    auto neg = recover_general(s.B, -y, 2);
    CHECK(res.positive_support == neg.negative_support);
    CHECK(res.negative_support == neg.positive_support);
    CHECK((res.x_hat + neg.x_hat).lpNorm<Eigen::Infinity>() < 1e-9);
}

TEST_CASE("maximum rows carry the full signed mass") {
    Setup s(6);
    std::mt19937_64 rng(45);
    for (int trial = 0; trial < 50; ++trial) {
        Vector x = sparse_signal(rng, 25, 1, 1);
        Vector y = sample(s.B, x);
        auto res = recover_general(s.B, y, 2);
        REQUIRE_FALSE(res.max_positive_rows.empty());
        double total_pos = 0.0, total_neg = 0.0;
        for (int i = 0; i < x.size(); ++i)
            (x(i) > 0 ? total_pos : total_neg) += std::abs(x(i));
        for (int rho : res.max_positive_rows) {
            REQUIRE(res.row_solutions[rho].has_value());
            double p = 0.0;
            const Vector& z = *res.row_solutions[rho];
            for (int i = 0; i < z.size(); ++i)
                if (z(i) > 0) p += z(i);
            CHECK_THAT(p, Catch::Matchers::WithinAbs(total_pos, 1e-7));
        }
    }
}

TEST_CASE("strengthened recovery with per-row sparsity bounds") {
    HashFamily P = hash_family_from_json(
        load_json(std::string(HRCS_FIXTURE_DIR) + "/fig6.json"));
    std::vector<int> d(19, 3);
    for (int i = 0; i < 6; ++i) d[i] = 4;
    std::vector<Ingredient> ings;
    for (int i = 0; i < 19; ++i)
        ings.push_back(make_vandermonde_ingredient(P.alphabet_size(i), d[i]));
    ComposedMatrix B(P, ings);

    // shapes {1,4} and {2,3} cover every split of a support of 4 plus one
    // candidate column, so 4-sparse signals of any sign pattern are in scope
    std::mt19937_64 rng(46);
    for (int trial = 0; trial < 30; ++trial) {
        int pos = static_cast<int>(rng() % 5);
        Vector x = sparse_signal(rng, 13, pos, 4 - pos);
        Vector y = sample(B, x);
        auto res = recover_strengthened(B, y, 4, d);
        CHECK(res.support() == true_support(x));
        CHECK((res.x_hat - x).lpNorm<Eigen::Infinity>() < 1e-6);
    }

    CHECK_THROWS_AS(recover_strengthened(B, Vector::Ones(B.num_rows()), 4, {3, 3}),
                    DimensionMismatch);
}

TEST_CASE("strengthened recovery throws when every row fails") {
    Setup s(3);
    std::mt19937_64 rng(47);
    Vector x = sparse_signal(rng, 25, 2, 0);
    Vector y = sample(s.B, x);
    CHECK_THROWS_AS(recover_strengthened(s.B, y, 2, {0, 0, 0}), NoMaximumRow);
}

TEST_CASE("sublinear recovery matches the naive scan") {
    Setup s(6);
    std::mt19937_64 rng(48);
    for (int trial = 0; trial < 100; ++trial) {
        int pos = static_cast<int>(rng() % 3);
        Vector x = sparse_signal(rng, 25, pos, 2 - pos);
        Vector y = sample(s.B, x);
        auto naive = recover_general(s.B, y, 2);
        auto fast = recover_sublinear(s.B, y, 2, s.F);
        CHECK(fast.positive_support == naive.positive_support);
        CHECK(fast.negative_support == naive.negative_support);
        CHECK((fast.x_hat - naive.x_hat).lpNorm<Eigen::Infinity>() < 1e-9);
        // one candidate product per sign, each at most t^alpha
        CHECK(fast.candidate_count <= 2 * 4);
    }
}

TEST_CASE("sublinear recovery demands a linear pattern") {
    HashFamily P({2, 2}, {{1, 2, 1}, {2, 1, 1}});
    std::vector<Ingredient> ings(2, make_vandermonde_ingredient(2, 1));
    ComposedMatrix B(P, ings);
    auto F = field_new(5, 1);
    CHECK_THROWS_AS(recover_sublinear(B, Vector::Zero(B.num_rows()), 1, F), NotLinearPattern);
}

TEST_CASE("noisy recovery, exact rows and zero noise") {
    // square Vandermonde ingredients solved exactly: eps = 0 holds for real
    auto F = field_new(5, 1);
    HashFamily P = gen_linear(F, 2, 3);
    Matrix V(5, 5);
    for (int p = 0; p < 5; ++p)
        for (int j = 0; j < 5; ++j) V(p, j) = std::pow(j + 1.0, p);
    std::vector<Ingredient> ings(3, Ingredient(V, SchemeKind::LeastSquares, 2));
    ComposedMatrix B(P, ings);

    std::mt19937_64 rng(49);
    for (int trial = 0; trial < 50; ++trial) {
        int pos = static_cast<int>(rng() % 3);
        Vector x = sparse_signal(rng, 25, pos, 2 - pos);
        auto est = recover_noisy(B, sample(B, x), 2, /*s=*/0.0, /*eps=*/0.0);
        for (int j = 0; j < 25; ++j) {
            CHECK(est.lower[j] <= x(j) + 1e-9);
            CHECK(est.upper[j] >= x(j) - 1e-9);
        }
        CHECK((est.x_star - x).lpNorm<Eigen::Infinity>() < 1e-7);
    }
}

TEST_CASE("noisy recovery brackets an almost-sparse signal") {
    auto F = field_new(5, 1);
    HashFamily P = gen_linear(F, 2, 3);
    Matrix V(5, 5);
    for (int p = 0; p < 5; ++p)
        for (int j = 0; j < 5; ++j) V(p, j) = std::pow(j + 1.0, p);
    std::vector<Ingredient> ings(3, Ingredient(V, SchemeKind::LeastSquares, 2));
    ComposedMatrix B(P, ings);

    std::mt19937_64 rng(50);
    std::uniform_real_distribution<double> low(-0.01, 0.01);
    const double s = 25 * 0.01;
    for (int trial = 0; trial < 50; ++trial) {
        Vector x = sparse_signal(rng, 25, 1, 1);
        Vector noise(25);
        for (int j = 0; j < 25; ++j) noise(j) = low(rng);
        Vector dirty = x + noise;
        auto est = recover_noisy(B, sample(B, dirty), 2, s, 0.0);
        // guarantees: l(j) - s < x_j < u(j) + s; zeroed coordinates are small,
        // surviving ones are within s of the truth
        for (int j = 0; j < 25; ++j) {
            CHECK(est.lower[j] - s <= dirty(j) + 1e-9);
            CHECK(est.upper[j] + s >= dirty(j) - 1e-9);
            if (est.x_star(j) == 0.0)
                CHECK(std::abs(dirty(j)) <= 2 * s + 1e-9);
            else
                CHECK(std::abs(dirty(j) - est.x_star(j)) <= s + 1e-9);
        }
    }
}

TEST_CASE("noisy recovery rejects missing symbols and failing rows") {
    HashFamily P({1, 2}, {{0, 1}, {1, 2}});
    Matrix one(1, 1);
    one << 1;
    std::vector<Ingredient> ings = {Ingredient(one, SchemeKind::L0BruteForce, 1),
                                    Ingredient(Matrix::Identity(2, 2), SchemeKind::L0BruteForce, 1)};
    ComposedMatrix B(P, ings);
    CHECK_THROWS_AS(recover_noisy(B, Vector::Zero(3), 1, 0.0, 0.0), MissingSymbolPresent);

    Setup s(3);
    std::mt19937_64 rng(51);
    Vector x = sparse_signal(rng, 25, 3, 0);  // 3-sparse: rows bound to t=1 fail
    CHECK_THROWS_AS(recover_noisy(s.B, sample(s.B, x), 1, 0.0, 0.0), Infeasible);
}

TEST_CASE("noisy recovery of the zero signal") {
    auto F = field_new(5, 1);
    HashFamily P = gen_linear(F, 2, 3);
    Matrix V(5, 5);
    for (int p = 0; p < 5; ++p)
        for (int j = 0; j < 5; ++j) V(p, j) = std::pow(j + 1.0, p);
    std::vector<Ingredient> ings(3, Ingredient(V, SchemeKind::LeastSquares, 2));
    ComposedMatrix B(P, ings);
    auto est = recover_noisy(B, Vector::Zero(B.num_rows()), 2, 0.0, 0.0);
    CHECK(est.max_signature == 0.0);
    CHECK(est.x_star.norm() == 0.0);
}

TEST_CASE("noisy refit reproduces exact values on the declared support") {
    auto F = field_new(5, 1);
    HashFamily P = gen_linear(F, 2, 3);
    Matrix V(5, 5);
    for (int p = 0; p < 5; ++p)
        for (int j = 0; j < 5; ++j) V(p, j) = std::pow(j + 1.0, p);
    std::vector<Ingredient> ings(3, Ingredient(V, SchemeKind::LeastSquares, 2));
    ComposedMatrix B(P, ings);
    std::mt19937_64 rng(52);
    Vector x = sparse_signal(rng, 25, 1, 1);
    auto est = recover_noisy(B, sample(B, x), 2, 0.0, 0.0, {}, /*refit=*/true);
    CHECK((est.x_star - x).lpNorm<Eigen::Infinity>() < 1e-9);
}

TEST_CASE("class labels partition cleanly") {
    Setup s(3);
    std::mt19937_64 rng(53);
    Vector x = sparse_signal(rng, 25, 1, 1);
    auto res = recover_general(s.B, sample(s.B, x), 2);
    for (int i = 0; i < s.P.num_rows(); ++i) {
        REQUIRE(res.row_solutions[i].has_value());
        // slot 0 (missing class) is always discarded; others never are
        CHECK(res.labels[i][0] == ClassLabel::Discarded);
        for (int sym = 1; sym <= s.P.alphabet_size(i); ++sym) {
            ClassLabel lab = res.labels[i][sym];
            CHECK(lab != ClassLabel::Discarded);
            double v = (*res.row_solutions[i])(sym - 1);
            if (lab == ClassLabel::SignificantPositive) CHECK(v > 0);
            if (lab == ClassLabel::SignificantNegative) CHECK(v < 0);
        }
    }
}

TEST_CASE("recovery result JSON serialization") {
    Setup s(3);
    std::mt19937_64 rng(54);
    Vector x = sparse_signal(rng, 25, 2, 0);
    auto res = recover_positive(s.B, sample(s.B, x), 2);
    json j = recovery_result_to_json(res);
    CHECK(j.contains("x_hat"));
    CHECK(j["positive_support"].size() == 2);
    auto back = vector_from_json(j["x_hat"]);
    CHECK((back - res.x_hat).norm() == 0.0);
}
