#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hrcs/field.hpp"

using namespace hrcs;

TEST_CASE("field construction") {
    auto gf3 = field_new(3, 1);
    CHECK(gf3->order() == 3);
    CHECK(gf3->reduction_poly() == std::vector<int>{0, 1});  // x

    auto gf9 = field_new(3, 2);
    CHECK(gf9->order() == 9);
    // x^2 + 1 evaluates to 1, 2, 2 at x = 0, 1, 2: no root, hence irreducible,
    // and it is the lexicographically first monic irreducible quadratic.
    CHECK(gf9->reduction_poly() == std::vector<int>{1, 0, 1});

    CHECK_THROWS_AS(field_new(6, 1), NotPrime);
    CHECK_THROWS_AS(field_new(2, 17), UnsupportedOrder);
}

TEST_CASE("prime field arithmetic") {
    auto gf3 = field_new(3, 1);
    CHECK((gf3->element(2) + gf3->element(2)).index() == 1);

    auto gf5 = field_new(5, 1);
    CHECK((gf5->element(1) / gf5->element(2)).index() == 3);  // 2 * 3 = 1 mod 5
}

TEST_CASE("GF(4) extension arithmetic") {
    auto gf4 = field_new(2, 2);
    // reduction x^2 + x + 1; x * x = x + 1
    CHECK(gf4->reduction_poly() == std::vector<int>{1, 1, 1});
    FieldElement x = gf4->element(2);  // coefficient vector (0, 1)
    FieldElement xx = x * x;
    CHECK(xx.coeffs() == std::vector<int>{1, 1});
}

TEST_CASE("cross-field operations rejected") {
    auto gf3 = field_new(3, 1);
    auto gf5 = field_new(5, 1);
    CHECK_THROWS_AS(gf3->element(1) + gf5->element(1), FieldMismatch);
    CHECK_THROWS_AS(gf3->element(1) / gf3->zero(), DivideByZero);
}

TEST_CASE("field axioms, exhaustive for q <= 16") {
    for (auto [p, e] : {std::pair{2, 1}, {3, 1}, {5, 1}, {7, 1}, {11, 1}, {13, 1},
                        {2, 2}, {2, 3}, {2, 4}, {3, 2}}) {
        auto F = field_new(p, e);
        const std::int64_t q = F->order();
        INFO("q = " << q);
        std::vector<FieldElement> el;
        for (std::int64_t i = 0; i < q; ++i) el.push_back(F->element(i));
        for (std::int64_t a = 0; a < q; ++a) {
            // unique inverse
            if (a != 0) {
                FieldElement inv = F->inv(el[a]);
                REQUIRE(el[a] * inv == F->one());
            }
            for (std::int64_t b = 0; b < q; ++b) {
                REQUIRE(el[a] + el[b] == el[b] + el[a]);
                REQUIRE(el[a] * el[b] == el[b] * el[a]);
                for (std::int64_t c = 0; c < q; ++c) {
                    REQUIRE((el[a] + el[b]) + el[c] == el[a] + (el[b] + el[c]));
                    REQUIRE((el[a] * el[b]) * el[c] == el[a] * (el[b] * el[c]));
                    REQUIRE(el[a] * (el[b] + el[c]) == el[a] * el[b] + el[a] * el[c]);
                }
            }
        }
    }
}

TEST_CASE("poly_eval examples") {
    auto gf3 = field_new(3, 1);
    Poly zero = Poly::zero(gf3, 3);
    CHECK(zero.eval(gf3->element(2)).is_zero());

    Poly f(gf3, {gf3->element(1), gf3->element(1)});  // x + 1
    CHECK(f.eval(gf3->element(2)).is_zero());

    auto gf5 = field_new(5, 1);
    Poly g(gf5, {gf5->element(3), gf5->zero(), gf5->element(2)});  // 2x^2 + 3
    CHECK(g.eval(gf5->element(4)).is_zero());

    CHECK_THROWS_AS(f.eval(gf5->element(1)), FieldMismatch);
}

TEST_CASE("lagrange examples") {
    auto gf5 = field_new(5, 1);

    Poly c = lagrange_interpolate({{gf5->element(2), gf5->element(4)}}, 1);
    CHECK(c.coeff(0).index() == 4);

    // through (0,3) and (1,0): L(x) = 2x + 3
    Poly L = lagrange_interpolate(
        {{gf5->element(0), gf5->element(3)}, {gf5->element(1), gf5->element(0)}}, 2);
    CHECK(L.coeff(0).index() == 3);
    CHECK(L.coeff(1).index() == 2);

    CHECK_THROWS_AS(lagrange_interpolate(
                        {{gf5->element(1), gf5->element(0)}, {gf5->element(1), gf5->element(2)}}, 2),
                    DuplicateNode);
    CHECK_THROWS_AS(lagrange_interpolate({{gf5->element(1), gf5->element(0)}}, 2),
                    WrongPointCount);
}

TEST_CASE("interpolation round trip, random") {
    std::mt19937_64 rng(20240817);
    for (auto [p, e] : {std::pair{3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}}) {
        auto F = field_new(p, e);
        const std::int64_t q = F->order();
        for (int trial = 0; trial < 1000; ++trial) {
            int alpha = 1 + static_cast<int>(rng() % std::min<std::int64_t>(q, 4));
            std::vector<FieldElement> coeffs;
            for (int i = 0; i < alpha; ++i) coeffs.push_back(F->element(rng() % q));
            Poly f(F, coeffs);
            // alpha distinct nodes
            std::vector<std::int64_t> nodes(q);
            for (std::int64_t i = 0; i < q; ++i) nodes[i] = i;
            std::shuffle(nodes.begin(), nodes.end(), rng);
            std::vector<std::pair<FieldElement, FieldElement>> pts;
            for (int i = 0; i < alpha; ++i) {
                FieldElement beta = F->element(nodes[i]);
                pts.emplace_back(beta, f.eval(beta));
            }
            Poly g = lagrange_interpolate(pts, alpha);
            REQUIRE(g == f);
            for (const auto& [beta, val] : pts) REQUIRE(g.eval(beta) == val);
        }
    }
}

TEST_CASE("distinct polynomials of degree < alpha agree on at most alpha-1 points") {
    std::mt19937_64 rng(7);
    auto F = field_new(7, 1);
    const std::int64_t q = F->order();
    for (int trial = 0; trial < 500; ++trial) {
        int alpha = 2 + static_cast<int>(rng() % 3);
        auto random_poly = [&] {
            std::vector<FieldElement> c;
            for (int i = 0; i < alpha; ++i) c.push_back(F->element(rng() % q));
            return Poly(F, c);
        };
        Poly f = random_poly();
        Poly g = random_poly();
        if (f == g) continue;
        int agreements = 0;
        for (std::int64_t b = 0; b < q; ++b)
            if (f.eval(F->element(b)) == g.eval(F->element(b))) ++agreements;
        REQUIRE(agreements <= alpha - 1);
    }
}
