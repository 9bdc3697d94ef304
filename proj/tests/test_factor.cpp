#include "doctest.h"
#include "semialg/factor.hpp"
#include "support.hpp"

using namespace semialg;
using semialg::testing::c;
using semialg::testing::x;

namespace {

// Oracle: count how many times f divides p by plain repeated division.
unsigned brute_multiplicity(const Polynomial& f, Polynomial p) {
    unsigned k = 0;
    while (auto q = try_divide(p, f)) {
        p = *q;
        ++k;
    }
    return k;
}

}  // namespace

TEST_CASE("try_divide examples") {
    auto x1 = x(2, 1), x2 = x(2, 2);
    auto disk = c(2, 1) - x1 * x1 - x2 * x2;
    auto q = try_divide(disk * (x2 + c(2, 2)), x2 + c(2, 2));
    REQUIRE(q);
    CHECK(*q == disk);
    CHECK(try_divide(disk, c(2, 1)) == disk);
    CHECK_FALSE(try_divide(x1 + c(2, 1), x2));
    CHECK_THROWS(try_divide(x1, Polynomial(2)));
    CHECK(try_divide(Polynomial(2), x1)->is_zero());
}

TEST_CASE("multiplicity examples") {
    auto x1 = x(2, 1), x2 = x(2, 2);
    auto disk = c(2, 1) - x1 * x1 - x2 * x2;
    CHECK(multiplicity(x2, disk * x2 * x2) == 2);
    CHECK(multiplicity(x1 - x2, x1 + x2) == 0);
    auto p = x1.pow(3) * (x1 + c(2, 1));
    CHECK(brute_multiplicity(x1, p) == 3);
    CHECK(multiplicity(x1, p) == 3);
    CHECK_THROWS(multiplicity(c(2, 3), p));
    CHECK_THROWS(multiplicity(x1, Polynomial(2)));
}

TEST_CASE("gcd examples") {
    auto x1 = x(2, 1), x2 = x(2, 2);
    CHECK(gcd(x1 * x1 - x2 * x2, x1 - x2) == x1 - x2);
    auto p = (x1 * x1).scaled(-3) + x2 * x1 + c(2, 5);
    CHECK(gcd(p, p) == normalize(p));
    CHECK(gcd(p, Polynomial(2)) == normalize(p));
    CHECK_THROWS(gcd(Polynomial(2), Polynomial(2)));

    // Oracle: enumerate divisors u^a v^b w^e of the known factorization
    // (1 - x1)(1 + x1) x2^2 and keep the largest one dividing x2^3.
    auto a = (c(2, 1) - x1 * x1) * x2 * x2, b = x2.pow(3);
    std::vector<Polynomial> base{c(2, 1) - x1, c(2, 1) + x1, x2};
    Polynomial best = c(2, 1);
    for (unsigned i = 0; i <= 1; ++i)
        for (unsigned j = 0; j <= 1; ++j)
            for (unsigned k = 0; k <= 2; ++k) {
                auto d = base[0].pow(i) * base[1].pow(j) * base[2].pow(k);
                if (try_divide(a, d) && try_divide(b, d) && d.total_degree() > best.total_degree()) best = d;
            }
    CHECK(normalize(best) == x2 * x2);
    CHECK(gcd(a, b) == x2 * x2);
}

TEST_CASE("gcd in three variables") {
    auto y1 = x(3, 1), y2 = x(3, 2), y3 = x(3, 3);
    auto g = y3 * y3 * y1 - y2 * y2;
    auto p = g * (y1 + y2 * y3) * (y2 - c(3, 1));
    auto q = g * (y1 - y3) * (y2 - c(3, 1)).pow(2);
    CHECK(gcd(p, q) == normalize(g * (y2 - c(3, 1))));
}

TEST_CASE("squarefree part") {
    auto x1 = x(2, 1), x2 = x(2, 2);
    CHECK(squarefree_part(x2 * x2) == x2);
    auto disk = c(2, 1) - x1 * x1 - x2 * x2;
    auto p = disk * x2 * x2;
    auto s = squarefree_part(p);
    CHECK(s == normalize(disk * x2));
    // the known factors occur exactly once in the result
    CHECK(multiplicity(x2, s) == 1);
    CHECK(multiplicity(disk, s) == 1);
    CHECK(squarefree_part(disk * x2) == normalize(disk * x2));
    CHECK_THROWS(squarefree_part(c(2, 4)));
}

TEST_CASE("product factorization") {
    auto x1 = x(2, 1), x2 = x(2, 2);
    auto disk = c(2, 1) - x1 * x1 - x2 * x2;
    {
        std::vector<Polynomial> ps{disk * x2 * x2};
        std::vector<Polynomial> known{x2};
        auto pf = product_factorization(ps, known);
        REQUIRE(pf.factors.size() == 1);
        CHECK(pf.factors[0].factor == x2);
        CHECK(pf.factors[0].multiplicity == 2);
        CHECK(pf.reconstruct() == ps[0]);
        CHECK(pf.residue == normalize(disk));
        CHECK(pf.residue_status == Irreducibility::Irreducible);
    }
    {
        auto line = x2 + c(2, 2);
        std::vector<Polynomial> ps{line, disk * line};
        std::vector<Polynomial> known{line};
        auto pf = product_factorization(ps, known);
        REQUIRE(pf.factors.size() == 1);
        CHECK(pf.factors[0].multiplicity == 2);
        CHECK(pf.per_entry[0] == std::vector<unsigned>{1, 1});
        CHECK(pf.reconstruct() == ps[0] * ps[1]);
    }
    {
        std::vector<Polynomial> ps{c(2, 1)};
        std::vector<Polynomial> known{x1};
        auto pf = product_factorization(ps, known);
        CHECK(pf.factors.empty());
        CHECK(pf.unit == 1);
        CHECK(pf.residue_is_unit());
    }
    std::vector<Polynomial> bad{x1, Polynomial(2)};
    CHECK_THROWS(product_factorization(bad, std::vector<Polynomial>{}));
}

TEST_CASE("bounded irreducibility check") {
    auto x1 = x(2, 1), x2 = x(2, 2);
    CHECK(check_irreducible(x1 - x2.scaled(3) + c(2, 1)) == Irreducibility::Irreducible);
    CHECK(check_irreducible(c(2, 1) - x1 * x1 - x2 * x2) == Irreducibility::Irreducible);
    CHECK(check_irreducible(x1 * x1 + x2 * x2 - x1.pow(3)) == Irreducibility::Irreducible);
    CHECK(check_irreducible(x1 * x1 - x2 * x2) == Irreducibility::Reducible);
    CHECK(check_irreducible(x2 * x2) == Irreducibility::Reducible);
    // quartic that splits into two irreducible quadratics over Q
    auto quartic = (x1 * x1 + x2 * x2 + c(2, 1)) * (x1 * x1 - x2 + c(2, 3));
    CHECK(check_irreducible(quartic) != Irreducibility::Irreducible);
    // univariate quartic x^4 + 4 = (x^2+2x+2)(x^2-2x+2)
    CHECK(check_irreducible(x(1, 1).pow(4) + c(1, 4)) == Irreducibility::Reducible);
    CHECK(check_irreducible(x(1, 1).pow(4) + c(1, 1)) == Irreducibility::Irreducible);
    auto y1 = x(3, 1), y2 = x(3, 2), y3 = x(3, 3);
    CHECK(check_irreducible(y3 * y3 * y1 - y2 * y2) == Irreducibility::Unchecked);
}

// ---- properties ---------------------------------------------------------

TEST_CASE("division round trip") {
    std::mt19937_64 rng(31337);
    for (int i = 0; i < 500; ++i) {
        std::size_t dim = 1 + i % 3;
        auto f = testing::random_poly(rng, dim, 3, 4);
        auto g = testing::random_poly(rng, dim, 3, 4);
        if (f.is_zero()) continue;
        auto q = try_divide(f * g, f);
        REQUIRE(q);
        REQUIRE(*q == g);
    }
}

TEST_CASE("multiplicity agrees with repeated division") {
    std::mt19937_64 rng(4242);
    int checked = 0;
    while (checked < 200) {
        std::size_t dim = 1 + checked % 3;
        auto f = testing::random_nonconstant(rng, dim, 2, 3);
        auto h = testing::random_poly(rng, dim, 2, 3);
        if (h.is_zero() || try_divide(h, f)) continue;
        unsigned k = checked % 4;
        auto p = f.pow(k) * h;
        REQUIRE(multiplicity(f, p) == k);
        REQUIRE(brute_multiplicity(f, p) == k);
        ++checked;
    }
}

TEST_CASE("gcd divides both arguments") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 150; ++i) {
        std::size_t dim = 1 + i % 3;
        auto common = testing::random_nonconstant(rng, dim, 2, 3);
        auto p = common * testing::random_poly(rng, dim, 2, 3);
        auto q = common * testing::random_poly(rng, dim, 2, 3);
        if (p.is_zero() || q.is_zero()) continue;
        auto g = gcd(p, q);
        REQUIRE(try_divide(p, g));
        REQUIRE(try_divide(q, g));
        REQUIRE(try_divide(g, normalize(common)));
        Rational s = testing::random_rational(rng);
        if (s != 0) REQUIRE(gcd(p.scaled(s), p) == normalize(p));
    }
}

TEST_CASE("squarefree part properties") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 120; ++i) {
        std::size_t dim = 1 + i % 3;
        auto p = testing::random_nonconstant(rng, dim, 3, 3);
        auto s = squarefree_part(p);
        REQUIRE(squarefree_part(p * p) == s);
        REQUIRE(try_divide(p, s));
    }
}

TEST_CASE("product factorization reconstructs the product") {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 60; ++i) {
        std::size_t dim = 2;
        auto f = testing::random_nonconstant(rng, dim, 2, 2);
        std::vector<Polynomial> ps;
        for (int j = 0; j < 3; ++j) {
            auto p = testing::random_poly(rng, dim, 2, 3) * f.pow(j);
            if (!p.is_zero()) ps.push_back(p);
        }
        if (ps.empty()) continue;
        std::vector<Polynomial> known{f, x(2, 1)};
        auto pf = product_factorization(ps, known);
        Polynomial prod = c(2, 1);
        for (const auto& p : ps) prod = prod * p;
        REQUIRE(pf.reconstruct() == prod);
    }
}
