#include "doctest.h"
#include "formula_gen.hpp"
#include "semialg/formula_json.hpp"

using namespace semialg;
using semialg::testing::c;
using semialg::testing::x;

namespace {

Point pt(std::initializer_list<Rational> v) { return Point(v); }

}  // namespace

TEST_CASE("SignSet") {
    SignSet s{0, 1};
    CHECK(s == SignSet::nonnegative());
    CHECK(s.contains(0));
    CHECK_FALSE(s.contains(-1));
    CHECK(s.flipped() == SignSet({-1, 0}));
    CHECK(SignSet::all().flipped() == SignSet::all());
    CHECK(s.to_string() == "{0, 1}");
    CHECK_THROWS(SignSet({}));
    CHECK_THROWS(SignSet({2}));
}

TEST_CASE("Saturn membership") {
    auto rep = parse_formula("(1 - x1^2 - x2^2)*x2^2 >= 0");
    CHECK(rep.dimension == 2);
    CHECK(rep.polys.size() == 1);
    CHECK(rep.kind == RepKind::ElementaryClosed);
    CHECK(eval_formula(rep, pt({0, Rational(1, 2)})));
    CHECK_FALSE(eval_formula(rep, pt({2, 1})));
    CHECK(eval_formula(rep, pt({5, 0})));  // the ring on the axis
    CHECK_THROWS_AS(eval_formula(rep, pt({0})), DimensionMismatch);
    CHECK(print_formula(rep) == "(1 - x1^2 - x2^2)*x2^2 >= 0");
}

TEST_CASE("formula True and False") {
    auto t = parse_formula("true", 3);
    CHECK(eval_formula(t, pt({1, 2, 3})));
    auto f = parse_formula("false", 2);
    CHECK_FALSE(eval_formula(f, pt({0, 0})));
}

TEST_CASE("GeneralSemialg parse") {
    auto rep = parse_formula("x2 > 0 & ((x1-1)^2 + x2^2 <= 1 | x1^2 + x2^2 <= 1)");
    CHECK(rep.dimension == 2);
    CHECK(rep.polys.size() == 3);
    CHECK(rep.kind == RepKind::General);
    auto x1 = x(2, 1), x2 = x(2, 2);
    CHECK(rep.polys[0] == x2);
    CHECK(rep.polys[1] == c(2, 2) * x1 - x1 * x1 - x2 * x2);
    CHECK(rep.polys[2] == c(2, 1) - x1 * x1 - x2 * x2);
    CHECK(eval_formula(rep, pt({1, Rational(1, 2)})));
    CHECK(eval_formula(rep, pt({Rational(-1, 2), Rational(1, 2)})));
    CHECK_FALSE(eval_formula(rep, pt({1, 0})));
    CHECK_FALSE(eval_formula(rep, pt({1, -1})));
    auto again = parse_formula(print_formula(rep), 2);
    CHECK(again == rep);
}

TEST_CASE("elementary constructors") {
    auto x1 = x(2, 1), x2 = x(2, 2);
    std::vector<Polynomial> square{x1, x2, c(2, 1) - x1, c(2, 1) - x2};
    auto rep = elementary_closed(square);
    CHECK(rep.kind == RepKind::ElementaryClosed);
    // oracle: direct inequalities on a rational grid
    for (int i = -4; i <= 12; ++i)
        for (int j = -4; j <= 12; ++j) {
            Rational a(i, 8), b(j, 8);
            bool inside = a >= 0 && b >= 0 && a <= 1 && b <= 1;
            CHECK(eval_formula(rep, pt({a, b})) == inside);
        }
    CHECK(print_formula(elementary_closed(std::vector<Polynomial>{x1})) == "x1 >= 0");
    CHECK(print_formula(rep) == "(x1 >= 0 & x2 >= 0 & 1 - x1 >= 0 & 1 - x2 >= 0)");

    auto open = elementary_open(std::vector<Polynomial>{x2});
    CHECK(open.kind == RepKind::ElementaryOpen);
    CHECK_FALSE(eval_formula(open, pt({0, 0})));
    CHECK(eval_formula(open, pt({0, Rational(1, 100)})));

    auto y2 = x(3, 2), y3 = x(3, 3);
    auto handle = algebraic(std::vector<Polynomial>{y2, y3});
    CHECK(handle.kind == RepKind::Algebraic);
    CHECK(eval_formula(handle, pt({-7, 0, 0})));
    CHECK_FALSE(eval_formula(handle, pt({0, 0, Rational(1, 3)})));

    CHECK_THROWS(elementary_closed(std::vector<Polynomial>{}));
    CHECK_THROWS(elementary_closed(std::vector<Polynomial>{x1, -x1}));
    CHECK_THROWS_AS(elementary_closed(std::vector<Polynomial>{x1, x(3, 1)}), DimensionMismatch);
    CHECK_THROWS(elementary_closed(std::vector<Polynomial>{x1, c(2, 0)}));
}

TEST_CASE("elementary constructors match direct definitions") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Polynomial> ps;
        int m = std::uniform_int_distribution<int>(1, 3)(rng);
        for (int i = 0; i < m; ++i) ps.push_back(semialg::testing::random_nonconstant(rng, 2, 3, 3));
        std::optional<Representation> closed, open, alg;
        try {
            closed = elementary_closed(ps);
            open = elementary_open(ps);
            alg = algebraic(ps);
        } catch (const std::invalid_argument&) {
            continue;  // p and -p both present
        }
        for (int k = 0; k < 10; ++k) {
            auto p = semialg::testing::random_point(rng, 2);
            bool ge = true, gt = true, eq = true;
            for (const auto& q : ps) {
                int s = sign(q.eval(p));
                ge = ge && s >= 0;
                gt = gt && s > 0;
                eq = eq && s == 0;
            }
            CHECK(eval_formula(*closed, p) == ge);
            CHECK(eval_formula(*open, p) == gt);
            CHECK(eval_formula(*alg, p) == eq);
        }
    }
}

TEST_CASE("deduplication by normalized equality") {
    auto rep = parse_formula("2*x1 >= 0 & x1 >= 0 & -3*x1 > 0");
    CHECK(rep.polys.size() == 1);
    CHECK(rep.polys[0] == c(1, 2) * x(1, 1));
    auto atoms = rep.formula.atoms();
    REQUIRE(atoms.size() == 3);
    CHECK(atoms[2].signs == SignSet({-1}));
    CHECK(rep.kind == RepKind::General);
    CHECK(parse_formula(print_formula(rep), 1) == rep);
}

TEST_CASE("comparators normalize") {
    auto x1 = x(1, 1);
    auto a = parse_formula("x1 <= 2");
    CHECK(a.polys[0] == c(1, 2) - x1);
    CHECK(a.formula.atom().signs == SignSet::nonnegative());
    auto b = parse_formula("0 < x1");
    CHECK(b.polys[0] == x1);
    CHECK(b.formula.atom().signs == SignSet::positive());
    auto e = parse_formula("x1^2 = 1/4");
    CHECK(e.polys[0] == x1 * x1 - c(1, Rational(1, 4)));
    CHECK(e.kind == RepKind::Algebraic);
    CHECK(parse_formula("x1 >= 010").polys[0] == x1 - c(1, 10));
    CHECK(parse_formula("x1 >= 09/03").polys[0] == x1 - c(1, 3));
    CHECK(parse_rational("010/07") == Rational(10, 7));
    auto s = parse_formula("sign(x1 - 1) in {-1, 1}");
    CHECK(s.formula.atom().signs == SignSet({-1, 1}));
    CHECK(print_formula(s) == "sign(-1 + x1) in {-1, 1}");
}

TEST_CASE("variables and dimension") {
    auto rep = parse_formula("x{12} + x3 >= 0");
    CHECK(rep.dimension == 12);
    CHECK(print_formula(rep) == "x3 + x{12} >= 0");
    CHECK(parse_formula("x1 >= 0", 4).dimension == 4);
    CHECK_THROWS_AS(parse_formula("x3 >= 0", 2), ParseError);
    CHECK(parse_formula("1 >= 0").dimension == 1);
}

TEST_CASE("parse errors carry positions") {
    struct Case {
        const char* text;
        std::size_t pos;
    };
    for (auto [text, pos] : {Case{"x1 >= ", 6}, Case{"x10 > 0", 0}, Case{"x0 > 0", 0}, Case{"x1 >= 0 &", 9},
                             Case{"x1 ? 0", 3}, Case{"(x1 >= 0", 8}, Case{"x1 - x1 >= 0", 0}, Case{"x1", 2},
                             Case{"x1 >= 0 x2", 8}, Case{"sign(x1) in {2}", 13}, Case{"x1^300 > 0", 3},
                             Case{"1/0 > x1", 2}, Case{"foo > 0", 0}, Case{"x{5} > 0", 0}}) {
        CAPTURE(text);
        try {
            parse_formula(text);
            FAIL("accepted");
        } catch (const ParseError& e) {
            CHECK(e.position() == pos);
        }
    }
    std::string deep(500, '(');
    CHECK_THROWS_AS(parse_formula(deep + "x1 >= 0" + std::string(500, ')')), ParseError);
    CHECK_THROWS_AS(parse_formula("(x1+x2+x3+x4+x5+x6+x7+x8+x9+1)^200 > 0"), ParseError);
}

TEST_CASE("line_column") {
    CHECK(line_column("ab\ncd", 4) == std::pair<std::size_t, std::size_t>{2, 2});
}

TEST_CASE("nested parentheses") {
    auto a = parse_formula("((x1 >= 0))");
    CHECK(a.formula.op() == Formula::Op::Atom);
    auto b = parse_formula("((x1) + 1)*(x2) >= 0 & !(x2 = 0)");
    CHECK(b.formula.op() == Formula::Op::And);
    CHECK(print_formula(b) == "((1 + x1)*x2 >= 0 & !(x2 = 0))");
    auto d = parse_formula("!!(x1 > 0)");
    CHECK(print_formula(d) == "!!(x1 > 0)");
}

TEST_CASE("semantics compositionality") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        auto rep = semialg::testing::random_representation(rng, 2, 3);
        for (int k = 0; k < 5; ++k) {
            auto p = semialg::testing::random_point(rng, 2);
            auto s = signs_at(rep, p);
            const Formula& f = rep.formula;
            bool v = eval_formula(rep, p);
            switch (f.op()) {
            case Formula::Op::And: {
                bool all = true;
                for (const auto& ch : f.children()) all = all && ch.eval(s);
                CHECK(v == all);
                break;
            }
            case Formula::Op::Or: {
                bool any = false;
                for (const auto& ch : f.children()) any = any || ch.eval(s);
                CHECK(v == any);
                break;
            }
            case Formula::Op::Not: CHECK(v == !f.children().front().eval(s)); break;
            default: break;
            }
            CHECK(Formula::negation(f).eval(s) == !v);
        }
    }
}

TEST_CASE("round trip of random formulas") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t dim = 1 + trial % 4;
        auto rep = semialg::testing::random_representation(rng, dim, 3);
        std::string text = print_formula(rep);
        CAPTURE(text);
        auto back = parse_formula(text, dim);
        REQUIRE(back == rep);
        CHECK(print_formula(back) == text);
    }
}

TEST_CASE("random bytes never crash") {
    std::mt19937_64 rng(99);
    const std::string alphabet = "x1234567890{}()+-*/^<>=&|! ,signtrufalse";
    for (int trial = 0; trial < 20000; ++trial) {
        std::size_t len = rng() % 30;
        std::string s;
        for (std::size_t i = 0; i < len; ++i)
            s += trial % 2 ? static_cast<char>(rng() & 0xff) : alphabet[rng() % alphabet.size()];
        try {
            parse_formula(s);
        } catch (const ParseError& e) {
            CHECK(e.position() <= s.size());
        }
    }
}

TEST_CASE("JSON round trip") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        auto rep = semialg::testing::random_representation(rng, 3, 3);
        auto j = to_json(rep);
        auto back = representation_from_json(nlohmann::json::parse(j.dump()));
        CHECK(back == rep);
    }
    auto saturn = parse_formula("(1 - x1^2 - x2^2)*x2^2 >= 0");
    auto j = to_json(saturn);
    CHECK(j["kind"] == "elementary-closed");
    CHECK(j["formula"]["op"] == "atom");
    CHECK(j["polys"][0][0]["num"] == "-1");
    CHECK_THROWS(representation_from_json(nlohmann::json::parse(R"({"dimension":1,"polys":[],"formula":{"op":"atom","poly":0,"signs":[1]}})")));
    CHECK_THROWS(representation_from_json(nlohmann::json::parse(R"({"dimension":1,"polys":[[{"exp":[1],"num":"1","den":"0"}]],"formula":{"op":"true"}})")));
}
