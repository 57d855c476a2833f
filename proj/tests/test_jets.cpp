#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bifurc/vector_field.hpp"
#include "bifurc/model.hpp"

#include <random>

using namespace bifurc;

namespace {

const VarList XY{"x", "y"};

Jet<Rat> var(const VarList& v, int deg, const std::string& name) {
    return Jet<Rat>::variable(v, deg, name);
}
Jet<Rat> cst(const VarList& v, int deg, Rat c) { return Jet<Rat>::constant(v, deg, c); }

Jet<Rat> random_jet(std::mt19937& rng, const VarList& vars, int deg, double density = 0.5) {
    std::uniform_int_distribution<int> coeff(-9, 9);
    std::uniform_real_distribution<double> keep(0, 1);
    Jet<Rat> j(vars, deg);
    std::function<void(Exp&, size_t, int)> fill = [&](Exp& e, size_t i, int remaining) {
        if (i == vars.size()) {
            if (keep(rng) < density) {
                int c = coeff(rng);
                if (c != 0) j.set_coeff(e, Rat(c, 1 + std::abs(coeff(rng))));
            }
            return;
        }
        for (int d = 0; d <= remaining; ++d) {
            e[i] = static_cast<unsigned char>(d);
            fill(e, i + 1, remaining - d);
        }
        e[i] = 0;
    };
    Exp e(vars.size(), 0);
    fill(e, 0, deg);
    return j;
}

}  // namespace

TEST_CASE("addition: cancellation, identity, truncation") {
    auto x = var(XY, 2, "x"), y = var(XY, 2, "y");
    CHECK((x + y) + (x - y) == Rat(2) * x);

    std::mt19937 rng(7);
    auto p = random_jet(rng, XY, 3);
    CHECK(p + Jet<Rat>(XY, 3) == p);

    auto a = cst(XY, 2, 1) + x * x;   // 1 + x^2
    auto b = (x * x).truncated(1);    // degree-1 view
    auto s = a + b;                   // result degree = min = 1
    CHECK(s.max_degree() == 1);
    CHECK(s == cst(XY, 1, 1));
}

TEST_CASE("multiplication with truncation") {
    auto x = var(XY, 2, "x"), y = var(XY, 2, "y");
    auto one = cst(XY, 2, 1);
    CHECK((one + x) * (one - x) == one - x * x);

    auto x1 = var(XY, 1, "x"), y1 = var(XY, 1, "y");
    CHECK((x1 * y1).is_zero());

    auto sq = (x + y) * (x + y);
    CHECK(sq.coeff({2, 0}) == 1);
    CHECK(sq.coeff({1, 1}) == 2);
    CHECK(sq.coeff({0, 2}) == 1);
}

TEST_CASE("substitution") {
    VarList Y1{"y1"};
    auto x = var(XY, 2, "x"), y = var(XY, 2, "y");
    auto y1 = Jet<Rat>::variable(Y1, 2, size_t{0});

    // x -> y1 - y1^2 into x + x^2 at degree 2 gives back y1
    auto target = x + x * x;
    auto res = target.substitute({y1 - y1 * y1, Jet<Rat>(Y1, 2)});
    CHECK(res == y1);

    VarList U{"u"};
    auto u = Jet<Rat>::variable(U, 2, size_t{0});
    auto res2 = (x * x).substitute({Rat(2) * u, Jet<Rat>(U, 2)});
    CHECK(res2 == Rat(4) * u * u);

    // unbound variable is a structured error
    CHECK_THROWS_AS((x + y).substitute({y1}), StructuredError);
}

TEST_CASE("partial derivatives") {
    auto x = var(XY, 3, "x"), y = var(XY, 3, "y");
    auto p = x * x * y;
    auto dp = p.partial("x");
    CHECK(dp == (Rat(2) * x * y).truncated(2));
    CHECK(cst(XY, 3, 5).partial("x").is_zero());
    CHECK_THROWS_AS(p.partial("z"), StructuredError);
}

TEST_CASE("ring axioms hold exactly in rational mode") {
    std::mt19937 rng(42);
    const VarList V{"x", "y", "z"};
    for (int trial = 0; trial < 40; ++trial) {
        auto a = random_jet(rng, V, 4, 0.35);
        auto b = random_jet(rng, V, 4, 0.35);
        auto c = random_jet(rng, V, 4, 0.35);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("ring axioms hold to 1e-12 relative in float mode") {
    std::mt19937 rng(43);
    const VarList V{"x", "y"};
    for (int trial = 0; trial < 20; ++trial) {
        auto a = to_float(random_jet(rng, V, 5, 0.6));
        auto b = to_float(random_jet(rng, V, 5, 0.6));
        auto c = to_float(random_jet(rng, V, 5, 0.6));
        auto lhs = (a * b) * c, rhs = a * (b * c);
        double scale = 0;
        for (auto& [e, v] : lhs.terms()) scale = std::max(scale, std::abs(v));
        auto diff = lhs - rhs;
        for (auto& [e, v] : diff.terms()) CHECK(std::abs(v) <= 1e-12 * std::max(scale, 1.0));
    }
}

TEST_CASE("composition associativity (rational, exact)") {
    std::mt19937 rng(11);
    const VarList A{"x", "y"}, B{"s", "t"}, C{"p", "q"};
    for (int trial = 0; trial < 12; ++trial) {
        auto f = random_jet(rng, A, 3, 0.5);
        std::vector<Jet<Rat>> sigma{random_jet(rng, B, 3, 0.5), random_jet(rng, B, 3, 0.5)};
        std::vector<Jet<Rat>> tau{random_jet(rng, C, 3, 0.5), random_jet(rng, C, 3, 0.5)};
        // drop constant terms so composition is degree-stable under truncation
        Exp z(2, 0);
        for (auto* j : {&sigma[0], &sigma[1], &tau[0], &tau[1]}) j->set_coeff(z, 0);
        auto lhs = f.substitute(sigma).substitute(tau);
        std::vector<Jet<Rat>> sigma_tau{sigma[0].substitute(tau), sigma[1].substitute(tau)};
        auto rhs = f.substitute(sigma_tau);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("truncation commutes with arithmetic") {
    std::mt19937 rng(99);
    const VarList V{"x", "y"};
    for (int trial = 0; trial < 12; ++trial) {
        auto a = random_jet(rng, V, 6, 0.5);
        auto b = random_jet(rng, V, 6, 0.5);
        for (int d = 0; d <= 4; ++d) {
            CHECK((a * b).truncated(d) == (a.truncated(d) * b.truncated(d)).truncated(d));
            CHECK((a + b).truncated(d) == a.truncated(d) + b.truncated(d));
        }
    }
}

TEST_CASE("variable-set mismatch is a structured error") {
    auto x = var(XY, 2, "x");
    auto u = Jet<Rat>::variable({"u", "v"}, 2, size_t{0});
    CHECK_THROWS_AS(x + u, StructuredError);
    CHECK_THROWS_AS(x * u, StructuredError);
}

TEST_CASE("taylor_expand: linear system reproduces its matrix") {
    auto rhs = [](const Jet<Rat>& X, const Jet<Rat>& Y) {
        return std::pair{Rat(2) * X + Rat(3) * Y, Rat(-1) * X + Rat(5) * Y};
    };
    auto sys = taylor_expand<Rat>(rhs, {Rat(0), Rat(0)}, 3);
    CHECK(sys.linear_part[0][0] == 2);
    CHECK(sys.linear_part[0][1] == 3);
    CHECK(sys.linear_part[1][0] == -1);
    CHECK(sys.linear_part[1][1] == 5);
    CHECK(sys.residual()[0] == 0);
    CHECK(sys.f1.coeff({2, 0}) == 0);
}

TEST_CASE("taylor_expand: epidemic model at E1 is triangular with known eigenvalues") {
    Params<Rat> p{Rat(2), Rat(1, 3), Rat(5, 4), Rat(21, 100)};
    auto sys = expand_model(p, {Rat(0), p.m / p.n}, 3);
    CHECK(sys.residual()[0] == 0);
    CHECK(sys.residual()[1] == 0);
    CHECK(sys.linear_part[0][1] == 0);  // triangular
    CHECK(sys.linear_part[0][0] == p.k * p.m / p.n - (p.n + 1));
    CHECK(sys.linear_part[1][1] == -p.n);
    // exactness: the model is cubic, so degree-3 expansion has zero residual
    // against a direct evaluation at a displaced point
    Rat du(1, 7), dv(-1, 9);
    auto [f1, f2] = model_rhs<Rat>(p, Rat(0) + du, p.m / p.n + dv);
    CHECK(sys.f1.eval({du, dv}) == f1);
    CHECK(sys.f2.eval({du, dv}) == f2);
}

TEST_CASE("jet_reciprocal and linear_pullback") {
    auto x = var(XY, 4, "x"), y = var(XY, 4, "y");
    auto s = cst(XY, 4, 2) + x + Rat(3) * y * y;
    auto r = jet_reciprocal(s);
    auto prod = s * r;
    CHECK(prod == cst(XY, 4, 1));

    // pull a rotation-like linear field through a scaling
    auto rhs = [](const Jet<Rat>& X, const Jet<Rat>& Y) { return std::pair{Y, -X}; };
    auto sys = taylor_expand<Rat>(rhs, {Rat(0), Rat(0)}, 2);
    std::array<std::array<Rat, 2>, 2> M{{{Rat(2), Rat(0)}, {Rat(0), Rat(1)}}};
    auto tr = linear_pullback(sys, M);
    CHECK(tr.linear_part[0][1] == Rat(1, 2));
    CHECK(tr.linear_part[1][0] == -2);
}
