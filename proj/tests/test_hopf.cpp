#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bifurc/hopf.hpp"

#include <random>

using namespace bifurc;

namespace {

// Equilibrium ratio R = Y2-/m at given full parameters (float path).
double branch_ratio(double m, double n, double eps, double k) {
    Params<double> p{m, n, eps, k};
    for (const auto& e : equilibria(p))
        if (e.kind == EqKind::E2minus) return e.y / m;
    throw std::runtime_error("no E2- at these parameters");
}

}  // namespace

TEST_CASE("jordan_reduce: Jordan block, vanishing constants, Eq-26 shape") {
    double m = 2, n = 5.0 / 11, R = 1727.0 / 1280;
    auto jr = jordan_reduce<double>(m, n, R, 5);
    double w = jr.omega;
    CHECK(w > 0);
    CHECK(jr.sys.linear_part[0][0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(jr.sys.linear_part[1][1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(jr.sys.linear_part[0][1] == doctest::Approx(w));
    CHECK(jr.sys.linear_part[1][0] == doctest::Approx(-w));
    CHECK(std::abs(jr.sys.residual()[0]) < 1e-14);
    CHECK(std::abs(jr.sys.residual()[1]) < 1e-14);

    // quadratic/cubic coefficients of the reduced system (rational functions
    // of n, R, omega): first equation
    double q1 = 1 - n * R, q2 = (n + 1) * R - 1, q3 = (n + 1) * (n + 1) * R - n;
    auto c = [&](const Jet<double>& f, int i, int j) { return f.coeff({i, j}); };
    double s = 1.0 / (m * (n + 1) * q1 * q2 * q2);
    CHECK(c(jr.sys.f1, 2, 0) == doctest::Approx(-s).epsilon(1e-12));
    CHECK(c(jr.sys.f1, 1, 1) == doctest::Approx(w * q3 / (m * (n + 1) * q1 * q2)).epsilon(1e-12));
    CHECK(c(jr.sys.f1, 3, 0) == doctest::Approx(-1.0 / (m * m * (n + 1) * q1 * q1 * q2 * q2)).epsilon(1e-12));
    CHECK(c(jr.sys.f1, 2, 1) == doctest::Approx(w / (m * m * (n + 1) * q1 * q1 * q2)).epsilon(1e-12));
    // no v^2, u v^2, v^3 terms survive the reduction
    CHECK(std::abs(c(jr.sys.f1, 0, 2)) < 1e-13);
    CHECK(std::abs(c(jr.sys.f1, 1, 2)) < 1e-13);
    CHECK(std::abs(c(jr.sys.f1, 0, 3)) < 1e-13);
    // second equation
    CHECK(c(jr.sys.f2, 2, 0) == doctest::Approx(-n / (m * (n + 1) * q1 * q2 * q2 * w)).epsilon(1e-12));
    CHECK(c(jr.sys.f2, 1, 1) == doctest::Approx(n * q3 / (m * (n + 1) * q1 * q2)).epsilon(1e-12));
    CHECK(c(jr.sys.f2, 3, 0) == doctest::Approx(-n / (m * m * (n + 1) * q1 * q1 * q2 * q2 * w)).epsilon(1e-12));
    CHECK(c(jr.sys.f2, 2, 1) == doctest::Approx(n / (m * m * (n + 1) * q1 * q1 * q2)).epsilon(1e-12));
    CHECK(std::abs(c(jr.sys.f2, 0, 2)) < 1e-13);

    // omega_c^2 = (n^2+n+1-n(n+1)^2 R)/((n+1)R - 1) > 0 inside the window
    CHECK(w * w == doctest::Approx((n * n + n + 1 - n * (n + 1) * (n + 1) * R) / ((n + 1) * R - 1)));

    // window guards
    CHECK_THROWS_AS(jordan_reduce<double>(m, n, window_R_upper(n), 5), DomainError);
    CHECK_THROWS_AS(jordan_reduce<double>(m, n, window_R_lower(n) - 0.01, 5), DomainError);
}

TEST_CASE("generic focus values reproduce the published simulation table") {
    struct Row {
        double m, n, eps, k, v1;
    };
    const Row rows[] = {
        {1.6, 0.30, 1.50, 0.25, -0.082227},
        {2.0, 0.25, 1.50, 0.15625, -0.038194},
        {1.5, 0.30, 1.55, 0.25, -0.135503},
        {11.07825, 0.4771, 0.995, 0.0295, +0.001773},
        {10.5, 0.4771, 0.43, 0.0509, -0.000831},
    };
    for (const auto& r : rows) {
        double R = branch_ratio(r.m, r.n, r.eps, r.k);
        auto fv = focus_values_generic(r.m, r.n, R, 1);
        CHECK(std::abs(fv.v[0] - r.v1) <= 1e-5);
        // generic matches the closed-form oracle far more tightly
        auto o = focus_values_oracle<double>(r.m, r.n, R);
        CHECK(fv.v[0] == doctest::Approx(o.v1).epsilon(1e-9));
    }
}

TEST_CASE("oracle closed forms: published exact values") {
    // n = 1/2, R = 23/18: v1 = 3240/(17303 m^2)
    auto o = focus_values_oracle<Rat>(Rat(1), Rat(1, 2), Rat(23, 18));
    CHECK(o.v1 == Rat(3240, 17303));
    auto o2 = focus_values_oracle<Rat>(Rat(2), Rat(1, 2), Rat(23, 18));
    CHECK(o2.v1 == Rat(3240, 17303) / 4);

    // m=2, n=5/11, R = 1727/1280: v1 = 0 and v2 = 46661632000/845676707337
    auto oc = focus_values_oracle<Rat>(Rat(2), Rat(5, 11), Rat(1727, 1280));
    CHECK(oc.v1 == 0);
    CHECK(oc.v2 == Rat(Int("46661632000"), Int("845676707337")));

    // R = R_-(n) makes v1a vanish identically
    for (int i = 1; i <= 6; ++i) {
        Rat n(i + 3, 24);  // spread through (0, 1/2)
        if (2 * n >= 1) continue;
        auto [rm, rp] = v1_roots(n);
        Surd val = v1a_poly<Surd>(Surd(n), rm);
        CHECK(val == Surd(0));
        Surd val2 = v1a_poly<Surd>(Surd(n), rp);
        CHECK(val2 == Surd(0));
    }
}

TEST_CASE("oracle equivalence: generic CNF matches closed forms on random windows") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> un(0.06, 0.94), um(0.5, 5.0), ur(0.05, 0.95);
    int accepted = 0;
    while (accepted < 100) {
        double n = un(rng), m = um(rng);
        double lo = window_R_lower(n), hi = window_R_upper(n);
        double R = lo + (hi - lo) * ur(rng);
        // keep away from degeneracies: omega not tiny, v1 not tiny
        if (omega_c_squared(n, R) < 0.05) continue;
        auto o = focus_values_oracle<double>(m, n, R);
        if (std::abs(o.v1a) < 1e-3) continue;
        auto fv = focus_values_generic(m, n, R, 2);
        ++accepted;
        CHECK(std::abs(fv.v[0] - o.v1) <= 1e-9 * std::max(1.0, std::abs(o.v1)));
        CHECK(std::abs(fv.v[1] - o.v2) <= 1e-7 * std::max(1.0, std::abs(o.v2)));
        // sign invariance: sign(v1) = sign(v1a) inside the window
        CHECK(o.v1 * o.v1a >= 0);
    }
}

TEST_CASE("v1 scales as 1/m^2 at fixed (n, R)") {
    Rat n(2, 5), R(13, 10);
    auto a = focus_values_oracle<Rat>(Rat(3, 2), n, R);
    auto b = focus_values_oracle<Rat>(Rat(3), n, R);
    CHECK(a.v1 == 4 * b.v1);
}

TEST_CASE("eps(R) is decreasing below R_min and increasing above") {
    double m = 2, n = 0.4;
    double Rmin = (2 * n * n + 4 * n + 1) / (2 * n * (n + 1) * (n + 1));
    double lo = window_R_lower(n), hi = window_R_upper(n);
    REQUIRE(lo < Rmin);
    REQUIRE(Rmin < hi);
    double h = 1e-6;
    for (double f : {0.25, 0.5, 0.75}) {
        double Rl = lo + (Rmin - lo) * f;
        CHECK(eps_of_R(m, n, Rl + h) < eps_of_R(m, n, Rl));
        double Rr = Rmin + (hi - Rmin) * f;
        CHECK(eps_of_R(m, n, Rr + h) > eps_of_R(m, n, Rr));
    }
}

TEST_CASE("classify_hopf: published eps* values and theorem tree") {
    auto hc1 = classify_hopf(11.07825, 0.4771, 0.995);
    REQUIRE(hc1.eps_star_val.has_value());
    CHECK(std::abs(*hc1.eps_star_val - 0.485004) <= 1e-6);
    CHECK(hc1.criticality == Criticality::Subcritical);

    auto hc2 = classify_hopf(10.5, 0.4771, 0.43);
    CHECK(std::abs(*hc2.eps_star_val - 0.511714) <= 1e-6);
    CHECK(hc2.criticality == Criticality::Supercritical);

    // n = 1/4: supercritical regardless of admissible eps
    auto hc3 = classify_hopf(2.0, 0.25, 1.5);
    CHECK(hc3.criticality == Criticality::Supercritical);

    // n >= 1/2: subcritical
    auto hc4 = classify_hopf(2.0, 0.75, 8.0);
    CHECK(hc4.criticality == Criticality::Subcritical);

    // no Hopf point: structured error
    CHECK_THROWS_AS(classify_hopf(2.0, 0.3, 0.1), StructuredError);

    // exactly on the degenerate locus: codimension 2
    auto loc = codim2_locus(Rat(2), Rat(5, 11));
    auto hcd = classify_hopf(2.0, 5.0 / 11, loc.eps_star.value());
    CHECK(hcd.criticality == Criticality::Degenerate);
    CHECK(hcd.codimension == 2);
    CHECK(hcd.cycle_bound == 2);
}

TEST_CASE("codim2 locus: exact values at (2, 5/11) and collapse as n -> 1/3") {
    auto loc = codim2_locus(Rat(2), Rat(5, 11));
    CHECK(loc.R_minus.is_rational());
    CHECK(loc.R_minus.rational_value() == Rat(1727, 1280));
    CHECK(loc.kH.rational_value() == Rat(1280, 5929));
    CHECK(loc.eps_star.rational_value() == Rat(320, 99));
    CHECK(loc.v2.rational_value() == Rat(Int("46661632000"), Int("845676707337")));
    CHECK(loc.case_label == CaseLabel::C2c_ii);

    // eps* route agreement: eps_of_R at R_- equals the closed form of eps*
    double es = eps_star(2.0, 5.0 / 11.0);
    CHECK(es == doctest::Approx(320.0 / 99).epsilon(1e-14));

    // window collapse: R_- -> R_* as n -> 1/3+
    for (Rat n : {Rat(341, 1000), Rat(3334, 10000)}) {
        auto [rm, rp] = v1_roots(n);
        double gap = rm.value() - window_R_lower(to_double(n));
        CHECK(gap > 0);
        CHECK(gap < 0.06);
    }
    auto [rm3, rp3] = v1_roots(Rat(1, 3));
    CHECK(rm3 == Surd(window_R_lower(Rat(1, 3))));  // equality exactly at n = 1/3

    CHECK_THROWS_AS(codim2_locus(Rat(2), Rat(1, 4)), DomainError);
    CHECK_THROWS_AS(codim2_locus(Rat(2), Rat(3, 5)), DomainError);
}

TEST_CASE("resultant elimination: only root in (0,1) is 1/2") {
    auto ce = codim3_elimination_check();
    CHECK(ce.half_is_root);
    CHECK(ce.roots_in_unit_interval == 1);
    CHECK(ce.R_bar_at_half == Rat(23, 18));
    CHECK(ce.v1_num_at_half == Rat(3240, 17303));
    // published factor divides the resultant exactly:
    // n (2n+1) (3n^2 - 11n + 11) (2n-1)
    Poly1<Rat> factor(std::vector<Rat>{0, 1});
    factor = factor * Poly1<Rat>(std::vector<Rat>{1, 2});
    factor = factor * Poly1<Rat>(std::vector<Rat>{11, -11, 3});
    factor = factor * Poly1<Rat>(std::vector<Rat>{-1, 2});
    auto q = exact_quotient(ce.res_n, factor);
    REQUIRE(q.has_value());
    // and the cofactor contributes no further roots in (0, 1)
    CHECK(sturm_roots_in(*q, Rat(0), Rat(1)) == 0);
}

TEST_CASE("predict_amplitudes") {
    // published two-cycle prediction
    double v0 = 4299.0 / 220000000;
    double v1 = -to_double(Rat(Int("216980684800000"), Int("83938145042658897")));
    double v2 = to_double(Rat(Int("14817759528898477514254458827898880000000"),
                              Int("200973840260810036901676626005378422866729")));
    auto r = predict_amplitudes(v0, v1, v2);
    REQUIRE(r.size() == 2);
    CHECK(std::abs(r[0] - 0.105015) <= 1e-6);
    CHECK(std::abs(r[1] - 0.155024) <= 1e-6);

    // v0 = 0, v1 < 0, v2 > 0: single positive root sqrt(-v1/v2)
    auto r2 = predict_amplitudes(0.0, -2.0, 8.0);
    REQUIRE(r2.size() == 1);
    CHECK(r2[0] == doctest::Approx(0.5));

    // all positive: no cycles
    CHECK(predict_amplitudes(1.0, 1.0, 1.0).empty());
    CHECK_THROWS_AS(predict_amplitudes(1.0, 1.0, 0.0), DomainError);
}

TEST_CASE("perturbed codim-2 point: exact v0 and the published (k, eps)") {
    // R = R_- + 1/100, k = kH(R) - 1/50000 reproduces the published rationals
    Rat n(5, 11), m(2);
    Rat R = Rat(1727, 1280) + Rat(1, 100);
    Rat k = hopf_k(n, m, R) - Rat(1, 50000);
    CHECK(k == Rat(Int("203821518599"), Int("924070050000")));
    Rat Y2 = m * R;
    Params<Rat> p{m, n, Rat(1), k};  // eps filled from the branch
    Rat eps = eps_on_branch(p, Y2, k);
    CHECK(eps == Rat(Int("3407490109063040"), Int("1096763591581219")));
    // v0 = trace/2 at the perturbed point, exactly
    Params<Rat> pfull{m, n, eps, k};
    auto e = make_equilibrium(pfull, m - n * Y2, Y2, EqKind::E2minus);
    CHECK(e.trace / 2 == Rat(4299, Int("220000000")));
}
