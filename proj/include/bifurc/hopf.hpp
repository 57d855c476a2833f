#pragma once

// Hopf machinery: Jordan reduction at the Hopf-critical point, a generic
// order-by-order complex normal-form solver for focus values, the closed-form
// focus-value oracles, criticality classification, the codimension-2 locus,
// amplitude prediction and the codimension elimination check.
//
// The branch is parametrized by R = Y2/m throughout (the equilibrium height
// relative to m); k and eps are recovered from R, which keeps every formula a
// rational function of (n, R) and avoids the radicals of the direct
// equilibrium solution.

#include "bifurc/model.hpp"
#include "bifurc/poly1.hpp"

namespace bifurc {

// --- complex scalar helpers -------------------------------------------------

inline double real_part(const Complex& z) { return z.real(); }
inline double imag_part(const Complex& z) { return z.imag(); }
inline Complex conj_of(const Complex& z) { return std::conj(z); }
inline Real50 real_part(const Complex50& z) { return z.real(); }
inline Real50 imag_part(const Complex50& z) { return z.imag(); }
inline Complex50 conj_of(const Complex50& z) { return conj(z); }

template <class K>
K real_sqrt(const K& x) {
    using std::sqrt;
    return sqrt(x);
}

// --- Hopf window geometry ----------------------------------------------------

template <class K>
K window_R_lower(const K& n) {  // R_*
    return (n + K(2)) / ((n + K(1)) * (n + K(1)));
}
template <class K>
K window_R_upper(const K& n) {  // 1/n - 1/(n+1)^2 (B-T boundary)
    return K(1) / n - K(1) / ((n + K(1)) * (n + K(1)));
}
template <class K>
K omega_c_squared(const K& n, const K& R) {
    K np1 = n + K(1);
    return (n * n + n + K(1) - n * np1 * np1 * R) / (np1 * R - K(1));
}
// eps on the Hopf-critical branch (k = hopf_k(R)).
template <class K>
K eps_of_R(const K& m, const K& n, const K& R) {
    K np1 = n + K(1);
    return K(1) / (m * (K(1) - R * n) * (R * np1 * np1 - (n + K(2))));
}

template <class K>
void check_hopf_window(const K& n, const K& R) {
    K lo = window_R_lower(n), hi = window_R_upper(n);
    if (!(n > K(0) && n < K(1)))
        throw DomainError("hopf: window requires 0 < n < 1");
    if (R == hi)
        throw DomainError("hopf: BT-candidate (R equals 1/n - 1/(n+1)^2, double-zero eigenvalue)");
    if (!(R > lo)) throw DomainError("hopf: R <= R_* = (n+2)/(n+1)^2 (trace condition fails)");
    if (!(R < hi)) throw DomainError("hopf: R >= 1/n - 1/(n+1)^2 (omega_c not real)");
}

// --- Jordan reduction --------------------------------------------------------

template <class K>
struct JordanReduced {
    PlanarJetSystem<K> sys;  // linear part [[0, w], [-w, 0]]
    K omega, kH, eps;
    std::array<K, 2> equilibrium;  // (X2, Y2) in model coordinates
};

// Reduce the model at the Hopf-critical point with equilibrium ratio R to
// Jordan real form via the affine transformation with columns
// (1, n q2 / ((n+1)(nR-1))) and (0, -w q2 / ((n+1)(nR-1))).
template <class K>
JordanReduced<K> jordan_reduce(const K& m, const K& n, const K& R, int degree = 7) {
    check_hopf_window(n, R);
    K w = real_sqrt(omega_c_squared(n, R));
    K kH = hopf_k(n, m, R);
    K eps = eps_of_R(m, n, R);
    Params<K> p{m, n, eps, kH};
    std::array<K, 2> e2{m * (K(1) - n * R), m * R};
    auto sys = expand_model(p, e2, degree);
    K q2 = (n + K(1)) * R - K(1);
    K denom = (n + K(1)) * (n * R - K(1));
    std::array<std::array<K, 2>, 2> M{{{K(1), K(0)}, {n * q2 / denom, -w * q2 / denom}}};
    auto js = transform_vector_field(sys, [&] {
        std::vector<Jet<K>> bind;
        Jet<K> u = Jet<K>::variable(sys.vars(), degree, size_t{0});
        Jet<K> v = Jet<K>::variable(sys.vars(), degree, size_t{1});
        bind.push_back(M[0][0] * u + M[0][1] * v);
        bind.push_back(M[1][0] * u + M[1][1] * v);
        return bind;
    }());
    JordanReduced<K> out{std::move(js), w, kH, eps, e2};
    return out;
}

// --- generic focus values (complex normal form) ------------------------------

enum class FocusSource { GenericNormalForm, ClosedFormOracle };

struct FocusValues {
    double omega_c = 0;
    std::vector<double> v;  // v[j-1] = v_j, j = 1..K
    FocusSource source = FocusSource::GenericNormalForm;
    int K = 0;
};

// Order-by-order complex normal form for a planar system whose linear part is
// [[0, w], [-w, 0]]: z = u + i v evolves as dz/dt = -i w z + ..., and the
// unremovable coefficients C_j of z^(j+1) zbar^j give v_j = Re C_j.
template <class R, class C>
std::vector<C> cnf_resonant_coefficients(const PlanarJetSystem<R>& sys, int order) {
    const int deg = sys.max_degree();
    if (deg < 2 * order + 1)
        throw StructuredError("cnf: jet degree too low for requested focus-value order");
    const R w = sys.linear_part[0][1];
    {
        double scale = std::abs(to_double(w));
        auto off = [&](R x) { return std::abs(to_double(x)) > 1e-9 * std::max(scale, 1.0); };
        if (off(sys.linear_part[0][0]) || off(sys.linear_part[1][1]) ||
            off(sys.linear_part[1][0] + w) || !(to_double(w) > 0))
            throw StructuredError("cnf: linear part is not the Jordan rotation block");
    }
    const VarList ZW{"z", "w"};
    auto zj = Jet<C>::variable(ZW, deg, size_t{0});
    auto wj = Jet<C>::variable(ZW, deg, size_t{1});
    const C half(R(1) / R(2)), mhalf_i = C(R(0), -R(1) / R(2));
    // u = (z + w)/2, v = -i (z - w)/2
    std::vector<Jet<C>> uv{half * (zj + wj), mhalf_i * (zj - wj)};
    auto lift = [&](const Jet<R>& f) {
        Jet<C> g(f.vars(), f.max_degree());
        for (const auto& [e, c] : f.terms()) g.set_coeff(e, C(c));
        return g.substitute(uv);
    };
    Jet<C> F = lift(sys.f1) + C(R(0), R(1)) * lift(sys.f2);  // dz/dt
    auto mirror = [&](const Jet<C>& f) {
        Jet<C> g(ZW, deg);
        for (const auto& [e, c] : f.terms()) g.set_coeff(Exp{e[1], e[0]}, conj_of(c));
        return g;
    };
    const C lambda = F.coeff({1, 0});  // -i w up to roundoff
    std::vector<C> resonant(order, C(R(0)));
    for (int d = 2; d <= deg; ++d) {
        Jet<C> Z = zj, W = wj;
        bool any = false;
        for (const auto& [e, a] : F.terms()) {
            int p = e[0], q = e[1];
            if (p + q != d) continue;
            if (p == q + 1) {
                if (q >= 1 && q <= order) resonant[q - 1] = a;
                continue;
            }
            C h = a / (lambda * C(R(p - q - 1)));
            Exp direct{static_cast<unsigned char>(p), static_cast<unsigned char>(q)};
            Exp swapped{static_cast<unsigned char>(q), static_cast<unsigned char>(p)};
            Z.set_coeff(direct, Z.coeff(direct) + h);
            W.set_coeff(swapped, W.coeff(swapped) + conj_of(h));
            any = true;
        }
        if (!any) continue;
        PlanarJetSystem<C> cs;
        cs.f1 = F;
        cs.f2 = mirror(F);
        auto t = transform_vector_field(cs, {Z, W});
        F = t.f1;
    }
    return resonant;
}

template <class R, class C>
FocusValues cnf_focus_values(const PlanarJetSystem<R>& sys, int order) {
    auto res = cnf_resonant_coefficients<R, C>(sys, order);
    FocusValues fv;
    fv.omega_c = to_double(sys.linear_part[0][1]);
    fv.K = order;
    fv.source = FocusSource::GenericNormalForm;
    for (const auto& c : res) fv.v.push_back(to_double(real_part(c)));
    return fv;
}

enum class Precision { Double, Extended };

// Focus values of the Hopf-critical system with equilibrium ratio R.
// In double precision; recomputed with 50-digit arithmetic when the first
// focus value is nearly degenerate (cancellation near the codim-2 locus).
FocusValues focus_values_generic(double m, double n, double R, int order = 3,
                                 Precision prec = Precision::Double);

inline FocusValues focus_values_generic_impl_double(double m, double n, double R, int order) {
    auto jr = jordan_reduce<double>(m, n, R, 2 * order + 1);
    return cnf_focus_values<double, Complex>(jr.sys, order);
}
inline FocusValues focus_values_generic_impl_extended(double m, double n, double R, int order) {
    auto jr = jordan_reduce<Real50>(Real50(m), Real50(n), Real50(R), 2 * order + 1);
    return cnf_focus_values<Real50, Complex50>(jr.sys, order);
}
inline FocusValues focus_values_generic(double m, double n, double R, int order, Precision prec) {
    if (prec == Precision::Extended) return focus_values_generic_impl_extended(m, n, R, order);
    auto fv = focus_values_generic_impl_double(m, n, R, order);
    if (!fv.v.empty() && std::abs(fv.v[0]) < 1e-6)
        return focus_values_generic_impl_extended(m, n, R, order);
    return fv;
}

// --- closed-form oracles ------------------------------------------------------

template <class K>
K v1a_poly(const K& n, const K& R) {
    K np1 = n + K(1);
    return n * np1 * np1 * np1 * np1 * R * R - K(2) * (n * n + n + K(1)) * np1 * np1 * R +
           (n * n * n + K(2) * n * n + K(5) * n + K(3));
}

template <class K>
K v2a_poly(const K& n, const K& R) {
    auto P = [&](std::initializer_list<long> cs) {
        K acc(0);
        for (long c : cs) acc = acc * n + K(static_cast<int>(c));
        return acc;
    };
    K np1 = n + K(1);
    auto np = [&](int k) {
        K r(1);
        for (int i = 0; i < k; ++i) r *= np1;
        return r;
    };
    K R1 = R, R2 = R * R, R3 = R2 * R, R4 = R2 * R2, R5 = R4 * R, R6 = R4 * R2, R7 = R6 * R;
    K acc(0);
    acc += n * n * n * np(12) * P({28, 27}) * R7;
    acc -= n * n * np(10) * P({196, 350, 267, 108}) * R6;
    acc += n * np(8) * P({588, 1533, 2101, 1683, 672, 135}) * R5;
    acc -= np(6) * P({980, 3360, 6500, 7711, 5620, 2567, 602, 54}) * R4;
    acc += np(4) * P({980, 4165, 10330, 16174, 16730, 11680, 5215, 1400, 169}) * R3;
    acc -= np(2) * P({588, 2982, 8995, 17466, 23190, 21409, 13397, 5563, 1443, 192}) * R2;
    acc += np1 * P({196, 959, 3138, 6349, 8961, 8410, 4886, 1470, 84, -36}) * R1;
    acc -= P({28, 132, 474, 979, 1470, 1291, 460, -334, -517, -189});
    return acc;
}

template <class K>
struct OracleFocusValues {
    K v1, v2;
    K v1a, v2a;  // sign-carrying numerators
};

template <class K>
OracleFocusValues<K> focus_values_oracle(const K& m, const K& n, const K& R) {
    check_hopf_window(n, R);
    K np1 = n + K(1);
    K q1 = K(1) - n * R, q2 = np1 * R - K(1), q3 = np1 * np1 * R - n;
    K tail = np1 - n * q3;
    K v1a = v1a_poly(n, R), v2a = v2a_poly(n, R);
    OracleFocusValues<K> out;
    out.v1a = v1a;
    out.v2a = v2a;
    out.v1 = v1a / (K(8) * m * m * np1 * q1 * q2 * q2 * q2 * tail);
    K q2_6 = q2 * q2;
    q2_6 = q2_6 * q2_6 * q2_6;
    out.v2 = -v2a / (K(192) * m * m * m * m * np1 * np1 * np1 * q1 * q1 * q1 * q2_6 * tail * tail * tail);
    return out;
}

// R_- and R_+ (zeros of v1a); exact in Q(sqrt((1-2n)(n+1))).
inline std::pair<Surd, Surd> v1_roots(const Rat& n) {
    if (!(n > 0 && 2 * n < 1)) throw DomainError("v1_roots: requires 0 < n < 1/2");
    Rat np1 = n + 1;
    Rat rad = (1 - 2 * n) * np1;
    Rat pref = 1 / (n * np1 * np1);
    Surd root = Surd::make(0, pref, rad);
    Surd center = Surd(pref * (n * n + n + 1));
    return {center - root, center + root};
}
inline std::pair<double, double> v1_roots(double n) {
    if (!(n > 0 && n < 0.5)) throw DomainError("v1_roots: requires 0 < n < 1/2");
    double np1 = n + 1;
    double s = std::sqrt((1 - 2 * n) * np1);
    double pref = 1 / (n * np1 * np1);
    return {pref * (n * n + n + 1 - s), pref * (n * n + n + 1 + s)};
}

// eps^* of the criticality theorem, n in (1/3, 1/2).
template <class K>
K eps_star(const K& m, const K& n) {
    K np1 = n + K(1);
    K rad = real_sqrt((K(1) + n) * (K(1) - K(2) * n));
    return n * np1 * np1 / (m * ((K(1) - K(2) * n) * rad + (n * n + K(2) * n - K(1))));
}

// --- criticality classification ----------------------------------------------

enum class Criticality { Supercritical, Subcritical, Degenerate };

struct HopfClassification {
    Criticality criticality;
    int codimension = 1;
    double R_minus = 0, R_plus = 0;       // zeros of v1a (defined for n < 1/2)
    std::optional<double> eps_star_val;   // defined for 1/3 < n < 1/2
    int cycle_bound = 1;
    std::vector<double> hopf_R;           // Hopf branch ratios admitted by (m, n, eps)
};

// Hopf R-values for given (m, n, eps): solutions of eps_of_R(R) = eps inside
// the admissible window.
inline std::vector<double> hopf_R_values(double m, double n, double eps) {
    // n(n+1)^2 R^2 - [(n+1)^2 + n(n+2)] R + (n+2) + 1/(m eps) = 0
    double np1 = n + 1;
    double a = n * np1 * np1, b = -(np1 * np1 + n * (n + 2)), c = (n + 2) + 1.0 / (m * eps);
    double disc = b * b - 4 * a * c;
    std::vector<double> out;
    if (disc < 0) return out;
    double s = std::sqrt(disc);
    for (double R : {(-b - s) / (2 * a), (-b + s) / (2 * a)}) {
        if (R > window_R_lower(n) && R < window_R_upper(n)) out.push_back(R);
    }
    return out;
}

inline HopfClassification classify_hopf(double m, double n, double eps) {
    if (!(n > 0 && n < 1)) throw StructuredError("classify_hopf: Hopf bifurcation requires 0 < n < 1");
    HopfClassification hc{Criticality::Supercritical, 1, 0, 0, std::nullopt, 1, {}};
    hc.hopf_R = hopf_R_values(m, n, eps);
    if (hc.hopf_R.empty())
        throw StructuredError("classify_hopf: no Hopf point on the branch for these (m, n, eps)");
    if (n < 0.5) {
        auto [rm, rp] = v1_roots(n);
        hc.R_minus = rm;
        hc.R_plus = rp;
    }
    if (n <= 1.0 / 3.0 + 1e-15) {
        hc.criticality = Criticality::Supercritical;
    } else if (n >= 0.5) {
        hc.criticality = Criticality::Subcritical;
    } else {
        double es = eps_star(m, n);
        hc.eps_star_val = es;
        double rel = (eps - es) / std::max(std::abs(es), 1e-300);
        if (std::abs(rel) <= 1e-9)
            hc.criticality = Criticality::Degenerate;
        else
            hc.criticality = rel < 0 ? Criticality::Supercritical : Criticality::Subcritical;
    }
    if (hc.criticality == Criticality::Degenerate) {
        auto o = focus_values_oracle<double>(m, n, hc.R_minus);
        if (o.v2 != 0) {
            hc.codimension = 2;
            hc.cycle_bound = 2;
        }
    }
    return hc;
}

// --- codimension-2 locus -------------------------------------------------------

template <class K>
struct Codim2Locus {
    K R_minus, kH, eps_star;
    K v2;  // v2 restricted to v1 = 0 (positive throughout the window)
    CaseLabel case_label;
};

// Exact (surd-field) generalized-Hopf locus for rational (m, n), 1/3 < n < 1/2.
inline Codim2Locus<Surd> codim2_locus(const Rat& m, const Rat& n) {
    if (!(3 * n > 1 && 2 * n < 1))
        throw DomainError("codim2_locus: two cycles require 1/3 < n < 1/2");
    auto [rm, rp] = v1_roots(n);
    (void)rp;
    Surd sm(m), sn(n);
    Codim2Locus<Surd> out{rm, hopf_k(sn, sm, rm), eps_of_R(sm, sn, rm), Surd(0), CaseLabel::Boundary};
    auto o = focus_values_oracle<Surd>(sm, sn, rm);
    if (!(o.v1 == Surd(0))) throw StructuredError("codim2_locus: v1 does not vanish at R_-");
    if (!(o.v2 > Surd(0))) throw StructuredError("codim2_locus: v2 not positive at the locus");
    out.v2 = o.v2;
    // case label at the critical parameters (float classification is enough
    // for the label; the locus itself is exact)
    Params<double> pd{to_double(m), to_double(n), out.eps_star.value(), out.kH.value()};
    out.case_label = classify_case(pd).label;
    return out;
}

// --- amplitude prediction -------------------------------------------------------

// Positive radii r solving v0 + v1 r^2 + v2 r^4 = 0, ascending.
inline std::vector<double> predict_amplitudes(double v0, double v1, double v2) {
    if (v2 == 0) throw DomainError("predict_amplitudes: v2 must be nonzero");
    double disc = v1 * v1 - 4 * v2 * v0;
    std::vector<double> out;
    if (disc < 0) return out;
    double s = std::sqrt(disc);
    // stable quadratic roots for rho = r^2
    double q = -(v1 + (v1 >= 0 ? s : -s)) / 2;
    double rho1 = q / v2, rho2 = (q != 0) ? v0 / q : 0.0;
    for (double rho : {rho1, rho2})
        if (rho > 0) out.push_back(std::sqrt(rho));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// --- codimension elimination (resultant of v1a, v2a in R) -----------------------

struct CodimElimination {
    Poly1<Rat> res_n;            // resultant polynomial in n (exact)
    int roots_in_unit_interval;  // distinct real roots in (0, 1)
    bool half_is_root;
    Rat R_bar_at_half;           // the eliminated R value at n = 1/2
    Rat v1_num_at_half;          // v1 * m^2 at (n, R) = (1/2, R_bar)
};

CodimElimination codim3_elimination_check();

}  // namespace bifurc
