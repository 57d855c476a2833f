#pragma once

// The planar SI epidemic system
//
//   dX/dt = X [ k (1 + eps X)(Y - X) - (n + 1) ],
//   dY/dt = m - n Y - X,
//
// with positive parameters (m, n, eps, k): equilibria, bifurcation
// thresholds, Jacobians, and the case classifier for the stability /
// Hopf-inventory partition of parameter space.
//
// Note on published formulas: the closed forms for trace/det of the Jacobian
// at the infectious equilibrium circulate with a sign flipped on the trace
// and an extra factor m on the determinant.  This module computes both
// directly from the Jacobian; the *_published helpers expose the printed
// rational functions so the relation (trace_pub = -trace, det_pub = m*det)
// stays pinned by tests.

#include "bifurc/vector_field.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bifurc {

template <class K>
struct Params {
    K m, n, eps, k;

    void validate() const {
        if (!(m > K(0) && n > K(0) && eps > K(0) && k > K(0)))
            throw DomainError("params: m, n, eps, k must all be positive");
    }
};

// a + b*sqrt(rad); exact pieces kept so rational-mode callers can test
// published surd decompositions, perfect-square radicands collapse to K.
template <class K>
struct QuadExt {
    K a{}, b{}, rad{};

    double value() const {
        return to_double(a) + to_double(b) * std::sqrt(to_double(rad));
    }
    bool is_rational() const;
    K rational_value() const;
};

inline bool rat_sqrt(const Rat& x, Rat& out) { return Surd::sqrt_exact(x, out); }

template <>
inline bool QuadExt<Rat>::is_rational() const {
    Rat s;
    return b == 0 || rat_sqrt(rad, s);
}
template <>
inline Rat QuadExt<Rat>::rational_value() const {
    if (b == 0) return a;
    Rat s;
    if (!rat_sqrt(rad, s)) throw StructuredError("QuadExt: radicand is not a perfect square");
    return a + b * s;
}
template <>
inline bool QuadExt<double>::is_rational() const { return true; }
template <>
inline double QuadExt<double>::rational_value() const { return value(); }

template <class K>
struct Thresholds {
    K eps1, eps2, eps3, eps4;               // eps3 defined for n < 1
    std::optional<K> eps_minus, eps_plus;   // only for n <= 1/3
    K kT, kSN, kStar;
    std::optional<QuadExt<K>> kHminus, kHplus;  // only when eps >= eps2
    K Y2L, Y2U, Y2SN, Y2T;
    K R0;
};

enum class EqKind { E1, E2plus, E2minus };
enum class LinearClass {
    StableNode,
    StableFocus,
    UnstableNode,
    UnstableFocus,
    Saddle,
    CenterCandidate,
    BTCandidate
};

template <class K>
struct Equilibrium {
    K x, y;
    EqKind kind;
    LinearClass linear_class;
    K trace, det;
};

inline const char* to_string(EqKind k) {
    switch (k) {
        case EqKind::E1: return "E1";
        case EqKind::E2plus: return "E2+";
        case EqKind::E2minus: return "E2-";
    }
    return "?";
}
inline const char* to_string(LinearClass c) {
    switch (c) {
        case LinearClass::StableNode: return "stable node";
        case LinearClass::StableFocus: return "stable focus";
        case LinearClass::UnstableNode: return "unstable node";
        case LinearClass::UnstableFocus: return "unstable focus";
        case LinearClass::Saddle: return "saddle";
        case LinearClass::CenterCandidate: return "center-candidate";
        case LinearClass::BTCandidate: return "BT-candidate";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Right-hand side, callable on scalars or jets.

template <class T, class K>
std::pair<T, T> model_rhs(const Params<K>& p, const T& X, const T& Y) {
    T one_plus = X * p.eps + K(1);
    T f1 = X * (one_plus * (Y - X) * p.k - K(p.n + K(1)));
    T f2 = (-p.n) * Y - X + K(p.m);
    return {f1, f2};
}

// Jet overload (jet scalars multiply from the K side).
template <class K>
std::pair<Jet<K>, Jet<K>> model_rhs_jets(const Params<K>& p, const Jet<K>& X, const Jet<K>& Y) {
    Jet<K> one = Jet<K>::constant(X.vars(), X.max_degree(), K(1));
    Jet<K> f1 = X * ((one + p.eps * X) * (Y - X) * p.k - Jet<K>::constant(X.vars(), X.max_degree(), p.n + K(1)));
    Jet<K> f2 = Jet<K>::constant(X.vars(), X.max_degree(), p.m) - p.n * Y - X;
    return {f1, f2};
}

template <class K>
PlanarJetSystem<K> expand_model(const Params<K>& p, std::array<K, 2> point, int degree,
                                VarList vars = {"u", "v"}) {
    return taylor_expand<K>([&](const Jet<K>& X, const Jet<K>& Y) { return model_rhs_jets(p, X, Y); },
                            point, degree, vars);
}

// ---------------------------------------------------------------------------
// Thresholds

template <class K>
Thresholds<K> thresholds(const Params<K>& p) {
    p.validate();
    const K &m = p.m, &n = p.n, &eps = p.eps;
    Thresholds<K> t;
    K np1 = n + K(1);
    t.eps1 = np1 / m;
    t.eps2 = K(4) * n * np1 * np1 / m;
    t.eps4 = np1 * np1 / (m * n);
    t.eps3 = (n < K(1)) ? np1 * np1 / (m * (K(1) - n)) : K(0);
    if (K(3) * n <= K(1)) {
        // eps_pm = (n+1)/(2nm) [ n+1 ± sqrt((n+1)(1-3n)) ]
        K rad = np1 * (K(1) - K(3) * n);
        if constexpr (scalar_traits<K>::exact) {
            Rat s;
            if (rat_sqrt(rad, s)) {
                t.eps_minus = np1 / (K(2) * n * m) * (np1 - s);
                t.eps_plus = np1 / (K(2) * n * m) * (np1 + s);
            }
        } else {
            K s = std::sqrt(to_double(rad));
            t.eps_minus = np1 / (K(2) * n * m) * (np1 - s);
            t.eps_plus = np1 / (K(2) * n * m) * (np1 + s);
        }
    }
    t.kT = n * t.eps1;
    K se1 = eps + t.eps1;
    t.kSN = eps * t.eps2 / (m * se1 * se1);
    t.kStar = K(2) * n * eps * t.eps1 * t.eps4 / (se1 * (eps + t.eps4));
    if (eps >= t.eps2) {
        QuadExt<K> q;
        K den = K(2) * m * se1 * se1;
        q.a = eps * (n * (eps + t.eps4) + t.eps2) / den;
        q.b = n * (t.eps4 - eps) / den;
        q.rad = eps * (eps - t.eps2);
        QuadExt<K> qm{q.a, -q.b, q.rad};
        t.kHminus = qm;
        t.kHplus = q;
    }
    t.Y2L = m / np1;
    t.Y2U = m / n + K(1) / (eps * n);
    t.Y2SN = m * (K(2) * n + K(1)) / (K(2) * n * np1) + K(1) / (K(2) * n * eps);
    t.Y2T = m / n;
    t.R0 = p.k / t.kT;
    return t;
}

// ---------------------------------------------------------------------------
// Jacobian and linear classification

template <class K>
std::array<std::array<K, 2>, 2> jacobian(const Params<K>& p, K X, K Y) {
    std::array<std::array<K, 2>, 2> J;
    J[0][0] = p.k * (Y - K(2) * X + p.eps * X * (K(2) * Y - K(3) * X)) - (p.n + K(1));
    J[0][1] = p.k * X * (K(1) + p.eps * X);
    J[1][0] = K(-1);
    J[1][1] = -p.n;
    return J;
}

// Published closed forms at E2 (see header note): trace_pub = -trace,
// det_pub = m * det.
template <class K>
K trace_published(const Params<K>& p, K Y2) {
    K a = (p.n + K(1)) * Y2 - p.m;
    return (p.k * a * a + p.m * (p.n + K(2)) - (p.n + K(1)) * (p.n + K(1)) * Y2) / a;
}
template <class K>
K det_published(const Params<K>& p, K Y2) {
    K np1 = p.n + K(1);
    K a = np1 * Y2 - p.m;
    K b = p.n * Y2 - p.m;
    K kT = p.n * np1 / p.m;
    return (np1 * np1 * np1 * b * b + p.m * p.n * (p.k - kT) * a * a) / a;
}

template <class K>
LinearClass classify_linear(K trace, K det, double scale = 1.0) {
    auto near_zero = [&](const K& x) {
        if constexpr (scalar_traits<K>::exact)
            return x == K(0);
        else
            return std::abs(to_double(x)) <= 1e-10 * std::max(1.0, scale);
    };
    if (near_zero(det)) return near_zero(trace) ? LinearClass::BTCandidate : LinearClass::Saddle;
    if (det < K(0)) return LinearClass::Saddle;
    if (near_zero(trace)) return LinearClass::CenterCandidate;
    K disc = trace * trace - K(4) * det;
    if (trace < K(0)) return disc < K(0) ? LinearClass::StableFocus : LinearClass::StableNode;
    return disc < K(0) ? LinearClass::UnstableFocus : LinearClass::UnstableNode;
}

template <class K>
Equilibrium<K> make_equilibrium(const Params<K>& p, K X, K Y, EqKind kind) {
    auto J = jacobian(p, X, Y);
    Equilibrium<K> e;
    e.x = X;
    e.y = Y;
    e.kind = kind;
    e.trace = J[0][0] + J[1][1];
    e.det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
    e.linear_class = classify_linear(e.trace, e.det, std::abs(to_double(e.det)) + 1.0);
    return e;
}

// ---------------------------------------------------------------------------
// Equilibria (Lemma-level existence rules; X2 < 0 solutions dropped)

inline Params<Surd> params_surd(const Params<Rat>& p) {
    return {Surd(p.m), Surd(p.n), Surd(p.eps), Surd(p.k)};
}

// Float path.
inline std::vector<Equilibrium<double>> equilibria(const Params<double>& p) {
    p.validate();
    auto t = thresholds(p);
    std::vector<Equilibrium<double>> out;
    out.push_back(make_equilibrium(p, 0.0, p.m / p.n, EqKind::E1));
    // F2(Y) = 1 + k eps n (Y - Y2L)(Y - Y2U); roots in (Y2L, Y2U) iff disc >= 0.
    double half = (t.Y2L + t.Y2U) / 2;
    double disc = half * half - t.Y2L * t.Y2U - 1.0 / (p.k * p.eps * p.n);
    if (disc < 0) return out;
    double sq = std::sqrt(disc);
    if (half - sq <= t.Y2T)
        out.push_back(make_equilibrium(p, p.m - p.n * (half - sq), half - sq, EqKind::E2minus));
    if (half + sq <= t.Y2T)
        out.push_back(make_equilibrium(p, p.m - p.n * (half + sq), half + sq, EqKind::E2plus));
    return out;
}

// Rational path: exact over Q(sqrt(disc)); coordinates collapse to rationals
// when the discriminant is a perfect square.
inline std::vector<Equilibrium<Surd>> equilibria(const Params<Rat>& p) {
    p.validate();
    auto t = thresholds(p);
    auto ps = params_surd(p);
    std::vector<Equilibrium<Surd>> out;
    out.push_back(make_equilibrium(ps, Surd(0), Surd(p.m / p.n), EqKind::E1));
    Rat half = (t.Y2L + t.Y2U) / 2;
    Rat disc = half * half - t.Y2L * t.Y2U - 1 / (p.k * p.eps * p.n);
    if (disc < 0) return out;
    Surd sq = Surd::make(0, 1, disc);
    Surd Ym = Surd(half) - sq, Yp = Surd(half) + sq;
    Surd Y2T(t.Y2T);
    if (Ym <= Y2T) out.push_back(make_equilibrium(ps, Surd(p.m) - Surd(p.n) * Ym, Ym, EqKind::E2minus));
    if (Yp <= Y2T) out.push_back(make_equilibrium(ps, Surd(p.m) - Surd(p.n) * Yp, Yp, EqKind::E2plus));
    return out;
}

// ---------------------------------------------------------------------------
// Branch-parametrized analysis (solve F2 = 0 for eps / for k)

// eps on the branch through (Y2, k): Eq-17-style inversion.
template <class K>
K eps_on_branch(const Params<K>& p, K Y2, K k) {
    K Y2L = p.m / (p.n + K(1));
    K Y2T = p.m / p.n;
    if (!(Y2 > Y2L && Y2 < Y2T && Y2 < Y2L + K(1) / k))
        throw DomainError("eps_on_branch: Y2 outside the admissible window (eps > 0 fails)");
    return (Y2L + K(1) / k - Y2) / (p.n * (Y2T - Y2) * (Y2 - Y2L));
}

// k on the branch through (Y2, eps).
template <class K>
K k_on_branch(const Params<K>& p, K Y2) {
    K Y2L = p.m / (p.n + K(1));
    K Y2U = p.m / p.n + K(1) / (p.eps * p.n);
    if (!(Y2 > Y2L && Y2 < Y2U)) throw DomainError("k_on_branch: Y2 outside (Y2L, Y2U)");
    return K(1) / (p.eps * p.n * (Y2 - Y2L) * (Y2U - Y2));
}

// Hopf-critical k for the equilibrium ratio R = Y2/m.
template <class K>
K hopf_k(K n, K m, K R) {
    K np1 = n + K(1);
    K den = K(1) - np1 * R;
    if (den == K(0)) throw DomainError("hopf_k: R = 1/(n+1) (formula pole)");
    return (np1 * np1 * R - (n + K(2))) / (m * den * den);
}

template <class K>
struct BranchPoint {
    K trace, det, kH;
};

// trace/det along the E2 branch at height Y2 (k recovered from F2 = 0),
// plus the Hopf-critical k for that height.
template <class K>
BranchPoint<K> trace_det_on_branch(const Params<K>& p, K Y2) {
    K k = k_on_branch(p, Y2);
    K Y2T = p.m / p.n;
    if (!(Y2 < Y2T)) throw DomainError("trace_det_on_branch: X2 <= 0 (biologically meaningless)");
    Params<K> q = p;
    q.k = k;
    auto e = make_equilibrium(q, p.m - p.n * Y2, Y2, EqKind::E2minus);
    return {e.trace, e.det, hopf_k(p.n, p.m, Y2 / p.m)};
}

// ---------------------------------------------------------------------------
// Case classification (stability / Hopf inventory partition)

enum class CaseLabel {
    C1a,
    C1b,
    C2a_i,
    C2a_ii,
    C2a_iii,
    C2b,
    C2c_i,
    C2c_ii,
    C2d,
    Boundary
};

inline const char* to_string(CaseLabel c) {
    switch (c) {
        case CaseLabel::C1a: return "1a";
        case CaseLabel::C1b: return "1b";
        case CaseLabel::C2a_i: return "2a(i)";
        case CaseLabel::C2a_ii: return "2a(ii)";
        case CaseLabel::C2a_iii: return "2a(iii)";
        case CaseLabel::C2b: return "2b";
        case CaseLabel::C2c_i: return "2c(i)";
        case CaseLabel::C2c_ii: return "2c(ii)";
        case CaseLabel::C2d: return "2d";
        case CaseLabel::Boundary: return "boundary/degenerate";
    }
    return "?";
}

struct Interval {
    double lo, hi;  // hi = +inf allowed
};

struct CaseInfo {
    CaseLabel label = CaseLabel::Boundary;
    int hopf_count = 0;
    std::optional<double> kH_minus, kH_plus;  // Hopf critical k values (float view)
    std::vector<Interval> stable_k;           // stability intervals for E2-
    bool type_I = false;                      // two stable equilibria may coexist
    bool type_II = false;                     // stable equilibrium + stable cycle may coexist
    std::string note;
};

namespace detail {

// three-way compare with boundary detection; returns -1 / 0 / +1
template <class K>
int cmp(const K& a, const K& b) {
    if constexpr (scalar_traits<K>::exact) {
        return a < b ? -1 : (a == b ? 0 : 1);
    } else {
        double x = to_double(a), y = to_double(b);
        double s = std::max({std::abs(x), std::abs(y), 1e-300});
        if (std::abs(x - y) <= 1e-10 * s) return 0;
        return x < y ? -1 : 1;
    }
}

// sign of n - (sqrt(2)-1)/2, exactly in rational mode via (2n+1)^2 vs 2
template <class K>
int cmp_n_sqrt2(const K& n) {
    K t = K(2) * n + K(1);
    return cmp(t * t, K(2));
}
// sign of n - (sqrt(5)-1)/4 via (4n+1)^2 vs 5
template <class K>
int cmp_n_sqrt5(const K& n) {
    K t = K(4) * n + K(1);
    return cmp(t * t, K(5));
}

}  // namespace detail

template <class K>
CaseInfo classify_case(const Params<K>& p) {
    using detail::cmp;
    p.validate();
    auto t = thresholds(p);
    const K &n = p.n, &eps = p.eps, &k = p.k;
    CaseInfo info;
    auto boundary = [&](const std::string& why) {
        info.label = CaseLabel::Boundary;
        info.note = why;
        return info;
    };
    if (t.kHminus) info.kH_minus = t.kHminus->value();
    if (t.kHplus) info.kH_plus = t.kHplus->value();
    double kHm = info.kH_minus.value_or(0), kHp = info.kH_plus.value_or(0);
    double kSN = to_double(t.kSN), kT = to_double(t.kT);
    const double INF = std::numeric_limits<double>::infinity();

    int c_e1 = cmp(eps, t.eps1);
    if (c_e1 == 0) return boundary("eps = eps1");
    if (c_e1 < 0) {
        // Case (1): no bistability.
        int c_e2 = cmp(eps, t.eps2);
        if (c_e2 == 0) return boundary("eps = eps2");
        if (c_e2 < 0) {
            info.label = CaseLabel::C1a;
            info.stable_k = {{kT, INF}};
            return info;
        }
        // eps2 < eps < eps1 forces n < (sqrt(2)-1)/2
        info.label = CaseLabel::C1b;
        info.hopf_count = 2;
        info.stable_k = {{kT, kHm}, {kHp, INF}};
        return info;
    }

    // Case (2): eps > eps1.
    bool n_lt_1 = cmp(n, K(1)) < 0;
    int c_e2 = cmp(eps, t.eps2), c_e3 = n_lt_1 ? cmp(eps, t.eps3) : 1, c_e4 = cmp(eps, t.eps4);
    int c_half = cmp(n, K(1) / K(2));
    if (c_e2 == 0 || (n_lt_1 && c_e3 == 0) || c_e4 == 0) return boundary("eps on a threshold");
    if (c_half == 0) return boundary("n = 1/2");

    K max_e34 = (n_lt_1 && t.eps3 > t.eps4) ? t.eps3 : t.eps4;
    int c_emax = cmp(eps, max_e34);
    int c_k_sn = cmp(k, t.kSN), c_k_star = cmp(k, t.kStar);
    if (c_k_sn == 0) return boundary("k = kSN");

    // (2a)(i): eps >= eps4, k > max(kSN, k*)
    if (c_e4 >= 0 && c_k_sn > 0 && c_k_star > 0) {
        info.label = CaseLabel::C2a_i;
        info.stable_k = {{std::max(kSN, to_double(t.kStar)), INF}};
        info.type_I = true;
        return info;
    }
    // (2a)(ii): n < 1, eps > max(eps3, eps4), k = k*
    if (n_lt_1 && c_emax > 0 && c_k_star == 0) {
        info.label = CaseLabel::C2a_ii;
        info.stable_k = {{to_double(t.kStar), to_double(t.kStar)}};
        info.type_I = true;
        return info;
    }
    // (2a)(iii): n >= (sqrt2-1)/2, eps1 < eps < min(eps2, eps4), k > kSN
    if (detail::cmp_n_sqrt2(n) >= 0 && c_e2 < 0 && c_e4 < 0 && c_k_sn > 0) {
        info.label = CaseLabel::C2a_iii;
        info.stable_k = {{kSN, INF}};
        info.type_I = true;
        return info;
    }
    // (2b): 0 < n < 1/2, eps3 < eps <= eps4, kSN < k <= k*
    if (c_half < 0 && c_e3 > 0 && c_e4 <= 0 && c_k_sn > 0 && c_k_star <= 0) {
        info.label = CaseLabel::C2b;
        return info;  // E2- unstable, no Hopf
    }
    // (2c)(i): n < 1/2, eps3 < eps < eps4, k > k*
    if (c_half < 0 && c_e3 > 0 && c_e4 < 0 && c_k_star > 0) {
        info.label = CaseLabel::C2c_i;
        info.hopf_count = 1;
        info.stable_k = {{kHp, INF}};
        info.type_I = true;
        int third = cmp(K(3) * n, K(1));
        info.type_II = third >= 0 || (t.eps_plus && cmp(eps, *t.eps_plus) > 0);
        return info;
    }
    // (2c)(ii): n < 1, eps > max(eps3, eps4), kSN < k < k*
    if (n_lt_1 && c_emax > 0 && c_k_sn > 0 && c_k_star < 0) {
        info.label = CaseLabel::C2c_ii;
        info.hopf_count = 1;
        info.stable_k = {{kHp, INF}};
        info.type_I = true;
        info.type_II = true;  // kH+ < kT in this case
        return info;
    }
    // (2d): n < 1/2, max(eps1, eps2) < eps < eps3, k >= kSN
    K max_e12 = (t.eps1 > t.eps2) ? t.eps1 : t.eps2;
    if (c_half < 0 && cmp(eps, max_e12) > 0 && c_e3 < 0 && c_k_sn >= 0) {
        info.label = CaseLabel::C2d;
        info.hopf_count = 2;
        info.stable_k = {{kSN, kHm}, {kHp, INF}};
        info.type_I = true;
        int s5 = detail::cmp_n_sqrt5(n);
        int third = cmp(K(3) * n, K(1));
        bool below_minus =
            (s5 >= 0 && c_half < 0 && c_e2 > 0 && c_e3 < 0) ||
            (s5 < 0 && t.eps_minus && cmp(eps, *t.eps_minus) > 0 && c_e3 < 0);
        bool below_plus =
            (s5 >= 0 && third < 0 && c_e2 > 0 && t.eps_minus && cmp(eps, *t.eps_minus) < 0) ||
            (third >= 0 && c_half < 0 && c_e2 > 0 && c_e3 < 0);
        info.type_II = below_minus || below_plus;
        return info;
    }
    return boundary("parameters fall outside the enumerated cases");
}

// Domain of interest (diagnostic only; not a trapping region).
template <class K>
bool in_domain_of_interest(const Params<K>& p, K X, K Y) {
    return X >= K(0) && X < Y && Y <= p.m / p.n;
}

}  // namespace bifurc
