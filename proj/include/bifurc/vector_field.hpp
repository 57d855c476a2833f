#pragma once

// Planar vector fields as pairs of jets, plus the coordinate-change engine
// shared by the Jordan reduction, the complex normal-form solver and the
// B-T normal-form machinery: push a system through x = T(y) (with optional
// parameter bindings and time rescaling) by inverting the transformation's
// Jacobian as a jet matrix.

#include "bifurc/jets.hpp"

#include <array>
#include <functional>

namespace bifurc {

template <class K>
struct PlanarJetSystem {
    Jet<K> f1, f2;             // d(var0)/dt, d(var1)/dt about the expansion point
    std::array<K, 2> origin{}; // expansion point in original coordinates
    std::array<std::array<K, 2>, 2> linear_part{};

    const VarList& vars() const { return f1.vars(); }
    int max_degree() const { return f1.max_degree(); }

    // Constant terms of the right-hand sides (zero at an equilibrium).
    std::array<K, 2> residual() const {
        Exp z(f1.vars().size(), 0);
        return {f1.coeff(z), f2.coeff(z)};
    }

    void fill_linear_part() {
        Exp e(f1.vars().size(), 0);
        for (size_t j = 0; j < 2; ++j) {
            e.assign(f1.vars().size(), 0);
            e[j] = 1;
            linear_part[0][j] = f1.coeff(e);
            linear_part[1][j] = f2.coeff(e);
        }
    }
};

// Expand a closed-form planar field about a point.  The field is supplied as
// a callable on jets, (X, Y) -> {dX/dt, dY/dt}, so polynomial fields expand
// exactly in rational mode.
template <class K, class RHS>
PlanarJetSystem<K> taylor_expand(RHS&& rhs, std::array<K, 2> point, int max_degree,
                                 VarList vars = {"u", "v"}) {
    if (max_degree < 2) throw StructuredError("taylor_expand: max_degree must be >= 2");
    PlanarJetSystem<K> sys;
    sys.origin = point;
    Jet<K> X = Jet<K>::constant(vars, max_degree, point[0]) + Jet<K>::variable(vars, max_degree, 0);
    Jet<K> Y = Jet<K>::constant(vars, max_degree, point[1]) + Jet<K>::variable(vars, max_degree, 1);
    auto [f1, f2] = rhs(X, Y);
    sys.f1 = std::move(f1);
    sys.f2 = std::move(f2);
    sys.fill_linear_part();
    return sys;
}

// 1/s as a jet (Neumann series); s must have a nonzero constant term.
template <class K>
Jet<K> jet_reciprocal(const Jet<K>& s) {
    Exp z(s.vars().size(), 0);
    K c0 = s.coeff(z);
    if (c0 == K(0)) throw StructuredError("jet_reciprocal: zero constant term");
    Jet<K> n = s * (K(1) / c0);
    n.set_coeff(z, K(0));  // n = s/c0 - 1
    Jet<K> acc = Jet<K>::constant(s.vars(), s.max_degree(), K(1));
    Jet<K> p = acc;
    for (int k = 1; k <= s.max_degree(); ++k) {
        p = p * (-n);
        acc += p;
    }
    return acc * (K(1) / c0);
}

// Push a planar system through the change of variables
//   x1 = T1(y, params), x2 = T2(y, params), old params = P_i(new params),
// with d(tau_old) = time scaling handled by the caller-supplied multiplier
// (pass jet 1 for none): new_f = time_mult * (D_y T)^{-1} (f o bindings).
//
// `bindings` must supply a jet (in the output variable list) for every
// variable of the input system, state variables first.
template <class K>
PlanarJetSystem<K> transform_vector_field(const PlanarJetSystem<K>& sys,
                                          const std::vector<Jet<K>>& bindings,
                                          const Jet<K>& time_mult) {
    if (bindings.size() != sys.vars().size())
        throw StructuredError("transform_vector_field: one binding per input variable required");
    const Jet<K>& T1 = bindings[0];
    const Jet<K>& T2 = bindings[1];
    // Jacobian w.r.t. the first two (dynamic) output variables.
    Jet<K> a = T1.partial(size_t{0}).with_degree(T1.max_degree());
    Jet<K> b = T1.partial(size_t{1}).with_degree(T1.max_degree());
    Jet<K> c = T2.partial(size_t{0}).with_degree(T1.max_degree());
    Jet<K> d = T2.partial(size_t{1}).with_degree(T1.max_degree());
    Jet<K> det = a * d - b * c;
    Jet<K> inv_det = jet_reciprocal(det);
    Jet<K> g1 = sys.f1.substitute(bindings);
    Jet<K> g2 = sys.f2.substitute(bindings);
    PlanarJetSystem<K> out;
    out.f1 = time_mult * (inv_det * (d * g1 - b * g2));
    out.f2 = time_mult * (inv_det * (a * g2 - c * g1));
    out.origin = sys.origin;
    out.fill_linear_part();
    return out;
}

template <class K>
PlanarJetSystem<K> transform_vector_field(const PlanarJetSystem<K>& sys,
                                          const std::vector<Jet<K>>& bindings) {
    Jet<K> one = Jet<K>::constant(bindings.front().vars(), bindings.front().max_degree(), K(1));
    return transform_vector_field(sys, bindings, one);
}

// Linear change of state coordinates x = M y (parameters, if any, pass
// through unchanged): new_f = M^{-1} f(M y).
template <class K>
PlanarJetSystem<K> linear_pullback(const PlanarJetSystem<K>& sys,
                                   const std::array<std::array<K, 2>, 2>& M) {
    const VarList& vars = sys.vars();
    int deg = sys.max_degree();
    std::vector<Jet<K>> bind;
    Jet<K> y1 = Jet<K>::variable(vars, deg, size_t{0});
    Jet<K> y2 = Jet<K>::variable(vars, deg, size_t{1});
    bind.push_back(M[0][0] * y1 + M[0][1] * y2);
    bind.push_back(M[1][0] * y1 + M[1][1] * y2);
    for (size_t i = 2; i < vars.size(); ++i) bind.push_back(Jet<K>::variable(vars, deg, i));
    return transform_vector_field(sys, bind);
}

}  // namespace bifurc
