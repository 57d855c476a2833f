#include "bifurc/hopf.hpp"

namespace bifurc {

namespace {

// v1a / v2a as univariate polynomials in R at a fixed rational n.
Poly1<Rat> v1a_in_R(const Rat& n) {
    Poly1<Rat> R(std::vector<Rat>{0, 1});
    Poly1<Rat> nn(std::vector<Rat>{n});
    return v1a_poly<Poly1<Rat>>(nn, R);
}
Poly1<Rat> v2a_in_R(const Rat& n) {
    Poly1<Rat> R(std::vector<Rat>{0, 1});
    Poly1<Rat> nn(std::vector<Rat>{n});
    return v2a_poly<Poly1<Rat>>(nn, R);
}

// Eliminated-R solution along the common-root locus.
Rat R_bar(const Rat& n) {
    Rat x = 1 - 2 * n;
    Rat num = 23 + x * (x * (1 + 14 * n + 24 * n * n) + 46 * n * n * n);
    Rat den = 4 * (4 + n) + 2 * n * x * (x * (6 + 15 * n + 28 * n * n) + 55 * n * n * n);
    return num / den;
}

}  // namespace

CodimElimination codim3_elimination_check() {
    // Res_R(v1a, v2a) is a polynomial in n of degree <= 67: recover it exactly
    // by resultant evaluation at 75 rational nodes + interpolation.
    const int nodes = 75;
    std::vector<Rat> xs, ys;
    xs.reserve(nodes);
    ys.reserve(nodes);
    for (int j = 0; j < nodes; ++j) {
        Rat n(j + 2, 1);
        xs.push_back(n);
        ys.push_back(resultant(v1a_in_R(n), v2a_in_R(n)));
    }
    CodimElimination out;
    out.res_n = interpolate(xs, ys);
    out.roots_in_unit_interval = sturm_roots_in(out.res_n, Rat(0), Rat(1));
    out.half_is_root = out.res_n(Rat(1, 2)) == 0;
    out.R_bar_at_half = R_bar(Rat(1, 2));
    auto o = focus_values_oracle<Rat>(Rat(1), Rat(1, 2), out.R_bar_at_half);
    out.v1_num_at_half = o.v1;  // v1 * m^2 (computed at m = 1)
    return out;
}

}  // namespace bifurc
