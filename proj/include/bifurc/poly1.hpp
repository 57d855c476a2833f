#pragma once

// Dense univariate polynomials over an exact field, with just enough
// machinery for the codimension elimination check: Euclidean division,
// Sturm chains (exact root counting on an interval), Sylvester resultants
// and Lagrange interpolation.

#include "bifurc/numbers.hpp"

#include <optional>
#include <vector>

namespace bifurc {

template <class K>
struct Poly1 {
    std::vector<K> c;  // c[i] * x^i, normalized: no trailing zeros

    Poly1() = default;
    Poly1(int v) : c{K(v)} { normalize(); }  // constant polynomial (lets Poly1 act as a scalar type)
    explicit Poly1(std::vector<K> coeffs) : c(std::move(coeffs)) { normalize(); }

    void normalize() {
        while (!c.empty() && c.back() == K(0)) c.pop_back();
    }
    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero poly
    bool is_zero() const { return c.empty(); }
    K leading() const { return c.empty() ? K(0) : c.back(); }

    K operator()(const K& x) const {
        K acc(0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Poly1 derivative() const {
        if (c.size() <= 1) return {};
        std::vector<K> d(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * K(static_cast<int>(i));
        return Poly1(std::move(d));
    }

    friend Poly1 operator+(const Poly1& a, const Poly1& b) {
        std::vector<K> r(std::max(a.c.size(), b.c.size()), K(0));
        for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
        return Poly1(std::move(r));
    }
    friend Poly1 operator-(const Poly1& a, const Poly1& b) {
        std::vector<K> r(std::max(a.c.size(), b.c.size()), K(0));
        for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
        return Poly1(std::move(r));
    }
    friend Poly1 operator*(const Poly1& a, const Poly1& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<K> r(a.c.size() + b.c.size() - 1, K(0));
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
        return Poly1(std::move(r));
    }
    friend Poly1 operator*(const K& s, const Poly1& a) {
        std::vector<K> r = a.c;
        for (auto& x : r) x *= s;
        return Poly1(std::move(r));
    }
    Poly1& operator+=(const Poly1& b) { return *this = *this + b; }
    Poly1& operator-=(const Poly1& b) { return *this = *this - b; }
    Poly1& operator*=(const Poly1& b) { return *this = *this * b; }

    // Euclidean division: *this = q*div + r, deg r < deg div.
    std::pair<Poly1, Poly1> divmod(const Poly1& div) const {
        if (div.is_zero()) throw DomainError("poly divmod: division by zero polynomial");
        Poly1 rem = *this;
        std::vector<K> q(std::max<int>(0, degree() - div.degree() + 1), K(0));
        while (!rem.is_zero() && rem.degree() >= div.degree()) {
            int shift = rem.degree() - div.degree();
            K f = rem.leading() / div.leading();
            q[shift] = f;
            for (size_t i = 0; i < div.c.size(); ++i) rem.c[i + shift] -= f * div.c[i];
            rem.normalize();
        }
        return {Poly1(std::move(q)), rem};
    }
};

// Number of distinct real roots in (a, b] via a Sturm chain.
template <class K>
int sturm_roots_in(const Poly1<K>& p, const K& a, const K& b) {
    static_assert(scalar_traits<K>::exact, "sturm counting requires exact arithmetic");
    if (p.is_zero()) throw DomainError("sturm: zero polynomial");
    std::vector<Poly1<K>> chain{p, p.derivative()};
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        auto rem = chain[chain.size() - 2].divmod(chain.back()).second;
        chain.push_back(K(-1) * rem);
    }
    auto sign_changes = [&](const K& x) {
        int changes = 0, prev = 0;
        for (const auto& q : chain) {
            if (q.is_zero()) continue;
            K v = q(x);
            int s = v == K(0) ? 0 : (v < K(0) ? -1 : 1);
            if (s != 0) {
                if (prev != 0 && s != prev) ++changes;
                prev = s;
            }
        }
        return changes;
    };
    return sign_changes(a) - sign_changes(b);
}

// Resultant via the Sylvester matrix (fraction-free only in the sense that K
// is an exact field; plain Gaussian elimination).
template <class K>
K resultant(const Poly1<K>& f, const Poly1<K>& g) {
    int m = f.degree(), n = g.degree();
    if (m < 0 || n < 0) return K(0);
    int N = m + n;
    if (N == 0) return K(1);
    std::vector<std::vector<K>> S(N, std::vector<K>(N, K(0)));
    for (int row = 0; row < n; ++row)
        for (int i = 0; i <= m; ++i) S[row][row + (m - i)] = f.c[i];
    for (int row = 0; row < m; ++row)
        for (int i = 0; i <= n; ++i) S[n + row][row + (n - i)] = g.c[i];
    // determinant with partial pivoting (exact field: any nonzero pivot works)
    K det(1);
    int sign = 1;
    for (int col = 0; col < N; ++col) {
        int piv = -1;
        for (int r = col; r < N; ++r)
            if (!(S[r][col] == K(0))) {
                piv = r;
                break;
            }
        if (piv < 0) return K(0);
        if (piv != col) {
            std::swap(S[piv], S[col]);
            sign = -sign;
        }
        det *= S[col][col];
        for (int r = col + 1; r < N; ++r) {
            if (S[r][col] == K(0)) continue;
            K f2 = S[r][col] / S[col][col];
            for (int cc = col; cc < N; ++cc) S[r][cc] -= f2 * S[col][cc];
        }
    }
    return sign < 0 ? -det : det;
}

// Lagrange interpolation through (x_i, y_i), exact field.
template <class K>
Poly1<K> interpolate(const std::vector<K>& xs, const std::vector<K>& ys) {
    if (xs.size() != ys.size() || xs.empty()) throw DomainError("interpolate: bad node set");
    // Newton form for O(n^2) construction
    size_t n = xs.size();
    std::vector<K> coef = ys;
    for (size_t j = 1; j < n; ++j)
        for (size_t i = n - 1; i >= j; --i) {
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j]);
            if (i == j) break;
        }
    Poly1<K> p(std::vector<K>{coef[n - 1]});
    for (size_t i = n - 1; i-- > 0;) {
        Poly1<K> x_minus(std::vector<K>{-xs[i], K(1)});
        p = p * x_minus + Poly1<K>(std::vector<K>{coef[i]});
    }
    return p;
}

// Exact divisibility test: returns quotient if divisor divides p exactly.
template <class K>
std::optional<Poly1<K>> exact_quotient(const Poly1<K>& p, const Poly1<K>& divisor) {
    auto [q, r] = p.divmod(divisor);
    if (!r.is_zero()) return std::nullopt;
    return q;
}

}  // namespace bifurc
