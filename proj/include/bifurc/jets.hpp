#pragma once

// Truncated multivariate polynomial algebra ("jets").
//
// A Jet<K> is a polynomial in an ordered variable list, truncated at a total
// degree bound, stored sparsely in graded-lexicographic order (so iteration,
// printing and serialization are reproducible byte-for-byte).  Coefficients
// are exact rationals or floating point depending on K; mixing modes is a
// type error by construction.  All operations are pure.

#include "bifurc/numbers.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <vector>

namespace bifurc {

using Exp = std::vector<unsigned char>;

inline int total_degree(const Exp& e) {
    int d = 0;
    for (auto x : e) d += x;
    return d;
}

// Graded-lex: lower total degree first, then plain lexicographic order on the
// exponent vector (leftmost variable most significant).
struct GradedLex {
    bool operator()(const Exp& a, const Exp& b) const {
        int da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return a < b;
    }
};

using VarList = std::vector<std::string>;

template <class K>
class Jet {
public:
    using Terms = std::map<Exp, K, GradedLex>;

    Jet() : max_degree_(0) {}
    Jet(VarList vars, int max_degree) : vars_(std::move(vars)), max_degree_(max_degree) {
        if (max_degree_ < 0) throw StructuredError("jet: negative truncation degree");
    }

    static Jet constant(const VarList& vars, int max_degree, K c) {
        Jet j(vars, max_degree);
        if (!(c == K(0))) j.terms_.emplace(Exp(vars.size(), 0), std::move(c));
        return j;
    }
    static Jet variable(const VarList& vars, int max_degree, size_t index) {
        if (index >= vars.size()) throw StructuredError("jet: variable index out of range");
        Jet j(vars, max_degree);
        if (max_degree >= 1) {
            Exp e(vars.size(), 0);
            e[index] = 1;
            j.terms_.emplace(std::move(e), K(1));
        }
        return j;
    }
    static Jet variable(const VarList& vars, int max_degree, const std::string& name) {
        return variable(vars, max_degree, index_of(vars, name));
    }

    static size_t index_of(const VarList& vars, const std::string& name) {
        auto it = std::find(vars.begin(), vars.end(), name);
        if (it == vars.end()) throw StructuredError("jet: unknown variable '" + name + "'");
        return static_cast<size_t>(it - vars.begin());
    }

    const VarList& vars() const { return vars_; }
    int max_degree() const { return max_degree_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    K coeff(const Exp& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? K(0) : it->second;
    }
    // Convenience for low-arity lookups in tests.
    K coeff(std::initializer_list<int> e) const {
        Exp x;
        for (int v : e) x.push_back(static_cast<unsigned char>(v));
        if (x.size() != vars_.size()) throw StructuredError("jet: exponent arity mismatch");
        return coeff(x);
    }

    void set_coeff(const Exp& e, K c) {
        if (e.size() != vars_.size()) throw StructuredError("jet: exponent arity mismatch");
        if (total_degree(e) > max_degree_) throw StructuredError("jet: exponent exceeds truncation degree");
        if (c == K(0))
            terms_.erase(e);
        else
            terms_[e] = std::move(c);
    }

    Jet operator-() const {
        Jet r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    friend Jet operator+(const Jet& a, const Jet& b) {
        check_compatible(a, b);
        Jet r(a.vars_, std::min(a.max_degree_, b.max_degree_));
        r.terms_ = a.terms_;
        for (const auto& [e, c] : b.terms_) {
            auto [it, fresh] = r.terms_.emplace(e, c);
            if (!fresh) it->second += c;
        }
        r.retruncate();
        r.canonicalize();
        return r;
    }
    friend Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }

    friend Jet operator*(const Jet& a, const Jet& b) {
        check_compatible(a, b);
        Jet r(a.vars_, std::min(a.max_degree_, b.max_degree_));
        Exp e(a.vars_.size(), 0);
        for (const auto& [ea, ca] : a.terms_) {
            int da = total_degree(ea);
            for (const auto& [eb, cb] : b.terms_) {
                if (da + total_degree(eb) > r.max_degree_) continue;
                for (size_t i = 0; i < e.size(); ++i) e[i] = static_cast<unsigned char>(ea[i] + eb[i]);
                auto [it, fresh] = r.terms_.emplace(e, ca * cb);
                if (!fresh) it->second += ca * cb;
            }
        }
        r.canonicalize();
        return r;
    }

    friend Jet operator*(const K& s, const Jet& a) {
        Jet r = a;
        for (auto& [e, c] : r.terms_) c *= s;
        r.canonicalize();
        return r;
    }
    friend Jet operator*(const Jet& a, const K& s) { return s * a; }
    friend Jet operator+(const Jet& a, const K& s) { return a + constant(a.vars_, a.max_degree_, s); }
    friend Jet operator-(const Jet& a, const K& s) { return a + (-s); }

    Jet& operator+=(const Jet& b) { return *this = *this + b; }
    Jet& operator-=(const Jet& b) { return *this = *this - b; }
    Jet& operator*=(const Jet& b) { return *this = *this * b; }

    bool operator==(const Jet& o) const {
        return vars_ == o.vars_ && max_degree_ == o.max_degree_ && terms_ == o.terms_;
    }

    // Copy truncated to a (possibly lower) degree.
    Jet truncated(int degree) const {
        Jet r(vars_, degree);
        for (const auto& [e, c] : terms_)
            if (total_degree(e) <= degree) r.terms_.emplace(e, c);
        return r;
    }
    // Same terms under a larger degree bound (no new information).
    Jet with_degree(int degree) const {
        if (degree < max_degree_) return truncated(degree);
        Jet r = *this;
        r.max_degree_ = degree;
        return r;
    }
    // Keep only terms of exact total degree d.
    Jet homogeneous_part(int d) const {
        Jet r(vars_, max_degree_);
        for (const auto& [e, c] : terms_)
            if (total_degree(e) == d) r.terms_.emplace(e, c);
        return r;
    }

    Jet partial(size_t var) const {
        if (var >= vars_.size()) throw StructuredError("jet_partial: variable index out of range");
        Jet r(vars_, std::max(0, max_degree_ - 1));
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exp d = e;
            d[var] -= 1;
            r.terms_.emplace(std::move(d), c * K(static_cast<int>(e[var])));
        }
        r.canonicalize();
        return r;
    }
    Jet partial(const std::string& name) const { return partial(index_of(vars_, name)); }

    // Composition: substitute every variable of *this by the matching binding
    // jet (bindings live in a common, possibly different, variable list).
    // Exact up to the bindings' truncation degree.
    Jet substitute(const std::vector<Jet>& bindings) const {
        if (bindings.size() != vars_.size())
            throw StructuredError("jet_substitute: need one binding per variable");
        for (const auto& b : bindings)
            if (b.vars() != bindings.front().vars() || b.max_degree() != bindings.front().max_degree())
                throw StructuredError("jet_substitute: bindings disagree on variables or degree");
        const VarList& out_vars = bindings.front().vars();
        int out_deg = bindings.front().max_degree();
        Jet result(out_vars, out_deg);
        // memoized powers of each binding
        std::vector<std::vector<Jet>> pows(bindings.size());
        for (size_t i = 0; i < bindings.size(); ++i)
            pows[i].push_back(constant(out_vars, out_deg, K(1)));
        for (const auto& [e, c] : terms_) {
            Jet term = constant(out_vars, out_deg, c);
            for (size_t i = 0; i < e.size(); ++i) {
                while (pows[i].size() <= e[i]) pows[i].push_back(pows[i].back() * bindings[i]);
                if (e[i] > 0) term = term * pows[i][e[i]];
            }
            result += term;
        }
        return result;
    }

    K eval(const std::vector<K>& point) const {
        if (point.size() != vars_.size()) throw StructuredError("jet_eval: arity mismatch");
        K acc(0);
        for (const auto& [e, c] : terms_) {
            K t = c;
            for (size_t i = 0; i < e.size(); ++i)
                for (int k = 0; k < e[i]; ++k) t *= point[i];
            acc += t;
        }
        return acc;
    }

    std::string str() const {
        std::ostringstream os;
        os.precision(17);
        if (terms_.empty()) return "0";
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c << ")";
            for (size_t i = 0; i < e.size(); ++i)
                if (e[i] > 0) {
                    os << "*" << vars_[i];
                    if (e[i] > 1) os << "^" << int(e[i]);
                }
        }
        return os.str();
    }

    // Drop structural zeros; in float modes also drop coefficients below the
    // relative sparse-form threshold.
    void canonicalize() {
        if constexpr (scalar_traits<K>::exact) {
            for (auto it = terms_.begin(); it != terms_.end();)
                it = (it->second == K(0)) ? terms_.erase(it) : std::next(it);
        } else {
            double max2 = 0;
            for (const auto& [e, c] : terms_) max2 = std::max(max2, scalar_traits<K>::abs2(c));
            double max_abs = std::sqrt(max2);
            for (auto it = terms_.begin(); it != terms_.end();)
                it = scalar_traits<K>::negligible(it->second, max_abs) ? terms_.erase(it) : std::next(it);
        }
    }

private:
    static void check_compatible(const Jet& a, const Jet& b) {
        if (a.vars_ != b.vars_)
            throw StructuredError("jet arithmetic: variable lists differ");
    }
    void retruncate() {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = (total_degree(it->first) > max_degree_) ? terms_.erase(it) : std::next(it);
    }

    VarList vars_;
    int max_degree_;
    Terms terms_;
};

template <class K>
Jet<K> pow(const Jet<K>& a, int k) {
    Jet<K> r = Jet<K>::constant(a.vars(), a.max_degree(), K(1));
    for (int i = 0; i < k; ++i) r = r * a;
    return r;
}

// Convert coefficients between scalar types (e.g. Rat -> double).
template <class To, class From, class Conv>
Jet<To> convert_jet(const Jet<From>& j, Conv conv) {
    Jet<To> r(j.vars(), j.max_degree());
    for (const auto& [e, c] : j.terms()) r.set_coeff(e, conv(c));
    return r;
}

inline Jet<double> to_float(const Jet<Rat>& j) {
    return convert_jet<double>(j, [](const Rat& c) { return to_double(c); });
}

}  // namespace bifurc
