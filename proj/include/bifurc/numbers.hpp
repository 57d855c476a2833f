#pragma once

// Number types shared across the toolkit.
//
// Two coefficient modes run through the whole jet/normal-form stack:
//   rational  -- exact arithmetic (boost cpp_rational), used whenever the
//                inputs are rational so published constants can be checked
//                exactly;
//   float     -- double, with an extended (50-digit) fallback for focus-value
//                computations that suffer heavy cancellation near degenerate
//                Hopf points.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <stdexcept>
#include <string>

namespace bifurc {

// expression templates off: plain value semantics keep template deduction sane
using Rat = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;
using Int = boost::multiprecision::cpp_int;
using Real50 = boost::multiprecision::cpp_bin_float_50;
using Complex50 = boost::multiprecision::cpp_complex_50;
using Complex = std::complex<double>;

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StructuredError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "p/q" or decimal literal -> exact rational.
inline Rat parse_rational(const std::string& text) {
    auto bad = [&] { throw StructuredError("bad rational literal: '" + text + "'"); };
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) bad();
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        try {
            Int num(s.substr(0, slash)), den(s.substr(slash + 1));
            if (den == 0) bad();
            return Rat(num, den);
        } catch (const std::exception&) {
            bad();
        }
    }
    // decimal (optionally with exponent)
    std::string mant = s;
    long expo = 0;
    auto epos = s.find_first_of("eE");
    if (epos != std::string::npos) {
        mant = s.substr(0, epos);
        try {
            expo = std::stol(s.substr(epos + 1));
        } catch (const std::exception&) {
            bad();
        }
    }
    std::string digits;
    long frac_digits = 0;
    bool neg = false, seen_dot = false, seen_digit = false;
    for (size_t i = 0; i < mant.size(); ++i) {
        char c = mant[i];
        if (c == '+' && i == 0) continue;
        if (c == '-' && i == 0) { neg = true; continue; }
        if (c == '.') {
            if (seen_dot) bad();
            seen_dot = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c))) bad();
        seen_digit = true;
        digits.push_back(c);
        if (seen_dot) ++frac_digits;
    }
    if (!seen_digit) bad();
    Int num(digits.empty() ? "0" : digits);
    if (neg) num = -num;
    Rat r(num, 1);
    long net = expo - frac_digits;
    Int ten = 10;
    if (net > 0)
        r *= Rat(boost::multiprecision::pow(ten, static_cast<unsigned>(net)), 1);
    else if (net < 0)
        r /= Rat(boost::multiprecision::pow(ten, static_cast<unsigned>(-net)), 1);
    return r;
}

inline double to_double(const Rat& r) { return r.convert_to<double>(); }
inline double to_double(double x) { return x; }
inline double to_double(const Real50& x) { return x.convert_to<double>(); }

// Scalar traits used by the jet layer: exactness, negligibility threshold for
// canonicalization, ordering-free magnitude.
template <class K>
struct scalar_traits;

template <>
struct scalar_traits<Rat> {
    static constexpr bool exact = true;
    static double abs2(const Rat&) { return 0.0; }  // unused in exact mode
    static bool negligible(const Rat& c, const Rat&) { return c == 0; }
    static const char* mode_name() { return "rational"; }
};

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static double abs2(double c) { return c * c; }
    // Spec'd sparse-form threshold: drop |c| < 1e-13 * max|coeff|.
    static bool negligible(double c, double max_abs) {
        return std::abs(c) <= 1e-13 * max_abs;
    }
    static const char* mode_name() { return "float"; }
};

template <>
struct scalar_traits<Complex> {
    static constexpr bool exact = false;
    static double abs2(const Complex& c) { return std::norm(c); }
    static bool negligible(const Complex& c, double max_abs) {
        return std::abs(c) <= 1e-13 * max_abs;
    }
    static const char* mode_name() { return "complex"; }
};

template <>
struct scalar_traits<Real50> {
    static constexpr bool exact = false;
    static double abs2(const Real50& c) { return (c * c).convert_to<double>(); }
    static bool negligible(const Real50& c, double max_abs) {
        return abs(c).convert_to<double>() <= 1e-45 * max_abs;
    }
    static const char* mode_name() { return "float50"; }
};

template <>
struct scalar_traits<Complex50> {
    static constexpr bool exact = false;
    static double abs2(const Complex50& c) { return norm(c).convert_to<double>(); }
    static bool negligible(const Complex50& c, double max_abs) {
        return abs(c).convert_to<double>() <= 1e-45 * max_abs;
    }
    static const char* mode_name() { return "complex50"; }
};

// Exact quadratic extension Q(sqrt(d)): values a + b*sqrt(d).  Closed under
// field operations as long as all operands share one radicand (rationals are
// compatible with everything).  Keeps equilibrium coordinates, traces and
// determinants exact even when the discriminant is not a perfect square.
struct Surd {
    Rat a{}, b{}, d{};  // canonical: b == 0 => d == 0; d never a perfect square

    Surd() = default;
    Surd(int v) : a(v) {}
    Surd(const Rat& v) : a(v) {}
    static bool sqrt_exact(const Rat& x, Rat& out);
    static Surd make(Rat a, Rat b, Rat d);

    bool is_rational() const { return b == 0; }
    Rat rational_value() const {
        if (!is_rational()) throw StructuredError("Surd: value is irrational");
        return a;
    }
    double value() const;

    int sign() const {
        if (b == 0) return a == 0 ? 0 : (a > 0 ? 1 : -1);
        if (a == 0) return b > 0 ? 1 : -1;
        Rat lhs = a * a, rhs = b * b * d;
        if (a > 0 && b > 0) return 1;
        if (a < 0 && b < 0) return -1;
        if (lhs == rhs) return 0;
        return (lhs > rhs) ? (a > 0 ? 1 : -1) : (b > 0 ? 1 : -1);
    }

    friend Surd operator-(const Surd& x) { return make(-x.a, -x.b, x.d); }
    friend Surd operator+(const Surd& x, const Surd& y) {
        Rat d = common_radicand(x, y);
        return make(x.a + y.a, x.b + y.b, d);
    }
    friend Surd operator-(const Surd& x, const Surd& y) { return x + (-y); }
    friend Surd operator*(const Surd& x, const Surd& y) {
        Rat d = common_radicand(x, y);
        return make(x.a * y.a + x.b * y.b * d, x.a * y.b + x.b * y.a, d);
    }
    friend Surd operator/(const Surd& x, const Surd& y) {
        Rat d = common_radicand(x, y);
        Rat nrm = y.a * y.a - y.b * y.b * d;
        if (nrm == 0) throw DomainError("Surd: division by zero");
        Surd conj = make(y.a, -y.b, d);
        Surd num = x * conj;
        return make(num.a / nrm, num.b / nrm, num.d);
    }
    Surd& operator+=(const Surd& y) { return *this = *this + y; }
    Surd& operator-=(const Surd& y) { return *this = *this - y; }
    Surd& operator*=(const Surd& y) { return *this = *this * y; }

    friend bool operator==(const Surd& x, const Surd& y) { return (x - y).sign() == 0; }
    friend bool operator<(const Surd& x, const Surd& y) { return (x - y).sign() < 0; }
    friend bool operator>(const Surd& x, const Surd& y) { return (x - y).sign() > 0; }
    friend bool operator<=(const Surd& x, const Surd& y) { return (x - y).sign() <= 0; }
    friend bool operator>=(const Surd& x, const Surd& y) { return (x - y).sign() >= 0; }

private:
    static Rat common_radicand(const Surd& x, const Surd& y) {
        if (x.b == 0) return y.d;
        if (y.b == 0) return x.d;
        if (x.d != y.d) throw StructuredError("Surd: incompatible radicands");
        return x.d;
    }
};

inline bool Surd::sqrt_exact(const Rat& x, Rat& out) {
    if (x < 0) return false;
    Int num = boost::multiprecision::numerator(x), den = boost::multiprecision::denominator(x);
    Int rn = boost::multiprecision::sqrt(num), rd = boost::multiprecision::sqrt(den);
    if (rn * rn != num || rd * rd != den) return false;
    out = Rat(rn, rd);
    return true;
}

inline Surd Surd::make(Rat a, Rat b, Rat d) {
    Surd s;
    if (b == 0 || d == 0) {
        s.a = std::move(a);
        return s;
    }
    if (d < 0) throw DomainError("Surd: negative radicand");
    Rat r;
    if (sqrt_exact(d, r)) {
        s.a = a + b * r;
        return s;
    }
    s.a = std::move(a);
    s.b = std::move(b);
    s.d = std::move(d);
    return s;
}

inline double Surd::value() const {
    return a.convert_to<double>() + b.convert_to<double>() * std::sqrt(d.convert_to<double>());
}

inline double to_double(const Surd& s) { return s.value(); }

template <>
struct scalar_traits<Surd> {
    static constexpr bool exact = true;
    static double abs2(const Surd&) { return 0.0; }
    static bool negligible(const Surd& c, const Surd&) { return c.sign() == 0; }
    static const char* mode_name() { return "surd"; }
};

}  // namespace bifurc
