#pragma once

// First-order truncated Taylor scalars ("jets") used to propagate exact
// derivatives through the algebraic maps of the library.  A Jet carries a
// value together with its derivative along one direction; composing
// operations applies the chain rule in closed form, so derivatives of
// parametrizations, gauge factors and similarity prefactors come out at
// machine precision instead of finite-difference accuracy.
//
// Jets nest: Jet<Jet<complex>> carries second derivatives.

#include <cmath>
#include <complex>

namespace painlax {

using cplx = std::complex<double>;

template <class S>
struct Jet {
    S v{};  // value
    S d{};  // directional derivative

    Jet() = default;
    Jet(S value) : v(value), d(S{}) {}
    Jet(S value, S deriv) : v(value), d(deriv) {}
    Jet(double value) : v(S(value)), d(S{}) {}

    Jet operator-() const { return {-v, -d}; }

    Jet& operator+=(const Jet& o) { v += o.v; d += o.d; return *this; }
    Jet& operator-=(const Jet& o) { v -= o.v; d -= o.d; return *this; }
    Jet& operator*=(const Jet& o) { d = d * o.v + v * o.d; v *= o.v; return *this; }
    Jet& operator/=(const Jet& o) { d = (d - v / o.v * o.d) / o.v; v /= o.v; return *this; }
};

using Jet1 = Jet<cplx>;
using Jet2 = Jet<Jet<cplx>>;

template <class S> Jet<S> operator+(Jet<S> a, const Jet<S>& b) { return a += b; }
template <class S> Jet<S> operator-(Jet<S> a, const Jet<S>& b) { return a -= b; }
template <class S> Jet<S> operator*(Jet<S> a, const Jet<S>& b) { return a *= b; }
template <class S> Jet<S> operator/(Jet<S> a, const Jet<S>& b) { return a /= b; }

// mixed scalar/jet arithmetic
template <class S, class T> Jet<S> operator+(Jet<S> a, const T& b) { return a += Jet<S>(b); }
template <class S, class T> Jet<S> operator-(Jet<S> a, const T& b) { return a -= Jet<S>(b); }
template <class S, class T> Jet<S> operator*(Jet<S> a, const T& b) { return a *= Jet<S>(b); }
template <class S, class T> Jet<S> operator/(Jet<S> a, const T& b) { return a /= Jet<S>(b); }
template <class S, class T> Jet<S> operator+(const T& a, Jet<S> b) { return b += Jet<S>(a); }
template <class S, class T> Jet<S> operator-(const T& a, const Jet<S>& b) { return Jet<S>(a) - b; }
template <class S, class T> Jet<S> operator*(const T& a, Jet<S> b) { return b *= Jet<S>(a); }
template <class S, class T> Jet<S> operator/(const T& a, const Jet<S>& b) { return Jet<S>(a) / b; }

inline cplx conj_value(const cplx& z) { return std::conj(z); }

// elementary functions, defined recursively so nested jets work

inline cplx jet_exp(const cplx& z) { return std::exp(z); }
inline cplx jet_log(const cplx& z) { return std::log(z); }
inline cplx jet_sqrt(const cplx& z) { return std::sqrt(z); }

template <class S> Jet<S> jet_exp(const Jet<S>& a) {
    S e = jet_exp(a.v);
    return {e, a.d * e};
}
template <class S> Jet<S> jet_log(const Jet<S>& a) { return {jet_log(a.v), a.d / a.v}; }
template <class S> Jet<S> jet_sqrt(const Jet<S>& a) {
    S r = jet_sqrt(a.v);
    return {r, a.d / (2.0 * r)};
}

// principal-branch complex power, shared by every module
inline cplx cpow(const cplx& base, const cplx& expo) {
    if (base == cplx(0.0) && expo != cplx(0.0)) return cplx(0.0);
    return std::exp(expo * std::log(base));
}
template <class S> Jet<S> cpow(const Jet<S>& base, const cplx& expo) {
    return jet_exp(cplx(expo) * jet_log(base));
}
template <class S> Jet<S> cpow(const Jet<S>& base, const Jet<S>& expo) {
    return jet_exp(expo * jet_log(base));
}

inline double value_of(double x) { return x; }
inline cplx value_of(const cplx& z) { return z; }
template <class S> auto value_of(const Jet<S>& a) { return value_of(a.v); }

// promote a complex number to a jet seeded as the differentiation variable
inline Jet1 seed(cplx v) { return Jet1(v, cplx(1.0)); }
inline Jet1 jet(cplx v, cplx d) { return Jet1(v, d); }

// second-order seed: value, first and second derivative of the input curve
inline Jet2 seed2(cplx v) { return Jet2(Jet1(v, 1.0), Jet1(1.0, 0.0)); }
inline Jet2 jet2(cplx v, cplx d, cplx dd) { return Jet2(Jet1(v, d), Jet1(d, dd)); }

inline cplx deriv1(const Jet1& a) { return a.d; }
inline cplx deriv1(const Jet2& a) { return a.d.v; }
inline cplx deriv2(const Jet2& a) { return a.d.d; }

}  // namespace painlax
