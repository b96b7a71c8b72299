#pragma once

// Truncated Taylor arithmetic around a fixed base point.

#include <array>
#include <cmath>
#include <complex>

#include "jspec/types.hpp"

namespace jspec {

inline constexpr int kMaxJetOrder = 10;

class Jet {
 public:
  Jet() = default;
  Jet(cplx base, int order) : order_(order), base_(base) {
    if (order < 0 || order > kMaxJetOrder) raise(ErrorKind::TooLong, "jet order out of range");
  }

  static Jet constant(cplx v, cplx base, int order) {
    Jet j(base, order);
    j.c_[0] = v;
    return j;
  }
  // The identity function z, expanded at base.
  static Jet variable(cplx base, int order) {
    Jet j(base, order);
    j.c_[0] = base;
    if (order >= 1) j.c_[1] = 1.0;
    return j;
  }

  int order() const { return order_; }
  cplx base_point() const { return base_; }
  cplx operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  cplx& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
  cplx value() const { return c_[0]; }

  // k-th derivative at the base point.
  cplx derivative(int k) const {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f * c_[static_cast<std::size_t>(k)];
  }

  Jet& operator+=(const Jet& o) {
    for (int k = 0; k <= order_; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int k = 0; k <= order_; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet& operator+=(cplx v) { c_[0] += v; return *this; }
  Jet& operator-=(cplx v) { c_[0] -= v; return *this; }
  Jet& operator*=(cplx v) {
    for (int k = 0; k <= order_; ++k) c_[k] *= v;
    return *this;
  }
  Jet& operator/=(cplx v) {
    for (int k = 0; k <= order_; ++k) c_[k] /= v;
    return *this;
  }
  Jet& operator*=(const Jet& o) { *this = mul(*this, o); return *this; }
  Jet& operator/=(const Jet& o) { *this = div(*this, o); return *this; }

  friend Jet mul(const Jet& a, const Jet& b) {
    Jet r(a.base_, a.order_);
    for (int k = 0; k <= a.order_; ++k) {
      cplx s = 0.0;
      for (int i = 0; i <= k; ++i) s += a.c_[i] * b.c_[k - i];
      r.c_[k] = s;
    }
    return r;
  }
  friend Jet div(const Jet& a, const Jet& b) {
    if (b.c_[0] == cplx(0.0)) raise(ErrorKind::JetDivisionByZero, "jet divisor has zero constant term");
    Jet r(a.base_, a.order_);
    const cplx inv = 1.0 / b.c_[0];
    for (int k = 0; k <= a.order_; ++k) {
      cplx s = a.c_[k];
      for (int i = 1; i <= k; ++i) s -= b.c_[i] * r.c_[k - i];
      r.c_[k] = s * inv;
    }
    return r;
  }

 private:
  std::array<cplx, kMaxJetOrder + 1> c_{};
  int order_ = 0;
  cplx base_{};
};

inline Jet operator-(Jet a) { a *= -1.0; return a; }
inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator*(const Jet& a, const Jet& b) { return mul(a, b); }
inline Jet operator/(const Jet& a, const Jet& b) { return div(a, b); }
inline Jet operator+(Jet a, cplx v) { return a += v; }
inline Jet operator+(cplx v, Jet a) { return a += v; }
inline Jet operator-(Jet a, cplx v) { return a -= v; }
inline Jet operator-(cplx v, const Jet& a) { return -a + v; }
inline Jet operator*(Jet a, cplx v) { return a *= v; }
inline Jet operator*(cplx v, Jet a) { return a *= v; }
inline Jet operator/(Jet a, cplx v) { return a /= v; }
inline Jet operator/(cplx v, const Jet& a) {
  return div(Jet::constant(v, a.base_point(), a.order()), a);
}
inline Jet operator+(Jet a, double v) { return a += cplx(v); }
inline Jet operator+(double v, Jet a) { return a += cplx(v); }
inline Jet operator-(Jet a, double v) { return a -= cplx(v); }
inline Jet operator-(double v, const Jet& a) { return -a + cplx(v); }
inline Jet operator*(Jet a, double v) { return a *= cplx(v); }
inline Jet operator*(double v, Jet a) { return a *= cplx(v); }
inline Jet operator/(Jet a, double v) { return a /= cplx(v); }
inline Jet operator/(double v, const Jet& a) { return cplx(v) / a; }

inline Jet exp(const Jet& g) {
  Jet h(g.base_point(), g.order());
  h[0] = std::exp(g[0]);
  for (int k = 1; k <= g.order(); ++k) {
    cplx s = 0.0;
    for (int j = 1; j <= k; ++j) s += static_cast<double>(j) * g[j] * h[k - j];
    h[k] = s / static_cast<double>(k);
  }
  return h;
}

// Principal log; requires g[0] off the branch cut for meaningful results.
inline Jet log(const Jet& g) {
  if (g[0] == cplx(0.0)) raise(ErrorKind::JetDivisionByZero, "log of jet with zero constant term");
  Jet h(g.base_point(), g.order());
  h[0] = std::log(g[0]);
  for (int k = 1; k <= g.order(); ++k) {
    cplx s = static_cast<double>(k) * g[k];
    for (int j = 1; j < k; ++j) s -= static_cast<double>(j) * h[j] * g[k - j];
    h[k] = s / (static_cast<double>(k) * g[0]);
  }
  return h;
}

// Uniform helpers so templated kernels run on cplx and Jet alike.
inline cplx value_of(cplx v) { return v; }
inline cplx value_of(const Jet& j) { return j.value(); }
inline double abs_value(cplx v) { return std::abs(v); }
inline double abs_value(const Jet& j) { return std::abs(j.value()); }

template <class S>
S lift(cplx v, const S& proto);
template <>
inline cplx lift<cplx>(cplx v, const cplx&) { return v; }
template <>
inline Jet lift<Jet>(cplx v, const Jet& proto) {
  return Jet::constant(v, proto.base_point(), proto.order());
}

template <class S>
S ipow(const S& x, int n) {
  S r = lift<S>(1.0, x);
  S b = x;
  while (n > 0) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

using std::exp;
using std::log;

}  // namespace jspec
