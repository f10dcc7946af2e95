#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace srf {

// Forward-mode first derivative with N independent seeds. Covers exactly the
// operations the dual-edge length formulas need: field arithmetic and sqrt.
template <class T, std::size_t N>
struct Dual {
  T v{};
  std::array<T, N> d{};

  Dual() { d.fill(T(0)); }
  Dual(T c) : v(c) { d.fill(T(0)); }  // NOLINT: implicit by design

  static Dual var(T c, std::size_t slot) {
    Dual x(c);
    x.d[slot] = T(1);
    return x;
  }

  Dual operator-() const {
    Dual r;
    r.v = -v;
    for (std::size_t k = 0; k < N; ++k) r.d[k] = -d[k];
    return r;
  }

  friend Dual operator+(const Dual& a, const Dual& b) {
    Dual r;
    r.v = a.v + b.v;
    for (std::size_t k = 0; k < N; ++k) r.d[k] = a.d[k] + b.d[k];
    return r;
  }
  friend Dual operator-(const Dual& a, const Dual& b) {
    Dual r;
    r.v = a.v - b.v;
    for (std::size_t k = 0; k < N; ++k) r.d[k] = a.d[k] - b.d[k];
    return r;
  }
  friend Dual operator*(const Dual& a, const Dual& b) {
    Dual r;
    r.v = a.v * b.v;
    for (std::size_t k = 0; k < N; ++k) r.d[k] = a.d[k] * b.v + a.v * b.d[k];
    return r;
  }
  friend Dual operator/(const Dual& a, const Dual& b) {
    Dual r;
    r.v = a.v / b.v;
    const T ib2 = T(1) / (b.v * b.v);
    for (std::size_t k = 0; k < N; ++k) r.d[k] = (a.d[k] * b.v - a.v * b.d[k]) * ib2;
    return r;
  }

  Dual& operator+=(const Dual& o) { return *this = *this + o; }
  Dual& operator-=(const Dual& o) { return *this = *this - o; }
  Dual& operator*=(const Dual& o) { return *this = *this * o; }
  Dual& operator/=(const Dual& o) { return *this = *this / o; }
};

template <class T, std::size_t N>
Dual<T, N> sqrt(const Dual<T, N>& x) {
  using std::sqrt;
  Dual<T, N> r;
  r.v = sqrt(x.v);
  const T half_inv = T(1) / (T(2) * r.v);
  for (std::size_t k = 0; k < N; ++k) r.d[k] = x.d[k] * half_inv;
  return r;
}

inline double value_of(double x) { return x; }
inline double value_of(long double x) { return static_cast<double>(x); }
template <class T, std::size_t N>
double value_of(const Dual<T, N>& x) {
  return static_cast<double>(x.v);
}

}  // namespace srf
