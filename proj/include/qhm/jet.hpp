// Copyright the qhm-lab contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <complex>

namespace qhm
{

using cplx = std::complex<double>;

inline constexpr int kMaxJetOrder = 5;

// Truncated univariate power series a_0 + a_1 h + ... + a_n h^n.
class Series
{
public:
  Series() = default;
  Series(int order, cplx constant);

  // h -> at + h
  static Series variable(int order, double at);

  int order() const { return order_; }
  cplx &operator[](int i) { return a_[i]; }
  const cplx &operator[](int i) const { return a_[i]; }

  Series &operator+=(const Series &o);
  Series &operator-=(const Series &o);
  Series &operator*=(cplx s);

  friend Series operator+(Series a, const Series &b) { return a += b; }
  friend Series operator-(Series a, const Series &b) { return a -= b; }
  friend Series operator*(Series a, cplx s) { return a *= s; }
  friend Series operator*(cplx s, Series a) { return a *= s; }
  friend Series operator*(const Series &a, const Series &b);
  friend Series operator+(Series a, cplx s)
  {
    a.a_[0] += s;
    return a;
  }

private:
  int order_ = 0;
  std::array<cplx, kMaxJetOrder + 1> a_{};
};

Series exp(const Series &a);
Series sin(const Series &a);
Series cos(const Series &a);
// Evaluates sum_k coeffs[k] s^k by Horner's rule.
Series polynomial(const double *coeffs, int degree, const Series &s);

// Truncated bivariate Taylor expansion sum_{i+j<=n} t_ij hx^i hy^j of a
// function around a point (x, y).
class Jet
{
public:
  Jet() = default;
  Jet(int order, cplx constant);

  static Jet outer(const Series &sx, const Series &sy);
  static Jet in_x(const Series &sx);
  static Jet in_y(const Series &sy);

  int order() const { return order_; }
  cplx &at(int i, int j) { return t_[index(i, j)]; }
  const cplx &at(int i, int j) const { return t_[index(i, j)]; }
  cplx value() const { return t_[0]; }
  // Partial derivative d^{i+j} / dx^i dy^j at the expansion point.
  cplx derivative(int i, int j) const;

  Jet d_x() const;
  Jet d_y() const;
  Jet conj() const;
  Jet truncated(int order) const;

  Jet &operator+=(const Jet &o);
  Jet &operator-=(const Jet &o);
  Jet &operator*=(cplx s);
  friend Jet operator+(Jet a, const Jet &b) { return a += b; }
  friend Jet operator-(Jet a, const Jet &b) { return a -= b; }
  friend Jet operator*(Jet a, cplx s) { return a *= s; }
  friend Jet operator*(cplx s, Jet a) { return a *= s; }
  friend Jet operator*(const Jet &a, const Jet &b);

  static constexpr int index(int i, int j) { return (i + j) * (i + j + 1) / 2 + j; }
  static constexpr int size(int order) { return (order + 1) * (order + 2) / 2; }

private:
  int order_ = 0;
  std::array<cplx, (kMaxJetOrder + 1) * (kMaxJetOrder + 2) / 2> t_{};
};

}  // namespace qhm
