// Copyright the qhm-lab contributors.
// SPDX-License-Identifier: Apache-2.0

#include "qhm/jet.hpp"

#include <algorithm>
#include <stdexcept>

namespace qhm
{

namespace
{

void check_order(int order)
{
  if (order < 0 || order > kMaxJetOrder)
  {
    throw std::out_of_range("jet order outside [0, " + std::to_string(kMaxJetOrder) + "]");
  }
}

constexpr double factorial(int n)
{
  double f = 1.0;
  for (int k = 2; k <= n; k++)
  {
    f *= k;
  }
  return f;
}

}  // namespace

Series::Series(int order, cplx constant) : order_(order)
{
  check_order(order);
  a_[0] = constant;
}

Series Series::variable(int order, double at)
{
  Series s(order, at);
  if (order >= 1)
  {
    s.a_[1] = 1.0;
  }
  return s;
}

Series &Series::operator+=(const Series &o)
{
  order_ = std::min(order_, o.order_);
  for (int i = 0; i <= order_; i++)
  {
    a_[i] += o.a_[i];
  }
  return *this;
}

Series &Series::operator-=(const Series &o)
{
  order_ = std::min(order_, o.order_);
  for (int i = 0; i <= order_; i++)
  {
    a_[i] -= o.a_[i];
  }
  return *this;
}

Series &Series::operator*=(cplx s)
{
  for (int i = 0; i <= order_; i++)
  {
    a_[i] *= s;
  }
  return *this;
}

Series operator*(const Series &a, const Series &b)
{
  Series r(std::min(a.order_, b.order_), 0.0);
  for (int k = 0; k <= r.order_; k++)
  {
    cplx acc = 0.0;
    for (int j = 0; j <= k; j++)
    {
      acc += a.a_[j] * b.a_[k - j];
    }
    r.a_[k] = acc;
  }
  return r;
}

Series exp(const Series &a)
{
  const int n = a.order();
  Series b(n, std::exp(a[0]));
  for (int k = 1; k <= n; k++)
  {
    cplx acc = 0.0;
    for (int j = 1; j <= k; j++)
    {
      acc += static_cast<double>(j) * a[j] * b[k - j];
    }
    b[k] = acc / static_cast<double>(k);
  }
  return b;
}

namespace
{

void sincos_series(const Series &a, Series &s, Series &c)
{
  const int n = a.order();
  s = Series(n, std::sin(a[0]));
  c = Series(n, std::cos(a[0]));
  for (int k = 1; k <= n; k++)
  {
    cplx as = 0.0, ac = 0.0;
    for (int j = 1; j <= k; j++)
    {
      as += static_cast<double>(j) * a[j] * c[k - j];
      ac += static_cast<double>(j) * a[j] * s[k - j];
    }
    s[k] = as / static_cast<double>(k);
    c[k] = -ac / static_cast<double>(k);
  }
}

}  // namespace

Series sin(const Series &a)
{
  Series s, c;
  sincos_series(a, s, c);
  return s;
}

Series cos(const Series &a)
{
  Series s, c;
  sincos_series(a, s, c);
  return c;
}

Series polynomial(const double *coeffs, int degree, const Series &s)
{
  Series r(s.order(), coeffs[degree]);
  for (int k = degree - 1; k >= 0; k--)
  {
    r = r * s + cplx(coeffs[k]);
  }
  return r;
}

Jet::Jet(int order, cplx constant) : order_(order)
{
  check_order(order);
  t_[0] = constant;
}

Jet Jet::outer(const Series &sx, const Series &sy)
{
  Jet r(std::min(sx.order(), sy.order()), 0.0);
  for (int d = 0; d <= r.order_; d++)
  {
    for (int j = 0; j <= d; j++)
    {
      r.at(d - j, j) = sx[d - j] * sy[j];
    }
  }
  return r;
}

Jet Jet::in_x(const Series &sx)
{
  Jet r(sx.order(), 0.0);
  for (int i = 0; i <= r.order_; i++)
  {
    r.at(i, 0) = sx[i];
  }
  return r;
}

Jet Jet::in_y(const Series &sy)
{
  Jet r(sy.order(), 0.0);
  for (int j = 0; j <= r.order_; j++)
  {
    r.at(0, j) = sy[j];
  }
  return r;
}

cplx Jet::derivative(int i, int j) const
{
  if (i + j > order_)
  {
    throw std::out_of_range("jet derivative beyond truncation order");
  }
  return at(i, j) * factorial(i) * factorial(j);
}

Jet Jet::d_x() const
{
  if (order_ == 0)
  {
    throw std::out_of_range("cannot differentiate an order-0 jet");
  }
  Jet r(order_ - 1, 0.0);
  for (int d = 0; d <= r.order_; d++)
  {
    for (int j = 0; j <= d; j++)
    {
      const int i = d - j;
      r.at(i, j) = static_cast<double>(i + 1) * at(i + 1, j);
    }
  }
  return r;
}

Jet Jet::d_y() const
{
  if (order_ == 0)
  {
    throw std::out_of_range("cannot differentiate an order-0 jet");
  }
  Jet r(order_ - 1, 0.0);
  for (int d = 0; d <= r.order_; d++)
  {
    for (int j = 0; j <= d; j++)
    {
      r.at(d - j, j) = static_cast<double>(j + 1) * at(d - j, j + 1);
    }
  }
  return r;
}

Jet Jet::conj() const
{
  Jet r = *this;
  for (int k = 0; k < size(order_); k++)
  {
    r.t_[k] = std::conj(t_[k]);
  }
  return r;
}

Jet Jet::truncated(int order) const
{
  Jet r = *this;
  r.order_ = std::min(order_, order);
  return r;
}

Jet &Jet::operator+=(const Jet &o)
{
  order_ = std::min(order_, o.order_);
  for (int k = 0; k < size(order_); k++)
  {
    t_[k] += o.t_[k];
  }
  return *this;
}

Jet &Jet::operator-=(const Jet &o)
{
  order_ = std::min(order_, o.order_);
  for (int k = 0; k < size(order_); k++)
  {
    t_[k] -= o.t_[k];
  }
  return *this;
}

Jet &Jet::operator*=(cplx s)
{
  for (int k = 0; k < size(order_); k++)
  {
    t_[k] *= s;
  }
  return *this;
}

Jet operator*(const Jet &a, const Jet &b)
{
  const int n = std::min(a.order_, b.order_);
  if (n == 0)
  {
    return Jet(0, a.t_[0] * b.t_[0]);
  }
  Jet r(n, 0.0);
  for (int d = 0; d <= n; d++)
  {
    for (int j = 0; j <= d; j++)
    {
      const int i = d - j;
      cplx acc = 0.0;
      for (int i1 = 0; i1 <= i; i1++)
      {
        for (int j1 = 0; j1 <= j; j1++)
        {
          acc += a.at(i1, j1) * b.at(i - i1, j - j1);
        }
      }
      r.at(i, j) = acc;
    }
  }
  return r;
}

}  // namespace qhm
