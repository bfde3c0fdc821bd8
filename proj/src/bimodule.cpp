// Copyright the qhm-lab contributors.
// SPDX-License-Identifier: Apache-2.0

#include "qhm/bimodule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qhm
{

namespace
{

bool overlaps(double a1, double b1, double a2, double b2)
{
  return std::min(b1, b2) - std::max(a1, a2) > 0.0;
}

std::vector<double> clip(std::vector<double> v, double lo, double hi)
{
  std::vector<double> out;
  for (double t : v)
  {
    if (t > lo && t < hi)
    {
      out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double a, double b) { return std::abs(a - b) < 1e-12; }),
            out.end());
  return out;
}

// Every point t + m * period inside (lo, hi).
void replicate(std::vector<double> &out, const std::vector<double> &pts, double period,
               double lo, double hi)
{
  period = std::abs(period);
  for (double t : pts)
  {
    const double m0 = std::ceil((lo - t) / period);
    for (double m = m0; t + m * period < hi; m += 1.0)
    {
      out.push_back(t + m * period);
    }
  }
}

// Integers k with lo <= k * step <= hi for a nonzero step of either sign.
std::pair<long, long> integer_window(double lo, double hi, double step)
{
  double a = lo / step, b = hi / step;
  if (a > b)
  {
    std::swap(a, b);
  }
  return {static_cast<long>(std::ceil(a - 1e-12)), static_cast<long>(std::floor(b + 1e-12))};
}

}  // namespace

XiElement::XiElement(const Params &params, double lo, double hi, std::vector<double> breaks,
                     XiJetFn fn)
{
  if (!(hi > lo))
  {
    hi = lo;
  }
  auto impl = std::make_shared<Impl>();
  impl->params = params;
  impl->lo = lo;
  impl->hi = hi;
  impl->breaks = clip(std::move(breaks), lo, hi);
  impl->fn = std::move(fn);
  impl_ = std::move(impl);
}

XiElement XiElement::zero(const Params &params)
{
  return XiElement(params, 0.0, 0.0, {}, [](double, double, int order) { return Jet(order, 0.0); });
}

Jet XiElement::jet(double x, double y, int order) const
{
  if (!(x >= impl_->lo && x <= impl_->hi) || impl_->hi <= impl_->lo)
  {
    return Jet(order, 0.0);
  }
  return impl_->fn(x, y, order);
}

TorusGrid XiElement::sample(int nx, int ny) const
{
  return TorusGrid::sample(lo(), hi(), nx, ny, false,
                           [&](double x, double y) { return (*this)(x, y); });
}

XiElement XiElement::from_samples(const Params &params, const TorusGrid &grid)
{
  if (grid.periodic_x() || grid.nx() < 10)
  {
    throw std::invalid_argument("XiElement::from_samples: need a non-periodic x grid, nx >= 10");
  }
  struct Data
  {
    double a, h;
    int n;
    std::vector<std::vector<cplx>> rows;
  };
  auto d = std::make_shared<Data>();
  d->a = grid.a();
  d->h = grid.hx();
  d->n = grid.nx();
  d->rows.resize(grid.nx());
  for (int i = 0; i < grid.nx(); i++)
  {
    std::vector<cplx> line(grid.ny());
    for (int j = 0; j < grid.ny(); j++)
    {
      line[j] = grid(i, j) / static_cast<double>(grid.ny());
    }
    d->rows[i] = fft(line);
  }
  auto row_series = [d](int i, double y, int order)
  {
    Series s(order, 0.0);
    if (i < 0 || i >= d->n)
    {
      return s;
    }
    const auto &C = d->rows[i];
    const int n = static_cast<int>(C.size());
    for (int k = 0; k < n; k++)
    {
      const int kk = (k < n / 2) ? k : k - n;
      if (2 * k == n)
      {
        s += phase_series(order, n / 2, y, 0.0) * (0.5 * C[k]);
        s += phase_series(order, -n / 2, y, 0.0) * (0.5 * C[k]);
      }
      else
      {
        s += phase_series(order, kk, y, 0.0) * C[k];
      }
    }
    return s;
  };
  return XiElement(params, grid.a(), grid.b(), {},
                   [d, row_series](double x, double y, int order)
                   {
                     constexpr int kNodes = 10;
                     const int i0 = static_cast<int>(std::floor((x - d->a) / d->h)) - 4;
                     std::array<double, kNodes> t{};
                     for (int m = 0; m < kNodes; m++)
                     {
                       t[m] = d->a + (i0 + m) * d->h - x;
                     }
                     Jet acc(order, 0.0);
                     for (int m = 0; m < kNodes; m++)
                     {
                       Series l(order, 1.0);
                       for (int k = 0; k < kNodes; k++)
                       {
                         if (k != m)
                         {
                           l = l * Series::variable(order, -t[k]) * cplx(1.0 / (t[m] - t[k]));
                         }
                       }
                       acc += Jet::outer(l, row_series(i0 + m, y, order));
                     }
                     return acc;
                   });
}

XiElement operator+(const XiElement &f, const XiElement &g)
{
  auto breaks = f.breaks();
  breaks.insert(breaks.end(), g.breaks().begin(), g.breaks().end());
  return XiElement(f.params(), std::min(f.lo(), g.lo()), std::max(f.hi(), g.hi()), breaks,
                   [f, g](double x, double y, int order)
                   { return f.jet(x, y, order) + g.jet(x, y, order); });
}

XiElement operator-(const XiElement &f, const XiElement &g)
{
  auto breaks = f.breaks();
  breaks.insert(breaks.end(), g.breaks().begin(), g.breaks().end());
  return XiElement(f.params(), std::min(f.lo(), g.lo()), std::max(f.hi(), g.hi()), breaks,
                   [f, g](double x, double y, int order)
                   { return f.jet(x, y, order) - g.jet(x, y, order); });
}

XiElement operator*(cplx s, const XiElement &f)
{
  return XiElement(f.params(), f.lo(), f.hi(), f.breaks(),
                   [f, s](double x, double y, int order) { return f.jet(x, y, order) * s; });
}

XiElement d_x(const XiElement &f)
{
  return XiElement(f.params(), f.lo(), f.hi(), f.breaks(),
                   [f](double x, double y, int order) { return f.jet(x, y, order + 1).d_x(); });
}

XiElement d_y(const XiElement &f)
{
  return XiElement(f.params(), f.lo(), f.hi(), f.breaks(),
                   [f](double x, double y, int order) { return f.jet(x, y, order + 1).d_y(); });
}

XiElement multiply(const XiElement &f, XiJetFn m)
{
  return XiElement(f.params(), f.lo(), f.hi(), f.breaks(),
                   [f, m](double x, double y, int order)
                   { return f.jet(x, y, order) * m(x, y, order); });
}

double sup_norm(const XiElement &f)
{
  double m = 0.0;
  constexpr int nx = 32, ny = 16;
  for (int i = 0; i < nx; i++)
  {
    const double x = f.lo() + (f.hi() - f.lo()) * (i + 0.37) / nx;
    for (int j = 0; j < ny; j++)
    {
      m = std::max(m, std::abs(f(x, (j + 0.13) / ny)));
    }
  }
  return m;
}

DElement inner_RD(const XiElement &f, const XiElement &g)
{
  const Params P = f.params();
  const double two_mu = 2.0 * P.mu;
  std::vector<int> support;
  if (f.hi() > f.lo() && g.hi() > g.lo())
  {
    const auto [p0, p1] = integer_window(f.lo() - g.hi() - 1.0, f.hi() - g.lo() + 1.0, two_mu);
    for (long p = p0; p <= p1; p++)
    {
      if (overlaps(f.lo(), f.hi(), g.lo() + p * two_mu, g.hi() + p * two_mu))
      {
        if (std::abs(p) > P.pmax)
        {
          throw std::out_of_range("inner_RD: p-support exceeds pmax");
        }
        support.push_back(static_cast<int>(p));
      }
    }
  }
  std::vector<double> breaks = f.breaks();
  for (int p : support)
  {
    for (double t : g.breaks())
    {
      breaks.push_back(t + p * two_mu);
    }
  }
  return DElement(
      P, support, breaks,
      [f, g, P](double x, double y, int p, int order)
      {
        Jet acc(order, 0.0);
        const double shift = 2.0 * p * P.mu;
        const long k0 = static_cast<long>(std::ceil(std::max(f.lo() - x, g.lo() - x + shift)));
        const long k1 = static_cast<long>(std::floor(std::min(f.hi() - x, g.hi() - x + shift)));
        for (long k = k0; k <= k1; k++)
        {
          const double a = -static_cast<double>(P.c) * k * p;
          const Jet phase = Jet::in_y(phase_series(order, a, y, -a * p * P.nu));
          acc += phase * f.jet(x + k, y, order) *
                 g.jet(x - shift + k, y - 2.0 * p * P.nu, order).conj();
        }
        return acc;
      });
}

EElement inner_LE(const XiElement &f, const XiElement &g)
{
  const Params P = f.params();
  const double two_mu = 2.0 * P.mu;
  std::vector<int> support;
  if (f.hi() > f.lo() && g.hi() > g.lo())
  {
    const long p0 = static_cast<long>(std::floor(g.lo() - f.hi())) - 1;
    const long p1 = static_cast<long>(std::ceil(g.hi() - f.lo())) + 1;
    for (long p = p0; p <= p1; p++)
    {
      if (overlaps(f.lo(), f.hi(), g.lo() - p, g.hi() - p))
      {
        if (std::abs(p) > P.pmax)
        {
          throw std::out_of_range("inner_LE: p-support exceeds pmax");
        }
        support.push_back(static_cast<int>(p));
      }
    }
  }
  std::vector<double> breaks = f.breaks();
  for (int p : support)
  {
    for (double t : g.breaks())
    {
      breaks.push_back(t - p);
    }
  }
  return EElement(
      P, support, breaks,
      [f, g, P, two_mu](double x, double y, int p, int order)
      {
        Jet acc(order, 0.0);
        const double lo = std::max(x - f.hi(), x + p - g.hi());
        const double hi = std::min(x - f.lo(), x + p - g.lo());
        if (lo > hi)
        {
          return acc;
        }
        const auto [k0, k1] = integer_window(lo, hi, two_mu);
        for (long k = k0; k <= k1; k++)
        {
          const double a = static_cast<double>(P.c) * p * k;
          const Jet phase = Jet::in_y(phase_series(order, a, y, -a * k * P.nu));
          const double xs = x - k * two_mu, ys = y - 2.0 * k * P.nu;
          acc += phase * f.jet(xs, ys, order).conj() * g.jet(xs + p, ys, order);
        }
        return acc;
      });
}

XiElement act_left(const EElement &e, const XiElement &f)
{
  const Params P = f.params();
  if (e.support().empty() || f.hi() <= f.lo())
  {
    return XiElement::zero(P);
  }
  double lo = 1e300, hi = -1e300;
  for (int q : e.support())
  {
    lo = std::min(lo, f.lo() - q);
    hi = std::max(hi, f.hi() - q);
  }
  std::vector<double> breaks;
  for (int q : e.support())
  {
    for (double t : f.breaks())
    {
      breaks.push_back(t - q);
    }
  }
  replicate(breaks, e.breaks(), 2.0 * P.mu, lo, hi);
  return XiElement(P, lo, hi, breaks,
                   [e, f](double x, double y, int order)
                   {
                     Jet acc(order, 0.0);
                     for (int q : e.support())
                     {
                       if (x + q < f.lo() || x + q > f.hi())
                       {
                         continue;
                       }
                       acc += e.jet(x, y, q, order).conj() * f.jet(x + q, y, order);
                     }
                     return acc;
                   });
}

XiElement act_right(const XiElement &f, const DElement &a)
{
  const Params P = f.params();
  if (a.support().empty() || f.hi() <= f.lo())
  {
    return XiElement::zero(P);
  }
  double lo = 1e300, hi = -1e300;
  for (int q : a.support())
  {
    lo = std::min(lo, f.lo() - 2.0 * q * P.mu);
    hi = std::max(hi, f.hi() - 2.0 * q * P.mu);
  }
  std::vector<double> breaks;
  std::vector<double> shifted;
  for (int q : a.support())
  {
    for (double t : f.breaks())
    {
      breaks.push_back(t - 2.0 * q * P.mu);
    }
    for (double t : a.breaks())
    {
      shifted.push_back(t - 2.0 * q * P.mu);
    }
  }
  replicate(breaks, shifted, 1.0, lo, hi);
  return XiElement(P, lo, hi, breaks,
                   [f, a, P](double x, double y, int order)
                   {
                     Jet acc(order, 0.0);
                     for (int q : a.support())
                     {
                       const double xs = x + 2.0 * q * P.mu, ys = y + 2.0 * q * P.nu;
                       if (xs < f.lo() || xs > f.hi())
                       {
                         continue;
                       }
                       acc += f.jet(xs, ys, order) * a.jet(xs, ys, q, order).conj();
                     }
                     return acc;
                   });
}

const char *to_string(Smoothstep s)
{
  return s == Smoothstep::cubic ? "cubic" : "septic";
}

Smoothstep smoothstep_from_string(const std::string &name)
{
  if (name == "cubic")
  {
    return Smoothstep::cubic;
  }
  if (name == "septic")
  {
    return Smoothstep::septic;
  }
  throw std::invalid_argument("unknown smoothstep profile: " + name);
}

Series smoothstep_series(Smoothstep s, const Series &t)
{
  static constexpr double cubic[] = {0.0, 0.0, 3.0, -2.0};
  static constexpr double septic[] = {0.0, 0.0, 0.0, 0.0, 35.0, -84.0, 70.0, -20.0};
  return s == Smoothstep::cubic ? polynomial(cubic, 3, t) : polynomial(septic, 7, t);
}

Series KangR::series(double x, int order) const
{
  const double half = 0.5 * mu;
  if (x <= -mu || x >= mu + half)
  {
    return Series(order, 0.0);
  }
  if (x < -half)
  {
    Series t = Series::variable(order, (x + mu) / half);
    for (int k = 1; k <= order; k++)
    {
      t[k] /= std::pow(half, k);
    }
    return sin(smoothstep_series(profile, t) * cplx(0.5 * kPi));
  }
  if (x <= mu)
  {
    return Series(order, 1.0);
  }
  Series t = Series::variable(order, (x - mu) / half);
  for (int k = 1; k <= order; k++)
  {
    t[k] /= std::pow(half, k);
  }
  return cos(smoothstep_series(profile, t) * cplx(0.5 * kPi));
}

KangR kang_generator(const Params &params, Smoothstep profile)
{
  params.validate();
  if (!(params.mu > 0.0 && params.mu < 0.5))
  {
    throw std::domain_error("mu out of range: the generator needs 0 < mu < 1/2");
  }
  const double mu = params.mu;
  auto shape = std::make_shared<KangR>(KangR{mu, profile, XiElement::zero(params)});
  XiElement element(params, -mu, 1.5 * mu, {-mu, -0.5 * mu, mu, 1.5 * mu},
                    [shape](double x, double, int order)
                    { return Jet::in_x(shape->series(x, order)); });
  return KangR{mu, profile, element};
}

KangR kang_R(const Params &params, Smoothstep profile)
{
  params.validate_kang();
  return kang_generator(params, profile);
}

KangProjection kang_projection(const Params &params, Smoothstep profile)
{
  KangR R = kang_R(params, profile);
  DElement P = inner_RD(R.element, R.element);
  const double idem = sup_distance(star_D(P, P), P);
  const double adj = sup_distance(involution_D(P), P);
  return {P, R, idem, adj};
}

}  // namespace qhm
