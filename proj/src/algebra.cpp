// Copyright the qhm-lab contributors.
// SPDX-License-Identifier: Apache-2.0

#include "qhm/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace qhm
{

LieVector bracket(const LieVector &v, const LieVector &w, int c)
{
  return {0.0, 0.0, c * (v.x * w.y - v.y * w.x)};
}

namespace
{

template <Algebra A>
double domain_start(const Params &p)
{
  return A == Algebra::D ? 0.0 : std::min(0.0, 2.0 * p.mu);
}

template <Algebra A>
double domain_length(const Params &p)
{
  return A == Algebra::D ? 1.0 : std::abs(2.0 * p.mu);
}

void check_support(const std::vector<int> &support, const Params &params, const char *who)
{
  for (int p : support)
  {
    if (std::abs(p) > params.pmax)
    {
      throw std::out_of_range(std::string(who) + ": p-support exceeds pmax");
    }
  }
}

void check_same(const Params &a, const Params &b, const char *who)
{
  if (!(a == b))
  {
    throw std::invalid_argument(std::string(who) + ": operands have different params");
  }
}

std::vector<int> sumset(const std::vector<int> &a, const std::vector<int> &b)
{
  std::set<int> s;
  for (int p : a)
  {
    for (int q : b)
    {
      s.insert(p + q);
    }
  }
  return {s.begin(), s.end()};
}

std::vector<int> union_of(const std::vector<int> &a, const std::vector<int> &b)
{
  std::set<int> s(a.begin(), a.end());
  s.insert(b.begin(), b.end());
  return {s.begin(), s.end()};
}

std::vector<double> concat(std::vector<double> a, const std::vector<double> &b)
{
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

int floor_div(int a, int b)
{
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
  {
    q--;
  }
  return q;
}

// sum_k C[k] e(k y) for trigonometric interpolation coefficients C (the
// Nyquist term split symmetrically), as a power series in y.
Series trig_series(const std::vector<cplx> &C, double y, int order)
{
  const int n = static_cast<int>(C.size());
  Series s(order, 0.0);
  for (int k = 0; k < n; k++)
  {
    if (C[k] == 0.0)
    {
      continue;
    }
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
}

struct SampledData
{
  Algebra algebra;
  Params params;
  int cocycle_c;
  double a, length;
  int N;
  // p -> per x node, trigonometric coefficients in y
  std::map<int, std::vector<std::vector<cplx>>> coeffs;
};

Series ghost_row(const SampledData &d, int p, int i, double y, int order)
{
  const int ip = ((i % d.N) + d.N) % d.N;
  const int k = floor_div(i, d.N);
  const auto &C = d.coeffs.at(p)[ip];
  const double cc = static_cast<double>(d.cocycle_c) * p * k;
  if (d.algebra == Algebra::D)
  {
    return trig_series(C, y, order) * phase_series(order, cc, y, -cc * p * d.params.nu);
  }
  return trig_series(C, y - 2.0 * k * d.params.nu, order) *
         phase_series(order, cc, y, -cc * k * d.params.nu);
}

Jet sampled_jet(const SampledData &d, double x, double y, int p, int order)
{
  constexpr int kNodes = 10;
  const double h = d.length / d.N;
  const int i0 = static_cast<int>(std::floor((x - d.a) / h)) - kNodes / 2 + 1;
  std::array<double, kNodes> t{};
  for (int m = 0; m < kNodes; m++)
  {
    t[m] = d.a + (i0 + m) * h - x;
  }
  Jet acc(order, 0.0);
  for (int m = 0; m < kNodes; m++)
  {
    Series l(order, 1.0);
    for (int k = 0; k < kNodes; k++)
    {
      if (k == m)
      {
        continue;
      }
      Series f = Series::variable(order, -t[k]);
      l = l * f * cplx(1.0 / (t[m] - t[k]));
    }
    acc += Jet::outer(l, ghost_row(d, p, i0 + m, y, order));
  }
  return acc;
}

}  // namespace

template <Algebra A>
Element<A>::Element(const Params &params, std::vector<int> support, std::vector<double> breaks,
                    JetFn fn)
{
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  auto impl = std::make_shared<Impl>();
  impl->params = params;
  impl->support = std::move(support);
  impl->breaks =
      reduce_breaks(breaks, domain_start<A>(params), domain_length<A>(params));
  impl->fn = std::move(fn);
  impl_ = std::move(impl);
}

template <Algebra A>
Element<A> Element<A>::zero(const Params &params)
{
  return Element(params, {}, {}, [](double, double, int, int order) { return Jet(order, 0.0); });
}

template <Algebra A>
Element<A> Element<A>::identity(const Params &params)
{
  return Element(params, {0}, {},
                 [](double, double, int, int order) { return Jet(order, 1.0); });
}

template <Algebra A>
bool Element<A>::supports(int p) const
{
  return std::binary_search(impl_->support.begin(), impl_->support.end(), p);
}

template <Algebra A>
double Element<A>::period() const
{
  return domain_length<A>(impl_->params);
}

template <Algebra A>
Jet Element<A>::jet(double x, double y, int p, int order) const
{
  if (!supports(p))
  {
    return Jet(order, 0.0);
  }
  return impl_->fn(x, y, p, order);
}

template <Algebra A>
std::map<int, TorusGrid> Element<A>::sample(int nx, int ny) const
{
  const double a = domain_start<A>(params());
  const double L = domain_length<A>(params());
  std::map<int, TorusGrid> out;
  for (int p : support())
  {
    out.emplace(p, TorusGrid::sample(a, a + L, nx, ny, true,
                                     [&](double x, double y) { return (*this)(x, y, p); }));
  }
  return out;
}

template <Algebra A>
Element<A> Element<A>::from_samples(const Params &params, const std::map<int, TorusGrid> &grids,
                                    int cocycle_c)
{
  if (A == Algebra::E && params.mu <= 0.0)
  {
    throw std::invalid_argument("sampled E elements need mu > 0");
  }
  auto d = std::make_shared<SampledData>();
  d->algebra = A;
  d->params = params;
  d->cocycle_c = cocycle_c;
  d->a = domain_start<A>(params);
  d->length = domain_length<A>(params);
  d->N = -1;
  std::vector<int> support;
  for (const auto &[p, g] : grids)
  {
    if (d->N < 0)
    {
      d->N = g.nx();
    }
    if (g.nx() != d->N || g.nx() < 10 || std::abs(g.a() - d->a) > 1e-12 ||
        std::abs(g.b() - g.a() - d->length) > 1e-12)
    {
      throw std::invalid_argument("from_samples: grids do not cover the fundamental domain");
    }
    support.push_back(p);
    std::vector<std::vector<cplx>> rows(g.nx());
    for (int i = 0; i < g.nx(); i++)
    {
      std::vector<cplx> line(g.ny());
      for (int j = 0; j < g.ny(); j++)
      {
        line[j] = g(i, j);
      }
      rows[i] = fft(line);
      for (auto &v : rows[i])
      {
        v /= static_cast<double>(g.ny());
      }
    }
    d->coeffs.emplace(p, std::move(rows));
  }
  check_support(support, params, "from_samples");
  return Element(params, support, {},
                 [d](double x, double y, int p, int order)
                 { return sampled_jet(*d, x, y, p, order); });
}

template <Algebra A>
Element<A> operator+(const Element<A> &a, const Element<A> &b)
{
  check_same(a.params(), b.params(), "add");
  return Element<A>(a.params(), union_of(a.support(), b.support()),
                    concat(a.breaks(), b.breaks()),
                    [a, b](double x, double y, int p, int order)
                    { return a.jet(x, y, p, order) + b.jet(x, y, p, order); });
}

template <Algebra A>
Element<A> operator-(const Element<A> &a, const Element<A> &b)
{
  check_same(a.params(), b.params(), "subtract");
  return Element<A>(a.params(), union_of(a.support(), b.support()),
                    concat(a.breaks(), b.breaks()),
                    [a, b](double x, double y, int p, int order)
                    { return a.jet(x, y, p, order) - b.jet(x, y, p, order); });
}

template <Algebra A>
Element<A> operator*(cplx s, const Element<A> &a)
{
  return Element<A>(a.params(), a.support(), a.breaks(),
                    [a, s](double x, double y, int p, int order)
                    { return a.jet(x, y, p, order) * s; });
}

template <Algebra A>
Element<A> x_function(const Params &params, std::function<Series(double, int)> f,
                      std::vector<double> breaks)
{
  return Element<A>(params, {0}, std::move(breaks),
                    [f](double x, double, int, int order) { return Jet::in_x(f(x, order)); });
}

DElement star_D(const DElement &a, const DElement &b)
{
  check_same(a.params(), b.params(), "star_D");
  const Params &P = a.params();
  auto support = sumset(a.support(), b.support());
  check_support(support, P, "star_D");
  std::vector<double> breaks = a.breaks();
  for (int q : a.support())
  {
    for (double t : b.breaks())
    {
      breaks.push_back(t + 2.0 * q * P.mu);
    }
  }
  return DElement(P, support, breaks,
                  [a, b, mu = P.mu, nu = P.nu](double x, double y, int p, int order)
                  {
                    Jet acc(order, 0.0);
                    for (int q : a.support())
                    {
                      if (!b.supports(p - q))
                      {
                        continue;
                      }
                      acc += a.jet(x, y, q, order) *
                             b.jet(x - 2.0 * q * mu, y - 2.0 * q * nu, p - q, order);
                    }
                    return acc;
                  });
}

EElement star_E(const EElement &a, const EElement &b)
{
  check_same(a.params(), b.params(), "star_E");
  const Params &P = a.params();
  auto support = sumset(a.support(), b.support());
  check_support(support, P, "star_E");
  std::vector<double> breaks = a.breaks();
  for (int q : a.support())
  {
    for (double t : b.breaks())
    {
      breaks.push_back(t - q);
    }
  }
  return EElement(P, support, breaks,
                  [a, b](double x, double y, int p, int order)
                  {
                    Jet acc(order, 0.0);
                    for (int q : a.support())
                    {
                      if (!b.supports(p - q))
                      {
                        continue;
                      }
                      acc += a.jet(x, y, q, order) * b.jet(x + q, y, p - q, order);
                    }
                    return acc;
                  });
}

DElement involution_D(const DElement &a)
{
  const Params &P = a.params();
  std::vector<int> support;
  std::vector<double> breaks;
  for (int p : a.support())
  {
    support.push_back(-p);
    for (double t : a.breaks())
    {
      breaks.push_back(t - 2.0 * p * P.mu);
    }
  }
  return DElement(P, support, breaks,
                  [a, mu = P.mu, nu = P.nu](double x, double y, int p, int order)
                  { return a.jet(x - 2.0 * p * mu, y - 2.0 * p * nu, -p, order).conj(); });
}

EElement involution_E(const EElement &a)
{
  std::vector<int> support;
  std::vector<double> breaks;
  for (int p : a.support())
  {
    support.push_back(-p);
    for (double t : a.breaks())
    {
      breaks.push_back(t + p);
    }
  }
  return EElement(a.params(), support, breaks,
                  [a](double x, double y, int p, int order)
                  { return a.jet(x + p, y, -p, order).conj(); });
}

DElement derive_D(const LieVector &v, const DElement &a)
{
  const Params &P = a.params();
  return DElement(
      P, a.support(), a.breaks(),
      [a, v, c = P.c, mu = P.mu](double x, double y, int p, int order)
      {
        const Jet J = a.jet(x, y, p, order + 1);
        const Jet J0 = J.truncated(order);
        Jet r(order, 0.0);
        if (v.x != 0.0)
        {
          const Jet m = Jet::in_x(Series::variable(order, x - p * mu)) *
                        cplx(0.0, kTwoPi * c * p);
          r += (m * J0 - J.d_y()) * v.x;
        }
        if (v.y != 0.0)
        {
          r -= J.d_x() * v.y;
        }
        if (v.z != 0.0)
        {
          r += J0 * cplx(0.0, kTwoPi * p * v.z);
        }
        return r;
      });
}

EElement derive_E(const LieVector &v, const EElement &a)
{
  const Params &P = a.params();
  return EElement(
      P, a.support(), a.breaks(),
      [a, v, c = P.c, mu = P.mu](double x, double y, int p, int order)
      {
        const Jet J = a.jet(x, y, p, order + 1);
        const Jet J0 = J.truncated(order);
        Jet r(order, 0.0);
        if (v.x != 0.0)
        {
          const Jet m = Jet::in_x(Series::variable(order, x + 0.5 * p)) *
                        cplx(0.0, kPi * c * p / mu);
          r += (m * J0 - J.d_y()) * v.x;
        }
        if (v.y != 0.0)
        {
          r -= J.d_x() * v.y;
        }
        if (v.z != 0.0)
        {
          r += J0 * cplx(0.0, kPi * p * v.z / mu);
        }
        return r;
      });
}

cplx trace_D(const DElement &a)
{
  if (!a.supports(0))
  {
    return 0.0;
  }
  const Params &P = a.params();
  const auto rule = gauss_panels(0.0, 1.0, a.breaks(), 16.0 / P.nx);
  return integrate_xy([&](double x, double y) { return a(x, y, 0); }, rule, P.ny);
}

cplx trace_E(const EElement &a)
{
  if (!a.supports(0))
  {
    return 0.0;
  }
  const Params &P = a.params();
  const double lo = std::min(0.0, 2.0 * P.mu), hi = std::max(0.0, 2.0 * P.mu);
  const auto rule = gauss_panels(lo, hi, a.breaks(), 16.0 / P.nx);
  const double orientation = P.mu > 0.0 ? 1.0 : -1.0;
  return orientation *
         integrate_xy([&](double x, double y) { return a(x, y, 0); }, rule, P.ny);
}

namespace
{

constexpr int kProbe = 16;

template <Algebra A>
std::vector<int> probe_ps(const Element<A> &a)
{
  std::set<int> s(a.support().begin(), a.support().end());
  for (int p = -2; p <= 2; p++)
  {
    s.insert(p);
  }
  return {s.begin(), s.end()};
}

template <Algebra A, class F>
double probe_max(const Element<A> &a, F &&f)
{
  const double x0 = domain_start<A>(a.params()), L = domain_length<A>(a.params());
  double m = 0.0;
  for (int p : probe_ps(a))
  {
    for (int i = 0; i < kProbe; i++)
    {
      const double x = x0 + L * (i + 0.31) / kProbe;
      for (int j = 0; j < kProbe; j++)
      {
        const double y = (j + 0.17) / kProbe;
        m = std::max(m, f(x, y, p));
      }
    }
  }
  return m;
}

}  // namespace

double check_invariance(const DElement &a)
{
  const Params &P = a.params();
  return probe_max(a,
                   [&](double x, double y, int p)
                   {
                     double m = 0.0;
                     for (int k : {-2, -1, 1, 2})
                     {
                       const cplx lhs = a(x + k, y, p);
                       const cplx rhs =
                           e_phase(static_cast<double>(P.c) * k * p * (y - p * P.nu)) *
                           a(x, y, p);
                       m = std::max(m, std::abs(lhs - rhs));
                     }
                     return m;
                   });
}

double check_invariance(const EElement &a)
{
  const Params &P = a.params();
  return probe_max(a,
                   [&](double x, double y, int p)
                   {
                     double m = 0.0;
                     for (int k : {-2, -1, 1, 2})
                     {
                       const cplx lhs = a(x - 2.0 * k * P.mu, y - 2.0 * k * P.nu, p);
                       const cplx rhs =
                           std::conj(e_phase(static_cast<double>(P.c) * p * k * (y - k * P.nu))) *
                           a(x, y, p);
                       m = std::max(m, std::abs(lhs - rhs));
                     }
                     return m;
                   });
}

template <Algebra A>
double sup_norm(const Element<A> &a)
{
  return probe_max(a, [&](double x, double y, int p) { return std::abs(a(x, y, p)); });
}

template class Element<Algebra::D>;
template class Element<Algebra::E>;
template DElement operator+(const DElement &, const DElement &);
template EElement operator+(const EElement &, const EElement &);
template DElement operator-(const DElement &, const DElement &);
template EElement operator-(const EElement &, const EElement &);
template DElement operator*(cplx, const DElement &);
template EElement operator*(cplx, const EElement &);
template DElement x_function<Algebra::D>(const Params &, std::function<Series(double, int)>,
                                         std::vector<double>);
template EElement x_function<Algebra::E>(const Params &, std::function<Series(double, int)>,
                                         std::vector<double>);
template double sup_norm(const DElement &);
template double sup_norm(const EElement &);

}  // namespace qhm
