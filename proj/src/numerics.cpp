// Copyright the qhm-lab contributors.
// SPDX-License-Identifier: Apache-2.0

#include "qhm/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>
#include <fftw3.h>

namespace qhm
{

void Params::validate() const
{
  if (c < 1)
  {
    throw std::invalid_argument("c must be a positive integer");
  }
  if (mu == 0.0 || !std::isfinite(mu) || !std::isfinite(nu))
  {
    throw std::invalid_argument("mu must be finite and nonzero, nu finite");
  }
  if (nx < 16 || ny < 16 || nx % 2 != 0 || ny % 2 != 0)
  {
    throw std::invalid_argument("nx and ny must be even and at least 16");
  }
  if (pmax < 1)
  {
    throw std::invalid_argument("pmax must be at least 1");
  }
}

void Params::validate_kang() const
{
  validate();
  if (!(mu > 0.0 && mu < 0.25))
  {
    throw std::domain_error("mu out of range: the Kang generator needs 0 < mu < 1/4");
  }
}

cplx e_phase(double t)
{
  // Reduce first so large arguments keep full relative accuracy.
  const double r = t - std::round(t);
  return {std::cos(kTwoPi * r), std::sin(kTwoPi * r)};
}

Series phase_series(int order, double a, double t, double b)
{
  Series s(order, e_phase(a * t + b));
  const cplx w = cplx(0.0, kTwoPi * a);
  cplx f = 1.0;
  for (int k = 1; k <= order; k++)
  {
    f *= w / static_cast<double>(k);
    s[k] = s[0] * f;
  }
  return s;
}

TorusGrid::TorusGrid(double a, double b, int nx, int ny, bool periodic_x)
  : a_(a), b_(b), nx_(nx), ny_(ny), periodic_x_(periodic_x)
{
  if (nx < 1 || ny < 1 || !(b > a))
  {
    throw std::invalid_argument("TorusGrid: empty domain or resolution");
  }
  data_.assign(static_cast<size_t>(nx) * ny, 0.0);
}

double TorusGrid::hx() const
{
  return periodic_x_ ? (b_ - a_) / nx_ : (b_ - a_) / (nx_ - 1);
}

cplx integrate(const TorusGrid &grid)
{
  if (grid.empty())
  {
    throw std::invalid_argument("integrate: empty grid");
  }
  cplx total = 0.0;
  for (int j = 0; j < grid.ny(); j++)
  {
    cplx row = 0.0;
    for (int i = 0; i < grid.nx(); i++)
    {
      const double w = (!grid.periodic_x() && (i == 0 || i == grid.nx() - 1)) ? 0.5 : 1.0;
      row += w * grid(i, j);
    }
    total += row;
  }
  return total * grid.hx() * grid.hy();
}

std::vector<cplx> fft(const std::vector<cplx> &in, bool inverse)
{
  static std::mutex planner_mutex;
  const int n = static_cast<int>(in.size());
  std::vector<cplx> out(in.size());
  if (n == 0)
  {
    return out;
  }
  std::vector<cplx> buf(in);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex *>(buf.data()),
                            reinterpret_cast<fftw_complex *>(out.data()),
                            inverse ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    fftw_destroy_plan(plan);
  }
  return out;
}

namespace
{

// Spectral derivative of one periodic line of samples with period L.
std::vector<cplx> spectral_line(const std::vector<cplx> &v, double L, int order)
{
  const int n = static_cast<int>(v.size());
  auto hat = fft(v);
  for (int k = 0; k < n; k++)
  {
    const int kk = (k <= n / 2) ? k : k - n;
    cplx factor = std::pow(cplx(0.0, kTwoPi * kk / L), order);
    if (2 * k == n && order % 2 == 1)
    {
      factor = 0.0;
    }
    hat[k] *= factor / static_cast<double>(n);
  }
  return fft(hat, true);
}

std::vector<cplx> stencil_line(const std::vector<cplx> &f, double h, int order)
{
  const int n = static_cast<int>(f.size());
  std::vector<cplx> d(n);
  if (order == 1)
  {
    const double s = 1.0 / (12.0 * h);
    for (int i = 2; i < n - 2; i++)
    {
      d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) * s;
    }
    d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) * s;
    d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * s;
    d[n - 1] = -(-25.0 * f[n - 1] + 48.0 * f[n - 2] - 36.0 * f[n - 3] + 16.0 * f[n - 4] -
                 3.0 * f[n - 5]) *
               s;
    d[n - 2] = -(-3.0 * f[n - 1] - 10.0 * f[n - 2] + 18.0 * f[n - 3] - 6.0 * f[n - 4] +
                 f[n - 5]) *
               s;
  }
  else
  {
    const double s = 1.0 / (12.0 * h * h);
    for (int i = 2; i < n - 2; i++)
    {
      d[i] = (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) * s;
    }
    auto edge = [&](auto g, int i0, int i1)
    {
      d[i0] = (45.0 * g(0) - 154.0 * g(1) + 214.0 * g(2) - 156.0 * g(3) + 61.0 * g(4) -
               10.0 * g(5)) *
              s;
      d[i1] = (10.0 * g(0) - 15.0 * g(1) - 4.0 * g(2) + 14.0 * g(3) - 6.0 * g(4) + g(5)) * s;
    };
    edge([&](int k) { return f[k]; }, 0, 1);
    edge([&](int k) { return f[n - 1 - k]; }, n - 1, n - 2);
  }
  return d;
}

}  // namespace

TorusGrid differentiate(const TorusGrid &grid, Axis axis, int order)
{
  if (grid.empty())
  {
    throw std::invalid_argument("differentiate: empty grid");
  }
  if (order != 1 && order != 2)
  {
    throw std::invalid_argument("differentiate: order must be 1 or 2");
  }
  const bool periodic = axis == Axis::y || grid.periodic_x();
  const int n = axis == Axis::x ? grid.nx() : grid.ny();
  const int minimum = periodic ? 2 : (order == 1 ? 5 : 6);
  if (n < minimum)
  {
    throw std::invalid_argument("differentiate: resolution below stencil width");
  }
  TorusGrid out = grid;
  if (axis == Axis::x)
  {
    std::vector<cplx> line(grid.nx());
    for (int j = 0; j < grid.ny(); j++)
    {
      for (int i = 0; i < grid.nx(); i++)
      {
        line[i] = grid(i, j);
      }
      const auto d = periodic ? spectral_line(line, grid.b() - grid.a(), order)
                              : stencil_line(line, grid.hx(), order);
      for (int i = 0; i < grid.nx(); i++)
      {
        out(i, j) = d[i];
      }
    }
  }
  else
  {
    std::vector<cplx> line(grid.ny());
    for (int i = 0; i < grid.nx(); i++)
    {
      for (int j = 0; j < grid.ny(); j++)
      {
        line[j] = grid(i, j);
      }
      const auto d = spectral_line(line, 1.0, order);
      for (int j = 0; j < grid.ny(); j++)
      {
        out(i, j) = d[j];
      }
    }
  }
  return out;
}

std::vector<double> reduce_breaks(const std::vector<double> &pts, double a, double period)
{
  std::vector<double> out;
  out.reserve(pts.size());
  for (double p : pts)
  {
    double r = std::fmod(p - a, period);
    if (r < 0.0)
    {
      r += period;
    }
    out.push_back(a + r);
  }
  std::sort(out.begin(), out.end());
  std::vector<double> unique;
  for (double v : out)
  {
    if (unique.empty() || v - unique.back() > 1e-12)
    {
      unique.push_back(v);
    }
  }
  return unique;
}

QuadratureRule gauss_panels(double a, double b, std::vector<double> breaks, double max_width)
{
  using rule = boost::math::quadrature::gauss<double, 16>;
  std::vector<double> cuts{a};
  std::sort(breaks.begin(), breaks.end());
  for (double t : breaks)
  {
    if (t > a + 1e-13 && t < b - 1e-13 && t - cuts.back() > 1e-13)
    {
      cuts.push_back(t);
    }
  }
  cuts.push_back(b);
  QuadratureRule q;
  const auto &abscissa = rule::abscissa();
  const auto &weights = rule::weights();
  for (size_t s = 0; s + 1 < cuts.size(); s++)
  {
    const double lo = cuts[s], hi = cuts[s + 1];
    const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_width - 1e-9)));
    const double h = (hi - lo) / panels;
    for (int k = 0; k < panels; k++)
    {
      const double mid = lo + (k + 0.5) * h, half = 0.5 * h;
      for (size_t m = 0; m < abscissa.size(); m++)
      {
        q.x.push_back(mid - half * abscissa[m]);
        q.w.push_back(half * weights[m]);
        q.x.push_back(mid + half * abscissa[m]);
        q.w.push_back(half * weights[m]);
      }
    }
  }
  return q;
}

cplx integrate_xy(const std::function<cplx(double, double)> &f, const QuadratureRule &rule,
                  int ny)
{
  cplx total = 0.0;
  for (size_t k = 0; k < rule.x.size(); k++)
  {
    cplx row = 0.0;
    for (int j = 0; j < ny; j++)
    {
      row += f(rule.x[k], static_cast<double>(j) / ny);
    }
    total += rule.w[k] * row;
  }
  return total / static_cast<double>(ny);
}

}  // namespace qhm
