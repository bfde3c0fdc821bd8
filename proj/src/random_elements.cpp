// Copyright the qhm-lab contributors.
// SPDX-License-Identifier: Apache-2.0

#include "qhm/random_elements.hpp"

#include <cmath>

namespace qhm
{

Series bump_series(const Bump &b, double x, int order)
{
  const Series t = Series::variable(order, x - b.center);
  return exp(t * t * cplx(-0.5 / (b.width * b.width))) * b.amplitude;
}

std::vector<Bump> random_bumps(std::mt19937_64 &rng, int count, double center_lo,
                               double center_hi, double width_lo, double width_hi)
{
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> center(center_lo, center_hi);
  std::uniform_real_distribution<double> width(width_lo, width_hi);
  std::uniform_int_distribution<int> freq(-2, 2);
  std::vector<Bump> out;
  for (int k = 0; k < count; k++)
  {
    Bump b;
    b.amplitude = cplx(normal(rng), normal(rng));
    b.center = center(rng);
    b.width = width(rng);
    b.frequency = freq(rng);
    out.push_back(b);
  }
  return out;
}

namespace
{

Jet bump_jet(const Bump &b, double x, double y, int order)
{
  return Jet::outer(bump_series(b, x, order), phase_series(order, b.frequency, y, 0.0));
}

}  // namespace

DElement zak_D(const Params &params, std::vector<std::pair<int, Bump>> bumps)
{
  std::vector<int> support;
  for (const auto &[p, b] : bumps)
  {
    support.push_back(p);
  }
  return DElement(params, support, {},
                  [bumps, params](double x, double y, int p, int order)
                  {
                    Jet acc(order, 0.0);
                    for (const auto &[q, b] : bumps)
                    {
                      if (q != p)
                      {
                        continue;
                      }
                      const double r = kBumpRadius * b.width;
                      const long j0 = static_cast<long>(std::ceil(b.center - r - x));
                      const long j1 = static_cast<long>(std::floor(b.center + r - x));
                      for (long j = j0; j <= j1; j++)
                      {
                        const double a = -static_cast<double>(params.c) * j * p;
                        acc += Jet::in_y(phase_series(order, a, y, -a * p * params.nu)) *
                               bump_jet(b, x + j, y, order);
                      }
                    }
                    return acc;
                  });
}

EElement zak_E(const Params &params, std::vector<std::pair<int, Bump>> bumps)
{
  std::vector<int> support;
  for (const auto &[p, b] : bumps)
  {
    support.push_back(p);
  }
  return EElement(params, support, {},
                  [bumps, params](double x, double y, int p, int order)
                  {
                    Jet acc(order, 0.0);
                    const double two_mu = 2.0 * params.mu;
                    for (const auto &[q, b] : bumps)
                    {
                      if (q != p)
                      {
                        continue;
                      }
                      const double r = kBumpRadius * b.width;
                      double k0 = (x - b.center - r) / two_mu, k1 = (x - b.center + r) / two_mu;
                      if (k0 > k1)
                      {
                        std::swap(k0, k1);
                      }
                      for (long k = static_cast<long>(std::ceil(k0));
                           k <= static_cast<long>(std::floor(k1)); k++)
                      {
                        const double a = static_cast<double>(params.c) * p * k;
                        acc += Jet::in_y(phase_series(order, a, y, -a * k * params.nu)) *
                               bump_jet(b, x - k * two_mu, y - 2.0 * k * params.nu, order);
                      }
                    }
                    return acc;
                  });
}

XiElement bump_Xi(const Params &params, std::vector<Bump> bumps)
{
  double lo = 1e300, hi = -1e300;
  for (const auto &b : bumps)
  {
    lo = std::min(lo, b.center - kBumpRadius * b.width);
    hi = std::max(hi, b.center + kBumpRadius * b.width);
  }
  return XiElement(params, lo, hi, {},
                   [bumps](double x, double y, int order)
                   {
                     Jet acc(order, 0.0);
                     for (const auto &b : bumps)
                     {
                       if (std::abs(x - b.center) <= kBumpRadius * b.width)
                       {
                         acc += bump_jet(b, x, y, order);
                       }
                     }
                     return acc;
                   });
}

DElement random_D(const Params &params, std::mt19937_64 &rng, const std::vector<int> &support,
                  int terms)
{
  std::vector<std::pair<int, Bump>> bumps;
  for (int p : support)
  {
    for (const auto &b : random_bumps(rng, terms, 0.0, 1.0))
    {
      bumps.emplace_back(p, b);
    }
  }
  return zak_D(params, bumps);
}

EElement random_E(const Params &params, std::mt19937_64 &rng, const std::vector<int> &support,
                  int terms)
{
  std::vector<std::pair<int, Bump>> bumps;
  for (int p : support)
  {
    for (const auto &b : random_bumps(rng, terms, 0.0, 2.0 * params.mu))
    {
      bumps.emplace_back(p, b);
    }
  }
  return zak_E(params, bumps);
}

XiElement random_Xi(const Params &params, std::mt19937_64 &rng, int terms)
{
  return bump_Xi(params, random_bumps(rng, terms, -0.15, 0.15, 0.045, 0.06));
}

}  // namespace qhm
