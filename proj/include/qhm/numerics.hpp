// Copyright the qhm-lab contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "qhm/jet.hpp"

namespace qhm
{

// Heisenberg parameters plus discretization settings.
struct Params
{
  int c = 1;
  double mu = 0.2;
  double nu = 0.3;
  int nx = 256;  // x quadrature nodes per unit length
  int ny = 256;  // y quadrature nodes per unit length
  int pmax = 8;

  // Throws std::invalid_argument when c < 1, mu == 0, nx/ny < 16 or odd, pmax < 1.
  void validate() const;
  // validate() plus 0 < mu < 1/4; throws std::domain_error("mu out of range").
  void validate_kang() const;

  friend bool operator==(const Params &, const Params &) = default;
};

cplx e_phase(double t);

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// e(a*t + b) expanded around t as a power series of the given order.
Series phase_series(int order, double a, double t, double b);

enum class Axis
{
  x,
  y
};

// Samples on [a, b) x [0, 1). The y axis is periodic with period 1. A
// periodic x axis uses spacing (b - a) / nx; a non-periodic one includes
// the endpoint b with spacing (b - a) / (nx - 1). Storage is row-major in
// y: sample (i, j) lives at index j * nx + i.
class TorusGrid
{
public:
  TorusGrid() = default;
  TorusGrid(double a, double b, int nx, int ny, bool periodic_x = true);

  template <class F>
  static TorusGrid sample(double a, double b, int nx, int ny, bool periodic_x, F &&f)
  {
    TorusGrid g(a, b, nx, ny, periodic_x);
    for (int j = 0; j < ny; j++)
    {
      for (int i = 0; i < nx; i++)
      {
        g(i, j) = f(g.x(i), g.y(j));
      }
    }
    return g;
  }

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double a() const { return a_; }
  double b() const { return b_; }
  bool periodic_x() const { return periodic_x_; }
  bool empty() const { return data_.empty(); }
  double hx() const;
  double hy() const { return 1.0 / ny_; }
  double x(int i) const { return a_ + i * hx(); }
  double y(int j) const { return j * hy(); }

  cplx &operator()(int i, int j) { return data_[static_cast<size_t>(j) * nx_ + i]; }
  const cplx &operator()(int i, int j) const { return data_[static_cast<size_t>(j) * nx_ + i]; }
  std::vector<cplx> &samples() { return data_; }
  const std::vector<cplx> &samples() const { return data_; }

private:
  double a_ = 0.0, b_ = 1.0;
  int nx_ = 0, ny_ = 0;
  bool periodic_x_ = true;
  std::vector<cplx> data_;
};

// Composite trapezoid rule over the grid domain.
cplx integrate(const TorusGrid &grid);

// Spectral on periodic axes, 4th-order centred differences with one-sided
// closure otherwise. order is 1 or 2 (2 is a direct second derivative).
TorusGrid differentiate(const TorusGrid &grid, Axis axis, int order = 1);

// Discrete Fourier transform, unnormalized. inverse selects the +i sign.
std::vector<cplx> fft(const std::vector<cplx> &in, bool inverse = false);

// Nodes and weights of a composite Gauss-Legendre rule on [a, b] whose
// panels never straddle a breakpoint and have width at most max_width.
struct QuadratureRule
{
  std::vector<double> x;
  std::vector<double> w;
};
QuadratureRule gauss_panels(double a, double b, std::vector<double> breaks, double max_width);

// Integral over [a, b] x [0, 1) of f(x, y): Gauss panels in x, ny-point
// trapezoid in y.
cplx integrate_xy(const std::function<cplx(double, double)> &f, const QuadratureRule &rule,
                  int ny);

// Representatives in [a, a + period) of the given points.
std::vector<double> reduce_breaks(const std::vector<double> &pts, double a, double period);

}  // namespace qhm
