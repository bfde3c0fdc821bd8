// Copyright the qhm-lab contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "qhm/algebra.hpp"

namespace qhm
{

using XiJetFn = std::function<Jet(double x, double y, int order)>;

// Element of the bimodule: a function on R x T supported in x on [lo, hi].
// breaks holds absolute x positions where the function may fail to be smooth.
class XiElement
{
public:
  XiElement(const Params &params, double lo, double hi, std::vector<double> breaks, XiJetFn fn);

  static XiElement zero(const Params &params);
  // Rebuilds an element from samples on a non-periodic x grid covering the
  // support; degree-9 local interpolation in x, trigonometric in y.
  static XiElement from_samples(const Params &params, const TorusGrid &grid);

  const Params &params() const { return impl_->params; }
  double lo() const { return impl_->lo; }
  double hi() const { return impl_->hi; }
  const std::vector<double> &breaks() const { return impl_->breaks; }

  Jet jet(double x, double y, int order) const;
  cplx operator()(double x, double y) const { return jet(x, y, 0).value(); }
  TorusGrid sample(int nx, int ny) const;

private:
  struct Impl
  {
    Params params;
    double lo, hi;
    std::vector<double> breaks;
    XiJetFn fn;
  };
  std::shared_ptr<const Impl> impl_;
};

XiElement operator+(const XiElement &f, const XiElement &g);
XiElement operator-(const XiElement &f, const XiElement &g);
XiElement operator*(cplx s, const XiElement &f);
XiElement d_x(const XiElement &f);
XiElement d_y(const XiElement &f);
// Pointwise product with a smooth function given by its jets.
XiElement multiply(const XiElement &f, XiJetFn m);

// Max of |f| over a 32 x 16 probe grid on [lo, hi] x [0, 1).
double sup_norm(const XiElement &f);

DElement inner_RD(const XiElement &f, const XiElement &g);
EElement inner_LE(const XiElement &f, const XiElement &g);
XiElement act_left(const EElement &e, const XiElement &f);
XiElement act_right(const XiElement &f, const DElement &a);

enum class Smoothstep
{
  cubic,   // t^2 (3 - 2 t), C^1 at the ends
  septic   // t^4 (35 - 84 t + 70 t^2 - 20 t^3), C^3 at the ends
};

const char *to_string(Smoothstep s);
Smoothstep smoothstep_from_string(const std::string &name);
// theta(t) on [0, 1] as a power series around t.
Series smoothstep_series(Smoothstep s, const Series &t);

// The generator R: 0 up to -mu, rising on (-mu, -mu/2), 1 on [-mu/2, mu],
// falling on (mu, 3mu/2) so that R(x)^2 + R(x - 2mu)^2 = 1, 0 afterwards.
struct KangR
{
  double mu;
  Smoothstep profile;
  XiElement element;

  Series series(double x, int order) const;
  double operator()(double x) const { return series(x, 0)[0].real(); }
};

// Requires 0 < mu < 1/4.
KangR kang_R(const Params &params, Smoothstep profile = Smoothstep::septic);
// Same construction for 0 < mu < 1/2; the bimodule identities that do not
// involve the projection remain valid there.
KangR kang_generator(const Params &params, Smoothstep profile = Smoothstep::septic);

struct KangProjection
{
  DElement P;
  KangR R;
  double idempotency_defect;  // sup |P * P - P|
  double adjoint_defect;      // sup |P^* - P|
};

KangProjection kang_projection(const Params &params, Smoothstep profile = Smoothstep::septic);

}  // namespace qhm
