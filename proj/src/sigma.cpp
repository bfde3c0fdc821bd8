// Copyright the qhm-lab contributors.
// SPDX-License-Identifier: Apache-2.0

#include "qhm/sigma.hpp"

#include <cmath>
#include <stdexcept>

namespace qhm
{

namespace
{

constexpr cplx kTwoPiI{0.0, kTwoPi};

// R(x) summed against w(x - 2 k mu) over the translates meeting x.
double weighted_square_sum(const KangR &R, double x, const std::function<double(double)> &w)
{
  double s = 0.0;
  const int kmax = static_cast<int>(std::ceil(2.0 / R.mu)) + 2;
  for (int k = -kmax; k <= kmax; k++)
  {
    const double t = x - 2.0 * k * R.mu;
    if (t > -R.mu && t < 1.5 * R.mu)
    {
      const double r = R(t);
      s += w(t) * r * r;
    }
  }
  return s;
}

double integrate_1d(double a, double b, std::vector<double> breaks,
                    const std::function<double(double)> &f)
{
  const auto rule = gauss_panels(a, b, std::move(breaks), 0.01);
  double s = 0.0;
  for (size_t i = 0; i < rule.x.size(); i++)
  {
    s += rule.w[i] * f(rule.x[i]);
  }
  return s;
}

cplx charge_trace(const XiElement &R, const XiElement &TR)
{
  return -trace_E(inner_LE(R, TR)) / kTwoPiI;
}

// A = (c / 2 pi i) tau_E(<R, G . R>) and B = -(1 / 2 pi i) tau_E(<R, dG/dx . R>).
std::pair<double, double> nabla3_integrals(const KangR &R, double alpha)
{
  const Params &P = R.element.params();
  const EElement G = skew_GZ(P, alpha);
  const EElement dG = cplx(-1.0) * derive_E(LieVector::Y(), G);
  const cplx A = double(P.c) * trace_E(inner_LE(R.element, act_left(G, R.element))) / kTwoPiI;
  const cplx B = -trace_E(inner_LE(R.element, act_left(dG, R.element))) / kTwoPiI;
  return {A.real(), B.real()};
}

}  // namespace

void require_projection(const DElement &P)
{
  const double idem = sup_distance(star_D(P, P), P);
  const double adj = sup_distance(involution_D(P), P);
  if (!(idem < 1e-6 && adj < 1e-6))
  {
    throw std::invalid_argument("not a projection: idempotency defect " + std::to_string(idem) +
                                ", adjoint defect " + std::to_string(adj));
  }
}

double energy(const DElement &P)
{
  require_projection(P);
  cplx s = 0.0;
  for (const auto &v : {LieVector::X(), LieVector::Y(), LieVector::Z()})
  {
    const DElement d = derive_D(v, P);
    s += trace_D(star_D(d, d));
  }
  return 2.0 * s.real();
}

double charge_pair(const DElement &P, const LieVector &v, const LieVector &w)
{
  require_projection(P);
  const DElement a = derive_D(v, P), b = derive_D(w, P);
  return (trace_D(star_D(P, star_D(a, b) - star_D(b, a))) / kTwoPiI).real();
}

CurvatureCharge charge_via_curvature(const KangR &R, const ConnectionKind &kind)
{
  const Params &P = R.element.params();
  const double norm_defect =
      sup_distance(inner_LE(R.element, R.element), EElement::identity(P));
  if (!(norm_defect < 1e-8))
  {
    throw std::runtime_error("generator not normalized: <R, R>_L deviates from Id_E by " +
                             std::to_string(norm_defect));
  }
  const auto X = LieVector::X(), Y = LieVector::Y(), Z = LieVector::Z();
  const XiElement &r = R.element;
  const auto apply = [&](const LieVector &v, const XiElement &f) { return connection_apply(kind, v, f); };
  const XiElement nx = apply(X, r), ny = apply(Y, r), nz = apply(Z, r);
  // Theta(X, Y) + nabla_[X, Y] = [nabla_X, nabla_Y]; [X, Z] = [Y, Z] = 0.
  const cplx xy = charge_trace(r, apply(X, ny) - apply(Y, nx));
  const cplx xz = charge_trace(r, apply(X, nz) - apply(Z, nx));
  const cplx yz = charge_trace(r, apply(Y, nz) - apply(Z, ny));
  const cplx zt = double(P.c) * charge_trace(r, nz);
  CurvatureCharge out;
  out.xy = xy.real();
  out.xz = xz.real();
  out.yz = yz.real();
  out.total = out.xy + out.xz + out.yz;
  out.z_trace = zt.real();
  out.imag = std::max({std::abs(xy.imag()), std::abs(xz.imag()), std::abs(yz.imag()),
                       std::abs(zt.imag())});
  return out;
}

double summation_identity_check(const KangR &R, int samples)
{
  const double mu = R.mu;
  double worst = 0.0;
  for (int i = 0; i < samples; i++)
  {
    const double x = 2.0 * mu * i / (samples - 1);
    double lhs = 0.0;
    for (int k = -3; k <= 3; k++)
    {
      const double r = R(x - 2.0 * k * mu);
      lhs += 2.0 * k * mu * r * r;
    }
    const double r0 = R(x);
    worst = std::max(worst, std::abs(lhs - 2.0 * mu * (1.0 - r0 * r0)));
  }
  return worst;
}

ZTraceSplit z_trace_split(const KangR &R, int c)
{
  const double mu = R.mu;
  const std::vector<double> breaks = {mu, 1.5 * mu};
  ZTraceSplit s;
  s.first = -c / (2.0 * mu) *
            integrate_1d(0.0, 2.0 * mu, breaks,
                         [&](double x) { return x * weighted_square_sum(R, x, [](double) { return 1.0; }); });
  s.second = c / (2.0 * mu) *
             integrate_1d(0.0, 2.0 * mu, breaks,
                          [&](double x)
                          { return weighted_square_sum(R, x, [x](double t) { return x - t; }); });
  s.m_literal = 2.0 * c * mu *
                integrate_1d(0.0, 1.0, breaks,
                             [&](double x)
                             {
                               const double r = R(x);
                               return 1.0 - r * r;
                             });
  return s;
}

ChargeReport bound_report(const Params &params, const ConnectionKind &kind, Smoothstep profile)
{
  params.validate_kang();
  const KangProjection K = kang_projection(params, profile);
  ChargeReport rep;
  rep.connection = kind_name(kind);
  rep.s_energy = energy(K.P);
  const auto X = LieVector::X(), Y = LieVector::Y(), Z = LieVector::Z();
  rep.c_xy = charge_pair(K.P, X, Y);
  rep.c_xz = charge_pair(K.P, X, Z);
  rep.c_yz = charge_pair(K.P, Y, Z);
  rep.c_total = rep.c_xy + rep.c_xz + rep.c_yz;
  rep.bound_direct = std::abs(rep.c_xy) + std::abs(rep.c_xz) + std::abs(rep.c_yz);
  rep.curvature = charge_via_curvature(K.R, kind);
  rep.bound_curvature = std::abs(rep.curvature.total);
  rep.split = z_trace_split(K.R, params.c);

  double extra = 0.0;
  if (std::holds_alternative<Nabla2>(kind))
  {
    extra = params.nu / kTwoPi;
  }
  else if (auto *n3 = std::get_if<Nabla3>(&kind))
  {
    const auto [A, B] = nabla3_integrals(K.R, n3->alpha);
    extra = A + B;
  }
  const double base = 1.0 - params.c / 2.0 + extra;
  rep.printed_bound_with_m = std::abs(base + rep.split.m_literal);
  rep.printed_bound_without_m = std::abs(base);

  const double tol = rep.tolerance;
  rep.energy_ge_direct = rep.s_energy + tol >= rep.bound_direct;
  rep.direct_ge_curvature = rep.bound_direct + tol >= rep.bound_curvature;
  rep.direct_ge_total = rep.bound_direct + tol >= std::abs(rep.c_total);
  return rep;
}

Example4Report example4_report(int N, double nu, Smoothstep profile)
{
  if (N < 7)
  {
    throw std::invalid_argument("example 4 needs N >= 7 so that mu = pi / N < 1/2");
  }
  Example4Report rep;
  rep.N = N;
  rep.mu = kPi / N;
  rep.c = N;
  rep.alpha = rep.c * rep.mu / kPi;
  Params P;
  P.c = N;
  P.mu = rep.mu;
  P.nu = nu;
  const KangR R = kang_generator(P, profile);
  const auto [A, B] = nabla3_integrals(R, rep.alpha);
  rep.A = A;
  rep.B = B;
  rep.combined = A + B;
  rep.stated_value = 1.0 + std::sin(double(N)) - std::cos(double(N));
  rep.agrees = std::abs(rep.combined - rep.stated_value) < 1e-6;

  const double beta = rep.alpha * kPi / rep.mu;
  for (int i = 0; i <= 2000; i++)
  {
    const double x = 2.0 * rep.mu * i / 2000.0;
    const double lhs = weighted_square_sum(R, x, [&](double t) { return std::cos(beta * t) + std::sin(beta * t); });
    rep.integrand_residual =
        std::max(rep.integrand_residual, std::abs(lhs - std::sqrt(2.0) * std::sin(N * x + kPi / 4)));
  }
  return rep;
}

}  // namespace qhm
