// Copyright the qhm-lab contributors.
// SPDX-License-Identifier: Apache-2.0

#include "qhm/connections.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "qhm/random_elements.hpp"

namespace qhm
{

namespace
{

constexpr cplx kI{0.0, 1.0};

bool near_integer(double t)
{
  return std::abs(t - std::round(t)) < 1e-9;
}

int smallest_frequency(double period)
{
  for (int n = 1; n <= 64; n++)
  {
    if (near_integer(period * n))
    {
      return n;
    }
  }
  return 0;
}

XiElement times_x(const XiElement &f, std::function<Series(double, int)> s)
{
  return multiply(f, [s](double x, double, int order) { return Jet::in_x(s(x, order)); });
}

// (pi c i / 2 mu) x^2
Series quadratic_phase(const Params &P, double x, int order)
{
  const Series t = Series::variable(order, x);
  return (t * t) * cplx(0.0, kPi * P.c / (2.0 * P.mu));
}

Jet nabla2_multiplier(const Params &P, double x, double y, int order)
{
  Jet j(order, cplx(0.0, -P.nu * x + P.mu * y));
  if (order >= 1)
  {
    j.at(1, 0) = cplx(0.0, -P.nu);
    j.at(0, 1) = cplx(0.0, P.mu);
  }
  return j;
}

XiElement sum(const std::vector<XiElement> &terms, const Params &P)
{
  if (terms.empty())
  {
    return XiElement::zero(P);
  }
  XiElement acc = terms.front();
  for (size_t k = 1; k < terms.size(); k++)
  {
    acc = acc + terms[k];
  }
  return acc;
}

// Nabla0 and its perturbations along one basis direction.
XiElement basis_apply(const ConnectionKind &kind, int axis, const XiElement &f)
{
  const Params &P = f.params();
  std::vector<XiElement> terms;
  if (axis == 0)
  {
    terms.push_back(cplx(-1.0) * d_y(f));
    terms.push_back(times_x(f, [P](double x, int order) { return quadratic_phase(P, x, order); }));
    if (auto *n1 = std::get_if<Nabla1>(&kind))
    {
      terms.push_back(act_left(skew_HX(P, n1->g1), f));
    }
    if (std::holds_alternative<Nabla2>(kind))
    {
      terms.push_back(multiply(f, [P](double x, double y, int order)
                               { return nabla2_multiplier(P, x, y, order); }));
    }
  }
  else if (axis == 1)
  {
    terms.push_back(cplx(-1.0) * d_x(f));
    if (auto *n1 = std::get_if<Nabla1>(&kind))
    {
      terms.push_back(act_left(skew_HY(P, n1->g2), f));
    }
  }
  else
  {
    terms.push_back(times_x(f, [P](double x, int order)
                            { return Series::variable(order, x) * cplx(0.0, kPi / P.mu); }));
    if (auto *n3 = std::get_if<Nabla3>(&kind))
    {
      terms.push_back(act_left(skew_GZ(P, n3->alpha), f));
    }
  }
  return sum(terms, P);
}

XiElement test_vector(const Params &P)
{
  return bump_Xi(P, {{cplx(1.0, 0.2), 0.05, 0.08, 1}, {cplx(0.0, 0.5), -0.1, 0.06, -2}});
}

// Extracted element of T relative to its own size.
double defect_of(const Params &P, const EElement &psi,
                 const std::function<XiElement(const XiElement &)> &T)
{
  const XiElement t = test_vector(P);
  const XiElement Tt = T(t);
  return sup_norm(Tt - act_left(psi, t)) / std::max(1.0, sup_norm(Tt));
}

using Op = std::function<XiElement(const XiElement &)>;

Op curvature_operator(const ConnectionKind &kind, const Params &P, const LieVector &v,
                      const LieVector &w)
{
  const LieVector b = bracket(v, w, P.c);
  return [kind, v, w, b](const XiElement &f)
  {
    XiElement out = connection_apply(kind, v, connection_apply(kind, w, f)) -
                    connection_apply(kind, w, connection_apply(kind, v, f));
    if (b.x != 0.0 || b.y != 0.0 || b.z != 0.0)
    {
      out = out - connection_apply(kind, b, f);
    }
    return out;
  };
}

// [nabla_V, psi .] f
XiElement commutator(const ConnectionKind &kind, const LieVector &v, const EElement &psi,
                     const XiElement &f)
{
  return connection_apply(kind, v, act_left(psi, f)) - act_left(psi, connection_apply(kind, v, f));
}

}  // namespace

Series CosineProfile::series(double t, int order) const
{
  return cos(Series::variable(order, t) * cplx(omega));
}

std::string kind_name(const ConnectionKind &kind)
{
  static const char *names[] = {"grassmannian", "nabla0", "nabla1", "nabla2", "nabla3"};
  return names[kind.index()];
}

Nabla1 admissible_nabla1(const Params &params)
{
  const int n1 = smallest_frequency(2.0 * params.nu);
  const int n2 = smallest_frequency(2.0 * params.mu);
  return {CosineProfile{kTwoPi * n1}, CosineProfile{kTwoPi * n2}};
}

Nabla1 literal_nabla1(const Params &params)
{
  return {CosineProfile{kPi / params.nu}, CosineProfile{kPi / params.mu}};
}

Admissibility admissibility(const ConnectionKind &kind, const Params &params)
{
  Admissibility a;
  if (auto *n1 = std::get_if<Nabla1>(&kind))
  {
    // g1 lives on the circle (period 1) and must be 2 nu periodic; g2 must be
    // 2 mu periodic to lie in E and 1-periodic to be central.
    const double w1 = n1->g1.omega / kTwoPi, w2 = n1->g2.omega / kTwoPi;
    a.in_E = near_integer(w1) && near_integer(w1 * 2.0 * params.nu) &&
             near_integer(w2 * 2.0 * params.mu);
    a.central = a.in_E && near_integer(w2);
  }
  else if (std::holds_alternative<Nabla2>(kind))
  {
    a.in_E = false;
    a.central = false;
  }
  else if (auto *n3 = std::get_if<Nabla3>(&kind))
  {
    a.in_E = near_integer(n3->alpha);
    a.central = a.in_E && near_integer(n3->alpha / (2.0 * params.mu));
  }
  else if (std::holds_alternative<Grassmannian>(kind))
  {
    a.central = false;  // not compatible with the canonical derivations of E
  }
  return a;
}

EElement skew_HX(const Params &params, const CosineProfile &g1)
{
  return EElement(params, {0}, {},
                  [g1](double, double y, int, int order)
                  { return Jet::in_y(g1.series(y, order) * kI); });
}

EElement skew_HY(const Params &params, const CosineProfile &g2)
{
  return x_function<Algebra::E>(params, [g2](double x, int order)
                                { return g2.series(x, order) * kI; });
}

EElement skew_GZ(const Params &params, double alpha)
{
  const CosineProfile g{alpha * kPi / params.mu};
  return x_function<Algebra::E>(params, [g](double x, int order)
                                { return g.series(x, order) * kI; });
}

XiElement connection_apply(const ConnectionKind &kind, const LieVector &v, const XiElement &f)
{
  if (auto *G = std::get_if<Grassmannian>(&kind))
  {
    return act_right(G->R.element, derive_D(v, inner_RD(G->R.element, f)));
  }
  std::vector<XiElement> terms;
  const double coeff[3] = {v.x, v.y, v.z};
  for (int axis = 0; axis < 3; axis++)
  {
    if (coeff[axis] != 0.0)
    {
      XiElement t = basis_apply(kind, axis, f);
      terms.push_back(coeff[axis] == 1.0 ? t : cplx(coeff[axis]) * t);
    }
  }
  return sum(terms, f.params());
}

CompatibilityResidual compatibility_residual(const ConnectionKind &kind, const LieVector &v,
                                             const XiElement &f, const XiElement &g)
{
  const XiElement nf = connection_apply(kind, v, f), ng = connection_apply(kind, v, g);
  CompatibilityResidual r;
  r.right = sup_norm(derive_D(v, inner_RD(f, g)) - inner_RD(nf, g) - inner_RD(f, ng));
  r.left = sup_norm(derive_E(v, inner_LE(f, g)) - inner_LE(nf, g) - inner_LE(f, ng));
  return r;
}

double leibniz_residual(const ConnectionKind &kind, const LieVector &v, const XiElement &f,
                        const DElement &a)
{
  const XiElement lhs = connection_apply(kind, v, act_right(f, a));
  const XiElement rhs =
      act_right(connection_apply(kind, v, f), a) + act_right(f, derive_D(v, a));
  return sup_norm(lhs - rhs);
}

EElement extract_multiplier(const Params &params, const Op &T)
{
  const KangR R = kang_generator(params);
  const double norm_defect = sup_distance(inner_LE(R.element, R.element), EElement::identity(params));
  if (!(norm_defect < 1e-8))
  {
    throw std::runtime_error("multiplier extraction ill-conditioned: <R, R>_L deviates from Id_E by " +
                             std::to_string(norm_defect));
  }
  return inner_LE(T(R.element), R.element);
}

Curvature curvature(const ConnectionKind &kind, const Params &params)
{
  const auto X = LieVector::X(), Y = LieVector::Y(), Z = LieVector::Z();
  const Op Txy = curvature_operator(kind, params, X, Y);
  const Op Txz = curvature_operator(kind, params, X, Z);
  const Op Tyz = curvature_operator(kind, params, Y, Z);
  Curvature out{extract_multiplier(params, Txy), extract_multiplier(params, Txz),
                extract_multiplier(params, Tyz), 0.0};
  out.multiplier_defect = std::max({defect_of(params, out.xy, Txy), defect_of(params, out.xz, Txz),
                                    defect_of(params, out.yz, Tyz)});
  return out;
}

std::optional<Curvature> closed_form_curvature(const ConnectionKind &kind, const Params &params)
{
  const EElement id = EElement::identity(params);
  const EElement zero = EElement::zero(params);
  const EElement yz0 = cplx(0.0, kPi / params.mu) * id;
  if (std::holds_alternative<Nabla0>(kind) || std::holds_alternative<Nabla1>(kind))
  {
    return Curvature{zero, zero, yz0, 0.0};
  }
  if (std::holds_alternative<Nabla2>(kind))
  {
    return Curvature{cplx(0.0, params.nu) * id, zero, yz0, 0.0};
  }
  if (auto *n3 = std::get_if<Nabla3>(&kind))
  {
    const EElement G = skew_GZ(params, n3->alpha);
    const EElement dG = derive_E(LieVector::Y(), G);  // -dG/dx
    return Curvature{cplx(-params.c) * G, zero, yz0 + dG, 0.0};
  }
  return std::nullopt;
}

EElement nabla3_printed_theta_yz(const Params &params, double alpha)
{
  const EElement G = skew_GZ(params, alpha);
  return cplx(0.0, kPi / params.mu) * EElement::identity(params) - derive_E(LieVector::Y(), G);
}

double curvature_deviation(const Curvature &a, const Curvature &b)
{
  return std::max({sup_distance(a.xy, b.xy), sup_distance(a.xz, b.xz), sup_distance(a.yz, b.yz)});
}

YMValue ym_functional(const Curvature &theta)
{
  const cplx t = -trace_E(star_E(theta.xy, theta.xy) + star_E(theta.xz, theta.xz) +
                          star_E(theta.yz, theta.yz));
  return {t.real(), std::abs(t.imag())};
}

YMValue ym_functional(const ConnectionKind &kind, const Params &params)
{
  return ym_functional(curvature(kind, params));
}

CriticalResiduals critical_residuals(const ConnectionKind &kind, const Params &params)
{
  const Curvature th = curvature(kind, params);
  const auto X = LieVector::X(), Y = LieVector::Y(), Z = LieVector::Z();
  const double c = params.c;
  const Op eq1 = [&](const XiElement &f)
  { return commutator(kind, Y, th.xy, f) + commutator(kind, Z, th.xz, f); };
  const Op eq2 = [&](const XiElement &f)
  { return commutator(kind, Z, th.yz, f) - commutator(kind, X, th.xy, f); };
  const Op eq3 = [&](const XiElement &f)
  {
    return cplx(-1.0) * commutator(kind, X, th.xz, f) - commutator(kind, Y, th.yz, f) -
           cplx(c) * act_left(th.xy, f);
  };
  return {sup_norm(extract_multiplier(params, eq1)), sup_norm(extract_multiplier(params, eq2)),
          sup_norm(extract_multiplier(params, eq3))};
}

std::vector<ScanRow> ym_scan(const Params &base, const std::vector<int> &cs,
                             const std::vector<double> &mus, const std::vector<double> &alphas)
{
  std::vector<ScanRow> rows;
  for (int c : cs)
  {
    for (double mu : mus)
    {
      Params P = base;
      P.c = c;
      P.mu = mu;
      const double ym0 = ym_functional(Nabla0{}, P).value;
      for (double alpha : alphas)
      {
        const Nabla3 kind{alpha};
        const double ym = ym_functional(kind, P).value;
        const auto r = critical_residuals(kind, P);
        rows.push_back({c, mu, alpha, ym, ym0, r.eq1, r.eq2, r.eq3,
                        admissibility(kind, P).in_E});
      }
    }
  }
  return rows;
}

std::string scan_csv(const std::vector<ScanRow> &rows)
{
  std::ostringstream out;
  out << "c,mu,alpha,ym,ym_nabla0,margin,residual1,residual2,residual3,in_E\n";
  char line[512];
  for (const auto &r : rows)
  {
    std::snprintf(line, sizeof line, "%d,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%d\n", r.c,
                  r.mu, r.alpha, r.ym, r.ym0, r.margin(), r.residual1, r.residual2, r.residual3,
                  r.in_E ? 1 : 0);
    out << line;
  }
  return out.str();
}

}  // namespace qhm
