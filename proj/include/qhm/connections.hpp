// Copyright the qhm-lab contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qhm/bimodule.hpp"

namespace qhm
{

// g(t) = cos(omega t); omega = 0 gives the constant profile 1.
struct CosineProfile
{
  double omega = 0.0;

  Series series(double t, int order) const;
  double operator()(double t) const { return std::cos(omega * t); }
};

struct Grassmannian
{
  KangR R;
};
struct Nabla0
{
};
// Nabla0 plus skew multipliers i g1(y) on X and i g2(x) on Y.
struct Nabla1
{
  CosineProfile g1, g2;
};
// Nabla0 plus the multiplier (-nu i x + mu i y) on X.
struct Nabla2
{
};
// Nabla0 plus the skew multiplier i cos(alpha pi x / mu) on Z.
struct Nabla3
{
  double alpha = 1.0;
};

using ConnectionKind = std::variant<Grassmannian, Nabla0, Nabla1, Nabla2, Nabla3>;

std::string kind_name(const ConnectionKind &kind);

// Profiles with the smallest integer frequencies n1, n2 such that g1 has
// periods 1 and 2 nu and g2 has periods 1 and 2 mu. Falls back to the
// constant profile when no frequency up to 64 works.
Nabla1 admissible_nabla1(const Params &params);
// cos(pi y / nu) and cos(pi x / mu): 2 nu and 2 mu periodic but in general
// not 1-periodic, so not central in E.
Nabla1 literal_nabla1(const Params &params);

// Whether the perturbation added to Nabla0 is an element of E (commutes with
// the right D action) and whether it is central in E (needed for the
// left-metric identity with the canonical derivations of E).
struct Admissibility
{
  bool in_E = true;
  bool central = true;
};
Admissibility admissibility(const ConnectionKind &kind, const Params &params);

// The skew elements of E used as perturbations, p-support {0}.
EElement skew_HX(const Params &params, const CosineProfile &g1);
EElement skew_HY(const Params &params, const CosineProfile &g2);
EElement skew_GZ(const Params &params, double alpha);

XiElement connection_apply(const ConnectionKind &kind, const LieVector &v, const XiElement &f);

// Sup-norm residual of  d_V <f, g> = <nabla_V f, g> + <f, nabla_V g>  for the
// D-valued (right) and E-valued (left) inner products.
struct CompatibilityResidual
{
  double right = 0.0;
  double left = 0.0;
};
CompatibilityResidual compatibility_residual(const ConnectionKind &kind, const LieVector &v,
                                             const XiElement &f, const XiElement &g);

// Sup-norm of  nabla_V(f . a) - nabla_V(f) . a - f . d_V(a).
double leibniz_residual(const ConnectionKind &kind, const LieVector &v, const XiElement &f,
                        const DElement &a);

struct Curvature
{
  EElement xy, xz, yz;
  // Relative sup-norm gap between the curvature operator and the left
  // action of the extracted element on a fixed test vector.
  double multiplier_defect = 0.0;
};

// Left multiplier of an operator T on Xi, read off as <T R, R>_L with the
// Kang generator R (<R, R>_L = Id_E). Throws std::runtime_error when the
// generator fails that normalization.
EElement extract_multiplier(const Params &params, const std::function<XiElement(const XiElement &)> &T);

Curvature curvature(const ConnectionKind &kind, const Params &params);
// Hand-derived closed forms; none for the Grassmannian connection.
std::optional<Curvature> closed_form_curvature(const ConnectionKind &kind, const Params &params);
// Theta(Y, Z) for Nabla3 with the sign printed in the source formula,
// pi i / mu Id_E + d G_Z / dx, kept for comparison.
EElement nabla3_printed_theta_yz(const Params &params, double alpha);

// Sup-norm over the probe set of a - b.
double curvature_deviation(const Curvature &a, const Curvature &b);

struct YMValue
{
  double value = 0.0;
  double imag = 0.0;  // residue of the imaginary part
};
YMValue ym_functional(const ConnectionKind &kind, const Params &params);
YMValue ym_functional(const Curvature &theta);

struct CriticalResiduals
{
  double eq1 = 0.0, eq2 = 0.0, eq3 = 0.0;
  double max() const { return std::max({eq1, eq2, eq3}); }
};
CriticalResiduals critical_residuals(const ConnectionKind &kind, const Params &params);

struct ScanRow
{
  int c;
  double mu, alpha;
  double ym, ym0;
  double residual1, residual2, residual3;
  bool in_E;
  double margin() const { return ym0 - ym; }  // positive when YM(nabla3) < YM(nabla0)
};

// Nabla3 against Nabla0 over a (c, mu, alpha) grid; base supplies nu and
// the quadrature settings.
std::vector<ScanRow> ym_scan(const Params &base, const std::vector<int> &cs,
                             const std::vector<double> &mus, const std::vector<double> &alphas);
std::string scan_csv(const std::vector<ScanRow> &rows);

}  // namespace qhm
