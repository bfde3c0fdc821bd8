// Copyright the qhm-lab contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "qhm/connections.hpp"

namespace qhm
{

// Throws std::invalid_argument when P fails P * P = P or P* = P beyond 1e-6.
void require_projection(const DElement &P);

// S(P) = 2 tau_D(sum_V dP_V * dP_V), after require_projection.
double energy(const DElement &P);

// c_VW(P) = (1 / 2 pi i) tau_D(P (dP_V dP_W - dP_W dP_V)).
double charge_pair(const DElement &P, const LieVector &v, const LieVector &w);

// Charge computed from a connection through the generator R:
// -(1 / 2 pi i) tau_E(<R, T R>_L) with T the sum of the three curvature
// operators plus c nabla_Z. Split by plane; xy carries the c nabla_Z term.
struct CurvatureCharge
{
  double xy = 0.0, xz = 0.0, yz = 0.0;
  double total = 0.0;
  // -(c / 2 pi i) tau_E(<R, nabla_Z R>_L)
  double z_trace = 0.0;
  double imag = 0.0;  // largest imaginary residue among the traces
};
// Throws std::runtime_error when <R, R>_L deviates from Id_E beyond 1e-8.
CurvatureCharge charge_via_curvature(const KangR &R, const ConnectionKind &kind);

// max over x in [0, 2 mu] of |sum_k 2 k mu R(x - 2 k mu)^2 - 2 mu (1 - R(x)^2)|.
double summation_identity_check(const KangR &R, int samples = 4001);

// The two integrals the nabla0 z-trace splits into, plus the literal
// closed form of the second one.
struct ZTraceSplit
{
  double first = 0.0;      // -(c / 2 mu) int_0^{2mu} x sum_k R(x - 2k mu)^2
  double second = 0.0;     // (c / 2 mu) int_0^{2mu} sum_k 2k mu R(x - 2k mu)^2 = c int_0^{2mu} (1 - R^2)
  double m_literal = 0.0;  // 2 c mu int_0^1 (1 - R(x)^2)
};
ZTraceSplit z_trace_split(const KangR &R, int c);

struct ChargeReport
{
  std::string connection;
  double s_energy = 0.0;
  double c_xy = 0.0, c_xz = 0.0, c_yz = 0.0;
  double c_total = 0.0;
  double bound_direct = 0.0;
  CurvatureCharge curvature;
  double bound_curvature = 0.0;
  ZTraceSplit split;
  // Closed-form bounds as printed, with and without the M term.
  double printed_bound_with_m = 0.0;
  double printed_bound_without_m = 0.0;
  bool energy_ge_direct = false;
  bool direct_ge_curvature = false;
  bool direct_ge_total = false;
  double tolerance = 1e-8;
};
ChargeReport bound_report(const Params &params, const ConnectionKind &kind,
                          Smoothstep profile = Smoothstep::septic);

struct Example4Report
{
  int N = 0;
  double mu = 0.0, c = 0.0, alpha = 0.0;
  double A = 0.0, B = 0.0, combined = 0.0;
  double stated_value = 0.0;  // 1 + sin N - cos N
  double integrand_residual = 0.0;
  bool agrees = false;  // |combined - stated_value| < 1e-6
};
// Requires N >= 7; throws std::invalid_argument otherwise.
Example4Report example4_report(int N, double nu = 0.3, Smoothstep profile = Smoothstep::septic);

}  // namespace qhm
