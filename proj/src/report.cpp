// Copyright the qhm-lab contributors.
// SPDX-License-Identifier: Apache-2.0

#include "qhm/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace qhm
{

double round_significant(double v, int digits)
{
  if (!std::isfinite(v) || v == 0.0)
  {
    return v == 0.0 ? 0.0 : v;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return std::strtod(buf, nullptr);
}

Json number(double v)
{
  return Json(round_significant(v));
}

std::string render_json(const Json &j)
{
  return j.dump(2) + "\n";
}

Json to_json(const Params &params)
{
  Json j;
  j["c"] = params.c;
  j["mu"] = number(params.mu);
  j["nu"] = number(params.nu);
  j["nx"] = params.nx;
  j["ny"] = params.ny;
  j["pmax"] = params.pmax;
  return j;
}

Json to_json(const YMValue &ym)
{
  Json j;
  j["ym"] = number(ym.value);
  j["imag_residue"] = number(ym.imag);
  return j;
}

Json to_json(const CriticalResiduals &r)
{
  Json j;
  j["residual1"] = number(r.eq1);
  j["residual2"] = number(r.eq2);
  j["residual3"] = number(r.eq3);
  return j;
}

Json to_json(const CurvatureCharge &c)
{
  Json j;
  j["xy"] = number(c.xy);
  j["xz"] = number(c.xz);
  j["yz"] = number(c.yz);
  j["total"] = number(c.total);
  j["z_trace"] = number(c.z_trace);
  j["imag_residue"] = number(c.imag);
  return j;
}

Json to_json(const ZTraceSplit &s)
{
  Json j;
  j["first_integral"] = number(s.first);
  j["m_integral"] = number(s.second);
  j["m_literal"] = number(s.m_literal);
  return j;
}

Json to_json(const ChargeReport &r)
{
  Json j;
  j["connection"] = r.connection;
  j["s_energy"] = number(r.s_energy);
  j["c_xy"] = number(r.c_xy);
  j["c_xz"] = number(r.c_xz);
  j["c_yz"] = number(r.c_yz);
  j["c_total"] = number(r.c_total);
  j["abs_c_total"] = number(std::abs(r.c_total));
  j["bound_direct"] = number(r.bound_direct);
  j["curvature_charge"] = to_json(r.curvature);
  j["bound_curvature"] = number(r.bound_curvature);
  j["z_trace_split"] = to_json(r.split);
  j["printed_bound_with_m"] = number(r.printed_bound_with_m);
  j["printed_bound_without_m"] = number(r.printed_bound_without_m);
  j["slack_energy_direct"] = number(r.s_energy - r.bound_direct);
  j["slack_direct_curvature"] = number(r.bound_direct - r.bound_curvature);
  j["energy_ge_direct"] = r.energy_ge_direct;
  j["direct_ge_curvature"] = r.direct_ge_curvature;
  j["direct_ge_total"] = r.direct_ge_total;
  j["tolerance"] = number(r.tolerance);
  return j;
}

Json to_json(const Example4Report &r)
{
  Json j;
  j["N"] = r.N;
  j["mu"] = number(r.mu);
  j["c"] = number(r.c);
  j["alpha"] = number(r.alpha);
  j["A"] = number(r.A);
  j["B"] = number(r.B);
  j["combined"] = number(r.combined);
  j["stated_value"] = number(r.stated_value);
  j["difference"] = number(r.combined - r.stated_value);
  j["integrand_residual"] = number(r.integrand_residual);
  j["agrees"] = r.agrees;
  j["discrepancy"] = !r.agrees;
  return j;
}

Json to_json(const PowerFit &f)
{
  Json j;
  j["exponent"] = number(f.exponent);
  j["residual"] = number(f.residual);
  j["k_lo"] = f.k_lo;
  j["k_hi"] = f.k_hi;
  return j;
}

Json to_json(const SpectrumReport &r)
{
  Json j;
  j["K"] = r.K;
  j["pmax"] = r.pmax;
  j["model"] = r.model;
  j["scope"] = r.scope;
  j["eigenvalue_count"] = r.abs_eigenvalues.size();
  j["kernel_dimension"] = r.kernel_dimension;
  j["max_hermiticity_defect"] = number(r.max_hermiticity_defect);
  j["fit_squared"] = to_json(r.squared);
  j["fit_absolute"] = to_json(r.absolute);
  return j;
}

Json to_json(const CommutatorReport &r)
{
  Json j;
  j["norm_commutator"] = number(r.norm_commutator);
  j["norm_Da"] = number(r.norm_Da);
  j["deviation"] = number(r.deviation);
  return j;
}

Json to_json(const HochschildReport &r)
{
  Json j;
  j["K"] = r.K;
  j["energy"] = number(r.energy);
  j["cross_trace"] = number(r.cross_trace);
  return j;
}

Json to_json(const LowerBoundReport &r)
{
  Json j;
  j["samples"] = r.samples;
  j["min_slack"] = number(r.min_slack);
  j["holds"] = r.holds;
  return j;
}

Json to_json(const ScanRow &row)
{
  Json j;
  j["c"] = row.c;
  j["mu"] = number(row.mu);
  j["alpha"] = number(row.alpha);
  j["ym"] = number(row.ym);
  j["ym_nabla0"] = number(row.ym0);
  j["margin"] = number(row.margin());
  j["residual1"] = number(row.residual1);
  j["residual2"] = number(row.residual2);
  j["residual3"] = number(row.residual3);
  j["in_E"] = row.in_E;
  return j;
}

}  // namespace qhm
