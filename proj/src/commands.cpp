// Copyright the qhm-lab contributors.
// SPDX-License-Identifier: Apache-2.0

#include "qhm/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "qhm/random_elements.hpp"

namespace qhm
{

namespace
{

const std::vector<std::string> kCommands = {"verify", "ym", "energy", "charge", "bound", "dirac", "example4"};

std::string trim(const std::string &s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
  {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int parse_int(const std::string &key, const std::string &value)
{
  try
  {
    std::size_t used = 0;
    const int v = std::stoi(value, &used);
    if (used == value.size())
    {
      return v;
    }
  }
  catch (const std::exception &)
  {
  }
  throw UsageError("config: " + key + " expects an integer, got '" + value + "'");
}

double parse_double(const std::string &key, const std::string &value)
{
  try
  {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used == value.size() && std::isfinite(v))
    {
      return v;
    }
  }
  catch (const std::exception &)
  {
  }
  throw UsageError("config: " + key + " expects a number, got '" + value + "'");
}

std::vector<std::string> split_list(const std::string &value)
{
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ','))
  {
    items.push_back(trim(item));
  }
  return items;
}

std::string one_of(const std::string &key, const std::string &value, const std::vector<std::string> &allowed)
{
  if (std::find(allowed.begin(), allowed.end(), value) == allowed.end())
  {
    std::string list;
    for (const auto &a : allowed)
    {
      list += (list.empty() ? "" : " | ") + a;
    }
    throw UsageError("config: " + key + " must be one of " + list + ", got '" + value + "'");
  }
  return value;
}

CheckResult check(std::string name, double residual, double tolerance)
{
  return {std::move(name), residual, tolerance, std::isfinite(residual) && residual < tolerance};
}

const LieVector kBasis[3] = {LieVector::X(), LieVector::Y(), LieVector::Z()};
const char *const kAxisNames[3] = {"X", "Y", "Z"};

// sum_k R(x - 2k mu)^2 - 1 on a dense grid of one period.
double partition_of_unity(const KangR &R)
{
  double worst = 0;
  for (int i = 0; i <= 4000; i++)
  {
    const double x = 2 * R.mu * i / 4000.0;
    double s = 0;
    for (int k = -3; k <= 3; k++)
    {
      s += std::pow(R(x - 2 * k * R.mu), 2);
    }
    worst = std::max(worst, std::abs(s - 1));
  }
  return worst;
}

double ym_closed_form(const ConnectionKind &kind, const Params &P, bool &known)
{
  known = true;
  const double ym0 = 2 * kPi * kPi / P.mu;
  if (std::holds_alternative<Nabla0>(kind))
  {
    return ym0;
  }
  if (std::holds_alternative<Nabla2>(kind))
  {
    return 2 * P.mu * P.nu * P.nu + ym0;
  }
  if (const auto *n1 = std::get_if<Nabla1>(&kind))
  {
    if (admissibility(*n1, P).central)
    {
      return ym0;
    }
  }
  if (const auto *n3 = std::get_if<Nabla3>(&kind))
  {
    if (std::abs(n3->alpha - std::round(n3->alpha)) < 1e-12 && n3->alpha != 0.0)
    {
      const double a = n3->alpha * kPi / P.mu;
      return ym0 + P.mu * (P.c * P.c + a * a);
    }
  }
  known = false;
  return 0.0;
}

Json admissibility_json(const ConnectionKind &kind, const Params &P)
{
  const auto adm = admissibility(kind, P);
  Json j;
  j["in_E"] = adm.in_E;
  j["central"] = adm.central;
  return j;
}

Json envelope(const std::string &command, const Config &config, Json result)
{
  Json j;
  j["command"] = command;
  j["config"] = to_json(config);
  j["result"] = std::move(result);
  return j;
}

void flatten(const Json &j, const std::string &prefix, std::ostringstream &os)
{
  if (j.is_object())
  {
    for (const auto &[k, v] : j.items())
    {
      flatten(v, prefix.empty() ? k : prefix + "." + k, os);
    }
  }
  else if (j.is_array())
  {
    for (std::size_t i = 0; i < j.size(); i++)
    {
      flatten(j[i], prefix + "." + std::to_string(i), os);
    }
  }
  else
  {
    os << prefix << "," << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

std::string key_value_csv(const Json &result)
{
  std::ostringstream os;
  os << "key,value\n";
  flatten(result, "", os);
  return os.str();
}

CommandOutput emit(const std::string &command, const Config &config, Json result, int exit_code = 0)
{
  CommandOutput out;
  out.exit_code = exit_code;
  out.text = config.format == "csv" ? key_value_csv(result) : render_json(envelope(command, config, std::move(result)));
  return out;
}

// Random trigonometric polynomial of degree <= 2 at p = 0, for the commutator check.
DElement trig_polynomial(const Params &P, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<std::tuple<int, int, cplx>> terms;
  for (int j = -2; j <= 2; j++)
  {
    for (int l = -2; l <= 2; l++)
    {
      terms.emplace_back(j, l, cplx(g(rng), g(rng)) / double(1 + j * j + l * l));
    }
  }
  return DElement(P, {0}, {},
                  [terms](double x, double y, int, int order)
                  {
                    Jet acc(order, 0.0);
                    for (const auto &[j, l, a] : terms)
                    {
                      acc += Jet::outer(phase_series(order, j, x, 0), phase_series(order, l, y, 0)) * a;
                    }
                    return acc;
                  });
}

void algebra_checks(const Params &P, std::vector<CheckResult> &out)
{
  std::mt19937_64 rng(2024);
  {
    const auto a = random_D(P, rng, {0, 1}), b = random_D(P, rng, {-1, 0}), c = random_D(P, rng, {0, 1});
    const auto id = DElement::identity(P);
    out.push_back(check("D.unit", std::max(sup_distance(star_D(id, a), a), sup_distance(star_D(a, id), a)), 1e-14));
    out.push_back(check("D.associativity", sup_distance(star_D(star_D(a, b), c), star_D(a, star_D(b, c))), 1e-11));
    out.push_back(check("D.involution_antihomomorphism",
                        sup_distance(involution_D(star_D(a, b)), star_D(involution_D(b), involution_D(a))), 1e-11));
    for (int i = 0; i < 3; i++)
    {
      const auto &V = kBasis[i];
      const auto rhs = star_D(derive_D(V, a), b) + star_D(a, derive_D(V, b));
      out.push_back(check(std::string("D.leibniz.") + kAxisNames[i], sup_distance(derive_D(V, star_D(a, b)), rhs), 1e-8));
    }
    out.push_back(check("D.traciality", std::abs(trace_D(star_D(a, b)) - trace_D(star_D(b, a))), 1e-10));
    for (int i = 0; i < 3; i++)
    {
      out.push_back(check(std::string("D.trace_invariance.") + kAxisNames[i], std::abs(trace_D(derive_D(kBasis[i], a))), 1e-10));
    }
  }
  {
    const auto a = random_E(P, rng, {0, 1}), b = random_E(P, rng, {-1, 0}), c = random_E(P, rng, {0, 1});
    const auto id = EElement::identity(P);
    out.push_back(check("E.unit", std::max(sup_distance(star_E(id, a), a), sup_distance(star_E(a, id), a)), 1e-14));
    out.push_back(check("E.associativity", sup_distance(star_E(star_E(a, b), c), star_E(a, star_E(b, c))), 1e-11));
    out.push_back(check("E.involution_antihomomorphism",
                        sup_distance(involution_E(star_E(a, b)), star_E(involution_E(b), involution_E(a))), 1e-11));
    for (int i = 0; i < 3; i++)
    {
      const auto &V = kBasis[i];
      const auto rhs = star_E(derive_E(V, a), b) + star_E(a, derive_E(V, b));
      out.push_back(check(std::string("E.leibniz.") + kAxisNames[i], sup_distance(derive_E(V, star_E(a, b)), rhs), 1e-8));
    }
    out.push_back(check("E.traciality", std::abs(trace_E(star_E(a, b)) - trace_E(star_E(b, a))), 1e-10));
    out.push_back(check("E.trace_of_unit", std::abs(trace_E(id) - 2 * P.mu), 1e-14));
  }
}

void kang_checks(const Config &config, std::vector<CheckResult> &out)
{
  const Params &P = config.params;
  const auto K = kang_projection(P, config.smoothstep);
  out.push_back(check("kang.partition_of_unity", partition_of_unity(K.R), 1e-12));
  out.push_back(check("kang.projection_idempotent", K.idempotency_defect, 1e-10));
  out.push_back(check("kang.projection_selfadjoint", K.adjoint_defect, 1e-10));
  out.push_back(check("kang.left_normalization",
                      sup_distance(inner_LE(K.R.element, K.R.element), EElement::identity(P)), 1e-10));
  out.push_back(check("kang.summation_identity", summation_identity_check(K.R), 1e-10));
  std::mt19937_64 rng(2025);
  const auto f1 = random_Xi(P, rng), f2 = random_Xi(P, rng), f3 = random_Xi(P, rng);
  out.push_back(check("bimodule.associativity",
                      sup_norm(act_left(inner_LE(f1, f2), f3) - act_right(f1, inner_RD(f2, f3))), 1e-10));
}

void connection_checks(const Config &config, std::vector<CheckResult> &out)
{
  const Params &P = config.params;
  std::mt19937_64 rng(2026);
  const auto f = random_Xi(P, rng), g = random_Xi(P, rng);
  const auto a = random_D(P, rng, {-1, 0, 1});
  const KangR R = kang_R(P, config.smoothstep);

  struct Case
  {
    ConnectionKind kind;
    bool left;  // the left identity holds
  };
  const std::vector<Case> cases = {
      {Grassmannian{R}, false}, {Nabla0{}, true}, {admissible_nabla1(P), true}, {Nabla2{}, false}, {Nabla3{2.0}, true}};
  for (const auto &[kind, left] : cases)
  {
    double right_res = 0, left_res = 0, leib = 0;
    for (const auto &v : kBasis)
    {
      const auto r = compatibility_residual(kind, v, f, g);
      right_res = std::max(right_res, r.right);
      left_res = std::max(left_res, r.left);
      leib = std::max(leib, leibniz_residual(kind, v, f, a));
    }
    const std::string name = kind_name(kind);
    out.push_back(check("connection." + name + ".right_compatibility", right_res, 1e-8));
    if (left)
    {
      out.push_back(check("connection." + name + ".left_compatibility", left_res, 1e-8));
    }
    out.push_back(check("connection." + name + ".leibniz", leib, 1e-8));
  }

  const std::vector<ConnectionKind> closed = {Nabla0{}, admissible_nabla1(P), Nabla2{}, Nabla3{config.alpha}};
  for (const auto &kind : closed)
  {
    const auto ref = closed_form_curvature(kind, P);
    if (ref)
    {
      out.push_back(check("curvature." + kind_name(kind) + ".closed_form",
                          curvature_deviation(curvature(kind, P), *ref), 1e-7));
    }
  }
  const double ym0 = 2 * kPi * kPi / P.mu;
  out.push_back(check("ym.nabla0", std::abs(ym_functional(Nabla0{}, P).value - ym0) / ym0, 1e-6));
  const double ym2 = 2 * P.mu * P.nu * P.nu + ym0;
  out.push_back(check("ym.nabla2", std::abs(ym_functional(Nabla2{}, P).value - ym2) / ym2, 1e-6));
  out.push_back(check("critical.nabla0", critical_residuals(Nabla0{}, P).max(), 1e-7));
  out.push_back(check("critical.nabla1", critical_residuals(admissible_nabla1(P), P).max(), 1e-7));
}

void sigma_checks(const Config &config, std::vector<CheckResult> &out)
{
  const Params &P = config.params;
  const auto rep = bound_report(P, Nabla0{}, config.smoothstep);
  out.push_back(check("sigma.energy_ge_direct_bound", std::max(0.0, rep.bound_direct - rep.s_energy), rep.tolerance));
  out.push_back(
      check("sigma.direct_ge_curvature_bound", std::max(0.0, rep.bound_curvature - rep.bound_direct), rep.tolerance));
  const KangR R = kang_R(P, config.smoothstep);
  const auto g = bound_report(P, Grassmannian{R}, config.smoothstep);
  const double routes = std::max({std::abs(g.curvature.xy - g.c_xy), std::abs(g.curvature.xz - g.c_xz),
                                  std::abs(g.curvature.yz - g.c_yz), std::abs(g.curvature.total - g.c_total)});
  out.push_back(check("sigma.grassmannian_charge_routes", routes, 1e-6));
  const auto ex4 = example4_report(config.example4_N, P.nu, config.smoothstep);
  out.push_back(check("sigma.example4_integrand", ex4.integrand_residual, 1e-9));
}

void dirac_checks(const Config &config, std::vector<CheckResult> &out)
{
  const Params &P = config.params;
  const int K = config.dirac_K;
  double defect = 0;
  for (int p = -P.pmax; p <= P.pmax; p++)
  {
    defect = std::max(defect, build_block(P, p, K).hermiticity_defect);
  }
  out.push_back(check("dirac.hermiticity", defect, 1e-6));

  const auto ev = block_eigenvalues(build_block(P, 0, K));
  std::vector<double> ref;
  for (int m = -K; m <= K; m++)
  {
    for (int n = -K; n <= K; n++)
    {
      const double r = kTwoPi * std::sqrt(double(m * m + n * n));
      ref.push_back(r);
      ref.push_back(-r);
    }
  }
  std::sort(ref.begin(), ref.end());
  double err = 0;
  for (std::size_t i = 0; i < ev.size(); i++)
  {
    err = std::max(err, std::abs(ev[i] - ref[i]));
  }
  out.push_back(check("dirac.p0_closed_form", err, 1e-8));

  Params small = P;
  small.pmax = 2;
  out.push_back(check("dirac.commutator", commutator_check(trig_polynomial(small, 7), 8).deviation, 1e-6));
  const auto lb = lower_bound_check(P, 8, 200, 11);
  out.push_back(check("dirac.lower_bound", std::max(0.0, -lb.min_slack), 1e-9));
}

CommandOutput cmd_verify(const Config &config)
{
  const auto checks = invariant_suite(config);
  Json list = Json::array();
  int failed = 0;
  std::ostringstream log, csv;
  csv << "name,residual,tolerance,pass\n";
  for (const auto &c : checks)
  {
    Json j;
    j["name"] = c.name;
    j["residual"] = number(c.residual);
    j["tolerance"] = number(c.tolerance);
    j["pass"] = c.pass;
    list.push_back(j);
    failed += !c.pass;
    log << (c.pass ? "PASS " : "FAIL ") << c.name << " residual=" << j["residual"].dump()
        << " tolerance=" << j["tolerance"].dump() << "\n";
    csv << c.name << "," << j["residual"].dump() << "," << j["tolerance"].dump() << "," << (c.pass ? "true" : "false")
        << "\n";
  }
  log << (checks.size() - failed) << " passed, " << failed << " failed\n";
  Json result;
  result["checks"] = list;
  result["passed"] = checks.size() - failed;
  result["failed"] = failed;
  CommandOutput out = emit("verify", config, result, failed ? 1 : 0);
  if (config.format == "csv")
  {
    out.text = csv.str();
  }
  out.log = log.str();
  return out;
}

CommandOutput cmd_ym(const Config &config)
{
  const Params &P = config.params;
  if (config.format == "csv")
  {
    for (double mu : config.scan_mu)
    {
      Params q = P;
      q.mu = mu;
      q.validate();
    }
    CommandOutput out;
    out.text = scan_csv(ym_scan(P, config.scan_c, config.scan_mu, config.scan_alpha));
    return out;
  }
  const auto kind = make_connection(config);
  const auto theta = curvature(kind, P);
  const auto ym = ym_functional(theta);
  Json result;
  result["connection"] = kind_name(kind);
  result["ym"] = number(ym.value);
  result["imag_residue"] = number(ym.imag);
  bool known = false;
  const double expected = ym_closed_form(kind, P, known);
  if (known)
  {
    result["closed_form"] = number(expected);
    result["relative_error"] = number(std::abs(ym.value - expected) / std::abs(expected));
  }
  const double ym0 = 2 * kPi * kPi / P.mu;
  result["ym_nabla0"] = number(ym0);
  result["margin_vs_nabla0"] = number(ym0 - ym.value);
  result["multiplier_defect"] = number(theta.multiplier_defect);
  result["critical_residuals"] = to_json(critical_residuals(kind, P));
  result["admissibility"] = admissibility_json(kind, P);
  return emit("ym", config, result);
}

CommandOutput cmd_energy(const Config &config)
{
  config.params.validate_kang();
  const auto K = kang_projection(config.params, config.smoothstep);
  Json result;
  result["s_energy"] = number(energy(K.P));
  result["trace_P"] = number(trace_D(K.P).real());
  result["idempotency_defect"] = number(K.idempotency_defect);
  result["adjoint_defect"] = number(K.adjoint_defect);
  return emit("energy", config, result);
}

CommandOutput cmd_charge(const Config &config)
{
  const Params &P = config.params;
  P.validate_kang();
  const auto K = kang_projection(P, config.smoothstep);
  const auto kind = make_connection(config);
  const auto X = LieVector::X(), Y = LieVector::Y(), Z = LieVector::Z();
  const double xy = charge_pair(K.P, X, Y), xz = charge_pair(K.P, X, Z), yz = charge_pair(K.P, Y, Z);
  Json direct;
  direct["c_xy"] = number(xy);
  direct["c_xz"] = number(xz);
  direct["c_yz"] = number(yz);
  direct["c_total"] = number(xy + xz + yz);
  Json result;
  result["connection"] = kind_name(kind);
  result["direct"] = direct;
  result["curvature_route"] = to_json(charge_via_curvature(K.R, kind));
  return emit("charge", config, result);
}

CommandOutput cmd_bound(const Config &config)
{
  config.params.validate_kang();
  const auto rep = bound_report(config.params, make_connection(config), config.smoothstep);
  const bool holds = rep.energy_ge_direct && rep.direct_ge_curvature && rep.direct_ge_total;
  return emit("bound", config, to_json(rep), holds ? 0 : 1);
}

CommandOutput cmd_dirac(const Config &config)
{
  const Params &P = config.params;
  const auto model = config.dirac_model == "flat" ? BlockModel::flat : BlockModel::full;
  const auto scope = config.dirac_scope == "p0" ? SpectrumScope::p_zero_only : SpectrumScope::all_blocks;
  const auto rep = spectrum(P, config.dirac_K, model, scope);
  if (config.format == "csv")
  {
    CommandOutput out;
    out.text = spectrum_csv(rep);
    return out;
  }
  Json result;
  result["spectrum"] = to_json(rep);
  if (config.hochschild_K > 0)
  {
    P.validate_kang();
    const auto K = kang_projection(P, config.smoothstep);
    const auto h = hochschild_energy(K.P, config.hochschild_K);
    const double direct = energy(K.P);
    Json hj = to_json(h);
    hj["direct_energy"] = number(direct);
    hj["deviation"] = number(std::abs(h.energy - direct));
    result["hochschild"] = hj;
  }
  return emit("dirac", config, result);
}

CommandOutput cmd_example4(const Config &config)
{
  return emit("example4", config, to_json(example4_report(config.example4_N, config.params.nu, config.smoothstep)));
}

}  // namespace

void apply_setting(Config &config, const std::string &raw_key, const std::string &raw_value)
{
  const std::string key = trim(raw_key), value = trim(raw_value);
  Params &P = config.params;
  if (key == "c")
  {
    P.c = parse_int(key, value);
  }
  else if (key == "mu")
  {
    P.mu = parse_double(key, value);
  }
  else if (key == "nu")
  {
    P.nu = parse_double(key, value);
  }
  else if (key == "nx")
  {
    P.nx = parse_int(key, value);
  }
  else if (key == "ny")
  {
    P.ny = parse_int(key, value);
  }
  else if (key == "pmax")
  {
    P.pmax = parse_int(key, value);
  }
  else if (key == "connection")
  {
    config.connection = one_of(key, value, {"grassmannian", "nabla0", "nabla1", "nabla2", "nabla3"});
  }
  else if (key == "nabla1.profile")
  {
    config.nabla1_profile = one_of(key, value, {"admissible", "literal"});
  }
  else if (key == "alpha")
  {
    config.alpha = parse_double(key, value);
  }
  else if (key == "smoothstep")
  {
    config.smoothstep = smoothstep_from_string(one_of(key, value, {"septic", "cubic"}));
  }
  else if (key == "dirac.K")
  {
    config.dirac_K = parse_int(key, value);
  }
  else if (key == "dirac.model")
  {
    config.dirac_model = one_of(key, value, {"full", "flat"});
  }
  else if (key == "dirac.scope")
  {
    config.dirac_scope = one_of(key, value, {"all", "p0"});
  }
  else if (key == "hochschild.K")
  {
    config.hochschild_K = parse_int(key, value);
  }
  else if (key == "example4.N")
  {
    config.example4_N = parse_int(key, value);
  }
  else if (key == "scan.c")
  {
    config.scan_c.clear();
    for (const auto &item : split_list(value))
    {
      config.scan_c.push_back(parse_int(key, item));
    }
  }
  else if (key == "scan.mu" || key == "scan.alpha")
  {
    auto &target = key == "scan.mu" ? config.scan_mu : config.scan_alpha;
    target.clear();
    for (const auto &item : split_list(value))
    {
      target.push_back(parse_double(key, item));
    }
  }
  else if (key == "out")
  {
    config.out = value;
  }
  else if (key == "format")
  {
    config.format = one_of(key, value, {"json", "csv"});
  }
  else
  {
    throw UsageError("config: unknown key '" + key + "'");
  }
}

void apply_config_text(Config &config, const std::string &text)
{
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line))
  {
    number++;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty())
    {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos || trim(line.substr(0, eq)).empty())
    {
      throw UsageError("config line " + std::to_string(number) + ": expected 'key = value', got '" + line + "'");
    }
    apply_setting(config, line.substr(0, eq), line.substr(eq + 1));
  }
}

void validate(const Config &config)
{
  try
  {
    config.params.validate();
  }
  catch (const std::exception &e)
  {
    throw UsageError(std::string("config: ") + e.what());
  }
  if (config.dirac_K < 4)
  {
    throw UsageError("config: dirac.K must be at least 4");
  }
  if (config.hochschild_K < 0)
  {
    throw UsageError("config: hochschild.K must be non-negative");
  }
  if (config.scan_c.empty() || config.scan_mu.empty() || config.scan_alpha.empty())
  {
    throw UsageError("config: scan grids must be non-empty");
  }
}

Json to_json(const Config &config)
{
  Json j;
  j["params"] = to_json(config.params);
  j["connection"] = config.connection;
  j["nabla1.profile"] = config.nabla1_profile;
  j["alpha"] = number(config.alpha);
  j["smoothstep"] = to_string(config.smoothstep);
  j["dirac.K"] = config.dirac_K;
  j["dirac.model"] = config.dirac_model;
  j["dirac.scope"] = config.dirac_scope;
  j["hochschild.K"] = config.hochschild_K;
  j["example4.N"] = config.example4_N;
  j["scan.c"] = config.scan_c;
  Json mus = Json::array(), alphas = Json::array();
  for (double m : config.scan_mu)
  {
    mus.push_back(number(m));
  }
  for (double a : config.scan_alpha)
  {
    alphas.push_back(number(a));
  }
  j["scan.mu"] = mus;
  j["scan.alpha"] = alphas;
  j["format"] = config.format;
  return j;
}

ConnectionKind make_connection(const Config &config)
{
  const Params &P = config.params;
  if (config.connection == "grassmannian")
  {
    return Grassmannian{kang_R(P, config.smoothstep)};
  }
  if (config.connection == "nabla1")
  {
    return config.nabla1_profile == "literal" ? literal_nabla1(P) : admissible_nabla1(P);
  }
  if (config.connection == "nabla2")
  {
    return Nabla2{};
  }
  if (config.connection == "nabla3")
  {
    return Nabla3{config.alpha};
  }
  return Nabla0{};
}

std::vector<CheckResult> invariant_suite(const Config &config)
{
  config.params.validate_kang();
  std::vector<CheckResult> out;
  algebra_checks(config.params, out);
  kang_checks(config, out);
  connection_checks(config, out);
  sigma_checks(config, out);
  dirac_checks(config, out);
  return out;
}

CommandOutput run_command(const std::string &command, const Config &config)
{
  static const std::map<std::string, std::function<CommandOutput(const Config &)>> table = {
      {"verify", cmd_verify}, {"ym", cmd_ym},       {"energy", cmd_energy},     {"charge", cmd_charge},
      {"bound", cmd_bound},   {"dirac", cmd_dirac}, {"example4", cmd_example4},
  };
  const auto it = table.find(command);
  if (it == table.end())
  {
    throw UsageError("unknown command '" + command + "'");
  }
  validate(config);
  try
  {
    return it->second(config);
  }
  catch (const std::invalid_argument &e)
  {
    throw UsageError(command + ": " + e.what());
  }
  catch (const std::domain_error &e)
  {
    throw UsageError(command + ": " + e.what());
  }
}

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Numerical checks for the quantum Heisenberg manifold sigma model"};
  app.name("qhm");
  std::string command, config_path, out_path, format;
  std::vector<std::string> sets;
  app.add_option("command", command, "verify | ym | energy | charge | bound | dirac | example4")
      ->required()
      ->check(CLI::IsMember(kCommands));
  app.add_option("--config", config_path, "flat key = value file");
  app.add_option("--set", sets, "KEY=VALUE override, repeatable")->allow_extra_args(false);
  app.add_option("--out", out_path, "write the report here instead of stdout");
  app.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::CallForHelp &e)
  {
    out << app.help();
    return 0;
  }
  catch (const CLI::ParseError &e)
  {
    err << "qhm: " << e.what() << "\n";
    return 2;
  }

  try
  {
    Config config;
    if (!config_path.empty())
    {
      std::ifstream in(config_path);
      if (!in)
      {
        throw UsageError("config: cannot read '" + config_path + "'");
      }
      std::stringstream buf;
      buf << in.rdbuf();
      apply_config_text(config, buf.str());
    }
    for (const auto &s : sets)
    {
      const auto eq = s.find('=');
      if (eq == std::string::npos)
      {
        throw UsageError("--set expects KEY=VALUE, got '" + s + "'");
      }
      apply_setting(config, s.substr(0, eq), s.substr(eq + 1));
    }
    if (!out_path.empty())
    {
      config.out = out_path;
    }
    if (!format.empty())
    {
      config.format = format;
    }

    const auto result = run_command(command, config);
    err << result.log;
    if (config.out.empty())
    {
      out << result.text;
    }
    else
    {
      std::ofstream file(config.out, std::ios::binary);
      file << result.text;
      if (!file)
      {
        err << "qhm: cannot write '" << config.out << "'\n";
        return 2;
      }
    }
    return result.exit_code;
  }
  catch (const UsageError &e)
  {
    err << "qhm: " << e.what() << "\n";
    return 2;
  }
  catch (const std::exception &e)
  {
    err << "qhm " << command << ": " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qhm
