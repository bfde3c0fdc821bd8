// Copyright the qhm-lab contributors.
// SPDX-License-Identifier: Apache-2.0

#include "qhm/serialize.hpp"

#include <json.hpp>
#include <cstdio>
#include <stdexcept>

namespace qhm
{

namespace
{

using nlohmann::ordered_json;

ordered_json params_json(const Params &P)
{
  ordered_json j;
  j["c"] = P.c;
  j["mu"] = P.mu;
  j["nu"] = P.nu;
  j["nx"] = P.nx;
  j["ny"] = P.ny;
  j["pmax"] = P.pmax;
  return j;
}

Params params_of(const ordered_json &j)
{
  Params P;
  P.c = j.at("c").get<int>();
  P.mu = j.at("mu").get<double>();
  P.nu = j.at("nu").get<double>();
  P.nx = j.at("nx").get<int>();
  P.ny = j.at("ny").get<int>();
  P.pmax = j.at("pmax").get<int>();
  P.validate();
  return P;
}

ordered_json grid_json(const TorusGrid &g)
{
  ordered_json j;
  j["a"] = g.a();
  j["b"] = g.b();
  j["nx"] = g.nx();
  j["ny"] = g.ny();
  j["periodic_x"] = g.periodic_x();
  return j;
}

ordered_json samples_json(const TorusGrid &g)
{
  std::vector<double> re, im;
  re.reserve(g.samples().size());
  im.reserve(g.samples().size());
  for (const auto &v : g.samples())
  {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  ordered_json j;
  j["re"] = re;
  j["im"] = im;
  return j;
}

TorusGrid grid_of(const ordered_json &gj, const ordered_json &data)
{
  TorusGrid g(gj.at("a").get<double>(), gj.at("b").get<double>(), gj.at("nx").get<int>(),
              gj.at("ny").get<int>(), gj.at("periodic_x").get<bool>());
  const auto re = data.at("re").get<std::vector<double>>();
  const auto im = data.at("im").get<std::vector<double>>();
  if (re.size() != g.samples().size() || im.size() != g.samples().size())
  {
    throw std::invalid_argument("fixture: sample count does not match the grid");
  }
  for (size_t k = 0; k < re.size(); k++)
  {
    g.samples()[k] = {re[k], im[k]};
  }
  return g;
}

std::string dump(const ordered_json &j)
{
  // ordered_json keeps insertion order; dump() prints doubles round-trip exact
  return j.dump(1);
}

ordered_json parse(const std::string &text, const char *kind)
{
  ordered_json j;
  try
  {
    j = ordered_json::parse(text);
  }
  catch (const nlohmann::json::exception &e)
  {
    throw std::invalid_argument(std::string("fixture: ") + e.what());
  }
  if (j.at("kind").get<std::string>() != kind)
  {
    throw std::invalid_argument(std::string("fixture: expected kind ") + kind);
  }
  return j;
}

ordered_json meta_json(const Metadata &meta)
{
  ordered_json m = ordered_json::object();
  for (const auto &[k, v] : meta)
  {
    m[k] = v;
  }
  return m;
}

template <Algebra A>
std::string save_element(const Element<A> &a, int nx, int ny, const Metadata &meta,
                         const char *kind)
{
  const auto grids = a.sample(nx, ny);
  ordered_json j;
  j["kind"] = kind;
  j["params"] = params_json(a.params());
  j["support"] = a.support();
  const double L = a.period();
  j["grid"] = grid_json(TorusGrid(0.0, L, nx, ny, true));
  ordered_json comps = ordered_json::object();
  for (const auto &[p, g] : grids)
  {
    comps[std::to_string(p)] = samples_json(g);
  }
  j["components"] = comps;
  j["metadata"] = meta_json(meta);
  return dump(j);
}

template <Algebra A>
Element<A> load_element(const std::string &text, const char *kind)
{
  const auto j = parse(text, kind);
  const Params P = params_of(j.at("params"));
  std::map<int, TorusGrid> grids;
  for (int p : j.at("support").get<std::vector<int>>())
  {
    grids.emplace(p, grid_of(j.at("grid"), j.at("components").at(std::to_string(p))));
  }
  return Element<A>::from_samples(P, grids);
}

}  // namespace

std::string params_to_json(const Params &params)
{
  return params_json(params).dump();
}

Params params_from_json(const std::string &text)
{
  return params_of(ordered_json::parse(text));
}

std::string save(const DElement &a, int nx, int ny, const Metadata &meta)
{
  return save_element(a, nx, ny, meta, "D");
}

std::string save(const EElement &a, int nx, int ny, const Metadata &meta)
{
  return save_element(a, nx, ny, meta, "E");
}

std::string save(const XiElement &f, int nx, int ny, const Metadata &meta)
{
  const auto g = f.sample(nx, ny);
  ordered_json j;
  j["kind"] = "Xi";
  j["params"] = params_json(f.params());
  j["support"] = std::vector<int>{};
  j["grid"] = grid_json(g);
  j["components"] = ordered_json::object({{"0", samples_json(g)}});
  j["metadata"] = meta_json(meta);
  return dump(j);
}

std::string save(const KangR &R, int nx, int ny)
{
  char mu[64];
  std::snprintf(mu, sizeof mu, "%.17g", R.mu);
  return save(R.element, nx, ny, {{"generator", "kang"}, {"profile", to_string(R.profile)}, {"mu", mu}});
}

DElement load_D(const std::string &text)
{
  return load_element<Algebra::D>(text, "D");
}

EElement load_E(const std::string &text)
{
  return load_element<Algebra::E>(text, "E");
}

XiElement load_Xi(const std::string &text)
{
  const auto j = parse(text, "Xi");
  return XiElement::from_samples(params_of(j.at("params")),
                                 grid_of(j.at("grid"), j.at("components").at("0")));
}

Metadata load_metadata(const std::string &text)
{
  const auto j = ordered_json::parse(text);
  Metadata m;
  for (const auto &[k, v] : j.at("metadata").items())
  {
    m[k] = v.get<std::string>();
  }
  return m;
}

}  // namespace qhm
