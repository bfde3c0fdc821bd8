// Copyright the qhm-lab contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "qhm/jet.hpp"
#include "qhm/numerics.hpp"

namespace qhm
{

enum class Algebra
{
  D,  // rho-invariant functions, fundamental domain [0, 1) in x
  E   // gamma-invariant functions, fundamental domain [0, 2 mu) in x
};

// Jet of the element around (x, y) in the p-th component, truncated at order.
using JetFn = std::function<Jet(double x, double y, int p, int order)>;

// Element of the Lie algebra spanned by X, Y, Z with [X, Y] = c Z.
struct LieVector
{
  double x = 0.0, y = 0.0, z = 0.0;

  static LieVector X() { return {1.0, 0.0, 0.0}; }
  static LieVector Y() { return {0.0, 1.0, 0.0}; }
  static LieVector Z() { return {0.0, 0.0, 1.0}; }

  friend bool operator==(const LieVector &, const LieVector &) = default;
};

LieVector bracket(const LieVector &v, const LieVector &w, int c);

// An element is an exact evaluator plus bookkeeping: its finite p-support and
// the x positions (reduced modulo the fundamental period) where it may fail
// to be smooth. Quadrature splits its panels at those positions.
template <Algebra A>
class Element
{
public:
  Element(const Params &params, std::vector<int> support, std::vector<double> breaks, JetFn fn);

  static Element zero(const Params &params);
  static Element identity(const Params &params);
  // Rebuilds an element from samples on the fundamental domain. x is
  // interpolated locally with degree-9 polynomials whose ghost nodes come
  // from the invariance rule evaluated with cocycle integer cocycle_c; y is
  // interpolated trigonometrically.
  static Element from_samples(const Params &params, const std::map<int, TorusGrid> &grids,
                              int cocycle_c);
  static Element from_samples(const Params &params, const std::map<int, TorusGrid> &grids)
  {
    return from_samples(params, grids, params.c);
  }

  const Params &params() const { return impl_->params; }
  const std::vector<int> &support() const { return impl_->support; }
  bool supports(int p) const;
  const std::vector<double> &breaks() const { return impl_->breaks; }
  // Length of the fundamental x interval: 1 for D, 2 mu for E.
  double period() const;

  Jet jet(double x, double y, int p, int order) const;
  cplx operator()(double x, double y, int p) const { return jet(x, y, p, 0).value(); }

  // Samples of every supported component on the fundamental domain.
  std::map<int, TorusGrid> sample(int nx, int ny) const;

private:
  struct Impl
  {
    Params params;
    std::vector<int> support;
    std::vector<double> breaks;
    JetFn fn;
  };
  std::shared_ptr<const Impl> impl_;
};

using DElement = Element<Algebra::D>;
using EElement = Element<Algebra::E>;

template <Algebra A>
Element<A> operator+(const Element<A> &a, const Element<A> &b);
template <Algebra A>
Element<A> operator-(const Element<A> &a, const Element<A> &b);
template <Algebra A>
Element<A> operator*(cplx s, const Element<A> &a);

// p = 0 element whose value depends on x only; for E it must be 2 mu periodic.
template <Algebra A>
Element<A> x_function(const Params &params, std::function<Series(double x, int order)> f,
                      std::vector<double> breaks = {});

DElement star_D(const DElement &a, const DElement &b);
EElement star_E(const EElement &a, const EElement &b);
DElement involution_D(const DElement &a);
EElement involution_E(const EElement &a);
DElement derive_D(const LieVector &v, const DElement &a);
// Derivations of E induced through the bimodule by the minimal connection.
EElement derive_E(const LieVector &v, const EElement &a);
cplx trace_D(const DElement &a);
cplx trace_E(const EElement &a);
// Sup-norm residual of the invariance identity over k in {-2, -1, 1, 2}.
double check_invariance(const DElement &a);
double check_invariance(const EElement &a);

// Max of |a| over a fixed probe set: a 16 x 16 grid on the fundamental
// domain times every supported p (and p in [-2, 2]).
template <Algebra A>
double sup_norm(const Element<A> &a);
template <Algebra A>
double sup_distance(const Element<A> &a, const Element<A> &b)
{
  return sup_norm(a - b);
}

}  // namespace qhm
