// Copyright the qhm-lab contributors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qhm/connections.hpp"
#include "qhm/random_elements.hpp"

using namespace qhm;

namespace
{

Params test_params()
{
  Params P;
  P.nx = 128;
  P.ny = 64;
  return P;
}

const LieVector kBasis[3] = {LieVector::X(), LieVector::Y(), LieVector::Z()};

}  // namespace

TEST_CASE("nabla0 acts by the stated differential operators")
{
  const Params P = test_params();
  const std::vector<Bump> b = {{cplx(1.0, 0.3), 0.02, 0.05, 1}, {cplx(-0.4, 0.0), -0.07, 0.06, 0}};
  const auto f = bump_Xi(P, b);
  const auto fz = connection_apply(Nabla0{}, LieVector::Z(), f);
  const auto fy = connection_apply(Nabla0{}, LieVector::Y(), f);
  const auto fx = connection_apply(Nabla0{}, LieVector::X(), f);
  const double h = 1e-5;
  double ez = 0, ey = 0, ex = 0;
  for (int i = 0; i < 21; i++)
  {
    for (int j = 0; j < 5; j++)
    {
      const double x = -0.3 + 0.03 * i, y = 0.17 * j + 0.05;
      const cplx v = oracle::xi(b, x, y);
      ez = std::max(ez, std::abs(fz(x, y) - cplx(0, kPi * x / P.mu) * v));
      const cplx dx = (oracle::xi(b, x + h, y) - oracle::xi(b, x - h, y)) / (2 * h);
      const cplx dy = (oracle::xi(b, x, y + h) - oracle::xi(b, x, y - h)) / (2 * h);
      ey = std::max(ey, std::abs(fy(x, y) + dx));
      ex = std::max(ex, std::abs(fx(x, y) + dy - cplx(0, kPi * P.c * x * x / (2 * P.mu)) * v));
    }
  }
  CHECK(ez < 1e-13);
  CHECK(ey < 1e-5);
  CHECK(ex < 1e-5);
}

TEST_CASE("grassmannian connection on the generator matches R . d(<R, R>_D)")
{
  const Params P = test_params();
  const KangR R = kang_R(P);
  const auto Pd = inner_RD(R.element, R.element);
  for (const auto &v : kBasis)
  {
    const auto lhs = connection_apply(Grassmannian{R}, v, R.element);
    const auto rhs = act_right(R.element, derive_D(v, Pd));
    double err = 0;
    for (int i = 0; i < 24; i++)
    {
      const double x = -1.1 * P.mu + 2.7 * P.mu * i / 23.0, y = 0.31;
      err = std::max(err, std::abs(lhs(x, y) - rhs(x, y)));
    }
    CHECK(err < 1e-10);
  }
  // The Grassmannian connection is compatible with the right inner product.
  std::mt19937_64 rng(31);
  const auto f = random_Xi(P, rng), g = random_Xi(P, rng);
  for (const auto &v : kBasis)
  {
    CHECK(compatibility_residual(Grassmannian{R}, v, f, g).right < 1e-8);
  }
}

TEST_CASE("compatibility with both inner products")
{
  Params P = test_params();
  std::mt19937_64 rng(32);
  const auto f = random_Xi(P, rng), g = random_Xi(P, rng);
  const std::vector<ConnectionKind> kinds = {Nabla0{}, admissible_nabla1(P), Nabla3{2.0}};
  for (const auto &kind : kinds)
  {
    CHECK(admissibility(kind, P).central);
    for (const auto &v : kBasis)
    {
      const auto r = compatibility_residual(kind, v, f, g);
      INFO(kind_name(kind));
      CHECK(r.right < 1e-8);
      CHECK(r.left < 1e-8);
    }
  }
  const auto zero = compatibility_residual(Nabla0{}, LieVector::X(), XiElement::zero(P), XiElement::zero(P));
  CHECK(zero.right == 0.0);
  CHECK(zero.left == 0.0);

  // nabla2 keeps the right identity but not the left one
  // (its defect is nu p <f, g>_L, so the test vectors need overlap at shift p = 1)
  const auto fa = bump_Xi(P, {{cplx(1.0), -0.45, 0.08, 0}});
  const auto ga = bump_Xi(P, {{cplx(0.0, 1.0), 0.45, 0.08, 1}});
  const auto r2 = compatibility_residual(Nabla2{}, LieVector::X(), fa, ga);
  CHECK(r2.right < 1e-8);
  CHECK(r2.left > 1e-4);
  CHECK_FALSE(admissibility(Nabla2{}, P).in_E);
  CHECK_FALSE(admissibility(Nabla3{1.0}, P).central);
  CHECK_FALSE(admissibility(Nabla3{0.5}, P).in_E);
  CHECK_FALSE(admissibility(literal_nabla1(P), P).central);
}

TEST_CASE("admissible nabla1 frequencies")
{
  const Params P;
  const auto n1 = admissible_nabla1(P);
  CHECK(std::abs(n1.g1.omega - kTwoPi * 5) < 1e-12);
  CHECK(std::abs(n1.g2.omega - kTwoPi * 5) < 1e-12);
  Params irr = P;
  irr.nu = 1.0 / std::sqrt(2.0) / 7.0;
  CHECK(admissible_nabla1(irr).g1.omega == 0.0);
}

TEST_CASE("Leibniz rule for every connection")
{
  const Params P = test_params();
  std::mt19937_64 rng(33);
  const auto f = random_Xi(P, rng);
  const auto a = random_D(P, rng, {-1, 0, 1});
  const std::vector<ConnectionKind> kinds = {Grassmannian{kang_R(P)}, Nabla0{}, admissible_nabla1(P),
                                             Nabla2{}, Nabla3{1.0}};
  for (const auto &kind : kinds)
  {
    for (const auto &v : kBasis)
    {
      INFO(kind_name(kind));
      CHECK(leibniz_residual(kind, v, f, a) < 1e-8);
    }
  }
}

TEST_CASE("perturbations are skew-adjoint elements of E")
{
  const Params P = test_params();
  const auto n1 = admissible_nabla1(P);
  for (const auto &e : {skew_HX(P, n1.g1), skew_HY(P, n1.g2), skew_GZ(P, 1.0), skew_GZ(P, 2.0)})
  {
    CHECK(sup_distance(involution_E(e), cplx(-1.0) * e) < 1e-12);
    CHECK(check_invariance(e) < 1e-12);
  }
}

TEST_CASE("curvature matches the closed forms")
{
  const Params P = test_params();
  const std::vector<ConnectionKind> kinds = {Nabla0{}, admissible_nabla1(P), Nabla2{}, Nabla3{1.0},
                                             Nabla3{2.0}};
  for (const auto &kind : kinds)
  {
    INFO(kind_name(kind));
    const auto th = curvature(kind, P);
    const auto ref = closed_form_curvature(kind, P);
    REQUIRE(ref.has_value());
    CHECK(curvature_deviation(th, *ref) < 1e-7);
    CHECK(th.multiplier_defect < 1e-8);
  }
  // nabla3 at alpha = 1: Theta(X, Y) = -c i cos(pi x / mu), and the printed
  // sign of Theta(Y, Z) is off.
  const auto th3 = curvature(Nabla3{1.0}, P);
  const double x = 0.07;
  CHECK(std::abs(th3.xy(x, 0.4, 0) - cplx(0, -P.c * std::cos(kPi * x / P.mu))) < 1e-8);
  CHECK(sup_distance(th3.yz, nabla3_printed_theta_yz(P, 1.0)) > 1.0);
  CHECK_FALSE(closed_form_curvature(Grassmannian{kang_R(P)}, P).has_value());
}

TEST_CASE("Yang-Mills values")
{
  for (double mu : {0.1, 0.2})
  {
    Params P = test_params();
    P.mu = mu;
    const auto ym0 = ym_functional(Nabla0{}, P);
    CHECK(std::abs(ym0.value - 2 * kPi * kPi / mu) < 1e-7);
    CHECK(ym0.imag < 1e-9);
  }
  const Params P = test_params();
  CHECK(std::abs(ym_functional(Nabla2{}, P).value -
                 (2 * P.mu * P.nu * P.nu + 2 * kPi * kPi / P.mu)) < 1e-7);
  CHECK(std::abs(ym_functional(admissible_nabla1(P), P).value - 2 * kPi * kPi / P.mu) < 1e-7);
  for (double alpha : {1.0, 2.0, 3.0})
  {
    const double ym3 = ym_functional(Nabla3{alpha}, P).value;
    CHECK(ym3 >= 0.0);
    // integer alpha: the excess over nabla0 is mu (c^2 + a^2), a = alpha pi / mu
    const double a = alpha * kPi / P.mu;
    CHECK(std::abs(ym3 - 2 * kPi * kPi / P.mu - P.mu * (P.c * P.c + a * a)) < 1e-6);
  }
}

TEST_CASE("critical point residuals")
{
  const Params P = test_params();
  CHECK(critical_residuals(Nabla0{}, P).max() < 1e-7);
  CHECK(critical_residuals(admissible_nabla1(P), P).max() < 1e-7);
  CHECK(critical_residuals(Nabla3{1.0}, P).max() > 1e-3);
}

TEST_CASE("scan csv layout")
{
  Params P = test_params();
  P.nx = P.ny = 64;
  const auto rows = ym_scan(P, {1}, {0.2}, {1.0});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].in_E);
  CHECK(rows[0].margin() < 0.0);
  const auto csv = scan_csv(rows);
  CHECK(csv.rfind("c,mu,alpha,ym,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
}
