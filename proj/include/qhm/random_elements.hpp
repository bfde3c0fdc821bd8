// Copyright the qhm-lab contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <random>
#include <vector>

#include "qhm/bimodule.hpp"

namespace qhm
{

// Smooth test elements built from Gaussian bumps in x times characters in y.
// D and E elements are made invariant by summing the bumps over the
// relevant Z-action, so they satisfy their invariance identities exactly.

struct Bump
{
  cplx amplitude;
  double center;
  double width;
  int frequency;  // y character e(frequency * y)
};

// Cut-off radius of a bump in units of its width.
inline constexpr double kBumpRadius = 9.0;

Series bump_series(const Bump &b, double x, int order);

std::vector<Bump> random_bumps(std::mt19937_64 &rng, int count, double center_lo,
                               double center_hi, double width_lo = 0.07, double width_hi = 0.1);

DElement zak_D(const Params &params, std::vector<std::pair<int, Bump>> bumps);
EElement zak_E(const Params &params, std::vector<std::pair<int, Bump>> bumps);
XiElement bump_Xi(const Params &params, std::vector<Bump> bumps);

DElement random_D(const Params &params, std::mt19937_64 &rng, const std::vector<int> &support,
                  int terms = 2);
EElement random_E(const Params &params, std::mt19937_64 &rng, const std::vector<int> &support,
                  int terms = 2);
XiElement random_Xi(const Params &params, std::mt19937_64 &rng, int terms = 2);

}  // namespace qhm
