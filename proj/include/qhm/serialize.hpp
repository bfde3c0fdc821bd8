// Copyright the qhm-lab contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>

#include "qhm/bimodule.hpp"

namespace qhm
{

// JSON fixture container. Layout:
//   { "kind": "D" | "E" | "Xi", "params": {...}, "support": [p...],
//     "grid": {"a", "b", "nx", "ny", "periodic_x"},
//     "components": {"<p>": {"re": [...], "im": [...]}},   // row-major, j * nx + i
//     "metadata": {...} }
// Doubles are written with 17 significant digits so a round trip is exact.
// Loading rebuilds a sampled element that reproduces the stored nodes up to
// rounding in the trigonometric interpolation.

using Metadata = std::map<std::string, std::string>;

std::string params_to_json(const Params &params);
Params params_from_json(const std::string &text);

std::string save(const DElement &a, int nx, int ny, const Metadata &meta = {});
std::string save(const EElement &a, int nx, int ny, const Metadata &meta = {});
std::string save(const XiElement &f, int nx, int ny, const Metadata &meta = {});
// Records the generator's profile and mu in the metadata.
std::string save(const KangR &R, int nx, int ny);

DElement load_D(const std::string &text);
EElement load_E(const std::string &text);
XiElement load_Xi(const std::string &text);
Metadata load_metadata(const std::string &text);

}  // namespace qhm
