// Copyright the qhm-lab contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "qhm/connections.hpp"
#include "qhm/dirac.hpp"
#include "qhm/sigma.hpp"

namespace qhm
{

// Insertion-ordered, so field order follows construction order.
using Json = nlohmann::ordered_json;

// v rounded to 12 significant digits. Serializing the result gives the
// shortest round-trip form of the rounded value, never more than 12 digits.
// Negative zero becomes zero.
double round_significant(double v, int digits = 12);
Json number(double v);

// Two-space indented, trailing newline.
std::string render_json(const Json &j);

Json to_json(const Params &params);
Json to_json(const YMValue &ym);
Json to_json(const CriticalResiduals &r);
Json to_json(const CurvatureCharge &c);
Json to_json(const ZTraceSplit &s);
Json to_json(const ChargeReport &r);
Json to_json(const Example4Report &r);
Json to_json(const PowerFit &f);
// The eigenvalue list itself goes to CSV; the JSON keeps its size.
Json to_json(const SpectrumReport &r);
Json to_json(const CommutatorReport &r);
Json to_json(const HochschildReport &r);
Json to_json(const LowerBoundReport &r);
Json to_json(const ScanRow &row);

}  // namespace qhm
