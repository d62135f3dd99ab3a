// Copyright 2026 The vcloud Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace vcloud {

template <typename Scalar>
bool approx_equal(Scalar a, Scalar b, Scalar rel = Scalar(1e-9)) {
  return std::abs(a - b) <= rel * std::max({Scalar(1), std::abs(a), std::abs(b)});
}

/// Decimal text with `digits` significant digits ("%.6g" style).
inline std::string format_sig(double value, int digits = 6) {
  if (value == 0.0) return "0";  // also folds -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

/// `value` rounded to `digits` significant digits.
inline double round_sig(double value, int digits = 6) {
  return std::strtod(format_sig(value, digits).c_str(), nullptr);
}

}  // namespace vcloud
