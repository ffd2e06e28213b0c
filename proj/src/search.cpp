// Copyright 2026 The fairdiv Authors.
//
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

#include "fairdiv/search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fairdiv {

SearchTrace binary_search_guesses(std::span<const double> c, SearchGoal goal,
                                  const std::function<bool(double)>& probe) {
  SearchTrace trace;
  if (c.empty()) return trace;
  auto eval = [&](std::size_t i) {
    const bool ok = probe(c[i]);
    trace.probes.emplace_back(c[i], ok);
    return ok;
  };
  const std::size_t n = c.size();
  if (goal == SearchGoal::kLargestSuccess) {
    if (!eval(0)) return trace;
    std::size_t lo = 0;  // known success
    std::size_t hi = n;  // known failure (virtual)
    while (hi - lo > 1) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (eval(mid)) lo = mid; else hi = mid;
    }
    trace.final_index = lo;
  } else {
    if (!eval(n - 1)) return trace;
    std::ptrdiff_t lo = -1;                           // known failure (virtual)
    std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n - 1);  // known success
    while (hi - lo > 1) {
      const std::ptrdiff_t mid = lo + (hi - lo) / 2;
      if (eval(static_cast<std::size_t>(mid))) hi = mid; else lo = mid;
    }
    trace.final_index = static_cast<std::size_t>(hi);
  }
  return trace;
}

std::vector<double> normalize_candidates(std::vector<double> values) {
  std::erase_if(values, [](double v) { return std::isnan(v) || v < 0.0; });
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

std::vector<double> geometric_grid(double lo, double hi, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("continuous search needs eps > 0");
  if (!(lo > 0.0) || !std::isfinite(lo) || !std::isfinite(hi)) return {};
  std::vector<double> grid;
  // i-th point computed directly, not by repeated multiplication.
  for (int i = 0;; ++i) {
    const double g = lo * std::pow(1.0 + eps, i);
    grid.push_back(g);
    if (g >= hi) break;
  }
  return grid;
}

}  // namespace fairdiv
