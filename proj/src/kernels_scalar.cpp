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

#include <cmath>
#include <limits>

#include "fairdiv/kernels.hpp"

namespace fairdiv::kernels::scalar {
namespace {

inline double point_distance(MetricKind metric, const SoaBlock& b, const double* q,
                             std::size_t i) {
  double acc = 0.0;
  if (metric == MetricKind::kEuclidean) {
    for (std::size_t j = 0; j < b.dim; ++j) {
      const double t = b.coords[j * b.stride + i] - q[j];
      acc = acc + t * t;
    }
    return std::sqrt(acc);
  }
  for (std::size_t j = 0; j < b.dim; ++j) {
    acc = acc + std::fabs(b.coords[j * b.stride + i] - q[j]);
  }
  return acc;
}

}  // namespace

void distances(MetricKind metric, const SoaBlock& b, const double* q, double* out) {
  for (std::size_t i = 0; i < b.count; ++i) out[i] = point_distance(metric, b, q, i);
}

void relax(MetricKind metric, const SoaBlock& b, const double* q, double* min_dist) {
  for (std::size_t i = 0; i < b.count; ++i) {
    const double d = point_distance(metric, b, q, i);
    if (d < min_dist[i]) min_dist[i] = d;
  }
}

void elementwise_min(const double* values, double* min_dist, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    if (values[i] < min_dist[i]) min_dist[i] = values[i];
  }
}

std::size_t relax_argmax(MetricKind metric, const SoaBlock& b, const double* q, double* min_dist) {
  std::size_t best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < b.count; ++i) {
    const double d = point_distance(metric, b, q, i);
    if (d < min_dist[i]) min_dist[i] = d;
    if (min_dist[i] > best_value) {
      best_value = min_dist[i];
      best = i;
    }
  }
  return best;
}

}  // namespace fairdiv::kernels::scalar
