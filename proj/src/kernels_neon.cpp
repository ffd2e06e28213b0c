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

// NEON variants, two points per register. vfmaq is deliberately not used.

#include <arm_neon.h>

#include "fairdiv/kernels.hpp"

namespace fairdiv::kernels::neon {
namespace {

constexpr std::size_t kLanes = 2;

inline float64x2_t block_distance(MetricKind metric, const SoaBlock& b, const double* q,
                                  std::size_t i) {
  float64x2_t acc = vdupq_n_f64(0.0);
  if (metric == MetricKind::kEuclidean) {
    for (std::size_t j = 0; j < b.dim; ++j) {
      const float64x2_t t = vsubq_f64(vld1q_f64(b.coords + j * b.stride + i), vdupq_n_f64(q[j]));
      acc = vaddq_f64(acc, vmulq_f64(t, t));
    }
    return vsqrtq_f64(acc);
  }
  for (std::size_t j = 0; j < b.dim; ++j) {
    const float64x2_t t = vsubq_f64(vld1q_f64(b.coords + j * b.stride + i), vdupq_n_f64(q[j]));
    acc = vaddq_f64(acc, vabsq_f64(t));
  }
  return acc;
}

inline SoaBlock tail_view(const SoaBlock& b, std::size_t start) {
  SoaBlock t = b;
  t.coords = b.coords + start;
  t.count = b.count - start;
  return t;
}

}  // namespace

void distances(MetricKind metric, const SoaBlock& b, const double* q, double* out) {
  std::size_t i = 0;
  for (; i + kLanes <= b.count; i += kLanes) vst1q_f64(out + i, block_distance(metric, b, q, i));
  if (i < b.count) scalar::distances(metric, tail_view(b, i), q, out + i);
}

void relax(MetricKind metric, const SoaBlock& b, const double* q, double* min_dist) {
  std::size_t i = 0;
  for (; i + kLanes <= b.count; i += kLanes) {
    const float64x2_t d = block_distance(metric, b, q, i);
    vst1q_f64(min_dist + i, vminq_f64(d, vld1q_f64(min_dist + i)));
  }
  if (i < b.count) scalar::relax(metric, tail_view(b, i), q, min_dist + i);
}

void elementwise_min(const double* values, double* min_dist, std::size_t count) {
  std::size_t i = 0;
  for (; i + kLanes <= count; i += kLanes) {
    vst1q_f64(min_dist + i, vminq_f64(vld1q_f64(values + i), vld1q_f64(min_dist + i)));
  }
  if (i < count) scalar::elementwise_min(values + i, min_dist + i, count - i);
}

std::size_t relax_argmax(MetricKind metric, const SoaBlock& b, const double* q, double* min_dist) {
  // Per-lane first maximum, then the larger lane (lower index on ties).
  float64x2_t best = vdupq_n_f64(-__builtin_inf());
  const double start[kLanes] = {0.0, 1.0};
  float64x2_t best_index = vld1q_f64(start);
  float64x2_t index = best_index;
  const float64x2_t step = vdupq_n_f64(static_cast<double>(kLanes));
  std::size_t i = 0;
  for (; i + kLanes <= b.count; i += kLanes) {
    const float64x2_t d = block_distance(metric, b, q, i);
    const float64x2_t m = vminq_f64(d, vld1q_f64(min_dist + i));
    vst1q_f64(min_dist + i, m);
    const uint64x2_t gt = vcgtq_f64(m, best);
    best = vbslq_f64(gt, m, best);
    best_index = vbslq_f64(gt, index, best_index);
    index = vaddq_f64(index, step);
  }
  double best_value = vgetq_lane_f64(best, 0);
  double best_at = vgetq_lane_f64(best_index, 0);
  const double v1 = vgetq_lane_f64(best, 1);
  const double i1 = vgetq_lane_f64(best_index, 1);
  if (v1 > best_value || (v1 == best_value && i1 < best_at)) {
    best_value = v1;
    best_at = i1;
  }
  std::size_t out = i == 0 ? 0 : static_cast<std::size_t>(best_at);
  if (i == 0) best_value = -__builtin_inf();
  if (i < b.count) {
    const std::size_t t = i + scalar::relax_argmax(metric, tail_view(b, i), q, min_dist + i);
    if (min_dist[t] > best_value) out = t;
  }
  return out;
}

}  // namespace fairdiv::kernels::neon
