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

// AVX2 variants, four points per register. Built with -mavx2 only (no -mfma):
// the multiply and add must stay separate roundings to match the scalar path.

#include <immintrin.h>

#include "fairdiv/kernels.hpp"

namespace fairdiv::kernels::avx2 {
namespace {

constexpr std::size_t kLanes = 4;

inline __m256d block_distance(MetricKind metric, const SoaBlock& b, const double* q,
                              std::size_t i) {
  __m256d acc = _mm256_setzero_pd();
  if (metric == MetricKind::kEuclidean) {
    for (std::size_t j = 0; j < b.dim; ++j) {
      const __m256d x = _mm256_loadu_pd(b.coords + j * b.stride + i);
      const __m256d t = _mm256_sub_pd(x, _mm256_set1_pd(q[j]));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(t, t));
    }
    return _mm256_sqrt_pd(acc);
  }
  const __m256d sign = _mm256_set1_pd(-0.0);
  for (std::size_t j = 0; j < b.dim; ++j) {
    const __m256d x = _mm256_loadu_pd(b.coords + j * b.stride + i);
    const __m256d t = _mm256_sub_pd(x, _mm256_set1_pd(q[j]));
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign, t));
  }
  return acc;
}

// Tail points go through the scalar kernel on a shifted view.
inline SoaBlock tail_view(const SoaBlock& b, std::size_t start) {
  SoaBlock t = b;
  t.coords = b.coords + start;
  t.count = b.count - start;
  return t;
}

}  // namespace

void distances(MetricKind metric, const SoaBlock& b, const double* q, double* out) {
  std::size_t i = 0;
  for (; i + kLanes <= b.count; i += kLanes) {
    _mm256_storeu_pd(out + i, block_distance(metric, b, q, i));
  }
  if (i < b.count) scalar::distances(metric, tail_view(b, i), q, out + i);
}

void relax(MetricKind metric, const SoaBlock& b, const double* q, double* min_dist) {
  std::size_t i = 0;
  for (; i + kLanes <= b.count; i += kLanes) {
    const __m256d d = block_distance(metric, b, q, i);
    const __m256d cur = _mm256_loadu_pd(min_dist + i);
    // Operand order matches `d < cur ? d : cur` of the scalar path.
    _mm256_storeu_pd(min_dist + i, _mm256_min_pd(d, cur));
  }
  if (i < b.count) scalar::relax(metric, tail_view(b, i), q, min_dist + i);
}

void elementwise_min(const double* values, double* min_dist, std::size_t count) {
  std::size_t i = 0;
  for (; i + kLanes <= count; i += kLanes) {
    const __m256d v = _mm256_loadu_pd(values + i);
    const __m256d cur = _mm256_loadu_pd(min_dist + i);
    _mm256_storeu_pd(min_dist + i, _mm256_min_pd(v, cur));
  }
  if (i < count) scalar::elementwise_min(values + i, min_dist + i, count - i);
}

std::size_t relax_argmax(MetricKind metric, const SoaBlock& b, const double* q, double* min_dist) {
  // Per-lane first maximum (strict >), then the lane with the largest value,
  // smallest index on ties: the same answer as a left-to-right scan.
  __m256d best = _mm256_set1_pd(-__builtin_inf());
  __m256d best_index = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
  __m256d index = best_index;
  const __m256d step = _mm256_set1_pd(static_cast<double>(kLanes));
  std::size_t i = 0;
  for (; i + kLanes <= b.count; i += kLanes) {
    const __m256d d = block_distance(metric, b, q, i);
    const __m256d m = _mm256_min_pd(d, _mm256_loadu_pd(min_dist + i));
    _mm256_storeu_pd(min_dist + i, m);
    const __m256d gt = _mm256_cmp_pd(m, best, _CMP_GT_OQ);
    best = _mm256_blendv_pd(best, m, gt);
    best_index = _mm256_blendv_pd(best_index, index, gt);
    index = _mm256_add_pd(index, step);
  }
  alignas(32) double values[kLanes];
  alignas(32) double indices[kLanes];
  _mm256_store_pd(values, best);
  _mm256_store_pd(indices, best_index);
  double best_value = values[0];
  double best_at = indices[0];
  for (std::size_t l = 1; l < kLanes; ++l) {
    if (values[l] > best_value || (values[l] == best_value && indices[l] < best_at)) {
      best_value = values[l];
      best_at = indices[l];
    }
  }
  std::size_t out = i == 0 ? 0 : static_cast<std::size_t>(best_at);
  if (i == 0) best_value = -__builtin_inf();
  if (i < b.count) {
    const std::size_t t = i + scalar::relax_argmax(metric, tail_view(b, i), q, min_dist + i);
    if (min_dist[t] > best_value) out = t;
  }
  return out;
}

}  // namespace fairdiv::kernels::avx2
