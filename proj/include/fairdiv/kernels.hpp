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

// One-to-many distance kernels.
//
// Every variant accumulates coordinates of a point in the same order
// (j = 0..dim-1, subtract, square or abs, add) and never fuses multiply-add,
// so scalar and SIMD results are bit-identical. Lanes run across points.

#ifndef FAIRDIV_KERNELS_HPP_
#define FAIRDIV_KERNELS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "fairdiv/core.hpp"

namespace fairdiv::kernels {

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view isa_name(Isa isa);

// Feature-major block: coordinate j of point i lives at coords[j * stride + i].
struct SoaBlock {
  const double* coords = nullptr;
  std::size_t stride = 0;
  std::size_t count = 0;
  std::size_t dim = 0;
};

// out[i] = dist(query, point i).
using DistancesFn = void (*)(MetricKind, const SoaBlock&, const double* query, double* out);
// min_dist[i] = min(min_dist[i], dist(query, point i)).
using RelaxFn = void (*)(MetricKind, const SoaBlock&, const double* query, double* min_dist);
// min_dist[i] = min(min_dist[i], values[i]).
using MinFn = void (*)(const double* values, double* min_dist, std::size_t count);
// relax, then the first index holding the largest min_dist (0 if count == 0).
using RelaxArgmaxFn = std::size_t (*)(MetricKind, const SoaBlock&, const double* query, double* min_dist);

struct KernelTable {
  Isa isa;
  DistancesFn distances;
  RelaxFn relax;
  MinFn elementwise_min;
  RelaxArgmaxFn relax_argmax;
};

// Variants compiled in and supported by this CPU, scalar first.
std::span<const KernelTable> available();
const KernelTable& table_for(Isa isa);

// Best supported variant unless overridden (set_override or the
// FAIRDIV_FORCE_SCALAR environment variable).
const KernelTable& active();
void set_override(std::optional<Isa> isa);

// Implementations, exposed for equivalence tests.
namespace scalar {
void distances(MetricKind, const SoaBlock&, const double*, double*);
void relax(MetricKind, const SoaBlock&, const double*, double*);
void elementwise_min(const double*, double*, std::size_t);
std::size_t relax_argmax(MetricKind, const SoaBlock&, const double*, double*);
}  // namespace scalar

#if defined(FAIRDIV_HAVE_AVX2)
namespace avx2 {
void distances(MetricKind, const SoaBlock&, const double*, double*);
void relax(MetricKind, const SoaBlock&, const double*, double*);
void elementwise_min(const double*, double*, std::size_t);
std::size_t relax_argmax(MetricKind, const SoaBlock&, const double*, double*);
}  // namespace avx2
#endif

#if defined(FAIRDIV_HAVE_NEON)
namespace neon {
void distances(MetricKind, const SoaBlock&, const double*, double*);
void relax(MetricKind, const SoaBlock&, const double*, double*);
void elementwise_min(const double*, double*, std::size_t);
std::size_t relax_argmax(MetricKind, const SoaBlock&, const double*, double*);
}  // namespace neon
#endif

}  // namespace fairdiv::kernels

#endif  // FAIRDIV_KERNELS_HPP_
