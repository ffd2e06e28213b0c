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

#include "fairdiv/gmm.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "fairdiv/kernels.hpp"

namespace fairdiv {
namespace {

constexpr double kTaken = -std::numeric_limits<double>::infinity();

}  // namespace

FarthestFirst::FarthestFirst(const Dataset& ds, std::span<const ElementId> universe,
                             std::span<const ElementId> initial)
    : ds_(&ds), universe_(universe.begin(), universe.end()) {
  if (!std::is_sorted(universe_.begin(), universe_.end())) std::sort(universe_.begin(), universe_.end());
  universe_.erase(std::unique(universe_.begin(), universe_.end()), universe_.end());
  if (!universe_.empty() && universe_.back() >= ds.size()) {
    throw std::out_of_range("universe element out of range");
  }
  const std::size_t count = universe_.size();
  identity_universe_ = count == ds.size();
  min_dist_.assign(count, std::numeric_limits<double>::infinity());
  if (!ds.has_points() && !identity_universe_) scratch_.resize(count);
  remaining_ = count;

  if (ds.has_points() && !identity_universe_) {
    block_.resize(ds.dim() * count);
    for (std::size_t j = 0; j < ds.dim(); ++j) {
      for (std::size_t i = 0; i < count; ++i) block_[j * count + i] = ds.coordinate(universe_[i], j);
    }
  }

  for (ElementId p : initial) {
    if (p >= ds.size()) throw std::out_of_range("initial element out of range");
    relax_from(p);
    auto it = std::lower_bound(universe_.begin(), universe_.end(), p);
    if (it != universe_.end() && *it == p) {
      auto& slot = min_dist_[static_cast<std::size_t>(it - universe_.begin())];
      if (slot != kTaken) {
        slot = kTaken;
        --remaining_;
      }
    }
  }
}

void FarthestFirst::relax_from(ElementId point) {
  has_reference_ = true;
  const std::size_t count = universe_.size();
  if (count == 0) return;
  evaluations_ += count;
  const auto& k = kernels::active();
  if (ds_->has_points()) {
    double query[64];
    std::vector<double> big_query;
    double* q = query;
    if (ds_->dim() > 64) {
      big_query.resize(ds_->dim());
      q = big_query.data();
    }
    for (std::size_t j = 0; j < ds_->dim(); ++j) q[j] = ds_->coordinate(point, j);
    kernels::SoaBlock block;
    block.count = count;
    block.dim = ds_->dim();
    if (identity_universe_) {
      block.coords = ds_->feature_column(0).data();
      block.stride = ds_->size();
    } else {
      block.coords = block_.data();
      block.stride = count;
    }
    cached_best_ = k.relax_argmax(ds_->metric(), block, q, min_dist_.data());
    return;
  }
  cached_best_.reset();
  const auto row = ds_->matrix_row(point);
  if (identity_universe_) {
    k.elementwise_min(row.data(), min_dist_.data(), count);
    return;
  }
  for (std::size_t i = 0; i < count; ++i) scratch_[i] = row[universe_[i]];
  k.elementwise_min(scratch_.data(), min_dist_.data(), count);
}

std::optional<FarthestFirst::Pick> FarthestFirst::peek() const {
  if (remaining_ == 0) return std::nullopt;
  if (cached_best_ && min_dist_[*cached_best_] != kTaken) {
    return Pick{universe_[*cached_best_], min_dist_[*cached_best_]};
  }
  std::size_t best = universe_.size();
  double best_gain = kTaken;
  for (std::size_t i = 0; i < universe_.size(); ++i) {
    // Strict comparison keeps the smallest id on ties; taken slots never win.
    if (min_dist_[i] > best_gain) {
      best_gain = min_dist_[i];
      best = i;
    }
  }
  return Pick{universe_[best], best_gain};
}

FarthestFirst::Pick FarthestFirst::take_next() {
  auto next = peek();
  if (!next) throw std::logic_error("farthest-first traversal exhausted");
  return take(next->element);
}

FarthestFirst::Pick FarthestFirst::take(ElementId element) {
  auto it = std::lower_bound(universe_.begin(), universe_.end(), element);
  if (it == universe_.end() || *it != element) throw std::invalid_argument("element not in universe");
  const auto slot = static_cast<std::size_t>(it - universe_.begin());
  if (min_dist_[slot] == kTaken) throw std::invalid_argument("element already taken");
  const double gain = min_dist_[slot];
  relax_from(element);
  min_dist_[slot] = kTaken;
  --remaining_;
  return {element, gain};
}

double FarthestFirst::min_distance(std::size_t i) const {
  return min_dist_[i] == kTaken ? 0.0 : min_dist_[i];
}

GmmState gmm(const Dataset& ds, std::span<const ElementId> universe,
             std::span<const ElementId> initial, std::size_t k, std::uint64_t seed) {
  if (k > 0 && universe.empty()) throw std::invalid_argument("gmm: k > 0 over an empty universe");
  FarthestFirst ff(ds, universe, initial);
  GmmState state;
  while (state.selected.size() < k && ff.remaining() > 0) {
    FarthestFirst::Pick pick{};
    if (!ff.has_reference_points()) {
      pick = ff.take(ff.universe()[seeded_index(seed, ff.universe().size())]);
    } else {
      pick = ff.take_next();
    }
    state.selected.push_back(pick.element);
    state.marginal_gains.push_back(pick.gain);
  }
  state.universe.assign(ff.universe().begin(), ff.universe().end());
  state.min_dist.resize(state.universe.size());
  for (std::size_t i = 0; i < state.universe.size(); ++i) state.min_dist[i] = ff.min_distance(i);
  state.evaluations = ff.evaluations();
  return state;
}

}  // namespace fairdiv
