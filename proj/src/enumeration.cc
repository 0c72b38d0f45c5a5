// Copyright 2026 The Expodesign Authors.
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

#include "expodesign/enumeration.h"

#include <bit>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace expodesign {

absl::StatusOr<ExactEnumerator> ExactEnumerator::Create(const BipartiteGraph& g,
                                                        const DesignSpec& d) {
  if (d.n_diversion() != g.n_diversion()) {
    return absl::InvalidArgumentError("design does not match graph");
  }
  const size_t k = d.num_clusters();
  if (k > kMaxEnumerationClusters) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "enumeration needs at most ", kMaxEnumerationClusters,
        " clusters, design has ", k));
  }
  const size_t n = g.n_outcome();
  std::vector<double> dense(n * k, 0.0);
  for (size_t i = 0; i < n; ++i) {
    for (const BipartiteGraph::Entry& e : g.Row(i)) {
      dense[i * k + d.clustering().ClusterOf(e.index)] += e.weight;
    }
  }
  return ExactEnumerator(n, k, d.p(), std::move(dense));
}

double ExactEnumerator::Expect(
    absl::FunctionRef<double(std::span<const double>)> f) const {
  std::vector<double> prob_by_heads(k_ + 1);
  for (size_t h = 0; h <= k_; ++h) {
    prob_by_heads[h] = std::pow(p_, static_cast<double>(h)) *
                       std::pow(1.0 - p_, static_cast<double>(k_ - h));
  }
  std::vector<double> x(n_);
  double total = 0.0;
  const uint64_t outcomes = uint64_t{1} << k_;
  for (uint64_t mask = 0; mask < outcomes; ++mask) {
    for (size_t i = 0; i < n_; ++i) {
      double xi = 0.0;
      for (size_t c = 0; c < k_; ++c) {
        const double w = dense_[i * k_ + c];
        xi += ((mask >> c) & 1) ? w : -w;
      }
      x[i] = xi;
    }
    total += prob_by_heads[std::popcount(mask)] * f(x);
  }
  return total;
}

ExactEnumerator::Moments ExactEnumerator::ComputeMoments() const {
  Moments m;
  m.mean.resize(n_);
  for (size_t i = 0; i < n_; ++i) {
    m.mean[i] = Expect([i](std::span<const double> x) { return x[i]; });
  }
  m.covariance.assign(n_ * n_, 0.0);
  for (size_t i = 0; i < n_; ++i) {
    for (size_t j = i; j < n_; ++j) {
      const double cov = Expect([&](std::span<const double> x) {
        return (x[i] - m.mean[i]) * (x[j] - m.mean[j]);
      });
      m.covariance[i * n_ + j] = cov;
      m.covariance[j * n_ + i] = cov;
    }
  }
  m.variance.resize(n_);
  for (size_t i = 0; i < n_; ++i) m.variance[i] = m.covariance[i * n_ + i];
  return m;
}

}  // namespace expodesign
