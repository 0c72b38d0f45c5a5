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

#ifndef EXPODESIGN_ENUMERATION_H_
#define EXPODESIGN_ENUMERATION_H_

#include <cstddef>
#include <span>
#include <vector>

#include "absl/functional/function_ref.h"
#include "absl/status/statusor.h"
#include "expodesign/design.h"
#include "expodesign/graph.h"

namespace expodesign {

inline constexpr size_t kMaxEnumerationClusters = 20;

// Exact expectations under an independent cluster design, by summing over
// all 2^k outcomes of the k cluster coins with weight p^heads (1-p)^tails.
// Independent of the closed-form moment code; used as an oracle.
class ExactEnumerator {
 public:
  struct Moments {
    std::vector<double> mean;
    std::vector<double> variance;
    std::vector<double> covariance;  // n x n, row-major

    double Cov(size_t i, size_t j) const {
      return covariance[i * mean.size() + j];
    }
  };

  // Fails with ResourceExhausted when the design has more than
  // kMaxEnumerationClusters clusters.
  static absl::StatusOr<ExactEnumerator> Create(const BipartiteGraph& g,
                                                const DesignSpec& d);

  size_t n_outcome() const { return n_; }
  size_t num_clusters() const { return k_; }

  // E[f(x)] where x is the exposure vector.
  double Expect(absl::FunctionRef<double(std::span<const double>)> f) const;

  Moments ComputeMoments() const;

 private:
  ExactEnumerator(size_t n, size_t k, double p, std::vector<double> dense)
      : n_(n), k_(k), p_(p), dense_(std::move(dense)) {}

  size_t n_;
  size_t k_;
  double p_;
  std::vector<double> dense_;  // n x k aggregated weights, row-major
};

}  // namespace expodesign

#endif  // EXPODESIGN_ENUMERATION_H_
