/* Copyright 2026 The SAGL Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef SAGL_METRICS_H_
#define SAGL_METRICS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sagl/graph_model.h"
#include "sagl/matrix.h"

namespace sagl {

// counts[p][t] = #samples with predicted cluster p and true class t. Labels are
// used as indices, so both labelings should be compact (0..K-1).
struct ContingencyTable {
  std::vector<std::vector<std::size_t>> counts;
  std::size_t n = 0;

  std::size_t num_pred() const { return counts.size(); }
  std::size_t num_true() const { return counts.empty() ? 0 : counts[0].size(); }
};

// Throws ShapeError on length mismatch.
ContingencyTable BuildContingency(std::span<const std::size_t> pred,
                                  std::span<const std::size_t> truth);

// Best matched fraction over cluster-to-class bijections (Hungarian).
double Accuracy(std::span<const std::size_t> pred, std::span<const std::size_t> truth);

// I(pred; truth) / sqrt(H(pred) H(truth)). Two constant labelings give 1;
// exactly one constant labeling gives 0.
double Nmi(std::span<const std::size_t> pred, std::span<const std::size_t> truth);

// Adjusted Rand index from pair counts. Requires n >= 2. When the index is
// undefined (both partitions trivial in the same way) returns 1.
double Ari(std::span<const std::size_t> pred, std::span<const std::size_t> truth);

// Linear centered kernel alignment. Throws InvalidArgumentError if either
// input has zero variance after centering, ShapeError on row mismatch.
double LinearCka(const Matrix& x, const Matrix& y);

// Nonzero entries over n^2.
double SparsityRatio(const SparseAttentionGraph& graph);

// Attention mass on same-label pairs over total mass. Throws
// InvalidArgumentError when the graph carries no mass.
double IntraBlockMass(const SparseAttentionGraph& graph, std::span<const std::size_t> truth);

struct MetricsReport {
  std::size_t n = 0;
  double acc = 0.0;
  double nmi = 0.0;
  double ari = 0.0;
  std::vector<double> sparsity_ratio;                   // per view
  std::vector<std::optional<double>> intra_block_mass;  // per view; empty graphs have none
  std::optional<double> cka;                            // first two views' representations

  // Single-line JSON object.
  std::string ToJson() const;
};

}  // namespace sagl

#endif  // SAGL_METRICS_H_
