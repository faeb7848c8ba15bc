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

#include "sagl/metrics.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "json.hpp"
#include "sagl/errors.h"
#include "sagl/hungarian.h"

namespace sagl {
namespace {

void RequireSameLength(std::span<const std::size_t> a, std::span<const std::size_t> b,
                       const char* op) {
  if (a.size() != b.size()) {
    throw ShapeError(std::string(op) + ": label lengths differ (" + std::to_string(a.size()) +
                     " vs " + std::to_string(b.size()) + ")");
  }
}

double Choose2(double x) { return 0.5 * x * (x - 1.0); }

Matrix CenterColumns(const Matrix& m) {
  Matrix out = m;
  const double inv_n = 1.0 / static_cast<double>(m.rows());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) mean += m(i, j);
    mean *= inv_n;
    for (std::size_t i = 0; i < m.rows(); ++i) out(i, j) -= mean;
  }
  return out;
}

}  // namespace

ContingencyTable BuildContingency(std::span<const std::size_t> pred,
                                  std::span<const std::size_t> truth) {
  RequireSameLength(pred, truth, "BuildContingency");
  ContingencyTable table;
  table.n = pred.size();
  if (pred.empty()) return table;
  const std::size_t kp = *std::max_element(pred.begin(), pred.end()) + 1;
  const std::size_t kt = *std::max_element(truth.begin(), truth.end()) + 1;
  table.counts.assign(kp, std::vector<std::size_t>(kt, 0));
  for (std::size_t i = 0; i < pred.size(); ++i) ++table.counts[pred[i]][truth[i]];
  return table;
}

double Accuracy(std::span<const std::size_t> pred, std::span<const std::size_t> truth) {
  const ContingencyTable table = BuildContingency(pred, truth);
  if (table.n == 0) throw InvalidArgumentError("Accuracy: empty labelings");
  const std::size_t k = std::max(table.num_pred(), table.num_true());
  // Negated counts, zero-padded to square.
  Matrix cost(k, k);
  for (std::size_t p = 0; p < table.num_pred(); ++p)
    for (std::size_t t = 0; t < table.num_true(); ++t)
      cost(p, t) = -static_cast<double>(table.counts[p][t]);
  const std::vector<std::size_t> match = SolveAssignment(cost);
  std::size_t hits = 0;
  for (std::size_t p = 0; p < table.num_pred(); ++p) {
    if (match[p] < table.num_true()) hits += table.counts[p][match[p]];
  }
  return static_cast<double>(hits) / static_cast<double>(table.n);
}

double Nmi(std::span<const std::size_t> pred, std::span<const std::size_t> truth) {
  const ContingencyTable table = BuildContingency(pred, truth);
  if (table.n == 0) throw InvalidArgumentError("Nmi: empty labelings");
  const double n = static_cast<double>(table.n);
  std::vector<double> row_sum(table.num_pred(), 0.0), col_sum(table.num_true(), 0.0);
  for (std::size_t p = 0; p < table.num_pred(); ++p)
    for (std::size_t t = 0; t < table.num_true(); ++t) {
      row_sum[p] += static_cast<double>(table.counts[p][t]);
      col_sum[t] += static_cast<double>(table.counts[p][t]);
    }
  auto entropy = [n](const std::vector<double>& sums) {
    double h = 0.0;
    for (double s : sums)
      if (s > 0.0) h -= (s / n) * std::log(s / n);
    return h;
  };
  const double h_pred = entropy(row_sum);
  const double h_true = entropy(col_sum);
  if (h_pred == 0.0 && h_true == 0.0) return 1.0;
  if (h_pred == 0.0 || h_true == 0.0) return 0.0;
  double mi = 0.0;
  for (std::size_t p = 0; p < table.num_pred(); ++p)
    for (std::size_t t = 0; t < table.num_true(); ++t) {
      const double c = static_cast<double>(table.counts[p][t]);
      if (c > 0.0) mi += (c / n) * std::log(c * n / (row_sum[p] * col_sum[t]));
    }
  return std::clamp(mi / std::sqrt(h_pred * h_true), 0.0, 1.0);
}

double Ari(std::span<const std::size_t> pred, std::span<const std::size_t> truth) {
  const ContingencyTable table = BuildContingency(pred, truth);
  if (table.n < 2) throw InvalidArgumentError("Ari: needs at least two samples");
  std::vector<double> row_sum(table.num_pred(), 0.0), col_sum(table.num_true(), 0.0);
  double index = 0.0;
  for (std::size_t p = 0; p < table.num_pred(); ++p)
    for (std::size_t t = 0; t < table.num_true(); ++t) {
      const double c = static_cast<double>(table.counts[p][t]);
      index += Choose2(c);
      row_sum[p] += c;
      col_sum[t] += c;
    }
  double sum_rows = 0.0, sum_cols = 0.0;
  for (double s : row_sum) sum_rows += Choose2(s);
  for (double s : col_sum) sum_cols += Choose2(s);
  const double expected = sum_rows * sum_cols / Choose2(static_cast<double>(table.n));
  const double max_index = 0.5 * (sum_rows + sum_cols);
  const double denom = max_index - expected;
  if (denom == 0.0) return 1.0;
  return (index - expected) / denom;
}

double LinearCka(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows()) {
    throw ShapeError("LinearCka: row counts differ (" + std::to_string(x.rows()) + " vs " +
                     std::to_string(y.rows()) + ")");
  }
  if (x.rows() < 2) throw InvalidArgumentError("LinearCka: needs at least two samples");
  const Matrix xc = CenterColumns(x);
  const Matrix yc = CenterColumns(y);
  const double xx = FrobeniusNorm(MatMulTN(xc, xc));
  const double yy = FrobeniusNorm(MatMulTN(yc, yc));
  if (xx == 0.0 || yy == 0.0) throw InvalidArgumentError("LinearCka: zero-variance input");
  const double yx = FrobeniusNorm(MatMulTN(yc, xc));
  return yx * yx / (xx * yy);
}

double SparsityRatio(const SparseAttentionGraph& graph) {
  if (graph.n == 0) return 0.0;
  std::size_t nonzero = 0;
  for (const SimplexVector& row : graph.rows) nonzero += row.support.size();
  const double n = static_cast<double>(graph.n);
  return static_cast<double>(nonzero) / (n * n);
}

double IntraBlockMass(const SparseAttentionGraph& graph, std::span<const std::size_t> truth) {
  if (truth.size() != graph.n) {
    throw ShapeError("IntraBlockMass: " + std::to_string(truth.size()) + " labels for a graph of " +
                     std::to_string(graph.n) + " samples");
  }
  double within = 0.0, total = 0.0;
  for (std::size_t i = 0; i < graph.rows.size(); ++i) {
    for (std::size_t j : graph.rows[i].support) {
      const double a = graph.rows[i].probs[j];
      total += a;
      if (truth[i] == truth[j]) within += a;
    }
  }
  if (total == 0.0) throw InvalidArgumentError("IntraBlockMass: graph carries no attention mass");
  return within / total;
}

std::string MetricsReport::ToJson() const {
  nlohmann::json j;
  j["n"] = n;
  j["acc"] = acc;
  j["nmi"] = nmi;
  j["ari"] = ari;
  j["sparsity_ratio"] = sparsity_ratio;
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : intra_block_mass) {
    if (b) {
      blocks.push_back(*b);
    } else {
      blocks.push_back(nullptr);
    }
  }
  j["intra_block_mass"] = blocks;
  if (cka) j["cka"] = *cka;
  return j.dump();
}

}  // namespace sagl
