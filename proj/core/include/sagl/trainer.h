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

#ifndef SAGL_TRAINER_H_
#define SAGL_TRAINER_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sagl/graph_model.h"
#include "sagl/matrix.h"
#include "sagl/metrics.h"
#include "sagl/model.h"
#include "sagl/objective.h"
#include "sagl/train_config.h"

namespace sagl {

struct TrainLogRecord {
  std::size_t epoch = 0;  // 1-based
  std::size_t batch = 0;  // 0-based within the epoch
  LossBreakdown loss;
  std::vector<double> sparsity_ratio;  // per view
};

struct TrainResult {
  SaglModel model;
  std::vector<TrainLogRecord> log;
};

// Throws ConfigError for an invalid configuration.
void ValidateConfig(const TrainConfig& config);

// Mini-batch training: per batch and view a forward pass, consensus
// pseudolabels, the three-part loss, a reverse pass and one Adam step.
// Shuffling and dropout draw from streams of config.seed, so equal inputs give
// bit-identical results. Throws ShapeError for views of different lengths and
// NumericalError (with epoch, batch and loss components) on a non-finite loss.
TrainResult Train(std::span<const Matrix> views, const TrainConfig& config);

// Continues training an existing model.
TrainResult Train(SaglModel model, std::span<const Matrix> views, const TrainConfig& config);

// Consecutive batches in input order covering every sample. Used for
// evaluation; nothing is shuffled or dropped.
std::vector<std::vector<std::size_t>> EvaluationBatches(std::size_t n, std::size_t batch_size);

// Forward pass of every view on the samples in `indices` without dropout.
std::vector<ViewForwardTrace> ForwardBatch(const SaglModel& model, std::span<const Matrix> views,
                                           std::span<const std::size_t> indices);

// Consensus labels for every sample, evaluated batch by batch in input order.
std::vector<std::size_t> Predict(const SaglModel& model, std::span<const Matrix> views,
                                 std::size_t batch_size);

struct Evaluation {
  std::vector<std::size_t> predictions;
  std::vector<Matrix> representations;  // per view, n x C rows of P in input order
  std::vector<double> sparsity_ratio;   // per view, mean over evaluation batches
  // Per view, mean over batches; empty when no truth was given or the graph
  // carries no mass (identity_graph).
  std::vector<std::optional<double>> intra_block_mass;
};

// Batch-by-batch forward pass in input order, as Predict, keeping graph
// statistics and representations. Throws ShapeError when truth has the wrong
// length.
Evaluation Evaluate(const SaglModel& model, std::span<const Matrix> views, std::size_t batch_size,
                    std::span<const std::size_t> truth = {});

// ACC, NMI and ARI of the predictions against truth, the graph statistics and
// the linear CKA between the first two views' representations.
MetricsReport MakeReport(const Evaluation& eval, std::span<const std::size_t> truth);

// CSV with header epoch,batch,total,pseudo,div,align,sr_view0,... and one row
// per record. Doubles use 17 significant digits.
std::string FormatTrainLogCsv(std::span<const TrainLogRecord> log, std::size_t num_views);

// Mean total loss of one epoch's records.
double EpochMeanLoss(std::span<const TrainLogRecord> log, std::size_t epoch);

}  // namespace sagl

#endif  // SAGL_TRAINER_H_
