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

#include "sagl/trainer.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "sagl/adam.h"
#include "sagl/errors.h"
#include "sagl/metrics.h"
#include "sagl/rng.h"

namespace sagl {
namespace {

constexpr std::uint64_t kShuffleStream = 0x53485546;  // "SHUF"
constexpr std::uint64_t kDropoutStream = 0x44524F50;  // "DROP"

std::size_t CheckViews(std::span<const Matrix> views, const SaglModel& model) {
  if (views.empty()) throw InvalidArgumentError("no views supplied");
  if (views.size() != model.num_views()) {
    throw ConsistencyError("model has " + std::to_string(model.num_views()) +
                           " views but " + std::to_string(views.size()) + " were supplied");
  }
  const std::size_t n = views[0].rows();
  for (std::size_t l = 0; l < views.size(); ++l) {
    if (views[l].rows() != n) {
      throw ShapeError("view " + std::to_string(l) + " has " + std::to_string(views[l].rows()) +
                       " samples, view 0 has " + std::to_string(n));
    }
    if (views[l].cols() != model.views[l].head.w.rows()) {
      throw ShapeError("view " + std::to_string(l) + " has " + std::to_string(views[l].cols()) +
                       " features, model expects " +
                       std::to_string(model.views[l].head.w.rows()));
    }
  }
  return n;
}

Matrix DropoutMask(Rng& rng, std::size_t rows, std::size_t cols, double rate) {
  Matrix mask(rows, cols);
  const double keep_scale = 1.0 / (1.0 - rate);
  for (double& v : mask.data()) v = rng.Uniform() < rate ? 0.0 : keep_scale;
  return mask;
}

bool Finite(const LossBreakdown& b) {
  return std::isfinite(b.total) && std::isfinite(b.pseudo) && std::isfinite(b.diversity) &&
         std::isfinite(b.alignment);
}

std::string Describe(std::size_t epoch, std::size_t batch, const LossBreakdown& b) {
  std::ostringstream os;
  os << "epoch " << epoch << ", batch " << batch << ": total=" << b.total
     << " pseudo=" << b.pseudo << " div=" << b.diversity << " align=" << b.alignment;
  return os.str();
}

}  // namespace

void ValidateConfig(const TrainConfig& c) {
  if (!std::isfinite(c.alpha) || c.alpha < 1.0) {
    throw ConfigError("alpha must be >= 1, got " + std::to_string(c.alpha));
  }
  if (!(c.gamma >= 0.0)) throw ConfigError("gamma must be >= 0");
  if (!(c.beta >= 0.0)) throw ConfigError("beta must be >= 0");
  if (!(c.lr > 0.0)) throw ConfigError("lr must be > 0");
  if (c.batch_size < 2) throw ConfigError("batch_size must be >= 2");
  if (c.epochs < 1) throw ConfigError("epochs must be >= 1");
  if (!(c.gate_epsilon > 0.0)) throw ConfigError("gate_epsilon must be > 0");
  if (!(c.dropout >= 0.0 && c.dropout < 1.0)) throw ConfigError("dropout must be in [0, 1)");
  if (!(c.drop_small_batch_threshold >= 0.0 && c.drop_small_batch_threshold <= 1.0)) {
    throw ConfigError("drop_small_batch_threshold must be in [0, 1]");
  }
}

TrainResult Train(std::span<const Matrix> views, const TrainConfig& config) {
  if (config.num_classes == 0) throw ConfigError("num_classes must be set (>= 1)");
  std::vector<std::size_t> dims;
  for (const Matrix& v : views) dims.push_back(v.cols());
  return Train(InitModel(dims, config), views, config);
}

TrainResult Train(SaglModel model, std::span<const Matrix> views, const TrainConfig& config) {
  // epochs == 0 is allowed here and returns the model untouched.
  if (config.epochs > 0) ValidateConfig(config);
  const std::size_t n = CheckViews(views, model);
  if (n < config.batch_size) {
    throw InvalidArgumentError("training set of " + std::to_string(n) +
                               " samples is smaller than batch_size " +
                               std::to_string(config.batch_size));
  }

  const Alpha alpha(config.alpha);
  const std::size_t num_views = views.size();
  const std::size_t min_batch = std::max<std::size_t>(
      2, static_cast<std::size_t>(
             std::ceil(config.drop_small_batch_threshold * static_cast<double>(config.batch_size))));
  const Rng shuffle_root = Rng(config.seed).Split(kShuffleStream);
  const Rng dropout_root = Rng(config.seed).Split(kDropoutStream);

  TrainResult result;
  AdamState adam;
  std::vector<std::size_t> order(n);

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), 0);
    Rng shuffle = shuffle_root.Split(epoch);
    shuffle.Shuffle(order);

    std::size_t batch = 0;
    for (std::size_t start = 0; start < n; start += config.batch_size, ++batch) {
      const std::size_t stop = std::min(n, start + config.batch_size);
      if (stop - start < min_batch) continue;
      const std::span<const std::size_t> idx(order.data() + start, stop - start);

      std::vector<ViewForwardTrace> traces;
      std::vector<Matrix> qs;
      traces.reserve(num_views);
      try {
        for (std::size_t l = 0; l < num_views; ++l) {
          const Matrix h = GatherRows(views[l], idx);
          if (config.dropout > 0.0) {
            Rng rng = dropout_root.Split(epoch).Split(batch * num_views + l);
            const Matrix mask = DropoutMask(rng, idx.size(), config.num_classes, config.dropout);
            traces.push_back(ForwardView(h, model.views[l], alpha, config.variant, &mask));
          } else {
            traces.push_back(ForwardView(h, model.views[l], alpha, config.variant));
          }
          qs.push_back(traces.back().q);
        }
      } catch (const NumericalError& e) {
        throw NumericalError("forward pass failed at epoch " + std::to_string(epoch) +
                             ", batch " + std::to_string(batch) + ": " + e.what());
      }

      TotalLoss loss = ComputeTotalLoss(qs, config.gamma, config.beta);
      if (!Finite(loss.breakdown)) {
        throw NumericalError("non-finite loss at " + Describe(epoch, batch, loss.breakdown));
      }

      std::vector<Matrix> grads;
      for (std::size_t l = 0; l < num_views; ++l) {
        ViewGradients g = BackwardView(traces[l], loss.grads[l], model.views[l]);
        grads.push_back(std::move(g.w));
        grads.push_back(std::move(g.u));
        grads.push_back(std::move(g.v));
        grads.push_back(std::move(g.w1));
        grads.push_back(std::move(g.w2));
      }
      for (const Matrix& g : grads) {
        if (!g.AllFinite()) {
          throw NumericalError("non-finite gradient at " + Describe(epoch, batch, loss.breakdown));
        }
      }
      const std::vector<Matrix*> params = model.Parameters();
      AdamStep(params, grads, adam, config.lr);

      TrainLogRecord rec;
      rec.epoch = epoch;
      rec.batch = batch;
      rec.loss = loss.breakdown;
      for (const ViewForwardTrace& t : traces) rec.sparsity_ratio.push_back(SparsityRatio(t.graph));
      result.log.push_back(std::move(rec));
    }
  }
  result.model = std::move(model);
  return result;
}

std::vector<std::vector<std::size_t>> EvaluationBatches(std::size_t n, std::size_t batch_size) {
  if (batch_size == 0) throw InvalidArgumentError("batch_size must be positive");
  std::vector<std::vector<std::size_t>> batches;
  for (std::size_t start = 0; start < n; start += batch_size) {
    const std::size_t stop = std::min(n, start + batch_size);
    std::vector<std::size_t> b(stop - start);
    std::iota(b.begin(), b.end(), start);
    batches.push_back(std::move(b));
  }
  // A trailing singleton cannot form a graph; fold it into the previous batch.
  if (batches.size() >= 2 && batches.back().size() < 2) {
    const std::size_t last = batches.back().front();
    batches.pop_back();
    batches.back().push_back(last);
  }
  return batches;
}

std::vector<ViewForwardTrace> ForwardBatch(const SaglModel& model, std::span<const Matrix> views,
                                           std::span<const std::size_t> indices) {
  CheckViews(views, model);
  const Alpha alpha(model.config.alpha);
  std::vector<ViewForwardTrace> traces;
  for (std::size_t l = 0; l < views.size(); ++l) {
    traces.push_back(
        ForwardView(GatherRows(views[l], indices), model.views[l], alpha, model.config.variant));
  }
  return traces;
}

std::vector<std::size_t> Predict(const SaglModel& model, std::span<const Matrix> views,
                                 std::size_t batch_size) {
  const std::size_t n = CheckViews(views, model);
  std::vector<std::size_t> labels(n, 0);
  for (const auto& batch : EvaluationBatches(n, batch_size)) {
    const std::vector<ViewForwardTrace> traces = ForwardBatch(model, views, batch);
    std::vector<Matrix> qs;
    for (const auto& t : traces) qs.push_back(t.q);
    const PseudoLabels pl = MakePseudoLabels(qs);
    for (std::size_t i = 0; i < batch.size(); ++i) labels[batch[i]] = pl.labels[i];
  }
  return labels;
}

Evaluation Evaluate(const SaglModel& model, std::span<const Matrix> views, std::size_t batch_size,
                    std::span<const std::size_t> truth) {
  const std::size_t n = CheckViews(views, model);
  const bool with_truth = !truth.empty();
  if (with_truth && truth.size() != n) {
    throw ShapeError("labels have " + std::to_string(truth.size()) + " entries, views have " +
                     std::to_string(n) + " samples");
  }
  const std::size_t num_views = views.size();
  const std::size_t c = model.num_classes();
  Evaluation out;
  out.predictions.assign(n, 0);
  out.representations.assign(num_views, Matrix(n, c));
  std::vector<double> sr_sum(num_views, 0.0);
  std::vector<double> mass_sum(num_views, 0.0);
  std::vector<std::size_t> mass_count(num_views, 0);

  const auto batches = EvaluationBatches(n, batch_size);
  for (const auto& batch : batches) {
    const std::vector<ViewForwardTrace> traces = ForwardBatch(model, views, batch);
    std::vector<Matrix> qs;
    for (const auto& t : traces) qs.push_back(t.q);
    const PseudoLabels pl = MakePseudoLabels(qs);
    std::vector<std::size_t> batch_truth;
    if (with_truth) {
      for (std::size_t i : batch) batch_truth.push_back(truth[i]);
    }
    for (std::size_t i = 0; i < batch.size(); ++i) out.predictions[batch[i]] = pl.labels[i];
    for (std::size_t l = 0; l < num_views; ++l) {
      const ViewForwardTrace& t = traces[l];
      for (std::size_t i = 0; i < batch.size(); ++i) {
        std::copy(t.p.row(i).begin(), t.p.row(i).end(), out.representations[l].row(batch[i]).begin());
      }
      sr_sum[l] += SparsityRatio(t.graph);
      if (!with_truth) continue;
      bool has_mass = false;
      for (const auto& row : t.graph.rows) has_mass = has_mass || !row.support.empty();
      if (has_mass) {
        mass_sum[l] += IntraBlockMass(t.graph, batch_truth);
        ++mass_count[l];
      }
    }
  }
  for (std::size_t l = 0; l < num_views; ++l) {
    out.sparsity_ratio.push_back(sr_sum[l] / static_cast<double>(batches.size()));
    if (mass_count[l] > 0) {
      out.intra_block_mass.push_back(mass_sum[l] / static_cast<double>(mass_count[l]));
    } else {
      out.intra_block_mass.push_back(std::nullopt);
    }
  }
  return out;
}

MetricsReport MakeReport(const Evaluation& eval, std::span<const std::size_t> truth) {
  MetricsReport r;
  r.n = eval.predictions.size();
  r.acc = Accuracy(eval.predictions, truth);
  r.nmi = Nmi(eval.predictions, truth);
  r.ari = Ari(eval.predictions, truth);
  r.sparsity_ratio = eval.sparsity_ratio;
  r.intra_block_mass = eval.intra_block_mass;
  if (eval.representations.size() >= 2) {
    try {
      r.cka = LinearCka(eval.representations[0], eval.representations[1]);
    } catch (const InvalidArgumentError&) {
      r.cka = std::nullopt;  // degenerate representations
    }
  }
  return r;
}

double EpochMeanLoss(std::span<const TrainLogRecord> log, std::size_t epoch) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& r : log) {
    if (r.epoch != epoch) continue;
    sum += r.loss.total;
    ++count;
  }
  if (count == 0) throw InvalidArgumentError("no log records for epoch " + std::to_string(epoch));
  return sum / static_cast<double>(count);
}

std::string FormatTrainLogCsv(std::span<const TrainLogRecord> log, std::size_t num_views) {
  std::ostringstream os;
  os.precision(17);
  os << "epoch,batch,total,pseudo,div,align";
  for (std::size_t l = 0; l < num_views; ++l) os << ",sr_view" << l;
  os << '\n';
  for (const TrainLogRecord& r : log) {
    os << r.epoch << ',' << r.batch << ',' << r.loss.total << ',' << r.loss.pseudo << ','
       << r.loss.diversity << ',' << r.loss.alignment;
    for (std::size_t l = 0; l < num_views; ++l) {
      os << ',' << (l < r.sparsity_ratio.size() ? r.sparsity_ratio[l] : 0.0);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace sagl
