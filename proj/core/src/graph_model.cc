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

#include "sagl/graph_model.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "sagl/errors.h"
#include "sagl/svd.h"

namespace sagl {
namespace {

std::string Dims(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void CheckShapes(const Matrix& h, const ViewParams& params) {
  const Matrix& w = params.head.w;
  if (h.cols() != w.rows()) {
    throw ShapeError("ForwardView: features " + Dims(h) + " do not match head " + Dims(w));
  }
  const std::size_t c = w.cols();
  const auto& f = params.factor;
  if (f.u.rows() != c || f.u.cols() != c || f.v.rows() != c || f.v.cols() != c) {
    throw ShapeError("ForwardView: bilinear factors " + Dims(f.u) + ", " + Dims(f.v) +
                     " must be " + std::to_string(c) + "x" + std::to_string(c));
  }
  const auto& g = params.gate;
  if (g.w1.cols() != c || g.w1.rows() == 0 || g.w2.rows() != 1 || g.w2.cols() != g.w1.rows()) {
    throw ShapeError("ForwardView: gate weights " + Dims(g.w1) + ", " + Dims(g.w2) +
                     " do not conform to C=" + std::to_string(c));
  }
  if (!(g.epsilon > 0.0)) throw InvalidArgumentError("ForwardView: gate epsilon must be > 0");
}

double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// Gate logits from pre-activations.
std::vector<double> GateFromPre(const Matrix& pre, const SparsityGate& gate) {
  std::vector<double> omega(pre.rows());
  auto w2 = gate.w2.row(0);
  for (std::size_t i = 0; i < pre.rows(); ++i) {
    double logit = 0.0;
    auto row = pre.row(i);
    for (std::size_t k = 0; k < row.size(); ++k) logit += w2[k] * std::max(row[k], 0.0);
    omega[i] = Sigmoid(logit);
  }
  return omega;
}

double GateScale(double omega, const SparsityGate& gate) {
  return gate.mode == GateMode::kMultiplicative ? 1.0 - omega
                                                : 1.0 / (1.0 - omega + gate.epsilon);
}

}  // namespace

std::string_view ToString(GateMode mode) {
  return mode == GateMode::kMultiplicative ? "multiplicative" : "divisive";
}

std::string_view ToString(Variant variant) {
  switch (variant) {
    case Variant::kFull: return "full";
    case Variant::kIdentityGraph: return "identity_graph";
    case Variant::kDenseGraph: return "dense_graph";
    case Variant::kNoGate: return "no_gate";
  }
  return "full";
}

GateMode ParseGateMode(std::string_view name) {
  if (name == "multiplicative") return GateMode::kMultiplicative;
  if (name == "divisive") return GateMode::kDivisive;
  throw InvalidArgumentError("unknown gate mode '" + std::string(name) +
                             "' (expected multiplicative|divisive)");
}

Variant ParseVariant(std::string_view name) {
  if (name == "full") return Variant::kFull;
  if (name == "identity_graph") return Variant::kIdentityGraph;
  if (name == "dense_graph") return Variant::kDenseGraph;
  if (name == "no_gate") return Variant::kNoGate;
  throw InvalidArgumentError("unknown variant '" + std::string(name) +
                             "' (expected full|identity_graph|dense_graph|no_gate)");
}

Matrix SparseAttentionGraph::Dense() const {
  Matrix a(n, n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j : rows[i].support) a(i, j) = rows[i].probs[j];
  }
  return a;
}

std::vector<double> GateForward(const Matrix& z, const SparsityGate& gate) {
  if (gate.w1.cols() != z.cols() || gate.w2.rows() != 1 || gate.w2.cols() != gate.w1.rows()) {
    throw ShapeError("GateForward: gate " + Dims(gate.w1) + ", " + Dims(gate.w2) +
                     " does not conform to features " + Dims(z));
  }
  return GateFromPre(MatMulNT(z, gate.w1), gate);
}

Matrix BilinearSimilarity(const Matrix& z, const BilinearFactor& factor) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(z.cols()));
  return Scale(MatMulNT(MatMul(z, factor.u), MatMul(z, factor.v)), scale);
}

BilinearFactor FactorFromStructure(const Matrix& w_star) {
  if (w_star.rows() != w_star.cols()) {
    throw ShapeError("FactorFromStructure: W* must be square, got " + Dims(w_star));
  }
  const std::size_t c = w_star.rows();
  const SvdResult svd = Svd(Scale(w_star, std::sqrt(static_cast<double>(c))));
  BilinearFactor f{svd.u, svd.v};
  for (std::size_t k = 0; k < c; ++k) {
    const double root = std::sqrt(svd.sigma[k]);
    for (std::size_t i = 0; i < c; ++i) {
      f.u(i, k) *= root;
      f.v(i, k) *= root;
    }
  }
  return f;
}

SparseAttentionGraph ProjectRows(const Matrix& scores, Alpha alpha) {
  if (scores.rows() != scores.cols()) {
    throw ShapeError("ProjectRows: score matrix must be square, got " + Dims(scores));
  }
  SparseAttentionGraph graph;
  graph.n = scores.rows();
  graph.diagonal_masked = true;
  graph.rows.reserve(graph.n);
  std::vector<double> row(graph.n);
  for (std::size_t i = 0; i < graph.n; ++i) {
    auto src = scores.row(i);
    std::copy(src.begin(), src.end(), row.begin());
    row[i] = kMasked;
    graph.rows.push_back(Entmax(row, alpha));
  }
  return graph;
}

ViewForwardTrace ForwardView(const Matrix& h, const ViewParams& params, Alpha alpha,
                             Variant variant, const Matrix* dropout_mask) {
  if (h.rows() < 2) {
    throw InvalidArgumentError("ForwardView: batch of " + std::to_string(h.rows()) +
                               " samples is too small (need >= 2)");
  }
  CheckShapes(h, params);
  const std::size_t n = h.rows();
  const std::size_t c = params.head.w.cols();

  ViewForwardTrace t;
  t.variant = variant;
  t.graph_alpha = variant == Variant::kDenseGraph ? 1.0 : alpha.value();
  t.h = h;
  t.z = MatMul(h, params.head.w);
  if (dropout_mask != nullptr) {
    if (dropout_mask->rows() != n || dropout_mask->cols() != c) {
      throw ShapeError("ForwardView: dropout mask " + Dims(*dropout_mask) + " must be " +
                       Dims(t.z));
    }
    t.dropout_mask = *dropout_mask;
    t.z = Hadamard(t.z, t.dropout_mask);
  }

  t.graph.n = n;
  t.graph.diagonal_masked = true;
  if (variant == Variant::kIdentityGraph) {
    t.omega.assign(n, 0.0);
    t.graph.rows.assign(n, SimplexVector{std::vector<double>(n, 0.0), {}, 0.0});
    t.p = t.z;
  } else {
    const double scale = 1.0 / std::sqrt(static_cast<double>(c));
    t.zu = MatMul(t.z, params.factor.u);
    t.zv = MatMul(t.z, params.factor.v);
    t.s = Scale(MatMulNT(t.zu, t.zv), scale);

    if (variant == Variant::kNoGate) {
      t.omega.assign(n, 0.0);
    } else {
      t.gate_pre = MatMulNT(t.z, params.gate.w1);
      t.omega = GateFromPre(t.gate_pre, params.gate);
    }

    t.s_tilde = t.s;
    for (std::size_t i = 0; i < n; ++i) {
      const double g = GateScale(t.omega[i], params.gate);
      for (double& v : t.s_tilde.row(i)) v *= g;
    }
    t.graph = ProjectRows(t.s_tilde, Alpha(t.graph_alpha));
    t.p = Add(MatMul(t.graph.Dense(), t.z), t.z);
  }
  t.q = RowSoftmax(t.p);
  return t;
}

ViewGradients BackwardView(const ViewForwardTrace& t, const Matrix& dq,
                           const ViewParams& params) {
  const std::size_t n = t.q.rows();
  const std::size_t c = t.q.cols();
  if (dq.rows() != n || dq.cols() != c) {
    throw ShapeError("BackwardView: dQ " + Dims(dq) + " must be " + Dims(t.q));
  }

  ViewGradients g;
  g.u = Matrix(c, c);
  g.v = Matrix(c, c);
  g.w1 = Matrix(params.gate.w1.rows(), params.gate.w1.cols());
  g.w2 = Matrix(params.gate.w2.rows(), params.gate.w2.cols());

  // Row softmax: dP_i = q_i * (dq_i - <dq_i, q_i>).
  Matrix dp(n, c);
  for (std::size_t i = 0; i < n; ++i) {
    auto qi = t.q.row(i);
    auto dqi = dq.row(i);
    double inner = 0.0;
    for (std::size_t k = 0; k < c; ++k) inner += qi[k] * dqi[k];
    for (std::size_t k = 0; k < c; ++k) dp(i, k) = qi[k] * (dqi[k] - inner);
  }

  // Residual branch.
  Matrix dz = dp;

  if (t.variant != Variant::kIdentityGraph) {
    // P = A Z + Z.
    const Matrix a = t.graph.Dense();
    Axpy(1.0, MatMulTN(a, dp), dz);
    const Matrix da = MatMulNT(dp, t.z);

    // Row-wise projection; masked diagonal receives no gradient.
    const Alpha graph_alpha(t.graph_alpha);
    Matrix ds_tilde(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::vector<double> grad = EntmaxJvp(t.graph.rows[i], graph_alpha, da.row(i));
      auto out = ds_tilde.row(i);
      std::copy(grad.begin(), grad.end(), out.begin());
      out[i] = 0.0;
    }

    // Gate.
    Matrix ds(n, n);
    std::vector<double> domega(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double scale = GateScale(t.omega[i], params.gate);
      auto in = ds_tilde.row(i);
      auto out = ds.row(i);
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        out[j] = in[j] * scale;
        acc += in[j] * t.s(i, j);
      }
      // d scale / d omega: -1 for the product form, scale^2 for the quotient.
      domega[i] = params.gate.mode == GateMode::kMultiplicative ? -acc : acc * scale * scale;
    }

    if (t.variant != Variant::kNoGate) {
      const std::size_t hidden = params.gate.hidden();
      auto w2 = params.gate.w2.row(0);
      Matrix dpre(n, hidden);
      for (std::size_t i = 0; i < n; ++i) {
        const double dlogit = domega[i] * t.omega[i] * (1.0 - t.omega[i]);
        auto pre = t.gate_pre.row(i);
        for (std::size_t k = 0; k < hidden; ++k) {
          const double act = std::max(pre[k], 0.0);
          g.w2(0, k) += dlogit * act;
          dpre(i, k) = pre[k] > 0.0 ? dlogit * w2[k] : 0.0;
        }
      }
      g.w1 = MatMulTN(dpre, t.z);
      Axpy(1.0, MatMul(dpre, params.gate.w1), dz);
    }

    // S = (Z U)(Z V)^T / sqrt(C).
    const double scale = 1.0 / std::sqrt(static_cast<double>(c));
    const Matrix dzu = Scale(MatMul(ds, t.zv), scale);
    const Matrix dzv = Scale(MatMulTN(ds, t.zu), scale);
    g.u = MatMulTN(t.z, dzu);
    g.v = MatMulTN(t.z, dzv);
    Axpy(1.0, MatMulNT(dzu, params.factor.u), dz);
    Axpy(1.0, MatMulNT(dzv, params.factor.v), dz);
  }

  if (!t.dropout_mask.empty()) dz = Hadamard(dz, t.dropout_mask);

  g.w = MatMulTN(t.h, dz);
  g.h = MatMulNT(dz, params.head.w);
  return g;
}

}  // namespace sagl
