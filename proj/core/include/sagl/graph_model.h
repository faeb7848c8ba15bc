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

#ifndef SAGL_GRAPH_MODEL_H_
#define SAGL_GRAPH_MODEL_H_

// Per-view forward and backward passes of the sparse attention graph model:
//
//   Z  = H W                         linear head
//   S  = (Z U)(Z V)^T / sqrt(C)      bilinear, generally asymmetric
//   w  = sigmoid(W2 relu(W1 z_i))    per-sample sparsity gate
//   S~ = gate(S, w)                  row i scaled by (1 - w_i) or 1/(1 - w_i + eps)
//   A  = row-wise entmax(S~), diagonal masked
//   P  = A Z + Z                     aggregation with residual
//   Q  = row-softmax(P)
//
// Attention is stored per sample as rows: row i of A holds the weights sample
// i places on the other samples of its batch.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "sagl/entmax.h"
#include "sagl/matrix.h"

namespace sagl {

enum class GateMode { kMultiplicative, kDivisive };

// Ablations: kIdentityGraph zeroes A, kDenseGraph swaps entmax for softmax,
// kNoGate pins the gate output to zero.
enum class Variant { kFull, kIdentityGraph, kDenseGraph, kNoGate };

std::string_view ToString(GateMode mode);
std::string_view ToString(Variant variant);
// Throw InvalidArgumentError on an unknown name.
GateMode ParseGateMode(std::string_view name);
Variant ParseVariant(std::string_view name);

struct ViewHead {
  Matrix w;  // d x C
};

struct BilinearFactor {
  Matrix u;  // C x C
  Matrix v;  // C x C
};

struct SparsityGate {
  Matrix w1;  // H x C
  Matrix w2;  // 1 x H
  GateMode mode = GateMode::kMultiplicative;
  double epsilon = 1e-6;

  std::size_t hidden() const { return w1.rows(); }
};

struct ViewParams {
  ViewHead head;
  BilinearFactor factor;
  SparsityGate gate;
};

struct SparseAttentionGraph {
  std::size_t n = 0;
  std::vector<SimplexVector> rows;
  bool diagonal_masked = true;

  // n x n materialization; row i is rows[i].probs.
  Matrix Dense() const;
};

struct ViewForwardTrace {
  Variant variant = Variant::kFull;
  double graph_alpha = 1.5;  // 1 when the graph is a softmax

  Matrix h;             // n x d input batch
  Matrix dropout_mask;  // n x C inverted-dropout scale, empty when disabled
  Matrix z;             // n x C, after dropout when enabled
  Matrix zu;            // Z U
  Matrix zv;            // Z V
  Matrix s;             // n x n raw similarities
  Matrix gate_pre;      // n x H, W1 z_i before the ReLU
  std::vector<double> omega;
  // Gated similarities; the diagonal holds the unmasked value and is replaced
  // by kMasked only when rows are projected.
  Matrix s_tilde;
  SparseAttentionGraph graph;
  Matrix p;  // n x C
  Matrix q;  // n x C
};

struct ViewGradients {
  Matrix w;
  Matrix u;
  Matrix v;
  Matrix w1;
  Matrix w2;
  Matrix h;  // gradient w.r.t. the input features
};

// Throws InvalidArgumentError when the batch has fewer than two samples and
// ShapeError when parameter shapes do not conform. `dropout_mask`, when
// non-null, multiplies Z elementwise.
ViewForwardTrace ForwardView(const Matrix& h, const ViewParams& params, Alpha alpha,
                             Variant variant, const Matrix* dropout_mask = nullptr);

// Gate outputs for every row of z, each in (0, 1).
std::vector<double> GateForward(const Matrix& z, const SparsityGate& gate);

// S = (Z U)(Z V)^T / sqrt(C).
Matrix BilinearSimilarity(const Matrix& z, const BilinearFactor& factor);

// Factorization that reproduces Z W* Z^T exactly: U = P Sigma^1/2, V = Q Sigma^1/2
// where sqrt(C) W* = P Sigma Q^T.
BilinearFactor FactorFromStructure(const Matrix& w_star);

// Row-wise projection of `scores` with the diagonal masked; alpha == 1 gives
// the dense softmax graph.
SparseAttentionGraph ProjectRows(const Matrix& scores, Alpha alpha);

// Reverse pass of ForwardView for upstream gradient dQ.
ViewGradients BackwardView(const ViewForwardTrace& trace, const Matrix& dq,
                           const ViewParams& params);

}  // namespace sagl

#endif  // SAGL_GRAPH_MODEL_H_
