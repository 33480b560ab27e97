#pragma once

#include "synthflow/numcore/autodiff.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace synthflow::numcore {

// ---------------------------------------------------------------------------
// Arithmetic. Binary ops accept equal shapes, a size-1 operand, or an operand
// whose shape equals the trailing axes of the other (row broadcast).
// ---------------------------------------------------------------------------

template <typename Scalar> Var<Scalar> add(const Var<Scalar>& a, const Var<Scalar>& b);
template <typename Scalar> Var<Scalar> sub(const Var<Scalar>& a, const Var<Scalar>& b);
template <typename Scalar> Var<Scalar> mul(const Var<Scalar>& a, const Var<Scalar>& b);
template <typename Scalar> Var<Scalar> div(const Var<Scalar>& a, const Var<Scalar>& b);
template <typename Scalar> Var<Scalar> scale(const Var<Scalar>& a, Scalar factor);
template <typename Scalar> Var<Scalar> shift(const Var<Scalar>& a, Scalar offset);
template <typename Scalar> Var<Scalar> neg(const Var<Scalar>& a);

template <typename Scalar> Var<Scalar> operator+(const Var<Scalar>& a, const Var<Scalar>& b) { return add(a, b); }
template <typename Scalar> Var<Scalar> operator-(const Var<Scalar>& a, const Var<Scalar>& b) { return sub(a, b); }
template <typename Scalar> Var<Scalar> operator*(const Var<Scalar>& a, const Var<Scalar>& b) { return mul(a, b); }
template <typename Scalar> Var<Scalar> operator/(const Var<Scalar>& a, const Var<Scalar>& b) { return div(a, b); }
template <typename Scalar> Var<Scalar> operator-(const Var<Scalar>& a) { return neg(a); }
template <typename Scalar> Var<Scalar> operator*(const Var<Scalar>& a, Scalar c) { return scale(a, c); }
template <typename Scalar> Var<Scalar> operator*(Scalar c, const Var<Scalar>& a) { return scale(a, c); }
template <typename Scalar> Var<Scalar> operator+(const Var<Scalar>& a, Scalar c) { return shift(a, c); }
template <typename Scalar> Var<Scalar> operator-(const Var<Scalar>& a, Scalar c) { return shift(a, -c); }

// [n,k] x [k,m] -> [n,m]
template <typename Scalar> Var<Scalar> matmul(const Var<Scalar>& a, const Var<Scalar>& b);
// x [n,in], weight [out,in], bias [out] -> x weight^T + bias
template <typename Scalar> Var<Scalar> linear(const Var<Scalar>& x, const Var<Scalar>& weight, const Var<Scalar>& bias);

// ---------------------------------------------------------------------------
// Elementwise.
// ---------------------------------------------------------------------------

template <typename Scalar> Var<Scalar> exp(const Var<Scalar>& a);
template <typename Scalar> Var<Scalar> log(const Var<Scalar>& a);
template <typename Scalar> Var<Scalar> elu(const Var<Scalar>& a);
template <typename Scalar> Var<Scalar> sigmoid(const Var<Scalar>& a);
template <typename Scalar> Var<Scalar> tanh(const Var<Scalar>& a);
template <typename Scalar> Var<Scalar> square(const Var<Scalar>& a);
template <typename Scalar> Var<Scalar> softplus(const Var<Scalar>& a);
template <typename Scalar> Var<Scalar> sqrt(const Var<Scalar>& a);
// Gradient is passed through only strictly inside [lo, hi].
template <typename Scalar> Var<Scalar> clamp(const Var<Scalar>& a, Scalar lo, Scalar hi);

// ---------------------------------------------------------------------------
// Reductions and shape manipulation.
// ---------------------------------------------------------------------------

template <typename Scalar> Var<Scalar> sum(const Var<Scalar>& a);   // -> [1]
template <typename Scalar> Var<Scalar> mean(const Var<Scalar>& a);  // -> [1]
// Sum over every axis but the first: [n, ...] -> [n]
template <typename Scalar> Var<Scalar> sum_rows(const Var<Scalar>& a);
// Sum over the first axis: [n, ...] -> [...]
template <typename Scalar> Var<Scalar> sum_batch(const Var<Scalar>& a);
// Row-wise log-sum-exp of a 2-D tensor: [n,m] -> [n]
template <typename Scalar> Var<Scalar> logsumexp_rows(const Var<Scalar>& a);
template <typename Scalar> Var<Scalar> reshape(const Var<Scalar>& a, Shape shape);
// Columns [start, start+count) of a 2-D tensor.
template <typename Scalar> Var<Scalar> slice_cols(const Var<Scalar>& a, Index start, Index count);
template <typename Scalar> Var<Scalar> concat_cols(const std::vector<Var<Scalar>>& parts);
// Output column j is input column perm[j].
template <typename Scalar> Var<Scalar> permute_cols(const Var<Scalar>& a, const std::vector<Index>& perm);
// [n] -> [n, m], every column a copy of the input.
template <typename Scalar> Var<Scalar> repeat_cols(const Var<Scalar>& a, Index m);
template <typename Scalar> Var<Scalar> transpose(const Var<Scalar>& a);
// [n,d] x [m,d] -> [n,m] of squared Euclidean distances between rows.
template <typename Scalar> Var<Scalar> pairwise_sq_dist(const Var<Scalar>& a, const Var<Scalar>& b);

// ---------------------------------------------------------------------------
// Convolution. Tensors are [batch, channels, height, width]; weights are
// [out, in, kh, kw] for conv2d and [in, out, kh, kw] for the transpose.
// ---------------------------------------------------------------------------

struct ConvSpec {
  Index stride = 1;
  Index dilation = 1;
  Index pad_h = 0;
  Index pad_w = 0;
};

Index conv_output_size(Index input, Index kernel, Index stride, Index dilation, Index pad);

template <typename Scalar>
Var<Scalar> conv2d(const Var<Scalar>& x, const Var<Scalar>& weight, const Var<Scalar>& bias, const ConvSpec& spec);

// Adjoint of conv2d: maps a [n, in, h, w] map back to [n, out, out_h, out_w]
// where conv2d with the same spec maps (out_h, out_w) to (h, w).
template <typename Scalar>
Var<Scalar> conv_transpose2d(const Var<Scalar>& x, const Var<Scalar>& weight, const Var<Scalar>& bias,
                             const ConvSpec& spec, Index out_h, Index out_w);

// ---------------------------------------------------------------------------
// Normalization and regularization.
// ---------------------------------------------------------------------------

template <typename Scalar>
struct BatchNormState {
  Tensor<Scalar> running_mean;
  Tensor<Scalar> running_var;
  Scalar momentum = Scalar(0.1);
  Scalar eps = Scalar(1e-5);
};

// Features are axis 1 of [n, f] or [n, c, h, w]. Training mode normalizes
// with batch statistics and updates the running estimates; eval mode uses
// the running estimates only.
template <typename Scalar>
Var<Scalar> batch_norm(const Var<Scalar>& x, const Var<Scalar>& gamma, const Var<Scalar>& beta,
                       BatchNormState<Scalar>& state, bool training);

// Inverted dropout; identity in eval mode.
template <typename Scalar>
Var<Scalar> dropout(const Var<Scalar>& x, Scalar p, bool training, std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Generic dispatch over the named op kinds.
// ---------------------------------------------------------------------------

enum class OpKind { matmul, add, mul, conv2d, elu, sigmoid, log, exp, sum, mean, batchnorm, dropout };

template <typename Scalar>
struct OpAttributes {
  ConvSpec conv;
  Scalar dropout_p = Scalar(0.3);
  bool training = true;
  std::uint64_t seed = 0;
  BatchNormState<Scalar>* batchnorm = nullptr;
};

template <typename Scalar>
Var<Scalar> forward_op(OpKind op, std::span<const Var<Scalar>> inputs, const OpAttributes<Scalar>& attrs = {});

}  // namespace synthflow::numcore
