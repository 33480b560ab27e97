#pragma once

#include "synthflow/numcore/layers.hpp"

#include <memory>
#include <vector>

namespace synthflow::models {

using numcore::Index;
using numcore::Module;
using numcore::Tensor;
using numcore::Var;

// `layers` linear maps; every one but the last is followed by optional batch
// norm, ELU and optional dropout.
template <typename Scalar>
class DenseStack : public Module<Scalar> {
 public:
  DenseStack(Index in, Index hidden, Index out, Index layers, double dropout, bool batch_norm, std::uint64_t seed);
  Var<Scalar> forward(const Var<Scalar>& x);
  Index layer_count() const { return Index(linears_.size()); }
  Index hidden() const { return hidden_; }
  void reseed(std::uint64_t seed);

 private:
  Index hidden_;
  std::vector<std::shared_ptr<numcore::Linear<Scalar>>> linears_;
  std::vector<std::shared_ptr<numcore::BatchNorm<Scalar>>> norms_;
  std::vector<std::shared_ptr<numcore::Dropout<Scalar>>> dropouts_;
};

// Stride-2 convolutions with dilation 2^l at layer l, each followed by batch
// norm and ELU. The residual variant adds a strided 1x1 projection of the
// block input before the activation.
template <typename Scalar>
class ConvStack : public Module<Scalar> {
 public:
  ConvStack(Index in_channels, Index channels, Index layers, Index kernel, bool residual, std::uint64_t seed);
  // [n, c, h, w] -> [n, channels, h', w']
  Var<Scalar> forward(const Var<Scalar>& x);
  // Spatial sizes after every layer, starting with the input.
  std::vector<std::pair<Index, Index>> plan(Index height, Index width) const;
  Index channels() const { return channels_; }

 private:
  Index channels_;
  bool residual_;
  std::vector<std::shared_ptr<numcore::Conv2d<Scalar>>> convs_, shortcuts_;
  std::vector<std::shared_ptr<numcore::BatchNorm<Scalar>>> norms_;
};

// Mirror of ConvStack built from transposed convolutions. The last layer
// emits `out_channels` maps with no normalization or activation.
template <typename Scalar>
class DeconvStack : public Module<Scalar> {
 public:
  // `plan` is ConvStack::plan of the matching encoder.
  DeconvStack(Index channels, Index out_channels, Index kernel, std::vector<std::pair<Index, Index>> plan,
              std::uint64_t seed);
  Var<Scalar> forward(const Var<Scalar>& x);

 private:
  std::vector<std::pair<Index, Index>> plan_;
  std::vector<std::shared_ptr<numcore::ConvTranspose2d<Scalar>>> deconvs_;
  std::vector<std::shared_ptr<numcore::BatchNorm<Scalar>>> norms_;
};

// Conv stack followed by a dense stack on the flattened maps.
template <typename Scalar>
class ConvNet : public Module<Scalar> {
 public:
  ConvNet(Index height, Index width, Index channels, Index conv_layers, Index kernel, bool residual, Index hidden,
          Index dense_layers, Index out, double dropout, std::uint64_t seed);
  // [n, 1, h, w] -> [n, out]
  Var<Scalar> forward(const Var<Scalar>& x);
  const std::vector<std::pair<Index, Index>>& plan() const { return plan_; }
  ConvStack<Scalar>& conv() { return *conv_; }
  DenseStack<Scalar>& dense() { return *dense_; }

 private:
  std::vector<std::pair<Index, Index>> plan_;
  std::shared_ptr<ConvStack<Scalar>> conv_;
  std::shared_ptr<DenseStack<Scalar>> dense_;
};

// Dense stack to the deepest feature map, then the transposed convolutions
// back to [n, 1, h, w].
template <typename Scalar>
class ConvDecoder : public Module<Scalar> {
 public:
  ConvDecoder(Index latent, Index hidden, Index dense_layers, Index channels, Index kernel,
              std::vector<std::pair<Index, Index>> plan, std::uint64_t seed);
  Var<Scalar> forward(const Var<Scalar>& z);

 private:
  Index channels_;
  std::vector<std::pair<Index, Index>> plan_;
  std::shared_ptr<DenseStack<Scalar>> dense_;
  std::shared_ptr<DeconvStack<Scalar>> deconv_;
};

}  // namespace synthflow::models
