#pragma once

#include "synthflow/numcore/init.hpp"
#include "synthflow/numcore/ops.hpp"

#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace synthflow::numcore {

template <typename Scalar>
class Checkpoint;

// Owner of named parameters, buffers and child modules. Instances are held by
// shared_ptr and never copied, so registered buffer pointers stay valid.
template <typename Scalar>
class Module {
 public:
  using VarT = Var<Scalar>;
  using TensorT = Tensor<Scalar>;

  Module() = default;
  Module(const Module&) = delete;
  Module& operator=(const Module&) = delete;
  virtual ~Module() = default;

  // Parameters of this module and all children, dotted names, registration order.
  std::vector<std::pair<std::string, VarT>> named_parameters() const;
  std::vector<VarT> parameters() const;
  std::vector<std::pair<std::string, TensorT*>> named_buffers();
  Index parameter_count() const;

  void set_training(bool training);
  bool training() const { return training_; }

  void save_into(Checkpoint<Scalar>& ckpt, const std::string& prefix = {});
  // Throws IncompatibleError on a missing tensor or shape mismatch.
  void load_from(const Checkpoint<Scalar>& ckpt, const std::string& prefix = {});

 protected:
  VarT& register_parameter(const std::string& name, TensorT value);
  void register_buffer(const std::string& name, TensorT* buffer);
  template <typename M>
  std::shared_ptr<M> register_module(const std::string& name, std::shared_ptr<M> module) {
    children_.emplace_back(name, module);
    return module;
  }

 private:
  std::vector<std::pair<std::string, VarT>> params_;
  std::vector<std::pair<std::string, TensorT*>> buffers_;
  std::vector<std::pair<std::string, std::shared_ptr<Module>>> children_;
  bool training_ = true;
};

template <typename Scalar>
class Linear : public Module<Scalar> {
 public:
  Linear(Index in, Index out, std::uint64_t seed);
  Var<Scalar> forward(const Var<Scalar>& x) const;
  Index in_features() const { return in_; }
  Index out_features() const { return out_; }
  Var<Scalar>& weight() { return weight_; }
  Var<Scalar>& bias() { return bias_; }

 private:
  Index in_, out_;
  Var<Scalar> weight_, bias_;
};

// Linear layer whose weight is multiplied elementwise by a fixed 0/1 mask
// of shape [out, in].
template <typename Scalar>
class MaskedLinear : public Module<Scalar> {
 public:
  MaskedLinear(Index in, Index out, Tensor<Scalar> mask, std::uint64_t seed);
  Var<Scalar> forward(const Var<Scalar>& x) const;
  const Tensor<Scalar>& mask() const { return mask_.value(); }
  Var<Scalar>& weight() { return weight_; }
  Var<Scalar>& bias() { return bias_; }

 private:
  Var<Scalar> weight_, bias_, mask_;
};

// Padding is dilation*(k-1)/2 per side, so stride 2 maps d to ceil(d/2)
// for odd kernels.
template <typename Scalar>
class Conv2d : public Module<Scalar> {
 public:
  Conv2d(Index in_channels, Index out_channels, Index kernel, Index stride, Index dilation, std::uint64_t seed);
  Var<Scalar> forward(const Var<Scalar>& x) const;
  const ConvSpec& spec() const { return spec_; }
  Index output_size(Index input) const;

 private:
  Index kernel_;
  ConvSpec spec_;
  Var<Scalar> weight_, bias_;
};

template <typename Scalar>
class ConvTranspose2d : public Module<Scalar> {
 public:
  ConvTranspose2d(Index in_channels, Index out_channels, Index kernel, Index stride, Index dilation,
                  std::uint64_t seed);
  Var<Scalar> forward(const Var<Scalar>& x, Index out_h, Index out_w) const;

 private:
  ConvSpec spec_;
  Var<Scalar> weight_, bias_;
};

template <typename Scalar>
class BatchNorm : public Module<Scalar> {
 public:
  explicit BatchNorm(Index features);
  Var<Scalar> forward(const Var<Scalar>& x);
  const BatchNormState<Scalar>& state() const { return state_; }

 private:
  Var<Scalar> gamma_, beta_;
  BatchNormState<Scalar> state_;
};

template <typename Scalar>
class Dropout : public Module<Scalar> {
 public:
  Dropout(Scalar p, std::uint64_t seed) : p_(p), rng_(seed) {}
  Var<Scalar> forward(const Var<Scalar>& x);
  void reseed(std::uint64_t seed) { rng_.seed(seed); }

 private:
  Scalar p_;
  std::mt19937_64 rng_;
};

}  // namespace synthflow::numcore
