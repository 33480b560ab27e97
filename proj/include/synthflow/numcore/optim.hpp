#pragma once

#include "synthflow/numcore/autodiff.hpp"

#include <string>
#include <vector>

namespace synthflow::numcore {

template <typename Scalar>
class Checkpoint;

struct AdamConfig {
  double lr = 2e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

template <typename Scalar>
class Adam {
 public:
  Adam(std::vector<std::pair<std::string, Var<Scalar>>> params, AdamConfig config = {});

  // One bias-corrected update from the current grads. A parameter with no
  // grad is treated as having a zero grad. Throws NonFiniteError naming the
  // first offending parameter before anything is modified.
  void step();
  void zero_grad();

  double lr() const { return config_.lr; }
  void set_lr(double lr);
  long long steps() const { return t_; }
  const AdamConfig& config() const { return config_; }

  const Tensor<Scalar>& first_moment(std::size_t i) const { return m_[i]; }
  const Tensor<Scalar>& second_moment(std::size_t i) const { return v_[i]; }

  void save_into(Checkpoint<Scalar>& ckpt) const;
  void load_from(const Checkpoint<Scalar>& ckpt);

 private:
  std::vector<std::pair<std::string, Var<Scalar>>> params_;
  std::vector<Tensor<Scalar>> m_, v_;
  AdamConfig config_;
  long long t_ = 0;
};

}  // namespace synthflow::numcore
