#pragma once

#include "synthflow/numcore/layers.hpp"

#include <memory>
#include <random>
#include <string>
#include <vector>

namespace synthflow::flows {

using numcore::Index;
using numcore::Module;
using numcore::Tensor;
using numcore::Var;

template <typename Scalar>
struct FlowResult {
  Var<Scalar> z;        // [n, dim]
  Var<Scalar> log_det;  // [n], log|det dz/dz_in| per row
};

// Invertible map on R^dim applied row-wise to [n, dim] batches.
template <typename Scalar>
class FlowTransform : public Module<Scalar> {
 public:
  explicit FlowTransform(Index dim) : dim_(dim) {}
  Index dim() const { return dim_; }
  virtual std::string kind() const = 0;
  virtual FlowResult<Scalar> forward(const Var<Scalar>& z) = 0;
  virtual Var<Scalar> inverse(const Var<Scalar>& z) = 0;

 protected:
  void check_dim(const char* op, const Var<Scalar>& z) const;

 private:
  Index dim_;
};

// z' = exp(log_scale) * z + shift
template <typename Scalar>
class AffineDiagonal : public FlowTransform<Scalar> {
 public:
  explicit AffineDiagonal(Index dim);
  AffineDiagonal(Tensor<Scalar> log_scale, Tensor<Scalar> shift);
  std::string kind() const override { return "affine"; }
  FlowResult<Scalar> forward(const Var<Scalar>& z) override;
  Var<Scalar> inverse(const Var<Scalar>& z) override;

 private:
  Var<Scalar> log_scale_, shift_;
};

// Output column j is input column perm[j].
template <typename Scalar>
class Permutation : public FlowTransform<Scalar> {
 public:
  explicit Permutation(std::vector<Index> perm);
  static std::shared_ptr<Permutation> reversal(Index dim);
  std::string kind() const override { return "permutation"; }
  const std::vector<Index>& perm() const { return perm_; }
  FlowResult<Scalar> forward(const Var<Scalar>& z) override;
  Var<Scalar> inverse(const Var<Scalar>& z) override;

 private:
  std::vector<Index> perm_, inverse_perm_;
};

// MADE connectivity for a 2-layer conditioner over degrees 1..dim.
// hidden[k, d] = 1 iff m(k) >= d+1; output[d, k] = 1 iff d+1 > m(k).
struct MadeMasks {
  std::vector<Index> hidden_degrees;
  Eigen::MatrixXd hidden;  // [hidden, dim]
  Eigen::MatrixXd output;  // [dim, hidden]
};
MadeMasks made_masks(Index dim, Index hidden);

// Inverse autoregressive flow layer: z'_i = mu_i(z_<i) + exp(alpha_i(z_<i)) z_i.
// alpha is clamped to [-clamp, clamp]; log det = sum_i alpha_i. The forward
// map is one parallel conditioner pass; the inverse takes dim passes.
template <typename Scalar>
class IafLayer : public FlowTransform<Scalar> {
 public:
  static constexpr double kClamp = 7.0;

  // Output layers start at zero so a fresh layer is the identity.
  IafLayer(Index dim, std::uint64_t seed, Index hidden = 0);
  std::string kind() const override { return "iaf"; }
  FlowResult<Scalar> forward(const Var<Scalar>& z) override;
  // Throws std::domain_error when the raw log-scale leaves the clamp range.
  Var<Scalar> inverse(const Var<Scalar>& z) override;
  Index hidden() const { return hidden_; }

  // Randomizes the output layers (tests start from a non-identity layer).
  void perturb(double stddev, std::uint64_t seed);

 private:
  struct Conditioned {
    Var<Scalar> mu, alpha, raw_alpha;
  };
  Conditioned condition(const Var<Scalar>& z) const;

  Index hidden_;
  std::shared_ptr<numcore::MaskedLinear<Scalar>> in_, mu_out_, alpha_out_;
};

// Sequence of transforms; log dets add, inverse runs in reverse.
template <typename Scalar>
class FlowChain : public Module<Scalar> {
 public:
  explicit FlowChain(Index dim) : dim_(dim) {}
  // `length` IAF layers with a reversal permutation between consecutive layers.
  static std::shared_ptr<FlowChain> iaf(Index dim, Index length, std::uint64_t seed);

  void append(std::shared_ptr<FlowTransform<Scalar>> t);
  Index dim() const { return dim_; }
  std::size_t length() const { return transforms_.size(); }
  const std::vector<std::shared_ptr<FlowTransform<Scalar>>>& transforms() const { return transforms_; }
  // Throws NonFiniteError naming the layer index on a non-finite output.
  FlowResult<Scalar> forward(const Var<Scalar>& z0);
  Var<Scalar> inverse(const Var<Scalar>& zk);
  std::vector<std::string> topology() const;

 private:
  Index dim_;
  std::vector<std::shared_ptr<FlowTransform<Scalar>>> transforms_;
};

// Row-wise log N(x; mean, diag(exp(log_var))). mean/log_var are [n, d] or [d].
template <typename Scalar>
Var<Scalar> diag_normal_log_density(const Var<Scalar>& x, const Var<Scalar>& mean, const Var<Scalar>& log_var);
template <typename Scalar>
Var<Scalar> std_normal_log_density(const Var<Scalar>& x);

template <typename Scalar>
struct DiagonalGaussian {
  Var<Scalar> mean;     // [d]
  Var<Scalar> log_var;  // [d]
  static DiagonalGaussian standard(Index dim);
};

// log q_k(x) = log q_0(f^-1(x)) - sum_i log|det df_i/dz_{i-1}| evaluated along f^-1(x).
template <typename Scalar>
Var<Scalar> log_density(FlowChain<Scalar>& chain, const DiagonalGaussian<Scalar>& base, const Var<Scalar>& x);

// IAF chain whose conditioner weights psi are random, with a factorized
// Gaussian posterior q(psi) and a standard-normal prior. Reversal
// permutations sit between layers as in FlowChain::iaf.
template <typename Scalar>
class AmortizedFlow : public Module<Scalar> {
 public:
  AmortizedFlow(Index dim, Index length, std::uint64_t seed, Index hidden = 0, double init_log_var = -10.0);

  // sample=false uses the posterior mean of psi. One psi draw is shared by
  // the whole batch.
  FlowResult<Scalar> forward(const Var<Scalar>& z0, std::mt19937_64& rng, bool sample);
  // Inverse under the posterior mean; same clamp contract as IafLayer.
  Var<Scalar> inverse(const Var<Scalar>& zk);
  // KL(q(psi) || N(0, I)) as a [1] tensor. Weights removed by the MADE masks
  // do not take part in the flow and are excluded.
  Var<Scalar> kl();
  Index dim() const { return dim_; }
  Index length() const { return length_; }
  Index psi_count() const;

 private:
  struct Weight {
    Var<Scalar> mean, log_var, mask;
  };
  struct Layer {
    Weight w_in, b_in, w_mu, b_mu, w_alpha, b_alpha;
  };
  struct Conditioner {
    Var<Scalar> w_in, b_in, w_mu, b_mu, w_alpha, b_alpha;
  };
  Weight make_weight(const std::string& name, Tensor<Scalar> mean, Tensor<Scalar> mask, double log_var);
  Conditioner draw(const Layer& layer, std::mt19937_64* rng) const;
  static void condition(const Conditioner& c, const Var<Scalar>& z, Var<Scalar>& mu, Var<Scalar>& alpha,
                        Var<Scalar>& raw_alpha);

  Index dim_, length_, hidden_;
  std::vector<Layer> layers_;
  std::vector<Index> reversal_;
};

}  // namespace synthflow::flows
