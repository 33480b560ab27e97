#pragma once

#include "synthflow/models/config.hpp"
#include "synthflow/models/losses.hpp"
#include "synthflow/models/networks.hpp"

#include <memory>
#include <random>
#include <vector>

namespace synthflow::models {

template <typename Scalar>
struct Batch {
  Tensor<Scalar> x;  // [n, 1, mels, frames] normalized features
  Tensor<Scalar> v;  // [n, s] parameters in [0, 1]
  // labels[pair][row], values kUntagged / kNegative / kPositive. May be empty
  // for models without semantic pairs.
  std::vector<std::vector<int>> labels;

  Index size() const { return x.empty() ? 0 : x.dim(0); }
};

struct StepContext {
  double beta = 1.0;
  // Training-set size; global KL terms (lambda, psi) are divided by it so the
  // loss stays per-sample.
  double n_train = 1.0;
  // Noise source for reparameterized draws. Null evaluates at posterior means.
  std::mt19937_64* rng = nullptr;
};

// Common interface of every model kind. Inference methods switch to eval
// mode for the duration of the call.
template <typename Scalar>
class SynthModel : public Module<Scalar> {
 public:
  explicit SynthModel(ModelConfig config);
  const ModelConfig& config() const { return config_; }
  ModelKind kind() const { return config_.kind; }

  virtual LossBreakdown<Scalar> loss(const Batch<Scalar>& batch, const StepContext& ctx) = 0;

  // Parameter estimates before clipping.
  virtual Tensor<Scalar> predict_raw(const Tensor<Scalar>& x) = 0;
  // Estimates clipped to [0, 1].
  Tensor<Scalar> predict(const Tensor<Scalar>& x);

  virtual bool has_latent() const { return false; }
  // Latent that feeds the parameter predictor (the flowed latent for flow kinds).
  virtual Tensor<Scalar> encode(const Tensor<Scalar>& x);
  // Pre-clip parameters for latent rows.
  virtual Tensor<Scalar> decode_params(const Tensor<Scalar>& z);
  virtual Tensor<Scalar> decode_spectrogram(const Tensor<Scalar>& z);
  // Latent whose decoded parameters are v. Regression-flow kinds only.
  virtual Tensor<Scalar> invert(const Tensor<Scalar>& v);

  // Restarts dropout streams; called once per epoch.
  virtual void reseed(std::uint64_t seed) = 0;

 protected:
  class EvalScope {
   public:
    explicit EvalScope(Module<Scalar>& m) : m_(m), was_(m.training()) { m_.set_training(false); }
    ~EvalScope() { m_.set_training(was_); }

   private:
    Module<Scalar>& m_;
    bool was_;
  };

  ModelConfig config_;
};

// mlp, cnn and resnet: features to sigmoid parameters, trained on squared error.
template <typename Scalar>
class RegressorModel : public SynthModel<Scalar> {
 public:
  explicit RegressorModel(ModelConfig config);
  LossBreakdown<Scalar> loss(const Batch<Scalar>& batch, const StepContext& ctx) override;
  Tensor<Scalar> predict_raw(const Tensor<Scalar>& x) override;
  void reseed(std::uint64_t seed) override;
  Var<Scalar> forward(const Var<Scalar>& x);

 private:
  std::shared_ptr<DenseStack<Scalar>> mlp_;
  std::shared_ptr<ConvNet<Scalar>> conv_;
};

// Every auto-encoding kind. The latent z is the encoder output (ae, wae), a
// Gaussian sample (vae), or a sample pushed through the posterior flow and,
// for flowdis, the disentangling flow. The decoder and the parameter
// predictor both read z.
template <typename Scalar>
class AutoEncoderModel : public SynthModel<Scalar> {
 public:
  explicit AutoEncoderModel(ModelConfig config);
  LossBreakdown<Scalar> loss(const Batch<Scalar>& batch, const StepContext& ctx) override;
  Tensor<Scalar> predict_raw(const Tensor<Scalar>& x) override;
  bool has_latent() const override { return true; }
  Tensor<Scalar> encode(const Tensor<Scalar>& x) override;
  Tensor<Scalar> decode_params(const Tensor<Scalar>& z) override;
  Tensor<Scalar> decode_spectrogram(const Tensor<Scalar>& z) override;
  Tensor<Scalar> invert(const Tensor<Scalar>& v) override;
  void reseed(std::uint64_t seed) override;

  ConvNet<Scalar>& encoder() { return *encoder_; }
  ConvDecoder<Scalar>& decoder() { return *decoder_; }

 private:
  struct Latent {
    Var<Scalar> z;
    Var<Scalar> regularizer;  // [n] or [1]; undefined for the plain AE
    Var<Scalar> log_q;        // [n] for flow kinds
  };
  Latent latent(const Var<Scalar>& x, std::mt19937_64* rng);
  Var<Scalar> params_from_latent(const Var<Scalar>& z);
  Var<Scalar> to_link(const Tensor<Scalar>& v) const;
  Var<Scalar> from_link(const Var<Scalar>& u) const;

  std::shared_ptr<ConvNet<Scalar>> encoder_;
  std::shared_ptr<ConvDecoder<Scalar>> decoder_;
  std::shared_ptr<DenseStack<Scalar>> head_;
  std::shared_ptr<flows::FlowChain<Scalar>> posterior_, disentangle_, regression_;
  std::shared_ptr<flows::AmortizedFlow<Scalar>> amortized_;
  std::shared_ptr<ErrorModel<Scalar>> error_;
  std::shared_ptr<DenseStack<Scalar>> tag_head_;
  std::mt19937_64 inference_rng_{0};
};

template <typename Scalar>
std::shared_ptr<SynthModel<Scalar>> make_model(const ModelConfig& config);

// Input tensor shape for a batch of n items.
numcore::Shape input_shape(const ModelConfig& config, Index n);

}  // namespace synthflow::models
