#pragma once

#include "synthflow/numcore/tensor.hpp"

#include <json.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace synthflow::models {

using numcore::Index;

enum class ModelKind { mlp, cnn, resnet, ae, vae, wae, vaeflow, flowpost, flowcond, flowdis };

std::string to_string(ModelKind kind);
// Throws std::invalid_argument for an unknown name.
ModelKind model_kind_from_string(const std::string& name);
const std::vector<ModelKind>& all_model_kinds();

bool is_baseline(ModelKind kind);           // mlp, cnn, resnet
bool has_regression_flow(ModelKind kind);   // flowpost, flowcond, flowdis
bool has_posterior_flow(ModelKind kind);    // vaeflow and every regression-flow model
bool is_variational(ModelKind kind);        // encoder emits mean and log-variance

// Raised when an operation needs a capability the model kind lacks, e.g.
// latent inversion on a model without a regression flow.
class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Semantic tag pair assigned to one latent dimension.
struct SemanticPair {
  std::string name;
  Index dim = 0;
};

enum class Link { logit, identity };

struct ModelConfig {
  ModelKind kind = ModelKind::cnn;
  Index params = 16;  // synthesizer parameter count; also the latent size
  Index mels = 64;
  Index frames = 30;

  Index channels = 32;
  Index hidden = 512;
  Index conv_layers = 5;
  Index kernel = 7;
  Index mlp_layers = 5;
  Index dense_layers = 3;  // MLP after the conv stack
  Index head_hidden = 0;   // 0: the auto-encoder hidden width
  double dropout = 0.3;
  // Auto-encoders use channels and hidden width divided by this factor, which
  // halves the weight count of the wide layers.
  double ae_width_divisor = 1.4142135623730951;

  Index flow_length = 16;
  Link link = Link::logit;
  double logit_clamp = 1e-4;

  double gamma = 1.0;  // regression weight
  double delta = 1.0;  // semantic weight
  double mmd_weight = 100.0;
  double mu_star = 2.0;
  double sigma_negative = 0.5;
  double sigma_positive = 0.5;
  Index tag_head_hidden = 64;
  std::vector<SemanticPair> pairs;

  std::uint64_t seed = 0;

  Index ae_channels() const;
  Index ae_hidden() const;
  // Latent size of the encoder output head (2x for variational kinds).
  Index encoder_outputs() const;
  // Throws std::invalid_argument on inconsistent values.
  void validate() const;

  nlohmann::json to_json() const;
  static ModelConfig from_json(const nlohmann::json& j);
};

}  // namespace synthflow::models
