#pragma once

#include "synthflow/models/model.hpp"
#include "synthflow/numcore/checkpoint.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <span>
#include <vector>

namespace synthflow::models {

// Row-major float storage of a whole corpus; batches are cut from it.
struct TrainingData {
  Index mels = 0;
  Index frames = 0;
  Index params = 0;
  std::vector<float> features;            // size() * mels * frames, normalized
  std::vector<float> values;              // size() * params
  std::vector<std::vector<int>> labels;   // [pair][row]

  Index size() const { return params == 0 ? 0 : Index(values.size()) / params; }
  template <typename Scalar>
  Batch<Scalar> batch(std::span<const std::size_t> rows) const;
};

struct TrainConfig {
  Index epochs = 80;
  Index batch_size = 64;
  double lr = 2e-4;
  int patience = 20;
  double factor = 0.5;
  double warmup_epochs = 100.0;
  std::uint64_t seed = 0;
  // Log (train.jsonl) and checkpoints (last.synf, best.synf) go here; empty
  // keeps everything in memory.
  std::filesystem::path out_dir;
  bool resume = false;
  // Reload the best-validation weights once training ends.
  bool restore_best = true;

  nlohmann::json to_json() const;
  static TrainConfig from_json(const nlohmann::json& j);
};

struct EpochRecord {
  Index epoch = 0;
  double train_loss = 0.0;
  double valid_loss = 0.0;
  double lr = 0.0;
  double beta = 0.0;
  std::map<std::string, double> terms;  // training means
  double seconds = 0.0;

  nlohmann::json to_json() const;
};

struct TrainResult {
  std::vector<EpochRecord> history;
  double best_valid = 0.0;
  Index best_epoch = -1;
};

// Mean loss over `rows` in eval mode at posterior means.
template <typename Scalar>
double evaluate_loss(SynthModel<Scalar>& model, const TrainingData& data, std::span<const std::size_t> rows,
                     double beta, Index batch_size, double n_train);

// Adam with reduce-on-plateau lr and linear beta warmup. A non-finite loss or
// gradient writes <out_dir>/nonfinite.json and rethrows NonFiniteError.
template <typename Scalar>
TrainResult train(SynthModel<Scalar>& model, const TrainingData& data, std::span<const std::size_t> train_rows,
                  std::span<const std::size_t> valid_rows, const TrainConfig& config,
                  const std::function<void(const EpochRecord&)>& on_epoch = {});

inline constexpr const char* kModelFormat = "synthflow-model/1";

// Model weights and config in a SYNF1 container. `extra` is stored under
// config["extra"].
template <typename Scalar>
void save_model(const std::filesystem::path& path, SynthModel<Scalar>& model,
                const nlohmann::json& extra = nlohmann::json::object());

// Rebuilds the model from the stored config. Throws IoError when unreadable
// and IncompatibleError for a foreign format or mismatched tensors.
template <typename Scalar>
std::shared_ptr<SynthModel<Scalar>> load_model(const std::filesystem::path& path, nlohmann::json* extra = nullptr);

}  // namespace synthflow::models
