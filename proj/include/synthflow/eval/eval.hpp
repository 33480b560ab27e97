#pragma once

#include "synthflow/dataset/dataset.hpp"
#include "synthflow/models/training.hpp"

#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace synthflow::eval {

using dataset::Matrix;
using dataset::Profile;
using dsp::NormalizationStats;
using synth::SynthManifest;
using numcore::Index;
using Params = std::vector<double>;

// (1/s) sum (v_i - w_i)^2. The [0,1] normalization of every parameter makes
// this the magnitude-normalized error. Throws std::invalid_argument on a
// length mismatch.
double mse_n(std::span<const double> v, std::span<const double> w);
// ||v - w||_2 / sqrt(s): the root of mse_n.
double param_distance(std::span<const double> v, std::span<const double> w);

struct Stat {
  double mean = 0.0;
  double std = 0.0;  // population deviation
  std::size_t count = 0;
};
Stat summarize(const std::vector<double>& xs);

// Area under the ROC curve of `scores` separating positives from negatives,
// via the Mann-Whitney rank sum with average ranks for ties. Throws when
// either class is empty.
double auc(std::span<const double> negatives, std::span<const double> positives);

// Two-sided binomial sign test over paired values, ties dropped.
struct SignTest {
  int wins = 0;    // a < b
  int losses = 0;  // a > b
  int ties = 0;
  double p_value = 1.0;
};
SignTest sign_test(std::span<const double> a, std::span<const double> b);

// Provenance every trained checkpoint carries so evaluation can refuse a
// foreign dataset.
struct Provenance {
  std::string dataset_hash;
  std::string synth_manifest;
  std::string profile;
  int fold = 0;
  NormalizationStats stats;
  nlohmann::json to_json() const;
  static Provenance from_json(const nlohmann::json& j);  // throws IncompatibleError
};
Provenance provenance(const dataset::Dataset& data, int fold);

// Corpus rows normalized with the fold's train stats. Model labels are
// derived from the dataset tags of `pairs` (matched by name).
models::TrainingData training_data(const dataset::Dataset& data, int fold,
                                   const std::vector<models::SemanticPair>& pairs = {});
// Tag pairs the dataset actually labeled, as model semantic pairs.
std::vector<models::SemanticPair> semantic_pairs(const dataset::Dataset& data);

// A loaded model plus what it needs to go from audio to presets and back.
// Calls are serialized internally, so one engine can serve many threads.
class Engine {
 public:
  Engine(std::shared_ptr<models::SynthModel<float>> model, Provenance provenance, std::string checkpoint_hash = {});
  // Loads a checkpoint written by save_model with Provenance as its extra.
  // Throws IoError / IncompatibleError.
  static std::unique_ptr<Engine> load(const std::filesystem::path& checkpoint);

  const models::ModelConfig& config() const { return model_->config(); }
  models::SynthModel<float>& model() { return *model_; }
  const SynthManifest& manifest() const { return *manifest_; }
  const Profile& profile() const { return profile_; }
  const NormalizationStats& stats() const { return provenance_.stats; }
  const Provenance& provenance() const { return provenance_; }
  const std::string& checkpoint_hash() const { return checkpoint_hash_; }
  Index latent_dim() const;

  // Raw log-mel matrices in, clipped presets out.
  std::vector<Params> predict(const std::vector<Matrix>& raw);
  std::vector<Params> encode(const std::vector<Matrix>& raw);
  // Pre-clip parameters for latent rows.
  std::vector<Params> decode_raw(const std::vector<Params>& z);
  std::vector<Params> decode(const std::vector<Params>& z);
  std::vector<Params> invert(const std::vector<Params>& v);

  synth::AudioBuffer render(const Params& v) const;
  Matrix features(const synth::AudioBuffer& audio) const;

 private:
  models::Tensor<float> input(const std::vector<Matrix>& raw) const;

  std::shared_ptr<models::SynthModel<float>> model_;
  Provenance provenance_;
  const SynthManifest* manifest_;
  Profile profile_;
  std::string checkpoint_hash_;
  std::mutex mutex_;
};

std::vector<Params> clip(std::vector<Params> v);

// ---------------------------------------------------------------------------
// Item-level evaluation and reports.
// ---------------------------------------------------------------------------

struct Item {
  std::string id;
  Matrix features;         // raw log-mel of the reference audio
  std::optional<Params> v; // ground truth when known
};

struct ItemResult {
  std::string id;
  std::optional<Params> v;
  Params v_hat;
  std::optional<double> mse_n;
  double sc = 0.0;
  double audio_mse = 0.0;
  nlohmann::json to_json() const;
  static ItemResult from_json(const nlohmann::json& j);
};

// Infers a preset for every item, renders it and compares features.
// Rendering runs on `jobs` threads; inference is batched.
std::vector<ItemResult> evaluate_items(Engine& engine, const std::vector<Item>& items, int jobs = 1);

struct MetricRow {
  std::string model;
  int fold = 0;
  std::string regime;  // test16, test32 or ood32
  bool has_params = true;
  Stat mse_n, sc, audio_mse;
  nlohmann::json to_json() const;
  static MetricRow from_json(const nlohmann::json& j);
};
MetricRow aggregate(const std::string& model, int fold, const std::string& regime,
                    const std::vector<ItemResult>& items);
// "test16" / "test32" for the dataset's manifest, "ood32" for OOD sets.
std::string regime_name(const SynthManifest& manifest, bool ood);

// Test split of a fold, or an OOD set, as evaluation items.
std::vector<Item> test_items(const dataset::Dataset& data, int fold);
std::vector<Item> ood_items(const dataset::OodSet& set);

// Rows across folds: per model and regime, the mean and spread of fold means.
std::vector<MetricRow> fold_summary(const std::vector<MetricRow>& rows);

struct Report {
  std::vector<MetricRow> rows;     // one per model, fold and regime
  std::vector<MetricRow> summary;  // fold_summary(rows)
  std::vector<std::string> failures;
  bool partial() const { return !failures.empty(); }
  nlohmann::json to_json() const;
  static Report from_json(const nlohmann::json& j);
  // Table mirroring Params MSE_n | Audio SC | Audio MSE per regime.
  std::string to_text() const;
  // report.json and report.txt under `dir`.
  void write(const std::filesystem::path& dir) const;
};

// items.jsonl: one line per item with model, fold and regime.
void append_items(const std::filesystem::path& path, const std::string& model, int fold, const std::string& regime,
                  const std::vector<ItemResult>& items);
// Rebuilds every row from an items log.
std::vector<MetricRow> rows_from_items(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// K-fold protocol.
// ---------------------------------------------------------------------------

struct KFoldPlan {
  std::filesystem::path dataset_root;
  std::filesystem::path out_dir;
  std::vector<models::ModelKind> kinds;
  models::ModelConfig model;  // kind, params, mels, frames and pairs are filled in per run
  models::TrainConfig train;  // seed is offset by the fold index
  std::vector<int> folds;     // empty: every fold of the dataset
  std::optional<std::filesystem::path> ood_root;
  int jobs = 1;
  std::function<void(const std::string&)> log;
};

// Checkpoint of one model on one fold inside a k-fold output tree.
std::filesystem::path checkpoint_path(const std::filesystem::path& out_dir, models::ModelKind kind, int fold);

// Trains every kind on every fold (seed + fold), evaluates the test split and
// the OOD set, and writes items.jsonl plus the report under out_dir. A fold
// that throws is recorded in Report::failures and the rest continue.
Report run_kfold(const KFoldPlan& plan);

// Trains one model on one fold and saves it (with Provenance) at `checkpoint`.
models::TrainResult train_fold(const dataset::Dataset& data, int fold, models::ModelConfig config,
                               models::TrainConfig train, const std::filesystem::path& checkpoint,
                               const std::function<void(const models::EpochRecord&)>& on_epoch = {});

// ---------------------------------------------------------------------------
// Latent analyses.
// ---------------------------------------------------------------------------

struct StepDescriptors {
  double centroid = 0.0;
  double rms = 0.0;
  double flux = 0.0;
  double high_band = 0.0;
};
StepDescriptors summarize_descriptors(const dsp::Descriptors& d);

struct TraversalResult {
  Index dim = 0;
  std::vector<double> grid;
  std::vector<Params> z;
  std::vector<Params> v;  // clipped
  std::vector<StepDescriptors> descriptors;
  std::vector<Index> top_variance;  // parameters by decreasing variance along the path
  nlohmann::json to_json() const;
};

// z[dim] sweeps [lo, hi] in `steps` points, all other coordinates 0; steps = 1
// evaluates z = 0. Throws std::out_of_range for a bad dim.
TraversalResult traverse_dimension(Engine& engine, Index dim, double lo, double hi, int steps,
                                   std::size_t top = 5, int jobs = 1);

// Latent dimensions ordered by decreasing variance of the encoded items.
std::vector<Index> dimensions_by_variance(Engine& engine, const std::vector<Matrix>& raw);

struct NeighborhoodResult {
  Params anchor_z;
  Params anchor_v;
  double radius = 0.0;
  std::vector<Params> z;
  std::vector<Params> v;
  std::vector<double> sc;              // rendered neighbor vs rendered anchor
  std::vector<double> param_distance;  // neighbor v vs anchor v
  nlohmann::json to_json() const;
};

// `count` latents uniform in the ball of `radius` around anchor_z, decoded,
// rendered and compared against the anchor's own decoded preset.
NeighborhoodResult neighborhood(Engine& engine, const Params& anchor_z, double radius, int count,
                                std::uint64_t seed, int jobs = 1);

struct Interpolation {
  std::vector<Params> z;
  std::vector<Params> v;
  nlohmann::json to_json() const;
};
// Straight latent path from a to b, endpoints included (steps >= 2).
Interpolation interpolate(Engine& engine, const Params& a, const Params& b, int steps);

// Pairwise latent distances of `z`, sorted, for radius selection.
std::vector<double> pairwise_distances(const std::vector<Params>& z);
double percentile(std::vector<double> xs, double q);

struct SemanticResult {
  std::string pair;
  Index dim = 0;
  double auc = 0.5;
  std::size_t negatives = 0;
  std::size_t positives = 0;
  TraversalResult traversal;
  nlohmann::json to_json() const;
};
// AUC of the pair's latent dimension separating held-out poles. Throws
// std::invalid_argument when the model was not trained on the pair.
SemanticResult semantic_analysis(Engine& engine, const dataset::Dataset& data, const std::string& pair,
                                 std::span<const std::size_t> rows, int traversal_steps = 9);

}  // namespace synthflow::eval
