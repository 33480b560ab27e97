#pragma once

#include "synthflow/dsp/dsp.hpp"
#include "synthflow/synth/synth.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace synthflow::dataset {

using dsp::Matrix;
using dsp::NormalizationStats;
using dsp::SpectrogramConfig;
using synth::RenderSpec;
using synth::SynthManifest;

struct TagPair {
  std::string name;      // e.g. "constant_moving"
  std::string negative;  // label of the low-score pole
  std::string positive;  // label of the high-score pole
  int dim = 0;           // assigned latent dimension
};

// constant/moving on dim 0, calm/aggressive on dim 1.
std::vector<TagPair> default_tag_pairs();

struct Preset {
  std::string id;
  std::vector<double> v;
};

// Half the presets are uniform on [0,1]^s, half are archetypes perturbed by
// N(0, 0.1) and clipped. Deterministic per seed. Throws on count == 0.
std::vector<Preset> sample_presets(std::size_t count, const SynthManifest& manifest, std::uint64_t seed);

// Per-item descriptor summaries used for tagging.
struct TagScores {
  double mean_flux = 0.0;
  double mean_centroid = 0.0;
  double mean_high_band = 0.0;
};
TagScores tag_scores(const dsp::Descriptors& d);

// Label per item: -1 negative pole, +1 positive pole, 0 untagged.
struct PairLabels {
  TagPair pair;
  std::vector<int> labels;
  std::vector<double> scores;
  bool skipped = false;
};

// Bottom / top ceil(n/4) by score (ties broken by index). A degenerate score
// distribution skips the pair and appends a warning.
PairLabels quartile_labels(const TagPair& pair, const std::vector<double>& scores, std::vector<std::string>* warnings);
std::vector<PairLabels> derive_tags(const std::vector<TagScores>& scores, const std::vector<TagPair>& pairs,
                                    std::vector<std::string>* warnings = nullptr);
// movement score = mean flux; aggression = z(high band) + z(flux * centroid).
std::vector<double> movement_scores(const std::vector<TagScores>& scores);
std::vector<double> aggression_scores(const std::vector<TagScores>& scores);

struct Split {
  std::vector<std::size_t> train, valid, test;
};

// Fold f permutes indices with seed + f and cuts 80/10/10.
Split make_split(std::size_t n, std::uint64_t seed);
std::vector<Split> make_folds(std::size_t n, int k, std::uint64_t seed);

struct Profile {
  std::string name;
  RenderSpec render;
  SpectrogramConfig spectrogram;
  static Profile desk();
  static Profile paper();
  static Profile by_name(const std::string& name);  // throws std::invalid_argument
};

struct BuildOptions {
  std::filesystem::path root;
  std::string manifest = "basic16";
  std::string profile = "desk";
  std::size_t count = 5000;
  int folds = 3;
  std::uint64_t seed = 0;
  bool write_audio = false;
  int jobs = 1;
  std::function<void(const std::string&)> log;
};

// In-memory view of a persisted dataset.
struct Dataset {
  std::filesystem::path root;
  nlohmann::json manifest;  // manifest.json
  const SynthManifest* synth = nullptr;
  Profile profile;
  std::vector<Preset> presets;
  std::vector<Matrix> features;  // raw log-mel, not normalized
  std::vector<PairLabels> tags;
  std::vector<Split> folds;
  std::vector<NormalizationStats> stats;  // per fold, from its train split
  std::string hash;

  std::size_t size() const { return presets.size(); }
  // Copy of item i's features normalized with fold f's train stats.
  Matrix normalized(std::size_t i, int fold) const;
  // Label of item i for pair p (-1, 0, +1).
  int label(std::size_t pair, std::size_t i) const;
};

// Renders, extracts features, tags, splits, computes per-fold stats and
// writes the directory layout. Returns the dataset hash.
std::string build_dataset(const BuildOptions& options);

// Throws IoError / IncompatibleError.
Dataset load_dataset(const std::filesystem::path& root);

struct OodOptions {
  std::filesystem::path dataset_root;  // supplies profile, config and train stats
  std::filesystem::path out;           // defaults to <dataset_root>/ood
  std::size_t count = 200;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> wav_dir;
  int jobs = 1;
  std::function<void(const std::string&)> log;
};

struct OodItem {
  std::string id;
  std::string source;  // "fm" or the WAV file name
  Matrix features;     // raw log-mel
};

struct OodSet {
  nlohmann::json manifest;
  std::vector<OodItem> items;
};

// Unreadable WAVs are skipped with a warning in the manifest.
OodSet build_ood_set(const OodOptions& options);
OodSet load_ood_set(const std::filesystem::path& root);

// Log-mel of a rendered or loaded buffer under the profile; resamples first
// when the rate differs. Throws std::invalid_argument when too short.
Matrix features_for(const synth::AudioBuffer& audio, const Profile& profile);

// Lower-case hex hash of a float matrix's bytes.
std::string matrix_hash(const Matrix& m);

}  // namespace synthflow::dataset
