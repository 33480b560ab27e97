#pragma once

#include "synthflow/synth/synth.hpp"

#include <Eigen/Core>

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace synthflow::dsp {

using synth::AudioBuffer;
using Matrix = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatrixD = Eigen::MatrixXd;

struct SpectrogramConfig {
  int fft = 1024;
  int hop = 512;
  int mels = 64;
  double fmin = 30.0;
  double fmax = 7600.0;
  int sample_rate = 16000;
  double scale = 1.0;  // log1p(magnitude * scale)

  static SpectrogramConfig desk();
  static SpectrogramConfig paper();
  void validate() const;  // throws std::invalid_argument
  // floor((n - fft) / hop) + 1; throws std::invalid_argument when n < fft.
  std::size_t frames(std::size_t n) const;
  int bins() const { return fft / 2 + 1; }
  std::string hash() const;
};

// Log-amplitude mel matrix [mels x frames].
struct MelSpectrogram {
  Matrix data;
  SpectrogramConfig config;
  Eigen::Index mels() const { return data.rows(); }
  Eigen::Index frames() const { return data.cols(); }
};

double hz_to_mel(double hz);
double mel_to_hz(double mel);

// Periodic Hann window of length n.
std::vector<double> hann(int n);
// Triangular filters with unit peak on the mel scale, [mels x bins].
MatrixD mel_filterbank(const SpectrogramConfig& cfg);
// Center frequency (Hz) of each mel band.
std::vector<double> mel_centers(const SpectrogramConfig& cfg);

// |STFT| with a Hann window and no padding, [bins x frames].
MatrixD stft_magnitude(std::span<const float> audio, const SpectrogramConfig& cfg);

// Mel magnitudes before compression, [mels x frames].
MatrixD mel_magnitude(std::span<const float> audio, const SpectrogramConfig& cfg);

// Throws std::invalid_argument when the audio is shorter than one frame or
// its sample rate differs from the config.
MelSpectrogram mel_spectrogram(const AudioBuffer& audio, const SpectrogramConfig& cfg);

// Undo the log1p compression: magnitude = expm1(x) / scale.
MatrixD to_magnitude(const Matrix& log_mel, double scale = 1.0);

// ||ref - est||_F / ||ref||_F on magnitudes. Throws on a shape mismatch or an
// all-zero reference.
double spectral_convergence(const MatrixD& ref, const MatrixD& est);
// Same, taking log-mel matrices and undoing the compression first.
double spectral_convergence_log(const Matrix& ref, const Matrix& est, double scale = 1.0);
// Mean squared difference over log-mel entries.
double audio_mse(const Matrix& ref, const Matrix& est);

struct Descriptors {
  std::vector<double> centroid;  // Hz, 0 for silent frames
  std::vector<double> rms;       // per analysis frame
  std::vector<double> flux;      // L2 change of the L2-normalized magnitude spectrum; 0 at frame 0
  std::vector<double> high_band; // fraction of spectral energy above the high-band edge
};

Descriptors descriptors(const AudioBuffer& audio, const SpectrogramConfig& cfg, double high_band_hz = 3000.0);

double mean(const std::vector<double>& xs);

// Windowed-sinc polyphase resampling to `target_rate`.
AudioBuffer resample(const AudioBuffer& audio, int target_rate);

// Corpus-wide scalar normalization.
struct NormalizationStats {
  double mean = 0.0;
  double std = 1.0;

  // Throws std::invalid_argument when the set is empty or constant.
  static NormalizationStats compute(const std::vector<const Matrix*>& items);
  void apply(Matrix& m) const;
  void invert(Matrix& m) const;
  std::string hash() const;
};

// Raw little-endian float32 payload plus "<path>.json" sidecar with shape
// and config hash. Throws IoError.
void save_matrix(const std::filesystem::path& path, const Matrix& m, const std::string& config_hash);
Matrix load_matrix(const std::filesystem::path& path, std::string* config_hash = nullptr);

}  // namespace synthflow::dsp
