#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace synthflow::synth {

enum class Mapping { linear, exponential };
enum class Target { osc, env, filter, lfo, noise, fx };

std::string to_string(Mapping m);
std::string to_string(Target t);

// One knob: normalized [0,1] <-> physical [min, max].
struct ParamDescriptor {
  std::string name;
  Target target;
  Mapping mapping;
  double min;
  double max;
  double default_value;  // normalized
  std::string unit;

  double to_physical(double v) const;
};

// The engine has 32 physical parameters. A manifest exposes an ordered
// subset; the rest stay at their defaults.
struct SynthManifest {
  std::string name;
  std::vector<ParamDescriptor> params;

  std::size_t size() const { return params.size(); }
  std::size_t index_of(const std::string& param) const;  // throws std::out_of_range
  std::vector<double> defaults() const;
  // Stable content hash (hex) over names, ranges and mappings.
  std::string hash() const;

  static const SynthManifest& basic16();
  static const SynthManifest& extended32();
  static const SynthManifest& by_name(const std::string& name);  // throws std::invalid_argument
};

// Every engine parameter, in engine order.
const std::vector<ParamDescriptor>& engine_parameters();

struct RenderSpec {
  int pitch = 60;
  double velocity = 0.8;
  double note_on = 0.75;
  double total = 1.0;
  int sample_rate = 16000;

  static RenderSpec desk();
  static RenderSpec paper();
  std::size_t samples() const;
  void validate() const;  // throws std::invalid_argument
};

struct AudioBuffer {
  std::vector<float> samples;
  int sample_rate = 16000;
};

// Deterministic subtractive voice. Throws std::invalid_argument when v does
// not match the manifest length or leaves [0,1].
AudioBuffer render(const SynthManifest& manifest, std::span<const double> v, const RenderSpec& spec);

// Hand-written starting points for preset sampling, one row per archetype,
// in manifest order.
std::vector<std::vector<double>> archetypes(const SynthManifest& manifest);

// Two-operator FM voice used for out-of-domain material. All fields are
// normalized to [0,1].
struct FmParams {
  double carrier_ratio = 0.25;  // selects 0.5, 1, 2, 3
  double mod_ratio = 0.5;       // 0.5 .. 8, exponential
  double mod_index = 0.3;       // 0 .. 10, linear
  double index_decay = 0.5;     // modulation envelope decay, 0.02 .. 2 s
  double attack = 0.1;
  double decay = 0.5;
  double sustain = 0.6;
  double release = 0.3;

  static constexpr std::size_t kCount = 8;
  std::vector<double> values() const;
  static FmParams from_values(std::span<const double> v);
  static FmParams random(std::mt19937_64& rng);
  double carrier_multiple() const;
  double modulation_index() const;
};

AudioBuffer render_ood(const FmParams& params, const RenderSpec& spec);

}  // namespace synthflow::synth
