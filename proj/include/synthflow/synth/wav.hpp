#pragma once

#include "synthflow/synth/synth.hpp"

#include <filesystem>
#include <span>
#include <string>

namespace synthflow::synth {

// PCM 16-bit mono. Throws IoError.
void write_wav(const std::filesystem::path& path, const AudioBuffer& audio);
std::vector<std::uint8_t> encode_wav(const AudioBuffer& audio);

// Reads PCM 8/16/24/32-bit or IEEE float32 WAV; channels are averaged to
// mono. Throws IoError for unreadable or unsupported files.
AudioBuffer read_wav(const std::filesystem::path& path);
// Same, from bytes in memory; `source` names the input in error messages.
AudioBuffer decode_wav(std::span<const std::uint8_t> bytes, const std::string& source = "WAV");

}  // namespace synthflow::synth
