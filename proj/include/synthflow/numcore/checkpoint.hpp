#pragma once

#include "synthflow/numcore/tensor.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace synthflow::numcore {

// Single-file container: "SYNF1", u64 LE manifest length, JSON manifest,
// then raw little-endian payloads at the manifest's byte offsets.
template <typename Scalar>
class Checkpoint {
 public:
  static constexpr const char* kMagic = "SYNF1";

  nlohmann::json config = nlohmann::json::object();
  std::uint64_t seed = 0;

  void put(const std::string& name, const Tensor<Scalar>& tensor);
  bool contains(const std::string& name) const { return tensors_.count(name) != 0; }
  // Throws IncompatibleError when missing.
  const Tensor<Scalar>& get(const std::string& name) const;
  std::vector<std::string> names() const;
  std::size_t size() const { return tensors_.size(); }

  // Throws IoError on filesystem failures.
  void save(const std::filesystem::path& path) const;
  // Throws IoError when unreadable or truncated, IncompatibleError on a bad
  // magic or malformed manifest. Payloads stored in the other float width
  // are converted.
  static Checkpoint load(const std::filesystem::path& path);

 private:
  std::map<std::string, Tensor<Scalar>> tensors_;
};

}  // namespace synthflow::numcore
