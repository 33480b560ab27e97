#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace synthflow {

// Lower-case hex SHA-256.
std::string sha256_hex(const void* data, std::size_t size);
inline std::string sha256_hex(std::string_view text) { return sha256_hex(text.data(), text.size()); }

}  // namespace synthflow
