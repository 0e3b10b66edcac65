#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace clawgate {

using Digest = std::array<std::uint8_t, 32>;

Digest sha256(std::string_view data);

std::string toHex(const Digest& d);
Digest fromHex(std::string_view hex);

}  // namespace clawgate
