#include "clawgate/sha256.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace clawgate {

Digest sha256(std::string_view data) {
    Digest out{};
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) ||
        len != out.size()) {
        throw std::runtime_error("sha256 failed");
    }
    return out;
}

std::string toHex(const Digest& d) {
    static const char* k = "0123456789abcdef";
    std::string s;
    s.reserve(64);
    for (auto b : d) {
        s.push_back(k[b >> 4]);
        s.push_back(k[b & 0xf]);
    }
    return s;
}

static int nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("bad hex digit");
}

Digest fromHex(std::string_view hex) {
    if (hex.size() != 64) throw std::invalid_argument("digest hex must be 64 chars");
    Digest d{};
    for (size_t i = 0; i < 32; ++i) {
        d[i] = static_cast<std::uint8_t>((nibble(hex[2 * i]) << 4) | nibble(hex[2 * i + 1]));
    }
    return d;
}

}  // namespace clawgate
