#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace hiss {

/// FNV-1a over the canonical config string; stable across platforms.
inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string to_hex(std::uint64_t value);

}  // namespace hiss
