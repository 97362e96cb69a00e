#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace burst {

// FNV-1a over raw bytes; used for the input digest recorded in run manifests.
inline std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string to_hex(std::uint64_t v);

// Splits [0, n) into contiguous chunks and runs body(begin, end) on each,
// using at most n_threads workers.  n_threads <= 1 runs inline.  The caller
// is responsible for making chunks independent; exceptions propagate from
// whichever chunk threw first.
void parallel_for(std::size_t n, unsigned n_threads,
                  const std::function<void(std::size_t, std::size_t)>& body);

unsigned default_threads();

} // namespace burst
