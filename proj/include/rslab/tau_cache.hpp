#pragma once

// On-disk tau table:
//   bytes 0..7   magic "RSTAU1\0\0"
//   bytes 8..15  n_max, unsigned 64-bit little-endian
//   then n_max records of 16 bytes: the 128-bit two's-complement tau(n) as two
//   little-endian 64-bit words, low word first.

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "rslab/coeffs.hpp"

namespace rslab {

std::vector<std::uint8_t> encode_tau(const TauTable& t);
/// Throws CorruptCache naming the offending byte offset.
TauTable decode_tau(std::span<const std::uint8_t> bytes);

void write_tau_cache(const std::filesystem::path& path, const TauTable& t);
TauTable read_tau_cache(const std::filesystem::path& path);

/// Write then read back.
TauTable cache_roundtrip(const std::filesystem::path& path, const TauTable& t);

}  // namespace rslab
