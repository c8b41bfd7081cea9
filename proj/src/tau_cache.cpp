#include "rslab/tau_cache.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <iterator>
#include <stdexcept>

#include "rslab/error.hpp"

namespace rslab {

namespace {

constexpr std::array<std::uint8_t, 8> kMagic = {'R', 'S', 'T', 'A', 'U', '1', 0, 0};
constexpr std::size_t kHeaderBytes = 16;
constexpr std::size_t kRecordBytes = 16;

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_u64(std::span<const std::uint8_t> bytes, std::size_t offset) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[offset + i]) << (8 * i);
  return v;
}

}  // namespace

std::vector<std::uint8_t> encode_tau(const TauTable& t) {
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderBytes + kRecordBytes * t.n_max());
  for (std::uint8_t byte : kMagic) out.push_back(byte);
  put_u64(out, t.n_max());
  for (int128 v : t.values()) {
    const auto u = static_cast<unsigned __int128>(v);
    put_u64(out, static_cast<std::uint64_t>(u));
    put_u64(out, static_cast<std::uint64_t>(u >> 64));
  }
  return out;
}

TauTable decode_tau(std::span<const std::uint8_t> bytes) {
  for (std::size_t i = 0; i < kMagic.size(); ++i) {
    if (i >= bytes.size()) throw CorruptCache(i, "tau cache: truncated magic");
    if (bytes[i] != kMagic[i]) throw CorruptCache(i, "tau cache: bad magic");
  }
  if (bytes.size() < kHeaderBytes) throw CorruptCache(bytes.size(), "tau cache: truncated header");
  const std::uint64_t n_max = get_u64(bytes, 8);
  const std::uint64_t available = (bytes.size() - kHeaderBytes) / kRecordBytes;
  if (available < n_max) {
    throw CorruptCache(kHeaderBytes + available * kRecordBytes,
                       "tau cache: truncated after " + std::to_string(available) + " of " +
                           std::to_string(n_max) + " records");
  }
  const std::size_t expected = kHeaderBytes + kRecordBytes * n_max;
  if (bytes.size() != expected) throw CorruptCache(expected, "tau cache: trailing bytes");
  std::vector<int128> tau(n_max);
  for (std::uint64_t n = 0; n < n_max; ++n) {
    const std::size_t off = kHeaderBytes + kRecordBytes * n;
    const unsigned __int128 u = (static_cast<unsigned __int128>(get_u64(bytes, off + 8)) << 64) |
                                get_u64(bytes, off);
    tau[n] = static_cast<int128>(u);
  }
  return TauTable(std::move(tau));
}

void write_tau_cache(const std::filesystem::path& path, const TauTable& t) {
  const auto bytes = encode_tau(t);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("tau cache: cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("tau cache: write failed for " + path.string());
}

TauTable read_tau_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("tau cache: cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_tau(bytes);
}

TauTable cache_roundtrip(const std::filesystem::path& path, const TauTable& t) {
  write_tau_cache(path, t);
  return read_tau_cache(path);
}

}  // namespace rslab
