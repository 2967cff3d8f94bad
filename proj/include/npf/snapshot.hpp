#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "npf/grid.hpp"

namespace npf {

/// On-disk field state, little-endian throughout:
///
///   offset  size  content
///        0     4  magic "NPFS"
///        4     4  u32 version (= 1)
///        8     4  u32 dimension d
///       12    12  u32 N per axis (unused axes = 1)
///       24    24  f64 half-extent per axis (unused axes = 1.0)
///       48     8  f64 time
///       56     8  u64 CRC-64/XZ of the payload bytes
///       64   8*P  f64 payload, row-major, last axis fastest
struct Snapshot {
  static constexpr std::uint32_t kVersion = 1;
  static constexpr std::size_t kHeaderBytes = 64;

  Field field;
  double time = 0.0;
};

/// CRC-64/XZ (reflected ECMA-182 polynomial, init and xorout all ones).
std::uint64_t crc64(const void* data, std::size_t bytes) noexcept;

std::vector<std::uint8_t> encode_snapshot(const Snapshot& snap);
/// Throws FormatError or ChecksumMismatch.
Snapshot decode_snapshot(const std::vector<std::uint8_t>& bytes);

/// Writes atomically (temporary file + rename). Refuses non-finite payloads.
void write_snapshot(const std::filesystem::path& path, const Snapshot& snap);
Snapshot read_snapshot(const std::filesystem::path& path);

/// Atomically replaces `path` with `contents`.
void write_text_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace npf
