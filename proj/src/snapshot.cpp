#include "npf/snapshot.hpp"

#include <bit>
#include <boost/crc.hpp>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <system_error>

#include "npf/error.hpp"

namespace npf {
namespace {

static_assert(std::endian::native == std::endian::little,
              "snapshot encoding assumes a little-endian host");

using Crc64Xz = boost::crc_optimal<64, 0x42F0E1EBA9EA3693ULL, 0xFFFFFFFFFFFFFFFFULL,
                                   0xFFFFFFFFFFFFFFFFULL, true, true>;

template <typename T>
void put(std::vector<std::uint8_t>& out, T value) {
  const auto* p = reinterpret_cast<const std::uint8_t*>(&value);
  out.insert(out.end(), p, p + sizeof(T));
}

template <typename T>
T get(const std::vector<std::uint8_t>& in, std::size_t offset) {
  T value;
  std::memcpy(&value, in.data() + offset, sizeof(T));
  return value;
}

}  // namespace

std::uint64_t crc64(const void* data, std::size_t bytes) noexcept {
  Crc64Xz crc;
  crc.process_bytes(data, bytes);
  return crc.checksum();
}

std::vector<std::uint8_t> encode_snapshot(const Snapshot& snap) {
  const Field& f = snap.field;
  if (!f.all_finite()) throw Error(ErrorCode::FormatError, "refusing to write non-finite values");
  const PeriodicGrid& g = f.grid();
  std::vector<std::uint8_t> out;
  out.reserve(Snapshot::kHeaderBytes + 8 * f.size());
  out.insert(out.end(), {'N', 'P', 'F', 'S'});
  put<std::uint32_t>(out, Snapshot::kVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.dim()));
  for (int a = 0; a < 3; ++a) put<std::uint32_t>(out, static_cast<std::uint32_t>(g.size(a)));
  for (int a = 0; a < 3; ++a) put<double>(out, g.half_extent(a));
  put<double>(out, snap.time);
  put<std::uint64_t>(out, crc64(f.data().data(), 8 * f.size()));
  const auto* p = reinterpret_cast<const std::uint8_t*>(f.data().data());
  out.insert(out.end(), p, p + 8 * f.size());
  return out;
}

Snapshot decode_snapshot(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < Snapshot::kHeaderBytes || std::memcmp(bytes.data(), "NPFS", 4) != 0) {
    throw Error(ErrorCode::FormatError, "missing NPFS header");
  }
  const auto version = get<std::uint32_t>(bytes, 4);
  if (version != Snapshot::kVersion) {
    throw Error(ErrorCode::FormatError, "unsupported snapshot version " + std::to_string(version));
  }
  const auto dim = static_cast<int>(get<std::uint32_t>(bytes, 8));
  std::array<std::size_t, 3> sizes{};
  std::array<double, 3> extents{};
  for (int a = 0; a < 3; ++a) {
    sizes[a] = get<std::uint32_t>(bytes, 12 + 4 * a);
    extents[a] = get<double>(bytes, 24 + 8 * a);
  }
  if (dim < 1 || dim > 3) throw Error(ErrorCode::FormatError, "bad dimension in snapshot");
  for (int a = dim; a < 3; ++a) {
    if (sizes[a] != 1) throw Error(ErrorCode::FormatError, "unused axis with size != 1");
  }
  PeriodicGrid grid;
  try {
    grid = PeriodicGrid(dim, sizes, extents);
  } catch (const Error& e) {
    throw Error(ErrorCode::FormatError, std::string("invalid grid in header: ") + e.what());
  }
  const std::size_t payload = 8 * grid.num_points();
  if (bytes.size() != Snapshot::kHeaderBytes + payload) {
    throw Error(ErrorCode::FormatError, "payload length does not match header");
  }
  const std::uint8_t* data = bytes.data() + Snapshot::kHeaderBytes;
  if (crc64(data, payload) != get<std::uint64_t>(bytes, 56)) {
    throw Error(ErrorCode::ChecksumMismatch, "payload CRC-64 does not verify");
  }
  std::vector<double> values(grid.num_points());
  std::memcpy(values.data(), data, payload);
  return Snapshot{Field(grid, std::move(values)), get<double>(bytes, 48)};
}

void write_text_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error(ErrorCode::IoError, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::IoError, "rename to " + path.string() + ": " + ec.message());
}

void write_snapshot(const std::filesystem::path& path, const Snapshot& snap) {
  const auto bytes = encode_snapshot(snap);
  write_text_atomic(path, std::string(bytes.begin(), bytes.end()));
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_snapshot(bytes);
}

}  // namespace npf
