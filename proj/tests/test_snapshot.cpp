#include <gtest/gtest.h>

#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>

#include "npf/error.hpp"
#include "npf/snapshot.hpp"
#include "test_support.hpp"

using namespace npf;
using npf::testing::random_field;
namespace fs = std::filesystem;

namespace {

template <typename T>
T read_le(const std::vector<std::uint8_t>& bytes, std::size_t offset) {
  T v;
  std::memcpy(&v, bytes.data() + offset, sizeof v);
  static_assert(std::endian::native == std::endian::little);
  return v;
}

fs::path scratch_dir() {
  const auto dir = fs::temp_directory_path() /
                   ("npf_snapshot_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
  fs::create_directories(dir);
  return dir;
}

ErrorCode decode_error(const std::vector<std::uint8_t>& bytes) {
  try {
    decode_snapshot(bytes);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "decode succeeded";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Crc64, XzCheckValue) {
  const char* text = "123456789";
  EXPECT_EQ(crc64(text, 9), 0x995DC9BBDF1939FAull);
  EXPECT_EQ(crc64(text, 0), 0ull);
}

TEST(Snapshot, HeaderLayout) {
  const PeriodicGrid g(2, {8, 4, 1}, {1.0, 0.5, 1.0});
  const Field u = random_field(g, 1);
  const auto bytes = encode_snapshot({u, 2.5});
  ASSERT_EQ(bytes.size(), 64u + 8u * 32u);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "NPFS");
  EXPECT_EQ(read_le<std::uint32_t>(bytes, 4), 1u);
  EXPECT_EQ(read_le<std::uint32_t>(bytes, 8), 2u);
  EXPECT_EQ(read_le<std::uint32_t>(bytes, 12), 8u);
  EXPECT_EQ(read_le<std::uint32_t>(bytes, 16), 4u);
  EXPECT_EQ(read_le<std::uint32_t>(bytes, 20), 1u);
  EXPECT_EQ(read_le<double>(bytes, 24), 1.0);
  EXPECT_EQ(read_le<double>(bytes, 32), 0.5);
  EXPECT_EQ(read_le<double>(bytes, 40), 1.0);
  EXPECT_EQ(read_le<double>(bytes, 48), 2.5);
  EXPECT_EQ(read_le<std::uint64_t>(bytes, 56), crc64(bytes.data() + 64, bytes.size() - 64));
  for (std::size_t i = 0; i < u.size(); ++i) EXPECT_EQ(read_le<double>(bytes, 64 + 8 * i), u[i]);
}

TEST(Snapshot, RoundTripIsBitExact) {
  for (int d = 1; d <= 3; ++d) {
    const auto g = PeriodicGrid::cube(d, 8, 0.75);
    Field u = random_field(g, 10 + d);
    u[1] = -0.0;
    u[2] = std::numeric_limits<double>::denorm_min();
    const auto bytes = encode_snapshot({u, 1.0 / 3.0});
    const Snapshot back = decode_snapshot(bytes);
    EXPECT_EQ(back.time, 1.0 / 3.0);
    EXPECT_EQ(back.field.grid(), g);
    EXPECT_EQ(std::memcmp(back.field.data().data(), u.data().data(), 8 * u.size()), 0);
    EXPECT_EQ(encode_snapshot(back), bytes);
  }
}

TEST(Snapshot, FileRoundTrip) {
  const auto dir = scratch_dir();
  const Field u = random_field(PeriodicGrid::cube(2, 16), 4);
  write_snapshot(dir / "a.npfs", {u, 0.1});
  const Snapshot back = read_snapshot(dir / "a.npfs");
  EXPECT_EQ(back.field, u);
  EXPECT_EQ(back.time, 0.1);
  for (const auto& entry : fs::directory_iterator(dir)) {
    EXPECT_EQ(entry.path().extension(), ".npfs") << "temporary file left behind";
  }
  fs::remove_all(dir);
}

TEST(Snapshot, RefusesNonFinite) {
  Field u(PeriodicGrid::cube(1, 4));
  u[2] = std::numeric_limits<double>::infinity();
  EXPECT_THROW(encode_snapshot({u, 0.0}), Error);
  u[2] = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(encode_snapshot({u, 0.0}), Error);
}

TEST(Snapshot, CorruptPayloadFailsChecksum) {
  auto bytes = encode_snapshot({random_field(PeriodicGrid::cube(2, 4), 2), 0.0});
  bytes[64 + 17] ^= 0x01;
  EXPECT_EQ(decode_error(bytes), ErrorCode::ChecksumMismatch);
}

TEST(Snapshot, MalformedHeaders) {
  const auto good = encode_snapshot({random_field(PeriodicGrid::cube(2, 4), 3), 0.0});
  auto bytes = good;
  bytes[0] = 'X';
  EXPECT_EQ(decode_error(bytes), ErrorCode::FormatError);
  bytes = good;
  bytes[4] = 2;
  EXPECT_EQ(decode_error(bytes), ErrorCode::FormatError);
  bytes = good;
  bytes.pop_back();
  EXPECT_EQ(decode_error(bytes), ErrorCode::FormatError);
  bytes = good;
  bytes[12] = 5;  // odd axis length
  EXPECT_EQ(decode_error(bytes), ErrorCode::FormatError);
  EXPECT_EQ(decode_error(std::vector<std::uint8_t>(10)), ErrorCode::FormatError);
}

TEST(Snapshot, MissingFile) {
  try {
    read_snapshot("/nonexistent/dir/x.npfs");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IoError);
  }
}
