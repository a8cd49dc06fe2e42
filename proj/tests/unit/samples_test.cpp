#include "encmatch/samples.hpp"

#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>

#include "encmatch/errors.hpp"
#include "encmatch/image_io.hpp"
#include "encmatch/synth.hpp"

namespace encmatch::samples {
namespace {

namespace fs = std::filesystem;

augment::SixChannelSample sample(std::uint64_t id, int label) {
  const auto t = augment::stack(augment::scale_only(synth::scene(8, 6, id)), augment::normalize(synth::scene(8, 6, id + 1)));
  return {t, label, id};
}

TEST(SampleFile, WriteReadRoundTrip) {
  const auto path = fs::temp_directory_path() / "encmatch_samples_rt.bin";
  {
    SampleWriter w(path, 6, 8);
    w.write(sample(3, 1), 0);
    w.write(sample(9, 0), 1);
    w.finish();
    EXPECT_EQ(w.count(), 2u);
  }
  EXPECT_EQ(fs::file_size(path), kHeaderSize + 2 * (16 + 6 * 8 * 6 * 4));
  SampleReader r(path);
  EXPECT_EQ(r.info().count, 2u);
  EXPECT_EQ(r.info().height, 6u);
  EXPECT_EQ(r.info().width, 8u);
  EXPECT_EQ(r.info().channels, 6u);
  const auto a = r.next();
  ASSERT_TRUE(a);
  EXPECT_EQ(a->sample.pair_id, 3u);
  EXPECT_EQ(a->sample.label, 1);
  EXPECT_EQ(a->split, 0u);
  EXPECT_EQ(a->sample.tensor, sample(3, 1).tensor);
  const auto b = r.next();
  ASSERT_TRUE(b);
  EXPECT_EQ(b->split, 1u);
  EXPECT_FALSE(r.next());
  fs::remove(path);
}

TEST(SampleFile, HeaderLayout) {
  const auto path = fs::temp_directory_path() / "encmatch_samples_hdr.bin";
  {
    SampleWriter w(path, 2, 3);
    w.finish();
  }
  const auto bytes = io::read_bytes(path);
  ASSERT_EQ(bytes.size(), kHeaderSize);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "SIX1");
  std::uint32_t fields[6];
  std::memcpy(fields, bytes.data() + 4, sizeof fields);
  EXPECT_EQ(fields[0], 1u);  // version
  EXPECT_EQ(fields[1], 0u);  // count
  EXPECT_EQ(fields[2], 2u);  // height
  EXPECT_EQ(fields[3], 3u);  // width
  EXPECT_EQ(fields[4], 6u);  // channels
  EXPECT_EQ(fields[5], 0u);  // float32
  fs::remove(path);
}

TEST(SampleFile, RejectsShapeMismatchAndTruncation) {
  const auto path = fs::temp_directory_path() / "encmatch_samples_bad.bin";
  {
    SampleWriter w(path, 5, 5);
    EXPECT_THROW(w.write(sample(1, 1), 0), ValidationError);
    w.finish();
  }
  {
    SampleWriter w(path, 6, 8);
    w.write(sample(1, 1), 0);
    w.finish();
  }
  auto bytes = io::read_bytes(path);
  bytes.resize(bytes.size() - 4);
  io::write_bytes(path, bytes);
  EXPECT_THROW(
      {
        SampleReader r(path);
        r.next();
      },
      ValidationError);
  fs::remove(path);
}

}  // namespace
}  // namespace encmatch::samples
