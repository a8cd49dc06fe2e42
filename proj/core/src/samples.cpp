#include "encmatch/samples.hpp"

#include <vector>

#include "encmatch/bytes.hpp"
#include "encmatch/errors.hpp"

namespace encmatch::samples {

namespace {

std::vector<std::uint8_t> header_bytes(std::uint32_t count, std::uint32_t h, std::uint32_t w, std::uint32_t c) {
  ByteWriter bw;
  bw.put_bytes("SIX1");
  bw.put_u32(1);
  bw.put_u32(count);
  bw.put_u32(h);
  bw.put_u32(w);
  bw.put_u32(c);
  bw.put_u32(kDtypeFloat32);
  return bw.take();
}

}  // namespace

SampleWriter::SampleWriter(const std::filesystem::path& path, std::uint32_t height, std::uint32_t width,
                           std::uint32_t channels)
    : path_(path), height_(height), width_(width), channels_(channels) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  out_.open(path, std::ios::binary | std::ios::trunc);
  if (!out_) throw IoError("cannot open '" + path.string() + "' for writing");
  const auto h = header_bytes(0, height, width, channels);
  out_.write(reinterpret_cast<const char*>(h.data()), static_cast<std::streamsize>(h.size()));
}

SampleWriter::~SampleWriter() {
  if (!finished_) {
    try {
      finish();
    } catch (...) {
    }
  }
}

void SampleWriter::write(const augment::SixChannelSample& sample, std::uint32_t split) {
  const auto& t = sample.tensor;
  if (t.height != height_ || t.width != width_ || t.channels != channels_) {
    throw ValidationError("sample tensor shape does not match the sample set");
  }
  ByteWriter bw;
  bw.buffer().reserve(16 + t.values.size() * 4);
  bw.put_u64(sample.pair_id);
  bw.put_i32(sample.label);
  bw.put_u32(split);
  for (const float v : t.values) bw.put_f32(v);
  const auto& buf = bw.buffer();
  out_.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!out_) throw IoError("write failed for '" + path_.string() + "'");
  ++count_;
}

void SampleWriter::finish() {
  if (finished_) return;
  finished_ = true;
  const auto h = header_bytes(count_, height_, width_, channels_);
  out_.seekp(0);
  out_.write(reinterpret_cast<const char*>(h.data()), static_cast<std::streamsize>(h.size()));
  out_.close();
  if (!out_) throw IoError("finalizing '" + path_.string() + "' failed");
}

SampleReader::SampleReader(const std::filesystem::path& path) : in_(path, std::ios::binary) {
  if (!in_) throw IoError("cannot open '" + path.string() + "' for reading");
  std::vector<std::uint8_t> h(kHeaderSize);
  in_.read(reinterpret_cast<char*>(h.data()), static_cast<std::streamsize>(h.size()));
  if (!in_) throw ValidationError("sample set header truncated");
  ByteReader r(h);
  if (r.get_bytes(4) != "SIX1") throw ValidationError("sample set: bad magic");
  if (r.get_u32() != 1) throw ValidationError("sample set: unsupported version");
  info_.count = r.get_u32();
  info_.height = r.get_u32();
  info_.width = r.get_u32();
  info_.channels = r.get_u32();
  if (r.get_u32() != kDtypeFloat32) throw ValidationError("sample set: unsupported dtype");
}

std::optional<SampleRecord> SampleReader::next() {
  if (read_ >= info_.count) return std::nullopt;
  std::vector<std::uint8_t> buf(info_.record_bytes());
  in_.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!in_) throw ValidationError("sample set truncated");
  ByteReader r(buf);
  SampleRecord rec;
  rec.sample.pair_id = r.get_u64();
  rec.sample.label = r.get_i32();
  rec.split = r.get_u32();
  auto& t = rec.sample.tensor;
  t.height = info_.height;
  t.width = info_.width;
  t.channels = info_.channels;
  t.values.resize(std::size_t{info_.height} * info_.width * info_.channels);
  for (auto& v : t.values) v = r.get_f32();
  ++read_;
  return rec;
}

}  // namespace encmatch::samples
