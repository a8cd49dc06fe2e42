#include "encmatch/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "encmatch/bfv/blob.hpp"
#include "encmatch/bfv/image_codec.hpp"
#include "encmatch/errors.hpp"
#include "encmatch/image_io.hpp"
#include "encmatch/rng.hpp"
#include "encmatch/synth.hpp"

namespace encmatch::dataset {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kKeyStream = 0x6b657973ULL;        // "keys"
constexpr std::uint64_t kOriginalStream = 0x6f726967ULL;   // "orig"
constexpr std::uint64_t kEncodeStream = 0x656e63ULL;       // "enc"
constexpr std::uint64_t kNonMatchStream = 0x6e6f6eULL;     // "non"
constexpr std::uint64_t kSplitStream = 0x73706cULL;        // "spl"

constexpr std::string_view kManifestMagic = "# encmatch-manifest v1";
constexpr std::string_view kColumns = "pair_id,subtask,original_path,encoded_path,label,split";

// Runs fn(i) for i in [0, count) on up to `threads` workers; rethrows the
// first failure.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::mutex mu;
  std::exception_ptr failure;
  std::size_t next = 0;
  auto worker = [&] {
    while (true) {
      std::size_t i;
      {
        std::lock_guard lock(mu);
        if (failure || next >= count) return;
        i = next++;
      }
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::string numbered(std::string_view prefix, std::size_t i, std::string_view ext) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%06zu", i);
  return std::string(prefix) + buf + std::string(ext);
}

void check_subtask(int subtask) {
  if (subtask < 1 || subtask > 3) throw ValidationError("subtask must be 1, 2 or 3");
}

}  // namespace

std::string_view split_name(Split s) { return s == Split::Train ? "train" : "valid"; }

ManifestCounts PairManifest::counts() const {
  ManifestCounts c;
  for (const auto& r : records) {
    const bool match = r.label == Label::Match;
    if (r.split == Split::Train) (match ? c.train_match : c.train_nonmatch)++;
    else (match ? c.valid_match : c.valid_nonmatch)++;
  }
  return c;
}

std::string EncoderConfig::description() const {
  std::ostringstream os;
  switch (subtask) {
    case 1:
      os << "tiled:" << key.to_string();
      if (tiling.per_tile_seed) os << ";per_tile_seed=" << *tiling.per_tile_seed;
      break;
    case 2:
      os << "fullframe:" << key.to_string();
      break;
    default:
      os << "bfv:n=" << bfv.ring_dimension << ",q=" << bfv.ciphertext_modulus << ",t=" << bfv.plaintext_modulus
         << ",T=" << bfv.relin_base;
      break;
  }
  return os.str();
}

void EncoderConfig::validate() const {
  check_subtask(subtask);
  if (subtask == 3) {
    bfv.validate();
    return;
  }
  key.validate();
  if (subtask == 1 && pipeline::kFrameSide % key.grid_size != 0) {
    throw ValidationError("tile size must divide 512");
  }
  if (subtask == 2 && key.grid_size != pipeline::kFrameSide) {
    throw ValidationError("full-frame key must have N = 512");
  }
}

EncoderConfig default_encoder(int subtask) {
  check_subtask(subtask);
  EncoderConfig c;
  c.subtask = subtask;
  if (subtask == 2) c.key = {512, 1, 1, 17};
  return c;
}

struct Encoder::Bfv {
  bfv::BfvContext context;
  bfv::KeyTriple keys;
};

Encoder::Encoder(const EncoderConfig& config, std::uint64_t master_seed) : config_(config) {
  config_.validate();
  if (config_.subtask == 3) {
    bfv::BfvContext ctx(config_.bfv);
    auto keys = bfv::keygen(ctx, derive_seed(master_seed, kKeyStream));
    bfv_ = std::make_unique<Bfv>(Bfv{std::move(ctx), std::move(keys)});
  }
}

Encoder::~Encoder() = default;
Encoder::Encoder(Encoder&&) noexcept = default;
Encoder& Encoder::operator=(Encoder&&) noexcept = default;

RasterImage Encoder::prepare(const RasterImage& raw) const {
  if (config_.subtask == 3) return pipeline::prepare_face_crop(raw, pipeline::center_square_box(raw));
  return pipeline::normalize_geometry(raw, pipeline::kFrameSide);
}

std::vector<std::uint8_t> Encoder::encode(const RasterImage& prepared, std::uint64_t item_seed) const {
  switch (config_.subtask) {
    case 1: {
      return io::encode_png(pipeline::encode_tiled(prepared, config_.key, config_.tiling));
    }
    case 2:
      return io::encode_png(pipeline::encode_fullframe(prepared, config_.key));
    default:
      return bfv::encrypt_image(bfv_->context, bfv_->keys.pub, prepared, item_seed);
  }
}

std::string_view Encoder::extension() const noexcept { return config_.subtask == 3 ? ".bin" : ".png"; }

const bfv::BfvContext* Encoder::bfv_context() const noexcept { return bfv_ ? &bfv_->context : nullptr; }
const bfv::KeyTriple* Encoder::bfv_keys() const noexcept { return bfv_ ? &bfv_->keys : nullptr; }

fs::path subtask_dir(const fs::path& root, int subtask) { return root / std::to_string(subtask); }

std::vector<std::string> generate_originals(const fs::path& dir, const Encoder& encoder, std::size_t count,
                                            std::uint64_t seed, const std::optional<fs::path>& source_dir,
                                            unsigned threads) {
  std::vector<fs::path> sources;
  if (source_dir) {
    if (!fs::is_directory(*source_dir)) throw IoError("source folder '" + source_dir->string() + "' not found");
    for (const auto& entry : fs::directory_iterator(*source_dir)) {
      auto ext = entry.path().extension().string();
      std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
      if (entry.is_regular_file() && (ext == ".png" || ext == ".ppm")) sources.push_back(entry.path());
    }
    std::sort(sources.begin(), sources.end());
    if (sources.size() < count) {
      throw ValidationError("source folder holds " + std::to_string(sources.size()) + " images, need " +
                            std::to_string(count));
    }
  }

  static constexpr std::size_t kSceneSizes[][2] = {{512, 512}, {640, 480}, {480, 640}, {600, 600}, {800, 600}};
  static constexpr std::size_t kFaceSizes[][2] = {{160, 120}, {120, 160}, {128, 128}, {200, 150}};

  std::vector<std::string> paths(count);
  fs::create_directories(dir / "originals");
  parallel_for(count, threads, [&](std::size_t i) {
    RasterImage raw;
    if (source_dir) {
      raw = io::read_image(sources[i]);
    } else {
      const std::uint64_t item_seed = derive_seed(derive_seed(seed, kOriginalStream), i);
      Rng rng(item_seed);
      if (encoder.config().subtask == 3) {
        const auto* sz = kFaceSizes[rng.uniform_below(std::size(kFaceSizes))];
        raw = synth::face(sz[0], sz[1], rng.next());
      } else {
        const auto* sz = kSceneSizes[rng.uniform_below(std::size(kSceneSizes))];
        raw = synth::scene(sz[0], sz[1], rng.next());
      }
    }
    paths[i] = "originals/" + numbered("orig_", i, ".png");
    io::write_image(dir / paths[i], encoder.prepare(raw));
  });
  return paths;
}

std::vector<PairRecord> build_matching(const fs::path& dir, std::span<const std::string> originals,
                                       const Encoder& encoder, std::uint64_t seed, unsigned threads) {
  std::vector<PairRecord> records(originals.size());
  fs::create_directories(dir / "encoded");
  parallel_for(originals.size(), threads, [&](std::size_t i) {
    PairRecord& r = records[i];
    r.pair_id = i;
    r.subtask = encoder.config().subtask;
    r.original_path = originals[i];
    r.encoded_path = "encoded/" + numbered("enc_", i, encoder.extension());
    r.label = Label::Match;
    try {
      const RasterImage original = io::read_image(dir / r.original_path);
      const auto bytes = encoder.encode(original, derive_seed(derive_seed(seed, kEncodeStream), i));
      io::write_bytes(dir / r.encoded_path, bytes);
    } catch (const Error& e) {
      throw ValidationError("encoding '" + r.original_path + "' failed: " + e.what());
    }
  });
  return records;
}

std::vector<PairRecord> build_nonmatching(std::span<const PairRecord> matching, std::uint64_t seed,
                                          NonMatchMode mode) {
  const std::size_t n = matching.size();
  if (n < 2) throw ValidationError("non-matching pairs need at least 2 originals");

  std::vector<std::size_t> partner(n);
  if (mode == NonMatchMode::WithReplacement) {
    for (std::size_t i = 0; i < n; ++i) {
      Rng rng(derive_seed(derive_seed(seed, kNonMatchStream), i));
      std::size_t j = rng.uniform_below(n - 1);
      if (j >= i) ++j;
      partner[i] = j;
    }
  } else {
    Rng rng(derive_seed(seed, kNonMatchStream));
    for (std::size_t i = 0; i < n; ++i) partner[i] = i;
    // Rejection sampling gives a uniform derangement; ~e attempts expected.
    while (true) {
      rng.shuffle(std::span<std::size_t>(partner));
      bool fixed_point = false;
      for (std::size_t i = 0; i < n && !fixed_point; ++i) fixed_point = partner[i] == i;
      if (!fixed_point) break;
    }
  }

  std::uint64_t next_id = 0;
  for (const auto& m : matching) next_id = std::max(next_id, m.pair_id + 1);
  std::vector<PairRecord> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = matching[i];
    out[i].pair_id = next_id + i;
    out[i].encoded_path = matching[partner[i]].encoded_path;
    out[i].label = Label::NonMatch;
  }
  return out;
}

PairManifest split(PairManifest manifest, double ratio, std::uint64_t seed) {
  if (!(ratio >= 0.0 && ratio <= 1.0)) throw ValidationError("split ratio must be in [0, 1]");
  for (const Label label : {Label::Match, Label::NonMatch}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < manifest.records.size(); ++i) {
      if (manifest.records[i].label == label) members.push_back(i);
    }
    Rng rng(derive_seed(derive_seed(seed, kSplitStream), static_cast<std::uint64_t>(label)));
    rng.shuffle(std::span<std::size_t>(members));
    const auto train = static_cast<std::size_t>(std::floor(ratio * static_cast<double>(members.size()) + 1e-9));
    for (std::size_t k = 0; k < members.size(); ++k) {
      manifest.records[members[k]].split = k < train ? Split::Train : Split::Valid;
    }
  }
  return manifest;
}

PairManifest build_dataset(const fs::path& root, const BuildOptions& options) {
  if (options.count < 2) throw ValidationError("a dataset needs at least 2 originals");
  const Encoder encoder(options.encoder, options.seed);
  const int subtask = options.encoder.subtask;
  const fs::path dir = subtask_dir(root, subtask);
  fs::create_directories(dir);

  const auto originals =
      generate_originals(dir, encoder, options.count, options.seed, options.source_dir, options.threads);
  auto matching = build_matching(dir, originals, encoder, options.seed, options.threads);
  auto nonmatching = build_nonmatching(matching, options.seed, options.nonmatch);

  PairManifest manifest;
  manifest.subtask = subtask;
  manifest.master_seed = options.seed;
  manifest.encoder = options.encoder.description();
  manifest.records = std::move(matching);
  manifest.records.insert(manifest.records.end(), nonmatching.begin(), nonmatching.end());
  manifest = split(std::move(manifest), options.train_ratio, options.seed);

  if (subtask == 3) {
    io::write_bytes(dir / "keys.bin", bfv::serialize_keys(options.encoder.bfv, *encoder.bfv_keys()));
  }
  write_manifest(dir / "manifest.csv", manifest);
  return manifest;
}

std::string format_manifest(const PairManifest& manifest) {
  std::ostringstream os;
  os << kManifestMagic << " subtask=" << manifest.subtask << " master_seed=" << manifest.master_seed
     << " encoder=" << manifest.encoder << "\n"
     << kColumns << "\n";
  for (const auto& r : manifest.records) {
    for (const auto* p : {&r.original_path, &r.encoded_path}) {
      if (p->find_first_of(",\n\r") != std::string::npos) {
        throw ValidationError("manifest paths may not contain commas or newlines: '" + *p + "'");
      }
    }
    os << r.pair_id << ',' << r.subtask << ',' << r.original_path << ',' << r.encoded_path << ','
       << static_cast<int>(r.label) << ',' << split_name(r.split) << "\n";
  }
  return os.str();
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto p = line.find(sep);
    out.push_back(line.substr(0, p));
    if (p == std::string_view::npos) break;
    line = line.substr(p + 1);
  }
  return out;
}

std::uint64_t to_u64(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) {
    throw ValidationError("manifest: bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

PairManifest parse_manifest(std::string_view text) {
  auto lines = split_fields(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.size() < 2 || !lines[0].starts_with(kManifestMagic)) {
    throw ValidationError("manifest: missing '" + std::string(kManifestMagic) + "' header");
  }
  if (lines[1] != kColumns) throw ValidationError("manifest: unexpected column header");

  PairManifest m;
  bool have_subtask = false;
  bool have_seed = false;
  for (const auto token : split_fields(lines[0].substr(kManifestMagic.size()), ' ')) {
    if (token.empty()) continue;
    const auto eq = token.find('=');
    if (eq == std::string_view::npos) throw ValidationError("manifest: bad header token");
    const auto key = token.substr(0, eq);
    const auto value = token.substr(eq + 1);
    if (key == "subtask") {
      m.subtask = static_cast<int>(to_u64(value, "subtask"));
      have_subtask = true;
    } else if (key == "master_seed") {
      m.master_seed = to_u64(value, "master_seed");
      have_seed = true;
    } else if (key == "encoder") {
      m.encoder = std::string(value);
    }
  }
  if (!have_subtask || !have_seed) throw ValidationError("manifest: header lacks subtask or master_seed");
  check_subtask(m.subtask);

  std::set<std::uint64_t> ids;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const auto f = split_fields(lines[i], ',');
    if (f.size() != 6) throw ValidationError("manifest line " + std::to_string(i + 1) + ": expected 6 fields");
    PairRecord r;
    r.pair_id = to_u64(f[0], "pair_id");
    if (!ids.insert(r.pair_id).second) {
      throw ValidationError("manifest line " + std::to_string(i + 1) + ": duplicate pair_id " + std::string(f[0]));
    }
    r.subtask = static_cast<int>(to_u64(f[1], "subtask"));
    r.original_path = std::string(f[2]);
    r.encoded_path = std::string(f[3]);
    if (f[4] == "1") r.label = Label::Match;
    else if (f[4] == "0") r.label = Label::NonMatch;
    else throw ValidationError("manifest line " + std::to_string(i + 1) + ": label must be 0 or 1");
    if (f[5] == "train") r.split = Split::Train;
    else if (f[5] == "valid") r.split = Split::Valid;
    else throw ValidationError("manifest line " + std::to_string(i + 1) + ": split must be train or valid");
    m.records.push_back(std::move(r));
  }
  return m;
}

void write_manifest(const fs::path& path, const PairManifest& manifest) {
  const std::string text = format_manifest(manifest);
  io::write_bytes(path, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

PairManifest read_manifest(const fs::path& path) {
  const auto bytes = io::read_bytes(path);
  return parse_manifest({reinterpret_cast<const char*>(bytes.data()), bytes.size()});
}

std::uint64_t directory_fingerprint(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(fs::relative(entry.path(), dir));
  }
  std::sort(files.begin(), files.end());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& rel : files) {
    const std::string name = rel.generic_string();
    h = fnv1a64({reinterpret_cast<const std::uint8_t*>(name.data()), name.size()}, h);
    h = fnv1a64(io::read_bytes(dir / rel), h);
  }
  return h;
}

}  // namespace encmatch::dataset
