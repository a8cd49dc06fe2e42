#pragma once

// Challenge-style pair corpora.
//
// Layout under a dataset root:
//   <root>/<subtask>/originals/orig_NNNNNN.png
//   <root>/<subtask>/encoded/enc_NNNNNN.{png,bin}
//   <root>/<subtask>/keys.bin            (subtask 3 only)
//   <root>/<subtask>/manifest.csv
//
// Every random choice is drawn from a seed derived from (master seed, item),
// so output is identical regardless of thread count.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "encmatch/bfv/scheme.hpp"
#include "encmatch/catmap.hpp"
#include "encmatch/image.hpp"
#include "encmatch/pipeline.hpp"

namespace encmatch::dataset {

enum class Label : int { NonMatch = 0, Match = 1 };
enum class Split : std::uint8_t { Train = 0, Valid = 1 };

std::string_view split_name(Split s);

struct PairRecord {
  std::uint64_t pair_id = 0;
  int subtask = 1;
  std::string original_path;  ///< relative to the subtask directory
  std::string encoded_path;
  Label label = Label::Match;
  Split split = Split::Train;

  friend bool operator==(const PairRecord&, const PairRecord&) = default;
};

struct ManifestCounts {
  std::size_t train_match = 0;
  std::size_t train_nonmatch = 0;
  std::size_t valid_match = 0;
  std::size_t valid_nonmatch = 0;
};

struct PairManifest {
  int subtask = 1;
  std::uint64_t master_seed = 0;
  std::string encoder;  ///< EncoderConfig::description()
  std::vector<PairRecord> records;

  ManifestCounts counts() const;
  friend bool operator==(const PairManifest&, const PairManifest&) = default;
};

struct EncoderConfig {
  int subtask = 1;
  catmap::CatMapKey key{32, 1, 1, 5};
  pipeline::TileKeying tiling;
  bfv::BfvParams bfv;

  /// Single-token summary stored in manifests, e.g. "tiled:N=32,a=1,b=1,k=5".
  std::string description() const;
  void validate() const;
};

/// Defaults: subtask 1 tiles with N=32, subtask 2 the full 512 frame,
/// subtask 3 BFV with default parameters.
EncoderConfig default_encoder(int subtask);

/// Holds whatever a subtask encoder needs (BFV context and keys for
/// subtask 3). Keys are derived from the master seed.
class Encoder {
 public:
  Encoder(const EncoderConfig& config, std::uint64_t master_seed);
  ~Encoder();
  Encoder(Encoder&&) noexcept;
  Encoder& operator=(Encoder&&) noexcept;

  const EncoderConfig& config() const noexcept { return config_; }
  /// Raw image -> the "original" the corpus stores (512x512 or 52x52 crop).
  RasterImage prepare(const RasterImage& raw) const;
  /// Encoded artifact bytes: PNG for subtasks 1-2, a ciphertext blob for 3.
  std::vector<std::uint8_t> encode(const RasterImage& prepared, std::uint64_t item_seed) const;
  std::string_view extension() const noexcept;

  const bfv::BfvContext* bfv_context() const noexcept;
  const bfv::KeyTriple* bfv_keys() const noexcept;

 private:
  struct Bfv;
  EncoderConfig config_;
  std::unique_ptr<Bfv> bfv_;
};

enum class NonMatchMode { WithReplacement, Derangement };

struct BuildOptions {
  std::size_t count = 0;
  std::uint64_t seed = 0;
  EncoderConfig encoder;
  NonMatchMode nonmatch = NonMatchMode::WithReplacement;
  double train_ratio = 0.8;
  /// Folder of PNG/PPM images used instead of synthetic ones.
  std::optional<std::filesystem::path> source_dir;
  unsigned threads = 1;
};

std::filesystem::path subtask_dir(const std::filesystem::path& root, int subtask);

/// Writes `count` prepared originals and returns their relative paths.
std::vector<std::string> generate_originals(const std::filesystem::path& dir, const Encoder& encoder,
                                            std::size_t count, std::uint64_t seed,
                                            const std::optional<std::filesystem::path>& source_dir = {},
                                            unsigned threads = 1);

/// One label-1 record per original, pair_id = index. Encoded files are
/// written next to the originals; failures name the offending path.
std::vector<PairRecord> build_matching(const std::filesystem::path& dir, std::span<const std::string> originals,
                                       const Encoder& encoder, std::uint64_t seed, unsigned threads = 1);

/// One label-0 record per matching record, pairing each original with the
/// encoding of a different one. pair_id continues after the matching ids.
std::vector<PairRecord> build_nonmatching(std::span<const PairRecord> matching, std::uint64_t seed,
                                          NonMatchMode mode = NonMatchMode::WithReplacement);

/// Stratified by label: floor(ratio * class size) records of each class
/// go to train, the rest to valid.
PairManifest split(PairManifest manifest, double ratio, std::uint64_t seed);

/// Full build: originals, encodings, non-matches, split and manifest.
PairManifest build_dataset(const std::filesystem::path& root, const BuildOptions& options);

std::string format_manifest(const PairManifest& manifest);
PairManifest parse_manifest(std::string_view text);
void write_manifest(const std::filesystem::path& path, const PairManifest& manifest);
PairManifest read_manifest(const std::filesystem::path& path);

/// Hash over every file below `dir` (relative path and contents, sorted).
std::uint64_t directory_fingerprint(const std::filesystem::path& dir);

}  // namespace encmatch::dataset
