#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace encmatch::cli {

struct EncodeArgs {
  int subtask = 1;
  std::uint64_t seed = 0;
  std::string input;
  std::string output;
  std::string key;
  std::optional<std::uint64_t> per_tile_seed;
  std::string keys;
};

struct DecodeArgs {
  int subtask = 1;
  std::string input;
  std::string output = "decoded.png";
  std::string key;
  std::optional<std::uint64_t> per_tile_seed;
  std::string keys;
};

struct KeygenArgs {
  std::uint64_t seed = 0;
  std::string output = "keys.bin";
  std::size_t ring_dimension = 1024;
  std::uint64_t ciphertext_modulus = 1099511592961ULL;
  std::uint64_t plaintext_modulus = 257;
  std::uint64_t relin_base = 256;
  std::uint32_t noise_eta = 4;
};

struct EncryptArgs {
  std::uint64_t seed = 0;
  std::string keys;
  std::string input;
  std::string output = "encrypted.bin";
};

struct DecryptArgs {
  std::string keys;
  std::string input;
  std::string output = "decrypted.png";
};

struct InspectArgs {
  std::string input;
  std::string keys;
  std::string preview;
};

struct BuildDatasetArgs {
  std::string root;
  int subtask = 1;
  std::size_t count = 200;
  std::uint64_t seed = 0;
  std::string key;
  std::optional<std::uint64_t> per_tile_seed;
  std::string nonmatch = "replacement";
  double train_ratio = 0.8;
  std::string source;
  unsigned threads = 1;
};

struct AugmentPreviewArgs {
  std::uint64_t seed = 0;
  std::string input;
  std::string output = "augmented.png";
  std::string augment_config;
  std::optional<double> probability;
  std::string ops;
};

struct MakeSamplesArgs {
  std::string root;
  int subtask = 1;
  std::uint64_t seed = 0;
  std::string approach = "S12";
  std::string augment_config;
  std::string output = "samples.bin";
  std::string split = "all";
};

struct ScoreArgs {
  std::string submission;
  std::string truth;
  std::string manifest;
  std::string split = "all";
  std::optional<std::size_t> expected_lines;
  std::vector<double> accuracies;
  std::vector<double> weights = {0.1, 0.3, 0.6};
};

struct EnsembleArgs {
  std::vector<std::string> scores;
  std::string output = "-";
  std::string tie = "half-up";
  std::optional<std::size_t> expected_lines;
};

struct ReportArgs {
  std::vector<std::string> scores;
  std::string manifest;
  std::string output = "-";
  std::string tie = "half-up";
};

void run_encode(const EncodeArgs& args);
void run_decode(const DecodeArgs& args);
void run_keygen(const KeygenArgs& args);
void run_encrypt_image(const EncryptArgs& args);
void run_decrypt_image(const DecryptArgs& args);
void run_inspect(const InspectArgs& args);
void run_build_dataset(const BuildDatasetArgs& args);
void run_augment_preview(const AugmentPreviewArgs& args);
void run_make_samples(const MakeSamplesArgs& args);
void run_score(const ScoreArgs& args);
void run_ensemble(const EnsembleArgs& args);
void run_report(const ReportArgs& args);
/// Returns false when any check fails.
bool run_selftest();

}  // namespace encmatch::cli
