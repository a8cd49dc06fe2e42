#include "commands.hpp"

#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <string_view>

#include "encmatch/augment.hpp"
#include "encmatch/bfv/blob.hpp"
#include "encmatch/bfv/image_codec.hpp"
#include "encmatch/dataset.hpp"
#include "encmatch/errors.hpp"
#include "encmatch/evalkit.hpp"
#include "encmatch/image_io.hpp"
#include "encmatch/pipeline.hpp"
#include "encmatch/rng.hpp"
#include "encmatch/samples.hpp"
#include "encmatch/selftest.hpp"
#include "encmatch/synth.hpp"

namespace encmatch::cli {
namespace {

namespace fs = std::filesystem;

constexpr std::uint64_t kInputStream = 0x696e70;  // "inp"
constexpr std::uint64_t kItemStream = 0x697465;   // "ite"

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

std::uint64_t hash_bytes(std::span<const std::uint8_t> bytes) { return fnv1a64(bytes); }

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  io::write_bytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::string read_text(const std::string& path) {
  const auto bytes = io::read_bytes(path);
  return {bytes.begin(), bytes.end()};
}

void check_subtask(int subtask) {
  if (subtask < 1 || subtask > 3) throw ValidationError("subtask must be 1, 2 or 3");
}

dataset::EncoderConfig encoder_config(int subtask, const std::string& key, std::optional<std::uint64_t> per_tile_seed) {
  check_subtask(subtask);
  auto cfg = dataset::default_encoder(subtask);
  if (!key.empty()) cfg.key = catmap::CatMapKey::parse(key);
  cfg.tiling.per_tile_seed = per_tile_seed;
  cfg.validate();
  return cfg;
}

evalkit::TieRule tie_rule(const std::string& name) {
  if (name == "half-up") return evalkit::TieRule::HalfUp;
  if (name == "half-down") return evalkit::TieRule::HalfDown;
  throw ValidationError("tie rule must be half-up or half-down, got '" + name + "'");
}

evalkit::ScoreMatrix load_scores(const std::vector<std::string>& files) {
  std::vector<evalkit::ScoreEntry> entries;
  for (const auto& f : files) {
    auto part = evalkit::parse_scores(read_text(f));
    entries.insert(entries.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return evalkit::ScoreMatrix::from_entries(entries);
}

bfv::KeyFile load_keys(const std::string& path) {
  if (path.empty()) throw ValidationError("--keys is required");
  return bfv::parse_keys(io::read_bytes(path));
}

augment::AugmentConfig augment_config(const std::string& path) {
  return path.empty() ? augment::AugmentConfig{} : augment::load_config(path);
}

}  // namespace

void run_encode(const EncodeArgs& args) {
  auto cfg = encoder_config(args.subtask, args.key, args.per_tile_seed);
  std::optional<bfv::KeyFile> keyfile;
  if (args.subtask == 3 && !args.keys.empty()) {
    keyfile = load_keys(args.keys);
    cfg.bfv = keyfile->params;
  }
  const dataset::Encoder encoder(cfg, args.seed);

  RasterImage raw;
  if (args.input.empty()) {
    const auto s = derive_seed(args.seed, kInputStream);
    raw = args.subtask == 3 ? synth::face(96, 96, s) : synth::scene(640, 480, s);
  } else {
    raw = io::read_image(args.input);
  }
  const auto prepared = encoder.prepare(raw);
  const auto item_seed = derive_seed(args.seed, kItemStream);
  std::vector<std::uint8_t> bytes;
  if (keyfile) {
    const bfv::BfvContext ctx(keyfile->params);
    bytes = bfv::encrypt_image(ctx, keyfile->keys.pub, prepared, item_seed);
  } else {
    bytes = encoder.encode(prepared, item_seed);
  }
  const std::string output = args.output.empty() ? "encoded" + std::string(encoder.extension()) : args.output;
  io::write_bytes(output, bytes);
  std::cout << "encoder " << cfg.description() << "\n"
            << "output " << output << "\n"
            << "hash " << hex(hash_bytes(bytes)) << "\n";
}

void run_decode(const DecodeArgs& args) {
  RasterImage out;
  if (args.subtask == 3) {
    const auto kf = load_keys(args.keys);
    const bfv::BfvContext ctx(kf.params);
    out = bfv::decrypt_image(ctx, kf.keys.secret, io::read_bytes(args.input));
  } else {
    const auto cfg = encoder_config(args.subtask, args.key, args.per_tile_seed);
    const auto img = io::read_image(args.input);
    out = args.subtask == 1 ? pipeline::decode_tiled(img, cfg.key, cfg.tiling)
                            : pipeline::decode_fullframe(img, cfg.key);
  }
  io::write_image(args.output, out);
  std::cout << "output " << args.output << "\n"
            << "image_hash " << hex(image_hash(out)) << "\n";
}

void run_keygen(const KeygenArgs& args) {
  bfv::BfvParams params;
  params.ring_dimension = args.ring_dimension;
  params.ciphertext_modulus = args.ciphertext_modulus;
  params.plaintext_modulus = args.plaintext_modulus;
  params.relin_base = args.relin_base;
  params.noise_eta = args.noise_eta;
  const bfv::BfvContext ctx(params);
  const auto keys = bfv::keygen(ctx, args.seed);
  const auto bytes = bfv::serialize_keys(params, keys);
  io::write_bytes(args.output, bytes);
  std::cout << "params n=" << params.ring_dimension << ",q=" << params.ciphertext_modulus
            << ",t=" << params.plaintext_modulus << ",T=" << params.relin_base << "\n"
            << "fingerprint " << hex(ctx.fingerprint()) << "\n"
            << "output " << args.output << "\n"
            << "hash " << hex(hash_bytes(bytes)) << "\n";
}

void run_encrypt_image(const EncryptArgs& args) {
  const auto kf = load_keys(args.keys);
  const bfv::BfvContext ctx(kf.params);
  auto img = io::read_image(args.input);
  if (img.width() != pipeline::kFaceSide || img.height() != pipeline::kFaceSide) {
    img = pipeline::prepare_face_crop(img, pipeline::center_square_box(img));
  }
  const auto blob = bfv::encrypt_image(ctx, kf.keys.pub, img, args.seed);
  io::write_bytes(args.output, blob);
  std::cout << "output " << args.output << "\n"
            << "bytes " << blob.size() << "\n"
            << "hash " << hex(hash_bytes(blob)) << "\n";
}

void run_decrypt_image(const DecryptArgs& args) {
  const auto kf = load_keys(args.keys);
  const bfv::BfvContext ctx(kf.params);
  const auto img = bfv::decrypt_image(ctx, kf.keys.secret, io::read_bytes(args.input));
  io::write_image(args.output, img);
  std::cout << "output " << args.output << "\n"
            << "image_hash " << hex(image_hash(img)) << "\n";
}

void run_inspect(const InspectArgs& args) {
  const auto blob = io::read_bytes(args.input);
  const auto h = bfv::parse_blob_header(blob);
  std::cout << "ciphertexts " << h.count << "\n"
            << "polys_per_ciphertext " << h.polys_per_ciphertext << "\n"
            << "n " << h.ring_dimension << "\n"
            << "q " << h.ciphertext_modulus << "\n"
            << "t " << h.plaintext_modulus << "\n"
            << "bytes " << blob.size() << "\n";
  if (!args.keys.empty()) {
    const auto kf = load_keys(args.keys);
    const bfv::BfvContext ctx(kf.params);
    const auto cts = bfv::parse_ciphertexts(ctx, blob);
    for (std::size_t i = 0; i < cts.size(); ++i) {
      const double budget = bfv::noise_budget(ctx, kf.keys.secret, cts[i]);
      std::printf("budget[%zu] %.2f%s\n", i, budget, bfv::decryption_reliable(budget) ? "" : " UNRELIABLE");
    }
  }
  if (!args.preview.empty()) io::write_image(args.preview, bfv::ciphertext_to_image(blob));
}

void run_build_dataset(const BuildDatasetArgs& args) {
  dataset::BuildOptions opts;
  opts.count = args.count;
  opts.seed = args.seed;
  opts.encoder = encoder_config(args.subtask, args.key, args.per_tile_seed);
  if (args.nonmatch == "replacement") {
    opts.nonmatch = dataset::NonMatchMode::WithReplacement;
  } else if (args.nonmatch == "derangement") {
    opts.nonmatch = dataset::NonMatchMode::Derangement;
  } else {
    throw ValidationError("--nonmatch must be replacement or derangement");
  }
  opts.train_ratio = args.train_ratio;
  if (!args.source.empty()) opts.source_dir = args.source;
  opts.threads = args.threads;
  const auto manifest = dataset::build_dataset(args.root, opts);
  const auto c = manifest.counts();
  const auto dir = dataset::subtask_dir(args.root, args.subtask);
  std::cout << "manifest " << (dir / "manifest.csv").string() << "\n"
            << "records " << manifest.records.size() << "\n"
            << "train " << c.train_match << " match, " << c.train_nonmatch << " non-match\n"
            << "valid " << c.valid_match << " match, " << c.valid_nonmatch << " non-match\n"
            << "fingerprint " << hex(dataset::directory_fingerprint(dir)) << "\n";
}

void run_augment_preview(const AugmentPreviewArgs& args) {
  auto cfg = augment_config(args.augment_config);
  if (args.ops == "base") cfg.ops = augment::OpSet::Base;
  else if (args.ops == "extended") cfg.ops = augment::OpSet::Extended;
  else if (!args.ops.empty()) throw ValidationError("--ops must be base or extended");
  if (args.probability) cfg.set_all_probabilities(*args.probability);
  const auto img = args.input.empty() ? synth::scene(256, 256, derive_seed(args.seed, kInputStream))
                                      : io::read_image(args.input);
  const auto result = augment::augment_traced(img, cfg, args.seed);
  io::write_image(args.output, result.image);
  std::cout << "fired";
  if (result.fired.empty()) std::cout << " none";
  for (const auto op : result.fired) std::cout << ' ' << augment::op_name(op);
  std::cout << "\noutput " << args.output << "\n"
            << "image_hash " << hex(image_hash(result.image)) << "\n";
}

void run_make_samples(const MakeSamplesArgs& args) {
  check_subtask(args.subtask);
  const auto approach = augment::approach_from_name(args.approach);
  if (!approach) throw ValidationError("--approach must be one of S12, T1, T2, T3");
  std::optional<dataset::Split> only;
  if (args.split == "train") only = dataset::Split::Train;
  else if (args.split == "valid") only = dataset::Split::Valid;
  else if (args.split != "all") throw ValidationError("--split must be all, train or valid");

  const auto cfg = augment_config(args.augment_config);
  const auto dir = dataset::subtask_dir(args.root, args.subtask);
  const auto manifest = dataset::read_manifest(dir / "manifest.csv");
  const std::uint32_t side = args.subtask == 3 ? pipeline::kFaceSide : pipeline::kFrameSide;
  samples::SampleWriter writer(args.output, side, side);
  for (const auto& rec : manifest.records) {
    if (only && rec.split != *only) continue;
    const auto original = io::read_image(dir / rec.original_path);
    const auto seed = derive_seed(args.seed, rec.pair_id);
    augment::SixChannelSample s;
    if (args.subtask == 3) {
      s = augment::make_sample(original, io::read_bytes(dir / rec.encoded_path), *approach, cfg, seed);
    } else {
      s = augment::make_sample(original, io::read_image(dir / rec.encoded_path), *approach, cfg, seed);
    }
    s.pair_id = rec.pair_id;
    s.label = rec.label == dataset::Label::Match ? 1 : 0;
    writer.write(s, rec.split == dataset::Split::Train ? 0 : 1);
  }
  writer.finish();
  std::cout << "samples " << writer.count() << "\n"
            << "shape " << side << "x" << side << "x6\n"
            << "output " << args.output << "\n";
}

void run_score(const ScoreArgs& args) {
  if (!args.accuracies.empty()) {
    if (args.accuracies.size() != 3 || args.weights.size() != 3) {
      throw ValidationError("--accuracies and --weights take three values each");
    }
    const evalkit::Weights w(args.weights[0], args.weights[1], args.weights[2]);
    std::printf("weighted_accuracy %.6f\n",
                evalkit::weighted_accuracy(args.accuracies[0], args.accuracies[1], args.accuracies[2], w));
    return;
  }
  if (args.submission.empty()) throw ValidationError("--submission or --accuracies is required");
  evalkit::Submission truth;
  if (!args.truth.empty()) {
    truth = evalkit::parse_submission(read_text(args.truth), args.expected_lines);
  } else if (!args.manifest.empty()) {
    std::optional<dataset::Split> only;
    if (args.split == "train") only = dataset::Split::Train;
    else if (args.split == "valid") only = dataset::Split::Valid;
    else if (args.split != "all") throw ValidationError("--split must be all, train or valid");
    truth = evalkit::truth_from_manifest(dataset::read_manifest(args.manifest), only);
  } else {
    throw ValidationError("--truth or --manifest is required");
  }
  const auto predicted = evalkit::parse_submission(read_text(args.submission), args.expected_lines);
  std::printf("accuracy %.6f\nlines %zu\n", evalkit::accuracy(predicted, truth), predicted.size());
}

void run_ensemble(const EnsembleArgs& args) {
  const auto scores = load_scores(args.scores);
  const auto submission = evalkit::ensemble(scores, tie_rule(args.tie));
  if (args.expected_lines && submission.size() != *args.expected_lines) {
    throw ValidationError("ensemble produced " + std::to_string(submission.size()) + " lines, expected " +
                          std::to_string(*args.expected_lines));
  }
  write_text(args.output, evalkit::emit_submission(submission));
  if (args.output != "-") {
    std::cerr << "models " << scores.cols() << ", pairs " << scores.rows() << "\n";
  }
}

void run_report(const ReportArgs& args) {
  const auto scores = load_scores(args.scores);
  const auto manifest = dataset::read_manifest(args.manifest);
  const auto rows = evalkit::report_validation(scores, manifest, tie_rule(args.tie));
  write_text(args.output, evalkit::format_report(rows));
}

bool run_selftest() { return encmatch::run_selftest(std::cout); }

}  // namespace encmatch::cli
