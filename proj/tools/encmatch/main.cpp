// encmatch: command-line front end.
//
// Exit codes: 0 ok, 2 usage, 3 I/O, 4 validation, 5 selftest failure.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "encmatch/errors.hpp"

namespace {

enum Exit : int { kOk = 0, kUsage = 2, kIo = 3, kValidation = 4, kSelftest = 5 };

using namespace encmatch::cli;

void add_key_flags(CLI::App* cmd, std::string& key, std::optional<std::uint64_t>& per_tile_seed) {
  cmd->add_option("--key", key, "Cat-map key N=..,a=..,b=..,k=.. (empty: subtask default)");
  cmd->add_option("--per-tile-seed", per_tile_seed, "Derive a distinct iteration count per tile from this seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Encoders, datasets and scoring for encrypted-image matching", "encmatch"};
  app.option_defaults()->always_capture_default();
  app.set_config("--config", "", "Key-value config file; command-line flags take precedence");
  app.require_subcommand(1);
  app.get_formatter()->column_width(34);

  std::string stage = "encmatch";
  int exit_code = kOk;

  EncodeArgs enc;
  auto* encode = app.add_subcommand("encode", "Encode one image (synthesized from --seed when no --input)");
  encode->add_option("--subtask", enc.subtask, "1 tiled cat map, 2 full-frame cat map, 3 BFV")
      ->check(CLI::Range(1, 3));
  encode->add_option("--seed", enc.seed, "Master seed")->required();
  encode->add_option("--input", enc.input, "Input image (PNG or PPM)");
  encode->add_option("--output", enc.output, "Output path (empty: encoded.png or encoded.bin)");
  add_key_flags(encode, enc.key, enc.per_tile_seed);
  encode->add_option("--keys", enc.keys, "Subtask 3: key file from keygen (empty: keys derived from --seed)");
  encode->callback([&] { run_encode(enc); });

  DecodeArgs dec;
  auto* decode = app.add_subcommand("decode", "Invert an encoding");
  decode->add_option("--subtask", dec.subtask, "1, 2 or 3")->check(CLI::Range(1, 3));
  decode->add_option("--input", dec.input, "Encoded file")->required();
  decode->add_option("--output", dec.output, "Decoded image");
  add_key_flags(decode, dec.key, dec.per_tile_seed);
  decode->add_option("--keys", dec.keys, "Subtask 3: key file");
  decode->callback([&] { run_decode(dec); });

  KeygenArgs kg;
  auto* keygen = app.add_subcommand("keygen", "Generate BFV secret, public and relinearization keys");
  keygen->add_option("--seed", kg.seed, "Key seed")->required();
  keygen->add_option("--output", kg.output, "Key file");
  keygen->add_option("--ring-dim", kg.ring_dimension, "Ring dimension n (power of two)");
  keygen->add_option("--modulus", kg.ciphertext_modulus, "Ciphertext modulus q");
  keygen->add_option("--plain-modulus", kg.plaintext_modulus, "Plaintext modulus t");
  keygen->add_option("--relin-base", kg.relin_base, "Relinearization digit base T");
  keygen->add_option("--eta", kg.noise_eta, "Centered-binomial noise parameter");
  keygen->callback([&] { run_keygen(kg); });

  EncryptArgs ea;
  auto* encrypt = app.add_subcommand("encrypt-image", "Encrypt a face crop into a ciphertext blob");
  encrypt->add_option("--seed", ea.seed, "Encryption seed")->required();
  encrypt->add_option("--keys", ea.keys, "Key file")->required();
  encrypt->add_option("--input", ea.input, "Image; cropped to 52x52 unless already that size")->required();
  encrypt->add_option("--output", ea.output, "Blob path");
  encrypt->callback([&] { run_encrypt_image(ea); });

  DecryptArgs da;
  auto* decrypt = app.add_subcommand("decrypt-image", "Decrypt a ciphertext blob to a 52x52 image");
  decrypt->add_option("--keys", da.keys, "Key file")->required();
  decrypt->add_option("--input", da.input, "Blob path")->required();
  decrypt->add_option("--output", da.output, "Image path");
  decrypt->callback([&] { run_decrypt_image(da); });

  InspectArgs ia;
  auto* inspect = app.add_subcommand("inspect", "Print a ciphertext blob header and optional noise budgets");
  inspect->add_option("--input", ia.input, "Blob path")->required();
  inspect->add_option("--keys", ia.keys, "Key file; enables per-ciphertext noise budget");
  inspect->add_option("--preview", ia.preview, "Write the blob viewed as a 52x52 image here");
  inspect->callback([&] { run_inspect(ia); });

  BuildDatasetArgs bd;
  auto* build = app.add_subcommand("build-dataset", "Build matching and non-matching pairs with a manifest");
  build->add_option("--root", bd.root, "Output root")->required();
  build->add_option("--subtask", bd.subtask, "1, 2 or 3")->check(CLI::Range(1, 3));
  build->add_option("--count", bd.count, "Number of originals")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 24));
  build->add_option("--seed", bd.seed, "Master seed")->required();
  add_key_flags(build, bd.key, bd.per_tile_seed);
  build->add_option("--nonmatch", bd.nonmatch, "replacement or derangement")
      ->check(CLI::IsMember({"replacement", "derangement"}));
  build->add_option("--train-ratio", bd.train_ratio, "Per-class train fraction")->check(CLI::Range(0.0, 1.0));
  build->add_option("--source", bd.source, "Folder of input images (empty: synthetic)");
  build->add_option("--threads", bd.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  build->callback([&] { run_build_dataset(bd); });

  AugmentPreviewArgs ap;
  auto* preview = app.add_subcommand("augment-preview", "Apply the augmentation chain to one image");
  preview->add_option("--seed", ap.seed, "Augmentation seed")->required();
  preview->add_option("--input", ap.input, "Input image (empty: synthetic)");
  preview->add_option("--output", ap.output, "Output image");
  preview->add_option("--augment-config", ap.augment_config, "Augmentation key=value file");
  preview->add_option("--p", ap.probability, "Override every op's firing probability")->check(CLI::Range(0.0, 1.0));
  preview->add_option("--ops", ap.ops, "base or extended (empty: from config)");
  preview->callback([&] { run_augment_preview(ap); });

  MakeSamplesArgs ms;
  auto* make = app.add_subcommand("make-samples", "Write six-channel training samples from a dataset");
  make->add_option("--root", ms.root, "Dataset root")->required();
  make->add_option("--subtask", ms.subtask, "1, 2 or 3")->check(CLI::Range(1, 3));
  make->add_option("--seed", ms.seed, "Augmentation seed")->required();
  make->add_option("--approach", ms.approach, "S12, T1, T2 or T3")->check(CLI::IsMember({"S12", "T1", "T2", "T3"}));
  make->add_option("--augment-config", ms.augment_config, "Augmentation key=value file");
  make->add_option("--output", ms.output, "Sample file");
  make->add_option("--split", ms.split, "all, train or valid")->check(CLI::IsMember({"all", "train", "valid"}));
  make->callback([&] { run_make_samples(ms); });

  ScoreArgs sc;
  auto* score = app.add_subcommand("score", "Accuracy of a submission, or the weighted challenge accuracy");
  score->add_option("--submission", sc.submission, "Predicted submission file");
  score->add_option("--truth", sc.truth, "Reference submission file");
  score->add_option("--manifest", sc.manifest, "Manifest used as reference (ascending pair_id)");
  score->add_option("--split", sc.split, "Manifest records to use: all, train or valid")
      ->check(CLI::IsMember({"all", "train", "valid"}));
  score->add_option("--expected-lines", sc.expected_lines, "Required line count");
  score->add_option("--accuracies", sc.accuracies, "Per-subtask accuracies acc1 acc2 acc3")->expected(3);
  score->add_option("--weights", sc.weights, "Subtask weights w1 w2 w3")->expected(3);
  score->callback([&] { run_score(sc); });

  EnsembleArgs en;
  auto* ensemble = app.add_subcommand("ensemble", "Average model scores and round to a submission");
  ensemble->add_option("--scores", en.scores, "Score CSV files (pair_id,model_id,score)")->required();
  ensemble->add_option("--output", en.output, "Submission path, - for stdout");
  ensemble->add_option("--tie", en.tie, "Rounding of a 0.5 mean: half-up or half-down")
      ->check(CLI::IsMember({"half-up", "half-down"}));
  ensemble->add_option("--expected-lines", en.expected_lines, "Required line count");
  ensemble->callback([&] { run_ensemble(en); });

  ReportArgs rp;
  auto* report = app.add_subcommand("report", "Validation accuracy and loss per model");
  report->add_option("--scores", rp.scores, "Score CSV files")->required();
  report->add_option("--manifest", rp.manifest, "Dataset manifest")->required();
  report->add_option("--output", rp.output, "Report CSV, - for stdout");
  report->add_option("--tie", rp.tie, "half-up or half-down")->check(CLI::IsMember({"half-up", "half-down"}));
  report->callback([&] { run_report(rp); });

  auto* selftest = app.add_subcommand("selftest", "Run the embedded invariant checks");
  selftest->callback([&] {
    if (!run_selftest()) exit_code = kSelftest;
  });

  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
    sub->preparse_callback([&stage, sub](std::size_t) { stage = "encmatch " + sub->get_name(); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::FileError& e) {
    std::cerr << stage << ": I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const CLI::ParseError& e) {
    std::cerr << stage << ": usage error: " << e.what() << "\n"
              << "run with --help for usage\n";
    return kUsage;
  } catch (const encmatch::IoError& e) {
    std::cerr << stage << ": I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const encmatch::Error& e) {
    std::cerr << stage << ": invalid input: " << e.what() << "\n";
    return kValidation;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << stage << ": I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << stage << ": error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
