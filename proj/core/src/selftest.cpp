#include "encmatch/selftest.hpp"

#include <cmath>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "encmatch/augment.hpp"
#include "encmatch/bfv/blob.hpp"
#include "encmatch/bfv/scheme.hpp"
#include "encmatch/catmap.hpp"
#include "encmatch/evalkit.hpp"
#include "encmatch/pipeline.hpp"
#include "encmatch/rng.hpp"
#include "encmatch/synth.hpp"

namespace encmatch {
namespace {

struct Check {
  const char* name;
  std::function<bool()> body;
};

bool catmap_bijective() {
  for (const catmap::CatMapKey key : {catmap::CatMapKey{2, 1, 1, 1}, catmap::CatMapKey{32, 2, 3, 5},
                                      catmap::CatMapKey{17, 4, 9, 3}}) {
    const auto table = catmap::forward_table(key);
    std::vector<bool> seen(table.size());
    for (const auto d : table) {
      if (d >= seen.size() || seen[d]) return false;
      seen[d] = true;
    }
    for (std::uint32_t y = 0; y < key.grid_size; ++y) {
      for (std::uint32_t x = 0; x < key.grid_size; ++x) {
        const catmap::GridPoint p{x, y};
        if (catmap::cat_map_inverse(catmap::cat_map_forward(p, key), key) != p) return false;
      }
    }
  }
  return true;
}

bool catmap_period() {
  if (catmap::period({2, 1, 1, 1}) != 3) return false;
  const catmap::CatMapKey key{32, 1, 1, 1};
  return catmap::Matrix2::step(key).pow(catmap::period(key)).is_identity();
}

bool tiled_roundtrip() {
  const auto img = synth::scene(pipeline::kFrameSide, pipeline::kFrameSide, 11);
  const catmap::CatMapKey key{32, 1, 1, 5};
  const auto enc = pipeline::encode_tiled(img, key);
  return enc != img && pipeline::decode_tiled(enc, key) == img;
}

bool fullframe_roundtrip() {
  const auto img = synth::scene(pipeline::kFrameSide, pipeline::kFrameSide, 12);
  const catmap::CatMapKey key{512, 1, 1, 17};
  return pipeline::decode_fullframe(pipeline::encode_fullframe(img, key), key) == img;
}

bool bfv_roundtrip() {
  bfv::BfvParams params;
  params.ring_dimension = 64;
  const bfv::BfvContext ctx(params);
  const auto keys = bfv::keygen(ctx, 3);
  Rng rng(4);
  bfv::Plaintext a, b;
  for (std::size_t i = 0; i < params.ring_dimension; ++i) {
    a.coeffs.push_back(rng.uniform_below(params.plaintext_modulus));
    b.coeffs.push_back(rng.uniform_below(params.plaintext_modulus));
  }
  const auto ca = bfv::encrypt(ctx, keys.pub, a, 5);
  const auto cb = bfv::encrypt(ctx, keys.pub, b, 6);
  if (bfv::decrypt(ctx, keys.secret, ca) != a) return false;
  const auto sum = bfv::decrypt(ctx, keys.secret, bfv::add(ctx, ca, cb));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (sum.coeffs[i] != (a.coeffs[i] + b.coeffs[i]) % params.plaintext_modulus) return false;
  }
  const std::vector<bfv::Ciphertext> cts{ca, cb};
  const auto blob = bfv::serialize_ciphertexts(ctx, cts);
  return bfv::parse_ciphertexts(ctx, blob) == cts;
}

bool augment_checks() {
  const auto img = synth::scene(64, 64, 21);
  if (augment::horizontal_flip(augment::horizontal_flip(img)) != img) return false;
  const auto gray = augment::to_gray(img);
  for (std::size_t y = 0; y < gray.height(); ++y) {
    for (std::size_t x = 0; x < gray.width(); ++x) {
      if (gray.at(x, y, 0) != gray.at(x, y, 1) || gray.at(x, y, 1) != gray.at(x, y, 2)) return false;
    }
  }
  augment::AugmentConfig cfg;
  cfg.set_all_probabilities(0.0);
  if (augment::apply_augmentations(img, cfg, 9) != img) return false;
  cfg.set_all_probabilities(0.5);
  return augment::apply_augmentations(img, cfg, 9) == augment::apply_augmentations(img, cfg, 9);
}

bool evalkit_checks() {
  if (evalkit::weighted_accuracy(1, 0, 0) != 0.1) return false;
  if (evalkit::weighted_accuracy(0, 1, 0) != 0.3) return false;
  if (evalkit::weighted_accuracy(0, 0, 1) != 0.6) return false;
  const std::vector<double> half(4, 0.5);
  const std::vector<std::uint8_t> labels{1, 0, 1, 0};
  if (std::abs(evalkit::binary_cross_entropy(half, labels) - std::log(2.0)) > 1e-6) return false;
  const auto s = evalkit::parse_submission("1\n0\n1\n", 3);
  if (evalkit::emit_submission(s) != "1\n0\n1\n") return false;
  try {
    evalkit::parse_submission("2\n");
    return false;
  } catch (const std::exception&) {
  }
  return true;
}

}  // namespace

bool run_selftest(std::ostream& out) {
  const std::vector<Check> checks{
      {"catmap-bijection", catmap_bijective},   {"catmap-period", catmap_period},
      {"tiled-roundtrip", tiled_roundtrip},     {"fullframe-roundtrip", fullframe_roundtrip},
      {"bfv-roundtrip", bfv_roundtrip},         {"augment-invariants", augment_checks},
      {"evalkit", evalkit_checks},
  };
  bool all = true;
  for (const auto& c : checks) {
    bool ok = false;
    std::string detail;
    try {
      ok = c.body();
    } catch (const std::exception& e) {
      detail = std::string(" (") + e.what() + ")";
    }
    out << (ok ? "ok   " : "FAIL ") << c.name << detail << '\n';
    all = all && ok;
  }
  return all;
}

}  // namespace encmatch
