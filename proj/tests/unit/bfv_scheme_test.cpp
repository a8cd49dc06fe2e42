#include "encmatch/bfv/scheme.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "encmatch/errors.hpp"
#include "encmatch/rng.hpp"
#include "oracles.hpp"

namespace encmatch::bfv {
namespace {

class BfvTest : public ::testing::Test {
 protected:
  BfvTest() : ctx_(BfvParams{}), keys_(keygen(ctx_, 42)) {}

  Plaintext random_plaintext(Rng& rng) const {
    Plaintext m;
    m.coeffs.resize(ctx_.params().ring_dimension);
    for (auto& c : m.coeffs) c = rng.uniform_below(ctx_.params().plaintext_modulus);
    return m;
  }

  std::uint64_t t() const { return ctx_.params().plaintext_modulus; }

  BfvContext ctx_;
  KeyTriple keys_;
};

TEST_F(BfvTest, DefaultParameters) {
  const auto& p = ctx_.params();
  EXPECT_EQ(p.ring_dimension, 1024u);
  EXPECT_EQ(p.plaintext_modulus, 257u);
  EXPECT_EQ(p.scaling_factor(), p.ciphertext_modulus / 257);
  EXPECT_EQ(p.relin_digits(), 5u);
  EXPECT_TRUE(ctx_.ring().has_ntt());
}

TEST_F(BfvTest, InvalidParametersRejected) {
  BfvParams p;
  p.ring_dimension = 1000;
  EXPECT_THROW(p.validate(), ValidationError);
  p = {};
  p.plaintext_modulus = p.ciphertext_modulus;
  EXPECT_THROW(p.validate(), ValidationError);
  p = {};
  p.relin_base = 1;
  EXPECT_THROW(p.validate(), ValidationError);
}

TEST_F(BfvTest, KeygenDeterministic) {
  const auto again = keygen(ctx_, 42);
  EXPECT_EQ(again.secret.s, keys_.secret.s);
  EXPECT_EQ(again.pub.p0, keys_.pub.p0);
  EXPECT_NE(keygen(ctx_, 43).secret.s, keys_.secret.s);
}

TEST_F(BfvTest, SamplersStayInRange) {
  Rng rng(1);
  const auto& q = ctx_.ring().modulus();
  for (const auto c : sample_ternary(ctx_.ring(), rng)) EXPECT_LE(std::abs(q.center(c)), 1);
  for (const auto c : sample_noise(ctx_.ring(), rng, 4)) EXPECT_LE(std::abs(q.center(c)), 4);
}

TEST_F(BfvTest, EncryptDecryptRoundTrip) {
  Rng rng(7);
  for (int i = 0; i < 20; ++i) {
    const auto m = random_plaintext(rng);
    const auto c = encrypt(ctx_, keys_.pub, m, 100 + i);
    EXPECT_EQ(decrypt(ctx_, keys_.secret, c), m);
    EXPECT_TRUE(decryption_reliable(noise_budget(ctx_, keys_.secret, c)));
  }
}

TEST_F(BfvTest, EncryptionIsRandomized) {
  Rng rng(8);
  const auto m = random_plaintext(rng);
  EXPECT_NE(encrypt(ctx_, keys_.pub, m, 1), encrypt(ctx_, keys_.pub, m, 2));
  EXPECT_EQ(encrypt(ctx_, keys_.pub, m, 1), encrypt(ctx_, keys_.pub, m, 1));
}

TEST_F(BfvTest, RejectsOutOfRangePlaintext) {
  Plaintext m;
  m.coeffs.assign(1024, 0);
  m.coeffs[5] = 257;
  EXPECT_THROW(encrypt(ctx_, keys_.pub, m, 1), ValidationError);
  m.coeffs.assign(1023, 0);
  EXPECT_THROW(check_plaintext(ctx_, m), ValidationError);
}

TEST_F(BfvTest, AddMatchesOracle) {
  Rng rng(9);
  for (int i = 0; i < 10; ++i) {
    const auto a = random_plaintext(rng), b = random_plaintext(rng);
    const auto sum = add(ctx_, encrypt(ctx_, keys_.pub, a, 2 * i), encrypt(ctx_, keys_.pub, b, 2 * i + 1));
    EXPECT_EQ(decrypt(ctx_, keys_.secret, sum).coeffs, oracle::add_mod(a.coeffs, b.coeffs, t()));
  }
}

TEST_F(BfvTest, MultiplyRelinearizeMatchesOracle) {
  Rng rng(10);
  for (int i = 0; i < 5; ++i) {
    const auto a = random_plaintext(rng), b = random_plaintext(rng);
    const auto prod = multiply(ctx_, encrypt(ctx_, keys_.pub, a, 2 * i), encrypt(ctx_, keys_.pub, b, 2 * i + 1));
    ASSERT_EQ(prod.degree(), 2u);
    const auto want = oracle::negacyclic_mul(a.coeffs, b.coeffs, t());
    EXPECT_EQ(decrypt(ctx_, keys_.secret, prod).coeffs, want);
    const auto relin = relinearize(ctx_, keys_.relin, prod);
    ASSERT_EQ(relin.degree(), 1u);
    EXPECT_EQ(decrypt(ctx_, keys_.secret, relin).coeffs, want);
    EXPECT_TRUE(decryption_reliable(noise_budget(ctx_, keys_.secret, relin)));
  }
}

TEST_F(BfvTest, MultiplyRejectsDegreeTwo) {
  Rng rng(11);
  const auto c = encrypt(ctx_, keys_.pub, random_plaintext(rng), 1);
  EXPECT_THROW(multiply(ctx_, multiply(ctx_, c, c), c), ValidationError);
}

TEST_F(BfvTest, NoiselessBudgetIsMaximal) {
  Plaintext zero;
  zero.coeffs.assign(1024, 0);
  const auto c = encrypt_noiseless(ctx_, zero);
  EXPECT_DOUBLE_EQ(noise_budget(ctx_, keys_.secret, c),
                   std::log2(static_cast<double>(ctx_.params().ciphertext_modulus) / 2.0));
}

TEST_F(BfvTest, BudgetShrinksWithOperations) {
  Rng rng(12);
  const auto c = encrypt(ctx_, keys_.pub, random_plaintext(rng), 1);
  const double fresh = noise_budget(ctx_, keys_.secret, c);
  const double summed = noise_budget(ctx_, keys_.secret, add(ctx_, c, c));
  const double squared = noise_budget(ctx_, keys_.secret, relinearize(ctx_, keys_.relin, multiply(ctx_, c, c)));
  EXPECT_GT(fresh, 15.0);
  EXPECT_LE(summed, fresh);
  EXPECT_GE(summed, fresh - 1.5);
  EXPECT_LT(squared, fresh - 5.0);
}

TEST_F(BfvTest, ExhaustionIsFlaggedBeforeWrongResults) {
  Rng rng(13);
  auto m = random_plaintext(rng);
  auto c = encrypt(ctx_, keys_.pub, m, 1);
  bool flagged = false;
  for (int step = 0; step < 6 && !flagged; ++step) {
    c = relinearize(ctx_, keys_.relin, multiply(ctx_, c, c));
    m.coeffs = oracle::negacyclic_mul(m.coeffs, m.coeffs, t());
    const bool reliable = decryption_reliable(noise_budget(ctx_, keys_.secret, c));
    const bool correct = decrypt(ctx_, keys_.secret, c) == m;
    if (!correct) {
      EXPECT_FALSE(reliable) << "wrong decryption at step " << step << " was not flagged";
    }
    flagged = !reliable;
  }
  EXPECT_TRUE(flagged);
}

TEST_F(BfvTest, MismatchedContextRejected) {
  BfvParams other;
  other.ring_dimension = 512;
  const BfvContext small(other);
  Rng rng(14);
  const auto c = encrypt(ctx_, keys_.pub, random_plaintext(rng), 1);
  EXPECT_THROW(decrypt(small, keygen(small, 1).secret, c), ValidationError);
}

}  // namespace
}  // namespace encmatch::bfv
