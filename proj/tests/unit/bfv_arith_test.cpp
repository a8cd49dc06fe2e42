#include <gtest/gtest.h>

#include "encmatch/bfv/modarith.hpp"
#include "encmatch/bfv/ntt.hpp"
#include "encmatch/bfv/ring.hpp"
#include "encmatch/errors.hpp"
#include "encmatch/rng.hpp"
#include "oracles.hpp"

namespace encmatch::bfv {
namespace {

constexpr std::uint64_t kQ = 1099511592961ULL;

std::vector<std::uint64_t> random_poly(Rng& rng, std::size_t n, std::uint64_t m) {
  std::vector<std::uint64_t> p(n);
  for (auto& c : p) c = rng.uniform_below(m);
  return p;
}

TEST(Modulus, MatchesWideArithmetic) {
  const Modulus q(kQ);
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const auto a = rng.uniform_below(kQ), b = rng.uniform_below(kQ);
    EXPECT_EQ(q.add(a, b), (a + b) % kQ);
    EXPECT_EQ(q.sub(a, b), (a + kQ - b) % kQ);
    EXPECT_EQ(q.mul(a, b), static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kQ));
    if (a != 0) {
      EXPECT_EQ(q.mul(a, q.inv(a)), 1u);
    }
  }
  EXPECT_EQ(q.reduce_signed(-1), kQ - 1);
  EXPECT_EQ(q.center(kQ - 1), -1);
  EXPECT_EQ(q.center(kQ / 2), static_cast<std::int64_t>(kQ / 2));
}

TEST(Modulus, PrimalityOfChosenModuli) {
  EXPECT_TRUE(is_prime(kQ));
  EXPECT_EQ(kQ % 2048, 1u);
  EXPECT_TRUE(is_prime(1125899903827969ULL));
  EXPECT_TRUE(is_prime(1125899902124033ULL));
  EXPECT_TRUE(is_prime(257));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(561));
  EXPECT_FALSE(is_prime(3215031751ULL));
}

TEST(Ntt, RootHasOrderTwoN) {
  const NegacyclicNtt ntt(1024, kQ);
  const Modulus q(kQ);
  EXPECT_EQ(q.pow(ntt.root(), 1024), kQ - 1);
  EXPECT_FALSE(NegacyclicNtt::supports(1024, 257));
  EXPECT_TRUE(NegacyclicNtt::supports(128, 257));
}

TEST(Ntt, ForwardInverseIsIdentity) {
  const NegacyclicNtt ntt(1024, kQ);
  Rng rng(2);
  auto p = random_poly(rng, 1024, kQ);
  const auto orig = p;
  ntt.forward(p);
  EXPECT_NE(p, orig);
  ntt.inverse(p);
  EXPECT_EQ(p, orig);
}

TEST(Ntt, MatchesSchoolbookOracle) {
  Rng rng(3);
  for (const std::size_t n : {2u, 8u, 64u, 256u}) {
    const NegacyclicNtt ntt(n, kQ);
    for (int trial = 0; trial < 5; ++trial) {
      const auto a = random_poly(rng, n, kQ), b = random_poly(rng, n, kQ);
      EXPECT_EQ(ntt.multiply(a, b), oracle::negacyclic_mul(a, b, kQ)) << "n=" << n;
    }
  }
}

TEST(Ring, NttAndSchoolbookAgree) {
  const RingContext ring(512, kQ);
  ASSERT_TRUE(ring.has_ntt());
  Rng rng(4);
  for (int trial = 0; trial < 3; ++trial) {
    const auto a = random_poly(rng, 512, kQ), b = random_poly(rng, 512, kQ);
    EXPECT_EQ(ring.multiply(a, b), ring.multiply_schoolbook(a, b));
  }
}

TEST(Ring, SchoolbookFallbackForUnfriendlyModulus) {
  const RingContext ring(16, 1000003);
  EXPECT_FALSE(ring.has_ntt());
  Rng rng(5);
  const auto a = random_poly(rng, 16, 1000003), b = random_poly(rng, 16, 1000003);
  EXPECT_EQ(ring.multiply(a, b), oracle::negacyclic_mul(a, b, 1000003));
}

TEST(Ring, NegacyclicWrap) {
  const RingContext ring(4, 17);
  const Poly x3{0, 0, 0, 1}, x{0, 1, 0, 0};
  EXPECT_EQ(ring.multiply(x3, x), (Poly{16, 0, 0, 0}));
}

TEST(Ring, RejectsWrongLength) {
  const RingContext ring(8, kQ);
  EXPECT_THROW(ring.add(Poly(8), Poly(7)), ValidationError);
}

TEST(Ring, SignedHelpers) {
  const RingContext ring(4, 17);
  const std::vector<std::int64_t> v{-3, 0, 8, -8};
  const auto p = ring.from_signed(v);
  EXPECT_EQ(p, (Poly{14, 0, 8, 9}));
  EXPECT_EQ(ring.centered(p), v);
  EXPECT_EQ(ring.infinity_norm(p), 8u);
}

TEST(ExactProduct, MatchesWideSchoolbook) {
  const std::size_t n = 64;
  const ExactNegacyclicProduct exact(n);
  Rng rng(6);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<std::int64_t> a(n), b(n);
    for (auto& c : a) c = static_cast<std::int64_t>(rng.uniform_below(std::uint64_t{1} << 41)) - (std::int64_t{1} << 40);
    for (auto& c : b) c = static_cast<std::int64_t>(rng.uniform_below(std::uint64_t{1} << 41)) - (std::int64_t{1} << 40);
    std::vector<i128> want(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const i128 p = static_cast<i128>(a[i]) * b[j];
        if (i + j < n) want[i + j] += p;
        else want[i + j - n] -= p;
      }
    }
    EXPECT_TRUE(exact.multiply(a, b) == want);
  }
}

}  // namespace
}  // namespace encmatch::bfv
