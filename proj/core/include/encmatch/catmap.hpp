#pragma once

// Generalized Arnold cat map on an N x N integer grid.
//
// One iteration sends (x, y) to
//     (x + b*y mod N, a*x + (a*b + 1)*y mod N),
// i.e. multiplication by [[1, b], [a, a*b + 1]], which has determinant 1 and
// is therefore a bijection of Z_N x Z_N for every (a, b). The classic map is
// a = b = 1. Coordinates are (column x, row y) with the origin top-left.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace encmatch::catmap {

/// Largest supported grid side. Keeps every intermediate below 2^64.
inline constexpr std::uint32_t kMaxGridSize = 1u << 16;

struct CatMapKey {
  std::uint32_t grid_size = 2;
  std::uint32_t a = 1;
  std::uint32_t b = 1;
  std::uint32_t iterations = 1;

  /// Throws ValidationError unless 2 <= N <= kMaxGridSize and k >= 1.
  void validate() const;

  /// "N=32,a=1,b=1,k=7"
  std::string to_string() const;
  static CatMapKey parse(std::string_view text);

  friend bool operator==(const CatMapKey&, const CatMapKey&) = default;
};

struct GridPoint {
  std::uint32_t x = 0;
  std::uint32_t y = 0;

  friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

/// 2x2 matrix with entries reduced mod `modulus`.
struct Matrix2 {
  std::uint64_t m00 = 1, m01 = 0, m10 = 0, m11 = 1;
  std::uint64_t modulus = 2;

  static Matrix2 identity(std::uint64_t modulus);
  /// One forward iteration of the map for `key`.
  static Matrix2 step(const CatMapKey& key);
  /// One inverse iteration: [[a*b + 1, -b], [-a, 1]].
  static Matrix2 inverse_step(const CatMapKey& key);

  Matrix2 operator*(const Matrix2& rhs) const;
  Matrix2 pow(std::uint64_t exponent) const;
  GridPoint apply(GridPoint p) const;
  bool is_identity() const;

  friend bool operator==(const Matrix2&, const Matrix2&) = default;
};

/// Image of `p` after key.iterations forward steps.
GridPoint cat_map_forward(GridPoint p, const CatMapKey& key);

/// Preimage of `p`, so cat_map_inverse(cat_map_forward(p, k), k) == p.
GridPoint cat_map_inverse(GridPoint p, const CatMapKey& key);

/// Default cap factor for period(): the order of any map in the family
/// never exceeds 3N.
inline constexpr std::uint64_t kPeriodCapFactor = 3;

/// Smallest P >= 1 with M^P = I (mod N); key.iterations is ignored.
/// Throws ResourceError if P would exceed `cap` (default 3N).
std::uint64_t period(const CatMapKey& key, std::optional<std::uint64_t> cap = std::nullopt);

/// Destination index (y*N + x) of every source index under the full key.
std::vector<std::uint32_t> forward_table(const CatMapKey& key);

}  // namespace encmatch::catmap
