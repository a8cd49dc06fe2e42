#include "encmatch/catmap.hpp"

#include <charconv>
#include <sstream>

#include "encmatch/errors.hpp"

namespace encmatch::catmap {

void CatMapKey::validate() const {
  if (grid_size < 2 || grid_size > kMaxGridSize) {
    throw ValidationError("cat map grid size must be in [2, 65536], got " +
                          std::to_string(grid_size));
  }
  if (iterations < 1) throw ValidationError("cat map iteration count must be >= 1");
}

std::string CatMapKey::to_string() const {
  std::ostringstream os;
  os << "N=" << grid_size << ",a=" << a << ",b=" << b << ",k=" << iterations;
  return os.str();
}

CatMapKey CatMapKey::parse(std::string_view text) {
  CatMapKey key;
  bool seen[4] = {false, false, false, false};
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto field = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);

    const auto eq = field.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError("cat map key: expected name=value, got '" + std::string(field) + "'");
    }
    const auto name = field.substr(0, eq);
    const auto value = field.substr(eq + 1);
    std::uint32_t parsed = 0;
    const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (ec != std::errc{} || end != value.data() + value.size()) {
      throw ValidationError("cat map key: bad value for '" + std::string(name) + "'");
    }
    int slot = -1;
    if (name == "N") {
      key.grid_size = parsed;
      slot = 0;
    } else if (name == "a") {
      key.a = parsed;
      slot = 1;
    } else if (name == "b") {
      key.b = parsed;
      slot = 2;
    } else if (name == "k") {
      key.iterations = parsed;
      slot = 3;
    } else {
      throw ValidationError("cat map key: unknown field '" + std::string(name) + "'");
    }
    if (seen[slot]) throw ValidationError("cat map key: duplicate field '" + std::string(name) + "'");
    seen[slot] = true;
  }
  for (const bool s : seen) {
    if (!s) throw ValidationError("cat map key: expected N, a, b and k");
  }
  key.validate();
  return key;
}

Matrix2 Matrix2::identity(std::uint64_t modulus) { return {1 % modulus, 0, 0, 1 % modulus, modulus}; }

Matrix2 Matrix2::step(const CatMapKey& key) {
  const std::uint64_t n = key.grid_size;
  const std::uint64_t a = key.a % n;
  const std::uint64_t b = key.b % n;
  return {1 % n, b, a, (a * b + 1) % n, n};
}

Matrix2 Matrix2::inverse_step(const CatMapKey& key) {
  const std::uint64_t n = key.grid_size;
  const std::uint64_t a = key.a % n;
  const std::uint64_t b = key.b % n;
  return {(a * b + 1) % n, (n - b) % n, (n - a) % n, 1 % n, n};
}

Matrix2 Matrix2::operator*(const Matrix2& rhs) const {
  const std::uint64_t n = modulus;
  return {(m00 * rhs.m00 + m01 * rhs.m10) % n, (m00 * rhs.m01 + m01 * rhs.m11) % n,
          (m10 * rhs.m00 + m11 * rhs.m10) % n, (m10 * rhs.m01 + m11 * rhs.m11) % n, n};
}

Matrix2 Matrix2::pow(std::uint64_t exponent) const {
  Matrix2 result = identity(modulus);
  Matrix2 base = *this;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    base = base * base;
    exponent >>= 1;
  }
  return result;
}

GridPoint Matrix2::apply(GridPoint p) const {
  const std::uint64_t x = p.x;
  const std::uint64_t y = p.y;
  return {static_cast<std::uint32_t>((m00 * x + m01 * y) % modulus),
          static_cast<std::uint32_t>((m10 * x + m11 * y) % modulus)};
}

bool Matrix2::is_identity() const { return *this == identity(modulus); }

GridPoint cat_map_forward(GridPoint p, const CatMapKey& key) {
  key.validate();
  return Matrix2::step(key).pow(key.iterations).apply(p);
}

GridPoint cat_map_inverse(GridPoint p, const CatMapKey& key) {
  key.validate();
  return Matrix2::inverse_step(key).pow(key.iterations).apply(p);
}

std::uint64_t period(const CatMapKey& key, std::optional<std::uint64_t> cap) {
  CatMapKey probe = key;
  probe.iterations = 1;
  probe.validate();
  const std::uint64_t limit = cap.value_or(kPeriodCapFactor * key.grid_size);

  const Matrix2 step = Matrix2::step(probe);
  Matrix2 power = step;
  for (std::uint64_t p = 1; p <= limit; ++p) {
    if (power.is_identity()) return p;
    power = power * step;
  }
  throw ResourceError("cat map period exceeds cap " + std::to_string(limit) + " for key " +
                      probe.to_string());
}

std::vector<std::uint32_t> forward_table(const CatMapKey& key) {
  key.validate();
  const Matrix2 m = Matrix2::step(key).pow(key.iterations);
  const std::uint32_t n = key.grid_size;
  std::vector<std::uint32_t> table(static_cast<std::size_t>(n) * n);
  for (std::uint32_t y = 0; y < n; ++y) {
    for (std::uint32_t x = 0; x < n; ++x) {
      const GridPoint q = m.apply({x, y});
      table[static_cast<std::size_t>(y) * n + x] = q.y * n + q.x;
    }
  }
  return table;
}

}  // namespace encmatch::catmap
