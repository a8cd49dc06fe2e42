#pragma once

// Reference implementations used only by tests. They deliberately share no
// code with the library: naive loops, direct formulas, no NTT.

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace oracle {

/// One cat-map step written out from the matrix [[1, b], [a, ab + 1]].
inline std::array<std::uint64_t, 2> cat_step(std::uint64_t x, std::uint64_t y, std::uint64_t n, std::uint64_t a,
                                             std::uint64_t b) {
  const std::uint64_t nx = (x + b * y) % n;
  const std::uint64_t ny = (a * x + (a * b + 1) * y) % n;
  return {nx, ny};
}

/// k single steps.
inline std::array<std::uint64_t, 2> cat_iterate(std::uint64_t x, std::uint64_t y, std::uint64_t n, std::uint64_t a,
                                                std::uint64_t b, std::uint64_t k) {
  for (std::uint64_t i = 0; i < k; ++i) {
    const auto p = cat_step(x, y, n, a, b);
    x = p[0];
    y = p[1];
  }
  return {x, y};
}

/// Smallest m > 0 for which m single steps return every grid point home.
inline std::uint64_t brute_force_period(std::uint64_t n, std::uint64_t a, std::uint64_t b) {
  std::vector<std::uint64_t> xs(n * n), ys(n * n);
  for (std::uint64_t i = 0; i < n * n; ++i) {
    xs[i] = i % n;
    ys[i] = i / n;
  }
  for (std::uint64_t m = 1;; ++m) {
    bool home = true;
    for (std::uint64_t i = 0; i < n * n; ++i) {
      const auto p = cat_step(xs[i], ys[i], n, a, b);
      xs[i] = p[0];
      ys[i] = p[1];
      home = home && xs[i] == i % n && ys[i] == i / n;
    }
    if (home) return m;
  }
}

/// Product in Z_m[X]/(X^n + 1) by the O(n^2) definition.
inline std::vector<std::uint64_t> negacyclic_mul(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                                                 std::uint64_t m) {
  const std::size_t n = a.size();
  std::vector<unsigned __int128> pos(n, 0), neg(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const unsigned __int128 p = static_cast<unsigned __int128>(a[i] % m) * (b[j] % m) % m;
      if (i + j < n) pos[i + j] += p;
      else neg[i + j - n] += p;
    }
  }
  std::vector<std::uint64_t> c(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto p = static_cast<std::uint64_t>(pos[k] % m);
    const auto q = static_cast<std::uint64_t>(neg[k] % m);
    c[k] = (p + m - q) % m;
  }
  return c;
}

inline std::vector<std::uint64_t> add_mod(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                                          std::uint64_t m) {
  std::vector<std::uint64_t> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = (a[i] + b[i]) % m;
  return c;
}

/// 256-bin histogram per channel for each tile x tile block, row-major tiles.
inline std::vector<std::array<std::uint32_t, 768>> tile_histograms(std::span<const std::uint8_t> rgb,
                                                                  std::size_t width, std::size_t height,
                                                                  std::size_t tile) {
  std::vector<std::array<std::uint32_t, 768>> out((width / tile) * (height / tile));
  for (auto& h : out) h.fill(0);
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      auto& h = out[(y / tile) * (width / tile) + x / tile];
      for (std::size_t c = 0; c < 3; ++c) ++h[c * 256 + rgb[(y * width + x) * 3 + c]];
    }
  }
  return out;
}

/// Mean binary cross-entropy without clamping; callers avoid p in {0, 1}.
inline double bce(std::span<const double> p, std::span<const int> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += y[i] ? -std::log(p[i]) : -std::log(1.0 - p[i]);
  return s / static_cast<double>(p.size());
}

}  // namespace oracle
