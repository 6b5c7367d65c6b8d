#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

namespace cubecut {

inline constexpr int kMaxBinomialN = 64;

namespace detail {

using PascalTable = std::array<std::array<std::uint64_t, kMaxBinomialN + 1>, kMaxBinomialN + 1>;

constexpr PascalTable make_pascal_table() {
  PascalTable t{};
  for (int n = 0; n <= kMaxBinomialN; ++n) {
    t[n][0] = 1;
    for (int r = 1; r <= n; ++r) {
      t[n][r] = t[n - 1][r - 1] + (r <= n - 1 ? t[n - 1][r] : 0);
    }
  }
  return t;
}

inline constexpr PascalTable kPascal = make_pascal_table();

}  // namespace detail

// Exact C(n, r) for 0 <= n <= 64; zero when r < 0 or r > n.
constexpr std::uint64_t binomial(int n, int r) {
  if (n < 0 || n > kMaxBinomialN) {
    throw std::out_of_range("binomial: n outside [0, 64]");
  }
  if (r < 0 || r > n) return 0;
  return detail::kPascal[n][r];
}

}  // namespace cubecut
