#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace forminv {

/// Multi-index exponent vector. Entries are non-negative for ordinary series.
using Exponent = std::vector<int>;

/// Total degree used to mark a series as an exact polynomial (no truncation).
inline constexpr int kExact = 1'000'000;
/// Order of the zero series.
inline constexpr int kInfiniteOrder = 2'000'000;

/// Maximum number of variables supported by the packed monomial key.
inline constexpr int kMaxVars = 7;
/// Maximum per-variable exponent and total degree representable in a key.
inline constexpr int kMaxKeyDegree = 255;

/// Packed monomial: total degree in the top byte, then one byte per variable
/// (z_1 first). Ascending key order is graded: degree first, then
/// lexicographic on (e_1, e_2, ...). Multiplication of monomials is key addition.
using MonoKey = std::uint64_t;

namespace mono {

constexpr int shift_of(int var) { return 8 * (kMaxVars - 1 - var); }

constexpr int degree(MonoKey k) { return static_cast<int>(k >> 56); }

constexpr int exponent(MonoKey k, int var) { return static_cast<int>((k >> shift_of(var)) & 0xffu); }

constexpr MonoKey unit(int var) { return (MonoKey{1} << 56) | (MonoKey{1} << shift_of(var)); }

/// Throws std::invalid_argument for negative entries, n > kMaxVars, or overflow.
MonoKey pack(std::span<const int> e);
Exponent unpack(MonoKey k, int nvars);

/// Saturating helpers for truncation arithmetic; anything >= kExact is exact.
constexpr int clamp_trunc(long long t) { return t >= kExact ? kExact : static_cast<int>(t); }

}  // namespace mono

/// "z" for one variable, otherwise "z1".."zn".
std::vector<std::string> default_var_names(int nvars);

}  // namespace forminv
