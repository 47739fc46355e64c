#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace gridnav {

// Error codes cover every rejection path in the library; tests match on
// the code rather than the message text.
enum class Err {
  MissingManifest,
  BadManifest,
  PanoramaMismatch,
  InvariantViolation,
  UnwritablePath,
  BadPointCloud,
  EmptyBand,
  NonFinitePoint,
  StartBlocked,
  StartOutsideGrid,
  Disconnected,
  BadSpec,
  BadArgument,
  ShapeMismatch,
  StepAfterDone,
  UnknownScene,
  SceneRejected,
  HeadExists,
  BadCheckpoint,
  BadConfig,
};

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

// Unreachable-state sentinel for shortest-path queries.
inline constexpr int kUnreachable = std::numeric_limits<int>::max();

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

// Exact 90-degree clockwise rotation (N -> E). Sign/permute only, so
// cross() and dot() of two rotated vectors are bit-identical to the
// originals; the renderer's quadrant symmetry tests rely on this.
inline Vec2 rot90cw(Vec2 v) { return {v.y, -v.x}; }

// splitmix64, used to derive independent seeds from a master seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t salt = 0) {
  return std::mt19937_64(mix_seed(seed, salt));
}

// FNV-1a, for provenance hashes of input files and parameter blocks.
inline std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t h = 0xcbf29ce484222325ULL) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

}  // namespace gridnav
