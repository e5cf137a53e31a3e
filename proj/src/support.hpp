#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gctuf {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Error taxonomy surfaced through the C API and the CLI exit codes.
enum class errc {
  parse,        // malformed input text
  invalid,      // contract violation (bad dimensions, group mismatch, ...)
  budget,       // enumeration/search cap exceeded
  unsupported,  // valid input outside the guaranteed regime (e.g. depth > 3)
  internal,     // invariant broken; indicates a bug
};

class error : public std::runtime_error {
 public:
  error(errc kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  errc kind() const { return kind_; }

 private:
  errc kind_;
};

[[noreturn]] inline void fail(errc kind, const std::string& msg) { throw error(kind, msg); }

inline void require(bool cond, errc kind, const std::string& msg) {
  if (!cond) fail(kind, msg);
}

inline Int int_abs(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int int_gcd(Int a, Int b) {
  a = int_abs(a);
  b = int_abs(b);
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Floor division with sign convention matching mathematical floor.
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

inline Int rat_floor(const Rat& q) {
  return floor_div(numerator(q), denominator(q));
}

inline bool rat_is_integer(const Rat& q) { return denominator(q) == 1; }

inline int64_t to_int64(const Int& v) {
  require(v >= std::numeric_limits<int64_t>::min() && v <= std::numeric_limits<int64_t>::max(),
          errc::budget, "integer exceeds 64-bit range");
  return static_cast<int64_t>(v);
}

// Deterministic generator used by every stochastic component. A single root
// seed is forked per component so that outputs are reproducible regardless of
// evaluation order.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ULL) {}

  uint64_t next() {
    // splitmix64
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [lo, hi], inclusive. Modulo bias is irrelevant here.
  int64_t uniform(int64_t lo, int64_t hi) {
    if (lo >= hi) return lo;
    uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int64_t>(next() % span);
  }

  bool coin() { return (next() & 1) != 0; }

  // Independent stream derived from this one; `tag` distinguishes components.
  Rng fork(uint64_t tag) {
    uint64_t h = next() ^ (tag * 0xda942042e4dd58b5ULL);
    return Rng(h);
  }

 private:
  uint64_t state_;
};

std::string int_to_string(const Int& v);
std::string rat_to_string(const Rat& v);

}  // namespace gctuf
