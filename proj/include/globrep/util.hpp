#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace globrep {

// Thrown when user-supplied data (files, CLI arguments, tables) is malformed.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a computation would exceed an explicit size or depth budget.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Internal invariant violation; indicates a bug, not bad input.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

// Deterministic 64-bit generator (xorshift*). Identical streams on every
// platform for a given seed, unlike distributions from <random>.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545f4914f6cdd1dULL;
  }

  // Uniform-ish value in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  // Integer in [lo, hi] inclusive.
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::uint64_t state_;
};

}  // namespace globrep
