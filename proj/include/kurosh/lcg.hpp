#pragma once

#include <cstdint>

namespace kurosh {

// 64-bit linear congruential generator; outputs the high 32 bits of the state.
class Lcg {
 public:
  explicit Lcg(std::uint64_t seed = 0) : state_(seed) {}

  std::uint64_t next() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return state_ >> 32;
  }

  // Uniform-ish integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace kurosh
