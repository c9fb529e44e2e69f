#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace kurosh {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Raised for invalid mathematical input or violated preconditions.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::size_t hash_integer(const Integer& x) {
  static const Integer lo = std::numeric_limits<long long>::min();
  static const Integer hi = std::numeric_limits<long long>::max();
  if (x >= lo && x <= hi) {
    return std::hash<long long>{}(x.convert_to<long long>());
  }
  return std::hash<std::string>{}(x.str());
}

inline void hash_combine(std::size_t& seed, std::size_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

inline std::size_t to_index(const Integer& x) {
  return x.convert_to<std::size_t>();
}

}  // namespace kurosh
