#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace ff3 {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

// Degree of the zero polynomial. Absorbing under degree addition; below every
// integer degree. INT_MIN/4 keeps small multiples free of overflow.
inline constexpr int kNegInfDeg = std::numeric_limits<int>::min() / 4;

inline int deg_add(int a, int b) {
  return (a == kNegInfDeg || b == kNegInfDeg) ? kNegInfDeg : a + b;
}

inline int deg_mul(int k, int d) { return d == kNegInfDeg ? kNegInfDeg : k * d; }

[[noreturn]] inline void assert_fail(const char* file, int line, const char* what) {
  throw std::logic_error(std::string(file) + ":" + std::to_string(line) +
                         ": internal invariant violated: " + what);
}

// Always-on invariant check; failures signal bugs, not bad input.
#define FF3_ASSERT(cond)                                   \
  do {                                                     \
    if (!(cond)) ::ff3::assert_fail(__FILE__, __LINE__, #cond); \
  } while (0)

}  // namespace ff3
