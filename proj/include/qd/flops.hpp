#pragma once

#include <cstdint>

namespace qd::flops {

// Thread-local tally of floating-point operations executed by the
// instrumented kernels. Each kernel adds its own op count; negations
// are sign flips and do not count.
inline thread_local std::uint64_t tally = 0;

inline void add(std::uint64_t n) { tally += n; }

inline std::uint64_t count() { return tally; }

inline void reset() { tally = 0; }

// Counts the flops executed by a callable.
template <class F>
std::uint64_t measure(F&& f) {
  const std::uint64_t before = tally;
  f();
  return tally - before;
}

}  // namespace qd::flops
