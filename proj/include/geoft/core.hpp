#pragma once

// Shared plumbing: error taxonomy, deterministic reductions, a reproducible
// RNG, and the thread cap honored by the data-parallel loops.

#include <complex>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace geoft {

using Complex = std::complex<double>;
inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

enum class ErrorKind {
  NonSquare,
  Degenerate,
  DimensionMismatch,
  NotSymmetric,
  NotPositiveDefinite,
  NotGridRealizable,
  UnsupportedMode,
  GridMismatch,
  AxisOutOfRange,
  IncommensurateWave,
  ParamOutOfRange,
  RadiusTooLarge,
  TailBoundViolated,
  EmptyFrequencyList,
  UnknownCheck,
  ParseError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

// ---------------------------------------------------------------------------
// Deterministic summation.
//
// Every reduction in the library uses the same fixed-shape binary tree over
// row-major element order, independent of thread count, so results are
// bitwise reproducible run to run. `term(i)` is evaluated exactly once.

namespace detail {
inline constexpr std::size_t kPairwiseLeaf = 16;

template <typename T, typename F>
T pairwise_sum_impl(std::size_t lo, std::size_t hi, const F& term) {
  const std::size_t n = hi - lo;
  if (n <= kPairwiseLeaf) {
    T acc = term(lo);
    for (std::size_t i = lo + 1; i < hi; ++i) acc += term(i);
    return acc;
  }
  const std::size_t mid = lo + n / 2;
  return pairwise_sum_impl<T>(lo, mid, term) +
         pairwise_sum_impl<T>(mid, hi, term);
}
}  // namespace detail

template <typename T, typename F>
T pairwise_sum(std::size_t count, const F& term) {
  if (count == 0) return T{};
  return detail::pairwise_sum_impl<T>(0, count, term);
}

template <typename T>
T pairwise_sum(const std::vector<T>& values) {
  return pairwise_sum<T>(values.size(), [&](std::size_t i) { return values[i]; });
}

// ---------------------------------------------------------------------------
// Thread cap. GEOFT_THREADS limits the worker count for embarrassingly
// parallel per-output loops; each output element is always computed serially
// by one worker, so the values do not depend on the setting.

inline unsigned thread_limit() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("GEOFT_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<unsigned>(std::min<long>(v, 256));
  }
  return hw;
}

template <typename F>
void parallel_for(std::size_t count, const F& body) {
  const unsigned want = thread_limit();
  if (want <= 1 || count < 64) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(want, count));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = count * w / workers;
    const std::size_t hi = count * (w + 1) / workers;
    pool.emplace_back([lo, hi, &body] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

// ---------------------------------------------------------------------------
// Reproducible RNG. mt19937_64 raw draws mapped to doubles by hand; the
// standard-library distributions are implementation-defined and would break
// byte-identical reports across toolchains.

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // uniform in [0, 1)
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // standard normal via Box-Muller (fixed draw order)
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(gen_() % span);
  }

 private:
  std::mt19937_64 gen_;
};

// Stable per-check seed derivation (splitmix-style mixing of a suite seed
// with a label hash), so a check draws the same stream no matter which
// filtered subset it runs in.
inline std::uint64_t derive_seed(std::uint64_t base, const std::string& label) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : label) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::uint64_t z = base + 0x9e3779b97f4a7c15ull + h;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace geoft
