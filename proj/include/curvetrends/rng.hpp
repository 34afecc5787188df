#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>

namespace curvetrends {

// Counter-based 64-bit generator ("splitmix64-counter"): output n is the
// SplitMix64 finalizer applied to key + n * golden gamma. Jumping to any
// counter position is O(1), and independent substreams are derived by
// re-keying, so replications can run in any order or thread layout and
// still produce identical draws.
//
// Stream split rule: substream(master, s) has key = mix(master ^ mix(s + 1)).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0)
      : key_(key), counter_(counter) {}

  static constexpr const char* algorithm() { return "splitmix64-counter"; }

  // SplitMix64 finalizer (Stafford mix13 variant used by splitmix64).
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static CounterRng substream(std::uint64_t master, std::uint64_t stream) {
    return CounterRng(mix(master ^ mix(stream + 1)));
  }

  std::uint64_t next_u64() {
    std::uint64_t v = key_ + counter_ * kGamma;
    ++counter_;
    return mix(v);
  }

  // Uniform on [0,1) with 53 random bits.
  double next_uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_uniform(); }

  // Standard normal via Box-Muller; one pair of uniforms per call, the sine
  // branch is discarded so the draw count per call is fixed.
  double next_normal() {
    const double u1 = 1.0 - next_uniform();  // (0,1], keeps log finite
    const double u2 = next_uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  // Fills pairwise with both Box-Muller branches (~half the uniforms of
  // calling next_normal n times).
  void fill_normal(double* out, std::ptrdiff_t n) {
    std::ptrdiff_t i = 0;
    for (; i + 1 < n; i += 2) {
      const double u1 = 1.0 - next_uniform();
      const double u2 = next_uniform();
      const double r = std::sqrt(-2.0 * std::log(u1));
      out[i] = r * std::cos(2.0 * kPi * u2);
      out[i + 1] = r * std::sin(2.0 * kPi * u2);
    }
    if (i < n) out[i] = next_normal();
  }

  Eigen::VectorXd normal_vector(Eigen::Index n) {
    Eigen::VectorXd v(n);
    fill_normal(v.data(), n);
    return v;
  }

  Eigen::MatrixXd normal_matrix(Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXd m(rows, cols);
    fill_normal(m.data(), rows * cols);
    return m;
  }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  static constexpr double kPi = 3.141592653589793238462643383279502884;

  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace curvetrends
