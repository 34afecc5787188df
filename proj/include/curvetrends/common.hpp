#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace curvetrends {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IntMatrix = Eigen::MatrixXi;

// Failure categories surfaced through Error::code(). Library functions throw;
// the CLI maps these to exit codes.
enum class errc {
  invalid_argument,
  incompatible_basis,
  underdetermined_fit,
  rank_deficient_fit,
  insufficient_data,
  too_short,
  incomplete_pair,
  numerical_failure,
  not_positive_definite,
  degenerate_spectrum,
  degenerate_moments,
  degenerate_truth,
  io_error,
};

inline const char* to_string(errc c) {
  switch (c) {
    case errc::invalid_argument: return "invalid-argument";
    case errc::incompatible_basis: return "incompatible-basis";
    case errc::underdetermined_fit: return "underdetermined-fit";
    case errc::rank_deficient_fit: return "rank-deficient-fit";
    case errc::insufficient_data: return "insufficient-data";
    case errc::too_short: return "too-short";
    case errc::incomplete_pair: return "incomplete-pair";
    case errc::numerical_failure: return "numerical-failure";
    case errc::not_positive_definite: return "not-positive-definite";
    case errc::degenerate_spectrum: return "degenerate-spectrum";
    case errc::degenerate_moments: return "degenerate-moments";
    case errc::degenerate_truth: return "degenerate-truth";
    case errc::io_error: return "io-error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace curvetrends
