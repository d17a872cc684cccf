#include "hypbarrier/numeric.hpp"

#include <algorithm>
#include <cmath>

#include "hypbarrier/error.hpp"

namespace hypbarrier {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "INVALID_ARGUMENT";
    case ErrorCode::kNumericalDrift:
      return "NUMERICAL_DRIFT";
    case ErrorCode::kOutsideDisk:
      return "OUTSIDE_DISK";
    case ErrorCode::kGeodesicMissesDomain:
      return "GEODESIC_MISSES_DOMAIN";
    case ErrorCode::kInvalidGroup:
      return "INVALID_GROUP";
    case ErrorCode::kUnboundedDomain:
      return "UNBOUNDED_DOMAIN";
    case ErrorCode::kParse:
      return "PARSE_ERROR";
  }
  return "UNKNOWN";
}

namespace numeric {

double cosh_capped(double x) {
  return std::cosh(std::clamp(x, -kHyperbolicArgCap, kHyperbolicArgCap));
}

double sinh_capped(double x) {
  return std::sinh(std::clamp(x, -kHyperbolicArgCap, kHyperbolicArgCap));
}

double arcosh1p(double x) {
  x = std::max(x, 0.0);
  return std::log1p(x + std::sqrt(x * (2.0 + x)));
}

double log_cosh(double x) {
  const double a = std::fabs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - kLn2;
}

double log_sinh(double x) {
  // sinh(x) = e^x (1 - e^{-2x}) / 2
  return x + std::log(-std::expm1(-2.0 * x)) - kLn2;
}

double asinh_from_log(double log_x) {
  if (log_x < 300.0) return std::asinh(std::exp(log_x));
  // asinh(y) = log(2y) + O(y^-2)
  return log_x + kLn2;
}

double acosh_from_log(double log_x) {
  if (log_x < 300.0) return std::acosh(std::exp(log_x));
  return log_x + kLn2;
}

double arcosh_exp(double r) {
  // 1 - e^{-2r} evaluated as -expm1(-2r) keeps precision for small r.
  return r + std::log1p(std::sqrt(-std::expm1(-2.0 * r)));
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

}  // namespace numeric
}  // namespace hypbarrier
