#pragma once

#include <cstdint>
#include <random>

namespace hypbarrier::numeric {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kLn2 = 0.69314718055994530942;

// Arguments to cosh/sinh are clamped to this magnitude; documented validity of
// the geometry layer is for distances up to 500.
inline constexpr double kHyperbolicArgCap = 700.0;

double cosh_capped(double x);
double sinh_capped(double x);

/// arcosh(1 + x) for x >= 0 without the cancellation of acosh near 1.
double arcosh1p(double x);

/// log(cosh(x)), finite for all finite x.
double log_cosh(double x);

/// log(sinh(x)) for x > 0, finite for all finite x.
double log_sinh(double x);

/// asinh(exp(log_x)), finite for all finite log_x.
double asinh_from_log(double log_x);

/// acosh(exp(log_x)) for log_x >= 0, finite for all finite log_x.
double acosh_from_log(double log_x);

/// arcosh(e^r) = r + log(1 + sqrt(1 - e^{-2r})), overflow-free.
double arcosh_exp(double r);

// Deterministic uniform doubles in [0, 1). mt19937_64's output sequence is
// fixed by the standard; the conversion below is too, unlike
// std::uniform_real_distribution.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hypbarrier::numeric
