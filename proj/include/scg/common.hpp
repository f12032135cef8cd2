#ifndef SCG_COMMON_HPP
#define SCG_COMMON_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace scg {

using Point = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape disagreement between operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Invalid construction parameters or violated preconditions.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Operation not supported by this set kind (e.g. exact projection).
class CapabilityError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

// Deterministic 64-bit generator (SplitMix64). Used for all sampling so that
// traces are byte-reproducible across platforms; std:: distributions are not
// bit-portable.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // standard normal via Box-Muller (portable, unlike std::normal_distribution)
  double normal();

  Point uniform_vector(Eigen::Index n, double lo, double hi);
  Point normal_vector(Eigen::Index n);

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

void require_finite(const Point& x, const char* what);

}  // namespace scg

#endif  // SCG_COMMON_HPP
