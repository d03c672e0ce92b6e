#ifndef CENSTAB_RING_HPP
#define CENSTAB_RING_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace censtab {

// Coefficient ring: the integers, or a prime field F_p.
struct RingSpec {
  enum class Kind { Z, Fp } kind = Kind::Z;
  std::int64_t p = 0;  // prime modulus when kind == Fp

  static RingSpec integers() { return RingSpec{Kind::Z, 0}; }
  static RingSpec prime_field(std::int64_t p);

  bool is_field() const { return kind == Kind::Fp; }
  bool operator==(const RingSpec& o) const { return kind == o.kind && p == o.p; }
  bool operator!=(const RingSpec& o) const { return !(*this == o); }
  std::string name() const { return is_field() ? "F" + std::to_string(p) : "Z"; }
};

struct InvalidInput : std::runtime_error {
  explicit InvalidInput(const std::string& m) : std::runtime_error(m) {}
};

struct ResourceLimit : std::runtime_error {
  explicit ResourceLimit(const std::string& m) : std::runtime_error(m) {}
};

inline bool is_prime64(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline RingSpec RingSpec::prime_field(std::int64_t p) {
  if (p < 2 || p > (std::int64_t(1) << 31) || !is_prime64(p))
    throw InvalidInput("modulus must be a prime < 2^31, got " + std::to_string(p));
  return RingSpec{Kind::Fp, p};
}

}  // namespace censtab

#endif
