#ifndef CENSTAB_INTEGERS_HPP
#define CENSTAB_INTEGERS_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Core>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace censtab {

// Arbitrary-precision signed integer.  Expression templates are disabled so
// the type behaves like a plain scalar inside Eigen expressions.
using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;

inline std::string to_string(const Int& v) { return v.str(); }

// Thrown internally when the int64 fast path would wrap; callers re-run the
// same computation with Int.
struct Int64Overflow : std::runtime_error {
  Int64Overflow() : std::runtime_error("int64 fast path overflow") {}
};

// Scalar policy used by the templated elimination / span routines.  The Int
// instantiation never throws; the int64_t one throws Int64Overflow instead of
// producing a wrapped value.
template <class T>
struct ScalarOps;

template <>
struct ScalarOps<Int> {
  static Int add(const Int& a, const Int& b) { return a + b; }
  static Int sub(const Int& a, const Int& b) { return a - b; }
  static Int mul(const Int& a, const Int& b) { return a * b; }
  static Int neg(const Int& a) { return -a; }
  static bool fits(const Int&) { return true; }
};

template <>
struct ScalarOps<std::int64_t> {
  using T = std::int64_t;
  static T add(T a, T b) {
    T r;
    if (__builtin_add_overflow(a, b, &r)) throw Int64Overflow{};
    return r;
  }
  static T sub(T a, T b) {
    T r;
    if (__builtin_sub_overflow(a, b, &r)) throw Int64Overflow{};
    return r;
  }
  static T mul(T a, T b) {
    T r;
    if (__builtin_mul_overflow(a, b, &r)) throw Int64Overflow{};
    return r;
  }
  static T neg(T a) {
    if (a == INT64_MIN) throw Int64Overflow{};
    return -a;
  }
  static bool fits(T) { return true; }
};

// Floor division/remainder (cpp_int's operator/ truncates toward zero).
inline Int floordiv(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int floormod(const Int& a, const Int& b) { return a - floordiv(a, b) * b; }

}  // namespace censtab

namespace Eigen {

template <>
struct NumTraits<censtab::Int> : GenericNumTraits<censtab::Int> {
  using Real = censtab::Int;
  using NonInteger = censtab::Int;
  using Nested = censtab::Int;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 60,
    MulCost = 60,
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

#endif
