#pragma once

// Eigen traits for MPFR reals. Boost's adaptor predates Eigen 3.4 (no
// infinity()/quiet_NaN()), so the traits are given here for a variant
// without expression templates.

#include <Eigen/Core>
#include <boost/multiprecision/mpfr.hpp>
#include <limits>

namespace sdcert {
using EReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                            boost::multiprecision::et_off>;
}

namespace Eigen {

template <>
struct NumTraits<sdcert::EReal> : GenericNumTraits<sdcert::EReal> {
  using Real = sdcert::EReal;
  using NonInteger = sdcert::EReal;
  using Nested = sdcert::EReal;
  using Literal = sdcert::EReal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 20,
    AddCost = 30,
    MulCost = 40
  };
  static Real epsilon() { return std::numeric_limits<Real>::epsilon(); }
  static Real dummy_precision() { return epsilon() * 1000; }
  static Real highest() { return (std::numeric_limits<Real>::max)(); }
  static Real lowest() { return std::numeric_limits<Real>::lowest(); }
  static Real infinity() { return std::numeric_limits<Real>::infinity(); }
  static Real quiet_NaN() { return std::numeric_limits<Real>::quiet_NaN(); }
  static int digits10() { return static_cast<int>(Real::default_precision()); }
};

}  // namespace Eigen
