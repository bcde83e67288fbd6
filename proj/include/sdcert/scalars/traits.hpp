#pragma once

#include "sdcert/scalars/numeric.hpp"
#include "sdcert/scalars/tower.hpp"

namespace sdcert {

// Uniform access to the scalar types matrices are built over. Exact scalars
// are tower elements; numeric ones are Complex. Constants are made "like" an
// existing element so that they land in the same tower.
template <class S>
struct ScalarTraits;

template <class F>
struct ScalarTraits<TowerElem<F>> {
  using S = TowerElem<F>;
  static constexpr bool exact = true;
  static S zero(const S& like) { return like.tower()->zero(); }
  static S one(const S& like) { return like.tower()->one(); }
  static S from_rational(const S& like, const Rational& q) { return like.tower()->constant(F(q)); }
  static bool is_zero(const S& x) { return x.is_zero(); }
  static std::string to_string(const S& x) { return x.to_string(); }
};

template <>
struct ScalarTraits<Complex> {
  using S = Complex;
  static constexpr bool exact = false;
  static S zero(const S&) { return Complex(); }
  static S one(const S&) { return Complex(1); }
  static S from_rational(const S&, const Rational& q) { return Complex(to_real(q)); }
  static bool is_zero(const S& x) { return x.is_zero(); }
  static std::string to_string(const S& x) { return x.to_string(30); }
};

}  // namespace sdcert
