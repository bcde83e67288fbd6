#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "sdcert/rep/mat4.hpp"
#include "sdcert/rep/word.hpp"
#include "sdcert/scalars/specialize.hpp"

namespace sdcert {

/// The symbolic point: v and the two adjoined roots as elements of the
/// Q(v)-tower.
struct SymbolicPoint {
  std::shared_ptr<const QvTower> tower;
  QvElem v;
  QvElem sqrt_vm4;
  QvElem sqrt_vp8;
  std::string label;
};

SymbolicPoint symbolic_point();

template <class S>
struct PointType;
template <>
struct PointType<QvElem> {
  using type = SymbolicPoint;
};
template <>
struct PointType<QElem> {
  using type = ExactPoint;
};
template <>
struct PointType<Complex> {
  using type = NumericPoint;
};

/// rho_v(u) and rho_v(c) from the values of v, sqrt(v^2-4) and sqrt(v^2+8);
/// sqrt((v^2-4)/(v^2+8)) is taken as sqrt(v^2-4)*sqrt(v^2+8)/(v^2+8).
template <class S>
std::pair<Mat4<S>, Mat4<S>> generator_matrices(const S& v, const S& s1, const S& s2);

/// rho_v at one point: generator matrices and their inverses, all computed at
/// construction so the object is read-only afterwards.
template <class S>
class Representation {
 public:
  using Point = typename PointType<S>::type;

  explicit Representation(Point p);

  const Point& point() const { return point_; }
  const std::string& label() const { return point_.label; }
  const Mat4<S>& u() const { return u_; }
  const Mat4<S>& c() const { return c_; }
  Mat4<S> identity() const { return Mat4<S>::identity(u_.like()); }

  /// Image of a single letter of the {u, c} alphabet.
  const Mat4<S>& letter(char x) const;

  /// Left-to-right product over the expanded word.
  Mat4<S> evaluate(const Word& w) const;
  /// Same, without reducing u-exponents mod 4.
  Mat4<S> evaluate_unreduced(const Word& w) const;

 private:
  Mat4<S> product(const Word& expanded) const;

  Point point_;
  Mat4<S> u_, c_, U_, C_;
};

using SymbolicRep = Representation<QvElem>;
using ExactRep = Representation<QElem>;
using NumericRep = Representation<Complex>;

/// Shared symbolic representation (built once).
std::shared_ptr<const SymbolicRep> symbolic_rep();

/// A parsed context: "symbolic", "v=<rational>", "v=i*sqrt(2)" or
/// "numeric:v=<decimal>".
using AnyRep = std::variant<std::shared_ptr<const SymbolicRep>, std::shared_ptr<const ExactRep>,
                            std::shared_ptr<const NumericRep>>;
AnyRep parse_context(std::string_view text);

/// The exact representation at v = i*sqrt(2) over Q[sqrt(-2), sqrt(-6), sqrt(6)].
std::shared_ptr<const ExactRep> exact_rep_isqrt2();
std::shared_ptr<const ExactRep> exact_rep(const Rational& v0);
std::shared_ptr<const NumericRep> numeric_rep(const Complex& v0);

extern template class Representation<QvElem>;
extern template class Representation<QElem>;
extern template class Representation<Complex>;

}  // namespace sdcert
