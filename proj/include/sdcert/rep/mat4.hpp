#pragma once

#include <array>
#include <string>

#include "sdcert/errors.hpp"
#include "sdcert/scalars/traits.hpp"

namespace sdcert {

/// 4x4 matrix, row-major, over a tower scalar or Complex.
template <class S>
class Mat4 {
 public:
  using Scalar = S;
  using Traits = ScalarTraits<S>;

  Mat4() = default;
  explicit Mat4(std::array<S, 16> e) : e_(std::move(e)) {}

  static Mat4 filled(const S& value) {
    std::array<S, 16> e;
    e.fill(value);
    return Mat4(std::move(e));
  }
  static Mat4 zero(const S& like) { return filled(Traits::zero(like)); }
  static Mat4 identity(const S& like) {
    Mat4 m = zero(like);
    for (int i = 0; i < 4; ++i) m(i, i) = Traits::one(like);
    return m;
  }

  S& operator()(int i, int j) { return e_[static_cast<std::size_t>(4 * i + j)]; }
  const S& operator()(int i, int j) const { return e_[static_cast<std::size_t>(4 * i + j)]; }
  const std::array<S, 16>& entries() const { return e_; }
  const S& like() const { return e_[0]; }

  friend Mat4 operator*(const Mat4& a, const Mat4& b) {
    Mat4 r = zero(a.like());
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) {
        const S& aik = a(i, k);
        if (Traits::is_zero(aik)) continue;
        for (int j = 0; j < 4; ++j)
          if (!Traits::is_zero(b(k, j))) r(i, j) += aik * b(k, j);
      }
    return r;
  }
  friend Mat4 operator+(Mat4 a, const Mat4& b) {
    for (std::size_t i = 0; i < 16; ++i) a.e_[i] += b.e_[i];
    return a;
  }
  friend Mat4 operator-(Mat4 a, const Mat4& b) {
    for (std::size_t i = 0; i < 16; ++i) a.e_[i] -= b.e_[i];
    return a;
  }
  Mat4 scaled(const S& k) const {
    Mat4 r = *this;
    for (auto& x : r.e_) x = x * k;
    return r;
  }

  Mat4 transpose() const {
    Mat4 r = *this;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) r(i, j) = (*this)(j, i);
    return r;
  }

  S trace() const { return e_[0] + e_[5] + e_[10] + e_[15]; }

  /// Determinant by Laplace expansion along the top two rows.
  S det() const {
    const Mat4& m = *this;
    auto minor2 = [&](int r0, int r1, int c0, int c1) {
      return m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0);
    };
    // Column pairs in lexicographic order with their complements.
    static constexpr int pairs[6][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2},
                                        {1, 2, 0, 3}, {1, 3, 0, 2}, {2, 3, 0, 1}};
    static constexpr int signs[6] = {1, -1, 1, 1, -1, 1};
    S d = Traits::zero(like());
    for (int k = 0; k < 6; ++k) {
      const auto& p = pairs[k];
      S term = minor2(0, 1, p[0], p[1]) * minor2(2, 3, p[2], p[3]);
      if (signs[k] > 0) d += term;
      else d -= term;
    }
    return d;
  }

  /// Adjugate (transposed cofactor matrix).
  Mat4 adjugate() const {
    Mat4 r = zero(like());
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        int rows[3], cols[3];
        for (int a = 0, k = 0; a < 4; ++a)
          if (a != i) rows[k++] = a;
        for (int b = 0, k = 0; b < 4; ++b)
          if (b != j) cols[k++] = b;
        const Mat4& m = *this;
        S c = m(rows[0], cols[0]) * (m(rows[1], cols[1]) * m(rows[2], cols[2]) -
                                     m(rows[1], cols[2]) * m(rows[2], cols[1])) -
              m(rows[0], cols[1]) * (m(rows[1], cols[0]) * m(rows[2], cols[2]) -
                                     m(rows[1], cols[2]) * m(rows[2], cols[0])) +
              m(rows[0], cols[2]) * (m(rows[1], cols[0]) * m(rows[2], cols[1]) -
                                     m(rows[1], cols[1]) * m(rows[2], cols[0]));
        r(j, i) = ((i + j) % 2 == 0) ? c : -c;
      }
    return r;
  }

  /// Inverse as adjugate over determinant.
  Mat4 inverse() const {
    const S d = det();
    if (Traits::is_zero(d)) throw DivisionByZero("singular 4x4 matrix");
    Mat4 a = adjugate();
    for (auto& x : a.e_) x = x / d;
    return a;
  }

  bool is_zero() const {
    for (const auto& x : e_)
      if (!Traits::is_zero(x)) return false;
    return true;
  }

  friend bool operator==(const Mat4& a, const Mat4& b) { return a.e_ == b.e_; }

  std::string to_string() const {
    std::string s = "[";
    for (int i = 0; i < 4; ++i) {
      s += i == 0 ? "[" : ", [";
      for (int j = 0; j < 4; ++j) {
        if (j != 0) s += ", ";
        s += Traits::to_string((*this)(i, j));
      }
      s += "]";
    }
    return s + "]";
  }

 private:
  std::array<S, 16> e_;
};

/// Max-norm of a numeric matrix.
inline Real max_abs(const Mat4<Complex>& m) {
  Real r = 0;
  for (const auto& x : m.entries()) r = std::max(r, x.abs());
  return r;
}

/// Number of non-zero entries (exact).
template <class S>
int nonzero_count(const Mat4<S>& m) {
  int n = 0;
  for (const auto& x : m.entries())
    if (!ScalarTraits<S>::is_zero(x)) ++n;
  return n;
}

}  // namespace sdcert
