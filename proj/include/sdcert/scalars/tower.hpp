#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "sdcert/errors.hpp"
#include "sdcert/scalars/rational.hpp"
#include "sdcert/scalars/rational_function.hpp"

namespace sdcert {

template <class F>
class TowerElem;

/// Bitmask over tower layers; bit i stands for the i-th square root.
using LayerMask = std::uint32_t;

/// An iterated quadratic extension F(sqrt d1, ..., sqrt dk) of a base field F
/// (Q or Q(v)).
///
/// Layers are classified when the tower is built. A layer whose
/// discriminant is zero is collapsed to 0. A layer whose discriminant is
/// a square in the part of the tower built so far (d * prod_{j in S} d_j a
/// square in F for some set S of earlier active layers) is collapsed to the
/// corresponding element. Only the remaining active layers carry
/// coefficients, so the ring is always a field.
template <class F>
class Tower : public std::enable_shared_from_this<Tower<F>> {
 public:
  enum class LayerKind { Active, Zero, Collapsed };

  struct Layer {
    F disc;
    std::string name;
    LayerKind kind = LayerKind::Active;
    int active_index = -1;         // bit position when active
    std::vector<F> collapsed_value;  // coefficients over active masks when collapsed
  };

  static std::shared_ptr<const Tower> make(const std::vector<F>& discs,
                                           const std::vector<std::string>& names = {}) {
    return std::shared_ptr<const Tower>(new Tower(discs, names));
  }

  std::size_t num_layers() const { return layers_.size(); }
  std::size_t num_active() const { return active_.size(); }
  /// Number of coefficients carried by an element.
  std::size_t dim() const { return std::size_t{1} << active_.size(); }
  const Layer& layer(std::size_t i) const { return layers_.at(i); }
  /// Declared layer index of the j-th active generator.
  std::size_t active_layer(std::size_t j) const { return active_.at(j); }
  /// Product of the active discriminants selected by an active mask.
  const F& mask_product(LayerMask active_mask) const { return mask_products_[active_mask]; }

  /// Translates a mask over declared layers into one over active layers.
  /// Zero layers are dropped; negating a collapsed non-zero root is not a
  /// field automorphism and is refused.
  LayerMask to_active_mask(LayerMask declared) const {
    LayerMask m = 0;
    for (std::size_t i = 0; i < layers_.size(); ++i) {
      if ((declared & (LayerMask{1} << i)) == 0) continue;
      switch (layers_[i].kind) {
        case LayerKind::Active:
          m |= LayerMask{1} << layers_[i].active_index;
          break;
        case LayerKind::Zero:
          break;
        case LayerKind::Collapsed:
          throw DegenerateContext("layer " + layers_[i].name +
                                  " is collapsed into the base; it has no Galois action");
      }
    }
    if ((declared >> layers_.size()) != 0) throw Error("Galois mask names a non-existent layer");
    return m;
  }

  std::string monomial_name(LayerMask active_mask) const {
    std::string s;
    for (std::size_t j = 0; j < active_.size(); ++j) {
      if ((active_mask & (LayerMask{1} << j)) == 0) continue;
      if (!s.empty()) s += "*";
      s += layers_[active_[j]].name;
    }
    return s;
  }

  TowerElem<F> zero() const;
  TowerElem<F> one() const;
  TowerElem<F> constant(const F& c) const;
  /// The element sqrt(d_i) for declared layer i.
  TowerElem<F> root(std::size_t i) const;
  /// The active generator monomial prod_{j in mask} sqrt(d_j).
  TowerElem<F> monomial(LayerMask active_mask) const;

  /// Structural identity: same discriminants in the same order.
  bool same_as(const Tower& o) const {
    if (this == &o) return true;
    if (layers_.size() != o.layers_.size()) return false;
    for (std::size_t i = 0; i < layers_.size(); ++i)
      if (!(layers_[i].disc == o.layers_[i].disc)) return false;
    return true;
  }

  std::string describe() const {
    std::string s = "[";
    for (std::size_t i = 0; i < layers_.size(); ++i) {
      if (i != 0) s += ", ";
      s += layers_[i].disc.to_string();
      if (layers_[i].kind == LayerKind::Zero) s += " (zero)";
      if (layers_[i].kind == LayerKind::Collapsed) s += " (collapsed)";
    }
    return s + "]";
  }

 private:
  Tower(const std::vector<F>& discs, const std::vector<std::string>& names) {
    rebuild_products();
    for (std::size_t i = 0; i < discs.size(); ++i) {
      Layer L;
      L.disc = discs[i];
      L.name = i < names.size() ? names[i] : "sqrt(" + discs[i].to_string() + ")";
      classify(L);
      layers_.push_back(std::move(L));
      rebuild_products();
    }
  }

  void rebuild_products() {
    mask_products_.assign(dim(), F(1));
    for (LayerMask m = 1; m < dim(); ++m) {
      const int low = std::countr_zero(m);
      mask_products_[m] = mask_products_[m & (m - 1)] * layers_[active_[low]].disc;
    }
  }

  void classify(Layer& L) {
    if (L.disc.is_zero()) {
      L.kind = LayerKind::Zero;
      return;
    }
    for (LayerMask s = 0; s < dim(); ++s) {
      const F& ps = mask_products_[s];
      auto r = (L.disc * ps).sqrt_exact();
      if (!r) continue;
      // sqrt(d) = sign * r * prod_{S} sqrt(d_j) / prod_{S} d_j
      int sign = 1;
      if constexpr (std::is_same_v<F, Rational>) {
        // Principal branches: sqrt of a negative rational is i times a
        // positive real, so the candidate has phase (-i)^m with m the number
        // of negative discriminants in S.
        int m = 0;
        for (std::size_t j = 0; j < active_.size(); ++j)
          if ((s & (LayerMask{1} << j)) != 0 && layers_[active_[j]].disc.sign() < 0) ++m;
        sign = (m % 4 == 0 || m % 4 == 3) ? 1 : -1;
      }
      L.kind = LayerKind::Collapsed;
      L.collapsed_value.assign(dim(), F(0));
      F coef = *r / ps;
      if (sign < 0) coef = -coef;
      L.collapsed_value[s] = coef;
      return;
    }
    L.kind = LayerKind::Active;
    L.active_index = static_cast<int>(active_.size());
    active_.push_back(layers_.size());
  }

  std::vector<Layer> layers_;
  std::vector<std::size_t> active_;
  std::vector<F> mask_products_;
};

/// Element of a Tower: one base-field coefficient per active monomial.
template <class F>
class TowerElem {
 public:
  using Field = F;
  using TowerPtr = std::shared_ptr<const Tower<F>>;

  TowerElem() = default;
  TowerElem(TowerPtr t, std::vector<F> coeffs) : t_(std::move(t)), c_(std::move(coeffs)) {
    assert(t_ && c_.size() == t_->dim());
  }

  const TowerPtr& tower() const { return t_; }
  const std::vector<F>& coeffs() const { return c_; }
  const F& coeff(LayerMask active_mask) const { return c_.at(active_mask); }

  bool is_zero() const {
    for (const auto& c : c_)
      if (!c.is_zero()) return false;
    return true;
  }
  /// True when only the constant coefficient can be non-zero.
  bool in_base() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return false;
    return true;
  }
  bool is_one() const { return in_base() && c_[0].is_one(); }
  const F& base_part() const { return c_.front(); }

  TowerElem& operator+=(const TowerElem& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!o.c_[i].is_zero()) c_[i] += o.c_[i];
    return *this;
  }
  TowerElem& operator-=(const TowerElem& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!o.c_[i].is_zero()) c_[i] -= o.c_[i];
    return *this;
  }
  friend TowerElem operator+(TowerElem a, const TowerElem& b) { return a += b; }
  friend TowerElem operator-(TowerElem a, const TowerElem& b) { return a -= b; }
  TowerElem operator-() const {
    TowerElem r = *this;
    for (auto& c : r.c_)
      if (!c.is_zero()) c = -c;
    return r;
  }

  friend TowerElem operator*(const TowerElem& a, const TowerElem& b) {
    a.check_same(b);
    const std::size_t n = a.c_.size();
    std::vector<F> out(n);
    for (LayerMask s = 0; s < n; ++s) {
      if (a.c_[s].is_zero()) continue;
      for (LayerMask t = 0; t < n; ++t) {
        if (b.c_[t].is_zero()) continue;
        F term = a.c_[s] * b.c_[t];
        const LayerMask common = s & t;
        if (common != 0) term *= a.t_->mask_product(common);
        out[s ^ t] += term;
      }
    }
    return TowerElem(a.t_, std::move(out));
  }
  TowerElem& operator*=(const TowerElem& o) { return *this = *this * o; }

  /// Multiplication by a base-field scalar.
  TowerElem scaled(const F& k) const {
    TowerElem r = *this;
    for (auto& c : r.c_)
      if (!c.is_zero()) c *= k;
    return r;
  }

  /// Ring automorphism negating the active generators in the mask.
  TowerElem galois_active(LayerMask active_mask) const {
    TowerElem r = *this;
    for (LayerMask s = 0; s < r.c_.size(); ++s)
      if ((std::popcount(s & active_mask) & 1) != 0 && !r.c_[s].is_zero()) r.c_[s] = -r.c_[s];
    return r;
  }

  /// Product of all non-trivial Galois conjugates; x * conjugate_product(x)
  /// is the norm.
  TowerElem conjugate_product() const {
    TowerElem p = t_->one();
    for (LayerMask m = 1; m < c_.size(); ++m) p *= galois_active(m);
    return p;
  }

  /// Norm down to the base field.
  F norm() const {
    const TowerElem n = *this * conjugate_product();
    assert(n.in_base());
    return n.base_part();
  }

  TowerElem inverse() const {
    const TowerElem p = conjugate_product();
    const TowerElem n = *this * p;
    if (!n.in_base()) throw Error("norm left the base field; tower is inconsistent");
    if (n.base_part().is_zero())
      throw DivisionByZero("division by an element of norm zero in tower " + t_->describe());
    return p.scaled(F(1) / n.base_part());
  }

  friend TowerElem operator/(const TowerElem& a, const TowerElem& b) {
    a.check_same(b);
    if (b.in_base()) {
      if (b.base_part().is_zero()) throw DivisionByZero("division by zero tower element");
      return a.scaled(F(1) / b.base_part());
    }
    return a * b.inverse();
  }
  TowerElem& operator/=(const TowerElem& o) { return *this = *this / o; }

  friend bool operator==(const TowerElem& a, const TowerElem& b) {
    if (!a.t_ || !b.t_) return a.t_ == b.t_ && a.c_ == b.c_;
    return a.t_->same_as(*b.t_) && a.c_ == b.c_;
  }

  std::string to_string() const {
    if (!t_) return "<null>";
    std::string s;
    for (LayerMask m = 0; m < c_.size(); ++m) {
      if (c_[m].is_zero()) continue;
      std::string coef = c_[m].to_string();
      if (!s.empty()) s += " + ";
      if (m == 0) {
        s += coef;
      } else if (c_[m].is_one()) {
        s += t_->monomial_name(m);
      } else {
        s += "(" + coef + ")*" + t_->monomial_name(m);
      }
    }
    return s.empty() ? "0" : s;
  }

 private:
  void check_same(const TowerElem& o) const {
    if (!t_ || !o.t_) throw Error("operation on an uninitialised tower element");
    if (t_ != o.t_ && !t_->same_as(*o.t_)) throw Error("tower elements from different towers");
  }

  TowerPtr t_;
  std::vector<F> c_;
};

template <class F>
TowerElem<F> Tower<F>::zero() const {
  return TowerElem<F>(this->shared_from_this(), std::vector<F>(dim()));
}

template <class F>
TowerElem<F> Tower<F>::one() const {
  return constant(F(1));
}

template <class F>
TowerElem<F> Tower<F>::constant(const F& c) const {
  std::vector<F> v(dim());
  v[0] = c;
  return TowerElem<F>(this->shared_from_this(), std::move(v));
}

template <class F>
TowerElem<F> Tower<F>::monomial(LayerMask active_mask) const {
  std::vector<F> v(dim());
  v.at(active_mask) = F(1);
  return TowerElem<F>(this->shared_from_this(), std::move(v));
}

template <class F>
TowerElem<F> Tower<F>::root(std::size_t i) const {
  const Layer& L = layers_.at(i);
  switch (L.kind) {
    case LayerKind::Zero:
      return zero();
    case LayerKind::Active:
      return monomial(LayerMask{1} << L.active_index);
    case LayerKind::Collapsed: {
      // Collapsed values were recorded against the active layers existing
      // at that time; later active layers occupy higher bits only.
      std::vector<F> v(dim());
      for (std::size_t m = 0; m < L.collapsed_value.size(); ++m) v[m] = L.collapsed_value[m];
      return TowerElem<F>(this->shared_from_this(), std::move(v));
    }
  }
  return zero();
}

/// Galois automorphism negating the declared layers in `mask`.
template <class F>
TowerElem<F> galois(LayerMask mask, const TowerElem<F>& x) {
  return x.galois_active(x.tower()->to_active_mask(mask));
}

using QTower = Tower<Rational>;
using QElem = TowerElem<Rational>;
using QvTower = Tower<RatFunc>;
using QvElem = TowerElem<RatFunc>;

extern template class Tower<Rational>;
extern template class Tower<RatFunc>;
extern template class TowerElem<Rational>;
extern template class TowerElem<RatFunc>;

}  // namespace sdcert
