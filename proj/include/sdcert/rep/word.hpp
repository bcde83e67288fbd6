#pragma once

#include <string>
#include <string_view>

namespace sdcert {

/// A word over {u, c, a, b} and their inverses (upper case). Adjacent
/// inverse letters are always cancelled; macros stay unexpanded until
/// expand() is called.
class Word {
 public:
  Word() = default;

  /// Parses and freely reduces; whitespace is ignored. Throws ParseError on
  /// any other character.
  static Word parse(std::string_view text);

  const std::string& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  Word inverse() const;
  /// Concatenation followed by free reduction.
  Word operator*(const Word& o) const;
  Word pow(int n) const;

  /// Rewrites into the {u, c} alphabet with a = uuc, b = (aua)^{-1}u, then
  /// reduces freely and takes u-exponents mod 4. With reduce_u_powers
  /// false only free reduction is applied, so u^4 survives.
  Word expand(bool reduce_u_powers = true) const;

  std::string to_string() const { return letters_.empty() ? "e" : letters_; }

  friend bool operator==(const Word& a, const Word& b) = default;
  friend auto operator<=>(const Word& a, const Word& b) = default;

 private:
  explicit Word(std::string reduced) : letters_(std::move(reduced)) {}
  static std::string reduce(std::string_view s);

  std::string letters_;
};

char inverse_letter(char x);

}  // namespace sdcert
