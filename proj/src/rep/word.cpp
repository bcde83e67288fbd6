#include "sdcert/rep/word.hpp"

#include <algorithm>
#include <cctype>

#include "sdcert/errors.hpp"

namespace sdcert {

namespace {

bool is_letter(char x) {
  switch (x) {
    case 'u': case 'c': case 'a': case 'b':
    case 'U': case 'C': case 'A': case 'B':
      return true;
    default:
      return false;
  }
}

std::string_view macro(char x) {
  switch (x) {
    case 'a': return "uuc";
    case 'A': return "CUU";
    case 'b': return "AUAu";
    case 'B': return "Uaua";
    default: return {};
  }
}

void expand_into(char x, std::string& out) {
  const std::string_view m = macro(x);
  if (m.empty()) {
    out.push_back(x);
    return;
  }
  for (char y : m) expand_into(y, out);
}

// Free reduction, then u-runs rewritten to the shortest representative of
// their exponent mod 4; repeated until stable because removing a run can
// bring c and C together.
std::string reduce_uc(std::string s) {
  for (;;) {
    std::string out;
    std::size_t i = 0;
    bool changed = false;
    while (i < s.size()) {
      if (s[i] != 'u' && s[i] != 'U') {
        if (!out.empty() && out.back() == inverse_letter(s[i])) {
          out.pop_back();
          changed = true;
        } else {
          out.push_back(s[i]);
        }
        ++i;
        continue;
      }
      std::size_t j = i;
      int e = 0;
      while (j < s.size() && (s[j] == 'u' || s[j] == 'U')) e += s[j++] == 'u' ? 1 : -1;
      // A run may follow a run when cancellation removed the letters between.
      while (!out.empty() && (out.back() == 'u' || out.back() == 'U')) {
        e += out.back() == 'u' ? 1 : -1;
        out.pop_back();
      }
      e = ((e % 4) + 4) % 4;
      const std::string_view rep = e == 0 ? "" : e == 1 ? "u" : e == 2 ? "uu" : "U";
      if (rep != std::string_view(s).substr(i, j - i)) changed = true;
      out += rep;
      i = j;
    }
    if (!changed) return out;
    s = std::move(out);
  }
}

}  // namespace

char inverse_letter(char x) {
  return std::isupper(static_cast<unsigned char>(x)) ? static_cast<char>(std::tolower(x))
                                                     : static_cast<char>(std::toupper(x));
}

std::string Word::reduce(std::string_view s) {
  std::string out;
  for (char x : s) {
    if (!out.empty() && out.back() == inverse_letter(x)) out.pop_back();
    else out.push_back(x);
  }
  return out;
}

Word Word::parse(std::string_view text) {
  std::string s;
  for (char x : text) {
    if (std::isspace(static_cast<unsigned char>(x))) continue;
    if (!is_letter(x)) throw ParseError(std::string("invalid letter '") + x + "' in word");
    s.push_back(x);
  }
  if (s == "e") return Word();
  return Word(reduce(s));
}

Word Word::inverse() const {
  std::string s(letters_.rbegin(), letters_.rend());
  for (char& x : s) x = inverse_letter(x);
  return Word(std::move(s));
}

Word Word::operator*(const Word& o) const { return Word(reduce(letters_ + o.letters_)); }

Word Word::pow(int n) const {
  const Word base = n < 0 ? inverse() : *this;
  Word r;
  for (int i = 0; i < std::abs(n); ++i) r = r * base;
  return r;
}

Word Word::expand(bool reduce_u_powers) const {
  std::string out;
  for (char x : letters_) expand_into(x, out);
  if (!reduce_u_powers) return Word(reduce(out));
  return Word(reduce_uc(std::move(out)));
}

}  // namespace sdcert
