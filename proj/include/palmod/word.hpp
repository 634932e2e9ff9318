#pragma once

// Exact word algebra in the free group F_n.  A Letter is a signed generator
// index; a Word is a letter sequence kept freely reduced at all times, so
// equality of Words is equality in the free group.

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

namespace palmod {

struct Letter {
  int generator_index = 1;  // 1-based
  int sign = 1;             // +1 or -1

  Letter inverse() const { return Letter{generator_index, -sign}; }
  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

inline Letter letter(int generator_index, int sign = 1) {
  return Letter{generator_index, sign};
}

class Word {
 public:
  Word() = default;

  // Free reduction: cancel adjacent inverse pairs until none remain.
  static Word from_letters(const std::vector<Letter>& letters) {
    std::vector<Letter> out;
    out.reserve(letters.size());
    for (const Letter& l : letters) {
      if (l.generator_index < 1) throw std::invalid_argument("letter index must be >= 1");
      if (l.sign != 1 && l.sign != -1) throw std::invalid_argument("letter sign must be +1 or -1");
      if (!out.empty() && out.back() == l.inverse())
        out.pop_back();
      else
        out.push_back(l);
    }
    Word w;
    w.letters_ = std::move(out);
    return w;
  }

  static Word generator(int i) { return from_letters({letter(i)}); }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }

  int max_index() const {
    int m = 0;
    for (const Letter& l : letters_) m = std::max(m, l.generator_index);
    return m;
  }

  Word inverse() const {
    std::vector<Letter> rev(letters_.rbegin(), letters_.rend());
    for (Letter& l : rev) l = l.inverse();
    Word w;
    w.letters_ = std::move(rev);  // inverse of a reduced word is reduced
    return w;
  }

  friend Word operator*(const Word& a, const Word& b) {
    std::vector<Letter> cat = a.letters_;
    cat.insert(cat.end(), b.letters_.begin(), b.letters_.end());
    return from_letters(cat);
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

  // Compact rendering: a..z for generators 1..26, uppercase for inverses,
  // "1" for the empty word.  All ranks used here are far below 26.
  std::string str() const {
    if (letters_.empty()) return "1";
    std::string s;
    for (const Letter& l : letters_) {
      if (l.generator_index > 26) throw std::domain_error("str() supports generator indices up to 26");
      char c = static_cast<char>('a' + l.generator_index - 1);
      s += (l.sign > 0) ? c : static_cast<char>(std::toupper(c));
    }
    return s;
  }

 private:
  std::vector<Letter> letters_;
};

// Free reduction with an explicit ambient rank check.
inline Word reduce(const std::vector<Letter>& letters, int rank) {
  for (const Letter& l : letters)
    if (l.generator_index < 1 || l.generator_index > rank)
      throw std::out_of_range("letter index outside ambient rank");
  return Word::from_letters(letters);
}

// A palindrome reads the same letter-by-letter in both directions
// (signs carried with their letters, not flipped).
inline bool is_palindrome(const Word& w) {
  const auto& ls = w.letters();
  std::size_t n = ls.size();
  for (std::size_t i = 0; i < n / 2; ++i)
    if (!(ls[i] == ls[n - 1 - i])) return false;
  return true;
}

// Parses the compact rendering produced by Word::str().
inline Word word_from_string(const std::string& s) {
  if (s == "1") return Word();
  std::vector<Letter> ls;
  for (char c : s) {
    if (std::islower(static_cast<unsigned char>(c)))
      ls.push_back(letter(c - 'a' + 1, +1));
    else if (std::isupper(static_cast<unsigned char>(c)))
      ls.push_back(letter(c - 'A' + 1, -1));
    else
      throw std::invalid_argument("unexpected character in word literal");
  }
  return Word::from_letters(ls);
}

}  // namespace palmod
