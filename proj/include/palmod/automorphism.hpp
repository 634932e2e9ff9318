#pragma once

// Automorphisms of F_n given by their images on the generating basis.
// Composition is function composition: compose(f, g) maps x to f(g(x)).

#include "palmod/matrix.hpp"
#include "palmod/word.hpp"

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace palmod {

class Automorphism {
 public:
  Automorphism() = default;

  static Automorphism from_images(std::vector<Word> images) {
    Automorphism f;
    f.rank_ = static_cast<int>(images.size());
    for (const Word& w : images)
      if (w.max_index() > f.rank_) throw std::out_of_range("image uses a generator outside the rank");
    f.images_ = std::move(images);
    return f;
  }

  static Automorphism identity(int n) {
    std::vector<Word> im;
    im.reserve(n);
    for (int i = 1; i <= n; ++i) im.push_back(Word::generator(i));
    return from_images(std::move(im));
  }

  // a_i -> a_j a_i a_j, all other generators fixed.
  static Automorphism elementary_palindromic(int i, int j, int n) {
    check_pair(i, j, n);
    Automorphism f = identity(n);
    f.images_[i - 1] = Word::from_letters({letter(j), letter(i), letter(j)});
    return f;
  }

  // Inverse of elementary_palindromic(i, j, n): a_i -> a_j^-1 a_i a_j^-1.
  static Automorphism elementary_palindromic_inverse(int i, int j, int n) {
    check_pair(i, j, n);
    Automorphism f = identity(n);
    f.images_[i - 1] = Word::from_letters({letter(j, -1), letter(i), letter(j, -1)});
    return f;
  }

  // a_i -> a_j^-1 a_i a_j, the basis-conjugating generator.
  static Automorphism partial_conjugation(int i, int j, int n) {
    check_pair(i, j, n);
    Automorphism f = identity(n);
    f.images_[i - 1] = Word::from_letters({letter(j, -1), letter(i), letter(j)});
    return f;
  }

  static Automorphism partial_conjugation_inverse(int i, int j, int n) {
    check_pair(i, j, n);
    Automorphism f = identity(n);
    f.images_[i - 1] = Word::from_letters({letter(j), letter(i), letter(j, -1)});
    return f;
  }

  // Inverts every generator.
  static Automorphism sigma_n(int n) {
    check_rank(n);
    std::vector<Word> im;
    im.reserve(n);
    for (int i = 1; i <= n; ++i) im.push_back(Word::generator(i).inverse());
    return from_images(std::move(im));
  }

  // Inverts a_i only.
  static Automorphism sigma_ai(int i, int n) {
    check_rank(n);
    if (i < 1 || i > n) throw std::out_of_range("generator index outside rank");
    Automorphism f = identity(n);
    f.images_[i - 1] = Word::generator(i).inverse();
    return f;
  }

  // perm is 1-based: a_i -> a_{perm[i-1]}.
  static Automorphism permutation_automorphism(const std::vector<int>& perm) {
    int n = static_cast<int>(perm.size());
    check_rank(n);
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    for (int v : perm) {
      if (v < 1 || v > n || seen[v]) throw std::invalid_argument("not a permutation of 1..n");
      seen[v] = 1;
    }
    std::vector<Word> im;
    im.reserve(n);
    for (int i = 0; i < n; ++i) im.push_back(Word::generator(perm[i]));
    return from_images(std::move(im));
  }

  int rank() const { return rank_; }
  const Word& image(int i) const {
    if (i < 1 || i > rank_) throw std::out_of_range("generator index outside rank");
    return images_[i - 1];
  }
  const std::vector<Word>& images() const { return images_; }

  friend bool operator==(const Automorphism&, const Automorphism&) = default;

 private:
  static void check_rank(int n) {
    if (n < 1) throw std::invalid_argument("rank must be >= 1");
  }
  static void check_pair(int i, int j, int n) {
    check_rank(n);
    if (i < 1 || i > n || j < 1 || j > n) throw std::out_of_range("generator index outside rank");
    if (i == j) throw std::invalid_argument("generator indices must differ");
  }

  int rank_ = 0;
  std::vector<Word> images_;
};

inline Word apply(const Automorphism& f, const Word& w) {
  if (w.max_index() > f.rank()) throw std::out_of_range("word uses a generator outside the rank");
  std::vector<Letter> out;
  for (const Letter& l : w.letters()) {
    Word piece = f.image(l.generator_index);
    if (l.sign < 0) piece = piece.inverse();
    out.insert(out.end(), piece.letters().begin(), piece.letters().end());
  }
  return Word::from_letters(out);
}

inline Automorphism compose(const Automorphism& f, const Automorphism& g) {
  if (f.rank() != g.rank()) throw std::invalid_argument("rank mismatch in composition");
  std::vector<Word> im;
  im.reserve(static_cast<std::size_t>(g.rank()));
  for (int i = 1; i <= g.rank(); ++i) im.push_back(apply(f, g.image(i)));
  return Automorphism::from_images(std::move(im));
}

// Product of a generator list read left to right: the word g1 g2 ... gk acts
// by applying g1 first, so the resulting map is gk ∘ ... ∘ g1.
inline Automorphism product_left_to_right(const std::vector<Automorphism>& gens, int n) {
  Automorphism acc = Automorphism::identity(n);
  for (const Automorphism& g : gens) acc = compose(g, acc);
  return acc;
}

inline Automorphism product_right_to_left(const std::vector<Automorphism>& gens, int n) {
  Automorphism acc = Automorphism::identity(n);
  for (auto it = gens.rbegin(); it != gens.rend(); ++it) acc = compose(*it, acc);
  return acc;
}

// Palindromic automorphisms send every generator to a palindromic word.
inline bool is_palindromic_automorphism(const Automorphism& f) {
  for (int i = 1; i <= f.rank(); ++i)
    if (!is_palindrome(f.image(i))) return false;
  return true;
}

// f centralizes the involution inverting all generators iff conjugation by
// that involution fixes f.
inline bool verify_centralizes_sigma(const Automorphism& f) {
  Automorphism s = Automorphism::sigma_n(f.rank());
  return compose(s, compose(f, s)) == f;
}

// Column i records the exponent totals of the image of a_i, so the matrix of
// a composition is the product of the matrices in the same order.
inline IntegerMatrix exponent_matrix(const Automorphism& f) {
  int n = f.rank();
  IntegerMatrix m(n, n);
  for (int i = 1; i <= n; ++i)
    for (const Letter& l : f.image(i).letters()) m.at(l.generator_index - 1, i - 1) += l.sign;
  return m;
}

}  // namespace palmod
