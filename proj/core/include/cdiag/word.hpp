#ifndef CDIAG_WORD_HPP
#define CDIAG_WORD_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace cdiag {

// A degeneracy word in normal form: indices a_1 > a_2 > ... > a_k, standing
// for the operator s_{a_1} ∘ s_{a_2} ∘ ... ∘ s_{a_k} (rightmost applied
// first). The empty word is the identity. Every simplex of a simplicial set
// has a unique expression (word, nondegenerate simplex) with such a word.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<int> indices);

  static Word identity() { return Word(); }

  // Normal form of s_i ∘ (*this), via s_i s_j = s_{j+1} s_i for i <= j.
  Word inserted(int i) const;

  // Normal form of outer ∘ inner.
  static Word compose(const Word& outer, const Word& inner);

  bool empty() const { return ix_.empty(); }
  int size() const { return static_cast<int>(ix_.size()); }
  const std::vector<int>& indices() const { return ix_; }
  bool contains(int i) const;

  std::string to_string() const;  // e.g. "s3 s1 s0", "" for identity

  auto operator<=>(const Word&) const = default;

 private:
  std::vector<int> ix_;
};

// Result of pushing a face operator d_i through a degeneracy word.
// If absorbed, the face was cancelled against a degeneracy and `word` is the
// full resulting word; otherwise d_{face_index} still has to be applied to
// whatever the word was acting on, and `word` is the prefix emitted so far.
struct FaceThroughWord {
  Word word;
  bool absorbed = false;
  int face_index = -1;
};

FaceThroughWord push_face_through(int i, const Word& w);

// A monotone map [m] -> [n], stored as its m+1 values. Presheaf actions are
// computed from the epi-mono factorization: faces for the missing values of
// the image, degeneracies for the repeated positions.
class Monotone {
 public:
  Monotone(std::vector<int> values, int target);

  static Monotone identity(int n);
  static Monotone coface(int n, int i);        // [n-1] -> [n] skipping i
  static Monotone codegeneracy(int n, int j);  // [n+1] -> [n] repeating j
  static Monotone vertex(int n, int i);        // [0] -> [n] picking i
  static Monotone constant(int m, int n, int v);

  int source_dim() const { return static_cast<int>(vals_.size()) - 1; }
  int target_dim() const { return target_; }
  int operator()(int i) const { return vals_[i]; }
  const std::vector<int>& values() const { return vals_; }

  bool is_identity() const;
  bool is_injective() const;
  bool is_surjective() const;

  // Missing image values, sorted ascending.
  std::vector<int> complement() const;
  // Positions j with vals_[j] == vals_[j+1], sorted ascending.
  std::vector<int> repeats() const;

  static Monotone compose(const Monotone& f, const Monotone& g);  // f ∘ g

  // All monotone maps [m] -> [n] in lexicographic order.
  static std::vector<Monotone> all(int m, int n);

  auto operator<=>(const Monotone&) const = default;

 private:
  std::vector<int> vals_;
  int target_;
};

}  // namespace cdiag

#endif  // CDIAG_WORD_HPP
