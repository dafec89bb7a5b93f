#include "cdiag/word.hpp"

#include <algorithm>
#include <stdexcept>

namespace cdiag {

Word::Word(std::vector<int> indices) : ix_(std::move(indices)) {
  for (size_t p = 0; p + 1 < ix_.size(); ++p) {
    if (ix_[p] <= ix_[p + 1]) {
      throw std::invalid_argument("degeneracy word not strictly decreasing");
    }
  }
  if (!ix_.empty() && ix_.back() < 0) {
    throw std::invalid_argument("negative degeneracy index");
  }
}

Word Word::inserted(int i) const {
  // s_i ∘ (s_{a_1} ... s_{a_k}): if i > a_1 it is already normal; otherwise
  // s_i s_{a_1} = s_{a_1+1} s_i and we recurse into the tail.
  std::vector<int> out;
  out.reserve(ix_.size() + 1);
  size_t p = 0;
  int cur = i;
  while (p < ix_.size() && cur <= ix_[p]) {
    out.push_back(ix_[p] + 1);
    ++p;
  }
  out.push_back(cur);
  out.insert(out.end(), ix_.begin() + p, ix_.end());
  return Word(std::move(out));
}

Word Word::compose(const Word& outer, const Word& inner) {
  Word acc = inner;
  for (auto it = outer.ix_.rbegin(); it != outer.ix_.rend(); ++it) {
    acc = acc.inserted(*it);
  }
  return acc;
}

bool Word::contains(int i) const {
  return std::find(ix_.begin(), ix_.end(), i) != ix_.end();
}

std::string Word::to_string() const {
  std::string out;
  for (size_t p = 0; p < ix_.size(); ++p) {
    if (p) out += ' ';
    out += 's';
    out += std::to_string(ix_[p]);
  }
  return out;
}

FaceThroughWord push_face_through(int i, const Word& w) {
  // d_i s_j = s_{j-1} d_i (i < j), id (i == j or i == j+1), s_j d_{i-1} (i > j+1).
  FaceThroughWord res;
  std::vector<int> out;
  const auto& ix = w.indices();
  int cur = i;
  for (size_t p = 0; p < ix.size(); ++p) {
    int j = ix[p];
    if (cur < j) {
      out.push_back(j - 1);
    } else if (cur == j || cur == j + 1) {
      out.insert(out.end(), ix.begin() + p + 1, ix.end());
      res.word = Word(std::move(out));
      res.absorbed = true;
      return res;
    } else {
      out.push_back(j);
      --cur;
    }
  }
  res.word = Word(std::move(out));
  res.absorbed = false;
  res.face_index = cur;
  return res;
}

Monotone::Monotone(std::vector<int> values, int target)
    : vals_(std::move(values)), target_(target) {
  if (vals_.empty()) throw std::invalid_argument("monotone map with empty source");
  for (size_t p = 0; p + 1 < vals_.size(); ++p) {
    if (vals_[p] > vals_[p + 1]) throw std::invalid_argument("map not monotone");
  }
  if (vals_.front() < 0 || vals_.back() > target_) {
    throw std::invalid_argument("monotone map out of range");
  }
}

Monotone Monotone::identity(int n) {
  std::vector<int> v(n + 1);
  for (int i = 0; i <= n; ++i) v[i] = i;
  return Monotone(std::move(v), n);
}

Monotone Monotone::coface(int n, int i) {
  std::vector<int> v;
  v.reserve(n);
  for (int k = 0; k <= n; ++k) {
    if (k != i) v.push_back(k);
  }
  return Monotone(std::move(v), n);
}

Monotone Monotone::codegeneracy(int n, int j) {
  std::vector<int> v;
  v.reserve(n + 2);
  for (int k = 0; k <= n; ++k) {
    v.push_back(k);
    if (k == j) v.push_back(k);
  }
  return Monotone(std::move(v), n);
}

Monotone Monotone::vertex(int n, int i) { return Monotone({i}, n); }

Monotone Monotone::constant(int m, int n, int v) {
  return Monotone(std::vector<int>(m + 1, v), n);
}

bool Monotone::is_identity() const {
  if (source_dim() != target_) return false;
  for (int i = 0; i <= target_; ++i) {
    if (vals_[i] != i) return false;
  }
  return true;
}

bool Monotone::is_injective() const {
  for (size_t p = 0; p + 1 < vals_.size(); ++p) {
    if (vals_[p] == vals_[p + 1]) return false;
  }
  return true;
}

bool Monotone::is_surjective() const {
  if (vals_.front() != 0 || vals_.back() != target_) return false;
  for (size_t p = 0; p + 1 < vals_.size(); ++p) {
    if (vals_[p + 1] - vals_[p] > 1) return false;
  }
  return true;
}

std::vector<int> Monotone::complement() const {
  std::vector<int> out;
  size_t p = 0;
  for (int v = 0; v <= target_; ++v) {
    while (p < vals_.size() && vals_[p] < v) ++p;
    if (p == vals_.size() || vals_[p] != v) out.push_back(v);
  }
  return out;
}

std::vector<int> Monotone::repeats() const {
  std::vector<int> out;
  for (size_t p = 0; p + 1 < vals_.size(); ++p) {
    if (vals_[p] == vals_[p + 1]) out.push_back(static_cast<int>(p));
  }
  return out;
}

Monotone Monotone::compose(const Monotone& f, const Monotone& g) {
  if (g.target_dim() != f.source_dim()) {
    throw std::invalid_argument("monotone maps not composable");
  }
  std::vector<int> v;
  v.reserve(g.values().size());
  for (int x : g.values()) v.push_back(f(x));
  return Monotone(std::move(v), f.target_dim());
}

std::vector<Monotone> Monotone::all(int m, int n) {
  std::vector<Monotone> out;
  std::vector<int> cur(m + 1, 0);
  while (true) {
    out.emplace_back(cur, n);
    int p = m;
    while (p >= 0 && cur[p] == n) --p;
    if (p < 0) break;
    ++cur[p];
    for (int q = p + 1; q <= m; ++q) cur[q] = cur[p];
  }
  return out;
}

}  // namespace cdiag
