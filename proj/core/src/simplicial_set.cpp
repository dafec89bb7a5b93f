#include "cdiag/simplicial_set.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace cdiag {

namespace {

bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

}  // namespace

std::string simplex_label(const SimplicialSet& X, const Simplex& x) {
  std::string out = x.word.to_string();
  if (!out.empty()) out += ' ';
  out += X.generator(x.gen).name;
  return out;
}

GenId SimplicialSet::Builder::add(int dim, std::vector<Simplex> faces, std::string name) {
  if (dim < 0) throw std::invalid_argument("generator dimension must be >= 0");
  if (dim == 0) {
    if (!faces.empty()) throw std::invalid_argument("0-generator has no faces");
  } else if (static_cast<int>(faces.size()) != dim + 1) {
    throw std::invalid_argument("generator of dimension n needs n+1 faces");
  }
  GenId id = static_cast<GenId>(gens_.size());
  for (const Simplex& f : faces) {
    if (f.gen < 0 || f.gen >= id) {
      throw std::invalid_argument("face references an unknown generator");
    }
    int fdim = gens_[f.gen].dim + f.word.size();
    if (fdim != dim - 1) throw std::invalid_argument("face has wrong dimension");
  }
  if (name.empty()) name = "g" + std::to_string(id);
  if (!valid_identifier(name)) throw std::invalid_argument("bad generator name: " + name);
  gens_.push_back(Generator{dim, std::move(name), std::move(faces)});
  return id;
}

SSetPtr SimplicialSet::Builder::build() {
  // Stable-sort generators by dimension and remap face references.
  std::vector<int> order(gens_.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return gens_[a].dim < gens_[b].dim; });
  std::vector<int> newid(gens_.size());
  for (size_t pos = 0; pos < order.size(); ++pos) newid[order[pos]] = static_cast<int>(pos);

  auto out = std::shared_ptr<SimplicialSet>(new SimplicialSet());
  out->gens_.reserve(gens_.size());
  for (int old : order) {
    Generator g = gens_[old];
    for (Simplex& f : g.faces) f.gen = newid[f.gen];
    out->gens_.push_back(std::move(g));
  }

  // Reject duplicate names.
  {
    std::vector<std::string_view> names;
    names.reserve(out->gens_.size());
    for (const auto& g : out->gens_) names.push_back(g.name);
    std::sort(names.begin(), names.end());
    auto it = std::adjacent_find(names.begin(), names.end());
    if (it != names.end()) {
      throw std::invalid_argument("duplicate generator name: " + std::string(*it));
    }
  }

  out->dim_ = -1;
  for (const auto& g : out->gens_) out->dim_ = std::max(out->dim_, g.dim);
  out->gens_by_dim_start_.assign(out->dim_ + 2, 0);
  for (const auto& g : out->gens_) out->gens_by_dim_start_[g.dim + 1]++;
  for (size_t d = 1; d < out->gens_by_dim_start_.size(); ++d) {
    out->gens_by_dim_start_[d] += out->gens_by_dim_start_[d - 1];
  }
  return out;
}

SSetPtr SimplicialSet::empty() {
  Builder b;
  return b.build();
}

GenId SimplicialSet::find_generator(std::string_view name) const {
  for (size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].name == name) return static_cast<GenId>(i);
  }
  return -1;
}

int SimplicialSet::dim_of(const Simplex& x) const {
  return gens_.at(x.gen).dim + x.word.size();
}

Simplex SimplicialSet::face(const Simplex& x, int i) const {
  int n = dim_of(x);
  if (n == 0 || i < 0 || i > n) throw std::out_of_range("face index out of range");
  FaceThroughWord pushed = push_face_through(i, x.word);
  if (pushed.absorbed) return Simplex{pushed.word, x.gen};
  const Generator& g = gens_[x.gen];
  const Simplex& f = g.faces.at(pushed.face_index);
  return Simplex{Word::compose(pushed.word, f.word), f.gen};
}

Simplex SimplicialSet::degeneracy(const Simplex& x, int i) const {
  int n = dim_of(x);
  if (i < 0 || i > n) throw std::out_of_range("degeneracy index out of range");
  return Simplex{x.word.inserted(i), x.gen};
}

Simplex SimplicialSet::act(const Simplex& x, const Monotone& op) const {
  if (op.target_dim() != dim_of(x)) {
    throw std::invalid_argument("operator target does not match simplex dimension");
  }
  Simplex cur = x;
  std::vector<int> comp = op.complement();
  for (auto it = comp.rbegin(); it != comp.rend(); ++it) cur = face(cur, *it);
  for (int j : op.repeats()) cur = degeneracy(cur, j);
  return cur;
}

bool SimplicialSet::in_image_of_degeneracy(const Simplex& x, int i) const {
  int n = dim_of(x);
  if (n == 0 || i < 0 || i >= n) return false;
  return degeneracy(face(x, i), i) == x;
}

std::vector<int> SimplicialSet::degeneracy_set(const Simplex& x) const {
  std::vector<int> out;
  int n = dim_of(x);
  for (int i = 0; i + 1 <= n; ++i) {
    if (in_image_of_degeneracy(x, i)) out.push_back(i);
  }
  return out;
}

std::vector<Simplex> enumerate_simplices(const SimplicialSet& X, int n) {
  std::vector<Simplex> out;
  if (n < 0) return out;
  for (GenId g = 0; g < X.generator_count(); ++g) {
    int p = X.generator(g).dim;
    if (p > n) continue;
    int k = n - p;
    // All strictly decreasing words of length k over {0..n-1}, enumerated as
    // ascending k-combinations and reversed.
    std::vector<int> asc(k);
    for (int i = 0; i < k; ++i) asc[i] = i;
    while (true) {
      std::vector<int> desc(asc.rbegin(), asc.rend());
      out.push_back(Simplex{Word(std::move(desc)), g});
      if (k == 0) break;
      int q = k - 1;
      while (q >= 0 && asc[q] == n - 1 - (k - 1 - q)) --q;
      if (q < 0) break;
      ++asc[q];
      for (int r = q + 1; r < k; ++r) asc[r] = asc[r - 1] + 1;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<Simplex>& SimplicialSet::simplices(int n) const {
  std::lock_guard<std::mutex> lk(cache_.mu);
  auto it = cache_.simplices.find(n);
  if (it == cache_.simplices.end()) {
    it = cache_.simplices.emplace(n, enumerate_simplices(*this, n)).first;
  }
  return it->second;
}

long long SimplicialSet::count(int n) const {
  return static_cast<long long>(simplices(n).size());
}

int SimplicialSet::index_of(const Simplex& x) const {
  const auto& list = simplices(dim_of(x));
  auto it = std::lower_bound(list.begin(), list.end(), x);
  if (it == list.end() || !(*it == x)) throw std::logic_error("simplex not in set");
  return static_cast<int>(it - list.begin());
}

std::vector<int> SimplicialSet::nondegenerate_counts() const {
  std::vector<int> out(std::max(dim_, -1) + 1, 0);
  for (const auto& g : gens_) out[g.dim]++;
  return out;
}

std::vector<GenId> SimplicialSet::vertex_tuple(const Simplex& x) const {
  int n = dim_of(x);
  std::vector<GenId> out;
  out.reserve(n + 1);
  for (int i = 0; i <= n; ++i) out.push_back(act(x, Monotone::vertex(n, i)).gen);
  return out;
}

std::string SimplicialSet::validate(int up_to) const {
  if (up_to < 0) up_to = dim_ + 1;
  std::ostringstream bad;
  for (int n = 0; n <= up_to; ++n) {
    const auto& list = simplices(n);
    for (size_t p = 0; p + 1 < list.size(); ++p) {
      if (list[p] == list[p + 1]) {
        bad << "duplicate " << n << "-simplex in enumeration";
        return bad.str();
      }
    }
    for (const Simplex& x : list) {
      if (n >= 2) {
        for (int j = 1; j <= n; ++j) {
          for (int i = 0; i < j; ++i) {
            if (!(face(face(x, j), i) == face(face(x, i), j - 1))) {
              bad << "d" << i << " d" << j << " != d" << (j - 1) << " d" << i
                  << " on a " << n << "-simplex of generator "
                  << gens_[x.gen].name;
              return bad.str();
            }
          }
        }
      }
      if (n >= 1) {
        // Faces must re-appear in the (n-1)-enumeration (EZ closure).
        const auto& lower = simplices(n - 1);
        for (int i = 0; i <= n; ++i) {
          Simplex f = face(x, i);
          if (!std::binary_search(lower.begin(), lower.end(), f)) {
            bad << "face of a " << n << "-simplex missing from enumeration";
            return bad.str();
          }
        }
      }
      for (int j = 0; j <= n; ++j) {
        Simplex s = degeneracy(x, j);
        if (!(face(s, j) == x) || !(face(s, j + 1) == x)) {
          bad << "d s identity fails at dimension " << n;
          return bad.str();
        }
      }
    }
  }
  return {};
}

std::string SimplicialSet::to_text() const {
  std::ostringstream out;
  out << "sset {\n";
  for (const auto& g : gens_) {
    out << "  gen " << g.name << " : " << g.dim;
    if (!g.faces.empty()) {
      out << " [";
      for (size_t i = 0; i < g.faces.size(); ++i) {
        if (i) out << ", ";
        out << "d" << i << " = " << simplex_label(*this, g.faces[i]);
      }
      out << "]";
    }
    out << "\n";
  }
  out << "}";
  return out.str();
}

SSetPtr disjoint_union(const SimplicialSet& X, const SimplicialSet& Y) {
  SimplicialSet::Builder b;
  std::vector<GenId> xs(X.generator_count()), ys(Y.generator_count());
  // Preserve dimension order across both inputs so face references stay valid.
  struct Item {
    int side;  // 0 = X, 1 = Y (the inputs may alias)
    GenId g;
  };
  std::vector<Item> items;
  for (GenId g = 0; g < X.generator_count(); ++g) items.push_back({0, g});
  for (GenId g = 0; g < Y.generator_count(); ++g) items.push_back({1, g});
  std::stable_sort(items.begin(), items.end(), [&](const Item& a, const Item& b2) {
    const auto& ga = (a.side ? Y : X).generator(a.g);
    const auto& gb = (b2.side ? Y : X).generator(b2.g);
    return ga.dim < gb.dim;
  });
  for (const Item& it : items) {
    const auto& g = (it.side ? Y : X).generator(it.g);
    std::vector<Simplex> faces = g.faces;
    auto& table = it.side ? ys : xs;
    for (Simplex& f : faces) f.gen = table[f.gen];
    std::string name = it.side ? ("y_" + g.name) : g.name;
    table[it.g] = b.add(g.dim, std::move(faces), std::move(name));
  }
  return b.build();
}

}  // namespace cdiag
