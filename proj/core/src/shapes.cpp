#include "cdiag/shapes.hpp"

#include <algorithm>

#include "cdiag/util.hpp"

namespace cdiag {

namespace {

std::string subset_name(const std::vector<int>& s, int n) {
  std::string out = "x";
  for (size_t i = 0; i < s.size(); ++i) {
    if (n > 9 && i) out += '_';
    out += std::to_string(s[i]);
  }
  return out;
}

// Builds the subcomplex of Delta^n spanned by the subsets accepted by keep.
// Vertices always come first in ascending order, so vertex generator ids
// coincide with vertex numbers.
SSetPtr subset_shape(int n, const std::function<bool(const std::vector<int>&)>& keep) {
  SimplicialSet::Builder b;
  std::vector<std::vector<int>> by_id;  // generator id -> subset
  std::vector<GenId> ids;               // parallel to by_id
  auto find_subset = [&](const std::vector<int>& s) -> GenId {
    for (size_t i = 0; i < by_id.size(); ++i) {
      if (by_id[i] == s) return ids[i];
    }
    fail(ErrorKind::Internal, "face subset missing from shape");
  };
  for (int size = 1; size <= n + 1; ++size) {
    // Ascending combinations of {0..n} of the given size.
    std::vector<int> s(size);
    for (int i = 0; i < size; ++i) s[i] = i;
    while (true) {
      if (keep(s)) {
        std::vector<Simplex> faces;
        if (size >= 2) {
          for (int i = 0; i < size; ++i) {
            std::vector<int> f = s;
            f.erase(f.begin() + i);
            faces.push_back(Simplex::of(find_subset(f)));
          }
        }
        GenId id = b.add(size - 1, std::move(faces), subset_name(s, n));
        by_id.push_back(s);
        ids.push_back(id);
      }
      int q = size - 1;
      while (q >= 0 && s[q] == n - (size - 1 - q)) --q;
      if (q < 0) break;
      ++s[q];
      for (int r = q + 1; r < size; ++r) s[r] = s[r - 1] + 1;
    }
  }
  return b.build();
}

}  // namespace

SSetPtr standard_simplex(int n) {
  if (n < 0) fail(ErrorKind::Parameter, "simplex dimension must be >= 0");
  return subset_shape(n, [](const std::vector<int>&) { return true; });
}

SSetPtr boundary(int n) {
  if (n < 0) fail(ErrorKind::Parameter, "boundary dimension must be >= 0");
  return subset_shape(n, [n](const std::vector<int>& s) {
    return static_cast<int>(s.size()) != n + 1;
  });
}

SSetPtr horn(int n, int k) {
  if (n < 1) fail(ErrorKind::Parameter, "horn needs n >= 1");
  if (k < 0 || k > n) fail(ErrorKind::Parameter, "horn index k out of range 0..n");
  return subset_shape(n, [n, k](const std::vector<int>& s) {
    int size = static_cast<int>(s.size());
    if (size == n + 1) return false;
    if (size == n) {
      // Exclude exactly the face opposite vertex k.
      int missing = 0;
      for (int v = 0, p = 0; v <= n; ++v) {
        if (p < size && s[p] == v) {
          ++p;
        } else {
          missing = v;
        }
      }
      if (missing == k) return false;
    }
    return true;
  });
}

SSetPtr j_truncated(int d) {
  if (d < 0) fail(ErrorKind::Parameter, "truncation must be >= 0");
  SimplicialSet::Builder b;
  GenId v[2];
  v[0] = b.add(0, {}, "p0");
  v[1] = b.add(0, {}, "p1");
  // chain[e][k]: the alternating k-chain starting at vertex e (k >= 1).
  std::vector<std::array<GenId, 2>> chain(d + 1);
  for (int k = 1; k <= d; ++k) {
    for (int e = 0; e < 2; ++e) {
      std::vector<Simplex> faces(k + 1);
      if (k == 1) {
        faces[0] = Simplex::of(v[1 - e]);
        faces[1] = Simplex::of(v[e]);
      } else {
        faces[0] = Simplex::of(chain[k - 1][1 - e]);
        faces[k] = Simplex::of(chain[k - 1][e]);
        for (int i = 1; i < k; ++i) {
          Simplex inner = (k == 2) ? Simplex::of(v[e])
                                   : Simplex::of(chain[k - 2][e]);
          faces[i] = Simplex{Word({i - 1}), inner.gen};
        }
      }
      chain[k][e] = b.add(k, std::move(faces),
                          "c" + std::to_string(e) + "_" + std::to_string(k));
    }
  }
  return b.build();
}

SSetPtr make_shape(const ShapeSpec& spec) {
  switch (spec.kind) {
    case ShapeSpec::Kind::Simplex:
      return standard_simplex(spec.n);
    case ShapeSpec::Kind::Boundary:
      return boundary(spec.n);
    case ShapeSpec::Kind::Horn:
      return horn(spec.n, spec.k);
    case ShapeSpec::Kind::JTruncated:
      return j_truncated(spec.n);
  }
  fail(ErrorKind::Internal, "unknown shape kind");
}

Monotone simplex_as_monotone(const SimplicialSet& shape, int n, const Simplex& x) {
  std::vector<GenId> verts = shape.vertex_tuple(x);
  // For subset shapes, vertex generator id == vertex number.
  return Monotone(std::vector<int>(verts.begin(), verts.end()), n);
}

GenId subset_generator(const SimplicialSet& shape, const std::vector<int>& vertices) {
  for (GenId g = 0; g < shape.generator_count(); ++g) {
    if (shape.generator(g).dim != static_cast<int>(vertices.size()) - 1) continue;
    if (shape.vertex_tuple(Simplex::of(g)) == std::vector<GenId>(vertices.begin(), vertices.end())) {
      return g;
    }
  }
  return -1;
}

Simplex simplex_of_monotone(const SimplicialSet& shape, const Monotone& t) {
  // Factor t through its image subset and act by the surjective part.
  std::vector<int> image;
  for (int v : t.values()) {
    if (image.empty() || image.back() != v) image.push_back(v);
  }
  GenId g = subset_generator(shape, image);
  if (g < 0) fail(ErrorKind::Internal, "image subset is not a generator");
  std::vector<int> surj(t.values().size());
  for (size_t i = 0; i < surj.size(); ++i) {
    surj[i] = static_cast<int>(std::lower_bound(image.begin(), image.end(), t.values()[i]) -
                               image.begin());
  }
  return shape.act(Simplex::of(g),
                   Monotone(std::move(surj), static_cast<int>(image.size()) - 1));
}

SimplicialMap simplex_map_from_monotone(const Monotone& op) {
  SSetPtr src = standard_simplex(op.source_dim());
  SSetPtr dst = standard_simplex(op.target_dim());
  SimplicialMap f;
  f.src = src;
  f.dst = dst;
  f.img.reserve(src->generator_count());
  for (GenId g = 0; g < src->generator_count(); ++g) {
    Monotone mg = simplex_as_monotone(*src, op.source_dim(), Simplex::of(g));
    f.img.push_back(simplex_of_monotone(*dst, Monotone::compose(op, mg)));
  }
  return f;
}

SimplicialMap named_inclusion(const SSetPtr& sub, const SSetPtr& ambient) {
  SimplicialMap f;
  f.src = sub;
  f.dst = ambient;
  f.img.reserve(sub->generator_count());
  for (GenId g = 0; g < sub->generator_count(); ++g) {
    GenId h = ambient->find_generator(sub->generator(g).name);
    if (h < 0) {
      fail(ErrorKind::Parameter,
           "no canonical inclusion: generator " + sub->generator(g).name +
               " not in the ambient object");
    }
    f.img.push_back(Simplex::of(h));
  }
  std::string why = f.validate();
  if (!why.empty()) fail(ErrorKind::Parameter, "no canonical inclusion: " + why);
  return f;
}

SkeletonResult skeleton(const SimplicialSet& X, int p) {
  if (p < 0) fail(ErrorKind::Parameter, "skeleton level must be >= 0");
  SimplicialSet::Builder b;
  SkeletonResult res;
  for (GenId g = 0; g < X.generator_count(); ++g) {
    const auto& gen = X.generator(g);
    if (gen.dim > p) continue;
    // Generators are dimension-sorted, so faces keep their ids.
    b.add(gen.dim, gen.faces, gen.name);
    res.into.push_back(g);
  }
  res.set = b.build();
  return res;
}

}  // namespace cdiag
