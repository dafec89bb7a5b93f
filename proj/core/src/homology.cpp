#include "cdiag/homology.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "cdiag/util.hpp"

namespace cdiag {

namespace {

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::Internal, "SNF overflow");
  return r;
}

long long checked_sub(long long a, long long b) {
  long long r;
  if (__builtin_sub_overflow(a, b, &r)) fail(ErrorKind::Internal, "SNF overflow");
  return r;
}

}  // namespace

bool HomologyProfile::point_like() const {
  for (size_t n = 0; n < levels.size(); ++n) {
    if (!levels[n].torsion.empty()) return false;
    if (levels[n].free_rank != (n == 0 ? 1 : 0)) return false;
  }
  return !levels.empty();
}

std::string HomologyProfile::to_string() const {
  std::ostringstream out;
  for (size_t n = 0; n < levels.size(); ++n) {
    if (n) out << ", ";
    out << "H" << n << "=Z^" << levels[n].free_rank;
    for (long long t : levels[n].torsion) out << "+Z/" << t;
  }
  return out.str();
}

SmithResult smith_normal_form(std::vector<std::vector<long long>> M) {
  SmithResult out;
  const int rows = static_cast<int>(M.size());
  const int cols = rows ? static_cast<int>(M[0].size()) : 0;
  int t = 0;
  while (true) {
    // Find the smallest nonzero entry in the remaining block.
    int pr = -1, pc = -1;
    long long best = 0;
    for (int r = t; r < rows; ++r) {
      for (int c = t; c < cols; ++c) {
        long long v = std::llabs(M[r][c]);
        if (v != 0 && (pr < 0 || v < best)) {
          best = v;
          pr = r;
          pc = c;
        }
      }
    }
    if (pr < 0) break;
    std::swap(M[t], M[pr]);
    for (int r = 0; r < rows; ++r) std::swap(M[r][t], M[r][pc]);

    bool clean = true;
    for (int r = t + 1; r < rows; ++r) {
      if (M[r][t] % M[t][t] != 0) clean = false;
    }
    for (int c = t + 1; c < cols; ++c) {
      if (M[t][c] % M[t][t] != 0) clean = false;
    }
    // Reduce row and column; repeat from pivot selection if a remainder
    // produced a smaller entry.
    for (int r = t + 1; r < rows; ++r) {
      long long q = M[r][t] / M[t][t];
      if (q == 0) continue;
      for (int c = t; c < cols; ++c) M[r][c] = checked_sub(M[r][c], checked_mul(q, M[t][c]));
    }
    for (int c = t + 1; c < cols; ++c) {
      long long q = M[t][c] / M[t][t];
      if (q == 0) continue;
      for (int r = t; r < rows; ++r) M[r][c] = checked_sub(M[r][c], checked_mul(q, M[r][t]));
    }
    bool zeroed = true;
    for (int r = t + 1; r < rows && zeroed; ++r) zeroed = (M[r][t] == 0);
    for (int c = t + 1; c < cols && zeroed; ++c) zeroed = (M[t][c] == 0);
    if (!zeroed || !clean) continue;

    // Enforce the divisibility chain: fold any bad entry into column t.
    bool divides_all = true;
    for (int r = t + 1; r < rows && divides_all; ++r) {
      for (int c = t + 1; c < cols; ++c) {
        if (M[r][c] % M[t][t] != 0) {
          for (int cc = t; cc < cols; ++cc) {
            long long s;
            if (__builtin_add_overflow(M[t][cc], M[r][cc], &s)) {
              fail(ErrorKind::Internal, "SNF overflow");
            }
            M[t][cc] = s;
          }
          divides_all = false;
          break;
        }
      }
    }
    if (!divides_all) continue;
    ++t;
  }
  out.rank = t;
  for (int i = 0; i < t; ++i) out.diagonal.push_back(std::llabs(M[i][i]));
  return out;
}

std::vector<std::vector<long long>> boundary_matrix(const SimplicialSet& X, int n) {
  std::vector<int> counts = X.nondegenerate_counts();
  auto gens_at = [&](int d) {
    std::vector<GenId> out;
    for (GenId g = 0; g < X.generator_count(); ++g) {
      if (X.generator(g).dim == d) out.push_back(g);
    }
    return out;
  };
  std::vector<GenId> rows = gens_at(n - 1);
  std::vector<GenId> cols = gens_at(n);
  std::vector<int> row_of(X.generator_count(), -1);
  for (size_t r = 0; r < rows.size(); ++r) row_of[rows[r]] = static_cast<int>(r);
  std::vector<std::vector<long long>> M(rows.size(), std::vector<long long>(cols.size(), 0));
  for (size_t c = 0; c < cols.size(); ++c) {
    const auto& faces = X.generator(cols[c]).faces;
    for (int i = 0; i <= n; ++i) {
      const Simplex& f = faces[i];
      if (!f.word.empty()) continue;  // degenerate faces vanish in the normalized complex
      M[row_of[f.gen]][c] += (i % 2 == 0) ? 1 : -1;
    }
  }
  return M;
}

namespace {

HomologyProfile homology_from_boundaries(
    const std::vector<long long>& chain_ranks,
    const std::vector<std::vector<std::vector<long long>>>& boundaries, int top) {
  HomologyProfile out;
  std::vector<SmithResult> snf(top + 2);
  for (int n = 1; n <= top + 1; ++n) snf[n] = smith_normal_form(boundaries[n]);
  for (int n = 0; n <= top; ++n) {
    HomologyProfile::Level lv;
    long long rank_dn = (n >= 1) ? snf[n].rank : 0;
    long long rank_dn1 = snf[n + 1].rank;
    lv.free_rank = chain_ranks[n] - rank_dn - rank_dn1;
    for (long long d : snf[n + 1].diagonal) {
      if (d > 1) lv.torsion.push_back(d);
    }
    out.levels.push_back(std::move(lv));
  }
  return out;
}

}  // namespace

HomologyProfile homology(const SimplicialSet& X, int top) {
  if (top < 0) fail(ErrorKind::Parameter, "homology top dimension must be >= 0");
  std::vector<int> counts = X.nondegenerate_counts();
  std::vector<long long> ranks(top + 1, 0);
  for (int n = 0; n <= top; ++n) {
    ranks[n] = (n < static_cast<int>(counts.size())) ? counts[n] : 0;
  }
  std::vector<std::vector<std::vector<long long>>> boundaries(top + 2);
  for (int n = 1; n <= top + 1; ++n) boundaries[n] = boundary_matrix(X, n);
  return homology_from_boundaries(ranks, boundaries, top);
}

HomologyProfile homology_unnormalized(const SimplicialSet& X, int top) {
  if (top < 0) fail(ErrorKind::Parameter, "homology top dimension must be >= 0");
  std::vector<long long> ranks(top + 1, 0);
  for (int n = 0; n <= top; ++n) ranks[n] = X.count(n);
  std::vector<std::vector<std::vector<long long>>> boundaries(top + 2);
  for (int n = 1; n <= top + 1; ++n) {
    const auto& lower = X.simplices(n - 1);
    const auto& here = X.simplices(n);
    auto at = [&](const Simplex& s) {
      return static_cast<int>(std::lower_bound(lower.begin(), lower.end(), s) - lower.begin());
    };
    std::vector<std::vector<long long>> M(lower.size(), std::vector<long long>(here.size(), 0));
    for (size_t c = 0; c < here.size(); ++c) {
      for (int i = 0; i <= n; ++i) {
        M[at(X.face(here[c], i))][c] += (i % 2 == 0) ? 1 : -1;
      }
    }
    boundaries[n] = std::move(M);
  }
  return homology_from_boundaries(ranks, boundaries, top);
}

}  // namespace cdiag
