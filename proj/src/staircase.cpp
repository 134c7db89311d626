#include "fibdual/staircase.hpp"

#include <algorithm>
#include <stdexcept>

namespace fibdual {

bool StaircasePath::valid() const {
  if (n < 1 || static_cast<int>(verts.size()) != 2 * n + 1) return false;
  if (verts.front() != std::pair{0, 0} || verts.back() != std::pair{n, n}) return false;
  for (size_t r = 0; r < verts.size(); ++r) {
    auto [i, j] = verts[r];
    if (i > j) return false;
    if (r > 0) {
      auto [pi, pj] = verts[r - 1];
      if (!((i == pi + 1 && j == pj) || (i == pi && j == pj + 1))) return false;
    }
  }
  return true;
}

std::vector<StaircasePath> enumerate_paths(int n) {
  if (n < 1) throw std::invalid_argument("enumerate_paths: n must be >= 1");
  std::vector<StaircasePath> out;
  std::vector<std::pair<int, int>> cur{{0, 0}};
  auto rec = [&](auto&& self, int i, int j) -> void {
    if (i == n && j == n) {
      out.push_back({n, cur});
      return;
    }
    if (j < n) {  // up first: outer path leads, stairs path closes
      cur.emplace_back(i, j + 1);
      self(self, i, j + 1);
      cur.pop_back();
    }
    if (i < j) {
      cur.emplace_back(i + 1, j);
      self(self, i + 1, j);
      cur.pop_back();
    }
  };
  rec(rec, 0, 0);
  return out;
}

StaircasePath stairs_path(int n) {
  StaircasePath x{n, {{0, 0}}};
  for (int i = 0; i < n; ++i) {
    x.verts.emplace_back(i, i + 1);
    x.verts.emplace_back(i + 1, i + 1);
  }
  return x;
}

int area(const StaircasePath& x) {
  if (!x.valid()) throw std::invalid_argument("area: invalid path");
  int sum = 0;
  for (auto [i, j] : x.verts) sum += j - i;
  return (sum - x.n) / 2;
}

std::vector<std::pair<int, int>> flipvertices(const StaircasePath& x) {
  if (!x.valid()) throw std::invalid_argument("flipvertices: invalid path");
  std::vector<std::pair<int, int>> out;
  for (int r = 1; r < 2 * x.n; ++r) {
    auto [i, j] = x.verts[r];
    // peak: i flat before, j flat after; j >= i + 2 keeps the flipped
    // corner (i+1, j-1) weakly above the diagonal
    if (x.verts[r - 1].first == i && x.verts[r + 1].second == j && j >= i + 2)
      out.emplace_back(i, j);
  }
  return out;
}

StaircasePath flip(const StaircasePath& x, std::pair<int, int> v) {
  auto fv = flipvertices(x);
  if (std::find(fv.begin(), fv.end(), v) == fv.end())
    throw std::invalid_argument("flip: not a flipvertex");
  StaircasePath y = x;
  for (auto& w : y.verts)
    if (w == v) {
      w = {v.first + 1, v.second - 1};
      break;
    }
  return y;
}

std::optional<StaircasePath> path_through(int n,
                                          std::vector<std::pair<int, int>> corners) {
  std::sort(corners.begin(), corners.end());
  corners.erase(std::unique(corners.begin(), corners.end()), corners.end());
  std::optional<StaircasePath> found;
  for (StaircasePath& x : enumerate_paths(n)) {
    auto fv = flipvertices(x);
    std::sort(fv.begin(), fv.end());
    if (fv == corners) {
      if (found) return std::nullopt;
      found = std::move(x);
    }
  }
  return found;
}

FinPoset arrow_poset(int n) {
  if (n < 0) throw std::invalid_argument("arrow_poset: n must be >= 0");
  FinPoset P;
  std::vector<std::pair<int, int>> pts;
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      pts.emplace_back(i, j);
      std::string sep = n > 9 ? "." : "";
      P.labels.push_back(std::to_string(i) + sep + std::to_string(j));
    }
  int m = static_cast<int>(pts.size());
  P.leq.assign(m, std::vector<char>(m, 0));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      P.leq[a][b] = pts[a].first <= pts[b].first && pts[a].second <= pts[b].second;
  return P;
}

int arrow_vertex(int n, int i, int j) {
  if (i < 0 || i > j || j > n) throw std::invalid_argument("arrow_vertex: bad pair");
  // pairs listed by i, then j; row i holds n + 1 - i entries
  return i * (n + 1) - i * (i - 1) / 2 + (j - i);
}

std::pair<int, int> arrow_pair(int n, int v) {
  if (v < 0 || v >= (n + 1) * (n + 2) / 2)
    throw std::invalid_argument("arrow_pair: index out of range");
  int i = 0;
  while (v >= n + 1 - i) v -= n + 1 - i, ++i;
  return {i, i + v};
}

SimplexRef path_simplex(const PosetNerve& N, const StaircasePath& x) {
  if (!x.valid()) throw std::invalid_argument("path_simplex: invalid path");
  std::vector<int> chain;
  for (auto [i, j] : x.verts) chain.push_back(arrow_vertex(x.n, i, j));
  return nerve_chain_ref(N, chain);
}

}  // namespace fibdual
