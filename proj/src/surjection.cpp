#include "fibdual/surjection.hpp"

#include <algorithm>
#include <cassert>

namespace fibdual {

int SurjectionWord::operator()(int t) const {
  assert(t >= 0 && t <= n);
  int drop = 0;
  for (int c : collapsed) {
    if (c < t) ++drop;
    else break;
  }
  return t - drop;
}

bool SurjectionWord::collapses(int t) const {
  return std::binary_search(collapsed.begin(), collapsed.end(), t);
}

SurjectionWord word_identity(int n) { return SurjectionWord{n, {}}; }

SurjectionWord word_from_values(int n, const std::vector<int>& values) {
  assert(static_cast<int>(values.size()) == n + 1);
  SurjectionWord w;
  w.n = n;
  for (int t = 0; t < n; ++t)
    if (values[t] == values[t + 1]) w.collapsed.push_back(t);
  assert(values.front() == 0 && values.back() == w.m());
  return w;
}

std::vector<int> word_values(const SurjectionWord& w) {
  std::vector<int> vals(w.n + 1);
  int v = 0;
  for (int t = 0; t <= w.n; ++t) {
    vals[t] = v;
    if (!w.collapses(t)) ++v;
  }
  return vals;
}

SurjectionWord word_compose(const SurjectionWord& outer, const SurjectionWord& inner) {
  assert(outer.n == inner.m());
  std::vector<int> vals = word_values(inner);
  for (int& v : vals) v = outer(v);
  return word_from_values(inner.n, vals);
}

SurjectionWord word_reverse(const SurjectionWord& w) {
  SurjectionWord r;
  r.n = w.n;
  for (auto it = w.collapsed.rbegin(); it != w.collapsed.rend(); ++it)
    r.collapsed.push_back(w.n - 1 - *it);
  return r;
}

SurjectionWord word_degeneracy(int n, int j) {
  assert(j >= 0 && j <= n);
  return SurjectionWord{n + 1, {j}};
}

bool MonotoneMap::valid() const {
  if (static_cast<int>(values.size()) != dom + 1) return false;
  for (int t = 0; t <= dom; ++t) {
    if (values[t] < 0 || values[t] > cod) return false;
    if (t > 0 && values[t] < values[t - 1]) return false;
  }
  return true;
}

MonotoneMap mono_identity(int n) {
  MonotoneMap f{n, n, {}};
  for (int t = 0; t <= n; ++t) f.values.push_back(t);
  return f;
}

MonotoneMap mono_coface(int n, int i) {
  assert(n >= 1 && i >= 0 && i <= n);
  MonotoneMap f{n - 1, n, {}};
  for (int t = 0; t <= n; ++t)
    if (t != i) f.values.push_back(t);
  return f;
}

MonotoneMap mono_from_word(const SurjectionWord& w) {
  return MonotoneMap{w.n, w.m(), word_values(w)};
}

MonotoneMap mono_compose(const MonotoneMap& outer, const MonotoneMap& inner) {
  assert(outer.dom == inner.cod);
  MonotoneMap f{inner.dom, outer.cod, {}};
  for (int v : inner.values) f.values.push_back(outer.values[v]);
  return f;
}

MonotoneMap mono_vertex(int n, int v) { return MonotoneMap{0, n, {v}}; }

MonotoneMap mono_interval(int n, int lo, int hi) {
  assert(0 <= lo && lo <= hi && hi <= n);
  MonotoneMap f{hi - lo, n, {}};
  for (int t = lo; t <= hi; ++t) f.values.push_back(t);
  return f;
}

EpiMonoFactorization epi_mono_factor(const MonotoneMap& f) {
  EpiMonoFactorization r;
  r.image = f.values;
  r.image.erase(std::unique(r.image.begin(), r.image.end()), r.image.end());
  std::vector<int> ranks(f.dom + 1);
  for (int t = 0; t <= f.dom; ++t) {
    ranks[t] = static_cast<int>(
        std::lower_bound(r.image.begin(), r.image.end(), f.values[t]) - r.image.begin());
  }
  r.epi = word_from_values(f.dom, ranks);
  return r;
}

}  // namespace fibdual
