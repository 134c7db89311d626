#pragma once

#include <compare>
#include <vector>

namespace fibdual {

// Monotone surjection [n] ->> [m], stored by the positions t where w(t) = w(t+1).
// m is implicit: n - collapsed.size().  Identity = empty collapsed set.
struct SurjectionWord {
  int n = 0;
  std::vector<int> collapsed;  // sorted, each in [0, n-1]

  int m() const { return n - static_cast<int>(collapsed.size()); }
  bool identity() const { return collapsed.empty(); }
  int operator()(int t) const;  // value of the map at t
  bool collapses(int t) const;  // is t in the collapsed set?

  auto operator<=>(const SurjectionWord&) const = default;
};

SurjectionWord word_identity(int n);
SurjectionWord word_from_values(int n, const std::vector<int>& values);
std::vector<int> word_values(const SurjectionWord& w);

// outer(inner(t)); inner: [n]->>[m], outer: [m]->>[k]
SurjectionWord word_compose(const SurjectionWord& outer, const SurjectionWord& inner);

// conjugation by order reversal: w'(t) = m - w(n - t)
SurjectionWord word_reverse(const SurjectionWord& w);

// the degeneracy s_j: [n+1] ->> [n]
SurjectionWord word_degeneracy(int n, int j);

// An arbitrary monotone map [dom] -> [cod], by its value table.
struct MonotoneMap {
  int dom = 0;
  int cod = 0;
  std::vector<int> values;  // size dom+1, weakly increasing into [0, cod]

  bool valid() const;
  auto operator<=>(const MonotoneMap&) const = default;
};

MonotoneMap mono_identity(int n);
MonotoneMap mono_coface(int n, int i);       // d_i: [n-1] -> [n], skipping i
MonotoneMap mono_from_word(const SurjectionWord& w);
MonotoneMap mono_compose(const MonotoneMap& outer, const MonotoneMap& inner);
MonotoneMap mono_vertex(int n, int v);       // [0] -> [n] hitting v
MonotoneMap mono_interval(int n, int lo, int hi);  // [hi-lo] -> [n], t -> lo+t

// f = include . epi with epi onto [k] and include the inclusion of the image.
struct EpiMonoFactorization {
  SurjectionWord epi;        // [dom] ->> [k]
  std::vector<int> image;    // the k+1 values hit, sorted
};
EpiMonoFactorization epi_mono_factor(const MonotoneMap& f);

}  // namespace fibdual
