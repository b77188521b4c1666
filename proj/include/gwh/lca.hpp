// Copyright 2026 The gwh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

///
/// \file lca.hpp
///
/// Finite abelian groups G = Z_{n_1} x ... x Z_{n_d}, their characters,
/// subgroups (lattices), annihilators and the Fourier transform.
///
/// Conventions used throughout the library:
///
///  - Elements are written additively and enumerated lexicographically on
///    their residues (first residue most significant). Most routines work on
///    the enumeration index directly.
///  - The dual group has the same moduli. The pairing is
///    <x, xi> = exp(2 pi i sum_j xi_j x_j / n_j).
///  - Haar measure is counting measure on G, on every subgroup K and on
///    G/K, so |G/K| = [G:K]. The dual measure is counting / |G|, which makes
///    the inverse transform carry the 1/|G| and gives Plancherel
///    sum_x |f(x)|^2 = (1/|G|) sum_xi |f^(xi)|^2.
///
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "gwh/errors.hpp"

namespace gwh {

using cplx = std::complex<double>;
using Index = std::size_t;

inline constexpr std::size_t default_order_cap = 65536;

/// Which side of the duality a set of residues lives on.
enum class Side { primal, dual };

inline const char* to_string(Side s) { return s == Side::primal ? "G" : "dual(G)"; }

class FiniteLcaGroup {
 public:
  FiniteLcaGroup() : FiniteLcaGroup(std::vector<std::int64_t>{1}) {}

  explicit FiniteLcaGroup(std::vector<std::int64_t> moduli,
                          std::size_t order_cap = default_order_cap)
      : moduli_(std::move(moduli)) {
    if (moduli_.empty()) throw ValidationError("group needs at least one modulus", "moduli");
    std::size_t order = 1;
    for (auto n : moduli_) {
      if (n < 1)
        throw ValidationError("modulus " + std::to_string(n) + " must be >= 1", "moduli");
      if (static_cast<std::size_t>(n) > order_cap / order)
        throw ValidationError("group order exceeds cap " + std::to_string(order_cap), "moduli");
      order *= static_cast<std::size_t>(n);
    }
    order_ = order;
    strides_.assign(moduli_.size(), 1);
    for (std::size_t j = moduli_.size() - 1; j > 0; --j)
      strides_[j - 1] = strides_[j] * static_cast<std::size_t>(moduli_[j]);
    auto roots = std::make_shared<std::vector<cplx>>(order_);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(order_);
    for (std::size_t e = 0; e < order_; ++e) (*roots)[e] = unit_root(e, order_, step);
    roots_ = std::move(roots);
  }

  const std::vector<std::int64_t>& moduli() const noexcept { return moduli_; }
  std::size_t rank() const noexcept { return moduli_.size(); }
  std::size_t order() const noexcept { return order_; }
  std::size_t stride(std::size_t axis) const { return strides_.at(axis); }

  bool operator==(const FiniteLcaGroup& o) const { return moduli_ == o.moduli_; }

  Index index_of(std::span<const std::int64_t> residues) const {
    if (residues.size() != moduli_.size())
      throw ValidationError("element has " + std::to_string(residues.size()) +
                                " residues, group has rank " + std::to_string(rank()),
                            "element");
    Index idx = 0;
    for (std::size_t j = 0; j < moduli_.size(); ++j) {
      if (residues[j] < 0 || residues[j] >= moduli_[j])
        throw ValidationError("residue " + std::to_string(residues[j]) +
                                  " out of range [0," + std::to_string(moduli_[j]) + ")",
                              "element");
      idx += static_cast<Index>(residues[j]) * strides_[j];
    }
    return idx;
  }

  /// Like index_of but reduces each residue modulo n_j first.
  Index index_of_reduced(std::span<const std::int64_t> residues) const {
    std::vector<std::int64_t> r(residues.begin(), residues.end());
    if (r.size() != moduli_.size()) return index_of(r);
    for (std::size_t j = 0; j < r.size(); ++j) r[j] = ((r[j] % moduli_[j]) + moduli_[j]) % moduli_[j];
    return index_of(r);
  }

  std::vector<std::int64_t> residues_of(Index idx) const {
    std::vector<std::int64_t> r(moduli_.size());
    for (std::size_t j = 0; j < moduli_.size(); ++j) {
      r[j] = static_cast<std::int64_t>((idx / strides_[j]) % static_cast<Index>(moduli_[j]));
    }
    return r;
  }

  std::int64_t residue(Index idx, std::size_t axis) const {
    return static_cast<std::int64_t>((idx / strides_[axis]) %
                                     static_cast<Index>(moduli_[axis]));
  }

  Index add(Index a, Index b) const { return combine(a, b, 1); }
  Index sub(Index a, Index b) const { return combine(a, b, -1); }
  Index neg(Index a) const { return sub(0, a); }

  /// c * a for an integer multiplier c.
  Index scale(Index a, std::int64_t c) const {
    Index out = 0;
    for (std::size_t j = 0; j < moduli_.size(); ++j) {
      const std::int64_t n = moduli_[j];
      const std::int64_t r = residue(a, j);
      const std::int64_t v = (((r * (c % n)) % n) + n) % n;
      out += static_cast<Index>(v) * strides_[j];
    }
    return out;
  }

  /// Exponent e in [0,|G|) with <x, xi> = exp(2 pi i e / |G|). Pure integer
  /// arithmetic; the pairing is trivial exactly when this is zero.
  std::size_t pairing_exponent(Index xi, Index x) const {
    std::uint64_t e = 0;
    for (std::size_t j = 0; j < moduli_.size(); ++j) {
      const auto n = static_cast<std::uint64_t>(moduli_[j]);
      const auto p = (static_cast<std::uint64_t>(residue(xi, j)) *
                      static_cast<std::uint64_t>(residue(x, j))) % n;
      e = (e + p * (order_ / n)) % order_;
    }
    return static_cast<std::size_t>(e);
  }

  /// exp(2 pi i e / |G|).
  cplx root(std::size_t e) const { return (*roots_)[e % order_]; }

  cplx pairing(Index xi, Index x) const { return root(pairing_exponent(xi, x)); }

 private:
  static cplx unit_root(std::size_t e, std::size_t n, double step) {
    // Exact values on the axes keep characters of small groups bit-exact.
    if (e == 0) return {1.0, 0.0};
    if (4 * e == n) return {0.0, 1.0};
    if (2 * e == n) return {-1.0, 0.0};
    if (4 * e == 3 * n) return {0.0, -1.0};
    const double a = step * static_cast<double>(e);
    return {std::cos(a), std::sin(a)};
  }

  Index combine(Index a, Index b, std::int64_t sign) const {
    Index out = 0;
    for (std::size_t j = 0; j < moduli_.size(); ++j) {
      const std::int64_t n = moduli_[j];
      std::int64_t v = residue(a, j) + sign * residue(b, j);
      v %= n;
      if (v < 0) v += n;
      out += static_cast<Index>(v) * strides_[j];
    }
    return out;
  }

  std::vector<std::int64_t> moduli_;
  std::vector<std::size_t> strides_;
  std::size_t order_ = 1;
  std::shared_ptr<const std::vector<cplx>> roots_;
};

inline FiniteLcaGroup make_group(std::vector<std::int64_t> moduli,
                                 std::size_t order_cap = default_order_cap) {
  return FiniteLcaGroup(std::move(moduli), order_cap);
}

inline void require_same_group(const FiniteLcaGroup& a, const FiniteLcaGroup& b,
                               const char* what) {
  if (!(a == b)) throw ValidationError(std::string("group mismatch in ") + what, "group");
}

/// An element of G, as residues.
struct GroupElement {
  std::vector<std::int64_t> residues;
};

/// A character xi of G, indexed by residues in the (isomorphic) dual group.
struct Character {
  std::vector<std::int64_t> residues;
};

/// <x, xi> = exp(2 pi i sum_j xi_j x_j / n_j).
inline cplx pairing(const FiniteLcaGroup& g, const Character& xi, const GroupElement& x) {
  return g.pairing(g.index_of(xi.residues), g.index_of(x.residues));
}

// ---------------------------------------------------------------------------
// Lattices

/// A subgroup K of G (or of the dual group). Every subgroup of a finite group
/// is a uniform lattice.
class Lattice {
 public:
  Lattice() = default;

  Lattice(FiniteLcaGroup ambient, Side side, std::vector<Index> generators,
          std::vector<Index> elements)
      : ambient_(std::move(ambient)), side_(side), generators_(std::move(generators)),
        elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
    member_.assign(ambient_.order(), 0);
    for (Index e : elements_) member_[e] = 1;
    // Greedy transversal: smallest enumeration index not yet covered.
    coset_of_.assign(ambient_.order(), npos);
    for (Index x = 0; x < ambient_.order(); ++x) {
      if (coset_of_[x] != npos) continue;
      const std::size_t c = coset_reps_.size();
      coset_reps_.push_back(x);
      for (Index k : elements_) coset_of_[ambient_.add(x, k)] = c;
    }
  }

  const FiniteLcaGroup& ambient() const noexcept { return ambient_; }
  Side side() const noexcept { return side_; }
  const std::vector<Index>& generators() const noexcept { return generators_; }
  const std::vector<Index>& elements() const noexcept { return elements_; }
  const std::vector<Index>& coset_reps() const noexcept { return coset_reps_; }
  std::size_t size() const noexcept { return elements_.size(); }
  /// [G:K]
  std::size_t index() const noexcept { return coset_reps_.size(); }
  bool contains(Index x) const { return member_.at(x) != 0; }
  /// Position of x's coset in coset_reps().
  std::size_t coset_of(Index x) const { return coset_of_.at(x); }
  Index rep_of(Index x) const { return coset_reps_[coset_of(x)]; }

  bool operator==(const Lattice& o) const {
    return side_ == o.side_ && ambient_ == o.ambient_ && elements_ == o.elements_;
  }

  std::vector<std::vector<std::int64_t>> generator_residues() const {
    std::vector<std::vector<std::int64_t>> out;
    for (Index g : generators_) out.push_back(ambient_.residues_of(g));
    return out;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  FiniteLcaGroup ambient_;
  Side side_ = Side::primal;
  std::vector<Index> generators_;
  std::vector<Index> elements_{0};
  std::vector<char> member_;
  std::vector<Index> coset_reps_;
  std::vector<std::size_t> coset_of_;
};

/// Smallest subgroup containing the given generators (enumeration indices).
inline Lattice subgroup_closure(const FiniteLcaGroup& g, std::vector<Index> generators,
                                Side side = Side::primal) {
  std::vector<char> in(g.order(), 0);
  std::vector<Index> elems{0};
  in[0] = 1;
  for (Index gen : generators) {
    if (gen >= g.order()) throw ValidationError("generator index out of range", "generators");
    if (in[gen]) continue;
    // H <- H + <gen>: add cosets c*gen + H until c*gen falls back into H.
    const std::vector<Index> base = elems;
    Index step = gen;
    while (!in[step]) {
      for (Index h : base) {
        const Index y = g.add(step, h);
        in[y] = 1;
        elems.push_back(y);
      }
      step = g.add(step, gen);
    }
  }
  return Lattice(g, side, std::move(generators), std::move(elems));
}

inline Lattice subgroup_closure(const FiniteLcaGroup& g,
                                std::span<const GroupElement> generators,
                                Side side = Side::primal) {
  std::vector<Index> idx;
  idx.reserve(generators.size());
  for (const auto& e : generators) idx.push_back(g.index_of(e.residues));
  return subgroup_closure(g, std::move(idx), side);
}

/// A small generating set for an explicit subgroup, chosen greedily in
/// enumeration order.
inline std::vector<Index> greedy_generators(const FiniteLcaGroup& g,
                                            const std::vector<Index>& elements) {
  std::vector<Index> gens;
  Lattice cur = subgroup_closure(g, gens);
  for (Index e : elements) {
    if (cur.contains(e)) continue;
    gens.push_back(e);
    cur = subgroup_closure(g, gens);
    if (cur.size() == elements.size()) break;
  }
  return gens;
}

/// Ann(K) = { xi : <k, xi> = 1 for all k in K }, a lattice on the other side.
/// Decided by integer congruence on the generators of K.
inline Lattice annihilator(const Lattice& k) {
  const auto& g = k.ambient();
  std::vector<Index> gens = k.generators();
  if (gens.empty()) gens = k.elements();
  std::vector<Index> ann;
  for (Index xi = 0; xi < g.order(); ++xi) {
    bool kills = true;
    for (Index x : gens) {
      if (g.pairing_exponent(xi, x) != 0) {
        kills = false;
        break;
      }
    }
    if (kills) ann.push_back(xi);
  }
  const Side other = k.side() == Side::primal ? Side::dual : Side::primal;
  auto ann_gens = greedy_generators(g, ann);
  Lattice out(g, other, std::move(ann_gens), std::move(ann));
  if (out.size() != k.index())
    throw TheoremViolation("|Ann(K)| != [G:K]");
  return out;
}

/// Every subgroup of g, ordered by (size, element list).
inline std::vector<Lattice> all_subgroups(const FiniteLcaGroup& g, Side side = Side::primal) {
  std::set<std::vector<Index>> found;
  std::vector<Lattice> out;
  out.push_back(subgroup_closure(g, std::vector<Index>{}, side));
  found.insert(out.back().elements());
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (Index x = 0; x < g.order(); ++x) {
      if (out[i].contains(x)) continue;
      auto gens = out[i].generators();
      gens.push_back(x);
      Lattice next = subgroup_closure(g, std::move(gens), side);
      if (found.insert(next.elements()).second) {
        out.push_back(std::move(next));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Lattice& a, const Lattice& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.elements() < b.elements();
  });
  return out;
}

/// One element per coset of K, each chosen uniformly at random within its
/// coset. Used to check section-independence of coset-based quantities.
template <class Rng>
std::vector<Index> random_transversal(const Lattice& k, Rng& rng) {
  std::vector<Index> reps;
  reps.reserve(k.index());
  std::uniform_int_distribution<std::size_t> pick(0, k.size() - 1);
  for (Index r : k.coset_reps()) reps.push_back(k.ambient().add(r, k.elements()[pick(rng)]));
  return reps;
}

// ---------------------------------------------------------------------------
// Signals

/// A complex function on G (or on the dual group), in enumeration order.
struct Signal {
  FiniteLcaGroup group;
  std::vector<cplx> values;
  Side side = Side::primal;

  Signal() = default;
  Signal(FiniteLcaGroup g, std::vector<cplx> v, Side s = Side::primal)
      : group(std::move(g)), values(std::move(v)), side(s) {
    if (values.size() != group.order())
      throw ValidationError("signal length " + std::to_string(values.size()) +
                                " does not match |G| = " + std::to_string(group.order()),
                            "signal");
  }

  static Signal zeros(const FiniteLcaGroup& g, Side s = Side::primal) {
    return Signal(g, std::vector<cplx>(g.order()), s);
  }
  static Signal delta(const FiniteLcaGroup& g, Index at, Side s = Side::primal) {
    Signal out = zeros(g, s);
    out.values.at(at) = 1.0;
    return out;
  }

  std::size_t size() const noexcept { return values.size(); }
  const cplx& operator[](Index i) const { return values[i]; }
  cplx& operator[](Index i) { return values[i]; }

  double norm2() const {
    double s = 0;
    for (const auto& v : values) s += std::norm(v);
    return s;
  }
  double norm() const { return std::sqrt(norm2()); }
  bool is_zero() const {
    return std::all_of(values.begin(), values.end(), [](cplx v) { return v == cplx{}; });
  }
};

inline cplx inner(const Signal& a, const Signal& b) {
  require_same_group(a.group, b.group, "inner");
  cplx s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
  return s;
}

template <class Rng>
Signal random_signal(const FiniteLcaGroup& g, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Signal s = Signal::zeros(g);
  for (auto& v : s.values) v = {n(rng), n(rng)};
  return s;
}

namespace detail {

// In-place DFT along every axis with kernel exp(sign * 2 pi i xi x / n_j).
inline void separable_dft(const FiniteLcaGroup& g, std::vector<cplx>& a, int sign) {
  std::vector<cplx> line, out;
  for (std::size_t j = 0; j < g.rank(); ++j) {
    const auto n = static_cast<std::size_t>(g.moduli()[j]);
    if (n == 1) continue;
    const std::size_t stride = g.stride(j);
    const std::size_t unit = g.order() / n;  // root exponent for 1/n turn
    line.resize(n);
    out.resize(n);
    for (Index base = 0; base < g.order(); ++base) {
      if (g.residue(base, j) != 0) continue;
      for (std::size_t t = 0; t < n; ++t) line[t] = a[base + t * stride];
      for (std::size_t k = 0; k < n; ++k) {
        cplx s{};
        for (std::size_t t = 0; t < n; ++t) {
          const std::size_t e = (k * t) % n * unit;
          const cplx w = g.root(e);
          s += line[t] * (sign > 0 ? w : std::conj(w));
        }
        out[k] = s;
      }
      for (std::size_t k = 0; k < n; ++k) a[base + k * stride] = out[k];
    }
  }
}

}  // namespace detail

/// f^(xi) = sum_x conj(<x, xi>) f(x).
inline Signal fourier(const Signal& f) {
  if (f.side != Side::primal) throw ValidationError("fourier expects a signal on G", "signal");
  Signal out(f.group, f.values, Side::dual);
  detail::separable_dft(f.group, out.values, -1);
  return out;
}

/// Inverse of fourier: f(x) = (1/|G|) sum_xi <x, xi> f^(xi).
inline Signal inverse_fourier(const Signal& fhat) {
  if (fhat.side != Side::dual)
    throw ValidationError("inverse_fourier expects a signal on the dual group", "signal");
  Signal out(fhat.group, fhat.values, Side::primal);
  detail::separable_dft(fhat.group, out.values, +1);
  const double inv = 1.0 / static_cast<double>(fhat.group.order());
  for (auto& v : out.values) v *= inv;
  return out;
}

/// sum_x f(x) evaluated as sum over coset representatives r of sum_{k in K} f(r + k).
inline cplx sum_over_cosets(const Signal& f, const Lattice& k) {
  cplx total{};
  for (Index r : k.coset_reps()) {
    cplx inner_sum{};
    for (Index e : k.elements()) inner_sum += f[k.ambient().add(r, e)];
    total += inner_sum;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Exact ratios

/// A nonnegative rational in lowest terms.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Ratio of(std::int64_t n, std::int64_t d) {
    const auto g = std::gcd(n, d);
    return {n / g, d / g};
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  int compare_to_one() const { return num < den ? -1 : (num == den ? 0 : 1); }
  bool operator==(const Ratio&) const = default;
};

}  // namespace gwh
