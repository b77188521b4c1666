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
/// \file heisenberg.hpp
///
/// The Weyl-Heisenberg group H_G = G x dual(G) x T with composition
///
///   (x1, g1, z1) . (x2, g2, z2) = (x1 + x2, g1 + g2, z1 z2 conj(<x1, g2>))
///
/// and its Schroedinger representation (pi(x, g, z) f)(t) = z <t, g> f(t - x).
///
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>

#include "gwh/lca.hpp"

namespace gwh {

/// A point on the unit circle. Phases produced by pairings are kept as exact
/// rational turns so long products never drift off the circle; arbitrary
/// unit complex numbers fall back to floating point.
class Phase {
 public:
  Phase() = default;

  static Phase from_turns(std::int64_t num, std::int64_t den) {
    if (den <= 0) throw ValidationError("phase denominator must be positive", "z");
    Phase p;
    p.exact_ = true;
    reduce(num, den);
    p.num_ = num;
    p.den_ = den;
    p.value_ = turns_to_complex(num, den);
    return p;
  }

  static Phase from_complex(cplx z) {
    if (std::abs(std::abs(z) - 1.0) > 1e-12)
      throw ValidationError("central component must have modulus 1", "z");
    Phase p;
    p.exact_ = false;
    p.value_ = z;
    return p;
  }

  cplx value() const noexcept { return value_; }
  bool is_exact() const noexcept { return exact_; }
  /// Exact angle in turns, when known.
  std::optional<std::pair<std::int64_t, std::int64_t>> turns() const {
    if (!exact_) return std::nullopt;
    return std::make_pair(num_, den_);
  }

  Phase operator*(const Phase& o) const {
    if (exact_ && o.exact_) {
      const std::int64_t l = std::lcm(den_, o.den_);
      if (l <= (std::int64_t{1} << 40))
        return from_turns(num_ * (l / den_) + o.num_ * (l / o.den_), l);
    }
    Phase p;
    p.exact_ = false;
    p.value_ = value_ * o.value_;
    p.value_ /= std::abs(p.value_);
    return p;
  }

  Phase conj() const {
    if (exact_) return from_turns(-num_, den_);
    return from_complex(std::conj(value_));
  }

 private:
  static void reduce(std::int64_t& num, std::int64_t& den) {
    num %= den;
    if (num < 0) num += den;
    const auto g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  static cplx turns_to_complex(std::int64_t num, std::int64_t den) {
    if (num == 0) return {1.0, 0.0};
    if (4 * num == den) return {0.0, 1.0};
    if (2 * num == den) return {-1.0, 0.0};
    if (4 * num == 3 * den) return {0.0, -1.0};
    const double a = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
    return {std::cos(a), std::sin(a)};
  }

  bool exact_ = true;
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  cplx value_{1.0, 0.0};
};

/// <x, gamma> as an exact phase.
inline Phase pairing_phase(const FiniteLcaGroup& g, Index gamma, Index x) {
  return Phase::from_turns(static_cast<std::int64_t>(g.pairing_exponent(gamma, x)),
                           static_cast<std::int64_t>(g.order()));
}

struct HeisenbergElement {
  FiniteLcaGroup group;
  Index x = 0;
  Index gamma = 0;
  Phase z;

  static HeisenbergElement identity(const FiniteLcaGroup& g) { return {g, 0, 0, Phase{}}; }
};

/// (x1, g1, z1)(x2, g2, z2) = (x1 + x2, g1 + g2, z1 z2 conj(<x1, g2>)).
///
/// The conjugate on the cocycle is what makes `schrodinger` a homomorphism:
/// M_g1 T_x1 M_g2 T_x2 = conj(<x1, g2>) M_(g1 + g2) T_(x1 + x2).
inline HeisenbergElement hw_compose(const HeisenbergElement& a, const HeisenbergElement& b) {
  require_same_group(a.group, b.group, "hw_compose");
  const auto& g = a.group;
  return {g, g.add(a.x, b.x), g.add(a.gamma, b.gamma),
          a.z * b.z * pairing_phase(g, b.gamma, a.x).conj()};
}

/// (x, g, z)^{-1} = (-x, -g, conj(z) conj(<x, g>)).
inline HeisenbergElement hw_inverse(const HeisenbergElement& h) {
  const auto& g = h.group;
  return {g, g.neg(h.x), g.neg(h.gamma), (h.z * pairing_phase(g, h.gamma, h.x)).conj()};
}

/// (T_x f)(t) = f(t - x)
inline Signal translate(Index x, const Signal& f) {
  const auto& g = f.group;
  Signal out = Signal::zeros(g, f.side);
  for (Index t = 0; t < g.order(); ++t) out[g.add(t, x)] = f[t];
  return out;
}

/// (M_gamma f)(t) = <t, gamma> f(t)
inline Signal modulate(Index gamma, const Signal& f) {
  const auto& g = f.group;
  Signal out = Signal::zeros(g, f.side);
  for (Index t = 0; t < g.order(); ++t) out[t] = g.pairing(gamma, t) * f[t];
  return out;
}

/// Schroedinger representation: (pi(x, gamma, z) f)(t) = z <t, gamma> f(t - x).
inline Signal schrodinger(const HeisenbergElement& h, const Signal& f) {
  require_same_group(h.group, f.group, "schrodinger");
  const auto& g = f.group;
  const cplx z = h.z.value();
  Signal out = Signal::zeros(g, f.side);
  for (Index t = 0; t < g.order(); ++t) out[t] = z * g.pairing(h.gamma, t) * f[g.sub(t, h.x)];
  return out;
}

}  // namespace gwh
