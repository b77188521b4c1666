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
/// \file sis.hpp
///
/// Shift-invariant systems {T_k g_m : k in K1, m = 0..M-1} and their
/// characterization through the fibers H(xi) (see fiber.hpp):
///
///  - optimal frame bounds are min / max of the spectrum of H H^* over
///    fibers, divided by [G:K1];
///  - the system is tight iff sum_m conj(g_m^(xi)) g_m^(xi + gamma) equals
///    c delta_{gamma,0} for all xi and gamma in Ann(K1); the bound is c / [G:K1];
///  - systems g, h are dual iff the same sum with h in the second slot
///    equals [G:K1] delta_{gamma,0}.
///
#pragma once

#include <optional>
#include <random>
#include <vector>

#include "gwh/fiber.hpp"
#include "gwh/gabor.hpp"
#include "gwh/heisenberg.hpp"

namespace gwh {

struct SISystem {
  FiniteLcaGroup group;
  Lattice k1;
  std::vector<Signal> generators;
  Lattice ann_k1;
  /// Transversal of dual(G) / Ann(K1); |K1| entries.
  std::vector<Index> dual_coset_reps;
  /// Fourier transforms of the generators.
  std::vector<Signal> hats;

  std::size_t size() const noexcept { return generators.size() * k1.size(); }

  /// T_k g_m with m outer, k inner.
  std::vector<Signal> vectors() const {
    std::vector<Signal> out;
    out.reserve(size());
    for (const auto& g : generators)
      for (Index k : k1.elements()) out.push_back(translate(k, g));
    return out;
  }
};

inline SISystem build_sis(const Lattice& k1, std::vector<Signal> generators) {
  if (generators.empty()) throw ValidationError("shift-invariant system needs generators", "generators");
  if (k1.side() != Side::primal) throw ValidationError("K1 must be a lattice in G", "k1");
  for (const auto& g : generators) {
    require_same_group(k1.ambient(), g.group, "build_sis");
    if (g.side != Side::primal) throw ValidationError("generators must live on G", "generators");
  }
  SISystem s;
  s.group = k1.ambient();
  s.k1 = k1;
  s.ann_k1 = annihilator(k1);
  s.dual_coset_reps = s.ann_k1.coset_reps();
  for (const auto& g : generators) s.hats.push_back(fourier(g));
  s.generators = std::move(generators);
  if (s.dual_coset_reps.size() != k1.size())
    throw TheoremViolation("dual transversal size != |K1|");
  return s;
}

/// Generators M_gamma g for gamma in Ann(K2), translated along K1. Its vectors
/// agree with the Gabor vectors up to the unimodular factors <k, gamma>, so
/// both systems have the same frame operator.
inline SISystem gabor_as_sis(const GaborSystem& sys) {
  std::vector<Signal> gens;
  gens.reserve(sys.ann_k2.size());
  for (Index gamma : sys.ann_k2.elements()) gens.push_back(modulate(gamma, sys.window));
  return build_sis(sys.k1, std::move(gens));
}

struct HFiber {
  Index xi = 0;
  /// Rows over Ann(K1) in enumeration order, columns over generators;
  /// entries g_m^(xi - gamma).
  Matrix matrix;
};

inline HFiber h_fiber(const SISystem& s, Index xi) {
  if (xi >= s.group.order()) throw ValidationError("character out of range", "xi");
  return {xi, fiber_matrix(s.ann_k1, s.hats, xi)};
}

inline Matrix sis_frame_operator(const SISystem& s) {
  const auto n = static_cast<Eigen::Index>(s.group.order());
  Matrix out = Matrix::Zero(n, n);
  for (const auto& v : s.vectors()) {
    const Vector c = to_vector(v);
    out.noalias() += c * c.adjoint();
  }
  return out;
}

struct FiberBounds {
  double lower = 0;
  double upper = 0;
};

inline FiberBounds fiber_frame_bounds(const SISystem& s, unsigned jobs = 1) {
  const auto e = fiber_extremes(s.ann_k1, s.dual_coset_reps, s.hats, jobs);
  return {e.lower, e.upper};
}

/// Singular values of H(xi), descending.
inline std::vector<double> fiber_singular_values(const SISystem& s, Index xi) {
  const Matrix h = h_fiber(s, xi).matrix;
  Eigen::JacobiSVD<Matrix> svd(h);
  const auto& sv = svd.singularValues();
  return {sv.data(), sv.data() + sv.size()};
}

/// Bessel with bound B iff ||H(xi)||^2 <= [G:K1] B on every fiber.
inline bool fiber_bessel_with_bound(const SISystem& s, double bound) {
  const double idx = static_cast<double>(s.ann_k1.size());
  for (Index xi : s.dual_coset_reps) {
    const auto sv = fiber_singular_values(s, xi);
    const double top = sv.empty() ? 0.0 : sv.front();
    if (top * top > idx * bound) return false;
  }
  return true;
}

namespace detail {

// sum_m conj(a_m^(xi)) b_m^(xi + gamma)
inline cplx bracket_sum(const std::vector<Signal>& a, const std::vector<Signal>& b,
                        const FiniteLcaGroup& g, Index xi, Index gamma) {
  cplx acc{};
  const Index shifted = g.add(xi, gamma);
  for (std::size_t m = 0; m < a.size(); ++m) acc += std::conj(a[m][xi]) * b[m][shifted];
  return acc;
}

}  // namespace detail

/// The tightness constant c, if the system is tight. When present, the
/// frame bound c / [G:K1] is also checked against the fiber spectrum.
inline std::optional<double> tight_check(const SISystem& s, double tol = default_tolerance) {
  const auto& g = s.group;
  const double c = detail::bracket_sum(s.hats, s.hats, g, 0, 0).real();
  double scale = c;
  for (Index xi = 0; xi < g.order(); ++xi)
    scale = std::max(scale, detail::bracket_sum(s.hats, s.hats, g, xi, 0).real());
  if (!(scale > 0)) return std::nullopt;
  for (Index xi = 0; xi < g.order(); ++xi) {
    for (Index gamma : s.ann_k1.elements()) {
      const cplx v = detail::bracket_sum(s.hats, s.hats, g, xi, gamma);
      const cplx want = gamma == 0 ? cplx(c) : cplx{};
      if (std::abs(v - want) > tol * scale) return std::nullopt;
    }
  }
  const double bound = c / static_cast<double>(s.ann_k1.size());
  const auto fb = fiber_frame_bounds(s);
  if (std::abs(fb.lower - bound) > tol * bound || std::abs(fb.upper - bound) > tol * bound)
    throw TheoremViolation("tight constant disagrees with fiber spectrum");
  return c;
}

/// sum_{m, k} <f, T_k g_m> T_k h_m.
inline Signal sis_reconstruct(const SISystem& analysis, const SISystem& synthesis, const Signal& f) {
  const auto gv = analysis.vectors();
  const auto hv = synthesis.vectors();
  Signal out = Signal::zeros(f.group);
  for (std::size_t i = 0; i < gv.size(); ++i) {
    const cplx c = inner(f, gv[i]);
    for (Index t = 0; t < f.size(); ++t) out[t] += c * hv[i][t];
  }
  return out;
}

struct DualityResult {
  bool dual = false;
  /// max over xi, gamma of |bracket - [G:K1] delta| / [G:K1].
  double condition_residual = 0;
  /// max relative reconstruction error over the probe signals.
  double reconstruction_residual = 0;
};

/// Fiber duality test, cross-checked by reconstructing fixed pseudo-random
/// probe signals.
inline DualityResult duality_check(const SISystem& gs, const SISystem& hs,
                                   double tol = default_tolerance, int probes = 3) {
  require_same_group(gs.group, hs.group, "duality_check");
  if (!(gs.k1 == hs.k1)) throw ValidationError("duality_check needs the same K1", "k1");
  if (gs.generators.size() != hs.generators.size())
    throw ValidationError("duality_check needs equal generator counts", "generators");
  const auto& g = gs.group;
  const double idx = static_cast<double>(gs.ann_k1.size());
  DualityResult r;
  for (Index xi = 0; xi < g.order(); ++xi) {
    for (Index gamma : gs.ann_k1.elements()) {
      const cplx v = detail::bracket_sum(gs.hats, hs.hats, g, xi, gamma);
      const cplx want = gamma == 0 ? cplx(idx) : cplx{};
      r.condition_residual = std::max(r.condition_residual, std::abs(v - want) / idx);
    }
  }
  std::mt19937_64 rng(0x5eedu);
  for (int p = 0; p < probes; ++p) {
    const Signal f = random_signal(g, rng);
    const Signal rec = sis_reconstruct(gs, hs, f);
    double err = 0;
    for (Index t = 0; t < f.size(); ++t) err += std::norm(rec[t] - f[t]);
    r.reconstruction_residual = std::max(r.reconstruction_residual, std::sqrt(err / f.norm2()));
  }
  r.dual = r.condition_residual <= tol;
  if (r.dual && r.reconstruction_residual > 1e-7)
    throw TheoremViolation("fiber duality holds but reconstruction fails");
  if (r.condition_residual > 1e-5 && r.reconstruction_residual < 1e-10)
    throw TheoremViolation("fiber duality fails but reconstruction is exact");
  return r;
}

/// P(e, f)(x) = sum_{m, k} <T_x e, T_k g_m> <T_k h_m, T_x f> for every x in G,
/// by direct summation. K1-periodic.
inline std::vector<cplx> sis_bracket_function(const SISystem& gs, const SISystem& hs,
                                              const Signal& e, const Signal& f) {
  const auto gv = gs.vectors();
  const auto hv = hs.vectors();
  std::vector<cplx> p(gs.group.order());
  for (Index x = 0; x < gs.group.order(); ++x) {
    const Signal ex = translate(x, e);
    const Signal fx = translate(x, f);
    cplx acc{};
    for (std::size_t i = 0; i < gv.size(); ++i) acc += inner(ex, gv[i]) * inner(hv[i], fx);
    p[x] = acc;
  }
  return p;
}

/// Coefficients c_gamma (gamma over Ann(K1) in enumeration order) of
/// P(e, f) = sum_gamma c_gamma <., gamma>, from the Fourier side:
///
///   c_gamma = [G:K1]^{-1} |G|^{-1} sum_xi e^(xi) conj(f^(xi + gamma))
///             sum_m conj(g_m^(xi)) h_m^(xi + gamma).
inline std::vector<cplx> sis_bracket_coefficients(const SISystem& gs, const SISystem& hs,
                                                  const Signal& e, const Signal& f) {
  const auto& g = gs.group;
  const Signal eh = fourier(e);
  const Signal fh = fourier(f);
  const double norm = 1.0 / (static_cast<double>(gs.ann_k1.size()) * static_cast<double>(g.order()));
  std::vector<cplx> c;
  for (Index gamma : gs.ann_k1.elements()) {
    cplx acc{};
    for (Index xi = 0; xi < g.order(); ++xi)
      acc += eh[xi] * std::conj(fh[g.add(xi, gamma)]) *
             detail::bracket_sum(gs.hats, hs.hats, g, xi, gamma);
    c.push_back(acc * norm);
  }
  return c;
}

}  // namespace gwh
