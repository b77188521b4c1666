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
/// \file gabor.hpp
///
/// Generalized Gabor systems {M_gamma T_k g : k in K1, gamma in Ann(K2)} on a
/// finite abelian group, their frame operators and frame bounds.
///
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gwh/fiber.hpp"
#include "gwh/heisenberg.hpp"
#include "gwh/lca.hpp"
#include "gwh/linalg.hpp"

namespace gwh {

inline constexpr double default_tolerance = 1e-9;

struct GaborSystem {
  FiniteLcaGroup group;
  Lattice k1;
  Lattice k2;
  Lattice ann_k2;
  Signal window;
  /// (k1, gamma2) per vector; k1 outer, gamma2 inner, both in enumeration order.
  std::vector<std::pair<Index, Index>> labels;

  std::size_t size() const noexcept { return labels.size(); }

  /// Theta_(k1, gamma2) = M_gamma2 T_k1 g for labels[i], generated on demand.
  Signal vector(std::size_t i) const {
    const auto [k, gamma] = labels.at(i);
    return modulate(gamma, translate(k, window));
  }

  std::vector<Signal> vectors() const {
    std::vector<Signal> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(vector(i));
    return out;
  }
  /// [G:K1] / [G:K2]
  Ratio density_ratio() const {
    return Ratio::of(static_cast<std::int64_t>(k1.index()), static_cast<std::int64_t>(k2.index()));
  }
};

inline GaborSystem build_gabor_system(const Lattice& k1, const Lattice& k2, const Signal& g) {
  if (k1.side() != Side::primal || k2.side() != Side::primal)
    throw ValidationError("K1 and K2 must be lattices in G", "lattice");
  require_same_group(k1.ambient(), k2.ambient(), "build_gabor_system (K1 vs K2)");
  require_same_group(k1.ambient(), g.group, "build_gabor_system (window)");
  if (g.side != Side::primal) throw ValidationError("window must live on G", "window");
  if (g.is_zero()) throw ValidationError("window must be nonzero", "window");

  GaborSystem sys{g.group, k1, k2, annihilator(k2), g, {}};
  sys.labels.reserve(k1.size() * sys.ann_k2.size());
  for (Index k : k1.elements())
    for (Index gamma : sys.ann_k2.elements()) sys.labels.emplace_back(k, gamma);
  return sys;
}

/// Columns are the system vectors.
inline Matrix synthesis_matrix(const GaborSystem& sys) {
  Matrix v(static_cast<Eigen::Index>(sys.group.order()), static_cast<Eigen::Index>(sys.size()));
  Eigen::Index c = 0;
  for (Index k : sys.k1.elements()) {
    const Signal shifted = translate(k, sys.window);
    for (Index gamma : sys.ann_k2.elements())
      v.col(c++) = to_vector(modulate(gamma, shifted));
  }
  return v;
}

/// <f, Theta_(k1, gamma2)> in system order.
inline std::vector<cplx> analysis_coefficients(const GaborSystem& sys, const Signal& f) {
  require_same_group(sys.group, f.group, "analysis_coefficients");
  std::vector<cplx> out;
  out.reserve(sys.size());
  for (std::size_t i = 0; i < sys.size(); ++i) out.push_back(inner(f, sys.vector(i)));
  return out;
}

/// S = sum_v v v^*.
inline Matrix frame_operator(const GaborSystem& sys) {
  const Matrix v = synthesis_matrix(sys);
  Matrix s = v * v.adjoint();
  if (hermitian_defect(s) > 1e-10 * std::max(1.0, max_abs(s)))
    throw TheoremViolation("assembled frame operator is not Hermitian");
  return s;
}

inline Matrix gram_matrix(const GaborSystem& sys) {
  const Matrix v = synthesis_matrix(sys);
  return v.adjoint() * v;
}

struct Th4Bounds {
  double lower = 0;
  double upper = 0;
};

namespace detail {

// s(k2) = sum_{k1} g(x - k1) conj(g(x - k1 - k2)) for every k2 in K2, in K2 order.
inline std::vector<cplx> correlation_at(const GaborSystem& sys, Index x) {
  const auto& g = sys.group;
  const auto& w = sys.window;
  std::vector<cplx> s;
  s.reserve(sys.k2.size());
  for (Index k2 : sys.k2.elements()) {
    cplx acc{};
    for (Index k1 : sys.k1.elements()) {
      const Index y = g.sub(x, k1);
      acc += w[y] * std::conj(w[g.sub(y, k2)]);
    }
    s.push_back(acc);
  }
  return s;
}

}  // namespace detail

/// The diagonal-dominance bounds
///
///   B = [G:K2] max_x sum_{k2} |s_x(k2)|,
///   A = [G:K2] min_x ( s_x(0) - sum_{k2 != 0} |s_x(k2)| ),
///
/// with s_x(k2) = sum_{k1} g(x - k1) conj(g(x - k1 - k2)). x ranges over a
/// transversal of G/K1 (the greedy one unless `transversal` is given); the
/// expressions are K1-periodic so the choice does not matter. A may be <= 0,
/// in which case it carries no information.
inline Th4Bounds th4_bounds(const GaborSystem& sys,
                            std::optional<std::span<const Index>> transversal = std::nullopt) {
  const std::vector<Index>& reps_default = sys.k1.coset_reps();
  std::span<const Index> reps = transversal ? *transversal : std::span<const Index>(reps_default);
  const double scale = static_cast<double>(sys.k2.index());
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (Index x : reps) {
    const auto s = detail::correlation_at(sys, x);
    double off = 0;
    for (std::size_t i = 1; i < s.size(); ++i) off += std::abs(s[i]);  // elements()[0] == 0
    const double diag = s[0].real();
    hi = std::max(hi, diag + off);
    lo = std::min(lo, diag - off);
  }
  return {scale * lo, scale * hi};
}

/// Right-hand side of the frame identity
///
///   sum_{k1, gamma2} |<f, Theta>|^2 = [G:K2] ( sum_x |f(x)|^2 H1(x)
///       + sum_{k2 != 0} sum_x conj(f(x)) f(x - k2) sum_{k1} g(x - k1) conj(g(x - k1 - k2)) ),
///
/// H1(x) = sum_{k1} |g(x - k1)|^2.
inline cplx wh_identity_rhs(const GaborSystem& sys, const Signal& f) {
  require_same_group(sys.group, f.group, "wh_identity_rhs");
  const auto& g = sys.group;
  const auto& w = sys.window;
  double diag = 0;
  cplx cross{};
  for (Index x = 0; x < g.order(); ++x) {
    double h1 = 0;
    for (Index k1 : sys.k1.elements()) h1 += std::norm(w[g.sub(x, k1)]);
    diag += std::norm(f[x]) * h1;
    for (std::size_t i = 1; i < sys.k2.size(); ++i) {
      const Index k2 = sys.k2.elements()[i];
      cplx corr{};
      for (Index k1 : sys.k1.elements()) {
        const Index y = g.sub(x, k1);
        corr += w[y] * std::conj(w[g.sub(y, k2)]);
      }
      cross += std::conj(f[x]) * f[g.sub(x, k2)] * corr;
    }
  }
  return static_cast<double>(sys.k2.index()) * (diag + cross);
}

/// |sum |<f, Theta>|^2 - wh_identity_rhs(f)|.
inline double wh_identity_residual(const GaborSystem& sys, const Signal& f) {
  double lhs = 0;
  for (const auto& c : analysis_coefficients(sys, f)) lhs += std::norm(c);
  return std::abs(cplx(lhs) - wh_identity_rhs(sys, f));
}

// ---------------------------------------------------------------------------
// Frame reports

/// Outcome of comparing [G:K1] with [G:K2].
enum class DensityVerdict { NeverFrame, RieszIffFrame, FramePossibleRedundant };

inline const char* to_string(DensityVerdict v) {
  switch (v) {
    case DensityVerdict::NeverFrame: return "NeverFrame";
    case DensityVerdict::RieszIffFrame: return "RieszIffFrame";
    case DensityVerdict::FramePossibleRedundant: return "FramePossibleRedundant";
  }
  return "?";
}

inline std::optional<DensityVerdict> density_verdict_from_string(const std::string& s) {
  if (s == "NeverFrame") return DensityVerdict::NeverFrame;
  if (s == "RieszIffFrame") return DensityVerdict::RieszIffFrame;
  if (s == "FramePossibleRedundant") return DensityVerdict::FramePossibleRedundant;
  return std::nullopt;
}

inline DensityVerdict density_verdict(Ratio r) {
  switch (r.compare_to_one()) {
    case 1: return DensityVerdict::NeverFrame;
    case 0: return DensityVerdict::RieszIffFrame;
    default: return DensityVerdict::FramePossibleRedundant;
  }
}

struct FrameReport {
  double exact_lower = 0;
  double exact_upper = 0;
  double th4_lower = 0;
  double th4_upper = 0;
  bool is_frame = false;
  bool is_tight = false;
  bool is_riesz = false;
  bool is_complete = false;
  Ratio density_ratio;
  std::size_t vector_count = 0;
  std::size_t group_order = 0;
  double tolerance = default_tolerance;

  DensityVerdict verdict() const { return density_verdict(density_ratio); }
};

namespace detail {

inline std::vector<Signal> modulated_window_hats(const GaborSystem& sys) {
  const Signal ghat = fourier(sys.window);
  std::vector<Signal> hats;
  for (Index gamma : sys.ann_k2.elements()) {
    // (M_gamma g)^(xi) = g^(xi - gamma)
    Signal h = Signal::zeros(sys.group, Side::dual);
    for (Index xi = 0; xi < sys.group.order(); ++xi) h[xi] = ghat[sys.group.sub(xi, gamma)];
    hats.push_back(std::move(h));
  }
  return hats;
}

inline bool gram_invertible(const GaborSystem& sys, bool is_frame, double tol) {
  const std::size_t n = sys.group.order();
  if (sys.size() > n) return false;  // rank(Gram) <= |G|
  if (sys.size() <= dense_limit) {
    const auto ev = hermitian_eigenvalues(gram_matrix(sys));
    return ev(0) > tol * ev(ev.size() - 1);
  }
  // Nonzero spectra of Gram and S coincide; with count <= |G| the Gram is
  // invertible iff it has count nonzero eigenvalues, i.e. S has rank count.
  return sys.size() == n && is_frame;
}

}  // namespace detail

/// Extreme eigenvalues of S and the classification flags.
///
/// Dense Hermitian eigensolve for |G| <= dense_limit; above that, the
/// spectrum is assembled fiber by fiber (see fiber.hpp). Riesz is decided
/// twice, from the Gram spectrum and from the vector count, and a
/// disagreement throws TheoremViolation.
inline FrameReport exact_frame_bounds(const GaborSystem& sys, double tol = default_tolerance,
                                      unsigned jobs = 1) {
  FrameReport r;
  r.tolerance = tol;
  r.vector_count = sys.size();
  r.group_order = sys.group.order();
  r.density_ratio = sys.density_ratio();
  if (sys.group.order() <= dense_limit) {
    const auto ev = hermitian_eigenvalues(frame_operator(sys));
    r.exact_lower = std::max(ev(0), 0.0);
    r.exact_upper = ev(ev.size() - 1);
  } else {
    const Lattice ann_k1 = annihilator(sys.k1);
    const auto ext = fiber_extremes(ann_k1, ann_k1.coset_reps(),
                                    detail::modulated_window_hats(sys), jobs);
    r.exact_lower = ext.lower;
    r.exact_upper = ext.upper;
  }
  // Below the eigensolver's absolute accuracy a lower bound is a rounding
  // image of zero (rank-deficient S); report it as such.
  const double noise_floor = 8.0 * static_cast<double>(sys.group.order()) *
                             std::numeric_limits<double>::epsilon() * r.exact_upper;
  if (r.exact_lower <= noise_floor) r.exact_lower = 0.0;
  const auto th4 = th4_bounds(sys);
  r.th4_lower = th4.lower;
  r.th4_upper = th4.upper;
  r.is_frame = r.exact_lower > tol * r.exact_upper;
  r.is_complete = r.is_frame;  // finite dimension: spanning == frame
  r.is_tight = r.is_frame && (r.exact_upper - r.exact_lower) <= tol * r.exact_upper;
  const bool by_gram = r.is_frame && detail::gram_invertible(sys, r.is_frame, tol);
  const bool by_count = r.is_frame && sys.size() == sys.group.order();
  if (by_gram != by_count)
    throw TheoremViolation("Riesz flag disagreement: Gram says " + std::string(by_gram ? "yes" : "no") +
                           ", vector count says " + (by_count ? "yes" : "no"));
  r.is_riesz = by_count;
  return r;
}

/// exact_frame_bounds plus the density-law cross checks: a density ratio
/// above one can never give a frame, and among frames the Riesz property
/// holds exactly when the ratio is one.
inline FrameReport classify(const GaborSystem& sys, double tol = default_tolerance,
                            unsigned jobs = 1) {
  FrameReport r = exact_frame_bounds(sys, tol, jobs);
  const int cmp = r.density_ratio.compare_to_one();
  if (cmp > 0 && r.is_frame)
    throw TheoremViolation("density ratio " + std::to_string(r.density_ratio.num) + "/" +
                           std::to_string(r.density_ratio.den) +
                           " > 1 but the spectrum reports a frame");
  if (r.is_frame && r.is_riesz != (cmp == 0))
    throw TheoremViolation("Riesz flag disagrees with density ratio");
  return r;
}

inline std::string density_diagnosis(const GaborSystem& sys, const FrameReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "not a frame: lambda_min = " << r.exact_lower << " <= " << r.tolerance
     << " * lambda_max = " << r.tolerance * r.exact_upper << "; density ratio [G:K1]/[G:K2] = "
     << sys.k1.index() << "/" << sys.k2.index();
  if (r.density_ratio.compare_to_one() > 0) os << " > 1, so no window can give a frame";
  return os.str();
}

/// S^{-1} g. The system generated by it over the same lattices is the
/// canonical dual frame. Throws NotAFrame with a density diagnosis otherwise.
inline Signal canonical_dual_window(const GaborSystem& sys, double tol = default_tolerance) {
  const FrameReport r = exact_frame_bounds(sys, tol);
  if (!r.is_frame) throw NotAFrame(density_diagnosis(sys, r));
  if (sys.group.order() <= dense_limit) {
    const Matrix s = frame_operator(sys);
    Eigen::LDLT<Matrix> ldlt(s);
    if (ldlt.info() != Eigen::Success) throw EigenFailure("LDLT of frame operator failed");
    return from_vector(sys.group, ldlt.solve(to_vector(sys.window)));
  }
  const Lattice ann_k1 = annihilator(sys.k1);
  const Signal dhat = fiber_apply_inverse(ann_k1, ann_k1.coset_reps(),
                                          detail::modulated_window_hats(sys), fourier(sys.window), tol);
  return inverse_fourier(dhat);
}

/// max_{ij} |(S U - U S)_{ij}| for U = M_gamma T_x.
inline double shift_commutation_residual(const Matrix& s, const FiniteLcaGroup& g, Index x,
                                         Index gamma) {
  // U e_c = <c + x, gamma> e_{c + x}
  double worst = 0;
  const auto n = static_cast<Eigen::Index>(g.order());
  for (Eigen::Index c = 0; c < n; ++c) {
    const Index cx = g.add(static_cast<Index>(c), x);
    const cplx uc = g.pairing(gamma, cx);
    for (Eigen::Index r = 0; r < n; ++r) {
      const cplx su = s(r, static_cast<Eigen::Index>(cx)) * uc;
      // (U S)_{r c} = <r, gamma> S_{r - x, c}
      const auto rx = static_cast<Eigen::Index>(g.sub(static_cast<Index>(r), x));
      const cplx us = g.pairing(gamma, static_cast<Index>(r)) * s(rx, c);
      worst = std::max(worst, std::abs(su - us));
    }
  }
  return worst;
}

/// Largest commutator entry of S with M_gamma T_k over all (k, gamma) in
/// K1 x Ann(K2). Zero up to rounding for every window.
inline double frame_op_commutation_residual(const GaborSystem& sys) {
  const Matrix s = frame_operator(sys);
  double worst = 0;
  for (Index k : sys.k1.elements())
    for (Index gamma : sys.ann_k2.elements())
      worst = std::max(worst, shift_commutation_residual(s, sys.group, k, gamma));
  return worst;
}

}  // namespace gwh
