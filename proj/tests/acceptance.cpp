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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Spectra and Gabor vectors come from the
// independent oracles in oracles.hpp wherever the library is the subject.
//
// Usage: acceptance [path/to/gwh [path/to/sweep.json]]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include <unistd.h>

#include "gwh/app.hpp"
#include "oracles.hpp"

namespace {

using namespace gwh;
using oracle::Res;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// ---------------------------------------------------------------------------
// Helpers

std::vector<bool> mask_of(const Lattice& k) {
  std::vector<bool> m(k.ambient().order());
  for (Index x : k.elements()) m[x] = true;
  return m;
}

std::vector<std::vector<cplx>> oracle_vectors(const GaborSystem& sys) {
  return oracle::gabor_vectors(sys.group.moduli(), mask_of(sys.k1), mask_of(sys.k2), sys.window.values);
}

std::pair<double, double> oracle_bounds(const GaborSystem& sys) {
  return oracle::extreme_eigs(oracle::frame_operator(oracle_vectors(sys), sys.group.order()));
}

struct Family {
  FiniteLcaGroup group;
  std::vector<Lattice> subgroups;
};

std::vector<Family> families(const std::vector<Res>& moduli) {
  std::vector<Family> out;
  for (const auto& m : moduli) {
    auto g = make_group(m);
    auto subs = all_subgroups(g);
    out.push_back({std::move(g), std::move(subs)});
  }
  return out;
}

template <class Rng>
const Lattice& pick(const std::vector<Lattice>& v, Rng& rng) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

template <class Rng>
Signal unit_random(const FiniteLcaGroup& g, Rng& rng) {
  Signal s = random_signal(g, rng);
  const double n = s.norm();
  for (auto& v : s.values) v /= n;
  return s;
}

double rel_dist(const Signal& a, const Signal& b) {
  double e = 0;
  for (Index t = 0; t < a.size(); ++t) e += std::norm(a[t] - b[t]);
  return std::sqrt(e / b.norm2());
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

// ---------------------------------------------------------------------------
// 1. Frame identity

Outcome frame_identity() {
  std::mt19937_64 rng(101);
  const auto fams = families({{12}, {6, 4}, {8, 2}});
  double worst = 0;
  for (int i = 0; i < 500; ++i) {
    const auto& [g, subs] = fams[static_cast<std::size_t>(i) % fams.size()];
    const GaborSystem sys = build_gabor_system(pick(subs, rng), pick(subs, rng), random_signal(g, rng));
    const Signal f = random_signal(g, rng);
    double lhs = 0;
    for (const auto& v : oracle_vectors(sys)) lhs += std::norm(oracle::dot(f.values, v));
    worst = std::max(worst, std::abs(cplx(lhs) - wh_identity_rhs(sys, f)) / lhs);
  }
  return {worst < 1e-9, "500 cases, max relative residual " + fmt(worst)};
}

// ---------------------------------------------------------------------------
// 2. Diagonal-dominance sandwich

Outcome sandwich() {
  std::mt19937_64 rng(202);
  const auto fams = families({{16}, {12}, {6, 4}, {8, 8}, {4, 4, 4}, {16, 16}, {32, 8}, {2, 2, 2, 2, 2, 2}, {64}});
  std::normal_distribution<double> noise;
  int found = 0, attempts = 0, violations = 0;
  while (found < 200 && attempts < 200000) {
    ++attempts;
    const auto& [g, subs] = fams[std::uniform_int_distribution<std::size_t>(0, fams.size() - 1)(rng)];
    const Lattice& k1 = pick(subs, rng);
    const Lattice& k2 = pick(subs, rng);
    if (k1.size() * k2.index() > 2 * g.order()) continue;
    // Concentrated windows: a random bump on a small K2-free set plus noise.
    Signal w = Signal::zeros(g);
    for (Index r : k2.coset_reps())
      if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) w[r] = {1.0 + noise(rng) * 0.2, noise(rng) * 0.2};
    const double eps = std::uniform_real_distribution<double>(0.0, 0.05)(rng);
    for (auto& v : w.values) v += eps * cplx(noise(rng), noise(rng));
    const GaborSystem sys = build_gabor_system(k1, k2, w);
    const Th4Bounds b = th4_bounds(sys);
    if (!(b.lower > 0)) continue;
    ++found;
    const auto [lo, hi] = oracle_bounds(sys);
    if (b.lower > lo + 1e-9 * hi || hi > b.upper + 1e-9 * hi) ++violations;
  }

  // Painless family: window supported on a transversal of G/K2 makes every
  // off-diagonal correlation vanish, so both bounds are attained.
  int painless = 0, inexact = 0;
  {
    const auto g = make_group({4});
    const GaborSystem sys = build_gabor_system(subgroup_closure(g, std::vector<Index>{1}),
                                               subgroup_closure(g, std::vector<Index>{2}),
                                               Signal(g, {1.0, 1.0, 0.0, 0.0}));
    const Th4Bounds b = th4_bounds(sys);
    const auto [lo, hi] = oracle_bounds(sys);
    ++painless;
    if (b.lower != 4.0 || b.upper != 4.0 || std::abs(lo - 4) > 1e-12 || std::abs(hi - 4) > 1e-12) ++inexact;
  }
  for (int i = 0; i < 100; ++i) {
    const auto& [g, subs] = fams[static_cast<std::size_t>(i) % 5];
    const Lattice& k1 = pick(subs, rng);
    const Lattice& k2 = pick(subs, rng);
    Signal w = Signal::zeros(g);
    for (Index r : random_transversal(k2, rng)) w[r] = cplx(noise(rng), noise(rng));
    const GaborSystem sys = build_gabor_system(k1, k2, w);
    const Th4Bounds b = th4_bounds(sys);
    const auto [lo, hi] = oracle_bounds(sys);
    ++painless;
    if (std::abs(b.lower - lo) > 1e-9 * hi || std::abs(b.upper - hi) > 1e-9 * hi) ++inexact;
  }
  return {found == 200 && violations == 0 && inexact == 0,
          std::to_string(found) + " systems with A > 0 (" + std::to_string(attempts) + " drawn), " +
              std::to_string(violations) + " violations; " + std::to_string(painless) +
              " painless systems, " + std::to_string(inexact) + " inexact"};
}

// ---------------------------------------------------------------------------
// 3. Density law

Outcome density_law() {
  std::mt19937_64 rng(303);
  int pairs = 0, false_frames = 0, ratio_one = 0, riesz_checked = 0, counterexamples = 0;
  for (const Res& m : {Res{12}, Res{8, 2}}) {
    const auto g = make_group(m);
    const auto subs = all_subgroups(g);
    for (const auto& k1 : subs)
      for (const auto& k2 : subs) {
        const int cmp = Ratio::of(static_cast<std::int64_t>(k1.index()), static_cast<std::int64_t>(k2.index()))
                            .compare_to_one();
        if (cmp > 0) {
          ++pairs;
          for (int w = 0; w < 100; ++w) {
            const GaborSystem sys = build_gabor_system(k1, k2, unit_random(g, rng));
            if (oracle_bounds(sys).first >= 1e-9) ++false_frames;
          }
        } else if (cmp == 0) {
          ++ratio_one;
          for (int w = 0; w < 20; ++w) {
            const GaborSystem sys = build_gabor_system(k1, k2, unit_random(g, rng));
            const FrameReport r = exact_frame_bounds(sys);
            if (!r.is_frame) continue;
            ++riesz_checked;
            // Gram from oracle vectors
            const auto vecs = oracle_vectors(sys);
            const auto n = static_cast<Eigen::Index>(vecs.size());
            oracle::Mat gram(n, n);
            for (Eigen::Index a = 0; a < n; ++a)
              for (Eigen::Index b = 0; b < n; ++b)
                gram(a, b) = oracle::dot(vecs[static_cast<std::size_t>(b)], vecs[static_cast<std::size_t>(a)]);
            const auto [glo, ghi] = oracle::extreme_eigs(gram);
            const bool gram_ok = glo > 1e-9 * ghi;
            const bool count_ok = vecs.size() == g.order();
            if (r.is_riesz != count_ok || count_ok != gram_ok) ++counterexamples;
          }
        }
      }
  }
  return {false_frames == 0 && counterexamples == 0 && riesz_checked > 0,
          std::to_string(pairs) + " oversampled pairs x 100 windows, " + std::to_string(false_frames) +
              " false frames; " + std::to_string(riesz_checked) + " ratio-1 frames over " +
              std::to_string(ratio_one) + " pairs, " + std::to_string(counterexamples) + " counterexamples"};
}

// ---------------------------------------------------------------------------
// 4. Torus verdicts

Outcome torus_verdicts() {
  std::mt19937_64 rng(404);
  int verdict_bad = 0, false_frames = 0, frames = 0, non_riesz = 0, missing = 0;
  for (std::int64_t n = 1; n <= 4; ++n)
    for (std::int64_t m = 1; m <= 4; ++m) {
      TorusSpec s{{n}, {m}, {24}, {}};
      const bool never = th5_density_verdict(s.N, s.M) == DensityVerdict::NeverFrame;
      if (never != (m > n)) ++verdict_bad;
      std::vector<WindowSpec> windows;
      for (std::int64_t len : {1, 4, 6, 8, 12}) windows.push_back({WindowSpec::Kind::box, {{0, len}}, {}, {}});
      for (double w : {1.0, 2.0, 3.0, 5.0}) windows.push_back({WindowSpec::Kind::gaussian, {}, {w}, {}});
      for (int r = 0; r < 10; ++r)
        windows.push_back({WindowSpec::Kind::samples, {}, {}, random_signal(torus_grid(s), rng).values});
      bool any = false;
      for (const auto& w : windows) {
        s.window = w;
        const GaborSystem sys = build_torus_gabor(s);
        if (!(sys.density_ratio() == Ratio::of(m, n))) ++verdict_bad;
        const FrameReport r = classify(sys);
        if (r.is_frame) {
          any = true;
          ++frames;
          if (m > n) ++false_frames;
          if (m == n && !r.is_riesz) ++non_riesz;
        }
      }
      if (m <= n && !any) ++missing;
    }
  return {verdict_bad == 0 && false_frames == 0 && non_riesz == 0 && missing == 0,
          "16 (N, M) pairs: " + std::to_string(verdict_bad) + " verdict errors, " + std::to_string(frames) +
              " frames found, " + std::to_string(false_frames) + " above density, " + std::to_string(non_riesz) +
              " non-Riesz at M = N, " + std::to_string(missing) + " admissible pairs without a frame"};
}

// ---------------------------------------------------------------------------
// 5. Fiber equivalence

Outcome fiber_equivalence() {
  std::mt19937_64 rng(505);
  const auto fams = families({{8}, {12}, {6, 4}, {8, 2}, {16, 8}, {4, 4, 2}, {128}, {2, 2, 2, 2, 2}, {10, 6}});
  double worst = 0;
  int bessel_bad = 0;
  for (int i = 0; i < 100; ++i) {
    const auto& [g, subs] = fams[static_cast<std::size_t>(i) % fams.size()];
    const Lattice& k1 = pick(subs, rng);
    const int count = std::uniform_int_distribution<int>(1, 4)(rng);
    std::vector<Signal> gens;
    for (int m = 0; m < count; ++m) gens.push_back(random_signal(g, rng));
    const SISystem s = build_sis(k1, gens);
    std::vector<std::vector<cplx>> vecs;
    for (const auto& gen : gens)
      for (Index k : k1.elements()) vecs.push_back(oracle::shift(g.moduli(), g.residues_of(k), gen.values));
    const auto [lo, hi] = oracle::extreme_eigs(oracle::frame_operator(vecs, g.order()));
    const auto fb = fiber_frame_bounds(s);
    worst = std::max({worst, std::abs(fb.lower - std::max(lo, 0.0)) / hi, std::abs(fb.upper - hi) / hi});
    // Fiber Bessel bound <=> spectral Bessel bound.
    if (!fiber_bessel_with_bound(s, hi * (1 + 1e-9))) ++bessel_bad;
    if (fiber_bessel_with_bound(s, hi * (1 - 1e-6))) ++bessel_bad;
    const Signal f = random_signal(g, rng);
    double energy = 0;
    for (const auto& v : vecs) energy += std::norm(oracle::dot(f.values, v));
    if (energy > fb.upper * f.norm2() * (1 + 1e-9)) ++bessel_bad;
  }
  return {worst < 1e-8 && bessel_bad == 0,
          "100 systems, max relative bound gap " + fmt(worst) + ", " + std::to_string(bessel_bad) +
              " Bessel disagreements"};
}

// ---------------------------------------------------------------------------
// 6. Duality

Outcome duality() {
  std::mt19937_64 rng(606);
  const auto fams = families({{12}, {6, 4}, {8, 2}, {16}, {4, 4}});
  std::normal_distribution<double> noise;
  int pairs = 0, good_fail = 0, bad_pass = 0;
  double worst_cond = 0, worst_rec = 0, best_bad_cond = 1e300, best_bad_rec = 1e300;
  while (pairs < 20) {
    const auto& [g, subs] = fams[static_cast<std::size_t>(pairs) % fams.size()];
    const GaborSystem sys = build_gabor_system(pick(subs, rng), pick(subs, rng), unit_random(g, rng));
    if (!exact_frame_bounds(sys).is_frame) continue;
    ++pairs;
    const Signal dual = canonical_dual_window(sys);
    Signal bad = dual;
    for (auto& v : bad.values) v += 1e-3 * cplx(noise(rng), noise(rng));
    const SISystem gs = gabor_as_sis(sys);
    const SISystem hs = gabor_as_sis(build_gabor_system(sys.k1, sys.k2, dual));
    const SISystem bs = gabor_as_sis(build_gabor_system(sys.k1, sys.k2, bad));
    const DualityResult r = duality_check(gs, hs, 1e-9);
    const DualityResult rb = duality_check(gs, bs, 1e-9);
    double rec = 0, rec_bad = 1e300;
    for (int p = 0; p < 100; ++p) {
      const Signal f = random_signal(g, rng);
      rec = std::max(rec, rel_dist(sis_reconstruct(gs, hs, f), f));
      rec_bad = std::min(rec_bad, rel_dist(sis_reconstruct(gs, bs, f), f));
    }
    worst_cond = std::max(worst_cond, r.condition_residual);
    worst_rec = std::max(worst_rec, rec);
    best_bad_cond = std::min(best_bad_cond, rb.condition_residual);
    best_bad_rec = std::min(best_bad_rec, rec_bad);
    if (!r.dual || rec >= 1e-8) ++good_fail;
    if (rb.dual || rec_bad < 1e-8) ++bad_pass;
  }
  return {good_fail == 0 && bad_pass == 0,
          std::to_string(pairs) + " canonical pairs (condition " + fmt(worst_cond) + ", reconstruction " +
              fmt(worst_rec) + "), perturbed duals min condition " + fmt(best_bad_cond) +
              ", min reconstruction " + fmt(best_bad_rec)};
}

// ---------------------------------------------------------------------------
// 7. Tightness

Outcome tightness() {
  std::mt19937_64 rng(707);
  const auto fams = families({{12}, {6, 4}, {8, 2}, {16}, {4, 4}, {24}});
  int systems = 0, bad = 0;
  double worst_c = 0, worst_dual = 0;
  while (systems < 40) {
    const auto& [g, subs] = fams[static_cast<std::size_t>(systems) % fams.size()];
    const Lattice& k1 = pick(subs, rng);
    const Lattice& k2 = pick(subs, rng);
    const GaborSystem base = build_gabor_system(k1, k2, unit_random(g, rng));
    const auto [lo, hi] = oracle_bounds(base);
    if (lo <= 1e-6 * hi) continue;
    // S^{-1/2} g generates a Parseval frame; rescale to a random bound.
    Eigen::SelfAdjointEigenSolver<Matrix> es(frame_operator(base));
    const double scale = std::uniform_real_distribution<double>(0.5, 3.0)(rng);
    const Signal tight = from_vector(g, es.operatorInverseSqrt() * to_vector(base.window) * scale);
    const GaborSystem sys = build_gabor_system(k1, k2, tight);
    ++systems;
    const auto c = tight_check(gabor_as_sis(sys));
    const auto [tlo, thi] = oracle_bounds(sys);
    if (!c) {
      ++bad;
      continue;
    }
    const double a = *c / static_cast<double>(k1.index());
    worst_c = std::max({worst_c, std::abs(a - tlo) / thi, std::abs(a - thi) / thi});
    const Signal dual = canonical_dual_window(sys);
    Signal scaled = tight;
    for (auto& v : scaled.values) v /= a;
    const double d = rel_dist(dual, scaled);
    worst_dual = std::max(worst_dual, d);
    if (std::abs(a - tlo) > 1e-9 * thi || std::abs(a - thi) > 1e-9 * thi || d > 1e-10) ++bad;
  }
  return {bad == 0, std::to_string(systems) + " tight systems, max |c/[G:K1] - lambda| / lambda " + fmt(worst_c) +
                        ", max |dual - g/A| / |g/A| " + fmt(worst_dual)};
}

// ---------------------------------------------------------------------------
// 8. Representation algebra

Outcome representation() {
  std::mt19937_64 rng(808);
  std::vector<FiniteLcaGroup> groups;
  for (const Res& m : {Res{12}, Res{6, 4}, Res{8, 2}, Res{5, 3}, Res{2, 2, 2}}) groups.push_back(make_group(m));
  std::uniform_int_distribution<std::int64_t> turn(0, 359);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto& g = groups[static_cast<std::size_t>(i) % groups.size()];
    std::uniform_int_distribution<Index> el(0, g.order() - 1);
    const HeisenbergElement a{g, el(rng), el(rng), Phase::from_turns(turn(rng), 360)};
    const HeisenbergElement b{g, el(rng), el(rng), Phase::from_turns(turn(rng), 360)};
    const Signal f = random_signal(g, rng);
    const double fn = f.norm();
    // pi(a) pi(b) = pi(ab)
    worst = std::max(worst, oracle::max_diff(schrodinger(a, schrodinger(b, f)).values,
                                             schrodinger(hw_compose(a, b), f).values) / fn);
    // unitarity
    worst = std::max(worst, std::abs(schrodinger(a, f).norm() - fn) / fn);
    // pi(a) against the oracle: z <t, gamma> f(t - x)
    std::vector<cplx> ref = oracle::mod(g.moduli(), g.residues_of(a.gamma),
                                        oracle::shift(g.moduli(), g.residues_of(a.x), f.values));
    for (auto& v : ref) v *= a.z.value();
    worst = std::max(worst, oracle::max_diff(schrodinger(a, f).values, ref) / fn);
    // T_x M_gamma = conj(<x, gamma>) M_gamma T_x
    const Signal lhs = translate(a.x, modulate(a.gamma, f));
    Signal rhs = modulate(a.gamma, translate(a.x, f));
    const cplx phase = std::conj(oracle::chi(g.moduli(), g.residues_of(a.gamma), g.residues_of(a.x)));
    for (auto& v : rhs.values) v *= phase;
    worst = std::max(worst, oracle::max_diff(lhs.values, rhs.values) / fn);
  }
  // Torus phase exp(-2 pi i sum M n k / N) against the operators.
  for (int i = 0; i < 200; ++i) {
    const TorusSpec s = i % 2 ? TorusSpec{{4}, {3}, {12}, {}} : TorusSpec{{2, 3}, {4, 2}, {8, 6}, {}};
    const auto g = torus_grid(s);
    const Signal f = random_signal(g, rng);
    std::vector<std::int64_t> n, k;
    double turns = 0;
    for (std::size_t j = 0; j < s.L.size(); ++j) {
      n.push_back(std::uniform_int_distribution<std::int64_t>(0, s.N[j] - 1)(rng));
      k.push_back(std::uniform_int_distribution<std::int64_t>(0, s.L[j] / s.M[j] - 1)(rng));
      turns -= static_cast<double>(s.M[j] * n[j] * k[j]) / static_cast<double>(s.N[j]);
    }
    const cplx phase = torus_commutation_phase(s, n, k);
    worst = std::max(worst, std::abs(phase - std::polar(1.0, 2 * std::numbers::pi * turns)));
    const Index x = torus_translation(s, n);
    const Index gamma = torus_modulation(s, k);
    const Signal lhs = translate(x, modulate(gamma, f));
    Signal rhs = modulate(gamma, translate(x, f));
    for (auto& v : rhs.values) v *= phase;
    worst = std::max(worst, oracle::max_diff(lhs.values, rhs.values) / f.norm());
  }
  return {worst < 1e-10, "1000 group cases + 200 torus phases, max residual " + fmt(worst)};
}

// ---------------------------------------------------------------------------
// 9. Frame operator commutation

oracle::Mat shift_matrix(const FiniteLcaGroup& g, Index x, Index gamma) {
  const auto n = static_cast<Eigen::Index>(g.order());
  oracle::Mat u(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    std::vector<cplx> e(g.order());
    e[static_cast<std::size_t>(c)] = 1;
    const auto col = oracle::mod(g.moduli(), g.residues_of(gamma), oracle::shift(g.moduli(), g.residues_of(x), e));
    for (Eigen::Index r = 0; r < n; ++r) u(r, c) = col[static_cast<std::size_t>(r)];
  }
  return u;
}

Outcome commutation() {
  std::mt19937_64 rng(909);
  const auto fams = families({{12}, {6, 4}, {8, 2}, {16}, {4, 4}, {24}});
  int frames = 0, controls = 0;
  double worst = 0, weakest_control = 1e300;
  while (frames < 50) {
    const auto& [g, subs] = fams[static_cast<std::size_t>(frames) % fams.size()];
    const Lattice& k1 = pick(subs, rng);
    const GaborSystem sys = build_gabor_system(k1, pick(subs, rng), unit_random(g, rng));
    const oracle::Mat s = oracle::frame_operator(oracle_vectors(sys), g.order());
    const auto [lo, hi] = oracle::extreme_eigs(s);
    if (lo <= 1e-9 * hi) continue;
    ++frames;
    for (Index k : sys.k1.elements())
      for (Index gamma : sys.ann_k2.elements()) {
        const oracle::Mat u = shift_matrix(g, k, gamma);
        worst = std::max(worst, (s * u - u * s).cwiseAbs().maxCoeff() / hi);
      }
    if (k1.size() < g.order()) {
      Index x = 0;
      while (k1.contains(x)) x = std::uniform_int_distribution<Index>(0, g.order() - 1)(rng);
      const oracle::Mat u = shift_matrix(g, x, 0);
      weakest_control = std::min(weakest_control, (s * u - u * s).cwiseAbs().maxCoeff());
      ++controls;
    }
  }
  return {worst < 1e-10 && controls > 0 && weakest_control > 1e-3,
          "50 frames, max residual / |S| " + fmt(worst) + "; " + std::to_string(controls) +
              " non-lattice controls, smallest commutator " + fmt(weakest_control)};
}

// ---------------------------------------------------------------------------
// 10. Sweep determinism

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome sweep_determinism(const std::string& binary, const std::string& config_path) {
  const json config = json::parse(R"({
    "torus": {"N": [1], "M": [1], "L": [24], "window": {"kind": "gaussian", "width": [3.0]}},
    "ranges": {"N": [[1, 4]], "M": [[1, 4]], "gaussianWidth": [1.5, 2.0, 3.0, 4.0]}
  })");
  const std::string a = app::cmd_sweep(config, 1, default_tolerance);
  const std::string b = app::cmd_sweep(config, 1, default_tolerance);
  const std::string c = app::cmd_sweep(config, 8, default_tolerance);
  bool ok = a == b && a == c;
  std::string detail = "in-process: " + std::string(ok ? "identical" : "DIFFERENT");
  if (!binary.empty()) {
    const auto dir = std::filesystem::temp_directory_path() / ("gwh_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const std::filesystem::path cfg = config_path.empty() ? dir / "sweep.json" : std::filesystem::path(config_path);
    if (config_path.empty()) std::ofstream(cfg) << config.dump(2);
    auto run = [&](const char* name, int jobs) {
      const auto out = dir / name;
      const std::string cmd = "\"" + binary + "\" sweep --config \"" + cfg.string() + "\" --jobs " +
                              std::to_string(jobs) + " --out \"" + out.string() + "\"";
      const int rc = std::system(cmd.c_str());
      return rc == 0 ? slurp(out) : std::string("<exit ") + std::to_string(rc) + ">";
    };
    const std::string r1 = run("run1.csv", 1), r2 = run("run2.csv", 1), r8 = run("run8.csv", 8);
    const bool bin_ok = r1 == r2 && r1 == r8 && r1.rfind(app::sweep_header, 0) == 0;
    ok = ok && bin_ok;
    detail += ", binary: " + std::string(bin_ok ? "identical" : "DIFFERENT") + " (" +
              std::to_string(std::count(r1.begin(), r1.end(), '\n')) + " lines)";
    std::filesystem::remove_all(dir);
  }
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string binary = argc > 1 ? argv[1] : "";
  const std::string sweep_config = argc > 2 ? argv[2] : "";
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "frame identity", 10, frame_identity},
      {2, "diagonal-dominance sandwich", 30, sandwich},
      {3, "density law", 60, density_law},
      {4, "torus verdicts", 30, torus_verdicts},
      {5, "fiber equivalence", 30, fiber_equivalence},
      {6, "duality", 20, duality},
      {7, "tightness", 10, tightness},
      {8, "representation algebra", 10, representation},
      {9, "frame operator commutation", 20, commutation},
      {10, "sweep determinism", 30, [&] { return sweep_determinism(binary, sweep_config); }},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= c.limit_s) {
      o.pass = false;
      o.detail += "; over the " + fmt(c.limit_s) + " s limit";
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %d (%s): %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
