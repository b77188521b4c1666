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

#include <random>

#include <gtest/gtest.h>

#include "gwh/gwh.hpp"
#include "oracles.hpp"

namespace {

using namespace gwh;
using V = std::vector<std::int64_t>;

WindowSpec box(std::vector<std::pair<std::int64_t, std::int64_t>> support) {
  WindowSpec w;
  w.kind = WindowSpec::Kind::box;
  w.support = std::move(support);
  return w;
}

WindowSpec gaussian(std::vector<double> width) {
  WindowSpec w;
  w.kind = WindowSpec::Kind::gaussian;
  w.width = std::move(width);
  return w;
}

template <class Rng>
WindowSpec random_samples(std::size_t n, Rng& rng) {
  WindowSpec w;
  w.kind = WindowSpec::Kind::samples;
  w.samples = oracle::random_vec(n, rng);
  return w;
}

TEST(TorusPreset, TightRieszBox) {
  const TorusSpec s{{2}, {2}, {8}, box({{0, 4}})};
  const GaborSystem sys = build_torus_gabor(s);
  EXPECT_EQ(sys.size(), 8u);
  const FrameReport r = classify(sys);
  EXPECT_NEAR(r.exact_lower, 4.0, 1e-12);
  EXPECT_NEAR(r.exact_upper, 4.0, 1e-12);
  EXPECT_TRUE(r.is_tight);
  EXPECT_TRUE(r.is_riesz);
  EXPECT_EQ(r.density_ratio, Ratio::of(1, 1));
  const Matrix gram = gram_matrix(sys);
  EXPECT_GT(std::abs(gram.determinant()), 1.0);
}

TEST(TorusPreset, OversampledModulationNeverFrame) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    const TorusSpec s{{2}, {4}, {8}, random_samples(8, rng)};
    const GaborSystem sys = build_torus_gabor(s);
    EXPECT_EQ(sys.k1.index(), 4u);
    EXPECT_EQ(sys.k2.index(), 2u);
    const FrameReport r = classify(sys);
    EXPECT_EQ(r.density_ratio, Ratio::of(2, 1));
    EXPECT_FALSE(r.is_frame);
    const auto [lo, hi] = oracle::extreme_eigs(frame_operator(sys));
    EXPECT_LT(lo, 1e-9 * hi);
  }
}

TEST(TorusPreset, TwoDimensionalCounts) {
  const TorusSpec s{{2, 2}, {2, 2}, {4, 4}, box({{0, 2}, {0, 2}})};
  const GaborSystem sys = build_torus_gabor(s);
  EXPECT_EQ(sys.group.order(), 16u);
  EXPECT_EQ(sys.size(), 16u);
  EXPECT_EQ(sys.density_ratio(), Ratio::of(1, 1));
}

TEST(Th5Verdict, Examples) {
  EXPECT_EQ(th5_density_verdict({2}, {3}), DensityVerdict::NeverFrame);
  EXPECT_EQ(th5_density_verdict({2}, {2}), DensityVerdict::RieszIffFrame);
  EXPECT_EQ(th5_density_verdict({4}, {2}), DensityVerdict::FramePossibleRedundant);
  EXPECT_EQ(th5_density_verdict({2, 3}, {3, 2}), DensityVerdict::RieszIffFrame);
  EXPECT_THROW(th5_density_verdict({2}, {2, 2}), ValidationError);
  EXPECT_THROW(th5_density_verdict({0}, {2}), ValidationError);
}

TEST(Th5Verdict, AgreesWithGridDensityRatio) {
  for (std::int64_t n = 1; n <= 6; ++n)
    for (std::int64_t m = 1; m <= 6; ++m)
      for (std::int64_t L : {12, 24, 60}) {
        const TorusSpec s{{n}, {m}, {L}, gaussian({2.0})};
        if (!is_commensurate(s)) continue;
        const Lattice k1 = torus_translation_lattice(s);
        const Lattice k2 = torus_modulation_lattice(s);
        const Ratio grid = Ratio::of(static_cast<std::int64_t>(k1.index()), static_cast<std::int64_t>(k2.index()));
        EXPECT_EQ(grid, Ratio::of(m, n));
        EXPECT_EQ(density_verdict(grid), th5_density_verdict({n}, {m}));
      }
}

TEST(TorusLattices, AnnihilatorIsFoldedModulationSet) {
  for (const TorusSpec& s : {TorusSpec{{2, 3}, {4, 1}, {8, 6}, {}}, TorusSpec{{4}, {3}, {24}, {}},
                             TorusSpec{{1, 2}, {2, 2}, {4, 4}, {}}}) {
    const auto g = torus_grid(s);
    const Lattice ann = annihilator(torus_modulation_lattice(s));
    std::vector<std::vector<std::int64_t>> gens;
    for (std::size_t j = 0; j < s.L.size(); ++j) {
      V r(s.L.size(), 0);
      r[j] = s.M[j];
      gens.push_back(r);
    }
    const auto want = oracle::closure(g.moduli(), gens);
    for (Index xi = 0; xi < g.order(); ++xi) EXPECT_EQ(ann.contains(xi), want[xi]);
  }
}

TEST(TorusLattices, IncommensurateRejected) {
  EXPECT_THROW(validate_torus_spec({{3}, {2}, {8}, {}}), ValidationError);
  EXPECT_THROW(validate_torus_spec({{2}, {3}, {8}, {}}), ValidationError);
  EXPECT_THROW(validate_torus_spec({{2}, {2}, {8, 8}, {}}), ValidationError);
  EXPECT_THROW(validate_torus_spec({{2}, {2}, {}, {}}), ValidationError);
  EXPECT_FALSE(is_commensurate({{3}, {2}, {8}, {}}));
  EXPECT_TRUE(is_commensurate({{4}, {2}, {8}, {}}));
}

TEST(Windows, Box) {
  const auto g = make_group({8});
  const Signal w = make_window(box({{0, 4}}), g);
  EXPECT_EQ(w.values, (std::vector<cplx>{1, 1, 1, 1, 0, 0, 0, 0}));
  const Signal wrap = make_window(box({{-1, 1}}), g);
  EXPECT_EQ(wrap.values, (std::vector<cplx>{1, 0, 0, 0, 0, 0, 0, 1}));
  EXPECT_THROW(make_window(box({{2, 2}}), g), ValidationError);
  EXPECT_THROW(make_window(box({{0, 9}}), g), ValidationError);
  EXPECT_THROW(make_window(box({{0, 2}, {0, 2}}), g), ValidationError);
}

TEST(Windows, GaussianPositiveEvenUnitNorm) {
  for (double w : {0.7, 2.0, 5.0, 30.0}) {
    const auto g = make_group({8});
    const Signal s = make_window(gaussian({w}), g);
    EXPECT_NEAR(s.norm(), 1.0, 1e-12);
    for (Index t = 0; t < 8; ++t) {
      EXPECT_GT(s[t].real(), 0.0);
      EXPECT_EQ(s[t].imag(), 0.0);
      EXPECT_NEAR(s[t].real(), s[g.neg(t)].real(), 1e-15);
    }
  }
  const auto g2 = make_group({6, 10});
  const Signal s2 = make_window(gaussian({1.5, 3.0}), g2);
  EXPECT_NEAR(s2.norm(), 1.0, 1e-12);
  for (Index t = 0; t < g2.order(); ++t) EXPECT_NEAR(s2[t].real(), s2[g2.neg(t)].real(), 1e-15);
  EXPECT_THROW(make_window(gaussian({-1.0}), g2), ValidationError);
}

TEST(Windows, SamplesPassThrough) {
  std::mt19937_64 rng(2);
  const auto g = make_group({3, 4});
  const WindowSpec w = random_samples(12, rng);
  EXPECT_EQ(make_window(w, g).values, w.samples);
  try {
    make_window(random_samples(11, rng), g);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "window.values");
  }
}

TEST(Commutation, PhaseMatchesOperators) {
  std::mt19937_64 rng(3);
  for (const TorusSpec& s : {TorusSpec{{4}, {3}, {12}, {}}, TorusSpec{{2, 3}, {4, 2}, {8, 6}, {}},
                             TorusSpec{{6}, {4}, {24}, {}}}) {
    const auto g = torus_grid(s);
    const Signal f = random_signal(g, rng);
    const std::size_t d = s.L.size();
    // n over prod [0, N_j), k over prod [0, L_j / M_j)
    std::vector<V> ns, ks;
    for (const auto& r : oracle::enumerate(s.N)) ns.push_back(r);
    V kext(d);
    for (std::size_t j = 0; j < d; ++j) kext[j] = s.L[j] / s.M[j];
    for (const auto& r : oracle::enumerate(kext)) ks.push_back(r);
    for (const auto& n : ns)
      for (const auto& k : ks) {
        const Index x = torus_translation(s, n);
        const Index gamma = torus_modulation(s, k);
        const Signal lhs = translate(x, modulate(gamma, f));
        const Signal rhs = modulate(gamma, translate(x, f));
        const cplx phase = torus_commutation_phase(s, n, k);
        double turns = 0;
        for (std::size_t j = 0; j < d; ++j)
          turns -= static_cast<double>(s.M[j] * n[j] * k[j]) / static_cast<double>(s.N[j]);
        EXPECT_LT(std::abs(phase - std::polar(1.0, 2 * std::numbers::pi * turns)), 1e-12);
        for (Index t = 0; t < g.order(); ++t) EXPECT_LT(std::abs(lhs[t] - phase * rhs[t]), 1e-12);
      }
  }
}

TEST(TorusBounds, EqualGroupBoundsAndSandwich) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> pick(0, 7);
  const std::vector<std::int64_t> sizes{4, 6, 8, 12, 16, 24, 32, 64};
  int checked = 0;
  for (int t = 0; t < 60; ++t) {
    const std::size_t d = 1 + static_cast<std::size_t>(t % 2);
    TorusSpec s;
    for (std::size_t j = 0; j < d; ++j) {
      std::int64_t L = sizes[static_cast<std::size_t>(pick(rng))];
      if (d == 2) L = std::min<std::int64_t>(L, 16);
      std::vector<std::int64_t> divs;
      for (std::int64_t q = 1; q <= L; ++q)
        if (L % q == 0) divs.push_back(q);
      std::uniform_int_distribution<std::size_t> dp(0, divs.size() - 1);
      s.L.push_back(L);
      s.N.push_back(divs[dp(rng)]);
      s.M.push_back(divs[dp(rng)]);
    }
    std::int64_t order = 1;
    for (auto L : s.L) order *= L;
    s.window = random_samples(static_cast<std::size_t>(order), rng);
    if (t % 3 == 0) {
      std::vector<double> w(d, 1.0 + (t % 5));
      s.window = gaussian(w);
    }
    const GaborSystem sys = build_torus_gabor(s);
    const Th4Bounds c = corollary_bounds(s, sys.window);
    const Th4Bounds b = th4_bounds(sys);
    EXPECT_NEAR(c.lower, b.lower, 1e-10 * std::abs(b.upper));
    EXPECT_NEAR(c.upper, b.upper, 1e-10 * std::abs(b.upper));
    const FrameReport r = exact_frame_bounds(sys);
    EXPECT_LE(r.exact_upper, c.upper * (1 + 1e-9));
    if (c.lower > 0) { EXPECT_LE(c.lower, r.exact_lower + 1e-9 * r.exact_upper); }
    ++checked;
  }
  EXPECT_EQ(checked, 60);
}

TEST(Refinement, PainlessClassificationStable) {
  // L / N <= support <= L / M keeps the system painless at both resolutions.
  struct Case {
    std::int64_t N, M, L, support;
  };
  for (const Case& c : {Case{2, 2, 8, 4}, Case{4, 2, 8, 4}, Case{4, 1, 8, 2}, Case{4, 2, 8, 3},
                        Case{3, 3, 12, 4}, Case{6, 2, 12, 5}}) {
    const FrameReport a = classify(build_torus_gabor({{c.N}, {c.M}, {c.L}, box({{0, c.support}})}));
    const FrameReport b =
        classify(build_torus_gabor({{c.N}, {c.M}, {2 * c.L}, box({{0, 2 * c.support}})}));
    EXPECT_TRUE(a.is_frame);
    EXPECT_EQ(a.is_frame, b.is_frame);
    EXPECT_EQ(a.is_tight, b.is_tight);
    EXPECT_EQ(a.is_riesz, b.is_riesz);
    EXPECT_EQ(a.density_ratio, b.density_ratio);
  }
}

TEST(TorusSystem, DensityRatioIsProductRatio) {
  const TorusSpec s{{4, 3}, {3, 2}, {12, 12}, gaussian({2.0, 2.5})};
  const GaborSystem sys = build_torus_gabor(s);
  EXPECT_EQ(sys.density_ratio(), Ratio::of(6, 12));
  EXPECT_EQ(sys.size(), 12u * 24u);
}

}  // namespace
