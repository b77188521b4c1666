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
/// \file fiber.hpp
///
/// Block diagonalization of shift-invariant frame operators.
///
/// For generators g_m and a lattice K1, the Fourier transform splits the
/// frame operator S = sum_{m, k in K1} T_k g_m (T_k g_m)^* into |K1| blocks,
/// one per coset xi + Ann(K1) of the dual group. On the block of xi,
///
///   (S f)^ restricted to xi - Ann(K1) = [G:K1]^{-1} H(xi) H(xi)^* F(xi),
///
/// where H(xi)_{gamma, m} = g_m^(xi - gamma) and F(xi)_gamma = f^(xi - gamma).
/// This is the only place the dual measure weight 1/|G| is folded into the
/// [G:K1]^{-1} factor; every fiber quantity elsewhere is derived from here.
///
#pragma once

#include <algorithm>
#include <limits>
#include <thread>
#include <vector>

#include "gwh/linalg.hpp"

namespace gwh {

/// H(xi): rows over ann_k1.elements(), columns over generators.
inline Matrix fiber_matrix(const Lattice& ann_k1, const std::vector<Signal>& hats, Index xi) {
  const auto& g = ann_k1.ambient();
  const auto& rows = ann_k1.elements();
  Matrix h(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(hats.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Index at = g.sub(xi, rows[r]);
    for (std::size_t m = 0; m < hats.size(); ++m)
      h(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(m)) = hats[m][at];
  }
  return h;
}

struct FiberExtremes {
  double lower = 0;
  double upper = 0;
};

/// min / max over fibers of the extreme eigenvalues of H H^*, divided by
/// [G:K1] = |Ann(K1)|. `dual_reps` is a transversal of dual(G) / Ann(K1).
/// Fibers are split across `jobs` threads; min and max are order independent
/// so the result does not depend on scheduling.
inline FiberExtremes fiber_extremes(const Lattice& ann_k1, const std::vector<Index>& dual_reps,
                                    const std::vector<Signal>& hats, unsigned jobs = 1) {
  const double idx = static_cast<double>(ann_k1.size());
  const std::size_t n = dual_reps.size();
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  std::vector<FiberExtremes> partial(jobs, {std::numeric_limits<double>::infinity(),
                                            -std::numeric_limits<double>::infinity()});
  std::vector<std::exception_ptr> errors(jobs);
  auto work = [&](unsigned w) {
    try {
      for (std::size_t i = w; i < n; i += jobs) {
        const Matrix h = fiber_matrix(ann_k1, hats, dual_reps[i]);
        const Eigen::VectorXd ev = hermitian_eigenvalues(h * h.adjoint());
        partial[w].lower = std::min(partial[w].lower, ev(0));
        partial[w].upper = std::max(partial[w].upper, ev(ev.size() - 1));
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  FiberExtremes out{std::numeric_limits<double>::infinity(),
                    -std::numeric_limits<double>::infinity()};
  for (unsigned w = 0; w < jobs; ++w) {
    if (errors[w]) std::rethrow_exception(errors[w]);
    out.lower = std::min(out.lower, partial[w].lower);
    out.upper = std::max(out.upper, partial[w].upper);
  }
  out.lower = std::max(out.lower, 0.0) / idx;
  out.upper /= idx;
  return out;
}

/// Applies S^{-1} fiber by fiber to a signal given by its Fourier transform.
/// Throws NotAFrame if some fiber is singular.
inline Signal fiber_apply_inverse(const Lattice& ann_k1, const std::vector<Index>& dual_reps,
                                  const std::vector<Signal>& hats, const Signal& fhat,
                                  double rel_tol = 1e-9) {
  const auto& g = ann_k1.ambient();
  const double idx = static_cast<double>(ann_k1.size());
  const auto& rows = ann_k1.elements();
  Signal out = Signal::zeros(g, Side::dual);
  for (Index xi : dual_reps) {
    const Matrix h = fiber_matrix(ann_k1, hats, xi);
    const Matrix block = (h * h.adjoint()) / idx;
    Vector rhs(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
      rhs(static_cast<Eigen::Index>(r)) = fhat[g.sub(xi, rows[r])];
    Eigen::SelfAdjointEigenSolver<Matrix> es(block);
    if (es.info() != Eigen::Success) throw EigenFailure("fiber eigensolver failed");
    const auto& ev = es.eigenvalues();
    if (ev(0) <= rel_tol * std::max(ev(ev.size() - 1), 0.0) || ev(ev.size() - 1) <= 0)
      throw NotAFrame("frame operator is singular on a fiber");
    const Vector y = es.eigenvectors() *
                     (ev.cwiseInverse().cast<cplx>().asDiagonal() *
                      (es.eigenvectors().adjoint() * rhs));
    for (std::size_t r = 0; r < rows.size(); ++r)
      out[g.sub(xi, rows[r])] = y(static_cast<Eigen::Index>(r));
  }
  return out;
}

}  // namespace gwh
