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

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "gwh/lca.hpp"

namespace gwh {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Largest |G| for which operators are assembled densely.
inline constexpr std::size_t dense_limit = 4096;

inline Vector to_vector(const Signal& s) {
  return Eigen::Map<const Vector>(s.values.data(), static_cast<Eigen::Index>(s.size()));
}

inline Signal from_vector(const FiniteLcaGroup& g, const Vector& v, Side side = Side::primal) {
  return Signal(g, std::vector<cplx>(v.data(), v.data() + v.size()), side);
}

/// Ascending eigenvalues of a Hermitian matrix.
inline Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  if (m.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw EigenFailure("Hermitian eigensolver failed on a " + std::to_string(m.rows()) +
                       "x" + std::to_string(m.cols()) + " matrix");
  return es.eigenvalues();
}

/// Largest |m_ij - m_ji^*|.
inline double hermitian_defect(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace gwh
