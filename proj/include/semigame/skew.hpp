// Copyright 2026 The Semigame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "semigame/common.hpp"
#include "semigame/digraph.hpp"
#include "semigame/distribution.hpp"
#include "semigame/rational.hpp"

namespace semigame {

// Antisymmetric {-1,0,+1} matrix with zero diagonal.
class SkewMatrix {
 public:
  explicit SkewMatrix(std::vector<std::vector<int>> entries) : m_(std::move(entries)) {
    const int k = static_cast<int>(m_.size());
    for (int i = 0; i < k; ++i) {
      require(static_cast<int>(m_[i].size()) == k, "skew matrix must be square");
      require(m_[i][i] == 0, "skew matrix must have zero diagonal");
      for (int j = 0; j < k; ++j) {
        require(m_[i][j] >= -1 && m_[i][j] <= 1, "skew matrix entries must be in {-1,0,1}");
        require(m_[i][j] == -m_[j][i], "skew matrix must be antisymmetric");
      }
    }
  }

  int size() const { return static_cast<int>(m_.size()); }
  int operator()(int i, int j) const { return m_[i][j]; }
  const std::vector<std::vector<int>>& rows() const { return m_; }

 private:
  std::vector<std::vector<int>> m_;
};

// (A_D)_{ij} = +1 if i->j, -1 if j->i, 0 otherwise.
inline SkewMatrix skew_adjacency(const Digraph& d) {
  const int k = d.vertex_count();
  std::vector<std::vector<int>> m(k, std::vector<int>(k, 0));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j) m[i][j] = d.orient(i, j);
  return SkewMatrix(std::move(m));
}

// Exact kernel dimension over the rationals, by fraction-free (Bareiss-style)
// elimination on arbitrary-precision integers.  Row/column content is integer
// throughout, so there is no growth of rational denominators and no rounding.
inline int nullspace_dimension(const SkewMatrix& m) {
  const int k = m.size();
  std::vector<std::vector<Integer>> a(k, std::vector<Integer>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) a[i][j] = m(i, j);

  int rank = 0;
  Integer previous_pivot = 1;
  for (int col = 0; col < k && rank < k; ++col) {
    int pivot_row = -1;
    for (int r = rank; r < k; ++r)
      if (sgn(a[r][col]) != 0) {
        pivot_row = r;
        break;
      }
    if (pivot_row < 0) continue;
    std::swap(a[rank], a[pivot_row]);
    for (int r = rank + 1; r < k; ++r) {
      for (int c = col + 1; c < k; ++c) {
        a[r][c] = (a[rank][col] * a[r][c] - a[r][col] * a[rank][c]) / previous_pivot;
      }
      a[r][col] = 0;
    }
    previous_pivot = a[rank][col];
    ++rank;
  }
  return k - rank;
}

enum class DetParity { even, odd };

// Parity of det(M) via elimination over GF(2); rows are packed into words.
inline DetParity det_parity(const SkewMatrix& m) {
  const int k = m.size();
  std::vector<std::uint64_t> rows(k, 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (m(i, j) != 0) rows[i] |= std::uint64_t{1} << j;

  int rank = 0;
  for (int col = 0; col < k; ++col) {
    int pivot = -1;
    for (int r = rank; r < k; ++r)
      if (rows[r] >> col & 1) {
        pivot = r;
        break;
      }
    if (pivot < 0) return DetParity::even;  // singular mod 2
    std::swap(rows[rank], rows[pivot]);
    for (int r = rank + 1; r < k; ++r)
      if (rows[r] >> col & 1) rows[r] ^= rows[rank];
    ++rank;
  }
  return DetParity::odd;
}

struct SpectralReport {
  int nullspace_dimension = 0;          // exact, over Q
  double lambda2 = 0.0;                 // smallest nonzero singular value of A_D
  double alpha = 0.0;                   // |lambda2| / k^2
  std::optional<DetParity> det_parity;  // tournaments only
};

// Singular values below 1e-9 * k count as numerically zero; that count has to
// agree with the exact kernel dimension or the report is refused.
inline SpectralReport spectral_report(const Digraph& d) {
  const int k = d.vertex_count();
  const SkewMatrix m = skew_adjacency(d);

  SpectralReport report;
  report.nullspace_dimension = nullspace_dimension(m);

  if (k > 0) {
    Eigen::MatrixXd a(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) a(i, j) = m(i, j);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const auto& sv = svd.singularValues();
    const double zero_threshold = 1e-9 * k;
    int numeric_zeros = 0;
    double smallest_nonzero = 0.0;
    for (int i = 0; i < sv.size(); ++i) {
      if (sv(i) < zero_threshold) {
        ++numeric_zeros;
      } else {
        smallest_nonzero = sv(i);  // singular values are sorted descending
      }
    }
    ensure(numeric_zeros == report.nullspace_dimension,
           "numeric zero singular values (" + std::to_string(numeric_zeros) +
               ") disagree with exact nullspace dimension (" +
               std::to_string(report.nullspace_dimension) + ")");
    report.lambda2 = smallest_nonzero;
    report.alpha = smallest_nonzero / (static_cast<double>(k) * k);
  }
  if (is_tournament(d) && k > 0) report.det_parity = det_parity(m);
  return report;
}

inline nlohmann::json spectral_report_to_json(const SpectralReport& r) {
  nlohmann::json j;
  j["nullspace_dimension"] = r.nullspace_dimension;
  j["lambda2"] = r.lambda2;
  j["alpha"] = r.alpha;
  if (r.det_parity.has_value()) {
    j["det_parity"] = *r.det_parity == DetParity::odd ? "odd" : "even";
  } else {
    j["det_parity"] = nullptr;
  }
  return j;
}

// Exact Norman round gains (A_D p)_v for every vertex.  Their p-weighted sum
// telescopes to zero by antisymmetry; that identity is asserted exactly.
inline std::vector<Rational> round_gains(const Digraph& d, const Distribution& p) {
  const int k = d.vertex_count();
  require(p.size() == k, "distribution size does not match the digraph");
  std::vector<Rational> gains(k, Rational(0));
  for (int v = 0; v < k; ++v) {
    for (int u = 0; u < k; ++u) {
      const int o = d.orient(v, u);
      if (o == 1) gains[v] += p[u];
      else if (o == -1) gains[v] -= p[u];
    }
  }
  Rational weighted = 0;
  for (int v = 0; v < k; ++v) weighted += p[v] * gains[v];
  ensure(weighted == 0, "p-weighted round gains must cancel exactly");
  return gains;
}

struct PunishGap {
  Rational lhs;       // max_v (A_D p)_v, exact
  double rhs_bound;   // alpha_D * max_v |p_v - 1/k|
};

// Lemma-style gap between Norman's best round gain and the deviation of p
// from uniform.  alpha may be passed in to amortize the SVD over sweeps.
inline PunishGap punish_gap(const Digraph& d, const Distribution& p,
                            std::optional<double> alpha = std::nullopt) {
  const int k = d.vertex_count();
  require(k >= 1, "punish gap needs at least one vertex");
  const auto gains = round_gains(d, p);
  PunishGap result{gains[0], 0.0};
  for (int v = 1; v < k; ++v)
    if (gains[v] > result.lhs) result.lhs = gains[v];

  const double a = alpha.has_value() ? *alpha : spectral_report(d).alpha;
  const Rational uniform = make_rational(1, k);
  Rational deviation = 0;
  for (int v = 0; v < k; ++v) {
    Rational dv = p[v] - uniform;
    if (sgn(dv) < 0) dv = -dv;
    if (dv > deviation) deviation = dv;
  }
  result.rhs_bound = a * to_double(deviation);
  return result;
}

}  // namespace semigame
