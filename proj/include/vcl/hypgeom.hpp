// Copyright 2026 The vcl Authors
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

/// \file
/// Finite windows onto word-metric geometry: Cayley balls, Gromov products,
/// thin-triangle estimates, quasi-geodesic checks and validators for the
/// quantitative hyperbolic-geometry lemmas (midpoints, concatenation of
/// quasi-geodesics, divergence of c^n d^m, minimal conjugation splits).
///
/// Everything measured on a finite sample is a lower bound on the true
/// constant of the ambient space; reports label it as such.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "vcl/oracles.hpp"
#include "vcl/words.hpp"

namespace vcl {

class FiniteMetricSpace {
 public:
  FiniteMetricSpace(std::vector<Word> points, std::vector<std::int64_t> dist)
      : points_(std::move(points)), dist_(std::move(dist)) {
    const std::size_t n = points_.size();
    if (dist_.size() != n * n) {
      throw PreconditionError("distance table must be |points|^2");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (d(i, i) != 0) throw PreconditionError("d(i,i) must be 0");
      for (std::size_t j = 0; j < n; ++j) {
        if (d(i, j) < 0 || d(i, j) != d(j, i)) {
          throw PreconditionError("distance must be symmetric and >= 0");
        }
      }
      index_.emplace(points_[i], i);
    }
  }

  std::size_t size() const { return points_.size(); }
  const Word& point(std::size_t i) const { return points_.at(i); }
  std::int64_t d(std::size_t i, std::size_t j) const {
    return dist_[i * points_.size() + j];
  }
  std::optional<std::size_t> index_of(const Word& w) const {
    auto it = index_.find(w);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  void require(std::size_t i) const {
    if (i >= points_.size()) {
      throw PreconditionError("unknown point " + std::to_string(i));
    }
  }

  /// Number of triples violating the triangle inequality.
  std::size_t triangle_violations() const {
    const std::size_t n = size();
    std::size_t bad = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (d(i, k) > d(i, j) + d(j, k)) ++bad;
    return bad;
  }

 private:
  std::vector<Word> points_;
  std::vector<std::int64_t> dist_;
  std::unordered_map<Word, std::size_t, WordHash> index_;
};

/// Breadth-first ball around the identity for the generating set
/// gens^{+-1}. Distances between ball points are exact: they never exceed
/// 2 * radius, so a 2*radius search covers every pair.
inline FiniteMetricSpace cayley_ball(const std::vector<Word>& gens, int radius,
                                     std::size_t max_points = 4'000'000) {
  if (radius < 0) throw PreconditionError("radius must be >= 0");
  if (gens.empty()) throw PreconditionError("need at least one generator");
  const Alphabet alph = gens.front().alphabet();
  std::vector<Word> steps;
  for (const auto& g : gens) {
    require_same_alphabet(g, gens.front());
    if (g.is_identity()) continue;
    for (const Word& s : {g, invert(g)}) {
      if (std::find(steps.begin(), steps.end(), s) == steps.end()) {
        steps.push_back(s);
      }
    }
  }
  std::unordered_map<Word, std::int64_t, WordHash> depth;
  std::vector<Word> order;
  std::deque<Word> frontier;
  depth.emplace(Word(alph), 0);
  order.push_back(Word(alph));
  frontier.push_back(Word(alph));
  while (!frontier.empty()) {
    Word cur = frontier.front();
    frontier.pop_front();
    const std::int64_t dc = depth.at(cur);
    if (dc == 2 * radius) continue;
    for (const auto& s : steps) {
      Word nxt = multiply(cur, s);
      if (depth.emplace(nxt, dc + 1).second) {
        if (depth.size() > max_points) {
          throw BudgetExceeded("Cayley ball exceeds " +
                               std::to_string(max_points) + " elements");
        }
        order.push_back(nxt);
        frontier.push_back(std::move(nxt));
      }
    }
  }
  std::vector<Word> points;
  for (const auto& w : order) {
    if (depth.at(w) <= radius) points.push_back(w);
  }
  const std::size_t n = points.size();
  std::vector<std::int64_t> dist(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    Word inv = invert(points[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      auto v = depth.at(multiply(inv, points[j]));
      dist[i * n + j] = dist[j * n + i] = v;
    }
  }
  return FiniteMetricSpace(std::move(points), std::move(dist));
}

/// (A,B)_C = (d(C,A) + d(C,B) - d(A,B)) / 2.
inline Rational gromov_product(const FiniteMetricSpace& sp, std::size_t A,
                               std::size_t B, std::size_t C) {
  sp.require(A);
  sp.require(B);
  sp.require(C);
  return Rational(sp.d(C, A) + sp.d(C, B) - sp.d(A, B)) / 2;
}

/// Word metric over the standard basis: d(u, v) = |u^{-1} v|.
inline Integer word_distance(const Word& u, const Word& v) {
  return multiply(invert(u), v).length();
}

inline Rational word_gromov_product(const Word& A, const Word& B,
                                    const Word& C) {
  return Rational(word_distance(C, A) + word_distance(C, B) -
                  word_distance(A, B)) /
         2;
}

/// Returns the vertex indices of a geodesic from `from` to `to`.
using GeodesicOracle =
    std::function<std::vector<std::size_t>(std::size_t from, std::size_t to)>;

/// Tree geodesics in a ball of a free group over the standard basis.
inline GeodesicOracle tree_geodesic_oracle(const FiniteMetricSpace& sp) {
  return [&sp](std::size_t from, std::size_t to) {
    const Word& p = sp.point(from);
    Word w = multiply(invert(p), sp.point(to));
    std::vector<std::size_t> path;
    const Integer len = w.length();
    for (Integer t = 0; t <= len; ++t) {
      auto idx = sp.index_of(multiply(p, prefix(w, t)));
      if (!idx) throw Error("geodesic oracle: vertex outside the space");
      path.push_back(*idx);
    }
    return path;
  };
}

struct DeltaEstimate {
  /// A lower bound on the thinness constant of the ambient space.
  Rational delta_lower = 0;
  std::size_t samples = 0;
  /// Witnessing triangle (A, B, C) and the parameter t of the worst pair.
  std::optional<std::array<std::size_t, 3>> triangle;
  std::int64_t parameter = 0;
};

inline void check_geodesic(const FiniteMetricSpace& sp,
                           const std::vector<std::size_t>& path,
                           std::size_t from, std::size_t to) {
  if (path.empty() || path.front() != from || path.back() != to ||
      static_cast<std::int64_t>(path.size()) - 1 != sp.d(from, to)) {
    throw Error("geodesic oracle returned a non-geodesic path");
  }
}

/// Samples triangles ABC and measures d(A_1, B_1) for A_1 in [C,A], B_1 in
/// [C,B] with d(C,A_1) = d(C,B_1) <= (A,B)_C.
inline DeltaEstimate estimate_delta_thin(const FiniteMetricSpace& sp,
                                         const GeodesicOracle& oracle,
                                         std::size_t samples,
                                         std::uint64_t seed = 1) {
  DeltaEstimate est;
  if (sp.size() == 0) return est;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, sp.size() - 1);
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t A = pick(rng), B = pick(rng), C = pick(rng);
    auto ca = oracle(C, A);
    auto cb = oracle(C, B);
    check_geodesic(sp, ca, C, A);
    check_geodesic(sp, cb, C, B);
    const Rational gp = gromov_product(sp, A, B, C);
    for (std::int64_t t = 0; Rational(t) <= gp; ++t) {
      const auto dt = sp.d(ca[static_cast<std::size_t>(t)],
                           cb[static_cast<std::size_t>(t)]);
      if (Rational(dt) > est.delta_lower) {
        est.delta_lower = dt;
        est.triangle = std::array<std::size_t, 3>{A, B, C};
        est.parameter = t;
      }
    }
  }
  est.samples = samples;
  return est;
}

struct QGConstants {
  Rational kappa = 1;
  Rational epsilon = 0;

  void validate() const {
    if (kappa < 1 || epsilon < 0) {
      throw PreconditionError("need kappa >= 1 and epsilon >= 0");
    }
  }
};

/// A vertex sequence in a free group with the standard word metric.
struct PathSample {
  std::vector<Word> vertices;

  std::vector<Integer> step_lengths() const {
    std::vector<Integer> out;
    for (std::size_t i = 1; i < vertices.size(); ++i) {
      out.push_back(word_distance(vertices[i - 1], vertices[i]));
    }
    return out;
  }

  Integer length() const {
    Integer total = 0;
    for (const auto& s : step_lengths()) total += s;
    return total;
  }
};

struct QuasiGeodesicCheck {
  bool ok = true;
  /// Subpath [first, last] minimizing d(ends) - l/kappa + epsilon.
  std::size_t first = 0;
  std::size_t last = 0;
  Rational slack = 0;
  /// Smallest epsilon for which the path is (kappa, epsilon)-quasi-geodesic.
  Rational min_epsilon = 0;
};

/// Scans every contiguous subpath of a vertex sequence with distances
/// dist(i, j) and step lengths.
template <class Dist>
QuasiGeodesicCheck scan_quasigeodesic(std::size_t n, Dist&& dist,
                                      const QGConstants& c) {
  c.validate();
  QuasiGeodesicCheck r;
  std::vector<Rational> prefix_len(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    prefix_len[i] = prefix_len[i - 1] + Rational(dist(i - 1, i));
  }
  bool have = false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const Rational ell = prefix_len[j] - prefix_len[i];
      const Rational deficit = ell / c.kappa - Rational(dist(i, j));
      if (deficit > r.min_epsilon) r.min_epsilon = deficit;
      const Rational slack = Rational(dist(i, j)) - ell / c.kappa + c.epsilon;
      if (!have || slack < r.slack) {
        have = true;
        r.slack = slack;
        r.first = i;
        r.last = j;
      }
    }
  }
  r.ok = !have || r.slack >= 0;
  return r;
}

inline QuasiGeodesicCheck is_quasigeodesic(const PathSample& path,
                                           const QGConstants& c) {
  if (path.vertices.empty()) throw PreconditionError("path must be nonempty");
  const auto& v = path.vertices;
  return scan_quasigeodesic(
      v.size(),
      [&](std::size_t i, std::size_t j) { return word_distance(v[i], v[j]); },
      c);
}

struct MidpointCheck {
  bool ok = false;
  std::size_t a_mid = 0;
  std::size_t b_mid = 0;
  std::int64_t lhs = 0;   // d(A_1, B_1)
  Rational rhs = 0;       // d(A, B) + 2 delta
};

/// Midpoints sit at index floor(len/2) counted from A on [A,C] and from B
/// on [B,C].
inline MidpointCheck check_midpoint_lemma(const FiniteMetricSpace& sp,
                                          std::size_t A, std::size_t B,
                                          std::size_t C,
                                          const std::vector<std::size_t>& ac,
                                          const std::vector<std::size_t>& bc,
                                          const Rational& delta) {
  check_geodesic(sp, ac, A, C);
  check_geodesic(sp, bc, B, C);
  MidpointCheck m;
  m.a_mid = ac[(ac.size() - 1) / 2];
  m.b_mid = bc[(bc.size() - 1) / 2];
  m.lhs = sp.d(m.a_mid, m.b_mid);
  m.rhs = Rational(sp.d(A, B)) + 2 * delta;
  m.ok = Rational(m.lhs) <= m.rhs;
  return m;
}

struct ConcatCheck {
  bool hypotheses_ok = false;
  bool segments_quasigeodesic = false;
  /// Gromov products ((q_i)_-, (q_{i+1})_+)_{(q_i)_+}, i = 0..m.
  std::vector<Rational> joint_products;
  /// d((q_i)_-, (q_i)_+) for i = 1..m, against 2 alpha + 2 m^2 delta.
  std::vector<Integer> middle_lengths;
  Rational middle_threshold = 0;
  /// Smallest epsilon making the concatenation (kappa, epsilon)-quasi-geodesic.
  Rational measured_eps0 = 0;
  /// 2 alpha: the alpha-dependent part of the two-segment bound 2 alpha + beta.
  Rational two_alpha = 0;
};

inline ConcatCheck check_concat_lemma(const std::vector<PathSample>& paths,
                                      const Rational& delta,
                                      const QGConstants& c,
                                      const Rational& alpha) {
  c.validate();
  if (paths.size() < 2) {
    throw PreconditionError("need at least two paths q_0, q_1");
  }
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (paths[i].vertices.empty()) throw PreconditionError("empty path");
    if (i + 1 < paths.size() &&
        paths[i].vertices.back() != paths[i + 1].vertices.front()) {
      throw PreconditionError("endpoint mismatch between q_" +
                              std::to_string(i) + " and q_" +
                              std::to_string(i + 1));
    }
  }
  const std::size_t m = paths.size() - 2;
  ConcatCheck r;
  r.two_alpha = 2 * alpha;
  bool ok = true;
  r.segments_quasigeodesic = true;
  for (const auto& p : paths) {
    if (!is_quasigeodesic(p, c).ok) r.segments_quasigeodesic = false;
  }
  for (std::size_t i = 0; i <= m; ++i) {
    Rational gp = word_gromov_product(paths[i].vertices.front(),
                                      paths[i + 1].vertices.back(),
                                      paths[i].vertices.back());
    if (!(gp < alpha)) ok = false;
    r.joint_products.push_back(gp);
  }
  r.middle_threshold = 2 * alpha + 2 * Rational(Integer(m) * Integer(m)) * delta;
  for (std::size_t i = 1; i <= m; ++i) {
    Integer d = word_distance(paths[i].vertices.front(), paths[i].vertices.back());
    if (Rational(d) < r.middle_threshold) ok = false;
    r.middle_lengths.push_back(d);
  }
  r.hypotheses_ok = ok && r.segments_quasigeodesic;
  PathSample whole;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& v = paths[i].vertices;
    whole.vertices.insert(whole.vertices.end(), v.begin() + (i == 0 ? 0 : 1),
                          v.end());
  }
  r.measured_eps0 = is_quasigeodesic(whole, c).min_epsilon;
  return r;
}

struct DivergenceRow {
  Integer n;
  Integer m;
  Integer length;  // |c^n d^m|
};

struct DivergenceReport {
  Word c;
  Word d;
  std::vector<DivergenceRow> table;
  /// max over the table of min(n, m) / |c^n d^m|.
  Rational observed_N0 = 0;
  /// |c^n| >= n and |d^m| >= m for every tabulated exponent.
  bool power_growth_ok = true;
  std::string note;

  bool verify() const {
    for (const auto& row : table) {
      if (multiply(power(c, row.n), power(d, row.m)).length() != row.length) {
        return false;
      }
    }
    return true;
  }

  std::string to_csv() const {
    std::ostringstream out;
    out << "n,m,length,ratio\n";
    for (const auto& row : table) {
      const Integer mn = row.n < row.m ? row.n : row.m;
      out << row.n << ',' << row.m << ',' << row.length << ','
          << (row.length == 0 ? std::string("inf")
                              : to_string(Rational(mn) / Rational(row.length)))
          << '\n';
    }
    return out.str();
  }
};

inline DivergenceReport divergence_experiment(const Word& c, const Word& d,
                                              int n_max, int m_max) {
  if (c.is_identity() || d.is_identity()) {
    throw PreconditionError("divergence needs nonidentity c, d");
  }
  if (is_commensurable(c, d).commensurable) {
    throw PreconditionError("divergence needs non-commensurable c, d");
  }
  if (n_max < 1 || m_max < 1) throw PreconditionError("ranges must be >= 1");
  DivergenceReport r;
  r.c = c;
  r.d = d;
  for (int n = 1; n <= n_max; ++n) {
    Word cn = power(c, n);
    if (cn.length() < n) r.power_growth_ok = false;
    for (int m = 1; m <= m_max; ++m) {
      Word dm = power(d, m);
      if (n == 1 && dm.length() < m) r.power_growth_ok = false;
      Integer len = multiply(cn, dm).length();
      r.table.push_back({n, m, len});
      const Rational ratio = len == 0 ? Rational(0)
                                      : Rational(std::min(n, m)) / Rational(len);
      if (ratio > r.observed_N0) r.observed_N0 = ratio;
    }
  }
  r.note =
      "observed_N0 is an empirical lower bound for the divergence constant; "
      "the loxodromic-elliptic variant has no nontrivial instance in a free "
      "group over the standard basis";
  return r;
}

struct ConjugationSplit {
  Word y;
  Word x;  // w = x^{-1} y x
};

/// w = x^{-1} y x with |y| <= bound and |x| minimal. Since
/// |y| >= |w| - 2|x|, trimming ceil((|w| - bound)/2) letters off the
/// cyclic-reduction conjugator is optimal.
inline ConjugationSplit minimal_conjugation_split(const Word& w,
                                                  const Integer& bound) {
  auto [core, u] = cyclic_reduce(w);
  if (bound < core.length()) {
    throw PreconditionError("bound is below the cyclic-core length");
  }
  const Integer excess = w.length() - bound;
  Integer t = excess <= 0 ? Integer(0) : Integer((excess + 1) / 2);
  Word x = invert(prefix(u, t));
  Word y = multiply(multiply(x, w), invert(x));
  return {y, x};
}

}  // namespace vcl
