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
/// Concrete quasimorphisms on free groups: exponent-sum homomorphisms and
/// counting quasimorphisms, sampled defect, truncated homogenization with
/// its error bound, conjugacy-invariance residuals and the exact
/// exponent-sum form of the elliptic-elliptic case inequalities.
///
/// All arithmetic is exact. Counting uses the reduced word only (no cyclic
/// wrap-around).

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vcl/equations.hpp"
#include "vcl/oracles.hpp"
#include "vcl/words.hpp"

namespace vcl {

/// Occurrences of the reduced word `pattern` as a letter subword of `w`.
inline Integer count_occurrences(const Word& pattern, const Word& w) {
  const auto& p = pattern.syllables();
  const auto& s = w.syllables();
  Integer count = 0;
  if (p.empty()) return count;
  auto covers = [](const Syllable& big, const Syllable& part) {
    return big.generator == part.generator &&
           big.exponent.sign() == part.exponent.sign() &&
           vcl::abs(big.exponent) >= vcl::abs(part.exponent);
  };
  if (p.size() == 1) {
    for (const auto& syl : s) {
      if (covers(syl, p[0])) {
        count += vcl::abs(syl.exponent) - vcl::abs(p[0].exponent) + 1;
      }
    }
    return count;
  }
  const std::size_t r = p.size();
  for (std::size_t i = 0; i + r <= s.size(); ++i) {
    if (!covers(s[i], p[0]) || !covers(s[i + r - 1], p[r - 1])) continue;
    bool inner = true;
    for (std::size_t k = 1; k + 1 < r && inner; ++k) inner = s[i + k] == p[k];
    if (inner) ++count;
  }
  return count;
}

enum class QmKind { Homomorphism, Counting };

class QuasiMorphism {
 public:
  /// g -> exponent sum of g in `generator`; defect exactly 0.
  static QuasiMorphism exponent_sum(int generator) {
    QuasiMorphism q;
    q.kind_ = QmKind::Homomorphism;
    q.generator_ = generator;
    q.defect_bound_ = Rational(0);
    return q;
  }

  /// g -> #pattern(g) - #pattern^{-1}(g).
  static QuasiMorphism counting(const Word& pattern) {
    if (pattern.is_identity() || !is_cyclically_reduced(pattern)) {
      throw PreconditionError(
          "counting pattern must be nonidentity and cyclically reduced");
    }
    QuasiMorphism q;
    q.kind_ = QmKind::Counting;
    q.pattern_ = pattern;
    q.pattern_inverse_ = invert(pattern);
    return q;
  }

  QmKind kind() const { return kind_; }
  const std::optional<Word>& pattern() const { return pattern_; }
  int generator() const { return generator_; }
  /// Known upper bound on the defect (exact 0 for homomorphisms only).
  const std::optional<Rational>& defect_bound() const { return defect_bound_; }

  Rational operator()(const Word& g) const {
    if (kind_ == QmKind::Homomorphism) {
      return Rational(vcl::exponent_sum(g, generator_));
    }
    return Rational(count_occurrences(*pattern_, g) -
                    count_occurrences(*pattern_inverse_, g));
  }

 private:
  QuasiMorphism() = default;

  QmKind kind_ = QmKind::Homomorphism;
  int generator_ = 0;
  std::optional<Word> pattern_;
  std::optional<Word> pattern_inverse_;
  std::optional<Rational> defect_bound_;
};

inline QuasiMorphism exponent_sum_qm(int generator) {
  return QuasiMorphism::exponent_sum(generator);
}

inline QuasiMorphism counting_qm(const Word& pattern) {
  return QuasiMorphism::counting(pattern);
}

struct DefectEstimate {
  /// max over sampled pairs of |q(fg) - q(f) - q(g)|; a lower bound on D(q).
  Rational lower_bound = 0;
  std::size_t sample_count = 0;
  /// Index of the first pair attaining the bound.
  std::optional<std::size_t> witness;
};

inline DefectEstimate defect_estimate(
    const QuasiMorphism& q, const std::vector<std::pair<Word, Word>>& pairs) {
  DefectEstimate d;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [f, g] = pairs[i];
    Rational e = q(multiply(f, g)) - q(f) - q(g);
    if (e < 0) e = -e;
    if (e > d.lower_bound) {
      d.lower_bound = e;
      d.witness = i;
    }
  }
  d.sample_count = pairs.size();
  return d;
}

struct HomogenizationResult {
  /// q(g^M) / M
  Rational value;
  Integer truncation;
  /// |q~(g) - value| <= error_bound = D / M
  Rational error_bound;
};

inline HomogenizationResult homogenize(const QuasiMorphism& q, const Word& g,
                                       const Integer& M, const Rational& D) {
  if (M < 1) throw PreconditionError("truncation M must be >= 1");
  HomogenizationResult h;
  h.truncation = M;
  h.value = q(power(g, M)) / Rational(M);
  const Rational defect =
      q.kind() == QmKind::Homomorphism ? Rational(0) : D;
  h.error_bound = defect / Rational(M);
  return h;
}

struct InvarianceResidual {
  /// |q(g^M)/M - q((u^{-1} g u)^M)/M|
  Rational residual;
  /// 2(|q(u)| + D) / M
  Rational bound;
  bool within_bound = false;
};

inline InvarianceResidual conjugacy_invariance_check(const QuasiMorphism& q,
                                                     const Word& g,
                                                     const Word& u,
                                                     const Integer& M,
                                                     const Rational& D) {
  if (M < 1) throw PreconditionError("truncation M must be >= 1");
  InvarianceResidual r;
  const Rational mm(M);
  Rational diff = q(power(g, M)) / mm - q(power(conjugate(g, u), M)) / mm;
  r.residual = diff < 0 ? Rational(-diff) : diff;
  Rational qu = q(u);
  if (qu < 0) qu = -qu;
  const Rational defect = q.kind() == QmKind::Homomorphism ? Rational(0) : D;
  r.bound = 2 * (qu + defect) / mm;
  r.within_bound = r.residual <= r.bound;
  return r;
}

/// Exponent-sum data of a candidate pair against the homomorphisms q_a, q_b
/// (which have defect 0, so every inequality becomes an equality).
struct Case4Report {
  Rational qa_x, qa_y, qb_x, qb_y;
  /// q_a(x) n + q_a(y) m = n and q_b(x) n + q_b(y) m = m.
  bool identity_a = false;
  bool identity_b = false;

  /// Both components vanish under q_a or under q_b: forces n <= 0 or m <= 0.
  bool subcase_4_1_pattern = false;
  bool subcase_4_1_consistent = true;

  /// x ~ a^s, y ~ b^t pattern: q_a(y) = q_b(x) = 0; forces s = q_a(x) = 1
  /// and t = q_b(y) = 1.
  bool subcase_4_2_pattern = false;
  std::optional<Rational> forced_s;
  std::optional<Rational> forced_t;
  bool subcase_4_2_consistent = true;

  /// x ~ b^s, y ~ a^t pattern: q_a(x) = q_b(y) = 0; records n = t m and
  /// m = s n (N_2 = 0), consistent only with n = m.
  bool subcase_4_3_pattern = false;
  std::optional<Rational> swapped_t;
  std::optional<Rational> swapped_s;
  bool constraint_n_eq_tm = false;
  bool constraint_m_eq_sn = false;
  bool subcase_4_3_consistent = true;
};

/// Case analysis on any pair; does not require a solution.
inline Case4Report case4_constraints(const EquationInstance& inst,
                                     const SolutionPair& p) {
  auto standard = [](const Word& w) -> std::optional<int> {
    if (w.syllable_count() == 1 && w.syllables().front().exponent == 1) {
      return w.syllables().front().generator;
    }
    return std::nullopt;
  };
  auto ga = standard(inst.a);
  auto gb = standard(inst.b);
  if (!ga || !gb || *ga == *gb) {
    throw PreconditionError("a and b must be distinct standard generators");
  }
  const auto qa = exponent_sum_qm(*ga);
  const auto qb = exponent_sum_qm(*gb);
  const Rational n(inst.n), m(inst.m);
  Case4Report r;
  r.qa_x = qa(p.x);
  r.qa_y = qa(p.y);
  r.qb_x = qb(p.x);
  r.qb_y = qb(p.y);
  r.identity_a = r.qa_x * n + r.qa_y * m == n;
  r.identity_b = r.qb_x * n + r.qb_y * m == m;

  r.subcase_4_1_pattern =
      (r.qa_x == 0 && r.qa_y == 0) || (r.qb_x == 0 && r.qb_y == 0);
  r.subcase_4_1_consistent = !r.subcase_4_1_pattern;

  r.subcase_4_2_pattern = r.qa_y == 0 && r.qb_x == 0;
  if (r.subcase_4_2_pattern) {
    r.forced_s = r.qa_x;
    r.forced_t = r.qb_y;
    r.subcase_4_2_consistent = r.qa_x == 1 && r.qb_y == 1;
  }

  r.subcase_4_3_pattern = r.qa_x == 0 && r.qb_y == 0;
  if (r.subcase_4_3_pattern) {
    r.swapped_t = r.qa_y;
    r.swapped_s = r.qb_x;
    r.constraint_n_eq_tm = n == r.qa_y * m;
    r.constraint_m_eq_sn = m == r.qb_x * n;
    r.subcase_4_3_consistent = r.constraint_n_eq_tm && r.constraint_m_eq_sn;
  }
  return r;
}

inline Case4Report case4_separation(const EquationInstance& inst,
                                    const SolutionPair& p) {
  if (!is_solution(inst, p)) {
    throw PreconditionError("case4_separation: pair is not a solution");
  }
  return case4_constraints(inst, p);
}

}  // namespace vcl
