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

#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "vcl/quasimorphisms.hpp"

namespace {

using vcl::Alphabet;
using vcl::EquationInstance;
using vcl::Integer;
using vcl::Rational;
using vcl::Word;

const Alphabet F2(2);
Word w2(const char* s) { return vcl::parse_word(s, F2); }

Word random_word(std::mt19937_64& rng, int max_len) {
  return oracle::to(oracle::random_reduced(rng, 2, static_cast<int>(rng() % (max_len + 1))), 2);
}

Rational sliding_count(const Word& pattern, const Word& w) {
  auto lw = oracle::from(w);
  return Rational(oracle::count_subword(oracle::from(pattern), lw) -
                  oracle::count_subword(oracle::from(vcl::invert(pattern)), lw));
}

TEST(ExponentSumQm, Examples) {
  auto qa = vcl::exponent_sum_qm(0);
  EXPECT_EQ(qa(w2("a^2b^3")), 2);
  EXPECT_EQ(qa(w2("b")), 0);
  EXPECT_EQ(qa(w2("")), 0);
  EXPECT_EQ(*qa.defect_bound(), 0);
  std::mt19937_64 rng(43);
  for (int i = 0; i < 200; ++i) {
    Word g = random_word(rng, 8);
    int m = static_cast<int>(rng() % 7) - 3;
    EXPECT_EQ(qa(vcl::power(g, m)), m * qa(g));
  }
}

TEST(CountingQm, Examples) {
  auto q = vcl::counting_qm(w2("ab"));
  EXPECT_EQ(q(w2("abab")), 2);
  EXPECT_EQ(q(w2("a")), 0);
  EXPECT_EQ(q(w2("BA")), -1);
  EXPECT_EQ(q(w2("")), 0);
  EXPECT_FALSE(q.defect_bound());
  EXPECT_THROW(vcl::counting_qm(w2("")), vcl::PreconditionError);
  EXPECT_THROW(vcl::counting_qm(w2("abA")), vcl::PreconditionError);
}

TEST(CountingQm, AgreesWithSlidingWindowCounter) {
  std::mt19937_64 rng(47);
  const char* patterns[] = {"ab", "a", "a^2", "aB", "a^2b", "abAB", "ab^3"};
  for (const char* pat : patterns) {
    Word p = w2(pat);
    auto q = vcl::counting_qm(p);
    for (int i = 0; i < 300; ++i) {
      Word w = random_word(rng, 14) * vcl::power(w2("a"), static_cast<int>(rng() % 4));
      EXPECT_EQ(q(w), sliding_count(p, w)) << pat << " in " << vcl::format_word(w);
    }
  }
}

TEST(Defect, Examples) {
  auto qa = vcl::exponent_sum_qm(0);
  std::vector<std::pair<Word, Word>> pairs{{w2("ab"), w2("Ba")}, {w2("a"), w2("b")}};
  EXPECT_EQ(vcl::defect_estimate(qa, pairs).lower_bound, 0);
  auto q = vcl::counting_qm(w2("ab"));
  auto d = vcl::defect_estimate(q, {{w2("a"), w2("b")}});
  EXPECT_GE(d.lower_bound, 1);
  EXPECT_EQ(*d.witness, 0u);
  auto e = vcl::defect_estimate(q, {});
  EXPECT_EQ(e.lower_bound, 0);
  EXPECT_EQ(e.sample_count, 0u);
}

TEST(Defect, SampledAxiomAndMonotonicity) {
  std::mt19937_64 rng(53);
  for (const char* pat : {"ab", "a^2b", "abAB"}) {
    auto q = vcl::counting_qm(w2(pat));
    std::vector<std::pair<Word, Word>> pairs;
    Rational prev = 0;
    for (int i = 0; i < 10000; ++i) {
      pairs.emplace_back(random_word(rng, 10), random_word(rng, 10));
      if (i % 1000 == 999) {
        auto d = vcl::defect_estimate(q, pairs);
        EXPECT_GE(d.lower_bound, prev);
        prev = d.lower_bound;
      }
    }
    EXPECT_LE(prev, 3 * Rational(w2(pat).length())) << pat;
  }
}

TEST(Homogenize, Examples) {
  auto qa = vcl::exponent_sum_qm(0);
  for (int M : {1, 2, 7, 64}) {
    auto h = vcl::homogenize(qa, w2("a^2b"), M, 5);
    EXPECT_EQ(h.value, 2);
    EXPECT_EQ(h.error_bound, 0);
  }
  auto q = vcl::counting_qm(w2("ab"));
  for (int M : {1, 2, 4, 8, 16}) {
    auto h = vcl::homogenize(q, w2("ab"), M, 1);
    EXPECT_EQ(h.value, 1);
    EXPECT_EQ(h.error_bound, Rational(1, M));
    EXPECT_EQ(vcl::homogenize(q, w2(""), M, 1).value, 0);
  }
  // (ba)^M contains M - 1 copies of ab.
  EXPECT_EQ(vcl::homogenize(q, w2("ba"), 4, 1).value, Rational(3, 4));
  EXPECT_THROW(vcl::homogenize(q, w2("ab"), 0, 1), vcl::PreconditionError);
}

TEST(Homogenize, DoublingCauchyBound) {
  std::mt19937_64 rng(59);
  auto q = vcl::counting_qm(w2("ab"));
  std::vector<std::pair<Word, Word>> pairs;
  for (int i = 0; i < 2000; ++i) pairs.emplace_back(random_word(rng, 10), random_word(rng, 10));
  const Rational D = vcl::defect_estimate(q, pairs).lower_bound + 3 * 2;
  for (int i = 0; i < 100; ++i) {
    Word g = random_word(rng, 8);
    for (int M = 1; M <= 64; M *= 2) {
      auto h1 = vcl::homogenize(q, g, M, D);
      auto h2 = vcl::homogenize(q, g, 2 * M, D);
      Rational diff = h2.value - h1.value;
      if (diff < 0) diff = -diff;
      EXPECT_LE(diff, D / M);
    }
  }
}

TEST(Invariance, Examples) {
  auto qa = vcl::exponent_sum_qm(0);
  auto r = vcl::conjugacy_invariance_check(qa, w2("ab"), w2("b^2a"), 8, 0);
  EXPECT_EQ(r.residual, 0);
  EXPECT_TRUE(r.within_bound);
  auto q = vcl::counting_qm(w2("ab"));
  r = vcl::conjugacy_invariance_check(q, w2("ab"), w2("a"), 64, 2);
  EXPECT_LE(r.residual, 2 * (Rational(0) + 2) / 64);
  EXPECT_TRUE(r.within_bound);
  r = vcl::conjugacy_invariance_check(q, w2("abAB"), w2(""), 16, 2);
  EXPECT_EQ(r.residual, 0);
}

TEST(Case4, Examples) {
  EquationInstance inst(w2("a"), w2("b"), 2, 3);
  auto r = vcl::case4_separation(inst, {w2("a"), w2("b")});
  EXPECT_TRUE(r.identity_a);
  EXPECT_TRUE(r.identity_b);
  EXPECT_TRUE(r.subcase_4_2_pattern);
  EXPECT_EQ(*r.forced_s, 1);
  EXPECT_EQ(*r.forced_t, 1);
  EXPECT_TRUE(r.subcase_4_2_consistent);

  for (auto [s, t] : {std::pair{-1, 1}, std::pair{2, -1}}) {
    auto p = vcl::gcd_family(inst, s, t);
    r = vcl::case4_separation(inst, p);
    EXPECT_EQ(r.qa_x, s * 2);
    EXPECT_EQ(r.qa_y, t * 2);
    EXPECT_EQ(r.qa_x * 2 + r.qa_y * 3, 2);
    EXPECT_TRUE(r.identity_a);
    EXPECT_TRUE(r.identity_b);
  }

  // Hypothetical swapped pair (not a solution): x ~ b^s, y ~ a^t.
  EquationInstance sq(w2("a"), w2("b"), 2, 2);
  r = vcl::case4_constraints(sq, {w2("Aba"), w2("bAB")});
  EXPECT_TRUE(r.subcase_4_3_pattern);
  EXPECT_EQ(*r.swapped_t, -1);
  EXPECT_FALSE(r.constraint_n_eq_tm);
  r = vcl::case4_constraints(sq, {w2("Ab^1a"), w2("bab^-1")});
  EXPECT_TRUE(r.constraint_n_eq_tm);
  EXPECT_TRUE(r.constraint_m_eq_sn);

  EXPECT_THROW(vcl::case4_separation(inst, {w2("b"), w2("a")}), vcl::PreconditionError);
  EquationInstance bad(w2("ab"), w2("b"), 2, 3);
  EXPECT_THROW(vcl::case4_separation(bad, {w2("ab"), w2("b")}), vcl::PreconditionError);
}

TEST(Case4, ConjugatesOfPowersForceExponentOne) {
  // For x = u^{-1} a^s u and y = v^{-1} b^t v solving the equation, the
  // exponent sums force s = t = 1.
  std::mt19937_64 rng(61);
  for (int n = 1; n <= 4; ++n)
    for (int m = 1; m <= 4; ++m) {
      EquationInstance inst(w2("a"), w2("b"), n, m);
      for (int s = -3; s <= 3; ++s)
        for (int t = -3; t <= 3; ++t) {
          if (s == 0 || t == 0) continue;
          Word u = random_word(rng, 3), v = random_word(rng, 3);
          vcl::SolutionPair p{vcl::conjugate(vcl::power(w2("a"), s), u),
                              vcl::conjugate(vcl::power(w2("b"), t), v)};
          auto r = vcl::case4_constraints(inst, p);
          EXPECT_TRUE(r.subcase_4_2_pattern);
          EXPECT_EQ(r.identity_a && r.identity_b, s == 1 && t == 1);
          if (vcl::is_solution(inst, p)) {
            EXPECT_EQ(s, 1);
            EXPECT_EQ(t, 1);
          }
        }
    }
}

}  // namespace
