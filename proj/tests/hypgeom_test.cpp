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
#include "vcl/hypgeom.hpp"

namespace {

using vcl::Alphabet;
using vcl::Integer;
using vcl::PathSample;
using vcl::QGConstants;
using vcl::Rational;
using vcl::Word;

const Alphabet F2(2);
Word w2(const char* s) { return vcl::parse_word(s, F2); }

std::vector<Word> basis(const Alphabet& alph) {
  std::vector<Word> g;
  for (int i = 0; i < alph.rank(); ++i) g.push_back(Word::generator(alph, i));
  return g;
}

Word random_word(std::mt19937_64& rng, int max_len) {
  return oracle::to(oracle::random_reduced(rng, 2, static_cast<int>(rng() % (max_len + 1))), 2);
}

// Metric of a cycle with n vertices and the oracle that walks the short way.
vcl::FiniteMetricSpace cycle_space(int n) {
  std::vector<Word> pts;
  Alphabet alph(1);
  for (int i = 0; i < n; ++i) pts.push_back(vcl::power(Word::generator(alph, 0), i));
  std::vector<std::int64_t> d(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int k = std::abs(i - j);
      d[static_cast<std::size_t>(i * n + j)] = std::min(k, n - k);
    }
  return vcl::FiniteMetricSpace(std::move(pts), std::move(d));
}

vcl::GeodesicOracle cycle_oracle(int n) {
  return [n](std::size_t from, std::size_t to) {
    int fwd = ((static_cast<int>(to) - static_cast<int>(from)) % n + n) % n;
    int step = fwd <= n - fwd ? 1 : -1;
    int len = std::min(fwd, n - fwd);
    std::vector<std::size_t> p;
    for (int t = 0; t <= len; ++t)
      p.push_back(static_cast<std::size_t>(((static_cast<int>(from) + step * t) % n + n) % n));
    return p;
  };
}

TEST(CayleyBall, Sizes) {
  EXPECT_EQ(vcl::cayley_ball(basis(F2), 0).size(), 1u);
  EXPECT_EQ(vcl::cayley_ball(basis(F2), 1).size(), 5u);
  // 1 + 4 * (3^R - 1) / 2 points of length <= R.
  for (int R = 0; R <= 4; ++R) {
    int expect = 1;
    for (int k = 1, s = 4; k <= R; ++k, s *= 3) expect += s;
    EXPECT_EQ(vcl::cayley_ball(basis(F2), R).size(), static_cast<std::size_t>(expect));
  }
  EXPECT_THROW(vcl::cayley_ball(basis(F2), -1), vcl::PreconditionError);
  EXPECT_THROW(vcl::cayley_ball(basis(F2), 12, 1000), vcl::BudgetExceeded);
}

TEST(CayleyBall, MetricMatchesWordLength) {
  auto sp = vcl::cayley_ball(basis(F2), 3);
  EXPECT_EQ(sp.triangle_violations(), 0u);
  for (std::size_t i = 0; i < sp.size(); ++i)
    for (std::size_t j = 0; j < sp.size(); ++j)
      ASSERT_EQ(Integer(sp.d(i, j)), vcl::word_distance(sp.point(i), sp.point(j)));
}

TEST(CayleyBall, NonStandardGenerators) {
  // Over {a, ab} the element b has length 2 (a^{-1} * ab).
  auto sp = vcl::cayley_ball({w2("a"), w2("ab")}, 2);
  auto one = sp.index_of(w2(""));
  auto b = sp.index_of(w2("b"));
  ASSERT_TRUE(one && b);
  EXPECT_EQ(sp.d(*one, *b), 2);
  EXPECT_EQ(sp.triangle_violations(), 0u);
}

TEST(MetricSpace, Validation) {
  Alphabet a1(1);
  std::vector<Word> pts{Word(a1), Word::generator(a1, 0)};
  EXPECT_THROW(vcl::FiniteMetricSpace(pts, {0, 1, 2, 0}), vcl::PreconditionError);
  EXPECT_THROW(vcl::FiniteMetricSpace(pts, {1, 1, 1, 0}), vcl::PreconditionError);
  vcl::FiniteMetricSpace ok(pts, {0, 1, 1, 0});
  EXPECT_THROW(vcl::gromov_product(ok, 0, 1, 2), vcl::PreconditionError);
}

TEST(GromovProduct, Examples) {
  auto sp = vcl::cayley_ball(basis(F2), 2);
  auto idx = [&](const char* s) { return *sp.index_of(w2(s)); };
  EXPECT_EQ(vcl::gromov_product(sp, idx("a"), idx("b"), idx("")), 0);
  EXPECT_EQ(vcl::gromov_product(sp, idx("ab"), idx("a"), idx("")), 1);
  EXPECT_EQ(vcl::gromov_product(sp, idx("ab"), idx("ab"), idx("B")), sp.d(idx("B"), idx("ab")));
  EXPECT_EQ(vcl::word_gromov_product(w2("ab"), w2("a"), w2("")), 1);
}

TEST(GromovProduct, SplitsTheOppositeSide) {
  auto sp = vcl::cayley_ball(basis(F2), 3);
  std::mt19937_64 rng(71);
  std::uniform_int_distribution<std::size_t> pick(0, sp.size() - 1);
  for (int i = 0; i < 5000; ++i) {
    auto A = pick(rng), B = pick(rng), C = pick(rng);
    EXPECT_EQ(vcl::gromov_product(sp, A, B, C) + vcl::gromov_product(sp, A, C, B),
              Rational(sp.d(B, C)));
    EXPECT_GE(vcl::gromov_product(sp, A, B, C), 0);
  }
}

TEST(DeltaThin, TreesAreZeroThin) {
  for (int R : {1, 2, 3}) {
    auto sp = vcl::cayley_ball(basis(F2), R);
    auto orc = vcl::tree_geodesic_oracle(sp);
    for (std::size_t samples : {1u, 10u, 2000u}) {
      auto est = vcl::estimate_delta_thin(sp, orc, samples, 1 + samples);
      EXPECT_EQ(est.delta_lower, 0);
      EXPECT_EQ(est.samples, samples);
      EXPECT_FALSE(est.triangle);
    }
  }
}

TEST(DeltaThin, TwoPointAndCycle) {
  auto two = cycle_space(2);
  EXPECT_EQ(vcl::estimate_delta_thin(two, cycle_oracle(2), 100).delta_lower, 0);
  // On a 6-cycle, C = 0, A = 2, B = 4 has (A,B)_C = 1 and d(1, 5) = 2.
  auto c6 = cycle_space(6);
  auto est = vcl::estimate_delta_thin(c6, cycle_oracle(6), 2000);
  EXPECT_GT(est.delta_lower, 0);
  ASSERT_TRUE(est.triangle);
  auto [A, B, C] = *est.triangle;
  auto ca = cycle_oracle(6)(C, A), cb = cycle_oracle(6)(C, B);
  auto t = static_cast<std::size_t>(est.parameter);
  EXPECT_EQ(Rational(c6.d(ca[t], cb[t])), est.delta_lower);
  EXPECT_LE(Rational(est.parameter), vcl::gromov_product(c6, A, B, C));
}

TEST(DeltaThin, RejectsNonGeodesicOracle) {
  auto sp = vcl::cayley_ball(basis(F2), 1);
  vcl::GeodesicOracle bad = [](std::size_t from, std::size_t to) {
    return std::vector<std::size_t>{from, from, to};
  };
  EXPECT_THROW(vcl::estimate_delta_thin(sp, bad, 10), vcl::Error);
}

TEST(QuasiGeodesic, Examples) {
  PathSample seg{{w2(""), w2("a"), w2("ab"), w2("abb")}};
  EXPECT_TRUE(vcl::is_quasigeodesic(seg, {1, 0}).ok);
  PathSample back{{w2("a"), w2("ab"), w2("a")}};
  auto r = vcl::is_quasigeodesic(back, {1, 0});
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.first, 0u);
  EXPECT_EQ(r.last, 2u);
  EXPECT_EQ(r.slack, -2);
  EXPECT_EQ(r.min_epsilon, 2);
  EXPECT_TRUE(vcl::is_quasigeodesic(back, {1, 2}).ok);
  EXPECT_TRUE(vcl::is_quasigeodesic(back, {2, 1}).ok);
  EXPECT_THROW(vcl::is_quasigeodesic(PathSample{}, {1, 0}), vcl::PreconditionError);
  EXPECT_THROW(vcl::is_quasigeodesic(seg, {Rational(1, 2), 0}), vcl::PreconditionError);
  EXPECT_EQ(seg.length(), 3);
}

TEST(QuasiGeodesic, PowersOfCyclicallyReducedWords) {
  for (const char* g : {"ab", "a^2B", "abAB", "b"}) {
    PathSample p;
    for (int i = 0; i <= 6; ++i) p.vertices.push_back(vcl::power(w2(g), i));
    EXPECT_TRUE(vcl::is_quasigeodesic(p, {1, 0}).ok) << g;
  }
  PathSample p;
  for (int i = 0; i <= 4; ++i) p.vertices.push_back(vcl::power(w2("bab^-1"), i));
  EXPECT_FALSE(vcl::is_quasigeodesic(p, {1, 0}).ok);
}

TEST(QuasiGeodesic, UnitCheckIffGeodesic) {
  std::mt19937_64 rng(73);
  for (int i = 0; i < 2000; ++i) {
    PathSample p{{random_word(rng, 3)}};
    int steps = 1 + static_cast<int>(rng() % 5);
    for (int s = 0; s < steps; ++s) p.vertices.push_back(p.vertices.back() * random_word(rng, 2));
    bool geodesic = vcl::word_distance(p.vertices.front(), p.vertices.back()) == p.length();
    EXPECT_EQ(vcl::is_quasigeodesic(p, {1, 0}).ok, geodesic);
  }
}

TEST(Midpoint, Examples) {
  auto sp = vcl::cayley_ball(basis(F2), 2);
  auto orc = vcl::tree_geodesic_oracle(sp);
  auto idx = [&](const char* s) { return *sp.index_of(w2(s)); };
  auto A = idx("a^2"), B = idx("b^2"), C = idx("");
  auto m = vcl::check_midpoint_lemma(sp, A, B, C, orc(A, C), orc(B, C), 0);
  EXPECT_EQ(m.a_mid, idx("a"));
  EXPECT_EQ(m.b_mid, idx("b"));
  EXPECT_EQ(m.lhs, 2);
  EXPECT_EQ(m.rhs, 4);
  EXPECT_TRUE(m.ok);
  auto d = vcl::check_midpoint_lemma(sp, A, A, C, orc(A, C), orc(A, C), 0);
  EXPECT_EQ(d.lhs, 0);
  EXPECT_TRUE(d.ok);
  // The odd side a^2 b down to 1 has midpoint index 1: the vertex a.
  auto sp3 = vcl::cayley_ball(basis(F2), 3);
  auto orc3 = vcl::tree_geodesic_oracle(sp3);
  auto A3 = *sp3.index_of(w2("a^2b")), C3 = *sp3.index_of(w2(""));
  auto m3 = vcl::check_midpoint_lemma(sp3, A3, A3, C3, orc3(A3, C3), orc3(A3, C3), 0);
  EXPECT_EQ(m3.a_mid, *sp3.index_of(w2("a^2")));
  EXPECT_THROW(vcl::check_midpoint_lemma(sp, A, B, C, orc(A, B), orc(B, C), 0), vcl::Error);
}

TEST(Midpoint, RandomTreeTriangles) {
  auto sp = vcl::cayley_ball(basis(F2), 3);
  auto orc = vcl::tree_geodesic_oracle(sp);
  std::mt19937_64 rng(79);
  std::uniform_int_distribution<std::size_t> pick(0, sp.size() - 1);
  for (int i = 0; i < 1000; ++i) {
    auto A = pick(rng), B = pick(rng), C = pick(rng);
    EXPECT_TRUE(vcl::check_midpoint_lemma(sp, A, B, C, orc(A, C), orc(B, C), 0).ok);
  }
}

PathSample segment(const Word& from, const Word& to) {
  PathSample p;
  Word step = vcl::invert(from) * to;
  for (Integer t = 0; t <= step.length(); ++t) p.vertices.push_back(from * vcl::prefix(step, t));
  return p;
}

TEST(Concat, Examples) {
  auto r = vcl::check_concat_lemma({segment(w2(""), w2("a^2")), segment(w2("a^2"), w2("a^2b^2"))}, 0,
                                   {1, 0}, 1);
  EXPECT_TRUE(r.hypotheses_ok);
  EXPECT_EQ(r.joint_products, std::vector<Rational>{0});
  EXPECT_EQ(r.measured_eps0, 0);
  EXPECT_EQ(r.two_alpha, 2);

  auto b = vcl::check_concat_lemma({segment(w2(""), w2("ab")), segment(w2("ab"), w2("a"))}, 0, {1, 0}, 1);
  EXPECT_FALSE(b.hypotheses_ok);
  EXPECT_EQ(b.joint_products, std::vector<Rational>{1});
  EXPECT_EQ(b.measured_eps0, 2);

  // Three segments with one-letter overlaps at each joint.
  std::vector<PathSample> chain{segment(w2(""), w2("a^3b")), segment(w2("a^3b"), w2("a^4b^3")),
                                segment(w2("a^4b^3"), w2("a^4b^2ab"))};
  auto c = vcl::check_concat_lemma(chain, 0, {1, 0}, 2);
  EXPECT_EQ(c.joint_products, (std::vector<Rational>{1, 1}));
  EXPECT_EQ(c.middle_lengths, std::vector<Integer>{5});
  EXPECT_EQ(c.middle_threshold, 4);
  EXPECT_TRUE(c.hypotheses_ok);
  EXPECT_EQ(c.measured_eps0, 4);
  EXPECT_LE(c.measured_eps0, 2 * c.two_alpha);
  EXPECT_FALSE(vcl::check_concat_lemma(chain, 0, {1, 0}, 1).hypotheses_ok);
  EXPECT_FALSE(vcl::check_concat_lemma(chain, 1, {1, 0}, 2).hypotheses_ok);

  EXPECT_THROW(vcl::check_concat_lemma({segment(w2(""), w2("a")), segment(w2("b"), w2("ab"))}, 0,
                                       {1, 0}, 1),
               vcl::PreconditionError);
  EXPECT_THROW(vcl::check_concat_lemma({segment(w2(""), w2("a"))}, 0, {1, 0}, 1), vcl::PreconditionError);
}

TEST(Divergence, Examples) {
  auto r = vcl::divergence_experiment(w2("a"), w2("b"), 6, 6);
  EXPECT_TRUE(r.verify());
  EXPECT_TRUE(r.power_growth_ok);
  for (const auto& row : r.table) EXPECT_EQ(row.length, row.n + row.m);
  EXPECT_LT(r.observed_N0, 1);
  EXPECT_EQ(r.observed_N0, Rational(1, 2));
  EXPECT_EQ(r.table.size(), 36u);
  EXPECT_EQ(r.to_csv().substr(0, 24), "n,m,length,ratio\n1,1,2,1");

  // (ab)^n (Ba)^m: only one pair of letters cancels at the seam.
  auto s = vcl::divergence_experiment(w2("ab"), w2("Ba"), 5, 5);
  EXPECT_TRUE(s.verify());
  for (const auto& row : s.table) EXPECT_EQ(row.length, 2 * row.n + 2 * row.m - 2);
  EXPECT_EQ(s.observed_N0, Rational(1, 2));

  EXPECT_THROW(vcl::divergence_experiment(w2("a"), w2("a^2"), 3, 3), vcl::PreconditionError);
  EXPECT_THROW(vcl::divergence_experiment(w2("ab"), w2("ba"), 3, 3), vcl::PreconditionError);
  EXPECT_THROW(vcl::divergence_experiment(w2(""), w2("a"), 3, 3), vcl::PreconditionError);
}

TEST(Divergence, RatioBelowOneForBasis) {
  for (int n = 1; n <= 12; ++n) {
    auto r = vcl::divergence_experiment(w2("a"), w2("b"), n, 12);
    EXPECT_LT(r.observed_N0, 1);
  }
}

TEST(ConjugationSplit, Examples) {
  Alphabet F3(3);
  auto r = vcl::minimal_conjugation_split(w2("Bab"), 1);
  EXPECT_EQ(r.y, w2("a"));
  EXPECT_EQ(r.x, w2("b"));
  r = vcl::minimal_conjugation_split(w2("Bab"), 3);
  EXPECT_EQ(r.y, w2("Bab"));
  EXPECT_TRUE(r.x.is_identity());
  r = vcl::minimal_conjugation_split(vcl::parse_word("CBabc", F3), 2);
  EXPECT_EQ(r.y, vcl::parse_word("a", F3));
  EXPECT_EQ(r.x, vcl::parse_word("bc", F3));
  EXPECT_THROW(vcl::minimal_conjugation_split(w2("ab"), 1), vcl::PreconditionError);
}

TEST(ConjugationSplit, MinimalAgainstExhaustiveSearch) {
  auto all = oracle::all_reduced(2, 4);
  std::mt19937_64 rng(83);
  for (int i = 0; i < 300; ++i) {
    Word w = random_word(rng, 9);
    Integer core = vcl::cyclic_reduce(w).core.length();
    Integer B = core + static_cast<int>(rng() % 4);
    auto s = vcl::minimal_conjugation_split(w, B);
    EXPECT_EQ(vcl::conjugate(s.y, s.x), w);
    EXPECT_LE(s.y.length(), B);
    if (s.x.length() > 4) continue;
    for (const auto& lx : all) {
      Word x = oracle::to(lx, 2);
      if (x.length() >= s.x.length()) continue;
      Word y = x * w * vcl::invert(x);
      EXPECT_GT(y.length(), B) << vcl::format_word(w) << " x=" << vcl::format_word(x);
    }
  }
}

}  // namespace
