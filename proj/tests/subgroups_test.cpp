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
#include "vcl/subgroups.hpp"

namespace {

using vcl::Alphabet;
using vcl::Word;

const Alphabet F2(2);

Word w2(const char* s) { return vcl::parse_word(s, F2); }

TEST(Membership, Examples) {
  EXPECT_TRUE(vcl::subgroup_membership({w2("a^2"), w2("b^2")}, w2("a^2b^2")));
  EXPECT_FALSE(vcl::subgroup_membership({w2("a^2"), w2("b^2")}, w2("ab")));
  EXPECT_TRUE(vcl::subgroup_membership({w2("ab")}, w2("")));
  EXPECT_TRUE(vcl::subgroup_membership({}, w2("")));
  EXPECT_FALSE(vcl::subgroup_membership({}, w2("a")));
}

TEST(FreeOfRank, Examples) {
  EXPECT_TRUE(vcl::verify_free_of_rank(F2, {w2("a^3"), w2("b^3")}));
  EXPECT_FALSE(vcl::verify_free_of_rank(F2, {w2("a"), w2("a^2")}));
  EXPECT_TRUE(vcl::verify_free_of_rank(F2, {w2("a"), w2("b")}));
  EXPECT_FALSE(vcl::verify_free_of_rank(F2, {w2("a"), w2("b"), w2("ab")}));
}

TEST(SubgroupGraph, FoldedAndDeterministic) {
  // b^2 = (aB)^{-1} ab is redundant.
  vcl::SubgroupGraph g(F2, {w2("ab"), w2("aB"), w2("b^2")});
  EXPECT_TRUE(g.is_deterministic());
  EXPECT_EQ(g.rank(), 2);
  EXPECT_TRUE(g.accepts(w2("b^4")));
  EXPECT_FALSE(g.accepts(w2("a^2")));
  EXPECT_FALSE(g.accepts(w2("a")));
}

TEST(Membership, ProductsOfGeneratorsAreAccepted) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Word> gens;
    for (int k = 0; k < 3; ++k) {
      gens.push_back(oracle::to(oracle::random_reduced(rng, 2, 1 + static_cast<int>(rng() % 4)), 2));
    }
    vcl::SubgroupGraph graph(F2, gens);
    EXPECT_TRUE(graph.is_deterministic());
    Word p(F2);
    for (int k = 0; k < 6; ++k) {
      Word g = gens[rng() % gens.size()];
      p = p * (rng() % 2 ? g : vcl::invert(g));
      EXPECT_TRUE(graph.accepts(p));
    }
  }
}

TEST(Membership, NegativesAgreeWithBoundedProductOracle) {
  // Subgroups whose graphs show every element of length <= 6 arises as a
  // product of at most 6 generator letters: bases of length >= 2 with no
  // long cancellation. Elements outside that bounded set must be rejected.
  std::vector<std::vector<Word>> cases = {
      {w2("a^2"), w2("b^2")}, {w2("ab"), w2("Ba")}, {w2("a^2"), w2("ab")},
      {w2("b^3"), w2("aba")}};
  for (const auto& gens : cases) {
    std::set<oracle::LWord> reach{{}};
    std::vector<oracle::LWord> frontier{{}};
    for (int depth = 0; depth < 6; ++depth) {
      std::vector<oracle::LWord> next;
      for (const auto& x : frontier) {
        for (const auto& g : gens) {
          for (const auto& h : {oracle::from(g), oracle::inv(oracle::from(g))}) {
            auto y = oracle::mul(x, h);
            if (reach.insert(y).second) next.push_back(y);
          }
        }
      }
      frontier = std::move(next);
    }
    for (const auto& l : oracle::all_reduced(2, 4)) {
      bool in_oracle = reach.count(l) > 0;
      EXPECT_EQ(vcl::subgroup_membership(gens, oracle::to(l, 2)), in_oracle)
          << vcl::format_word(oracle::to(l, 2));
    }
  }
}

TEST(FreeOfRank, InvariantUnderNielsenMoves) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Word> ws;
    for (int k = 0; k < 3; ++k) {
      ws.push_back(oracle::to(oracle::random_reduced(rng, 2, 1 + static_cast<int>(rng() % 5)), 2));
    }
    const bool base = vcl::verify_free_of_rank(F2, ws);
    const long rank = vcl::SubgroupGraph(F2, ws).rank();
    for (int move = 0; move < 10; ++move) {
      const std::size_t i = rng() % ws.size();
      std::size_t j = rng() % ws.size();
      if (j == i) j = (i + 1) % ws.size();
      switch (rng() % 3) {
        case 0: std::swap(ws[i], ws[j]); break;
        case 1: ws[i] = vcl::invert(ws[i]); break;
        default: ws[i] = ws[i] * ws[j]; break;
      }
      EXPECT_EQ(vcl::verify_free_of_rank(F2, ws), base);
      EXPECT_EQ(vcl::SubgroupGraph(F2, ws).rank(), rank);
    }
  }
}

}  // namespace
