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

// Independent letter-level reference implementations used as test oracles.
// Nothing here calls into the library's algorithms; conversions go through
// the public syllable representation only.

#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <random>
#include <unordered_set>
#include <vector>

#include "vcl/words.hpp"

namespace oracle {

// Letter x_g^{+-1} is encoded as +-(g + 1).
using LWord = std::vector<int>;

inline LWord reduce(const LWord& w) {
  LWord out;
  for (int x : w) {
    if (!out.empty() && out.back() == -x) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return out;
}

inline LWord mul(const LWord& u, const LWord& v) {
  LWord w = u;
  w.insert(w.end(), v.begin(), v.end());
  return reduce(w);
}

inline LWord inv(const LWord& u) {
  LWord w(u.rbegin(), u.rend());
  for (int& x : w) x = -x;
  return w;
}

inline LWord pow(const LWord& u, long k) {
  LWord base = k < 0 ? inv(u) : u, out;
  for (long i = 0; i < (k < 0 ? -k : k); ++i) out = mul(out, base);
  return out;
}

inline LWord from(const vcl::Word& w) {
  LWord out;
  for (const auto& s : w.syllables()) {
    const int sign = s.exponent > 0 ? 1 : -1;
    const auto count = static_cast<long>(vcl::abs(s.exponent));
    for (long i = 0; i < count; ++i) out.push_back(sign * (s.generator + 1));
  }
  return out;
}

inline vcl::Word to(const LWord& w, int rank) {
  std::vector<vcl::Syllable> syl;
  for (int x : w) syl.push_back({(x > 0 ? x : -x) - 1, x > 0 ? 1 : -1});
  return vcl::Word::from_syllables(vcl::Alphabet(rank), syl);
}

/// Every reduced word of length <= max_len, by DFS.
inline std::vector<LWord> all_reduced(int rank, int max_len) {
  std::vector<LWord> out;
  LWord cur;
  std::function<void()> rec = [&] {
    out.push_back(cur);
    if (static_cast<int>(cur.size()) == max_len) return;
    for (int g = 1; g <= rank; ++g) {
      for (int x : {g, -g}) {
        if (!cur.empty() && cur.back() == -x) continue;
        cur.push_back(x);
        rec();
        cur.pop_back();
      }
    }
  };
  rec();
  return out;
}

inline LWord random_reduced(std::mt19937_64& rng, int rank, int len) {
  LWord w;
  std::uniform_int_distribution<int> g(1, rank), s(0, 1);
  while (static_cast<int>(w.size()) < len) {
    int x = g(rng) * (s(rng) ? 1 : -1);
    if (!w.empty() && w.back() == -x) continue;
    w.push_back(x);
  }
  return w;
}

inline std::uint64_t encode(const std::deque<int>& h) {
  std::uint64_t code = 1;
  for (int x : h) code = code * 64 + static_cast<std::uint64_t>(x + 32);
  return code;
}

inline std::uint64_t encode(const LWord& h) {
  return encode(std::deque<int>(h.begin(), h.end()));
}

/// For each target v, whether g^{-1} u g = v for some reduced g with
/// |g| <= max_len. Exhaustive DFS over conjugators, conjugating one letter
/// at a time.
inline std::vector<bool> conjugate_by_search(int rank, const LWord& u,
                                             const std::vector<LWord>& targets,
                                             int max_len) {
  std::unordered_set<std::uint64_t> want;
  std::size_t max_target = 0;
  for (const auto& v : targets) {
    want.insert(encode(v));
    max_target = std::max(max_target, v.size());
  }
  std::unordered_set<std::uint64_t> found;
  std::deque<int> h(u.begin(), u.end());
  LWord g;
  std::function<void()> rec = [&] {
    if (h.size() <= max_target) {
      auto c = encode(h);
      if (want.count(c)) found.insert(c);
    }
    if (static_cast<int>(g.size()) == max_len) return;
    for (int k = 1; k <= rank; ++k) {
      for (int x : {k, -k}) {
        if (!g.empty() && g.back() == -x) continue;
        // h <- x^{-1} h x, with undo information.
        bool popped_front = !h.empty() && h.front() == x;
        if (popped_front) h.pop_front(); else h.push_front(-x);
        bool popped_back = !h.empty() && h.back() == -x;
        if (popped_back) h.pop_back(); else h.push_back(x);
        g.push_back(x);
        rec();
        g.pop_back();
        if (popped_back) h.push_back(-x); else h.pop_back();
        if (popped_front) h.push_front(x); else h.pop_front();
      }
    }
  };
  rec();
  std::vector<bool> out;
  for (const auto& v : targets) out.push_back(found.count(encode(v)) > 0);
  return out;
}

/// Occurrences of a letter pattern as a contiguous subword, overlaps allowed.
inline long count_subword(const LWord& pattern, const LWord& w) {
  long c = 0;
  if (pattern.empty() || pattern.size() > w.size()) return 0;
  for (std::size_t i = 0; i + pattern.size() <= w.size(); ++i) {
    if (std::equal(pattern.begin(), pattern.end(), w.begin() + static_cast<long>(i))) ++c;
  }
  return c;
}

/// Every pair (x, y) of reduced words of length <= bound with x^n y^m = g.
inline std::vector<std::pair<LWord, LWord>> solve_power_equation(
    int rank, long n, long m, const LWord& g, int bound) {
  auto words = all_reduced(rank, bound);
  std::vector<LWord> xn, ym;
  for (const auto& w : words) {
    xn.push_back(pow(w, n));
    ym.push_back(pow(w, m));
  }
  std::vector<std::pair<LWord, LWord>> out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    // y^m must equal x^{-n} g.
    const LWord need = mul(inv(xn[i]), g);
    for (std::size_t j = 0; j < words.size(); ++j) {
      if (ym[j] == need) out.emplace_back(words[i], words[j]);
    }
  }
  return out;
}

}  // namespace oracle
