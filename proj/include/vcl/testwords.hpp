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
/// Test words: the three-variable-plus-one word W_3, the recursive lift
/// W_n -> W_{n+1}, evaluation, canonical solutions, bounded verification,
/// and the exponent-sum certificates behind the uniqueness argument.
///
/// Variables of a level-n test word are x_1..x_n and y_3..y_n, numbered so
/// that a word keeps its indices when lifted:
///   x_1 -> 0, x_2 -> 1, x_j -> 2(j-2), y_j -> 2(j-2)+1   (j >= 3).
/// A level-n word therefore lives in a free group of rank 2n-2.

#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "vcl/oracles.hpp"
#include "vcl/parallel.hpp"
#include "vcl/words.hpp"

namespace vcl {

struct ExponentTuple {
  Integer k1 = 1, l1 = 1, m1 = 1, k2 = 1, l2 = 1, m2 = 1, s = 1, p = 1, q = 1,
          t = 1;

  static ExponentTuple uniform(const Integer& e) {
    return {e, e, e, e, e, e, e, e, e, e};
  }

  std::array<Integer, 10> as_array() const {
    return {k1, l1, m1, k2, l2, m2, s, p, q, t};
  }

  static ExponentTuple from_array(const std::array<Integer, 10>& a) {
    ExponentTuple e{a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7], a[8], a[9]};
    e.validate();
    return e;
  }

  void validate() const {
    for (const auto& v : as_array()) {
      if (v < 1) throw PreconditionError("test-word exponents must be >= 1");
    }
  }
};

inline int x_var(int i) {
  if (i < 1) throw PreconditionError("x variables start at x_1");
  return i <= 2 ? i - 1 : 2 * (i - 2);
}

inline int y_var(int j) {
  if (j < 3) throw PreconditionError("y variables start at y_3");
  return 2 * (j - 2) + 1;
}

inline int variable_count(int level) { return 2 * level - 2; }

inline std::string variable_name(int index) {
  if (index < 2) return "x" + std::to_string(index + 1);
  const int j = index / 2 + 2;
  return (index % 2 == 0 ? "x" : "y") + std::to_string(j);
}

/// Formats a symbolic word with variable names, e.g. "x1^2 x3 Y3".
inline std::string format_symbolic(const Word& w) {
  std::string out;
  for (const auto& s : w.syllables()) {
    if (!out.empty()) out += ' ';
    out += variable_name(s.generator);
    if (s.exponent != 1) out += "^" + s.exponent.str();
  }
  return out;
}

struct TestWord {
  int level = 3;
  Word word;
};

/// ((X^k1 x'^l1)^m1 (x^k2 x'^l2)^m2)^s (x^p (x' y')^q)^t.
inline Word lift_shell(const Word& X, const Word& xn, const Word& xn1,
                       const Word& yn1, const ExponentTuple& e) {
  e.validate();
  Word first = power(multiply(power(X, e.k1), power(xn1, e.l1)), e.m1);
  Word second = power(multiply(power(xn, e.k2), power(xn1, e.l2)), e.m2);
  Word head = power(multiply(first, second), e.s);
  Word tail = power(multiply(power(xn, e.p), power(multiply(xn1, yn1), e.q)),
                    e.t);
  return multiply(head, tail);
}

inline TestWord build_w3(const ExponentTuple& e) {
  Alphabet vars(variable_count(3));
  auto v = [&](int idx) { return Word::generator(vars, idx); };
  return {3, lift_shell(v(x_var(1)), v(x_var(2)), v(x_var(3)), v(y_var(3)), e)};
}

inline bool uses_exactly_level_variables(const TestWord& w) {
  if (w.word.rank() != variable_count(w.level)) return false;
  std::vector<bool> seen(static_cast<std::size_t>(w.word.rank()), false);
  for (const auto& s : w.word.syllables()) {
    seen[static_cast<std::size_t>(s.generator)] = true;
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

/// W_{n+1} = M(W_n, x_n, x_{n+1}, y_{n+1}).
inline TestWord lift(const TestWord& w, const ExponentTuple& e) {
  if (w.level < 3) throw PreconditionError("test words start at level 3");
  if (!uses_exactly_level_variables(w)) {
    throw PreconditionError("variable-set mismatch for level " +
                            std::to_string(w.level));
  }
  const int n = w.level;
  Alphabet vars(variable_count(n + 1));
  auto v = [&](int idx) { return Word::generator(vars, idx); };
  Word X = embed(w.word, vars);
  return {n + 1, lift_shell(X, v(x_var(n)), v(x_var(n + 1)), v(y_var(n + 1)), e)};
}

struct TestWordSpec {
  int level = 3;
  std::vector<ExponentTuple> tuples;
};

inline TestWord build_testword(const TestWordSpec& spec) {
  if (spec.level < 3) throw PreconditionError("level must be >= 3");
  if (spec.tuples.size() != static_cast<std::size_t>(spec.level - 2)) {
    throw PreconditionError("a level-n spec needs n-2 exponent tuples");
  }
  TestWord w = build_w3(spec.tuples.front());
  for (std::size_t i = 1; i < spec.tuples.size(); ++i) {
    w = lift(w, spec.tuples[i]);
  }
  return w;
}

/// Images for x_1..x_n (x) and y_3..y_n (y).
struct Assignment {
  std::vector<Word> x;
  std::vector<Word> y;
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

inline std::vector<Word> variable_images(const TestWord& w,
                                         const Assignment& a) {
  if (a.x.size() != static_cast<std::size_t>(w.level) ||
      a.y.size() != static_cast<std::size_t>(w.level - 2)) {
    throw PreconditionError("missing variable in assignment");
  }
  std::vector<Word> images;
  images.reserve(static_cast<std::size_t>(variable_count(w.level)));
  for (int idx = 0; idx < variable_count(w.level); ++idx) {
    if (idx < 2) {
      images.push_back(a.x[static_cast<std::size_t>(idx)]);
    } else if (idx % 2 == 0) {
      images.push_back(a.x[static_cast<std::size_t>(idx / 2 + 1)]);
    } else {
      images.push_back(a.y[static_cast<std::size_t>(idx / 2 - 1)]);
    }
  }
  return images;
}

inline Word evaluate(const TestWord& w, const Assignment& a) {
  auto images = variable_images(w, a);
  return substitute(w.word, images, images.front().alphabet());
}

inline Assignment defining_assignment(const TestWord& w,
                                      const std::vector<Word>& a_tuple) {
  if (a_tuple.size() != static_cast<std::size_t>(w.level)) {
    throw PreconditionError("tuple length must equal the number of x variables");
  }
  Assignment a{a_tuple, {}};
  a.y.assign(static_cast<std::size_t>(w.level - 2),
             Word(a_tuple.front().alphabet()));
  return a;
}

/// U = W(a_1, ..., a_n, 1, ..., 1).
inline Word testword_value(const TestWord& w, const std::vector<Word>& a_tuple) {
  return evaluate(w, defining_assignment(w, a_tuple));
}

/// x_i -> a_i^{U^alpha}, y_j -> 1.
inline Assignment canonical_solutions(const TestWord& w,
                                      const std::vector<Word>& a_tuple,
                                      const Integer& alpha) {
  Word u = testword_value(w, a_tuple);
  if (u.is_identity()) throw PreconditionError("W(a, 1) is the identity");
  Word h = power(u, alpha);
  Assignment a = defining_assignment(w, a_tuple);
  for (auto& x : a.x) x = conjugate(x, h);
  return a;
}

struct TestwordBudget {
  std::uint64_t max_assignments = 50'000'000;
  std::uint64_t max_millis = 600'000;
  unsigned jobs = 0;
};

struct TestwordReport {
  Word value;
  int bound = 0;
  bool hypothesis_ok = false;
  std::string hypothesis_reason;
  Integer alpha_window;
  std::vector<Assignment> violations;
  std::uint64_t explored = 0;
  Integer total;
  std::uint64_t abelian_pruned = 0;
  std::uint64_t solutions = 0;
  bool complete = false;
  std::uint64_t elapsed_ms = 0;
};

/// Whether the assignment is a canonical solution for some |alpha| <= window.
inline std::optional<Integer> canonical_alpha(const TestWord& w,
                                              const std::vector<Word>& a_tuple,
                                              const Assignment& a,
                                              const Integer& window) {
  for (const auto& y : a.y) {
    if (!y.is_identity()) return std::nullopt;
  }
  Word u = testword_value(w, a_tuple);
  for (Integer k = 0; k <= window; ++k) {
    for (const Integer& alpha : {k, Integer(-k)}) {
      Word h = power(u, alpha);
      bool all = true;
      for (std::size_t i = 0; i < a.x.size() && all; ++i) {
        all = conjugate(a_tuple[i], h) == a.x[i];
      }
      if (all) return alpha;
      if (k == 0) break;
    }
  }
  return std::nullopt;
}

/// Exhaustive search over assignments with every image of length <= bound.
/// A violation solves W(b) = U but is not canonical for any alpha in the
/// window. An empty violation list is bounded non-refutation only.
inline TestwordReport verify_testword(const TestWord& w,
                                      const std::vector<Word>& a_tuple,
                                      int bound,
                                      const TestwordBudget& budget = {}) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  if (bound < 0) throw PreconditionError("length bound must be >= 0");
  TestwordReport r;
  r.value = testword_value(w, a_tuple);
  r.bound = bound;
  {
    auto verdict = is_special_tuple(a_tuple);
    r.hypothesis_ok = verdict.special;
    r.hypothesis_reason = verdict.reason;
  }
  Integer lu = r.value.length();
  r.alpha_window = Integer(bound) / (lu < 1 ? Integer(1) : lu) + 1;

  const Alphabet target = a_tuple.front().alphabet();
  const auto candidates = enumerate_reduced(target, bound);
  const int var_count = variable_count(w.level);
  r.total = 1;
  for (int i = 0; i < var_count; ++i) r.total *= candidates.size();

  // The image of W in Z^rank is linear in the images of the variables.
  const std::size_t rank = static_cast<std::size_t>(target.rank());
  std::vector<std::vector<std::int64_t>> ab(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (const auto& v : abelianize(candidates[i])) {
      ab[i].push_back(v.convert_to<std::int64_t>());
    }
  }
  std::vector<std::int64_t> coef(static_cast<std::size_t>(var_count));
  for (int v = 0; v < var_count; ++v) {
    coef[static_cast<std::size_t>(v)] =
        exponent_sum(w.word, v).convert_to<std::int64_t>();
  }
  std::vector<std::int64_t> goal;
  for (const auto& v : abelianize(r.value)) {
    goal.push_back(v.convert_to<std::int64_t>());
  }

  const unsigned jobs = resolve_jobs(budget.jobs);
  std::atomic<std::uint64_t> explored{0}, pruned{0}, solutions{0};
  std::atomic<bool> stop{false};
  std::vector<std::vector<std::vector<std::size_t>>> found(jobs);

  auto over_budget = [&] {
    if (explored.load(std::memory_order_relaxed) >= budget.max_assignments) {
      return true;
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  Clock::now() - start)
                  .count();
    return static_cast<std::uint64_t>(ms) >= budget.max_millis;
  };

  auto to_assignment = [&](const std::vector<std::size_t>& choice) {
    Assignment a;
    for (int idx = 0; idx < var_count; ++idx) {
      const Word& img = candidates[choice[static_cast<std::size_t>(idx)]];
      if (idx < 2 || idx % 2 == 0) {
        a.x.push_back(img);
      } else {
        a.y.push_back(img);
      }
    }
    return a;
  };

  parallel_chunks(
      candidates.size(), jobs,
      [&](std::size_t c, std::size_t begin, std::size_t end) {
        std::vector<std::size_t> choice(static_cast<std::size_t>(var_count), 0);
        std::vector<std::vector<std::int64_t>> partial(
            static_cast<std::size_t>(var_count) + 1,
            std::vector<std::int64_t>(rank, 0));
        std::vector<Word> images(static_cast<std::size_t>(var_count),
                                 Word(target));
        std::uint64_t local = 0;
        auto recurse = [&](auto&& self, std::size_t depth) -> void {
          if (stop.load(std::memory_order_relaxed)) return;
          if (depth == choice.size()) {
            ++local;
            explored.fetch_add(1, std::memory_order_relaxed);
            if ((local & 1023) == 0 && over_budget()) {
              stop = true;
              return;
            }
            if (partial[depth] != goal) {
              pruned.fetch_add(1, std::memory_order_relaxed);
              return;
            }
            for (std::size_t v = 0; v < choice.size(); ++v) {
              images[v] = candidates[choice[v]];
            }
            if (substitute(w.word, images, target) != r.value) return;
            solutions.fetch_add(1, std::memory_order_relaxed);
            Assignment a = to_assignment(choice);
            if (!canonical_alpha(w, a_tuple, a, r.alpha_window)) {
              found[c].push_back(choice);
            }
            return;
          }
          const std::size_t lo = depth == 0 ? begin : 0;
          const std::size_t hi = depth == 0 ? end : candidates.size();
          for (std::size_t i = lo; i < hi; ++i) {
            choice[depth] = i;
            for (std::size_t k = 0; k < rank; ++k) {
              partial[depth + 1][k] = partial[depth][k] + coef[depth] * ab[i][k];
            }
            self(self, depth + 1);
            if (stop.load(std::memory_order_relaxed)) return;
          }
        };
        if (var_count > 0) recurse(recurse, 0);
      });

  for (auto& list : found) {
    for (auto& choice : list) r.violations.push_back(to_assignment(choice));
  }
  r.explored = explored.load();
  r.abelian_pruned = pruned.load();
  r.solutions = solutions.load();
  r.complete = !stop.load() && Integer(r.explored) == r.total;
  r.elapsed_ms = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                            start)
          .count());
  return r;
}

using Matrix2 = std::array<std::array<Integer, 2>, 2>;

inline Integer det2(const Matrix2& a) {
  return a[0][0] * a[1][1] - a[0][1] * a[1][0];
}

struct Certificates {
  /// Acts on (alpha, beta): image of A^{-alpha} B^{beta} under the
  /// exponent-sum map a_1^m -> (1,0), a_2^m -> (0,1), a_3^m -> (0,0).
  Matrix2 phi;
  /// Acts on (gamma, delta): image of C^{-gamma} D^{delta} under
  /// a_1^m -> (1,0), a_2^m -> (0,0), a_3^m -> (0,1).
  Matrix2 psi;
  Integer det_phi;
  Integer det_psi;
  /// Both maps are injective, forcing alpha = beta = gamma = delta = 0.
  bool pass = false;
};

inline Certificates exponent_sum_certificates(const ExponentTuple& e,
                                              const Integer& m) {
  e.validate();
  if (m < 1) throw PreconditionError("m must be positive");
  for (const auto* v : {&e.k1, &e.k2, &e.l1, &e.l2, &e.p, &e.q}) {
    if (*v % m != 0) {
      throw PreconditionError("m must divide k1, k2, l1, l2, p and q");
    }
  }
  Certificates c;
  c.phi = {{{Integer(-e.k1 / m), Integer(0)}, {Integer(0), Integer(e.k2 / m)}}};
  c.psi = {{{Integer(-(e.k1 * e.m1) / m), Integer(0)},
            {Integer(-(e.l1 * e.m1 + e.l2 * e.m2) / m), Integer(e.q / m)}}};
  c.det_phi = det2(c.phi);
  c.det_psi = det2(c.psi);
  c.pass = c.det_phi != 0 && c.det_psi != 0;
  return c;
}

}  // namespace vcl
