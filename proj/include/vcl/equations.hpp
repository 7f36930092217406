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
/// The equation x^n y^m = a^n b^m in a free group: evaluation, the two
/// structural solution families, bounded exhaustive solving, classification
/// of solutions by the case analysis of the equation's solution taxonomy,
/// and bounded perfectness checks.

#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "vcl/oracles.hpp"
#include "vcl/parallel.hpp"
#include "vcl/words.hpp"

namespace vcl {

struct EquationInstance {
  Word a;
  Word b;
  Integer n;
  Integer m;
  /// a^n b^m
  Word g;

  EquationInstance(Word a_, Word b_, Integer n_, Integer m_)
      : a(std::move(a_)), b(std::move(b_)), n(std::move(n_)), m(std::move(m_)),
        g(a.alphabet()) {
    require_same_alphabet(a, b);
    if (a.is_identity() || b.is_identity()) {
      throw PreconditionError("a and b must be nonidentity");
    }
    if (n <= 0 || m <= 0) throw PreconditionError("n and m must be positive");
    g = multiply(power(a, n), power(b, m));
  }

  Alphabet alphabet() const { return a.alphabet(); }
};

struct SolutionPair {
  Word x;
  Word y;
  friend bool operator==(const SolutionPair&, const SolutionPair&) = default;
};

inline bool operator<(const SolutionPair& p, const SolutionPair& q) {
  auto c = compare(p.x, q.x);
  if (c != 0) return c < 0;
  return compare(p.y, q.y) < 0;
}

inline Word evaluate_lhs(const EquationInstance& inst, const SolutionPair& p) {
  return multiply(power(p.x, inst.n), power(p.y, inst.m));
}

inline bool is_solution(const EquationInstance& inst, const SolutionPair& p) {
  require_same_alphabet(p.x, inst.a);
  require_same_alphabet(p.y, inst.a);
  return evaluate_lhs(inst, p) == inst.g;
}

/// (a^{g^alpha}, b^{g^alpha}).
inline SolutionPair conjugate_family(const EquationInstance& inst,
                                     const Integer& alpha) {
  Word h = power(inst.g, alpha);
  return {conjugate(inst.a, h), conjugate(inst.b, h)};
}

/// (g^s, g^t) for n s + m t = 1.
inline SolutionPair gcd_family(const EquationInstance& inst, const Integer& s,
                               const Integer& t) {
  if (gcd(inst.n, inst.m) != 1) throw PreconditionError("gcd(n, m) != 1");
  if (inst.n * s + inst.m * t != 1) {
    throw PreconditionError("Bezout condition n*s + m*t = 1 violated");
  }
  return {power(inst.g, s), power(inst.g, t)};
}

struct SearchOptions {
  /// Maximum number of x candidates examined.
  std::size_t max_candidates = 5'000'000;
  unsigned jobs = 0;
};

/// Every pair (x, y) of reduced words with |x|, |y| <= bound solving the
/// equation, sorted. For each x the unique candidate y is the m-th root of
/// x^{-n} g, when it exists (roots are unique in free groups).
inline std::vector<SolutionPair> brute_force_solutions(
    const EquationInstance& inst, int bound, const SearchOptions& opt = {}) {
  if (bound < 0) throw PreconditionError("length bound must be >= 0");
  const Integer expected = reduced_word_count(inst.alphabet().rank(), bound);
  if (expected > Integer(opt.max_candidates)) {
    throw BudgetExceeded("brute force would examine " + expected.str() +
                         " candidates (cap " +
                         std::to_string(opt.max_candidates) + ")");
  }
  const auto candidates = enumerate_reduced(inst.alphabet(), bound);
  const unsigned jobs = resolve_jobs(opt.jobs);
  std::vector<std::vector<SolutionPair>> partial(jobs);
  parallel_chunks(candidates.size(), jobs,
                  [&](std::size_t c, std::size_t begin, std::size_t end) {
                    for (std::size_t i = begin; i < end; ++i) {
                      const Word& x = candidates[i];
                      Word rest = multiply(invert(power(x, inst.n)), inst.g);
                      Word y(inst.alphabet());
                      if (!rest.is_identity()) {
                        auto rd = root(rest);
                        if (rd.exponent % inst.m != 0) continue;
                        y = power(rd.root, rd.exponent / inst.m);
                        if (y.length() > bound) continue;
                      }
                      partial[c].push_back({x, std::move(y)});
                    }
                  });
  std::vector<SolutionPair> out;
  for (auto& p : partial) {
    for (auto& s : p) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

enum class SolutionKind {
  ConjugateFamily,
  GcdFamily,
  Swapped,
  CommonE,
  PowerInE,
  Unclassified,
};

inline const char* to_string(SolutionKind k) {
  switch (k) {
    case SolutionKind::ConjugateFamily: return "CONJUGATE_FAMILY";
    case SolutionKind::GcdFamily: return "GCD_FAMILY";
    case SolutionKind::Swapped: return "SWAPPED";
    case SolutionKind::CommonE: return "COMMON_E";
    case SolutionKind::PowerInE: return "POWER_IN_E";
    case SolutionKind::Unclassified: return "UNCLASSIFIED";
  }
  return "?";
}

struct Classification {
  SolutionKind kind = SolutionKind::Unclassified;
  /// Other tags whose conditions also hold, in test order.
  std::vector<SolutionKind> also_holds;

  // Witness data; only the fields of tags that hold are set.
  std::optional<Integer> alpha;            // x = a^{g^alpha}, y = b^{g^alpha}
  std::optional<Integer> s, t;             // x = g^s, y = g^t
  std::optional<Word> x_conjugator;        // x = gx^{-1} b gx
  std::optional<Word> y_conjugator;        // y = gy^{-1} a gy
  std::optional<Word> common_root;         // E(x) = E(y) = <common_root>
  bool x_power_in_e_y = false;             // x^n in E(y)
  bool y_power_in_e_x = false;             // y^m in E(x)

  bool holds(SolutionKind k) const {
    return kind == k ||
           std::find(also_holds.begin(), also_holds.end(), k) != also_holds.end();
  }
};

/// |alpha| <= (|x| + |y|) / max(1, |g|) + 1.
inline Integer alpha_window(const EquationInstance& inst,
                            const SolutionPair& p) {
  Integer lg = inst.g.length();
  if (lg < 1) lg = 1;
  return (p.x.length() + p.y.length()) / lg + 1;
}

inline Classification classify_solution(const EquationInstance& inst,
                                        const SolutionPair& p) {
  if (!is_solution(inst, p)) {
    throw PreconditionError("classify_solution: pair is not a solution");
  }
  Classification c;
  std::vector<SolutionKind> found;

  const Integer window = alpha_window(inst, p);
  for (Integer k = 0; k <= window && !c.alpha; ++k) {
    for (const Integer& alpha : {k, Integer(-k)}) {
      if (conjugate_family(inst, alpha) == p) {
        c.alpha = alpha;
        break;
      }
      if (k == 0) break;
    }
  }
  if (c.alpha) found.push_back(SolutionKind::ConjugateFamily);

  auto s = cyclic_log(p.x, inst.g);
  auto t = cyclic_log(p.y, inst.g);
  if (s && t && inst.n * *s + inst.m * *t == 1) {
    c.s = s;
    c.t = t;
    found.push_back(SolutionKind::GcdFamily);
  }

  auto gx = is_conjugate(inst.b, p.x);
  auto gy = is_conjugate(inst.a, p.y);
  if (gx && gy) {
    c.x_conjugator = gx->conjugator;
    c.y_conjugator = gy->conjugator;
    found.push_back(SolutionKind::Swapped);
  }

  if (!p.x.is_identity() && !p.y.is_identity() &&
      same_elementary_subgroup(p.x, p.y)) {
    c.common_root = elementary_generator(p.x);
    found.push_back(SolutionKind::CommonE);
  }

  c.x_power_in_e_y = !p.y.is_identity() &&
                     in_elementary_subgroup(power(p.x, inst.n), p.y);
  c.y_power_in_e_x = !p.x.is_identity() &&
                     in_elementary_subgroup(power(p.y, inst.m), p.x);
  if (c.x_power_in_e_y || c.y_power_in_e_x) {
    found.push_back(SolutionKind::PowerInE);
  }

  if (found.empty()) {
    c.kind = SolutionKind::Unclassified;
  } else {
    c.kind = found.front();
    c.also_holds.assign(found.begin() + 1, found.end());
  }
  return c;
}

/// Independently re-checks the witness of the primary tag.
inline bool verify_classification(const EquationInstance& inst,
                                  const SolutionPair& p,
                                  const Classification& c) {
  switch (c.kind) {
    case SolutionKind::ConjugateFamily: {
      if (!c.alpha) return false;
      Word h = power(inst.g, *c.alpha);
      return conjugate(inst.a, h) == p.x && conjugate(inst.b, h) == p.y;
    }
    case SolutionKind::GcdFamily:
      return c.s && c.t && power(inst.g, *c.s) == p.x &&
             power(inst.g, *c.t) == p.y && inst.n * *c.s + inst.m * *c.t == 1;
    case SolutionKind::Swapped:
      return c.x_conjugator && c.y_conjugator &&
             conjugate(inst.b, *c.x_conjugator) == p.x &&
             conjugate(inst.a, *c.y_conjugator) == p.y;
    case SolutionKind::CommonE: {
      if (!c.common_root) return false;
      auto matches = [&](const Word& w) {
        Word r = root(w).root;
        return r == *c.common_root || r == invert(*c.common_root);
      };
      return matches(p.x) && matches(p.y);
    }
    case SolutionKind::PowerInE:
      return (c.x_power_in_e_y &&
              in_elementary_subgroup(power(p.x, inst.n), p.y)) ||
             (c.y_power_in_e_x &&
              in_elementary_subgroup(power(p.y, inst.m), p.x));
    case SolutionKind::Unclassified:
      return true;
  }
  return false;
}

/// The divisor and threshold of the perfectness statement. Neither is
/// effective; both are report metadata, never enforced.
struct PerfectnessParams {
  Integer ell = 1;
  Integer threshold = 0;
};

struct ClassifiedSolution {
  SolutionPair pair;
  Classification classification;
};

struct PerfectnessReport {
  Integer n, m;
  int bound = 0;
  PerfectnessParams params;
  std::vector<ClassifiedSolution> solutions;
  bool perfect_at_bound = false;
  // Hypothesis flags: n, m in ell*N, n != m, n, m > threshold.
  bool n_m_in_ell_n = false;
  bool n_ne_m = false;
  bool above_threshold = false;
  std::string note;
};

inline PerfectnessReport verify_perfect(const EquationInstance& inst, int bound,
                                        const PerfectnessParams& params,
                                        const SearchOptions& opt = {}) {
  if (params.ell < 1) throw PreconditionError("ell must be >= 1");
  PerfectnessReport r;
  r.n = inst.n;
  r.m = inst.m;
  r.bound = bound;
  r.params = params;
  r.n_m_in_ell_n = inst.n % params.ell == 0 && inst.m % params.ell == 0;
  r.n_ne_m = inst.n != inst.m;
  r.above_threshold = inst.n > params.threshold && inst.m > params.threshold;
  r.perfect_at_bound = true;
  for (auto& p : brute_force_solutions(inst, bound, opt)) {
    auto c = classify_solution(inst, p);
    if (c.kind != SolutionKind::ConjugateFamily) r.perfect_at_bound = false;
    r.solutions.push_back({std::move(p), std::move(c)});
  }
  r.note =
      "bounded check only: every solution with |x|, |y| <= bound was "
      "enumerated; this is non-refutation at the bound, not a proof of "
      "perfectness";
  return r;
}

/// Finds r with u in <a> g^r and v in <b> g^r, given
/// (u^{-1} a^n u)(v^{-1} b^m v) = g. Searches |r| <= |u| + |v|.
inline std::optional<Integer> conjugator_normal_form(
    const EquationInstance& inst, const Word& u, const Word& v) {
  Word lhs = multiply(conjugate(power(inst.a, inst.n), u),
                      conjugate(power(inst.b, inst.m), v));
  if (lhs != inst.g) {
    throw PreconditionError(
        "conjugator_normal_form: (u^-1 a^n u)(v^-1 b^m v) != a^n b^m");
  }
  const Integer window = u.length() + v.length();
  for (Integer k = 0; k <= window; ++k) {
    for (const Integer& r : {k, Integer(-k)}) {
      Word gr_inv = power(inst.g, -r);
      if (cyclic_log(multiply(u, gr_inv), inst.a) &&
          cyclic_log(multiply(v, gr_inv), inst.b)) {
        return r;
      }
      if (k == 0) break;
    }
  }
  return std::nullopt;
}

}  // namespace vcl
