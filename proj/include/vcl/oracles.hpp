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
/// Decision procedures in free groups: conjugacy, roots, commensurability,
/// maximal cyclic (elementary) subgroups and special tuples.
///
/// Standing assumption: "special" is taken with respect to the standard
/// basis, i.e. a nonidentity element that is not a proper power. In a free
/// group E(w) is then the cyclic subgroup generated by the root of w.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vcl/words.hpp"

namespace vcl {

namespace detail {

/// A cyclically reduced word read around a circle. The linear word equals
/// tail(runs[0] after `offset` letters) runs[1] ... runs[r-1]
/// head(runs[0], offset letters). Runs are maximal: cyclically adjacent runs
/// have distinct generators (unless there is a single run).
struct CyclicForm {
  std::vector<Syllable> runs;
  Integer offset;
};

inline CyclicForm cyclic_form(const Word& core) {
  const auto& s = core.syllables();
  CyclicForm f;
  f.offset = 0;
  if (s.size() >= 2 && s.front().generator == s.back().generator) {
    f.runs.push_back({s.front().generator, s.front().exponent + s.back().exponent});
    f.offset = vcl::abs(s.back().exponent);
    for (std::size_t k = 1; k + 1 < s.size(); ++k) f.runs.push_back(s[k]);
  } else {
    f.runs = s;
  }
  return f;
}

/// Letters read forward around the circle from (from, from_off) to
/// (to, to_off). Equal positions give the identity.
inline Word cycle_segment(Alphabet alphabet, const std::vector<Syllable>& runs,
                          std::size_t from, const Integer& from_off,
                          std::size_t to, const Integer& to_off) {
  Word out(alphabet);
  const std::size_t r = runs.size();
  auto piece = [&](std::size_t idx, const Integer& count) {
    out.push(runs[idx].generator, count * runs[idx].exponent.sign());
  };
  if (from == to && to_off >= from_off) {
    piece(from, to_off - from_off);
    return out;
  }
  piece(from, vcl::abs(runs[from].exponent) - from_off);
  for (std::size_t k = (from + 1) % r; k != to; k = (k + 1) % r) {
    out.push(runs[k].generator, runs[k].exponent);
  }
  piece(to, to_off);
  return out;
}

inline bool rotation_matches(const std::vector<Syllable>& a,
                             const std::vector<Syllable>& b, std::size_t rho) {
  const std::size_t r = a.size();
  for (std::size_t i = 0; i < r; ++i) {
    if (!(b[i] == a[(i + rho) % r])) return false;
  }
  return true;
}

}  // namespace detail

struct ConjugacyWitness {
  /// g with g^{-1} u g = v.
  Word conjugator;
};

/// Exact conjugacy test via cyclic normal forms.
inline std::optional<ConjugacyWitness> is_conjugate(const Word& u,
                                                    const Word& v) {
  require_same_alphabet(u, v);
  auto ru = cyclic_reduce(u);
  auto rv = cyclic_reduce(v);
  if (ru.core.length() != rv.core.length()) return std::nullopt;
  if (ru.core.is_identity()) {
    return ConjugacyWitness{Word(u.alphabet())};
  }
  auto fu = detail::cyclic_form(ru.core);
  auto fv = detail::cyclic_form(rv.core);
  if (fu.runs.size() != fv.runs.size()) return std::nullopt;
  for (std::size_t rho = 0; rho < fu.runs.size(); ++rho) {
    if (!detail::rotation_matches(fu.runs, fv.runs, rho)) continue;
    // cu = P Q and cv = Q P, so P^{-1} cu P = cv.
    Word p = detail::cycle_segment(u.alphabet(), fu.runs, 0, fu.offset, rho,
                                   fv.offset);
    if (conjugate(ru.core, p) != rv.core) continue;
    // u = s cu s^{-1}, v = t cv t^{-1}  =>  g = s P t^{-1}.
    Word g = multiply(multiply(ru.conjugator, p), invert(rv.conjugator));
    return ConjugacyWitness{g};
  }
  return std::nullopt;
}

struct RootData {
  Word root;
  Integer exponent;
};

/// w = root^exponent with exponent maximal (root is not a proper power).
inline RootData root(const Word& w) {
  if (w.is_identity()) throw PreconditionError("root of the identity");
  auto [core, conj] = cyclic_reduce(w);
  Word r(w.alphabet());
  Integer k = 1;
  if (core.syllable_count() == 1) {
    const auto& s = core.syllables().front();
    r.push(s.generator, s.exponent.sign());
    k = vcl::abs(s.exponent);
  } else {
    auto f = detail::cyclic_form(core);
    const std::size_t n = f.runs.size();
    for (std::size_t p = 1; p <= n; ++p) {
      if (n % p != 0) continue;
      if (p < n && !detail::rotation_matches(f.runs, f.runs, p)) continue;
      k = n / p;
      r = p == n ? core
                 : detail::cycle_segment(w.alphabet(), f.runs, 0, f.offset, p,
                                         f.offset);
      break;
    }
  }
  return {multiply(multiply(conj, r), invert(conj)), k};
}

inline bool is_proper_power(const Word& w) {
  return !w.is_identity() && root(w).exponent > 1;
}

struct CommensurabilityWitness {
  /// u^s = g^{-1} v^t g.
  Word conjugator;
  Integer s;
  Integer t;
};

struct Commensurability {
  bool commensurable = false;
  std::optional<CommensurabilityWitness> witness;
};

/// u and v are commensurable iff root(u) is conjugate to root(v)^{+-1}.
inline Commensurability is_commensurable(const Word& u, const Word& v) {
  if (u.is_identity() || v.is_identity()) {
    throw PreconditionError("commensurability of the identity");
  }
  require_same_alphabet(u, v);
  auto ru = root(u);
  auto rv = root(v);
  // g^{-1} rv^{e} g = ru  gives  u^{kv} = g^{-1} v^{e ku} g.
  for (int e : {1, -1}) {
    Word target = e == 1 ? rv.root : invert(rv.root);
    if (auto w = is_conjugate(target, ru.root)) {
      CommensurabilityWitness cw{w->conjugator, rv.exponent,
                                 ru.exponent * e};
      return {true, cw};
    }
  }
  return {false, std::nullopt};
}

struct ElementarySubgroup {
  /// E(w) = u <r> u^{-1}
  Word r;
  Word u;
};

inline ElementarySubgroup elementary_subgroup(const Word& w) {
  if (w.is_identity()) throw PreconditionError("E(identity) is undefined");
  auto [core, conj] = cyclic_reduce(w);
  return {root(core).root, conj};
}

/// Canonical generator of E(w) (the root of w).
inline Word elementary_generator(const Word& w) { return root(w).root; }

inline bool same_elementary_subgroup(const Word& x, const Word& y) {
  Word rx = elementary_generator(x);
  Word ry = elementary_generator(y);
  return rx == ry || rx == invert(ry);
}

/// w lies in E(z) = <root(z)>.
inline bool in_elementary_subgroup(const Word& w, const Word& z) {
  if (w.is_identity()) return true;
  return same_elementary_subgroup(w, z);
}

/// w lies in the cyclic subgroup <h>.
inline std::optional<Integer> cyclic_log(const Word& w, const Word& h) {
  if (w.is_identity()) return Integer(0);
  if (h.is_identity()) return std::nullopt;
  auto rw = root(w);
  auto rh = root(h);
  Integer j;
  if (rw.root == rh.root) {
    j = rw.exponent;
  } else if (rw.root == invert(rh.root)) {
    j = -rw.exponent;
  } else {
    return std::nullopt;
  }
  if (j % rh.exponent != 0) return std::nullopt;
  return Integer(j / rh.exponent);
}

struct SpecialTupleVerdict {
  bool special = false;
  std::string reason;
};

inline SpecialTupleVerdict is_special_tuple(const std::vector<Word>& ws) {
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (ws[i].is_identity()) {
      throw PreconditionError("identity element at position " +
                              std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (is_proper_power(ws[i])) {
      return {false, format_word(ws[i]) + " is a proper power"};
    }
  }
  for (std::size_t i = 0; i < ws.size(); ++i) {
    for (std::size_t j = i + 1; j < ws.size(); ++j) {
      if (is_commensurable(ws[i], ws[j]).commensurable) {
        return {false, "commensurable pair (" + std::to_string(i) + ", " +
                           std::to_string(j) + ")"};
      }
    }
  }
  return {true, ""};
}

}  // namespace vcl
