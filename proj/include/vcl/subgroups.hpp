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
/// Folded subgroup graphs (Stallings foldings) for finitely generated
/// subgroups of free groups: membership and rank.

#pragma once

#include <map>
#include <set>
#include <tuple>
#include <vector>

#include "vcl/words.hpp"

namespace vcl {

class SubgroupGraph {
 public:
  /// Edge from --generator--> to, read forward on positive letters.
  struct Edge {
    int from;
    int generator;
    int to;
    friend auto operator<=>(const Edge&, const Edge&) = default;
  };

  SubgroupGraph(Alphabet alphabet, const std::vector<Word>& generators)
      : alphabet_(alphabet) {
    int next_state = 1;
    for (const auto& g : generators) {
      if (g.rank() != alphabet.rank()) {
        throw AlphabetMismatch(g.rank(), alphabet.rank());
      }
      if (g.is_identity()) continue;
      auto ls = letters(g);
      int cur = 0;
      for (std::size_t i = 0; i < ls.size(); ++i) {
        int nxt = i + 1 == ls.size() ? 0 : next_state++;
        add_letter_edge(cur, ls[i], nxt);
        cur = nxt;
      }
    }
    fold();
  }

  int base() const { return 0; }
  std::size_t state_count() const { return state_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::set<Edge>& edges() const { return edges_; }
  Alphabet alphabet() const { return alphabet_; }

  /// Rank of the subgroup: first Betti number E - V + 1 of the graph.
  long rank() const {
    return static_cast<long>(edges_.size()) - static_cast<long>(state_count_) +
           1;
  }

  bool accepts(const Word& w) const {
    if (w.rank() != alphabet_.rank()) {
      throw AlphabetMismatch(w.rank(), alphabet_.rank());
    }
    int state = 0;
    for (const auto& s : w.syllables()) {
      const int sg = s.exponent.sign();
      for (std::uint64_t i = 0, n = to_count(vcl::abs(s.exponent)); i < n;
           ++i) {
        auto it = out_.find({state, s.generator, sg});
        if (it == out_.end()) return false;
        state = it->second;
      }
    }
    return state == 0;
  }

  /// Whether (state, generator, sign) has an outgoing edge.
  bool is_deterministic() const {
    std::set<std::tuple<int, int, int>> seen;
    for (const auto& e : edges_) {
      if (!seen.insert({e.from, e.generator, 1}).second) return false;
      if (!seen.insert({e.to, e.generator, -1}).second) return false;
    }
    return true;
  }

 private:
  void add_letter_edge(int from, Letter l, int to) {
    if (l.sign > 0) {
      edges_.insert({from, l.generator, to});
    } else {
      edges_.insert({to, l.generator, from});
    }
  }

  // Identify clashing targets until the graph is deterministic. Each round
  // folds the lexicographically least (state, generator, direction) clash,
  // merging its two smallest targets into the smaller one.
  void fold() {
    for (;;) {
      std::map<std::tuple<int, int, int>, std::set<int>> targets;
      for (const auto& e : edges_) {
        targets[{e.from, e.generator, 1}].insert(e.to);
        targets[{e.to, e.generator, -1}].insert(e.from);
      }
      int keep = -1, drop = -1;
      for (const auto& [key, ts] : targets) {
        if (ts.size() >= 2) {
          auto it = ts.begin();
          keep = *it++;
          drop = *it;
          break;
        }
      }
      if (keep < 0) break;
      std::set<Edge> renamed;
      for (auto e : edges_) {
        if (e.from == drop) e.from = keep;
        if (e.to == drop) e.to = keep;
        renamed.insert(e);
      }
      edges_ = std::move(renamed);
    }
    // Renumber states densely, keeping the base at 0.
    std::map<int, int> ids{{0, 0}};
    for (const auto& e : edges_) {
      ids.emplace(e.from, 0);
      ids.emplace(e.to, 0);
    }
    int next = 0;
    for (auto& [old, id] : ids) id = next++;
    std::set<Edge> renumbered;
    out_.clear();
    for (const auto& e : edges_) {
      Edge r{ids[e.from], e.generator, ids[e.to]};
      renumbered.insert(r);
      out_[{r.from, r.generator, 1}] = r.to;
      out_[{r.to, r.generator, -1}] = r.from;
    }
    edges_ = std::move(renumbered);
    state_count_ = ids.size();
  }

  Alphabet alphabet_;
  std::set<Edge> edges_;
  std::map<std::tuple<int, int, int>, int> out_;
  std::size_t state_count_ = 1;
};

inline bool subgroup_membership(const std::vector<Word>& generators,
                                const Word& w) {
  if (w.is_identity()) return true;
  return SubgroupGraph(w.alphabet(), generators).accepts(w);
}

/// The words form a basis of a free subgroup of rank |ws|.
inline bool verify_free_of_rank(Alphabet alphabet, const std::vector<Word>& ws) {
  return SubgroupGraph(alphabet, ws).rank() == static_cast<long>(ws.size());
}

}  // namespace vcl
