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

// vcl_cli: batch driver for the vcl experiments. Exit codes: 0 success,
// 1 error, 2 finding (a hypothesis violation or failed check).

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "report.hpp"
#include "vcl/vcl.hpp"

namespace {

using namespace vcl;
using cli::Json;
using cli::to_json;
using cli::words_json;

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kFinding = 2;

struct RunConfig {
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
  unsigned jobs = 0;
  std::uint64_t max_candidates = 5'000'000;
  std::uint64_t max_ms = 600'000;
  bool timing = false;
};

struct Result {
  Json report;
  int code = kOk;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) {
    auto b = cur.find_first_not_of(" \t");
    auto e = cur.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? std::string() : cur.substr(b, e - b + 1));
  }
  return out;
}

std::vector<Word> parse_words(const std::string& text, const Alphabet& alph) {
  std::vector<Word> out;
  if (text.find_first_not_of(" \t") == std::string::npos) return out;
  for (const auto& part : split(text, ',')) out.push_back(parse_word(part, alph));
  return out;
}

Word random_word(std::mt19937_64& rng, const Alphabet& alph, int max_len) {
  const int k = alph.rank();
  const int len = std::uniform_int_distribution<int>(0, max_len)(rng);
  Word w(alph);
  int prev = 0;  // signed letter code +-(g+1)
  for (int i = 0; i < len; ++i) {
    int code = 0;
    do {
      int c = std::uniform_int_distribution<int>(0, 2 * k - 1)(rng);
      code = c < k ? c + 1 : -(c - k + 1);
    } while (code == -prev);
    prev = code;
    const Word g = Word::generator(alph, std::abs(code) - 1);
    w = multiply(w, code > 0 ? g : invert(g));
  }
  return w;
}

IntMatrix parse_matrix(const std::string& text) {
  std::vector<std::vector<Integer>> rows;
  for (const auto& row : split(text, ';')) {
    std::istringstream in(row);
    std::vector<Integer> r;
    std::string tok;
    while (in >> tok) {
      for (auto& t : split(tok, ',')) {
        if (t.empty()) continue;
        try {
          r.emplace_back(t);
        } catch (const std::exception&) {
          throw ParseError("bad matrix entry '" + t + "'");
        }
      }
    }
    rows.push_back(std::move(r));
  }
  return IntMatrix::from_rows(rows);
}

Json matrix_json(const IntMatrix& m) {
  Json out = Json::array();
  for (const auto& row : m.to_rows()) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(to_json(x));
    out.push_back(r);
  }
  return out;
}

Json integers_json(const std::vector<Integer>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

std::vector<ExponentTuple> parse_tuples(const std::string& text, int count) {
  std::vector<ExponentTuple> out;
  for (const auto& part : split(text, ';')) {
    std::vector<Integer> vals;
    std::istringstream in(part);
    std::string tok;
    while (in >> tok) {
      for (auto& t : split(tok, ',')) {
        if (!t.empty()) vals.emplace_back(t);
      }
    }
    if (vals.size() == 1) {
      out.push_back(ExponentTuple::uniform(vals[0]));
      out.back().validate();
    } else if (vals.size() == 10) {
      std::array<Integer, 10> a;
      std::copy(vals.begin(), vals.end(), a.begin());
      out.push_back(ExponentTuple::from_array(a));
    } else {
      throw ParseError("an exponent tuple needs 1 or 10 values, got " +
                       std::to_string(vals.size()));
    }
  }
  if (out.empty()) throw ParseError("no exponent tuple given");
  if (static_cast<int>(out.size()) > count) throw ParseError("too many exponent tuples");
  while (static_cast<int>(out.size()) < count) out.push_back(out.back());
  return out;
}

Json tuple_json(const ExponentTuple& e) {
  Json out = Json::array();
  for (const auto& v : e.as_array()) out.push_back(to_json(v));
  return out;
}

Presentation load_presentation(const std::string& file, const std::string& relators, int gens) {
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw Error("cannot open presentation file " + file);
    return parse_presentation(in);
  }
  if (gens < 1) throw PreconditionError("--gens must be >= 1");
  return Presentation::make(gens, parse_words(relators, Alphabet(gens)));
}

Json presentation_json(const Presentation& p) {
  return {{"generators", p.generators}, {"relators", words_json(p.relators)}};
}

Json assignment_json(const Assignment& a) {
  return {{"x", words_json(a.x)}, {"y", words_json(a.y)}};
}

QuasiMorphism make_qm(const std::string& pattern, const std::string& sum_gen, const Alphabet& alph) {
  if (!pattern.empty() == !sum_gen.empty()) {
    throw PreconditionError("give exactly one of --pattern and --exponent-sum");
  }
  if (!sum_gen.empty()) {
    Word g = parse_word(sum_gen, alph);
    if (g.syllables().size() != 1 || g.syllables()[0].exponent != 1) {
      throw PreconditionError("--exponent-sum takes a single generator letter");
    }
    return QuasiMorphism::exponent_sum(g.syllables()[0].generator);
  }
  return QuasiMorphism::counting(parse_word(pattern, alph));
}

Json qm_json(const QuasiMorphism& q) {
  Json out;
  out["kind"] = q.kind() == QmKind::Homomorphism ? "exponent-sum" : "counting";
  if (q.pattern()) out["pattern"] = to_json(*q.pattern());
  return out;
}

// Empirical defect over random pairs; a lower bound for the true defect.
DefectEstimate sample_defect(const QuasiMorphism& q, const Alphabet& alph, std::size_t samples,
                             int max_len, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Word, Word>> pairs;
  pairs.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    Word f = random_word(rng, alph, max_len);
    pairs.emplace_back(std::move(f), random_word(rng, alph, max_len));
  }
  return defect_estimate(q, pairs);
}

std::vector<Word> basis(const Alphabet& alph) {
  std::vector<Word> out;
  for (int i = 0; i < alph.rank(); ++i) out.push_back(Word::generator(alph, i));
  return out;
}

PathSample segment(const Word& from, const Word& to) {
  PathSample p;
  const Word step = multiply(invert(from), to);
  for (Integer t = 0; t <= step.length(); ++t) p.vertices.push_back(multiply(from, prefix(step, t)));
  return p;
}

Json classification_json(const Classification& c) {
  Json out;
  out["kind"] = to_string(c.kind);
  Json also = Json::array();
  for (auto k : c.also_holds) also.push_back(to_string(k));
  out["also_holds"] = also;
  if (c.alpha) out["alpha"] = to_json(*c.alpha);
  if (c.s) out["s"] = to_json(*c.s);
  if (c.t) out["t"] = to_json(*c.t);
  if (c.x_conjugator) out["x_conjugator"] = to_json(*c.x_conjugator);
  if (c.y_conjugator) out["y_conjugator"] = to_json(*c.y_conjugator);
  if (c.common_root) out["common_root"] = to_json(*c.common_root);
  return out;
}

struct Command {
  CLI::App* app;
  std::function<Result()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vcl: equations, test words and verbal closedness experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  app.add_option("--out", cfg.out, "Report path (default: standard output)");
  app.add_option("--format", cfg.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "Worker threads (0 = all; VCL_JOBS overrides)");
  app.add_option("--max-candidates", cfg.max_candidates, "Search budget in candidates")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--max-ms", cfg.max_ms, "Wall-clock budget in milliseconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--timing", cfg.timing, "Include timing fields (breaks byte-identical reports)");

  std::vector<Command> commands;

  // solve-eq / verify-perfect share the equation flags.
  struct EqFlags {
    std::string a = "a", b = "b";
    std::string n = "2", m = "3";
    int rank = 2;
    int bound = 4;
  };
  auto add_eq_flags = [](CLI::App* sub, EqFlags& f) {
    sub->add_option("--a", f.a, "Word literal a")->capture_default_str();
    sub->add_option("--b", f.b, "Word literal b")->capture_default_str();
    sub->add_option("--n", f.n, "Exponent n")->capture_default_str();
    sub->add_option("--m", f.m, "Exponent m")->capture_default_str();
    sub->add_option("--rank", f.rank, "Free group rank")->capture_default_str();
    sub->add_option("--bound", f.bound, "Length bound L")->capture_default_str();
  };
  auto make_instance = [](const EqFlags& f) {
    const Alphabet alph(f.rank);
    return EquationInstance(parse_word(f.a, alph), parse_word(f.b, alph), Integer(f.n),
                            Integer(f.m));
  };
  auto instance_json = [](const EquationInstance& inst) {
    return Json{{"a", to_json(inst.a)},
                {"b", to_json(inst.b)},
                {"n", to_json(inst.n)},
                {"m", to_json(inst.m)},
                {"g", to_json(inst.g)}};
  };

  EqFlags solve;
  {
    auto* sub = app.add_subcommand("solve-eq", "All solutions of x^n y^m = a^n b^m up to length L");
    add_eq_flags(sub, solve);
    commands.push_back({sub, [&] {
      const auto inst = make_instance(solve);
      const auto sols =
          brute_force_solutions(inst, solve.bound, {cfg.max_candidates, cfg.jobs});
      Json r;
      r["command"] = "solve-eq";
      r["equation"] = instance_json(inst);
      r["bound"] = solve.bound;
      Json table = Json::array();
      std::size_t other = 0;
      for (const auto& p : sols) {
        const auto c = classify_solution(inst, p);
        if (c.kind != SolutionKind::ConjugateFamily) ++other;
        table.push_back({{"x", to_json(p.x)},
                         {"y", to_json(p.y)},
                         {"kind", to_string(c.kind)},
                         {"verified", verify_classification(inst, p, c)},
                         {"classification", classification_json(c)}});
      }
      r["solution_count"] = sols.size();
      r["non_conjugate_family"] = other;
      r["table"] = table;
      return Result{r, other > 0 ? kFinding : kOk};
    }});
  }

  EqFlags perf;
  std::string ell = "1", threshold = "0";
  {
    auto* sub = app.add_subcommand("verify-perfect", "Bounded perfectness check of x^n y^m = a^n b^m");
    add_eq_flags(sub, perf);
    sub->add_option("--ell", ell, "Divisor ell (metadata)")->capture_default_str();
    sub->add_option("--threshold", threshold, "Exponent threshold (metadata)")->capture_default_str();
    commands.push_back({sub, [&] {
      const auto inst = make_instance(perf);
      const auto rep = verify_perfect(inst, perf.bound, {Integer(ell), Integer(threshold)},
                                      {cfg.max_candidates, cfg.jobs});
      Json r;
      r["command"] = "verify-perfect";
      r["equation"] = instance_json(inst);
      r["bound"] = rep.bound;
      r["perfect_at_bound"] = rep.perfect_at_bound;
      r["hypotheses"] = {{"ell", to_json(rep.params.ell)},
                         {"threshold", to_json(rep.params.threshold)},
                         {"n_m_in_ell_N", rep.n_m_in_ell_n},
                         {"n_ne_m", rep.n_ne_m},
                         {"above_threshold", rep.above_threshold}};
      Json table = Json::array();
      for (const auto& s : rep.solutions) {
        table.push_back({{"x", to_json(s.pair.x)},
                         {"y", to_json(s.pair.y)},
                         {"kind", to_string(s.classification.kind)}});
      }
      r["solution_count"] = rep.solutions.size();
      r["table"] = table;
      r["note"] = rep.note;
      return Result{r, rep.perfect_at_bound ? kOk : kFinding};
    }});
  }

  struct TwFlags {
    int level = 3;
    std::string exponents = "2";
    std::string a_tuple;
    int rank = 0;
  };
  auto add_tw_flags = [](CLI::App* sub, TwFlags& f) {
    sub->add_option("--level", f.level, "Test-word level n >= 3")->capture_default_str();
    sub->add_option("--exponents", f.exponents,
                    "Exponent tuples k1 l1 m1 k2 l2 m2 s p q t, ';'-separated per level; a "
                    "single value means all equal")
        ->capture_default_str();
    sub->add_option("--a-tuple", f.a_tuple, "Comma-separated parameters a_1..a_n");
    sub->add_option("--rank", f.rank, "Target rank (default: level)");
  };
  auto build_tw = [](const TwFlags& f) {
    return build_testword({f.level, parse_tuples(f.exponents, f.level - 2)});
  };
  auto tw_tuple = [](const TwFlags& f) {
    const Alphabet alph(f.rank > 0 ? f.rank : f.level);
    if (f.a_tuple.empty()) return basis(alph);
    return parse_words(f.a_tuple, alph);
  };

  TwFlags build;
  {
    auto* sub = app.add_subcommand("build-testword", "Build the recursive test word W_n");
    add_tw_flags(sub, build);
    commands.push_back({sub, [&] {
      if (build.level < 3) throw PreconditionError("level must be >= 3");
      const auto tuples = parse_tuples(build.exponents, build.level - 2);
      const auto w = build_testword({build.level, tuples});
      Json r;
      r["command"] = "build-testword";
      r["level"] = w.level;
      Json ts = Json::array();
      for (const auto& t : tuples) ts.push_back(tuple_json(t));
      r["exponents"] = ts;
      r["word"] = format_symbolic(w.word);
      r["length"] = to_json(w.word.length());
      const auto a = tw_tuple(build);
      const Word u = testword_value(w, a);
      r["a_tuple"] = words_json(a);
      r["value"] = to_json(u);
      r["value_length"] = to_json(u.length());
      return Result{r, kOk};
    }});
  }

  TwFlags vtw;
  int tw_bound = 1;
  {
    auto* sub = app.add_subcommand("verify-testword", "Exhaustive bounded test-word check");
    add_tw_flags(sub, vtw);
    sub->add_option("--bound", tw_bound, "Length bound for each variable image")->capture_default_str();
    commands.push_back({sub, [&] {
      if (vtw.level < 3) throw PreconditionError("level must be >= 3");
      const auto w = build_tw(vtw);
      const auto a = tw_tuple(vtw);
      const auto rep = verify_testword(w, a, tw_bound, {cfg.max_candidates, cfg.max_ms, cfg.jobs});
      Json r;
      r["command"] = "verify-testword";
      r["level"] = w.level;
      r["a_tuple"] = words_json(a);
      r["value"] = to_json(rep.value);
      r["bound"] = rep.bound;
      r["hypothesis_ok"] = rep.hypothesis_ok;
      r["hypothesis_reason"] = rep.hypothesis_reason;
      r["alpha_window"] = to_json(rep.alpha_window);
      r["explored"] = rep.explored;
      r["total"] = to_json(rep.total);
      r["abelian_pruned"] = rep.abelian_pruned;
      r["solutions"] = rep.solutions;
      r["complete"] = rep.complete;
      Json v = Json::array();
      for (const auto& x : rep.violations) v.push_back(assignment_json(x));
      r["violation_count"] = rep.violations.size();
      r["violations"] = v;
      if (cfg.timing) r["elapsed_ms"] = rep.elapsed_ms;
      return Result{r, rep.violations.empty() ? kOk : kFinding};
    }});
  }

  std::string cert_exponents = "2", cert_m = "2";
  {
    auto* sub = app.add_subcommand("certificates", "Exponent-sum injectivity certificates for W_3");
    sub->add_option("--exponents", cert_exponents, "Exponent tuple (1 or 10 values)")->capture_default_str();
    sub->add_option("--m", cert_m, "Common divisor m")->capture_default_str();
    commands.push_back({sub, [&] {
      const auto e = parse_tuples(cert_exponents, 1).front();
      const auto c = exponent_sum_certificates(e, Integer(cert_m));
      auto m2 = [](const Matrix2& a) {
        return Json::array({Json::array({to_json(a[0][0]), to_json(a[0][1])}),
                            Json::array({to_json(a[1][0]), to_json(a[1][1])})});
      };
      Json r;
      r["command"] = "certificates";
      r["exponents"] = tuple_json(e);
      r["m"] = to_json(Integer(cert_m));
      r["phi"] = m2(c.phi);
      r["psi"] = m2(c.psi);
      r["det_phi"] = to_json(c.det_phi);
      r["det_psi"] = to_json(c.det_psi);
      r["pass"] = c.pass;
      return Result{r, c.pass ? kOk : kFinding};
    }});
  }

  struct QmFlags {
    std::string pattern, exponent_sum;
    int rank = 2;
  };
  auto add_qm_flags = [](CLI::App* sub, QmFlags& f) {
    sub->add_option("--pattern", f.pattern, "Counting quasimorphism pattern");
    sub->add_option("--exponent-sum", f.exponent_sum, "Exponent-sum homomorphism generator");
    sub->add_option("--rank", f.rank, "Free group rank")->capture_default_str();
  };

  QmFlags qd;
  std::size_t qd_samples = 10000;
  int qd_len = 10;
  {
    auto* sub = app.add_subcommand("qm-defect", "Empirical defect over random pairs");
    add_qm_flags(sub, qd);
    sub->add_option("--samples", qd_samples, "Number of random pairs")->capture_default_str();
    sub->add_option("--max-len", qd_len, "Maximum random word length")->capture_default_str();
    commands.push_back({sub, [&] {
      const Alphabet alph(qd.rank);
      const auto q = make_qm(qd.pattern, qd.exponent_sum, alph);
      const auto d = sample_defect(q, alph, qd_samples, qd_len, cfg.seed);
      Json r;
      r["command"] = "qm-defect";
      r["quasimorphism"] = qm_json(q);
      r["seed"] = cfg.seed;
      r["samples"] = d.sample_count;
      r["max_len"] = qd_len;
      r["defect_lower_bound"] = to_json(d.lower_bound);
      if (d.witness) r["witness_index"] = *d.witness;
      if (auto b = q.defect_bound()) r["defect_bound"] = to_json(*b);
      return Result{r, kOk};
    }});
  }

  QmFlags qh;
  std::string qh_g = "ab", qh_defect;
  std::string qh_M = "64";
  {
    auto* sub = app.add_subcommand("qm-homogenize", "Truncated homogenization q(g^M)/M");
    add_qm_flags(sub, qh);
    sub->add_option("--g", qh_g, "Element g")->capture_default_str();
    sub->add_option("--M", qh_M, "Truncation M")->capture_default_str();
    sub->add_option("--defect", qh_defect, "Defect D (default: empirical estimate)");
    commands.push_back({sub, [&] {
      const Alphabet alph(qh.rank);
      const auto q = make_qm(qh.pattern, qh.exponent_sum, alph);
      const Rational D = qh_defect.empty()
                             ? sample_defect(q, alph, 10000, 10, cfg.seed).lower_bound
                             : Rational(qh_defect);
      const Integer M(qh_M);
      const auto h = homogenize(q, parse_word(qh_g, alph), M, D);
      Json r;
      r["command"] = "qm-homogenize";
      r["quasimorphism"] = qm_json(q);
      r["g"] = to_json(parse_word(qh_g, alph));
      r["M"] = to_json(M);
      r["defect"] = to_json(D);
      r["defect_source"] = qh_defect.empty() ? "empirical" : "given";
      r["value"] = to_json(h.value);
      r["error_bound"] = to_json(h.error_bound);
      Json table = Json::array();
      for (Integer k = 1; k <= M; k *= 2) {
        const auto hk = homogenize(q, parse_word(qh_g, alph), k, D);
        table.push_back({{"M", to_json(k)}, {"value", to_json(hk.value)}, {"error_bound", to_json(hk.error_bound)}});
      }
      r["table"] = table;
      return Result{r, kOk};
    }});
  }

  QmFlags qi;
  std::string qi_g = "ab", qi_u = "a", qi_defect, qi_M = "64";
  {
    auto* sub = app.add_subcommand("qm-invariance", "Conjugacy invariance residual of the homogenization");
    add_qm_flags(sub, qi);
    sub->add_option("--g", qi_g, "Element g")->capture_default_str();
    sub->add_option("--u", qi_u, "Conjugator u")->capture_default_str();
    sub->add_option("--M", qi_M, "Truncation M")->capture_default_str();
    sub->add_option("--defect", qi_defect, "Defect D (default: empirical estimate)");
    commands.push_back({sub, [&] {
      const Alphabet alph(qi.rank);
      const auto q = make_qm(qi.pattern, qi.exponent_sum, alph);
      const Rational D = qi_defect.empty()
                             ? sample_defect(q, alph, 10000, 10, cfg.seed).lower_bound
                             : Rational(qi_defect);
      const auto res = conjugacy_invariance_check(q, parse_word(qi_g, alph), parse_word(qi_u, alph),
                                                  Integer(qi_M), D);
      Json r;
      r["command"] = "qm-invariance";
      r["quasimorphism"] = qm_json(q);
      r["g"] = to_json(parse_word(qi_g, alph));
      r["u"] = to_json(parse_word(qi_u, alph));
      r["M"] = to_json(Integer(qi_M));
      r["defect"] = to_json(D);
      r["residual"] = to_json(res.residual);
      r["bound"] = to_json(res.bound);
      r["within_bound"] = res.within_bound;
      return Result{r, res.within_bound ? kOk : kFinding};
    }});
  }

  int cd_radius = 3, cd_rank = 2;
  std::size_t cd_samples = 1000;
  {
    auto* sub = app.add_subcommand("cayley-delta", "Thin-triangle lower bound in a Cayley ball");
    sub->add_option("--radius", cd_radius, "Ball radius")->capture_default_str();
    sub->add_option("--rank", cd_rank, "Free group rank")->capture_default_str();
    sub->add_option("--samples", cd_samples, "Sampled triangles")->capture_default_str();
    commands.push_back({sub, [&] {
      const Alphabet alph(cd_rank);
      const auto sp = cayley_ball(basis(alph), cd_radius, cfg.max_candidates);
      const auto est = estimate_delta_thin(sp, tree_geodesic_oracle(sp), cd_samples, cfg.seed);
      Json r;
      r["command"] = "cayley-delta";
      r["rank"] = cd_rank;
      r["radius"] = cd_radius;
      r["points"] = sp.size();
      r["seed"] = cfg.seed;
      r["samples"] = est.samples;
      r["delta_lower"] = to_json(est.delta_lower);
      if (est.triangle) {
        const auto& t = *est.triangle;
        r["triangle"] = words_json({sp.point(t[0]), sp.point(t[1]), sp.point(t[2])});
        r["parameter"] = est.parameter;
      }
      return Result{r, kOk};
    }});
  }

  int mc_radius = 3, mc_rank = 2;
  std::size_t mc_samples = 1000;
  std::string mc_delta = "0";
  {
    auto* sub = app.add_subcommand("midpoint-check", "Midpoint inequality on random ball triangles");
    sub->add_option("--radius", mc_radius, "Ball radius")->capture_default_str();
    sub->add_option("--rank", mc_rank, "Free group rank")->capture_default_str();
    sub->add_option("--samples", mc_samples, "Sampled triangles")->capture_default_str();
    sub->add_option("--delta", mc_delta, "Thinness constant")->capture_default_str();
    commands.push_back({sub, [&] {
      const Alphabet alph(mc_rank);
      const auto sp = cayley_ball(basis(alph), mc_radius, cfg.max_candidates);
      const auto orc = tree_geodesic_oracle(sp);
      const Rational delta(mc_delta);
      std::mt19937_64 rng(cfg.seed);
      std::uniform_int_distribution<std::size_t> pick(0, sp.size() - 1);
      std::size_t passed = 0;
      Json failure;
      for (std::size_t i = 0; i < mc_samples; ++i) {
        const auto A = pick(rng), B = pick(rng), C = pick(rng);
        const auto m = check_midpoint_lemma(sp, A, B, C, orc(A, C), orc(B, C), delta);
        if (m.ok) {
          ++passed;
        } else if (failure.is_null()) {
          failure = {{"triangle", words_json({sp.point(A), sp.point(B), sp.point(C)})},
                     {"lhs", m.lhs},
                     {"rhs", to_json(m.rhs)}};
        }
      }
      Json r;
      r["command"] = "midpoint-check";
      r["radius"] = mc_radius;
      r["seed"] = cfg.seed;
      r["delta"] = to_json(delta);
      r["samples"] = mc_samples;
      r["passed"] = passed;
      if (!failure.is_null()) r["first_failure"] = failure;
      return Result{r, passed == mc_samples ? kOk : kFinding};
    }});
  }

  std::string cc_segments = "a^2, b^2", cc_delta = "0", cc_kappa = "1", cc_eps = "0", cc_alpha = "1";
  int cc_rank = 2;
  {
    auto* sub = app.add_subcommand("concat-check", "Hypotheses and measured constant for a geodesic chain");
    sub->add_option("--segments", cc_segments, "Comma-separated segment labels, walked from 1")
        ->capture_default_str();
    sub->add_option("--rank", cc_rank, "Free group rank")->capture_default_str();
    sub->add_option("--delta", cc_delta, "Thinness constant")->capture_default_str();
    sub->add_option("--kappa", cc_kappa, "Quasi-geodesic kappa")->capture_default_str();
    sub->add_option("--epsilon", cc_eps, "Quasi-geodesic epsilon")->capture_default_str();
    sub->add_option("--alpha", cc_alpha, "Joint Gromov product bound alpha")->capture_default_str();
    commands.push_back({sub, [&] {
      const Alphabet alph(cc_rank);
      std::vector<PathSample> paths;
      Word at(alph);
      for (const auto& s : parse_words(cc_segments, alph)) {
        const Word next = multiply(at, s);
        paths.push_back(segment(at, next));
        at = next;
      }
      const QGConstants c{Rational(cc_kappa), Rational(cc_eps)};
      const auto res = check_concat_lemma(paths, Rational(cc_delta), c, Rational(cc_alpha));
      Json r;
      r["command"] = "concat-check";
      r["segments"] = words_json(parse_words(cc_segments, alph));
      r["delta"] = cc_delta;
      r["kappa"] = to_json(c.kappa);
      r["epsilon"] = to_json(c.epsilon);
      r["alpha"] = cc_alpha;
      r["hypotheses_ok"] = res.hypotheses_ok;
      r["segments_quasigeodesic"] = res.segments_quasigeodesic;
      Json jp = Json::array();
      for (const auto& x : res.joint_products) jp.push_back(to_json(x));
      r["joint_products"] = jp;
      r["middle_lengths"] = integers_json(res.middle_lengths);
      r["middle_threshold"] = to_json(res.middle_threshold);
      r["measured_eps0"] = to_json(res.measured_eps0);
      r["two_alpha"] = to_json(res.two_alpha);
      return Result{r, kOk};
    }});
  }

  std::string dv_c = "a", dv_d = "b";
  int dv_n = 10, dv_m = 10, dv_rank = 2;
  {
    auto* sub = app.add_subcommand("divergence", "Table of |c^n d^m| for non-commensurable c, d");
    sub->add_option("--c", dv_c, "Element c")->capture_default_str();
    sub->add_option("--d", dv_d, "Element d")->capture_default_str();
    sub->add_option("--n-max", dv_n, "Largest n")->capture_default_str();
    sub->add_option("--m-max", dv_m, "Largest m")->capture_default_str();
    sub->add_option("--rank", dv_rank, "Free group rank")->capture_default_str();
    commands.push_back({sub, [&] {
      const Alphabet alph(dv_rank);
      const auto rep = divergence_experiment(parse_word(dv_c, alph), parse_word(dv_d, alph), dv_n, dv_m);
      Json r;
      r["command"] = "divergence";
      r["c"] = to_json(rep.c);
      r["d"] = to_json(rep.d);
      r["observed_N0"] = to_json(rep.observed_N0);
      r["power_growth_ok"] = rep.power_growth_ok;
      r["verified"] = rep.verify();
      r["note"] = rep.note;
      Json table = Json::array();
      for (const auto& row : rep.table) {
        const Integer mn = row.n < row.m ? row.n : row.m;
        table.push_back({{"n", to_json(row.n)},
                         {"m", to_json(row.m)},
                         {"length", to_json(row.length)},
                         {"ratio", row.length == 0 ? Json("inf")
                                                   : to_json(Rational(mn) / Rational(row.length))}});
      }
      r["table"] = table;
      return Result{r, rep.verify() ? kOk : kFinding};
    }});
  }

  int rm_vars = 2, rm_len = 4;
  {
    auto* sub = app.add_subcommand("remark-13-2", "Dihedral central product: verbally closed, not a retract");
    sub->add_option("--max-vars", rm_vars, "Variables per corpus word (1 or 2)")->capture_default_str();
    sub->add_option("--max-len", rm_len, "Corpus word length")->capture_default_str();
    commands.push_back({sub, [&] {
      const auto rep = remark_13_2_suite(rm_vars, rm_len, cfg.jobs);
      Json r;
      r["command"] = "remark-13-2";
      r["groups"] = {{"A", rep.order_A}, {"B", rep.order_B}, {"G", rep.order_G}};
      r["claim_a"] = {{"corpus_size", rep.corpus_size},
                      {"max_variables", rep.max_variables},
                      {"max_length", rep.max_length},
                      {"targets", rep.targets},
                      {"checks", rep.checks},
                      {"disagreements", rep.disagreements},
                      {"witnesses_failed", rep.witnesses_failed},
                      {"parity_checks", rep.parity_checks},
                      {"parity_violations", rep.parity_violations},
                      {"lifts_checked", rep.lifts_checked},
                      {"lifts_failed", rep.lifts_failed},
                      {"ok", rep.claim_a_ok()}};
      r["claim_c"] = {{"hom_count", rep.centralizing_homs},
                      {"all_in_center", rep.all_in_center},
                      {"compatible_homs", rep.compatible_homs},
                      {"retract_found", rep.retract_found},
                      {"product_retract_found", rep.product_retract_found},
                      {"ok", rep.claim_c_ok()}};
      r["pass"] = rep.pass();
      r["assumption"] = rep.assumption;
      r["coverage"] = rep.coverage;
      if (cfg.timing) r["runtime_ms"] = rep.runtime_ms;
      return Result{r, rep.pass() ? kOk : kFinding};
    }});
  }

  std::string snf_matrix = "4 0; 0 2; 2 0";
  {
    auto* sub = app.add_subcommand("snf", "Smith normal form with transforms");
    sub->add_option("--matrix", snf_matrix, "Rows separated by ';'")->capture_default_str();
    commands.push_back({sub, [&] {
      const auto M = parse_matrix(snf_matrix);
      const auto s = smith_normal_form(M);
      const auto ab = abelianization_from_snf(s);
      Json r;
      r["command"] = "snf";
      r["matrix"] = matrix_json(M);
      r["diagonal"] = integers_json(s.diagonal());
      r["D"] = matrix_json(s.D);
      r["U"] = matrix_json(s.U);
      r["V"] = matrix_json(s.V);
      r["verified"] = s.U * M * s.V == s.D;
      r["det_U"] = to_json(determinant(s.U));
      r["det_V"] = to_json(determinant(s.V));
      r["invariant_factors"] = integers_json(ab.invariant_factors);
      r["free_rank"] = ab.free_rank;
      return Result{r, kOk};
    }});
  }

  struct PresFlags {
    std::string file, relators;
    int gens = 2;
  };
  auto add_pres_flags = [](CLI::App* sub, PresFlags& f) {
    sub->add_option("--presentation", f.file, "Presentation file ('gens: n' then relators)");
    sub->add_option("--relators", f.relators, "Comma-separated relators");
    sub->add_option("--gens", f.gens, "Generator count for --relators")->capture_default_str();
  };

  PresFlags abf;
  {
    auto* sub = app.add_subcommand("abelianize", "Abelianization of a finite presentation");
    add_pres_flags(sub, abf);
    commands.push_back({sub, [&] {
      const auto P = load_presentation(abf.file, abf.relators, abf.gens);
      const auto ab = abelianization(P);
      Json r;
      r["command"] = "abelianize";
      r["presentation"] = presentation_json(P);
      r["relator_matrix"] = matrix_json(relator_matrix(P));
      r["invariant_factors"] = integers_json(ab.invariant_factors);
      r["free_rank"] = ab.free_rank;
      return Result{r, kOk};
    }});
  }

  PresFlags crf;
  std::string cr_h = "a";
  {
    auto* sub = app.add_subcommand("cyclic-retract", "Primitive-image test for a cyclic retract <h>");
    add_pres_flags(sub, crf);
    sub->add_option("--element", cr_h, "Element h")->capture_default_str();
    commands.push_back({sub, [&] {
      const auto P = load_presentation(crf.file, crf.relators, crf.gens);
      const Word h = parse_word(cr_h, P.alphabet());
      const auto v = cyclic_retract_test(P, h);
      Json r;
      r["command"] = "cyclic-retract";
      r["presentation"] = presentation_json(P);
      r["h"] = to_json(h);
      r["image"] = integers_json(v.image);
      r["gcd"] = to_json(v.gcd);
      r["primitive"] = v.primitive;
      if (v.covector) {
        r["covector"] = integers_json(*v.covector);
        r["retraction"] = words_json(v.retraction(h));
        r["covector_check"] = to_json(apply_covector(*v.covector, h));
      }
      return Result{r, kOk};
    }});
  }

  PresFlags vrf;
  std::string vr_v, vr_a, vr_images, vr_solution, vr_U, vr_alpha = "0";
  int vr_rank = 2;
  {
    auto* sub = app.add_subcommand("verify-retraction",
                                   "Check a retraction onto <a_i>, or build one from a conjugated solution");
    add_pres_flags(sub, vrf);
    sub->add_option("--v-words", vr_v, "Words v_i in the presentation generators")->required();
    sub->add_option("--a-values", vr_a, "Subgroup generators a_i in the target")->required();
    sub->add_option("--images", vr_images, "Generator images (direct check)");
    sub->add_option("--solution", vr_solution, "Solution h_i with v_i(h) = a_i^(U^alpha)");
    sub->add_option("--U", vr_U, "Conjugating element U");
    sub->add_option("--alpha", vr_alpha, "Exponent alpha")->capture_default_str();
    sub->add_option("--rank", vr_rank, "Target free group rank")->capture_default_str();
    commands.push_back({sub, [&] {
      const auto P = load_presentation(vrf.file, vrf.relators, vrf.gens);
      const Alphabet target(vr_rank);
      const auto v = parse_words(vr_v, P.alphabet());
      const auto a = parse_words(vr_a, target);
      Json r;
      r["command"] = "verify-retraction";
      r["presentation"] = presentation_json(P);
      r["v_words"] = words_json(v);
      r["a_values"] = words_json(a);
      RetractionVerdict verdict;
      if (!vr_solution.empty()) {
        if (!vr_images.empty()) throw PreconditionError("give --images or --solution, not both");
        const Word U = vr_U.empty() ? Word(target) : parse_word(vr_U, target);
        const auto out = retraction_from_solution(P, v, a, parse_words(vr_solution, target), U,
                                                  Integer(vr_alpha));
        r["mode"] = "from-solution";
        r["U"] = to_json(U);
        r["alpha"] = vr_alpha;
        r["images"] = words_json(out.images);
        verdict = out.verdict;
      } else {
        const auto images = parse_words(vr_images, target);
        r["mode"] = "direct";
        r["images"] = words_json(images);
        verdict = verify_retraction(P, v, a, images);
      }
      r["ok"] = verdict.ok;
      if (verdict.failed_relator) r["failed_relator"] = *verdict.failed_relator;
      if (verdict.failed_generator) r["failed_generator"] = *verdict.failed_generator;
      if (!verdict.reason.empty()) r["reason"] = verdict.reason;
      return Result{r, verdict.ok ? kOk : kFinding};
    }});
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }

  for (const auto& cmd : commands) {
    if (!cmd.app->parsed()) continue;
    try {
      const auto t0 = std::chrono::steady_clock::now();
      Result res = cmd.run();
      if (cfg.timing && !res.report.contains("runtime_ms")) {
        res.report["runtime_ms"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      }
      std::ostringstream body;
      if (cfg.format == "csv") {
        cli::write_csv(body, res.report);
      } else {
        body << res.report.dump(2) << '\n';
      }
      if (cfg.out.empty()) {
        std::cout << body.str();
      } else {
        std::ofstream out(cfg.out, std::ios::binary);
        if (!out) throw Error("cannot write " + cfg.out);
        out << body.str();
      }
      return res.code;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kError;
    }
  }
  return kError;
}
