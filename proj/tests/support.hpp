#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "groundwork/corpus.hpp"
#include "groundwork/dsl.hpp"
#include "groundwork/grounding.hpp"
#include "groundwork/world.hpp"

namespace gw_test {

using namespace groundwork;

inline World elaborate_text(std::string_view text) {
  auto parsed = dsl::parse(text);
  if (!parsed.ok()) {
    throw std::runtime_error("parse failed at line " + std::to_string(parsed.errors[0].line) +
                             ": " + parsed.errors[0].message);
  }
  auto elaborated = dsl::elaborate(parsed.document);
  if (!elaborated.ok()) {
    throw std::runtime_error("elaboration failed at line " +
                             std::to_string(elaborated.errors[0].line) + ": " +
                             elaborated.errors[0].message);
  }
  return *elaborated.world;
}

inline World corpus_world(std::string_view id) {
  return elaborate_text(corpus::load_case(id).document);
}

/// Replaces the first line equal to `from` with `to` (which may contain
/// newlines, or be empty to delete). Throws if no line matches.
inline std::string edit_line(const std::string& text, const std::string& from,
                             const std::string& to) {
  std::string out;
  std::size_t start = 0;
  bool done = false;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string::npos) nl = text.size();
    const auto line = text.substr(start, nl - start);
    if (!done && line == from) {
      if (!to.empty()) out += to + "\n";
      done = true;
    } else {
      out += line + "\n";
    }
    start = nl + 1;
  }
  if (!done) throw std::runtime_error("line not found: " + from);
  return out;
}

// ---------------------------------------------------------------------------
// Random worlds.

/// Domain classes used by the random generator.
inline Taxonomy random_taxonomy() {
  return Taxonomy::builtin()
      .with_class("colour", "quality")
      .with_class("red", "quality")
      .with_class("scarlet", "quality")
      .with_class("mass", "quality")
      .with_class("bond", "relational quality")
      .with_class("fragility", "disposition")
      .with_class("high fragility", "disposition")
      .with_class("guard role", "role")
      .with_class("pump function", "function")
      .with_determination("red", "colour")
      .with_determination("scarlet", "red")
      .with_determination("high fragility", "fragility");
}

struct RandomWorldOptions {
  int max_entities = 10;
  int max_times = 4;
  double inherence_p = 0.55;
  double member_p = 0.4;
  double grounding_p = 0.3;
};

inline World random_world(std::mt19937& rng, const RandomWorldOptions& opt = {}) {
  std::uniform_int_distribution<int> times_d(1, opt.max_times);
  std::uniform_int_distribution<int> ents_d(3, opt.max_entities);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  static const std::vector<std::string> bearer_classes{"object", "object", "object aggregate",
                                                       "object aggregate", "site"};
  static const std::vector<std::string> sdc_classes{
      "quality", "colour",     "red",        "scarlet",        "mass",
      "bond",    "fragility",  "high fragility", "guard role", "pump function",
      "role",    "disposition", "relational quality"};

  World w(random_taxonomy());
  const int nt = times_d(rng);
  std::vector<std::string> labels;
  for (int i = 0; i < nt; ++i) labels.push_back("t" + std::to_string(i + 1));
  w = std::move(w).with_timeline(labels);

  const int n = ents_d(rng);
  std::vector<std::string> bearers, sdcs, aggregates, processes;
  for (int i = 0; i < n; ++i) {
    const std::string id = "e" + std::to_string(i);
    std::string c;
    const double r = coin(rng);
    if (i < 2 || r < 0.3) {
      c = bearer_classes[rng() % bearer_classes.size()];
      bearers.push_back(id);
      if (c == "object aggregate") aggregates.push_back(id);
    } else if (r < 0.93) {
      c = sdc_classes[rng() % sdc_classes.size()];
      sdcs.push_back(id);
    } else {
      c = "process";
      processes.push_back(id);
    }
    w = std::move(w).with_instance(id, c);
  }

  for (int t = 0; t < nt; ++t) {
    for (const auto& s : sdcs) {
      if (coin(rng) < opt.inherence_p) {
        const auto& b = bearers[rng() % bearers.size()];
        w = std::move(w).with_relation({RelationKind::inheres_in, s, b, TimeIndex(t), {}});
      }
    }
    for (const auto& a : aggregates) {
      for (const auto& b : bearers) {
        if (b != a && coin(rng) < opt.member_p) {
          w = std::move(w).with_relation({RelationKind::member_part_of, b, a, TimeIndex(t), {}});
        }
      }
    }
    for (const auto& p : processes) {
      for (const auto& b : bearers) {
        if (coin(rng) < 0.3) {
          w = std::move(w).with_relation(
              {RelationKind::participates_in, b, p, TimeIndex(t), {}});
        }
      }
    }
  }

  std::vector<std::string> realizables;
  for (const auto& s : sdcs) {
    if (w.instance_of(s, cls::realizable_entity)) realizables.push_back(s);
  }
  for (const auto& x : realizables) {
    for (const auto& y : sdcs) {
      if (x != y && coin(rng) < opt.grounding_p) {
        const auto kind = static_cast<GroundingKind>(rng() % 3);
        w = std::move(w).with_grounding({y, x, kind, {}});
      }
    }
    for (const auto& p : processes) {
      if (coin(rng) < 0.4) w = std::move(w).with_relation({RelationKind::realizes, p, x, {}, {}});
    }
  }
  return w;
}

// ---------------------------------------------------------------------------
// Brute-force oracles. These read only the raw assertion list, the entity
// classes and the taxonomy parent/determination tables, and never call the
// World query helpers or the grounding engine.

/// Walks parent links by hand.
inline bool chain_reaches(const Taxonomy& tax, const std::string& cls, std::string_view target) {
  std::optional<std::string> cur = cls;
  while (cur) {
    if (*cur == target) return true;
    cur = tax.nodes().at(*cur).parent;
  }
  return false;
}

/// Classes that are determinates of `cls`, by closing the link table.
inline std::set<std::string> determinate_closure(const Taxonomy& tax, const std::string& cls) {
  std::set<std::string> out;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& link : tax.determinations()) {
      const bool below = link.determinable_class == cls || out.count(link.determinable_class);
      if (below && !out.count(link.determinate_class)) {
        out.insert(link.determinate_class);
        grew = true;
      }
    }
  }
  return out;
}

struct RawFacts {
  std::set<std::tuple<TimeIndex, std::string, std::string>> inheres;  // (t, sdc, bearer)
  std::set<std::tuple<TimeIndex, std::string, std::string>> member;   // (t, part, whole)
};

inline RawFacts raw_facts(const World& w) {
  RawFacts f;
  for (const auto& a : w.assertions()) {
    if (!a.time) continue;
    if (a.kind == RelationKind::inheres_in) f.inheres.insert({*a.time, a.subject, a.object});
    if (a.kind == RelationKind::member_part_of) f.member.insert({*a.time, a.subject, a.object});
  }
  return f;
}

/// Every (realizable x, SDC y, time t) triple is examined: at each t where x
/// inheres in some b, some stand-in for y must inhere in b, or be a relational
/// quality inhering in an aggregate with b as member at t.
inline std::vector<GroundingCandidate> brute_force_candidates(const World& w,
                                                              const std::string& x) {
  const auto& tax = w.taxonomy();
  const auto facts = raw_facts(w);
  auto class_of = [&](const std::string& id) { return w.entities().at(id).class_name; };
  auto is = [&](const std::string& id, std::string_view c) {
    return chain_reaches(tax, class_of(id), c);
  };

  std::vector<GroundingCandidate> out;
  for (const auto& [y, ey] : w.entities()) {
    if (y == x || !is(y, cls::specifically_dependent_continuant)) continue;
    const auto dets = determinate_closure(tax, ey.class_name);
    std::vector<std::string> stand_ins{y};
    for (const auto& [z, ez] : w.entities()) {
      if (z == x || z == y) continue;
      for (const auto& d : dets) {
        if (chain_reaches(tax, ez.class_name, d)) {
          stand_ins.push_back(z);
          break;
        }
      }
    }

    bool any_time = false;
    bool all_ok = true;
    for (const auto& [t, sdc, b] : facts.inheres) {
      if (sdc != x) continue;
      any_time = true;
      bool ok = false;
      for (const auto& g : stand_ins) {
        for (const auto& [t2, sdc2, gb] : facts.inheres) {
          if (t2 != t || sdc2 != g) continue;
          if (gb == b) ok = true;
          if (is(g, cls::relational_quality) && is(gb, cls::object_aggregate) &&
              facts.member.count({t, b, gb})) {
            ok = true;
          }
        }
      }
      if (!ok) all_ok = false;
    }
    if (any_time && all_ok) {
      out.push_back({y, is(y, cls::relational_quality) ? GroundingClass::external
                                                       : GroundingClass::internal});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random documents for parser round-trips.

inline std::string random_name(std::mt19937& rng, bool allow_quoted) {
  static const std::string head = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_";
  static const std::string tail = "abcdefghijklmnopqrstuvwxyz0123456789_-";
  static const std::vector<std::string> odd{"object aggregate", "a \"quoted\" name",
                                            "back\\slash", "x y z", "1starts-with-digit",
                                            "hash # inside", "colon: inside", "(paren)"};
  if (allow_quoted && rng() % 6 == 0) return odd[rng() % odd.size()];
  std::string s(1, head[rng() % head.size()]);
  const auto len = rng() % 8;
  for (std::size_t i = 0; i < len; ++i) s += tail[rng() % tail.size()];
  // Keywords are fine as names only where the grammar expects a name, but
  // keep the generator away from them so generated lines stay unambiguous.
  static const std::set<std::string> reserved{"class", "is_a", "disjoint", "determines",
                                              "determinable", "timeline", "instance", "at",
                                              "grounds", "kind", "mereo_grounds", "realizes"};
  if (reserved.count(s)) s += "_";
  return s;
}

inline dsl::Document random_document(std::mt19937& rng) {
  dsl::Document d;
  auto count = [&](int max) { return static_cast<int>(rng() % (max + 1)); };
  for (int i = count(4); i > 0; --i) d.class_decls.push_back({random_name(rng, true), random_name(rng, true)});
  for (int i = count(2); i > 0; --i) d.disjoint_decls.push_back({random_name(rng, true), random_name(rng, true)});
  for (int i = count(2); i > 0; --i) d.determination_decls.push_back({random_name(rng, true), random_name(rng, true)});

  std::vector<std::string> labels;
  if (rng() % 5 != 0) {
    std::set<std::string> seen;
    for (int i = 1 + count(3); i > 0; --i) {
      auto l = random_name(rng, false);
      if (seen.insert(l).second) labels.push_back(l);
    }
    d.timeline_decl = dsl::TimelineDecl{labels, 0};
  }
  for (int i = count(5); i > 0; --i) d.instance_decls.push_back({random_name(rng, false), random_name(rng, true)});
  if (!labels.empty()) {
    for (int i = count(8); i > 0; --i) {
      dsl::AssertionStmt a;
      a.kind = static_cast<RelationKind>(rng() % 5);
      a.subject = random_name(rng, false);
      a.object = a.kind == RelationKind::exists_at ? "" : random_name(rng, false);
      a.time = labels[rng() % labels.size()];
      d.assertion_stmts.push_back(a);
    }
  }
  for (int i = count(2); i > 0; --i) d.realizes_stmts.push_back({random_name(rng, false), random_name(rng, false)});
  for (int i = count(3); i > 0; --i) {
    d.grounding_stmts.push_back({random_name(rng, false), random_name(rng, false),
                                 static_cast<GroundingKind>(rng() % 3)});
  }
  for (int i = count(2); i > 0; --i) {
    d.mereo_stmts.push_back({random_name(rng, false), random_name(rng, false), random_name(rng, false)});
  }
  return d;
}

/// Lines that each fail to parse on their own.
inline const std::vector<std::string>& malformed_lines() {
  static const std::vector<std::string> lines{
      "instance nacl1 object",
      "at t1 inheres_in(a, b)",
      "at t1: inheres_in(a b)",
      "at t1: floats_in(a, b)",
      "grounds(a, b) kind=sometimes",
      "grounds(a, b)",
      "class \"unterminated is_a quality",
      "mereo_grounds(a, b)",
      "realizes(p, x",
      "frobnicate everything",
      "@@@",
      "instance : object",
      "determines a determinable",
      "class a is_a b extra",
      "at t1: exists(a, b)",
  };
  return lines;
}

}  // namespace gw_test
