#include <doctest.h>

#include <random>

#include "groundwork/report.hpp"
#include "groundwork/validator.hpp"
#include "support.hpp"

using namespace groundwork;
using gw_test::corpus_world;
using gw_test::edit_line;

namespace {

std::vector<std::string> codes(const ValidationReport& r) {
  std::vector<std::string> out;
  for (const auto& d : r.diagnostics) out.emplace_back(rule_info(d.code).id);
  return out;
}

bool has(const ValidationReport& r, RuleCode code) {
  return std::any_of(r.diagnostics.begin(), r.diagnostics.end(),
                     [&](const Diagnostic& d) { return d.code == code; });
}

ValidationReport validate_text(const std::string& text) {
  return validate(gw_test::elaborate_text(text));
}

/// A world with every grounding assertion removed.
World without_groundings(const World& w) {
  World out = World(w.taxonomy()).with_timeline([&] {
    std::vector<std::string> l;
    for (const auto& tp : w.timeline()) l.push_back(tp.label);
    return l;
  }());
  for (const auto& id : w.declaration_order()) out = std::move(out).with_instance(id, w.class_of(id));
  for (const auto& a : w.assertions()) out = std::move(out).with_relation(a);
  for (const auto& m : w.mereological_groundings()) {
    out = std::move(out).with_mereological_grounding(m);
  }
  return out;
}

const std::string kHostBase =
    "class pathogenic_disposition is_a disposition\n"
    "class enrollment is_a \"relational quality\"\n"
    "timeline t1\n"
    "instance agg : \"object aggregate\"\n"
    "instance p : object\n"
    "instance enrollment_rq1 : enrollment\n"
    "instance pathogenic_disposition1 : pathogenic_disposition\n"
    "at t1: inheres_in(enrollment_rq1, agg)\n"
    "at t1: inheres_in(pathogenic_disposition1, p)\n"
    "at t1: member_part_of(p, agg)\n";

}  // namespace

TEST_CASE("rule catalog") {
  const auto cat = rule_catalog();
  REQUIRE(cat.size() == 13);
  CHECK(cat[0].id == "R1");
  CHECK(cat[12].id == "W2");
  CHECK(rule_info(RuleCode::R2).name == "DISP-MATERIAL-BEARER");
  CHECK(find_rule("R10") == RuleCode::R10);
  CHECK(find_rule("GR-COINHERE") == RuleCode::R8);
  CHECK_FALSE(find_rule("R99"));
  CHECK(rule_info(RuleCode::R5).severity == Severity::info);
  CHECK(rule_info(RuleCode::W1).severity == Severity::warning);
}

TEST_CASE("empty world validates clean") {
  const auto r = validate(World());
  CHECK(r.diagnostics.empty());
  CHECK(r.errors == 0);
  CHECK(r.world_digest.size() == 64);
}

TEST_CASE("sha256") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("corpus reports") {
  for (const auto& id : corpus::list_cases()) {
    CAPTURE(id);
    const auto r = validate(corpus_world(id));
    if (id == "case1_nacl_mutant") {
      CHECK(codes(r) == std::vector<std::string>{"R8"});
      CHECK(r.errors == 1);
    } else {
      CHECK(r.errors == 0);
    }
  }
  const auto fig3 = validate(corpus_world("hostpathogen_fig3"));
  CHECK(fig3.diagnostics.empty());
  const auto case3 = validate(corpus_world("case3_commensal"));
  CHECK(codes(case3) == std::vector<std::string>{"R5", "R5"});
  CHECK(case3.infos == 2);
}

TEST_CASE("R1 conflicting ancestry") {
  const auto r = validate_text(
      "class odd is_a role\n"
      "disjoint odd \"realizable entity\"\n"
      "instance o1 : odd\n");
  REQUIRE(codes(r) == std::vector<std::string>{"R1"});
  CHECK(r.diagnostics[0].subjects == std::vector<EntityId>{"o1"});
  CHECK(r.diagnostics[0].source_line == 3);
}

TEST_CASE("R2 and R3 bearers") {
  const auto r = validate_text(
      "timeline t1\n"
      "instance cavity : site\n"
      "instance region : \"spatial region\"\n"
      "instance rock : object\n"
      "instance d1 : disposition\n"
      "instance d2 : disposition\n"
      "instance d3 : disposition\n"
      "instance r1 : role\n"
      "instance q : quality\n"
      "at t1: inheres_in(d1, cavity)\n"
      "at t1: inheres_in(d2, rock)\n"
      "at t1: inheres_in(r1, cavity)\n"
      "at t1: inheres_in(q, rock)\n");
  // d1 also has nothing to ground it, hence the W1.
  REQUIRE(codes(r) == std::vector<std::string>{"W1", "R3"});
  CHECK(r.diagnostics[1].subjects == std::vector<EntityId>{"d1", "cavity"});
  CHECK(r.diagnostics[1].source_line == 10);

  // An independent continuant that is neither material nor immaterial.
  const auto r2 = validate_text(
      "class odd_ic is_a \"independent continuant\"\n"
      "timeline t1\n"
      "instance thing : odd_ic\n"
      "instance d : disposition\n"
      "instance q : quality\n"
      "at t1: inheres_in(d, thing)\n"
      "at t1: inheres_in(q, thing)\n");
  CHECK(codes(r2) == std::vector<std::string>{"R2"});
}

TEST_CASE("R6 relational ground for a disposition") {
  const auto r = validate_text(kHostBase + "grounds(enrollment_rq1, pathogenic_disposition1) kind=internal\n");
  CHECK(has(r, RuleCode::R6));
  CHECK_FALSE(has(r, RuleCode::R8));
}

TEST_CASE("R7 non-relational ground for a role") {
  const auto base = corpus::load_case("case1_nacl").document;
  const auto r = validate_text(
      edit_line(base, "instance solubility1 : solubility", "instance solubility1 : role"));
  CHECK(has(r, RuleCode::R7));
  CHECK_FALSE(has(r, RuleCode::R1));
}

TEST_CASE("R4 and R5 cessation") {
  const auto base = corpus::load_case("case1_nacl").document;
  const auto r4 = validate_text(edit_line(base, "at t2: inheres_in(polarity1, water1)",
                                          "at t2: inheres_in(lattice1, nacl1)\n"
                                          "at t2: inheres_in(polarity1, water1)"));
  REQUIRE(codes(r4) == std::vector<std::string>{"R4"});
  CHECK(r4.diagnostics[0].subjects == std::vector<EntityId>{"solubility1", "nacl1"});
  REQUIRE(r4.diagnostics[0].times.size() == 2);
  CHECK(r4.diagnostics[0].times[0].label == "t1");
  CHECK(r4.diagnostics[0].times[1].label == "t2");

  const auto case2 = corpus::load_case("case2_university").document;
  const auto r5 = validate_text(edit_line(case2, "at t1: inheres_in(campus_residence1, student1)", ""));
  CHECK(codes(r5) == std::vector<std::string>{"R5"});
  CHECK(r5.errors == 0);
}

TEST_CASE("R8, R9, R10, R11, W1, W2") {
  const auto r8 = validate(corpus_world("case1_nacl_mutant"));
  REQUIRE(r8.diagnostics.size() == 1);
  CHECK(r8.diagnostics[0].subjects == std::vector<EntityId>{"solubility1", "lattice1"});
  CHECK(r8.diagnostics[0].times.at(0).label == "t2");

  const auto r9 = validate_text(
      "class colour is_a quality\nclass red is_a quality\nclass blue is_a quality\n"
      "determines red determinable colour\ndetermines blue determinable colour\n"
      "timeline t1 < t2\n"
      "instance ball : object\ninstance red1 : red\ninstance blue1 : blue\n"
      "at t1: inheres_in(red1, ball)\nat t1: inheres_in(blue1, ball)\n"
      "at t2: inheres_in(blue1, ball)\n");
  REQUIRE(codes(r9) == std::vector<std::string>{"R9"});
  CHECK(r9.diagnostics[0].subjects == std::vector<EntityId>{"ball", "blue1", "red1"});

  const std::string mereo_base =
      "timeline t1 < t2\n"
      "instance agg : \"object aggregate\"\ninstance m : object\ninstance r : role\n"
      "at t1: inheres_in(r, agg)\nat t1: member_part_of(m, agg)\n";
  const auto refuted = validate_text(mereo_base + "at t2: inheres_in(r, agg)\nmereo_grounds(r, agg, m)\n");
  REQUIRE(has(refuted, RuleCode::R10));
  CHECK(refuted.diagnostics[0].severity == Severity::error);
  const auto undetermined =
      validate_text(mereo_base + "at t2: member_part_of(m, agg)\nmereo_grounds(r, agg, m)\n");
  REQUIRE(has(undetermined, RuleCode::R10));
  CHECK(undetermined.warnings >= 1);
  const auto supported = validate_text(mereo_base + "mereo_grounds(r, agg, m)\n");
  CHECK_FALSE(has(supported, RuleCode::R10));

  const auto r11 = validate_text(
      "timeline t1\ninstance rock : object\ninstance d : disposition\ninstance q : quality\n"
      "instance p : process\n"
      "at t1: inheres_in(d, rock)\nat t1: inheres_in(q, rock)\nrealizes(p, d)\n");
  CHECK(codes(r11) == std::vector<std::string>{"R11"});

  const auto w1 = validate_text(
      "timeline t1\ninstance rock : object\ninstance d : disposition\n"
      "at t1: inheres_in(d, rock)\n");
  CHECK(codes(w1) == std::vector<std::string>{"W1"});
  CHECK(w1.warnings == 1);

  const auto w2 = validate_text(
      "class bond is_a \"relational quality\"\n"
      "timeline t1 < t2\n"
      "instance a : object\ninstance r : role\ninstance b : bond\n"
      "at t1: inheres_in(r, a)\nat t1: inheres_in(b, a)\nat t2: inheres_in(r, a)\n"
      "grounds(b, r) kind=external\n");
  CHECK(has(w2, RuleCode::W2));
  CHECK(has(w2, RuleCode::R8));
}

TEST_CASE("diagnostic ordering and rendering") {
  const auto r = validate(corpus_world("case3_commensal"));
  REQUIRE(r.diagnostics.size() == 2);
  CHECK(r.diagnostics[0].subjects[0] == "protected_role1");
  CHECK(r.diagnostics[1].subjects[0] == "protector_role1");
  CHECK(format_diagnostic(r.diagnostics[0]) ==
        "info R5 ROLE-LOSS-INFO [protected_role1, baitfish1] @ t1, t2 (line 20): role "
        "'protected_role1' ceases in 'baitfish1' between t1 and t2 without physical change to "
        "the bearer");
  CHECK(diagnostic_json(r.diagnostics[0]) ==
        R"({"code":"R5","severity":"info","subjects":["protected_role1","baitfish1"],"times":["t1","t2"],"line":20})");
  const auto text = render_text(r);
  CHECK(text.find("0 error(s), 0 warning(s), 2 info(s); world sha256:" + r.world_digest) !=
        std::string::npos);
}

TEST_CASE("explain") {
  const auto r = validate(corpus_world("case1_nacl_mutant"));
  const auto r2 = explain(r, "R2");
  CHECK(r2.find("clause (ii)") != std::string::npos);
  CHECK(r2.find("Diagnostics: 0") != std::string::npos);
  const auto r8 = explain(r, "R8");
  CHECK(r8.find("Diagnostics: 1") != std::string::npos);
  CHECK(r8.find("solubility1") != std::string::npos);
  CHECK(explain(r, "W1").find("ungrounded") != std::string::npos);
  CHECK_THROWS_AS((void)explain(r, "R99"), UnknownRuleError);
}

TEST_CASE("property: validation is deterministic") {
  std::mt19937 rng(66);
  for (int i = 0; i < 60; ++i) {
    const auto seed = rng();
    std::mt19937 a(seed), b(seed);
    const auto w1 = gw_test::random_world(a);
    const auto w2 = gw_test::random_world(b);
    REQUIRE(w1 == w2);
    const auto r1 = validate(w1);
    const auto r2 = validate(w2);
    CHECK(r1 == r2);
    CHECK(render_json_lines(r1) == render_json_lines(r2));
    CHECK(render_text(r1) == render_text(r2));
  }
}

TEST_CASE("property: report order is (first time, code, subjects)") {
  std::mt19937 rng(67);
  for (int i = 0; i < 80; ++i) {
    const auto r = validate(gw_test::random_world(rng));
    auto key = [](const Diagnostic& d) {
      // Atemporal diagnostics sort first.
      const long t = d.times.empty() ? -1 : static_cast<long>(d.times.front().index);
      return std::make_tuple(t, static_cast<int>(d.code), d.subjects);
    };
    for (std::size_t k = 1; k < r.diagnostics.size(); ++k) {
      CHECK_FALSE(key(r.diagnostics[k]) < key(r.diagnostics[k - 1]));
    }
    std::size_t e = 0, w = 0, n = 0;
    for (const auto& d : r.diagnostics) {
      CHECK_FALSE(d.subjects.empty());
      (d.severity == Severity::error ? e : d.severity == Severity::warning ? w : n)++;
    }
    CHECK(r.errors == e);
    CHECK(r.warnings == w);
    CHECK(r.infos == n);
  }
}

TEST_CASE("property: deleting groundings only removes R6-R8/W2 and only adds W1") {
  std::mt19937 rng(68);
  const std::set<RuleCode> grounding_rules{RuleCode::R6, RuleCode::R7, RuleCode::R8, RuleCode::W2};
  for (int i = 0; i < 100; ++i) {
    const auto w = gw_test::random_world(rng);
    const auto before = validate(w);
    const auto after = validate(without_groundings(w));
    auto keep = [&](const ValidationReport& r, bool drop_w1) {
      std::vector<Diagnostic> out;
      for (const auto& d : r.diagnostics) {
        if (grounding_rules.count(d.code)) continue;
        if (drop_w1 && d.code == RuleCode::W1) continue;
        out.push_back(d);
      }
      return out;
    };
    CHECK_FALSE(has(after, RuleCode::R6));
    CHECK_FALSE(has(after, RuleCode::R7));
    CHECK_FALSE(has(after, RuleCode::R8));
    CHECK_FALSE(has(after, RuleCode::W2));
    CHECK(keep(before, true) == keep(after, true));
    // W1 can only appear, never disappear.
    for (const auto& d : before.diagnostics) {
      if (d.code != RuleCode::W1) continue;
      CHECK(std::find(after.diagnostics.begin(), after.diagnostics.end(), d) !=
            after.diagnostics.end());
    }
  }
}

TEST_CASE("property: every realizable cessation gets R4, R5 or nothing") {
  std::mt19937 rng(69);
  for (int i = 0; i < 150; ++i) {
    const auto w = gw_test::random_world(rng);
    const auto r = validate(w);
    const auto facts = gw_test::raw_facts(w);
    auto is = [&](const EntityId& id, std::string_view c) {
      return gw_test::chain_reaches(w.taxonomy(), w.class_of(id), c);
    };
    auto state = [&](TimeIndex t, const EntityId& b) {
      std::set<std::pair<char, EntityId>> s;
      for (const auto& [tt, sdc, bearer] : facts.inheres) {
        if (tt == t && bearer == b && is(sdc, cls::quality)) s.insert({'q', sdc});
      }
      for (const auto& [tt, part, whole] : facts.member) {
        if (tt == t && whole == b) s.insert({'p', part});
      }
      return s;
    };
    std::size_t expected_count = 0;
    for (TimeIndex t = 0; t + 1 < w.timeline().size(); ++t) {
      for (const auto& [tt, x, b] : facts.inheres) {
        if (tt != t || !is(x, cls::realizable_entity)) continue;
        if (facts.inheres.count({t + 1, x, b})) continue;
        const bool changed = state(t, b) != state(t + 1, b);
        std::vector<RuleCode> got;
        for (const auto& d : r.diagnostics) {
          if ((d.code == RuleCode::R4 || d.code == RuleCode::R5) &&
              d.subjects == std::vector<EntityId>{x, b} && d.times.front().index == t) {
            got.push_back(d.code);
          }
        }
        CHECK(got.size() <= 1);
        if (changed) {
          CHECK(got.empty());
        } else if (is(x, cls::disposition)) {
          CHECK(got == std::vector<RuleCode>{RuleCode::R4});
        } else if (is(x, cls::role)) {
          CHECK(got == std::vector<RuleCode>{RuleCode::R5});
        } else {
          CHECK(got.empty());
        }
        expected_count += got.size();
      }
    }
    std::size_t total = 0;
    for (const auto& d : r.diagnostics) {
      if (d.code == RuleCode::R4 || d.code == RuleCode::R5) ++total;
    }
    CHECK(total == expected_count);
  }
}
