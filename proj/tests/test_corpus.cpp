#include <doctest.h>

#include "groundwork/corpus.hpp"
#include "groundwork/report.hpp"
#include "groundwork/validator.hpp"
#include "support.hpp"

using namespace groundwork;

TEST_CASE("list cases") {
  const auto& ids = corpus::list_cases();
  CHECK(ids == std::vector<std::string>{"case1_nacl", "case1_nacl_mutant", "case2_university",
                                        "case3_commensal", "hostpathogen_fig3",
                                        "hostpathogen_fig4"});
  CHECK(&corpus::list_cases() == &ids);
}

TEST_CASE("load case") {
  const auto c1 = corpus::load_case("case1_nacl");
  CHECK(c1.id == "case1_nacl");
  CHECK(c1.document.find("instance nacl1 : object") != std::string::npos);
  CHECK(std::none_of(c1.expected_report.begin(), c1.expected_report.end(),
                     [](const corpus::ExpectedDiagnostic& d) { return d.severity == "error"; }));

  const auto mutant = corpus::load_case("case1_nacl_mutant");
  REQUIRE(mutant.expected_report.size() == 1);
  CHECK(mutant.expected_report[0].code == "R8");
  CHECK(mutant.expected_report[0].subjects == std::vector<std::string>{"solubility1", "lattice1"});
  CHECK(mutant.expected_report[0].times == std::vector<std::string>{"t2"});

  const auto fig4 = corpus::load_case("hostpathogen_fig4");
  const auto& host = fig4.expected_inferences.at("host_disposition1");
  CHECK(std::find(host.begin(), host.end(),
                  GroundingCandidate{"susceptibility1", GroundingClass::internal}) != host.end());

  CHECK_THROWS_AS((void)corpus::load_case("case4_missing"), corpus::UnknownCaseError);
}

TEST_CASE("required modeled content") {
  const auto case1 = gw_test::corpus_world("case1_nacl");
  CHECK(case1.instance_of("lattice1", cls::quality));
  CHECK(case1.instance_of("solubility1", cls::disposition));
  CHECK(case1.instance_of("dissolving1", cls::process));

  const auto case2 = gw_test::corpus_world("case2_university");
  CHECK(case2.instance_of("uni1", cls::object_aggregate));
  CHECK(case2.member_at("student1", "uni1", case2.time("t1").index));
  CHECK_FALSE(case2.member_at("student1", "uni1", case2.time("t2").index));
  CHECK(case2.mereological_groundings().size() == 1);

  const auto case3 = gw_test::corpus_world("case3_commensal");
  CHECK(case3.instance_of("pair1", cls::object_aggregate));
  CHECK(case3.bearer_at("protecting_rq1", 0) == "pair1");
  CHECK_FALSE(case3.member_at("baitfish1", "pair1", 1));

  const auto fig3 = gw_test::corpus_world("hostpathogen_fig3");
  CHECK(classify_grounding(fig3, "pathogenic_disposition1", "virulence_structure1") ==
        GroundingClass::internal);
  CHECK(classify_grounding(fig3, "host_role1", "hosting_rq1") == GroundingClass::external);

  const auto fig4 = gw_test::corpus_world("hostpathogen_fig4");
  CHECK(classify_grounding(fig4, "pathogen_role1", "infection_rq1") == GroundingClass::external);
}

TEST_CASE("expected manifests match validate exactly") {
  for (const auto& id : corpus::list_cases()) {
    CAPTURE(id);
    const auto c = corpus::load_case(id);
    const auto report = validate(gw_test::elaborate_text(c.document));
    CHECK(render_json_lines(report) == c.manifest);
    CHECK(corpus::parse_manifest(render_json_lines(report)) == c.expected_report);
  }
}

TEST_CASE("parse manifest") {
  const auto m = corpus::parse_manifest(
      "{\"code\":\"R3\",\"severity\":\"error\",\"subjects\":[\"d\",\"s\"],\"times\":[\"t1\"],"
      "\"line\":null}\n\n");
  REQUIRE(m.size() == 1);
  CHECK(m[0].code == "R3");
  CHECK_FALSE(m[0].line);
  CHECK(corpus::parse_manifest("").empty());
}
