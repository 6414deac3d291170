#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "nkh/model_io.hpp"
#include "nkh/report.hpp"

using namespace nkh;

namespace {

const char* kFlatTorus = R"(# flat 2-torus with the standard complex structure
dim 2
m_blocks m:0,1
acs 0 1 -1
acs 1 0 1
)";

const char* kSu2Biinvariant = R"(
dim 3
h_indices
m_blocks m:0,1,2
0 1 2 2
bracket 1 2 0 2
2 0 1 2
)";

}  // namespace

TEST_CASE("parse a structure-constant document") {
  std::istringstream in(kSu2Biinvariant);
  HomogeneousModel m = parse_model(in, "su2");
  CHECK(m.algebra.dim() == 3);
  CHECK(m.algebra.c(0, 1, 2) == Scalar(2));
  CHECK(m.algebra.c(1, 0, 2) == Scalar(-2));  // antisymmetric completion
  CHECK(m.metric.g == Matrix::identity(3, Scalar(1)));
  CHECK_FALSE(m.acs.has_value());
  CHECK(naturally_reductive_test(m.metric, m.split, m.algebra));
}

TEST_CASE("parse metric and acs blocks") {
  std::istringstream in(kFlatTorus);
  HomogeneousModel m = parse_model(in, "torus");
  REQUIRE(m.acs.has_value());
  auto rep = classify(m.metric, *m.acs, m.split, m.algebra, m.coframe);
  CHECK(rep.verdict == Verdict::Kahler);
}

TEST_CASE("parser rejects malformed documents") {
  auto reject = [](const char* text) {
    std::istringstream in(text);
    CHECK_THROWS_AS(parse_model(in), Error);
  };
  reject("m_blocks m:0,1\n");             // missing dim
  reject("dim 2\n0 5 1 1\n");             // index out of range
  reject("dim 2\n0 1 1\n");               // missing value
  reject("dim 2\nfoo 1 2\n");             // unknown directive
  reject("dim 3\n0 1 2 1\n1 2 1 1\n");    // Jacobi fails
  reject("dim 2\nmetric 0 9 1\n");        // metric index out of range
}

TEST_CASE("float conversion of a parsed model") {
  std::istringstream in(kFlatTorus);
  HomogeneousModel m = parse_model(in).to_float();
  auto rep = classify(m.metric, *m.acs, m.split, m.algebra, m.coframe);
  CHECK(rep.verdict == Verdict::Kahler);
}

TEST_CASE("report documents serialize deterministically and validate") {
  ReportDocument doc;
  doc.model = "flag";
  doc.command = "verify";
  doc.backend = "exact";
  doc.parameters["r"] = "1";
  doc.verdict = "StrictNK";
  doc.norms["nabla_omega"] = 1.0;
  std::string a = doc.to_json();
  std::string b = doc.to_json();
  CHECK(a == b);
  std::string err;
  CHECK(validate_report_json(a, &err));
  CHECK_FALSE(validate_report_json("{\"schema_version\": 1}", &err));
  CHECK_FALSE(validate_report_json("not json", &err));
  // wall time excluded unless set
  CHECK(a.find("wall_time") == std::string::npos);
  doc.wall_time_ms = 12.5;
  CHECK(doc.to_json().find("wall_time") != std::string::npos);
}

TEST_CASE("sweep tables emit csv with one row per grid point") {
  SweepTable t;
  t.model = "cp3";
  t.parameter_names = {"t", "eta"};
  SweepRow r1;
  r1.parameters["t"] = "1";
  r1.parameters["eta"] = "-1";
  r1.verdict = "StrictNK";
  SweepRow r2 = r1;
  r2.parameters["t"] = "3";
  r2.verdict = "Neither";
  r2.analytic_match = false;
  t.rows = {r1, r2};
  std::string csv = t.to_csv();
  CHECK(csv.find("t,eta,verdict,analytic_match,residual\n") == 0);
  CHECK(csv.find("1,-1,StrictNK,true") != std::string::npos);
  CHECK_FALSE(t.all_match());
  std::string err;
  CHECK(validate_report_json(t.to_json("exact", 0), &err));
}
