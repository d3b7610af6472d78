#include <doctest.h>

#include <string>

#include "wmvt/io.hpp"

using namespace wmvt;
using nlohmann::json;

TEST_SUITE("io") {

TEST_CASE("modes") {
  for (const char* name : {"theorem1", "theorem2", "cauchy", "taylor", "ratz-russel"})
    CHECK(std::string(to_string(parse_mode(name))) == name);
  CHECK_THROWS_AS(parse_mode("lagrange"), ValidationError);
}

TEST_CASE("theorem1 problem") {
  const json doc = json::parse(R"j({
    "m": 1, "k": 1, "funcs": ["1", "x"], "anchors": [[1], [0]],
    "f": "exp(x)", "g": "x^2", "p": [0], "q": [1],
    "nodes": [0, 1], "interval": [0, 1]})j");
  const auto pf = parse_problem(doc, MvtMode::Theorem1);
  CHECK(pf.anchors(0, 0) == 1.0);
  CHECK(pf.q(0) == 1.0);
  const auto sys = to_system(pf);
  CHECK(sys.m == 1);
  CHECK(sys.funcs.size() == 2);

  json missing = doc;
  missing.erase("anchors");
  CHECK_THROWS_AS(parse_problem(missing, MvtMode::Theorem1), ValidationError);

  json extra = doc;
  extra["colour"] = "red";
  CHECK_THROWS_WITH_AS(parse_problem(extra, MvtMode::Theorem1), doctest::Contains("colour"), ValidationError);

  json short_nodes = doc;
  short_nodes["nodes"] = {0};
  CHECK_THROWS_AS(parse_problem(short_nodes, MvtMode::Theorem1), ValidationError);

  json bad_anchor = doc;
  bad_anchor["anchors"] = json::parse("[[1, 2], [0]]");
  CHECK_THROWS_AS(parse_problem(bad_anchor, MvtMode::Theorem1), ValidationError);

  json text_node = doc;
  text_node["nodes"] = json::parse(R"j([0, "1"])j");
  CHECK_THROWS_AS(parse_problem(text_node, MvtMode::Theorem1), ValidationError);

  json bad_interval = doc;
  bad_interval["interval"] = {1, 0};
  CHECK_THROWS_AS(parse_problem(bad_interval, MvtMode::Theorem1), ValidationError);
}

TEST_CASE("other modes") {
  const auto t2 = parse_problem(json::parse(R"j({
      "funcs": ["1", "x", "x^2", "x^3"], "exterior": [-1, 2], "f": "exp(x)", "g": "x^4",
      "nodes": [0.1, 0.5, 0.9], "interval": [0, 1]})j"),
                                MvtMode::Theorem2);
  CHECK(*t2.m == 2);
  CHECK(*t2.k == 2);
  CHECK_THROWS_AS(parse_problem(json::parse(R"j({"funcs": ["1"], "exterior": [2], "f": "x", "g": "x",
      "nodes": [0, 1], "interval": [0, 1]})j"), MvtMode::Theorem2), ValidationError);

  const auto c = parse_problem(json::parse(R"j({"f": "x^2", "g": "x", "nodes": [1, 0]})j"), MvtMode::Cauchy);
  CHECK(c.interval->a == 0.0);
  CHECK(c.interval->b == 1.0);

  const auto t = parse_problem(json::parse(R"j({"f": "exp(x)", "k": 2, "interval": [0, 1]})j"), MvtMode::Taylor);
  CHECK(*t.a == 0.0);
  CHECK(*t.x == 1.0);
  CHECK_THROWS_AS(parse_problem(json::parse(R"j({"f": "exp(x)", "k": 2, "a": 1, "x": 0})j"), MvtMode::Taylor),
                  ValidationError);
  CHECK_THROWS_AS(parse_problem(json::parse(R"j({"f": "exp(x)", "k": 0, "a": 0, "x": 1})j"), MvtMode::Taylor),
                  ValidationError);

  CHECK_THROWS_AS(parse_problem(json::parse(R"j({"f": "x", "g": "x", "nodes": [1]})j"), MvtMode::RatzRussel),
                  ValidationError);
  CHECK_THROWS_AS(parse_problem(json::parse("[1, 2]"), MvtMode::Cauchy), ValidationError);
}

TEST_CASE("rendering") {
  DetResult r;
  r.value = 0.1;
  r.condition_estimate = std::numeric_limits<double>::infinity();
  r.matrix_dim = 3;
  const json j = to_json(r);
  CHECK(j["condition_estimate"].is_null());
  CHECK(render(j).find("\"value\": 0.1\n") != std::string::npos);
  CHECK(render(j).back() == '\n');

  SuiteReport rep;
  rep.suite = "cauchy";
  rep.wall_time_ms = 12.5;
  CHECK_FALSE(to_json(rep).contains("wall_time_ms"));
  CHECK(to_json(rep, true)["wall_time_ms"] == 12.5);
  CHECK(to_json(rep)["pass"] == true);
}

}
