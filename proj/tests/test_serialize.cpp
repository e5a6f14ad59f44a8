#include <string>

#include "doctest.h"
#include "gibbs/serialize.hpp"

using namespace gibbs;

TEST_CASE("extended reals and non-finite doubles") {
  CHECK(to_json(ExtReal::pos_inf()) == "+inf");
  CHECK(to_json(ExtReal::neg_inf()) == "-inf");
  CHECK(to_json(ExtReal::finite(-1.5)).get<double>() == -1.5);
  CHECK(number(1.0 / 0.0) == "+inf");
  CHECK(format_number(0.1) == "0.10000000000000001");
}

TEST_CASE("documents carry the schema first") {
  const auto doc = document("conjugate", to_json(conjugate(SigmaSequence::linear(), 2.0, 1e-12)));
  const std::string s = dump(doc);
  CHECK(s.rfind("{\"schema\":\"gibbs-series/1\",\"command\":\"conjugate\"", 0) == 0);
  CHECK(s.find("\"regime\":\"Interior\"") != std::string::npos);
}

TEST_CASE("doubles round-trip through JSON") {
  const double v = -1.0 - 2.0 * 0.69314718055994530942;
  const auto parsed = Json::parse(dump(Json{{"v", v}}));
  CHECK(parsed["v"].get<double>() == v);
}

TEST_CASE("weights serialize by index or triple") {
  const auto fit = fit_gibbs(SigmaSequence::box(1.0), 1.0, 3.0, 1e-12);
  const auto j = to_json(fit);
  CHECK(j["status"] == "BoundarySingleton");
  CHECK(j["weights"][0]["triple"] == Json::array({1, 1, 1}));
  const auto lin = to_json(fit_gibbs(SigmaSequence::linear(), 1.0, 2.0, 1e-12));
  CHECK(lin["weights"][0]["index"] == 1);
}

TEST_CASE("CSV tables") {
  const auto csv = to_csv(box_table());
  CHECK(csv.rfind("u,v,kappa,region", 0) == 0);
  int lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == 10);
  const auto e1 = to_csv(example1_table());
  CHECK(e1.find("ClosedFiniteSlope") != std::string::npos);
}
