#include <doctest.h>

#include "injrad/error.hpp"
#include "injrad/report.hpp"

using namespace injrad;
using namespace injrad::report;

TEST_SUITE("report") {
  TEST_CASE("format names") {
    CHECK(parse_format("json") == Format::json);
    CHECK(parse_format("csv") == Format::csv);
    CHECK_THROWS_AS(parse_format("xml"), Error);
  }

  TEST_CASE("key order is insertion order") {
    Json doc;
    doc["zeta"] = 1;
    doc["alpha"] = 2;
    CHECK(render(doc, Format::json) == "{\n  \"zeta\": 1,\n  \"alpha\": 2\n}\n");
  }

  TEST_CASE("csv projection of key/value documents") {
    Json doc;
    doc["name"] = "a,b \"c\"";
    doc["inner"] = {{"x", 1.5}, {"ok", true}};
    doc["list"] = Json::array({1, 2});
    doc["missing"] = nullptr;
    CHECK(render(doc, Format::csv) ==
          "key,value\nname,\"a,b \"\"c\"\"\"\ninner.x,1.5\ninner.ok,true\nmissing,\n");
  }

  TEST_CASE("csv projection of row documents") {
    Json doc;
    doc["all"] = true;
    doc["rows"] = Json::array({Json{{"name", "p"}, {"v", 1}}, Json{{"name", "q"}, {"v", 2}}});
    CHECK(render(doc, Format::csv) == "name,v\np,1\nq,2\n");
  }

  TEST_CASE("bounds report is deterministic and complete") {
    const auto a = render(bounds_report(-2, 6.0), Format::json);
    const auto b = render(bounds_report(-2, 6.0), Format::json);
    CHECK(a == b);
    const Json doc = bounds_report(-2, 6.0);
    CHECK(doc["all_verdicts"].get<bool>());
    CHECK(doc["max_cell_sides"].get<int>() == 18);
    CHECK(doc["rows"].size() == 8 + 2 + 1);
    CHECK(render(doc, Format::csv).rfind("name,closed_form,recomputed,tolerance,verdict\n", 0) == 0);
  }

  TEST_CASE("non-finite numbers serialize as null") {
    hyp::PairCheck c;
    c.product = std::numeric_limits<double>::infinity();
    CHECK(pair_check_report(c)["product"].is_null());
  }

  TEST_CASE("flat search report without a pairing") {
    const Json doc = flat_search_report(8, true, 3, std::nullopt);
    CHECK_FALSE(doc["found"].get<bool>());
    CHECK(doc["pairing"].is_null());
    CHECK(doc["reason"].get<std::string>().find("not divisible") != std::string::npos);
  }
}
