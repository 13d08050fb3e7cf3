#include <doctest.h>

#include <sstream>

#include "walshfejer/report.hpp"

using namespace walshfejer;

TEST_CASE("CSV round trip") {
  ExperimentReport r;
  r.id = "demo";
  r.mode = "exact";
  r.add_param("p", "1/2");
  r.columns = {"n", "value", "note"};
  r.rows = {{"1", "3/4", "plain"}, {"2", "-1/3", "has,comma and \"quotes\""}};
  r.add_summary("sup", "3/4");
  r.add_check("positive", true, "all values fine");
  r.add_check("bounded", false, "");

  std::stringstream s;
  write_csv(s, r);
  const std::string text = s.str();
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.rfind("# experiment=demo\n", 0) == 0);
  CHECK(text.find("# check.bounded=FAIL") != std::string::npos);
  ExperimentReport back = read_csv(s);
  CHECK(back == r);
  CHECK_FALSE(back.all_passed());

  std::stringstream again;
  write_csv(again, back);
  CHECK(again.str() == text);
}

TEST_CASE("format_real is deterministic") {
  CHECK(format_real(0.5L) == "0.5");
  CHECK(format_real(1.0L / 3) == format_real(1.0L / 3));
  CHECK(format_real(2.0L) == "2");
}

TEST_CASE("CSV without header is rejected") {
  std::stringstream s("# experiment=x\n");
  CHECK_THROWS(read_csv(s));
}
