#include <doctest.h>

#include <set>

#include "gospace/catalog.hpp"

using namespace gospace;

TEST_CASE("catalog lists at least ten constructible entries") {
  const auto& c = catalog();
  std::size_t built = 0;
  std::set<std::string> ids;
  for (const auto& e : c) {
    CHECK(ids.insert(e.id).second);
    CHECK(!e.citation.empty());
    if (e.stub) {
      CHECK(e.verdicts.empty());
      CHECK_THROWS_AS(build_space(e.id), InvalidArgument);
      continue;
    }
    CAPTURE(e.id);
    auto s = e.build();
    CHECK(s.verify().ok());
    CHECK(!e.verdicts.empty());
    ++built;
  }
  CHECK(built >= 10);
}

TEST_CASE("catalog dimensions") {
  auto f = find_entry("flag_so5_u2()").build();
  CHECK(f.dim_k() == 4);
  CHECK(f.dim_m() == 6);
  REQUIRE(f.submodules().size() == 2);
  CHECK(f.submodules()[0].size() == 2);
  CHECK(f.submodules()[1].size() == 4);

  auto w = find_entry("wallach(2,2,2)").build();
  REQUIRE(w.submodules().size() == 3);
  for (const auto& b : w.submodules()) CHECK(b.size() == 4);
}

TEST_CASE("build_space parsing") {
  CHECK(build_space("lie_group(so,5)").dim_m() == 10);
  CHECK(build_space("lorentz3(e11)").dim_m() == 3);
  CHECK(build_space("sphere(3)").dim_m() == 3);
  CHECK(build_space("wallach_product").dim_m() == 2 + 3 + 2);
  CHECK_THROWS_AS(build_space("sphere(x)"), InvalidArgument);
  CHECK_THROWS_AS(build_space("wallach(2,2)"), InvalidArgument);
  CHECK_THROWS_AS(build_space("nowhere(1)"), InvalidArgument);
  CHECK_THROWS_AS(build_space("sphere(3"), InvalidArgument);
  CHECK_THROWS_AS(find_entry("nowhere"), InvalidArgument);
  CHECK(find_entry("flag_so5_u2").id == "flag_so5_u2()");
}

TEST_CASE("every expected verdict holds") {
  for (const auto& e : catalog()) {
    if (e.stub) continue;
    auto s = e.build();
    for (const auto& v : e.verdicts) {
      auto r = run_verdict(e, s, v);
      CAPTURE(e.id);
      CAPTURE(to_string(v.kind));
      CAPTURE(r.observed);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("verdicts do not depend on the job count") {
  const auto& e = find_entry("wallach(2,2,2)");
  auto s = e.build();
  for (const auto& v : e.verdicts) {
    VerdictRunOptions one, many;
    many.jobs = 8;
    CHECK(run_verdict(e, s, v, one).observed == run_verdict(e, s, v, many).observed);
  }
}

TEST_CASE("a wrong expectation is reported as failing") {
  const auto& e = find_entry("wallach(2,2,2)");
  auto s = e.build();
  ExpectedVerdict v = e.verdicts.front();
  v.kind = VerdictKind::not_go;
  CHECK(!run_verdict(e, s, v).pass);
  v.kind = VerdictKind::not_naturally_reductive;
  CHECK(!run_verdict(e, s, v).pass);
}
