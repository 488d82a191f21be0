#include "support/testing.hpp"

#include "rcanav/error.hpp"
#include "rcanav/session.hpp"

#include <doctest.h>

#include <thread>

using namespace rcanav;
using nlohmann::json;
using rcanav::testing::table1;

namespace {

std::vector<std::string> extent(const json& concept_json) {
  return concept_json["extent"].get<std::vector<std::string>>();
}

std::string find_name(const json& list, std::vector<std::string> wanted) {
  std::sort(wanted.begin(), wanted.end());
  for (const auto& c : list) {
    if (extent(c) == wanted) return c["name"];
  }
  return {};
}

void collect_names(const json& j, std::vector<std::string>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (k == "name" && v.is_string() && v.get<std::string>().rfind("C_", 0) == 0) {
        out.push_back(v);
      }
      collect_names(v, out);
    }
  } else if (j.is_array()) {
    for (const auto& v : j) collect_names(v, out);
  }
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::invalid_request;
}

const std::vector<std::string> kQuery{"OS:Windows", "DM:Logical", "DM:Conceptual"};

}  // namespace

TEST_CASE("session creation") {
  CHECK_NOTHROW(Session(table1(), "DM_tools", rcanav::testing::exists_support()));
  CHECK_NOTHROW(Session(table1(), "DM_tools", {}));
  CHECK(code_of([] { Session(table1(), "DBMS", rcanav::testing::exists_support()); }) ==
        ErrorCode::invalid_strategy);
  CHECK(code_of([] { Session(table1(), "Vendors", {}); }) == ErrorCode::unknown_context);
  CHECK(code_of([] { Session(table1(), "DM_tools", parse_strategy("uses:e")); }) ==
        ErrorCode::unknown_relation);
}

TEST_CASE("queries") {
  Session s(table1(), "DM_tools", rcanav::testing::exists_support());
  auto r = s.query(kQuery);
  CHECK(extent(r["focus"]) == std::vector<std::string>{"ER/Studio", "Erwin DM", "Magic Draw"});
  CHECK(r["focus"]["intent"].size() == 7);
  CHECK(r["upper"].size() == 2);
  CHECK(r["lower"].size() == 2);
  CHECK(r["relational"].size() == 3);
  CHECK(r["context"] == "DM_tools");
  CHECK(r["step"] == 1);
  CHECK_FALSE(r.contains("warning"));

  auto top = s.query({});
  CHECK(top["focus"]["extent"].size() == 5);
  CHECK(top["upper"].empty());

  auto etl = s.query({"DM:ETL"});
  CHECK(extent(etl["focus"]) == std::vector<std::string>{"ER/Studio"});

  auto none = s.query({"DM:ETL", "OS:Linux"});
  CHECK(none["focus"]["extent"].empty());
  CHECK(none["warning"] == "empty_extent");

  CHECK(code_of([&] { s.query({"OS:Plan9"}); }) == ErrorCode::unknown_attribute);
}

TEST_CASE("relational query terms resolve through the registry") {
  Session s(table1(), "DM_tools", rcanav::testing::exists_support());
  auto r = s.query(kQuery);
  std::string name;
  for (const auto& rc : r["relational"]) {
    if (extent(rc["concept"]) == std::vector<std::string>{"PostgreSQL", "Teradata"}) name = rc["concept"]["name"];
  }
  REQUIRE_FALSE(name.empty());
  auto q = s.query({"∃ support.(" + name + ")"});
  CHECK(extent(q["focus"]) == std::vector<std::string>{"ER/Studio", "Erwin DM", "Magic Draw"});
  CHECK(code_of([&] { s.query({"∃ support.(C_DBMS_99)"}); }) == ErrorCode::unknown_attribute);
  CHECK(code_of([&] { s.query({"∃ uses.(" + name + ")"}); }) == ErrorCode::unknown_attribute);
}

TEST_CASE("steps") {
  Session s(table1(), "DM_tools", rcanav::testing::exists_support());
  auto r = s.query(kQuery);

  SUBCASE("relational move switches context") {
    std::string target;
    for (const auto& rc : r["relational"]) {
      if (extent(rc["concept"]) == std::vector<std::string>{"PostgreSQL", "Teradata"}) {
        target = rc["concept"]["name"];
      }
    }
    auto moved = s.step(Direction::relational, target);
    CHECK(moved["context"] == "DBMS");
    CHECK(s.active_context() == "DBMS");
    CHECK(extent(moved["focus"]) == std::vector<std::string>{"PostgreSQL", "Teradata"});
    CHECK(moved["focus"]["name"] == target);
  }

  SUBCASE("down to Magic Draw and back up") {
    auto magic = find_name(r["lower"], {"Magic Draw"});
    REQUIRE_FALSE(magic.empty());
    auto down = s.step(Direction::down, magic);
    CHECK(find_name(down["upper"], {"Erwin DM", "ER/Studio", "Magic Draw"}) == r["focus"]["name"]);
    auto up = s.step(Direction::up, r["focus"]["name"]);
    CHECK(up["focus"] == r["focus"]);
  }

  SUBCASE("up then down along the same edge") {
    auto name = find_name(r["upper"], {"Astah", "Erwin DM", "ER/Studio", "Magic Draw"});
    s.step(Direction::up, name);
    auto back = s.step(Direction::down, r["focus"]["name"]);
    CHECK(extent(back["focus"]) == extent(r["focus"]));
  }

  SUBCASE("stale targets") {
    CHECK(code_of([&] { s.step(Direction::up, "C_DM_tools_99"); }) == ErrorCode::stale_target);
    auto lower = r["lower"][0]["name"].get<std::string>();
    CHECK(code_of([&] { s.step(Direction::up, lower); }) == ErrorCode::stale_target);
    CHECK(code_of([&] { s.step(Direction::relational, lower); }) == ErrorCode::stale_target);
    CHECK(s.log().size() == 1);
  }
}

TEST_CASE("a step before any query is stale") {
  Session s(table1(), "DM_tools", {});
  CHECK(code_of([&] { s.step(Direction::up, "C_DM_tools_1"); }) == ErrorCode::stale_target);
  CHECK(code_of([] { parse_direction("sideways"); }) == ErrorCode::invalid_request);
}

TEST_CASE("every name in a response resolves") {
  Session s(table1(), "DM_tools", rcanav::testing::both_support());
  std::vector<json> responses{s.query(kQuery)};
  responses.push_back(s.step(Direction::down, responses.back()["lower"][0]["name"]));
  responses.push_back(s.step(Direction::relational, responses.back()["relational"][0]["concept"]["name"]));
  for (const auto& r : responses) {
    std::vector<std::string> names;
    collect_names(r, names);
    CHECK_FALSE(names.empty());
    for (const auto& n : names) {
      const auto* e = s.registry().resolve(n);
      REQUIRE(e != nullptr);
    }
  }
}

TEST_CASE("log and replay") {
  Session s(table1(), "DM_tools", rcanav::testing::exists_support());
  std::vector<json> responses{s.query(kQuery)};
  responses.push_back(s.step(Direction::down, find_name(responses.back()["lower"], {"Magic Draw"})));
  responses.push_back(s.step(Direction::relational, responses.back()["relational"][0]["concept"]["name"]));

  auto log = s.log_json();
  REQUIRE(log["entries"].size() == 3);
  CHECK(log["entries"][0]["action"]["kind"] == "query");
  CHECK(log["entries"][2]["context"] == "DBMS");

  auto again = replay(table1(), "DM_tools", rcanav::testing::exists_support(), s.log());
  REQUIRE(again.size() == responses.size());
  for (std::size_t i = 0; i < again.size(); ++i) CHECK(again[i].dump() == responses[i].dump());
}

TEST_CASE("sessions are isolated") {
  ExploreService service;
  auto rcf = service.add_rcf(table1());
  CHECK(rcf == "rcf-1");
  auto a = service.create_session(rcf, "DM_tools", rcanav::testing::exists_support());
  auto b = service.create_session(rcf, "DM_tools", {});
  CHECK(a != b);
  service.query(a, kQuery);
  auto plain = service.query(b, kQuery);
  for (const auto& item : plain["focus"]["intent"]) CHECK(item["kind"] == "intrinsic");
  CHECK(service.rcf(rcf)->context("DM_tools").relational_attributes().empty());
  CHECK(service.log(a)["entries"].size() == 1);

  auto contexts = service.describe_rcf(rcf);
  CHECK(contexts["contexts"].size() == 2);
  CHECK(contexts["relations"][0]["name"] == "support");

  CHECK(code_of([&] { service.rcf("rcf-9"); }) == ErrorCode::unknown_rcf);
  CHECK(code_of([&] { service.query("s-9", {}); }) == ErrorCode::unknown_session);
  CHECK(code_of([&] { service.create_session(rcf, "DBMS", rcanav::testing::exists_support()); }) ==
        ErrorCode::invalid_strategy);
}

TEST_CASE("concurrent sessions") {
  ExploreService service;
  auto rcf = service.add_rcf(table1());
  std::vector<std::string> ids;
  for (int i = 0; i < 4; ++i) {
    ids.push_back(service.create_session(rcf, "DM_tools", rcanav::testing::both_support()));
  }
  std::vector<std::string> dumps(ids.size() * 2);
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < ids.size() * 2; ++i) {
    threads.emplace_back([&, i] {
      const auto& id = ids[i % ids.size()];
      for (int k = 0; k < 5; ++k) dumps[i] = service.query(id, kQuery)["focus"].dump();
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& d : dumps) CHECK(d == dumps.front());
  for (const auto& id : ids) CHECK(service.log(id)["entries"].size() == 10);
}

TEST_CASE("error payloads") {
  auto e = error_json(Error(ErrorCode::stale_target, "gone"));
  CHECK(e["error"]["code"] == "stale_target");
  CHECK(e["error"]["message"] == "gone");
  auto p = error_json(ParseError(ErrorCode::syntax, "bad", 3, 4));
  CHECK(p["error"]["line"] == 3);
  CHECK(p["error"]["column"] == 4);
  CHECK(error_json(std::runtime_error("boom"))["error"]["code"] == "internal");
}
