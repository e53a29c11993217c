#include <filesystem>

#include "doctest.h"
#include "rtergm/error.hpp"
#include "rtergm/io.hpp"

using namespace rtergm;

TEST_CASE("csv records") {
  CHECK(split_csv_record("a,b,,c") == std::vector<std::string>{"a", "b", "", "c"});
  CHECK(split_csv_record("\"x,y\",\"he said \"\"hi\"\"\"") == std::vector<std::string>{"x,y", "he said \"hi\""});
  auto rows = read_csv("h1,h2\r\n1,\"two\nlines\"\n3,4\n");
  REQUIRE(rows.size() == 3);
  CHECK(rows[1][1] == "two\nlines");
  CHECK(rows[2] == std::vector<std::string>{"3", "4"});
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("q\"") == "\"q\"\"\"");
}

TEST_CASE("edge lists") {
  auto edges = parse_edge_list("# source target\n0\t1\n\n2\t0\n");
  CHECK(edges == std::vector<Edge>{{0, 1}, {2, 0}});
  auto g = from_edge_list(edges, 3);
  CHECK(parse_edge_list(format_edge_list(g)) == g.edges());
  try {
    parse_edge_list("0\t1\n0\tx\n");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("node tables") {
  NodeTable t;
  t.screen_name = {"confech", "ana, the second", "bo"};
  t.role = {Role::Organization, Role::Ordinary, Role::Leader};
  t.followers = {52000, 12, 7};
  auto back = parse_node_csv(format_node_csv(t));
  CHECK(back.screen_name == t.screen_name);
  CHECK(back.role == t.role);
  CHECK(back.followers == t.followers);
  CHECK_THROWS_AS(parse_node_csv("node_id,screen_name,role,followers\n0,a,Ordinary,1\n0,b,Ordinary,1\n"), Error);
  CHECK_THROWS_AS(parse_node_csv("node_id,screen_name,role,followers\n1,a,Ordinary,1\n"), Error);
  CHECK_THROWS_AS(parse_node_csv("id,name\n"), Error);
  CHECK_THROWS_AS(parse_node_csv("node_id,screen_name,role,followers\n0,a,Pundit,1\n"), Error);
}

TEST_CASE("files") {
  const auto path = (std::filesystem::temp_directory_path() / "rtergm_io_roundtrip.txt").string();
  write_file(path, "hello\n");
  CHECK(read_file(path) == "hello\n");
  try {
    read_file("/nonexistent/rtergm/file.tsv");
    FAIL("expected Io");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Io);
    CHECK(std::string(e.what()).find("/nonexistent/rtergm/file.tsv") != std::string::npos);
  }
}

TEST_CASE("roles parse loosely") {
  CHECK(parse_role("Organizations") == Role::Organization);
  CHECK(parse_role("LEADER") == Role::Leader);
  CHECK(parse_role("influential") == Role::Influential);
  CHECK(parse_role("ordinary") == Role::Ordinary);
  CHECK_FALSE(parse_role("bot").has_value());
}

TEST_CASE("error reporting carries the owning module") {
  Error e(ErrorCode::Separation, "mple", "term 'edges'");
  CHECK(e.module() == "estimator");
  CHECK(e.operation() == "mple");
  CHECK(e.cause() == "term 'edges'");
  CHECK(Error(ErrorCode::UnknownTimestampFormat, "x", "y").module() == "ingest");
  CHECK(Error(ErrorCode::SelfLoop, "x", "y").module() == "graph_core");
}
