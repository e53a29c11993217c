#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rtergm/error.hpp"
#include "rtergm/ingest.hpp"
#include "rtergm/io.hpp"

using namespace rtergm;

namespace {

const std::string kData = RTERGM_DATA_DIR;

RetweetNetwork tutorial_network(std::size_t limit = 20) {
  IngestOptions o;
  o.limit = limit;
  o.roles = parse_role_csv(read_file(kData + "/roles.csv"));
  return build_network(load_tweets(kData + "/tweets.csv"), o);
}

std::vector<std::optional<std::string>> codes(std::initializer_list<const char*> xs) {
  std::vector<std::optional<std::string>> out;
  for (const char* x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("retweet markers") {
  CHECK(parse_retweet("RT @confech: todos a la marcha #YoMarchoEl28") == "confech");
  CHECK_FALSE(parse_retweet("gran marcha hoy #FuerzaEstudiantes").has_value());
  CHECK(parse_retweet("MT @User_123 fuerza!") == "User_123");
  CHECK(parse_retweet("vamos retweet @fech_oficial") == "fech_oficial");
  CHECK(parse_retweet("rt @a rt @b") == "a");
  CHECK_FALSE(parse_retweet("ART @confech").has_value());
  CHECK_FALSE(parse_retweet("RT @").has_value());
  CHECK_FALSE(parse_retweet("RT @sixteen_chars_xx hola").has_value());
  CHECK(parse_retweet("RT @sixteen_chars_xx RT @ok") == "ok");
  CHECK(parse_retweet("(RT @fifteen_chars_x)") == "fifteen_chars_x");
  // Re-parsing the text after the matched name finds nothing more.
  const std::string text = "RT @confech: todos a la marcha";
  const auto name = parse_retweet(text);
  REQUIRE(name);
  const auto rest = text.substr(text.find(*name) + name->size());
  CHECK_FALSE(parse_retweet(rest).has_value());
}

TEST_CASE("screen names") {
  CHECK(is_valid_screen_name("a"));
  CHECK(is_valid_screen_name("User_123"));
  CHECK(is_valid_screen_name("fifteen_chars_x"));
  CHECK_FALSE(is_valid_screen_name("sixteen_chars_xx"));
  CHECK_FALSE(is_valid_screen_name(""));
  CHECK_FALSE(is_valid_screen_name("bad-name"));
}

TEST_CASE("timestamps") {
  const std::int64_t t = 1314280980;  // 2011-08-25T14:03:00Z
  CHECK(parse_timestamp("2011-08-25T14:03:00Z") == t);
  CHECK(parse_timestamp("2011-08-25 14:03:00") == t);
  CHECK(parse_timestamp("2011-08-25T11:03:00-03:00") == t);
  CHECK(parse_timestamp("2011-08-25T14:03:00.999Z") == t);
  CHECK(parse_timestamp("Thu Aug 25 14:03:00 +0000 2011") == t);
  CHECK(parse_timestamp("1314280980") == t);
  CHECK(format_timestamp(t) == "2011-08-25T14:03:00Z");
  CHECK(parse_timestamp(format_timestamp(-86401)) == -86401);
  try {
    parse_timestamp("25/08/2011", 17);
    FAIL("expected UnknownTimestampFormat");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownTimestampFormat);
    CHECK(std::string(e.what()).find("line 17") != std::string::npos);
  }
}

TEST_CASE("tweet readers") {
  const std::string csv =
      "id,created_at,author,followers,text\n"
      "1,2011-08-25T10:00:00Z,@ana,5,\"RT @bo: hola, \"\"amigos\"\"\nsegunda linea\"\n"
      "2,2011-08-25T09:00:00Z,bo,7,nada\n";
  auto records = parse_tweets_csv(csv);
  REQUIRE(records.size() == 2);
  CHECK(records[0].author == "ana");
  CHECK(records[0].text == "RT @bo: hola, \"amigos\"\nsegunda linea");
  const std::string jsonl =
      "{\"id\": 1, \"created_at\": \"2011-08-25T10:00:00Z\", \"author\": \"ana\", \"followers\": 5, \"text\": \"RT @bo\"}\n"
      "\n"
      "{\"id\": \"2\", \"created_at\": 1314262800, \"author\": \"bo\", \"followers\": \"7\", \"text\": \"nada\"}\n";
  auto j = parse_tweets_jsonl(jsonl);
  REQUIRE(j.size() == 2);
  CHECK(j[0].id == "1");
  CHECK(j[1].created_at == 1314262800);
  CHECK(j[1].followers == 7);
  CHECK(j[1].line == 3);

  try {
    parse_tweets_csv("id,created_at,author,followers,text\n1,yesterday,ana,1,x\n");
    FAIL("expected UnknownTimestampFormat");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownTimestampFormat);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_tweets_csv("id,author\n1,a\n"), Error);
  CHECK_THROWS_AS(parse_tweets_jsonl("{\"id\": 1}\n"), Error);
}

TEST_CASE("tutorial fixture edge log") {
  auto net = tutorial_network();
  const std::vector<std::pair<std::string, std::string>> expected = {
      {"ana", "confech"},        {"bruno", "Confech"},     {"carla", "camila_vallejo"}, {"diego", "radio_bio"},
      {"ana", "confech"},        {"felipe", "gjackson"},   {"carla", "fech_oficial"},   {"bruno", "camila_vallejo"},
      {"radio_bio", "confech"},  {"diego", "CONFECH"},     {"elena", "gjackson"},       {"hugo", "ana"},
      {"ana", "hugo"},           {"gabi", "fech_oficial"}, {"carla", "camila_vallejo"}, {"fech_oficial", "confech"},
      {"bruno", "radio_bio"},    {"ivan", "confech"},      {"elena", "confech"},        {"diego", "gjackson"}};
  const std::vector<std::string> ids = {"102", "103", "104", "106", "107", "109", "113", "114", "115", "116",
                                        "117", "118", "119", "121", "122", "123", "124", "125", "126", "127"};
  REQUIRE(net.log.size() == 20);
  for (std::size_t k = 0; k < 20; ++k) {
    CHECK(net.log[k].tweet_id == ids[k]);
    CHECK(net.log[k].retweeter == expected[k].first);
    CHECK(net.log[k].author == expected[k].second);
  }
  CHECK(net.self_retweets == 1);
  CHECK(net.graph.edge_count() == 18);
  CHECK(net.graph.node_count() == 14);

  const std::vector<std::string> names = {"ana",      "confech",      "bruno", "carla", "camila_vallejo",
                                          "diego",    "radio_bio",    "felipe", "gjackson", "fech_oficial",
                                          "elena",    "hugo",         "gabi",  "ivan"};
  CHECK(net.nodes.screen_name == names);
  const std::vector<std::uint64_t> followers = {120, 52000, 85, 300, 250000, 40, 180000,
                                                77,  90000, 30000, 15, 33,   60,   12};
  CHECK(net.nodes.followers == followers);
  CHECK(net.nodes.role[1] == Role::Organization);
  CHECK(net.nodes.role[4] == Role::Leader);
  CHECK(net.nodes.role[6] == Role::Influential);
  CHECK(net.nodes.role[13] == Role::Ordinary);

  // Every binary edge is backed by at least one log row.
  for (const auto& [i, j] : net.graph.edges()) {
    bool found = false;
    for (const auto& e : net.log) found = found || (e.source == i && e.target == j);
    CHECK(found);
  }
  // Eight accounts are missing from the role file.
  std::size_t role_warnings = 0;
  for (const auto& w : net.warnings) role_warnings += w.find("role") != std::string::npos ? 1 : 0;
  CHECK(role_warnings == 8);
}

TEST_CASE("limits and exclusions") {
  CHECK(tutorial_network(0).graph.node_count() == 0);
  CHECK(tutorial_network(0).log.empty());
  CHECK(tutorial_network(1000).log.size() == 23);

  IngestOptions o;
  o.limit = 20;
  o.excluded_ids = parse_exclusion_list("# reviewed\n102\n\n103  # off topic\n");
  auto net = build_network(load_tweets(kData + "/tweets.csv"), o);
  REQUIRE(net.log.size() == 20);
  CHECK(net.log.front().tweet_id == "104");
  CHECK(net.log.back().tweet_id == "129");
}

TEST_CASE("tutorial fixture descriptives") {
  auto s = describe(tutorial_network());
  CHECK(s.edges == 20);
  CHECK(s.unique_dyads == 18);
  CHECK(s.users == 14);
  CHECK(s.role_count(Role::Organization) == 2);
  CHECK(s.role_count(Role::Leader) == 2);
  CHECK(s.role_count(Role::Influential) == 1);
  CHECK(s.role_count(Role::Ordinary) == 9);
  CHECK(s.max_in_degree == 7);
  CHECK(s.max_out_degree == 3);
  // (14 * 7 - 36) / (2 * 13 * 12)
  CHECK(s.centralization == doctest::Approx(62.0 / 312.0).epsilon(1e-12));
  CHECK(s.degree(Role::Organization).in_mean == 4.5);
  CHECK(s.degree(Role::Organization).in_sd == doctest::Approx(std::sqrt(12.5)));
  CHECK(s.degree(Role::Ordinary).out_mean == doctest::Approx(16.0 / 9.0));
  CHECK(s.degree(Role::Ordinary).out_sd == doctest::Approx(std::sqrt((34.0 - 256.0 / 9.0) / 8.0)));
  CHECK(std::isnan(s.degree(Role::Influential).in_sd));

  const auto table = describe_table(s);
  CHECK(table.find("Organizations' indegree") != std::string::npos);
  CHECK(table.find("4.50 (3.54)") != std::string::npos);
  CHECK(table.find("0.50 (0.71)") != std::string::npos);
  CHECK(table.find("2.50 (0.71)") != std::string::npos);
  CHECK(table.find("0.22 (0.44)") != std::string::npos);
  CHECK(table.find("1.78 (0.83)") != std::string::npos);
  CHECK(table.find("2.00 (N/A)") != std::string::npos);
  CHECK(table.find("0.1987") != std::string::npos);
  const auto json = describe_json(s);
  CHECK(json.find("\"unique_dyads\": 18") != std::string::npos);
  CHECK(json.find("sample (n-1)") != std::string::npos);
}

TEST_CASE("star fixtures") {
  std::vector<TweetRecord> records;
  for (int k = 0; k < 10; ++k) {
    records.push_back({std::to_string(k), 1000 + k, "user" + std::to_string(k), 10, "RT @org: marcha"});
  }
  IngestOptions o;
  o.roles = RoleMap{{"org", Role::Organization}};
  auto one_way = build_network(records, o);
  auto s = describe(one_way);
  CHECK(s.degree(Role::Organization).in_mean == 10.0);
  CHECK(s.degree(Role::Ordinary).out_mean == 1.0);
  // Every spoke sends one link: (11 * 10 - 20) / (2 * 10 * 9).
  CHECK(s.centralization == 0.5);

  for (int k = 0; k < 10; ++k) {
    records.push_back({std::to_string(100 + k), 2000 + k, "org", 5000, "RT @user" + std::to_string(k) + " gracias"});
  }
  auto both_ways = describe(build_network(records, o));
  CHECK(both_ways.centralization == 1.0);
  CHECK(both_ways.degree(Role::Organization).in_mean == 10.0);
  CHECK(both_ways.degree(Role::Ordinary).out_mean == 1.0);
}

TEST_CASE("single edge descriptives") {
  DirectedGraph g(2);
  g.add_edge(0, 1);
  auto s = describe(g, NodeTable::uniform(2), 1);
  CHECK(s.max_in_degree == 1);
  CHECK(s.max_out_degree == 1);
  CHECK(std::isnan(s.centralization));
  CHECK(describe_table(s).find("N/A") != std::string::npos);
}

TEST_CASE("describe agrees with the graph") {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 10; ++rep) {
    auto g = oracle::random_graph(30, 0.08, rng);
    auto t = oracle::random_nodes(30, rng);
    auto s = describe(g, t, g.edge_count());
    double in_total = 0.0, out_total = 0.0;
    std::size_t users = 0;
    for (Role r : kAllRoles) {
      users += s.role_count(r);
      if (s.role_count(r) == 0) continue;
      in_total += s.degree(r).in_mean * static_cast<double>(s.role_count(r));
      out_total += s.degree(r).out_mean * static_cast<double>(s.role_count(r));
    }
    CHECK(users == 30);
    CHECK(in_total == doctest::Approx(static_cast<double>(g.edge_count())));
    CHECK(out_total == doctest::Approx(static_cast<double>(g.edge_count())));
    CHECK(s.max_in_degree == max_in_degree(g));
  }
}

TEST_CASE("role file") {
  auto roles = parse_role_csv("screen_name,role\n@Confech,Organizations\ncamila,leader\n");
  CHECK(roles.at("confech") == Role::Organization);
  CHECK(roles.at("camila") == Role::Leader);
  CHECK_THROWS_AS(parse_role_csv("screen_name,role\nx,journalist\n"), Error);
  CHECK_THROWS_AS(parse_role_csv("name,kind\n"), Error);
}

TEST_CASE("krippendorff alpha") {
  auto a = codes({"org", "leader", "ordinary", "org", "ordinary", "ordinary", "leader", "org", "ordinary", "org"});
  CHECK(krippendorff_alpha(a, a) == 1.0);

  auto x = codes({"1", "1", "1", "1", "1", "0", "0", "0", "0", "0"});
  auto y = codes({"1", "1", "1", "1", "0", "1", "0", "0", "0", "0"});
  CHECK(krippendorff_alpha(x, y) == doctest::Approx(oracle::krippendorff(x, y)).epsilon(1e-12));
  CHECK(krippendorff_alpha(x, y) == doctest::Approx(1.0 - 19.0 * 4.0 / 200.0));

  // One coder constant, the other varied: agreement is worse than chance.
  auto constant = codes({"0", "0", "0", "0", "0", "0", "0", "0", "0", "0"});
  auto varied = codes({"1", "0", "1", "1", "0", "1", "0", "1", "1", "0"});
  const double adversarial = krippendorff_alpha(constant, varied);
  CHECK(adversarial <= 0.0);
  CHECK(adversarial == doctest::Approx(oracle::krippendorff(constant, varied)));

  // Missing codings are skipped.
  auto partial = y;
  partial[0].reset();
  CHECK(krippendorff_alpha(x, partial) == doctest::Approx(oracle::krippendorff(x, partial)));

  CHECK_THROWS_AS(krippendorff_alpha(codes({"a"}), codes({"a"})), Error);
  CHECK_THROWS_AS(krippendorff_alpha(codes({"a", "a"}), codes({"a", "a"})), Error);
  CHECK_THROWS_AS(krippendorff_alpha(codes({"a", "b"}), codes({"a"})), Error);
}
