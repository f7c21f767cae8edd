#include <limits>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "pskrx/errors.hpp"
#include "pskrx/report.hpp"
#include "pskrx/run_spec.hpp"

using namespace pskrx;

TEST(number_list, comma_and_range_forms) {
  EXPECT_EQ(parse_number_list("0.1, 0.5,1"), (std::vector<double>{0.1, 0.5, 1.0}));
  const auto r = parse_number_list("0:2:5");
  ASSERT_EQ(r.size(), 5u);
  EXPECT_DOUBLE_EQ(r[2], 1.0);
  EXPECT_EQ(parse_number_list("3:3:1"), (std::vector<double>{3.0}));
  EXPECT_TRUE(parse_number_list("").empty());
  EXPECT_THROW(parse_number_list("0.1,,2"), ArgumentError);
  EXPECT_THROW(parse_number_list("1:2"), ArgumentError);
  EXPECT_THROW(parse_number_list("abc"), ArgumentError);
}

TEST(number_list, format_round_trips) {
  const std::vector<double> v{0.1, 1.0 / 3.0, 1e-4, 2.0, 6.02e23};
  EXPECT_EQ(parse_number_list(format_number_list(v)), v);
  EXPECT_EQ(format_number_list({0.1, 2.0}), "0.1,2");
}

TEST(format_double, exact_and_short) {
  EXPECT_EQ(format_double(0.25), "0.25");
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(-3.0), "-3");
  const double third = 1.0 / 3.0;
  EXPECT_EQ(std::stod(format_double(third)), third);
  const double tiny = std::numeric_limits<double>::denorm_min();
  EXPECT_EQ(std::stod(format_double(1e300)), 1e300);
  EXPECT_FALSE(format_double(tiny).empty());
}

TEST(run_spec, defaults_validate) {
  RunSpec s;
  EXPECT_NO_THROW(s.validate());
  EXPECT_EQ(s.num_states, 4);
  EXPECT_EQ(s.beta_grid.size(), 16u);
}

TEST(run_spec, kv_round_trip) {
  RunSpec s;
  s.num_states = 8;
  s.grid = {0.5, 1.0 / 3.0 + 1.0};
  s.strategy = Strategy::cyclic;
  s.imperfections.efficiency = 0.7;
  s.imperfections.dead_time = 0.2;
  s.trials = 12345;
  s.seed = 18446744073709551615ull;
  s.beta_policy = BetaPolicy::mc;
  s.beta_sq = 0.23;
  s.clicks = {0.15, 0.35};
  s.format = OutputFormat::json;
  s.out = "result file.json";

  std::stringstream text;
  write_kv(text, s.to_kv());
  const RunSpec back = RunSpec::from_kv(parse_kv(text));
  EXPECT_EQ(back.to_kv(), s.to_kv());
  EXPECT_EQ(back.seed, s.seed);
  EXPECT_EQ(back.grid, s.grid);
  EXPECT_EQ(back.out, s.out);
}

TEST(run_spec, file_syntax) {
  std::istringstream in("# comment\n\n  M = 3  \nstrategy=cyclic\r\ngrid = 0:1:3\n");
  const auto kv = parse_kv(in);
  const RunSpec s = RunSpec::from_kv(kv);
  EXPECT_EQ(s.num_states, 3);
  EXPECT_EQ(s.strategy, Strategy::cyclic);
  EXPECT_EQ(s.grid.size(), 3u);

  RunSpec base;
  base.trials = 7;
  EXPECT_EQ(RunSpec::from_kv(kv, base).trials, 7u);

  std::istringstream bad("M 4\n");
  EXPECT_THROW(parse_kv(bad), ArgumentError);
  EXPECT_THROW(RunSpec::from_kv({{"colour", "red"}}), ArgumentError);
  EXPECT_THROW(RunSpec::from_kv({{"M", "four"}}), ArgumentError);
  EXPECT_THROW(RunSpec::from_kv({{"trials", "-5"}}), ArgumentError);
  EXPECT_THROW(load_kv_file("/nonexistent/dir/spec.txt"), IoError);
}

TEST(run_spec, validation) {
  auto invalid = [](auto mutate) {
    RunSpec s;
    mutate(s);
    EXPECT_THROW(s.validate(), ArgumentError);
  };
  invalid([](RunSpec& s) { s.num_states = 1; });
  invalid([](RunSpec& s) { s.grid = {1.0, 0.5}; });
  invalid([](RunSpec& s) { s.grid = {}; });
  invalid([](RunSpec& s) { s.imperfections.efficiency = 1.5; });
  invalid([](RunSpec& s) { s.imperfections.dead_time = 1.0; });
  invalid([](RunSpec& s) { s.trials = 0; });
  invalid([](RunSpec& s) { s.beta_grid = {0.0, 1.0}; });
  invalid([](RunSpec& s) { s.clicks = {0.5, 0.4}; });
  invalid([](RunSpec& s) { s.clicks = {1.0}; });
}

TEST(enums, names_round_trip) {
  for (Strategy s : {Strategy::cyclic, Strategy::bayes}) EXPECT_EQ(parse_strategy(to_string(s)), s);
  for (BetaPolicy p : {BetaPolicy::fixed, BetaPolicy::analytic, BetaPolicy::mc, BetaPolicy::zero})
    EXPECT_EQ(parse_beta_policy(to_string(p)), p);
  for (OutputFormat f : {OutputFormat::csv, OutputFormat::json}) EXPECT_EQ(parse_format(to_string(f)), f);
  EXPECT_THROW(parse_strategy("dolinar"), ArgumentError);
}

TEST(report, csv_quoting_and_layout) {
  Table t{{"name", "value", "count"}, {}};
  t.add_row({std::string("plain"), 0.5, std::int64_t{3}});
  t.add_row({std::string("a,b"), 1.0 / 3.0, std::int64_t{-1}});
  t.add_row({std::string("say \"hi\""), 2.0, std::int64_t{0}});
  std::ostringstream out;
  write_csv(out, t);
  EXPECT_EQ(out.str(),
            "name,value,count\n"
            "plain,0.5,3\n"
            "\"a,b\",0.3333333333333333,-1\n"
            "\"say \"\"hi\"\"\",2,0\n");
  EXPECT_EQ(t.column_index("count"), 2u);
  EXPECT_THROW(t.column_index("missing"), ArgumentError);
  EXPECT_THROW(t.add_row({0.1}), ArgumentError);
}

TEST(report, json_objects_keep_column_order) {
  Table t{{"z", "a"}, {}};
  t.add_row({1.5, std::string("x")});
  t.add_row({std::int64_t{2}, std::string("y")});
  std::ostringstream out;
  write_json(out, t);
  const auto parsed = nlohmann::ordered_json::parse(out.str());
  ASSERT_TRUE(parsed.is_array());
  ASSERT_EQ(parsed.size(), 2u);
  EXPECT_EQ(parsed[0].begin().key(), "z");
  EXPECT_EQ(parsed[0]["z"].get<double>(), 1.5);
  EXPECT_EQ(parsed[1]["a"].get<std::string>(), "y");
}
