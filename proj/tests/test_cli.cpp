// Runs the installed command-line tool end to end.

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(PSKRX_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, {}};
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "pskrx_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(cli, sweep_header_and_rows) {
  const Result r = run("sweep --grid 0.5,1 --trials 2000 --seed 3 --beta-policy fixed --beta-sq 0.1 --workers 2");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(first_line(r.out), "alpha_sq,beta_sq,p_err,std_err,sql,helstrom,trials,seed");
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 3);
  EXPECT_NE(r.out.find("\n0.5,0.1,"), std::string::npos);
}

TEST(cli, sweep_is_reproducible) {
  const std::string args = "sweep --grid 0.5,1 --trials 5000 --seed 9 --strategy cyclic --beta-policy zero";
  EXPECT_EQ(run(args + " --workers 1").out, run(args + " --workers 4").out);
}

TEST(cli, trace_rows) {
  const Result r = run("trace --alpha-sq 0.5 --beta-sq 0.23 --clicks 0.15,0.35,0.54,0.71");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(first_line(r.out), "time,event,probe,next_probe,p1,p2,p3,p4,map_state");
  std::istringstream lines(r.out);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_GE(rows, 6);  // header, start, four clicks, end
  EXPECT_NE(r.out.find(",3\n"), std::string::npos);
}

TEST(cli, bench_and_optimize) {
  Result r = run("bench --M 2 --grid 0.2");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(first_line(r.out), "alpha_sq,sql,helstrom");
  EXPECT_NE(r.out.find("0.2,0.2635"), std::string::npos);

  r = run("optimize --strategy cyclic --grid 0.5,1");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(first_line(r.out), "alpha_sq,beta_opt_sq,p_err,beta_opt");
}

TEST(cli, simulate_json) {
  const Result r = run("simulate --alpha-sq 1 --beta-sq 0.1 --trials 5 --seed 3 --format json");
  ASSERT_EQ(r.code, 0);
  const auto rows = nlohmann::json::parse(r.out);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_TRUE(rows[0].contains("probe_sequence"));
  EXPECT_EQ(rows[4]["trial"].get<int>(), 4);
}

TEST(cli, dump_spec_round_trip) {
  const fs::path first = scratch("first.spec"), second = scratch("second.spec");
  const fs::path out1 = scratch("out1.csv"), out2 = scratch("out2.csv");
  ASSERT_EQ(run("sweep --M 8 --grid 0.5 --trials 1000 --strategy cyclic --beta-policy zero --out " + out1.string() +
                " --dump-spec " + first.string())
                .code,
            0);
  // the seed was random; the dump records it
  ASSERT_NE(slurp(first).find("seed = "), std::string::npos);
  ASSERT_EQ(run("sweep --spec " + first.string() + " --out " + out2.string() + " --dump-spec " + second.string()).code,
            0);
  EXPECT_EQ(slurp(out1), slurp(out2));
  std::string a = slurp(first), b = slurp(second);
  // only the output path differs
  a.replace(a.find(out1.string()), out1.string().size(), out2.string());
  EXPECT_EQ(a, b);
}

TEST(cli, flags_override_spec_file) {
  const fs::path spec = scratch("override.spec");
  std::ofstream(spec) << "M = 2\ngrid = 0.2\n";
  const Result r = run("bench --spec " + spec.string() + " --grid 0.4");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\n0.4,"), std::string::npos);
}

TEST(cli, exit_codes) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("sweep --bogus 1").code, 2);
  EXPECT_EQ(run("sweep --M 1 --grid 1 --trials 10 --seed 1").code, 2);
  EXPECT_EQ(run("trace --clicks 0.5,0.2").code, 2);
  EXPECT_EQ(run("bench --spec /nonexistent/settings.spec").code, 4);
  EXPECT_EQ(run("bench --grid 1 --out /nonexistent/dir/out.csv").code, 4);
  EXPECT_EQ(run("--help").code, 0);
}
