#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

struct result {
  int status;
  std::string out;
};

result run(const std::string& args, const std::string& input = {}) {
  std::string cmd = std::string("'") + LTL4C_CLI + "' " + args;
  if (!input.empty() || args.find('<') == std::string::npos) {
    const auto path = fs::temp_directory_path() / "ltl4c_cli_stdin.txt";
    std::ofstream(path) << input;
    cmd += " < '" + path.string() + "'";
  }
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (auto n = std::fread(buf, 1, sizeof buf, pipe))
    out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const char* name) { return std::string("'") + LTL4C_DATA_DIR + "/" + name + "'"; }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    out.push_back(line);
  return out;
}

std::string temp_file(const char* name, const std::string& content) {
  const auto path = fs::temp_directory_path() / name;
  std::ofstream(path) << content;
  return "'" + path.string() + "'";
}

std::string slurp(const char* path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), {}};
}

} // namespace

TEST_CASE("check reports the verdict through the exit code") {
  auto r = run("check " + data("login.prop") + " " + data("login.jsonl"));
  CHECK(r.status == 1);
  CHECK(r.out.find("verdict: FALSE") != std::string::npos);

  const auto ok = temp_file("ltl4c_ok.jsonl", "{\"user\":\"Eve\",\"rid\":1,\"login\":true}\n");
  r = run("check " + data("login.prop") + " " + ok);
  CHECK(r.status == 0);
  CHECK(r.out.find("verdict: CURRENTLY_TRUE") != std::string::npos);
}

TEST_CASE("usage and input errors exit with 2") {
  CHECK(run("check 2>/dev/null").status == 2);
  CHECK(run("frobnicate 2>/dev/null").status == 2);
  CHECK(run("check " + temp_file("ltl4c_bad.prop", "forall x : p(y) => q") + " " +
            data("login.jsonl") + " 2>/dev/null")
            .status == 2);
  CHECK(run("check " + data("login.prop") + " /nonexistent/trace 2>/dev/null").status == 2);
  const auto bad = temp_file("ltl4c_bad.jsonl", "{\"user\":\"Eve\"}\n[1,2\n");
  CHECK(run("check " + data("login.prop") + " " + bad + " 2>/dev/null").status == 2);
  CHECK(run("check --on-malformed skip " + data("login.prop") + " " + bad + " 2>/dev/null")
            .status == 0);
  CHECK(run("check --format yaml " + data("login.prop") + " " + data("login.jsonl") +
            " 2>/dev/null")
            .status == 2);
}

TEST_CASE("stream prints one verdict per batch") {
  const auto trace = slurp(LTL4C_DATA_DIR "/login.jsonl");
  const auto r = run("stream --batch-size 1 " + data("login.prop"), trace);
  CHECK(r.status == 1);
  const auto out = lines(r.out);
  REQUIRE(out.size() == 7);
  CHECK(out[0] == "batch 0 events 0 total 0 verdict PRESUMABLY_TRUE");
  CHECK(out[1] == "batch 1 events 1 total 1 verdict CURRENTLY_TRUE");
  CHECK(out[5] == "batch 5 events 1 total 5 verdict FALSE");
  CHECK(out[6] == "summary batches 5 events 5 verdict FALSE");
}

TEST_CASE("stream on empty input reports the initial verdict") {
  const auto r = run("stream " + data("login.prop") + " < /dev/null");
  CHECK(r.status == 0);
  const auto out = lines(r.out);
  REQUIRE(out.size() == 2);
  CHECK(out[0] == "batch 0 events 0 total 0 verdict PRESUMABLY_TRUE");
  CHECK(out[1] == "summary batches 0 events 0 verdict PRESUMABLY_TRUE");
}

TEST_CASE("stream skips malformed records with a warning") {
  const auto warnings = fs::temp_directory_path() / "ltl4c_warn.txt";
  const auto r = run("stream --on-malformed skip " + data("fig1.prop") + " 2>'" +
                         warnings.string() + "'",
                     "{\"a\":true}\nbad\n{\"a\":true}\n");
  CHECK(r.status == 0);
  CHECK(lines(r.out).back() == "summary batches 1 events 2 verdict PRESUMABLY_TRUE");
  const auto err = slurp(warnings.c_str());
  CHECK(err.find("line 2") != std::string::npos);
}

TEST_CASE("stream in json-lines format") {
  const auto trace = slurp(LTL4C_DATA_DIR "/login.jsonl");
  const auto r = run("stream --format json-lines " + data("login.prop"), trace);
  const auto out = lines(r.out);
  REQUIRE(out.size() >= 2);
  for (const auto& line : out)
    CHECK(nlohmann::json::accept(line));
  const auto last = nlohmann::json::parse(out.back());
  CHECK(last["verdict"] == "FALSE");
  CHECK(last["events"] == 5);
}

TEST_CASE("check and stream agree") {
  const auto trace = slurp(LTL4C_DATA_DIR "/login.jsonl");
  const auto check = run("check --format json-lines " + data("login.prop") + " " +
                         data("login.jsonl"));
  const auto stream =
      run("stream --format json-lines --batch-size 1000000 " + data("login.prop"), trace);
  CHECK(nlohmann::json::parse(check.out)["verdict"] ==
        nlohmann::json::parse(lines(stream.out).back())["verdict"]);
  CHECK(check.status == stream.status);
}

TEST_CASE("json report schema") {
  const auto r = run("check --format json-lines " + data("login.prop") + " " + data("login.jsonl"));
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["verdict"] == "FALSE");
  CHECK(j["events"] == 5);
  REQUIRE(j["nodes"].size() == 3);
  CHECK(j["nodes"][1]["path"] == nlohmann::json::array({"Adam"}));
  CHECK(j["nodes"][1]["counts"]["TRUE"] == 4);
  CHECK(j["nodes"][2]["settled"] == false);
}

TEST_CASE("gen is deterministic") {
  const auto a = run("gen --seed 5");
  const auto b = run("gen --seed 5");
  const auto c = run("gen --seed 6");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  const auto records = lines(a.out);
  CHECK(records.size() == 16384);
  for (std::size_t i = 0; i < records.size(); i += 997)
    CHECK(nlohmann::json::accept(records[i]));
  for (auto shape : {"chunk", "cache"})
    CHECK(lines(run(std::string("gen --events 50 --shape ") + shape).out).size() == 50);
}

TEST_CASE("explain dumps the monitor and the tree") {
  const auto r = run("explain " + data("login.prop") + " " + data("login.jsonl"));
  CHECK(r.status == 1);
  CHECK(r.out.find("# atoms: 0=login 1=unauthorized") != std::string::npos);
  CHECK(r.out.find("<Adam> [exists[<=3] r : rid(r)] T=4") != std::string::npos);
  CHECK(r.out.find("<Adam,12> leaf TRUE settled") != std::string::npos);
}

TEST_CASE("config file supplies defaults that flags override") {
  const auto config = temp_file("ltl4c_config.json", "{\"format\": \"json-lines\"}");
  auto r = run("check --config " + config + " " + data("login.prop") + " " + data("login.jsonl"));
  CHECK(nlohmann::json::accept(r.out));
  r = run("check --config " + config + " --format human " + data("login.prop") + " " +
          data("login.jsonl"));
  CHECK(r.out.rfind("verdict:", 0) == 0);
}
