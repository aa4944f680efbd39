#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
  int exit_code = -1;
  std::string out;
};

Run imspec(const std::string& args) {
  const std::string command = std::string(IMSPEC_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(TEST_DATA_DIR) + "/" + name; }

nlohmann::json structured(const std::string& args) {
  Run r = imspec(args + " --format structured");
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["exit_code"] == r.exit_code);
  return j;
}

}  // namespace

TEST_CASE("spectrum command") {
  Run star = imspec("spectrum " + data("star4.txt"));
  CHECK(star.exit_code == 0);
  CHECK(star.out.find("IM = 3N") != std::string::npos);
  CHECK(star.out.find("sigma = 3") != std::string::npos);

  Run path = imspec("spectrum " + data("path6.txt"));
  CHECK(path.exit_code == 0);
  CHECK(path.out.find("IM = ∅") != std::string::npos);

  Run single = imspec("spectrum " + data("single.txt"));
  CHECK(single.exit_code == 0);
  CHECK(single.out.find("trivially magic") != std::string::npos);

  auto j = structured("spectrum " + data("star4.txt"));
  CHECK(j["schema_version"] == 1);
  CHECK(j["command"] == "spectrum");
  CHECK(j["result"]["spectrum"] == nlohmann::json::parse(R"({"kind":"union_of_multiples","generators":[3],"sigma":3})"));
  CHECK(j["result"]["range_f"] == nlohmann::json::array({1}));
  CHECK(j["input"]["sha256"].get<std::string>().size() == 64);

  auto ds = structured("spectrum " + data("double_star.txt"));
  CHECK(ds["result"]["spectrum"]["kind"] == "co_divisors");
  CHECK(ds["result"]["rendered"] == "IM = N \\ {1,2}");
}

TEST_CASE("structured payloads are reproducible") {
  auto a = structured("spectrum " + data("double_star.txt"));
  auto b = structured("spectrum " + data("double_star.txt"));
  a.erase("timing_ms");
  b.erase("timing_ms");
  CHECK(a == b);
}

TEST_CASE("check command") {
  Run six = imspec("check " + data("star4.txt") + " --h 6");
  CHECK(six.exit_code == 0);
  CHECK(six.out.find("h = 6: member") != std::string::npos);
  CHECK(six.out.find("x = 2") != std::string::npos);

  Run two = imspec("check " + data("star4.txt") + " --h 2");
  CHECK(two.exit_code == 0);
  CHECK(two.out.find("h = 2: not member") != std::string::npos);

  auto one = structured("check " + data("star4.txt") + " --h 1");
  CHECK(one["result"]["closed_form_member"] == false);
  CHECK(one["result"]["witness_member"] == false);
  CHECK(one["result"]["agree"] == true);
}

TEST_CASE("label command") {
  auto star = structured("label " + data("star4.txt") + " --h 3");
  CHECK(star["exit_code"] == 0);
  CHECK(star["result"]["status"] == "labeled");
  CHECK(star["result"]["labeling"]["pendant_label"] == 1);
  for (const auto& e : star["result"]["labeling"]["edges"]) CHECK(e["label"] == 1);
  CHECK(star["result"]["magic_constant"] == 1);

  auto ds = structured("label " + data("double_star.txt") + " --h 3");
  CHECK(ds["result"]["status"] == "labeled");
  for (const auto& e : ds["result"]["labeling"]["edges"]) CHECK(e["label"] == 1);

  Run path = imspec("label " + data("path5.txt") + " --h 4");
  CHECK(path.exit_code == 0);
  CHECK(path.out.find("NotInSpectrum") != std::string::npos);
}

TEST_CASE("oracle command") {
  auto star = structured("oracle " + data("star4.txt") + " --h 3");
  CHECK(star["result"]["verdict"] == "magic");

  auto path = structured("oracle " + data("path5.txt") + " --h 3 --exhaustive");
  CHECK(path["result"]["verdict"] == "not_magic");
  CHECK(path["result"]["states_explored"] == 16);

  auto capped = structured("oracle " + data("double_star.txt") + " --h 9 --cap 100");
  CHECK(capped["result"]["verdict"] == "unknown");

  auto all = structured("oracle " + data("double_star.txt") + " --h 3 --all");
  CHECK(all["result"]["count"] == 2);
  CHECK(all["result"]["conformance_violations"] == 0);
  for (const auto& l : all["result"]["labelings"]) {
    CHECK(l["forced_conformance"] == true);
    CHECK(l["sigma_conformance"] == true);
  }
}

TEST_CASE("atlas command") {
  Run small = imspec("atlas --n-max 4 --h-max 4");
  CHECK(small.exit_code == 0);
  CHECK(small.out.find("n = 4: 16 trees") != std::string::npos);
  CHECK(small.out.find("n = 3: 3 trees") != std::string::npos);
  CHECK(small.out.find("discrepancies: 0") != std::string::npos);

  auto edge = structured("atlas --n-max 2 --h-max 4");
  CHECK(edge["result"]["discrepancies"] == 0);
  CHECK(edge["result"]["oracle_checked"] == 6);

  auto sweep = structured("atlas --n-max 6 --h-max 5 --random 5 --random-n 9 --seed 3");
  CHECK(sweep["result"]["discrepancies"] == 0);
  CHECK(sweep["result"]["random_trees"] == 5);
}

TEST_CASE("errors map to exit codes") {
  Run dup = imspec("spectrum " + data("duplicate.txt"));
  CHECK(dup.exit_code == 1);
  auto j = structured("spectrum " + data("disconnected.txt"));
  CHECK(j["exit_code"] == 1);
  CHECK(j["error"].get<std::string>().find("line 3") != std::string::npos);
  CHECK(imspec("spectrum /nonexistent/file").exit_code == 1);
  CHECK(imspec("check " + data("star4.txt")).exit_code == 1);
  CHECK(imspec("bogus").exit_code == 1);
  CHECK(imspec("--help").exit_code == 0);
}
