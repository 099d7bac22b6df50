#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = elcr::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string model(const char* name) { return std::string(ELCR_MODELS_DIR) + "/" + name; }

}  // namespace

TEST_CASE("check") {
  auto r = run({"check", "--model", model("ex1.json"), "--formula", "K{x} y"});
  CHECK(r.code == elcr::cli::kFailed);
  CHECK(r.out == "false\n");
  r = run({"check", "--model", model("ex1.json"), "--formula", "<x> K{y} x"});
  CHECK(r.code == elcr::cli::kOk);
  CHECK(r.out == "true\n");
  r = run({"check", "--model", model("simultaneous.json"), "--formula", "[*] K{x} y", "--json"});
  CHECK(r.code == elcr::cli::kFailed);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["value"] == false);
  CHECK(j["layer"] == "LPlus");
  r = run({"check", "--model", model("ex1.json"), "--formula", "y = c2", "--at", "0,2"});
  CHECK(r.out == "true\n");
}

TEST_CASE("trace") {
  const auto r = run({"trace", "--model", model("ex1.json"), "--moves", "1,5,2"});
  CHECK(r.code == elcr::cli::kOk);
  CHECK(r.out.find("sigma {(2,5)}") != std::string::npos);
  CHECK(r.out.find("cop wins") != std::string::npos);
  const auto j = nlohmann::json::parse(run({"trace", "--model", model("ex1.json"), "--moves", "1,5,2", "--json"}).out);
  CHECK(j["stages"].size() == 4);
  CHECK(j["stages"][3]["sigma"].size() == 1);
  CHECK(j["cop_wins_at"] == 3);
}

TEST_CASE("reduce") {
  auto r = run({"reduce", "--formula", "[x] K{x} c0", "--vocab", model("ex1.json")});
  CHECK(r.code == elcr::cli::kOk);
  CHECK(r.out == "true\n");
  r = run({"reduce", "--formula", "[x] K{x} c0", "--vocab", model("ex1.json"), "--mode", "axioms", "--trace"});
  CHECK(r.out.find("R4") != std::string::npos);
  r = run({"reduce", "--formula", "[x] K{x} y", "--vocab", model("ex1.json")});
  CHECK(r.code == elcr::cli::kUsage);
  r = run({"reduce", "--formula", "[x] K{x} y", "--vocab", model("ex1.json"), "--prune"});
  CHECK(r.code == elcr::cli::kOk);
  r = run({"reduce", "--formula", "[*] x = y", "--vocab", model("ex1.json")});
  CHECK(r.code == elcr::cli::kUsage);
}

TEST_CASE("validate") {
  CHECK(run({"validate", "--model", model("stability.json")}).code == elcr::cli::kOk);
  const auto r = run({"validate", "--model", model("ex1.json"), "--sight-x", "2", "--json"});
  CHECK(r.code == elcr::cli::kFailed);
  CHECK(nlohmann::json::parse(r.out)["ok"] == false);
}

TEST_CASE("winning and del-compare") {
  auto r = run({"winning", "--model", model("stay_at_three.json"), "--rounds", "2"});
  CHECK(r.code == elcr::cli::kOk);
  CHECK(r.out.find("x moves to 3") != std::string::npos);
  CHECK(run({"winning", "--model", model("ex1.json"), "--rounds", "1"}).code == elcr::cli::kFailed);
  r = run({"del-compare", "--model", model("ex1.json"), "--moves", "1,5,2", "--json"});
  CHECK(r.code == elcr::cli::kOk);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["layers"].size() == 4);
  CHECK(j["layers"][1]["situations"].size() == 4);
  CHECK(j["layers"][2]["situations"].size() == 6);
  CHECK(j["layers"][3]["situations"].size() == 8);
  CHECK(j["layers"][1]["links"]["x"].size() == 1);
}

TEST_CASE("fuzz-axioms output is deterministic") {
  const std::vector<std::string> args = {"fuzz-axioms", "--max-vertices", "3", "--count", "20", "--seed", "4",
                                         "--schema", "k-sight", "--schema", "Memory", "--json"};
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.code == elcr::cli::kOk);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["models"] == 20);
  CHECK(j["schemas"][0]["verdict"] == "valid-on-suite");
  const auto r2 = run({"fuzz-axioms", "--max-vertices", "3", "--count", "40", "--seed", "4", "--schema", "R2"});
  CHECK(r2.code == elcr::cli::kFailed);
  CHECK(r2.out.find("refuted") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == elcr::cli::kUsage);
  CHECK(run({"nonsense"}).code == elcr::cli::kUsage);
  CHECK(run({"check", "--formula", "x = y"}).code == elcr::cli::kUsage);
  CHECK(run({"check", "--model", model("missing.json"), "--formula", "x = y"}).code == elcr::cli::kUsage);
  const auto bad = run({"check", "--model", model("ex1.json"), "--formula", "K{x} K{y} x"});
  CHECK(bad.code == elcr::cli::kUsage);
  CHECK(bad.err.find("line 1") != std::string::npos);
  CHECK(run({"trace", "--model", model("ex1.json"), "--moves", "3"}).code == elcr::cli::kUsage);
  CHECK(run({"trace", "--model", model("ex1.json"), "--moves", "9"}).code == elcr::cli::kUsage);
  const auto help = run({"--help"});
  CHECK(help.code == elcr::cli::kOk);
  CHECK(help.out.find("fuzz-axioms") != std::string::npos);
}
