#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sagan/cli.hpp"
#include "sagan/digit_cache.hpp"

using namespace sagan;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "sagan");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("sagan-cli-" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("digits command") {
  auto dir = fresh_dir("digits");
  auto r = run({"--cache-dir", dir.string(), "digits", "--constant", "pi", "--base", "11", "--count", "6"});
  CHECK(r.code == 0);
  CHECK(r.out == "161507\n");
  CHECK(fs::exists(dir / "pi.b11.sgnd"));
  CHECK(run({"--no-cache", "digits", "--constant", "rational:1/3", "--base", "10", "--count", "4"}).out == "3333\n");
  CHECK(run({"--no-cache", "digits", "--constant", "pi", "--count", "12"}).out == "141592653589\n");
  CHECK(run({"--no-cache", "digits", "--constant", "pi", "--base", "40", "--count", "4"}).out == "5ql[37]\n");
  auto j = nlohmann::json::parse(run({"--no-cache", "--format", "json", "digits", "--count", "3", "--base", "16"}).out);
  CHECK(j["digits"] == "243");
  fs::remove_all(dir);
}

TEST_CASE("cache reuse, extension and corruption") {
  auto dir = fresh_dir("cache");
  auto args = [&](std::string count) {
    return std::vector<std::string>{"--cache-dir", dir.string(), "digits", "--constant", "e", "--count", count};
  };
  CHECK(run(args("50")).code == 0);
  auto path = dir / "e.b10.sgnd";
  CHECK(digits::read_cache_file(path).digits.size() == 50);
  CHECK(run(args("20")).out == "71828182845904523536\n");
  CHECK(digits::read_cache_file(path).digits.size() == 50);
  CHECK(run(args("80")).code == 0);
  CHECK(digits::read_cache_file(path).digits.size() == 80);

  // Flip one payload byte: the CRC check must catch it.
  {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekg(20);
    char c;
    f.get(c);
    f.seekp(20);
    f.put(static_cast<char>(c ^ 1));
  }
  auto bad = run(args("10"));
  CHECK(bad.code == 3);
  CHECK(bad.err.find("CacheCorrupt") != std::string::npos);

  ::setenv("SAGAN_CACHE_DIR", (dir / "env").c_str(), 1);
  CHECK(cli::default_cache_dir() == dir / "env");
  CHECK(run({"digits", "--constant", "sqrt2", "--count", "5"}).out == "41421\n");
  CHECK(fs::exists(dir / "env" / "sqrt2.b10.sgnd"));
  ::unsetenv("SAGAN_CACHE_DIR");
  fs::remove_all(dir);
}

TEST_CASE("circle command") {
  CHECK(run({"circle", "-n", "3", "--scheme", "naive", "--flat"}).out == "111101111\n");
  CHECK(run({"circle", "-n", "1"}).out == "#\n");
  CHECK(run({"circle", "-n", "5", "--scheme", "center"}).out ==
        raster::rasterize_center(5).ascii());
  CHECK(run({"circle", "-n", "2", "--frame"}).out == "....\n.##.\n.##.\n....\n");
  CHECK(run({"circle", "-n", "0"}).code == 2);
  CHECK(run({"circle", "-n", "4097"}).code == 2);
  CHECK(run({"circle", "-n", "3", "--scheme", "bogus"}).code == 2);
}

TEST_CASE("search command") {
  auto r = run({"search", "--constant", "pi", "--base", "10", "-n", "2", "--limit", "20000"});
  CHECK(r.code == 0);
  CHECK(r.out.find("position 12700") != std::string::npos);
  CHECK(r.out.find("11\n11\n") != std::string::npos);
  CHECK(r.out.find("144111126") != std::string::npos);

  CHECK(run({"search", "--constant", "pi", "-n", "1", "--limit", "10"}).out.find("position 1\n") !=
        std::string::npos);
  auto miss = run({"search", "--constant", "pi", "-n", "3", "--limit", "1000"});
  CHECK(miss.code == 1);
  CHECK(run({"search", "--constant", "pi", "-n", "2"}).code == 2);
  CHECK(run({"search", "--constant", "nope", "-n", "2", "--limit", "10"}).code == 2);

  auto j = run({"--format", "json", "search", "--constant", "pi", "--base", "11", "-n", "2", "--limit", "100000"});
  CHECK(j.code == 0);
  auto parsed = nlohmann::json::parse(j.out);
  for (auto key : {"constant", "base", "scheme", "n", "P", "Q", "position", "window", "context_before",
                   "context_after", "digits_examined", "limit", "found"}) {
    CHECK(parsed.contains(key));
  }
  CHECK(parsed["position"] == 5627);
  CHECK(parsed["context_after"].get<std::string>().find("[10][10]") != std::string::npos);

  // render -> parse -> render is a fixed point.
  auto record = cli::search_record_from_json(parsed);
  CHECK(cli::to_json(record).dump() == j.out.substr(0, j.out.size() - 1));
  CHECK(cli::search_record_from_json(cli::to_json(record)) == record);

  auto gen = nlohmann::json::parse(run({"--format", "json", "search", "-n", "3", "-P", "1,7", "-Q", "0,3", "--limit",
                                        "2000000"})
                                       .out);
  CHECK(gen["P"] == nlohmann::json::array({1, 7}));
  auto none = nlohmann::json::parse(run({"--format", "json", "search", "-n", "3", "--limit", "100"}).out);
  CHECK(none["found"] == false);
  CHECK(none["position"].is_null());
  CHECK(none["digits_examined"] == 100);

  auto chunked = run({"--format", "json", "search", "-n", "2", "--limit", "20000", "--chunks", "4"});
  CHECK(nlohmann::json::parse(chunked.out)["position"] == 12700);
  CHECK(run({"search", "--digit", "0", "--limit", "100"}).out.find("position 32") != std::string::npos);
  CHECK(run({"--context", "20000", "search", "-n", "1", "--limit", "5"}).code == 2);
}

TEST_CASE("bbp command") {
  auto r = run({"bbp", "--position", "1", "--count", "8"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("243f6a88", 0) == 0);
  CHECK(r.out.find("guard 64") != std::string::npos);
  CHECK(run({"bbp", "--constant", "pi", "--position", "10000", "--count", "8", "--base", "16"}).out.rfind("68ac8fcf", 0) == 0);
  CHECK(run({"bbp", "--count", "9"}).code == 2);
  CHECK(run({"bbp", "--base", "10"}).code == 2);
  CHECK(run({"bbp", "--constant", "log2", "--count", "4"}).out.rfind("1011", 0) == 0);
}

TEST_CASE("normality command") {
  auto r = run({"--no-cache", "normality", "--constant", "rational:1/3", "--length", "10000", "--kmax", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("underflow") != std::string::npos);
  CHECK(r.out.find("not a proof") != std::string::npos);
  auto j = run({"--no-cache", "--format", "json", "normality", "--constant", "pi", "--length", "5000", "--kmax", "2"});
  auto parsed = nlohmann::json::parse(j.out);
  CHECK(parsed["rows"].size() == 2);
  auto report = cli::normality_report_from_json(parsed);
  CHECK(cli::to_json(report).dump() == parsed.dump());
  CHECK(run({"--no-cache", "normality", "--constant", "pi", "--length", "100", "--kmax", "2"}).code == 2);
}

TEST_CASE("estimate command") {
  CHECK(run({"estimate", "--base", "11", "--window", "2048"}).out ==
        "5.919e2132 digits; ~1.4e2106 universe ages\n");
  CHECK(run({"estimate", "--base", "11", "-n", "45"}).code == 0);
  CHECK(run({"estimate", "--base", "11"}).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}
