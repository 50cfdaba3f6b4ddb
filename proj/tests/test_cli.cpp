#include "cli.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Out {
  int code;
  std::string out;
  std::string err;
};

Out call(std::vector<std::string> args) {
  args.insert(args.begin(), "mds");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = mds::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const std::string& f) { return std::string(FIXTURES_DIR) + "/" + f; }

}  // namespace

TEST_CASE("paths report") {
  auto r = call({"paths", fx("fig_b.gcx"), "v0", "v3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("H0(v0,v3) = Z^2\n") != std::string::npos);
  CHECK(r.out.find("components 2\n") != std::string::npos);

  auto pcx = call({"paths", fx("square.pcx"), "s00", "s11"});
  CHECK(pcx.code == 0);
  CHECK(pcx.out.find("H0(s00,s11) = Z^1\n") != std::string::npos);
}

TEST_CASE("errors exit with 2 and name their kind") {
  auto unknown = call({"paths", fx("square.gcx"), "s00", "nope"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.rfind("error: UnknownState:", 0) == 0);

  auto cap = call({"natsys", fx("fig_a.gcx"), "--cap", "3"});
  CHECK(cap.code == 2);
  CHECK(cap.err.rfind("error: CapExceeded:", 0) == 0);

  auto missing = call({"natsys", fx("no_such.gcx")});
  CHECK(missing.code == 2);

  auto usage = call({"bisim", fx("edge.gcx")});
  CHECK(usage.code == 2);
  CHECK(usage.err.rfind("error: Usage:", 0) == 0);

  auto val = call({"natsys", fx("edge.gcx"), "--val", "hom:x"});
  CHECK(val.code == 2);
  CHECK(val.err.rfind("error: ParseError:", 0) == 0);

  auto chord = call({"subdivide", fx("square.gcx"), "--cell", "q", "--chord", "0"});
  CHECK(chord.code == 2);
  CHECK(chord.err.rfind("error: BadChordSpec:", 0) == 0);

  auto notopen = call({"span", fx("square.gcx")});
  CHECK(notopen.code == 2);
}

TEST_CASE("natsys of a single edge") {
  auto r = call({"natsys", fx("edge.gcx")});
  CHECK(r.code == 0);
  CHECK(r.out.find("objects 6\n") != std::string::npos);
  std::istringstream in(r.out);
  std::string line;
  int values = 0;
  while (std::getline(in, line))
    if (line.rfind("value ", 0) == 0) {
      ++values;
      CHECK(line.substr(line.size() - 11) == "1 component");
    }
  CHECK(values == 6);
}

TEST_CASE("verdict exit codes") {
  CHECK(call({"bisim", fx("edge.gcx"), fx("edge_split.gcx"), "--val", "pi0"}).code == 0);
  CHECK(call({"bisim", fx("edge.gcx"), fx("fig_b.gcx"), "--val", "pi0"}).code == 1);
  CHECK(call({"check-open", fx("crush.cmap"), fx("fig_a.gcx"), fx("fig_b.gcx")}).code == 1);
  CHECK(call({"check-open", "--dt", fx("fig_b.gcx")}).code == 0);
  CHECK(call({"check-open", fx("fig_b.gcx"), "--edge", "d4"}).code == 0);
}

TEST_CASE("output is identical across thread counts and repeated runs") {
  const std::vector<std::vector<std::string>> cmds = {
      {"natsys", fx("two_squares.gcx"), "--val", "hom:1"},
      {"bisim", fx("fig_a.gcx"), fx("fig_b.gcx"), "--val", "pi0"},
      {"check-open", "--dt", fx("fig_a.gcx"), "--val", "hom:1"},
  };
  for (auto cmd : cmds) {
    auto one = call(cmd);
    auto again = call(cmd);
    cmd.push_back("--jobs");
    cmd.push_back("4");
    auto four = call(cmd);
    CHECK(one.out == again.out);
    CHECK(one.out == four.out);
    CHECK(one.code == four.code);
  }
}

TEST_CASE("--out writes the report to a file") {
  const auto path = std::filesystem::temp_directory_path() / "mds_test_cli_out.gcx";
  auto r = call({"import-pcx", fx("hollow.pcx"), "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str().find("edge a : s00 -> s01\n") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("subdivide emits a complex that reads back") {
  auto r = call({"subdivide", fx("square.gcx"), "--edge", "a", "--refinement"});
  CHECK(r.code == 0);
  CHECK(r.out.find("cell2 q : a_1,a_2,b => c,d\n") != std::string::npos);
  CHECK(r.out.find("# refines a_w -> a\n") != std::string::npos);
  const auto path = std::filesystem::temp_directory_path() / "mds_test_cli_sub.gcx";
  std::ofstream(path) << r.out;
  CHECK(call({"paths", path.string(), "s00", "s11"}).code == 0);
  std::filesystem::remove(path);
}

TEST_CASE("single path commands") {
  auto dt = call({"dt", fx("hollow.gcx"), fx("hollow_ab.path")});
  CHECK(dt.code == 0);
  CHECK(dt.out == "trace [a,s01,b]\nbreakpoints 0 1/2 1/2 1\nconditions ok\n");

  auto nat = call({"naturalize", fx("hollow.gcx"), fx("hollow_ab.path")});
  CHECK(nat.code == 2);
  CHECK(nat.err.rfind("error: NotExecutionPath:", 0) == 0);

  auto ts = call({"trace-space", fx("fig_b.gcx"), "d1", "d3"});
  CHECK(ts.code == 0);
  CHECK(ts.out.find("base v1 -> v2\n") != std::string::npos);
  CHECK(ts.out.find("value 2 components\n") != std::string::npos);

  auto same = call({"trace-space", fx("fig_a.gcx"), "c2", "c2"});
  CHECK(same.out.find("extra-point yes\n") != std::string::npos);
  CHECK(same.out.find("value 1 component\n") != std::string::npos);
}

TEST_CASE("random checks report zero mismatches") {
  auto laws = call({"laws", "--count", "30", "--seed", "3"});
  CHECK(laws.code == 0);
  CHECK(laws.out.find("interchange: 30 instances, 0 mismatches") != std::string::npos);
  CHECK(call({"renormalize", "--random", "30"}).code == 0);
  CHECK(call({"snf", "--random", "30", "--size", "4"}).code == 0);
}
