#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout, plus stderr when the command redirects it
};

RunResult run(const std::string& args) {
  const std::string command = std::string(BINSEG_CLI_PATH) + " " + args;
  RunResult result;
  FILE* pipe = ::popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  std::size_t got;
  while ((got = std::fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    result.output.append(buffer, got);
  }
  const int status = ::pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("binseg_cli_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int value = 0;
    return value;
  }
  std::string file(const std::string& name, const std::string& content) const {
    const fs::path p = path / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p.string();
  }
  std::string at(const std::string& name) const {
    return (path / name).string();
  }
};

}  // namespace

TEST_CASE("synth worst writes the alternating sequence") {
  const auto r = run("synth --kind worst --n 8");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "value\n-1\n1\n-1\n1\n-1\n1\n-1\n1\n");
}

TEST_CASE("synth tiebreak writes the eight construction values") {
  const auto r = run("synth --kind tiebreak");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 9);
  CHECK(lines[0] == "value");
  CHECK(lines[1] == "1");
  CHECK(lines[6] == "12");
  CHECK(lines[7] == "8");
  CHECK(std::stod(lines[5]) > 13.0);  // 12 + sqrt(8/3)
}

TEST_CASE("synth usage and feasibility failures") {
  CHECK(run("synth --kind best --n 3 2>/dev/null").exit_code == 3);
  CHECK(run("synth --kind worst --n 1 2>/dev/null").exit_code == 3);
  CHECK(run("synth --kind worst 2>/dev/null").exit_code == 1);  // missing --n
  CHECK(run("synth --kind bogus --n 4 2>/dev/null").exit_code == 1);
  CHECK(run("synth 2>/dev/null").exit_code == 1);  // missing --kind
}

TEST_CASE("synth best self-certifies") {
  const auto r = run("synth --kind best --n 16");
  CHECK(r.exit_code == 0);
  CHECK(lines_of(r.output).size() == 17);
  // an uncertifiable construction is refused, not silently emitted
  CHECK(run("synth --kind best --n 512 2>/dev/null").exit_code == 3);
}

TEST_CASE("fit round trip reproduces the walkthrough") {
  TempDir dir;
  REQUIRE(run("synth --kind tiebreak --out " + dir.at("tie.csv")).exit_code ==
          0);
  const auto r = run("fit " + dir.at("tie.csv") +
                     " --loss square --max-splits 5 --metrics-out " +
                     dir.at("metrics.csv") + " --trace-out " +
                     dir.at("trace.csv"));
  CHECK(r.exit_code == 0);
  const auto splits = lines_of(r.output);
  REQUIRE(splits.size() == 6);
  CHECK(splits[0] == "iteration,position,decrease,model_loss");
  CHECK(splits[1].substr(0, 4) == "1,4,");
  CHECK(splits[2].substr(0, 4) == "2,6,");
  CHECK(splits[3].substr(0, 4) == "3,5,");
  CHECK(splits[4].substr(0, 4) == "4,7,");
  CHECK(splits[5].substr(0, 4) == "5,1,");

  const auto metrics = lines_of(read_file(dir.path / "metrics.csv"));
  REQUIRE(metrics.size() == 6);
  CHECK(metrics[0] ==
        "iteration,candidates_this_iteration,candidates_total,"
        "container_size_after,max_container_size");
  CHECK(metrics[1] == "1,7,7,1,1");
  CHECK(metrics[2] == "2,6,13,2,2");
  CHECK(metrics[3] == "3,2,15,3,3");
  CHECK(metrics[4] == "4,0,15,2,3");
  CHECK(metrics[5] == "5,0,15,1,3");

  const auto trace = lines_of(read_file(dir.path / "trace.csv"));
  REQUIRE(trace.size() == 6);
  CHECK(trace[0] == "iteration,size_before_insert");
  CHECK(trace[1] == "1,0");
  CHECK(trace[2] == "2,0");
  CHECK(trace[3] == "2,1");
  CHECK(trace[4] == "3,1");
  CHECK(trace[5] == "3,2");
}

TEST_CASE("fit naive tie-breaking reaches 17 candidates") {
  TempDir dir;
  REQUIRE(run("synth --kind tiebreak --out " + dir.at("tie.csv")).exit_code ==
          0);
  const auto r = run("fit " + dir.at("tie.csv") +
                     " --max-splits 5 --tie-break naive --metrics-out " +
                     dir.at("metrics.csv"));
  CHECK(r.exit_code == 0);
  const auto metrics = lines_of(read_file(dir.path / "metrics.csv"));
  REQUIRE(metrics.size() == 6);
  CHECK(metrics[5].substr(0, 7) == "5,0,17,");
}

TEST_CASE("fit best case 64 ends at 321 candidates") {
  TempDir dir;
  REQUIRE(run("synth --kind best --n 64 --out " + dir.at("best.csv"))
              .exit_code == 0);
  const auto r = run("fit " + dir.at("best.csv") +
                     " --max-splits 63 --metrics-out " + dir.at("m.csv"));
  CHECK(r.exit_code == 0);
  const auto metrics = lines_of(read_file(dir.path / "m.csv"));
  REQUIRE(metrics.size() == 64);
  const std::string& last = metrics.back();
  CHECK(last.find("63,0,321,") == 0);
}

TEST_CASE("fit with zero budget emits only headers") {
  TempDir dir;
  dir.file("d.csv", "value\n1\n2\n3\n");
  const auto r = run("fit " + dir.at("d.csv") + " --max-splits 0");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "iteration,position,decrease,model_loss\n");
}

TEST_CASE("fit default budget is n-1") {
  TempDir dir;
  dir.file("d.csv", "value\n4\n8\n1\n9\n");
  const auto r = run("fit " + dir.at("d.csv"));
  CHECK(r.exit_code == 0);
  CHECK(lines_of(r.output).size() == 4);  // header + 3 splits
}

TEST_CASE("fit tags rows with sequence_id for multi-sequence input") {
  TempDir dir;
  dir.file("two.csv", "sequence_id,value\nq,1\nq,9\np,3\np,3\np,8\n");
  const auto r = run("fit " + dir.at("two.csv") + " --max-splits 1");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "sequence_id,iteration,position,decrease,model_loss");
  CHECK(lines[1].substr(0, 2) == "p,");  // ids in sorted order
  CHECK(lines[2].substr(0, 2) == "q,");
}

TEST_CASE("fit data failures exit 2") {
  TempDir dir;
  CHECK(run("fit " + dir.at("missing.csv") + " 2>/dev/null").exit_code == 2);
  dir.file("bad.csv", "value\n1\nbogus\n");
  const auto r = run("fit " + dir.at("bad.csv") + " 2>&1");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("bad.csv:3") != std::string::npos);
  dir.file("neg.csv", "value\n1\n-2\n3\n");
  CHECK(run("fit " + dir.at("neg.csv") + " --loss poisson 2>/dev/null")
            .exit_code == 2);
}

TEST_CASE("bounds all on the walkthrough size") {
  const auto r = run("bounds --n 8 --splits 5 --m 1 --mode all");
  CHECK(r.exit_code == 0);
  CHECK(r.output ==
        "mode,n,splits,m,candidates\n"
        "dp-literal,8,5,1,17\n"
        "dp-operational,8,5,1,15\n"
        "heuristic,8,5,1,17\n"
        "worst,8,5,1,25\n");
}

TEST_CASE("bounds single modes") {
  CHECK(run("bounds --n 64 --splits 63 --mode worst").output ==
        "mode,n,splits,m,candidates\nworst,64,63,1,2016\n");
  CHECK(run("bounds --n 64 --splits 63 --mode dp-operational").output ==
        "mode,n,splits,m,candidates\ndp-operational,64,63,1,321\n");
  const auto literal = run("bounds --n 15 --splits 4 --m 3 --mode dp-literal");
  CHECK(literal.exit_code == 0);
  CHECK(lines_of(literal.output).size() == 2);
}

TEST_CASE("bounds zero splits") {
  const auto r = run("bounds --n 8 --splits 0 --mode all");
  CHECK(r.exit_code == 0);
  CHECK(r.output ==
        "mode,n,splits,m,candidates\n"
        "dp-literal,8,0,1,7\n"
        "dp-operational,8,0,1,0\n"
        "heuristic,8,0,1,0\n"
        "worst,8,0,1,0\n");
}

TEST_CASE("bounds infeasible parameters exit 3 naming the bound") {
  const auto r = run("bounds --n 15 --splits 5 --m 3 --mode dp-literal 2>&1");
  CHECK(r.exit_code == 3);
  CHECK(r.output.find("18") != std::string::npos);  // (K+1)*m = 6*3
  CHECK(run("bounds --n 15 --splits -1 --m 3 2>/dev/null").exit_code == 1);
}

TEST_CASE("tree text for a single split") {
  const auto r = run("tree --n 10 --splits 1 --m 5");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "size=10 g=1\n  size=5 g=0\n  size=5 g=0\n");
}

TEST_CASE("tree json and dot formats") {
  const auto json = run("tree --n 10 --splits 1 --m 5 --format json");
  CHECK(json.exit_code == 0);
  CHECK(json.output ==
        "{\"size\":10,\"cost\":1,\"children\":[{\"size\":5,\"cost\":0,"
        "\"children\":[]},{\"size\":5,\"cost\":0,\"children\":[]}]}\n");
  const auto dot = run("tree --n 10 --splits 1 --m 5 --format dot");
  CHECK(dot.exit_code == 0);
  CHECK(dot.output.find("digraph split_tree {") == 0);
  CHECK(dot.output.find("n0 [label=\"size=10 g=1\"];") != std::string::npos);
  CHECK(dot.output.find("n0 -> n1;") != std::string::npos);
}

TEST_CASE("tree infeasible exits 3") {
  CHECK(run("tree --n 5 --splits 5 2>/dev/null").exit_code == 3);
}

TEST_CASE("analyze over a directory of synthetic corpora") {
  TempDir dir;
  fs::create_directories(dir.path / "corpus");
  for (int n : {8, 16, 32}) {
    REQUIRE(run("synth --kind worst --n " + std::to_string(n) + " --out " +
                dir.at("corpus/worst" + std::to_string(n) + ".csv"))
                .exit_code == 0);
  }
  const auto r = run("analyze " + dir.at("corpus"));
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0].substr(0, 12) == "sequence_id,");
  // alternating data realizes the worst case: empirical == worst per row
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::string> fields;
    std::istringstream in(lines[i]);
    std::string field;
    while (std::getline(in, field, ',')) fields.push_back(field);
    REQUIRE(fields.size() >= 9);
    CHECK(fields[5] == fields[8]);  // candidates_empirical == candidates_worst
  }
}

TEST_CASE("analyze is byte-identical across reruns and job counts") {
  TempDir dir;
  fs::create_directories(dir.path / "corpus");
  REQUIRE(run("synth --kind worst --n 16 --out " +
              dir.at("corpus/w16.csv")).exit_code == 0);
  REQUIRE(run("synth --kind best --n 16 --out " +
              dir.at("corpus/b16.csv")).exit_code == 0);
  REQUIRE(run("synth --kind tiebreak --out " +
              dir.at("corpus/tie.csv")).exit_code == 0);
  const std::string base = "analyze " + dir.at("corpus") + " --splits 5";
  const auto a = run(base);
  const auto b = run(base);
  const auto c = run(base + " --jobs 3");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output == c.output);
}

TEST_CASE("analyze skips poisson-negative sequences but keeps the rest") {
  TempDir dir;
  dir.file("mix.csv",
           "sequence_id,value\n"
           "good,1\ngood,5\ngood,2\n"
           "holes,3\nholes,-1\nholes,4\n");
  const auto r = run("analyze " + dir.at("mix.csv") + " --loss poisson 2>&1");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("holes") != std::string::npos);   // reported
  CHECK(r.output.find("good,3,") != std::string::npos);  // still analyzed
}

TEST_CASE("fit output is byte-identical across reruns") {
  TempDir dir;
  REQUIRE(run("synth --kind best --n 32 --out " + dir.at("b.csv")).exit_code ==
          0);
  const std::string cmd =
      "fit " + dir.at("b.csv") + " --max-splits 20 --metrics-out " +
      dir.at("m1.csv");
  const auto a = run(cmd);
  const std::string m1 = read_file(dir.path / "m1.csv");
  const auto b = run("fit " + dir.at("b.csv") + " --max-splits 20 --metrics-out " +
                     dir.at("m2.csv"));
  CHECK(a.output == b.output);
  CHECK(m1 == read_file(dir.path / "m2.csv"));
}

TEST_CASE("analyze timings column stays empty by default") {
  TempDir dir;
  dir.file("d.csv", "value\n1\n2\n3\n4\n");
  const auto off = run("analyze " + dir.at("d.csv"));
  REQUIRE(off.exit_code == 0);
  const auto off_lines = lines_of(off.output);
  REQUIRE(off_lines.size() == 2);
  CHECK(off_lines[1].back() == ',');
  const auto on = run("analyze " + dir.at("d.csv") + " --timings");
  const auto on_lines = lines_of(on.output);
  REQUIRE(on_lines.size() == 2);
  CHECK(on_lines[1].back() != ',');
}

TEST_CASE("usage errors exit 1") {
  CHECK(run("2>/dev/null").exit_code == 1);  // missing subcommand
  CHECK(run("frobnicate 2>/dev/null").exit_code == 1);
  CHECK(run("bounds --n 8 2>/dev/null").exit_code == 1);  // missing --splits
  CHECK(run("fit 2>/dev/null").exit_code == 1);           // missing data
  CHECK(run("tree --n 8 --splits 1 --format yaml 2>/dev/null").exit_code == 1);
  CHECK(run("analyze missing_dir --loss gauss 2>/dev/null").exit_code == 1);
}

TEST_CASE("help exits 0") {
  CHECK(run("--help").exit_code == 0);
  CHECK(run("fit --help").exit_code == 0);
}
