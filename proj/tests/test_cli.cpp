#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

// End-to-end checks of the installed command surface: every subcommand is
// exercised through a real process, so flag parsing, exit codes, stream
// conventions, and file formats are all covered as the user sees them.

namespace {

struct CmdOut {
  int code = -1;
  std::string out;
  std::string err;
};

std::string work_dir() {
  static std::string dir = [] {
    auto d = std::filesystem::temp_directory_path() / "divcom_cli_test";
    std::filesystem::remove_all(d);
    std::filesystem::create_directories(d);
    return d.string();
  }();
  return dir;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void put(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

CmdOut run_cli(const std::string& args) {
  static int counter = 0;
  auto dir = work_dir();
  auto out = dir + "/stdout" + std::to_string(counter) + ".txt";
  auto err = dir + "/stderr" + std::to_string(counter) + ".txt";
  ++counter;
  auto cmd = "cd " + dir + " && " + DIVCOM_BIN + " " + args + " >" + out +
             " 2>" + err;
  int status = std::system(cmd.c_str());
  CmdOut r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

// Shared sample: generated once, reused by the detect/eval cases below.
std::string base_prefix() {
  static std::string prefix = [] {
    auto r = run_cli("gen --design grouped-sbm --n 240 --seed 3 --out base");
    REQUIRE(r.code == 0);
    return work_dir() + "/base";
  }();
  return prefix;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) out.push_back(field);
  return out;
}

// Timings vary run to run; everything else must be byte-stable.
void zero_ms(nlohmann::json& j) {
  if (j.is_object()) {
    for (auto& [key, value] : j.items()) {
      if (key.size() >= 3 && key.compare(key.size() - 3, 3, "_ms") == 0)
        value = 0.0;
      else
        zero_ms(value);
    }
  } else if (j.is_array()) {
    for (auto& value : j) zero_ms(value);
  }
}

}  // namespace

TEST_CASE("cli: help exits cleanly, bad usage does not") {
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("gen --help").code == 0);

  auto none = run_cli("");
  CHECK(none.code == 2);
  CHECK(none.err.find("DIVCOM_USAGE") == 0);

  auto bad = run_cli("gen --design nope");
  CHECK(bad.code == 2);
  CHECK(bad.err.find("DIVCOM_USAGE") == 0);
}

TEST_CASE("cli: gen is reproducible and lists its outputs") {
  auto prefix = base_prefix();
  auto again = run_cli("gen --design grouped-sbm --n 240 --seed 3 --out again");
  REQUIRE(again.code == 0);
  CHECK(again.out == "again.edges\nagain.labels\nagain.model.json\n");
  CHECK(slurp(work_dir() + "/again.edges") == slurp(prefix + ".edges"));
  CHECK(slurp(work_dir() + "/again.labels") == slurp(prefix + ".labels"));
  CHECK(slurp(work_dir() + "/again.model.json") == slurp(prefix + ".model.json"));

  auto other = run_cli("gen --design grouped-sbm --n 240 --seed 4 --out other");
  REQUIRE(other.code == 0);
  CHECK(slurp(work_dir() + "/other.edges") != slurp(prefix + ".edges"));

  auto dc = run_cli("gen --design grouped-dcsbm --n 160 --seed 1 --out dc");
  REQUIRE(dc.code == 0);
  CHECK(dc.out.find("dc.theta") != std::string::npos);
  CHECK(split_lines(slurp(work_dir() + "/dc.theta")).size() == 160);
}

TEST_CASE("cli: detect round-trips the graph into a report") {
  auto prefix = base_prefix();
  auto r = run_cli("detect --edges base.edges --seed 5 --out r1.json");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("G_hat=") == 0);

  // stdout's edge count must match the file (first line is the n directive)
  auto edge_lines = split_lines(slurp(prefix + ".edges")).size() - 1;
  CHECK(r.out.find("n=240 edges=" + std::to_string(edge_lines)) !=
        std::string::npos);

  auto j = nlohmann::json::parse(slurp(work_dir() + "/r1.json"));
  CHECK(j.at("n").get<int>() == 240);
  CHECK(j.at("g_hat").size() == 240);
  CHECK(j.at("c_hat").size() == 240);
  CHECK(j.at("G_hat").get<int>() == j.at("groups").size());
  CHECK(j.at("B_hat").size() == j.at("K_total").get<std::size_t>());
  CHECK(j.at("timings_ms").contains("division"));
}

TEST_CASE("cli: division flags steer the group count") {
  base_prefix();
  auto fixed = run_cli("detect --edges base.edges --groups 1 --out g1.json");
  REQUIRE(fixed.code == 0);
  CHECK(fixed.out.find("G_hat=1 ") == 0);

  auto steep = run_cli("detect --edges base.edges --mode threshold --delta 1.5 "
                       "--out g2.json");
  REQUIRE(steep.code == 0);
  CHECK(steep.out.find("G_hat=1 ") == 0);

  auto conflict = run_cli("detect --edges base.edges --groups 2 --delta 0.1");
  CHECK(conflict.code == 2);
  CHECK(conflict.err.find("DIVCOM_USAGE") == 0);
}

TEST_CASE("cli: reports are identical across --jobs, timings aside") {
  base_prefix();
  auto a = run_cli("detect --edges base.edges --seed 5 --jobs 1 --out ja.json");
  auto b = run_cli("detect --edges base.edges --seed 5 --jobs 3 --out jb.json");
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  auto ja = nlohmann::json::parse(slurp(work_dir() + "/ja.json"));
  auto jb = nlohmann::json::parse(slurp(work_dir() + "/jb.json"));
  CHECK(ja != jb);  // jobs is recorded, so the raw files differ
  ja["jobs"] = jb["jobs"] = 0;
  zero_ms(ja);
  zero_ms(jb);
  CHECK(ja.dump() == jb.dump());
}

TEST_CASE("cli: eval scores a report against the truth") {
  base_prefix();
  auto det = run_cli("detect --edges base.edges --seed 5 --out re.json");
  REQUIRE(det.code == 0);
  auto r = run_cli("eval --report re.json --labels base.labels "
                   "--model-json base.model.json --out me.json");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("nmi=") != std::string::npos);
  auto j = nlohmann::json::parse(slurp(work_dir() + "/me.json"));
  auto v = j.at("nmi").get<double>();
  auto gv = j.at("g_nmi").get<double>();
  CHECK(v >= 0.0);
  CHECK(v <= 1.0);
  CHECK(gv >= 0.0);
  CHECK(gv <= 1.0);

  SUBCASE("without the model file there is no G-NMI") {
    auto plain = run_cli("eval --report re.json --labels base.labels "
                         "--out mp.json");
    REQUIRE(plain.code == 0);
    auto jp = nlohmann::json::parse(slurp(work_dir() + "/mp.json"));
    CHECK(jp.contains("nmi"));
    CHECK(!jp.contains("g_nmi"));
  }
  SUBCASE("label count must match the report") {
    put(work_dir() + "/short.labels", "1\n2\n");
    auto bad = run_cli("eval --report re.json --labels short.labels");
    CHECK(bad.code == 2);
    CHECK(bad.err.find("DIVCOM_USAGE") == 0);
  }
}

TEST_CASE("cli: eval runs masked link prediction") {
  base_prefix();
  auto r = run_cli("eval --edges base.edges --mask 0.2 --seed 9 --out mm.json");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(slurp(work_dir() + "/mm.json"));
  auto auc = j.at("auc").get<double>();
  CHECK(auc >= 0.0);
  CHECK(auc <= 1.0);
  CHECK(j.at("mask_proportion").get<double>() == 0.2);
  CHECK(j.at("masked_pairs").get<double>() ==
        std::round(0.2 * (240.0 * 239.0 / 2.0)));

  auto rerun = run_cli("eval --edges base.edges --mask 0.2 --seed 9 "
                       "--out mm2.json");
  REQUIRE(rerun.code == 0);
  CHECK(slurp(work_dir() + "/mm2.json") == slurp(work_dir() + "/mm.json"));

  auto missing = run_cli("eval --mask 0.2");
  CHECK(missing.code == 2);
  CHECK(missing.err.find("DIVCOM_USAGE") == 0);
}

TEST_CASE("cli: failures map to distinct exit codes") {
  auto io = run_cli("detect --edges missing.edges");
  CHECK(io.code == 2);
  CHECK(io.err.find("DIVCOM_IO") == 0);

  put(work_dir() + "/bad.edges", "0 x\n");
  auto parse = run_cli("detect --edges bad.edges");
  CHECK(parse.code == 3);
  CHECK(parse.err.find("DIVCOM_PARSE") == 0);
  CHECK(parse.err.find("(line 1)") != std::string::npos);

  put(work_dir() + "/empty.edges", "# n=5\n");
  auto numeric = run_cli("detect --edges empty.edges");
  CHECK(numeric.code == 4);
  CHECK(numeric.err.find("DIVCOM_NUMERIC") == 0);
}

TEST_CASE("cli: bench writes the summary and replicate tables") {
  auto r = run_cli("bench --design sbm-sweep --n-list 120 --reps 2 --seed 1 "
                   "--out bench.csv");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("sbm-sweep n=120 D-SSP nmi_mean=") != std::string::npos);
  CHECK(r.out.find("sbm-sweep n=120 FG nmi_mean=") != std::string::npos);

  auto table = split_lines(slurp(work_dir() + "/bench.csv"));
  REQUIRE(table.size() == 3);  // header + one row per method
  CHECK(table[0] == "n,G,K,method,nmi_mean,nmi_sd,time_mean_ms,gnmi_mean");
  for (std::size_t i = 1; i < table.size(); ++i) {
    auto f = split_fields(table[i]);
    REQUIRE(f.size() == 8);
    CHECK(f[0] == "120");
    CHECK(f[1] == "4");
    CHECK(f[2] == "12");
    auto mean = std::stod(f[4]);
    CHECK(mean >= 0.0);
    CHECK(mean <= 1.0);
  }

  auto series = split_lines(slurp(work_dir() + "/bench.reps.csv"));
  REQUIRE(series.size() == 5);  // header + 2 methods x 2 reps
  CHECK(series[0] == "n,method,rep,nmi,gnmi,time_ms");

  SUBCASE("identical runs agree on every non-time column") {
    auto r2 = run_cli("bench --design sbm-sweep --n-list 120 --reps 2 --seed 1 "
                      "--out bench2.csv");
    REQUIRE(r2.code == 0);
    auto again = split_lines(slurp(work_dir() + "/bench2.csv"));
    REQUIRE(again.size() == table.size());
    for (std::size_t i = 1; i < table.size(); ++i) {
      auto f1 = split_fields(table[i]);
      auto f2 = split_fields(again[i]);
      REQUIRE(f2.size() == 8);
      for (std::size_t c = 0; c < 8; ++c)
        if (c != 6) CHECK(f1[c] == f2[c]);
    }
    auto s2 = split_lines(slurp(work_dir() + "/bench2.reps.csv"));
    REQUIRE(s2.size() == series.size());
    for (std::size_t i = 1; i < series.size(); ++i) {
      auto f1 = split_fields(series[i]);
      auto f2 = split_fields(s2[i]);
      REQUIRE(f2.size() == 6);
      for (std::size_t c = 0; c < 6; ++c)
        if (c != 5) CHECK(f1[c] == f2[c]);
    }
  }
}
