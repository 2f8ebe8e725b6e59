#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "oracle.hpp"
#include "qsixj/errors.hpp"
#include "qsixj/run_spec.hpp"

using namespace qsixj;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(QSIXJ_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (std::fgets(buf.data(), buf.size(), p)) out += buf.data();
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path temp_file(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / ("qsixj_test_" + name);
  std::ofstream(p) << content;
  return p;
}

double field(const std::string& out, const std::string& key) {
  std::istringstream is(out);
  std::string line;
  while (std::getline(is, line))
    if (line.rfind(key + ": ", 0) == 0) return std::stod(line.substr(key.size() + 2));
  FAIL("missing " << key);
  return 0;
}

const char* kRow1 = R"({"partition":[1],"deep":{"mode":"angle","values":["0"]},
  "regular_angles":["pi/5","pi/4","pi/4","pi/4","pi/4"],"r_values":[101,201,301]})";

}  // namespace

TEST_CASE("sixj") {
  Run r = run("sixj --r 7 --colors 0,0,0,0,0,0");
  CHECK(r.code == 0);
  CHECK(field(r.out, "log_mag") == 0.0);
  r = run("sixj --r 5 --colors 2,2,2,2,2,2");
  CHECK(r.code == 0);
  const auto ref = oracle::Oracle(5).sixj({2, 2, 2, 2, 2, 2});
  CHECK(field(r.out, "log_mag") == doctest::Approx(std::log(std::abs(ref))).epsilon(1e-12));
  CHECK(run("sixj --r 6 --colors 0,0,0,0,0,0").code == 2);
  CHECK(run("sixj --r 7 --colors 1,0,0,0,0,0").code == 2);
  CHECK(run("sixj --r 7 --colors 0,0,0").code == 2);
  CHECK(run("sixj --colors 0,0,0,0,0,0").code == 2);
  CHECK(run("frobnicate").code == 2);
}

TEST_CASE("dft") {
  Run r = run("dft --r 7 --deep-edges 1 --b 2 --a 2,2,2,2,2");
  CHECK(r.code == 0);
  CHECK(std::exp(field(r.out, "log_mag")) == doctest::Approx(60.88290501750739).epsilon(1e-12));
  CHECK(field(r.out, "term_count") == 3);
  r = run("dft --r 7 --a 2,2,2,2,2,2");
  CHECK(r.code == 0);
  CHECK(field(r.out, "term_count") == 1);
  r = run("dft --r 7 --deep-edges 1 --b 0 --a 0,1,1,1,0");
  CHECK(r.code == 0);
  CHECK(r.out.find("empty_sum: true") != std::string::npos);
  CHECK(run("dft --r 7 --deep-edges 1,1 --b 0,0 --a 0,0,0,0").code == 2);
  CHECK(run("dft --r 7 --deep-edges 1 --b 9 --a 0,0,0,0,0").code == 2);
  CHECK(run("dft --r 7 --deep-edges 1 --b 0 --a 0,0,0").code == 2);
  CHECK(run("dft --r 7 --deep-edges 1 --b 0 --a 0,0,0,0,0 --precision fast").code == 2);
}

TEST_CASE("volume and gram") {
  Run r = run("volume --deep-edges 1 --deep-angles 0 --angles pi/5,pi/4,pi/4,pi/4,pi/4");
  CHECK(r.code == 0);
  CHECK(std::abs(field(r.out, "volume") - 2.8543) < 5e-4);
  r = run("volume --angles 0,0,0,0,0,0");
  CHECK(field(r.out, "volume") == doctest::Approx(3.66386237670887606).epsilon(1e-12));
  r = run("volume --deep-edges 1 --lengths 0.3214 --angles pi/5,pi/4,pi/4,pi/4,pi/4");
  CHECK(std::abs(field(r.out, "volume") - 2.8223) < 5e-4);
  CHECK(run("volume --deep-edges 1 --lengths 0.3 --deep-angles 0.4 --angles pi/5,pi/4,pi/4,pi/4,pi/4").code == 2);
  CHECK(run("volume --angles pi/2,pi/2,pi/2,pi/2,pi/2,pi/2").code == 3);
  CHECK(run("volume --angles 2pi/3,0,0,0,0,0,0").code == 2);
  CHECK(run("gram --angles 0,0,0,0,0,0").code == 0);
  CHECK(run("gram --angles pi/2,pi/2,pi/2,pi/2,pi/2,pi/2").code == 3);
}

TEST_CASE("conjecture: csv, json, fit sidecar") {
  const fs::path spec = temp_file("row1.json", kRow1);
  const fs::path csv = fs::temp_directory_path() / "qsixj_test_row1.csv";
  Run r = run("conjecture " + spec.string() + " --fit --output " + csv.string());
  REQUIRE(r.code == 0);
  std::ifstream in(csv);
  const auto recs = read_csv(in);
  REQUIRE(recs.size() == 3);
  CHECK(recs[0].r == 101);
  CHECK(recs[2].rule == ColoringRule::quarter_doubled);
  CHECK(fs::exists(csv.string() + ".fit.json"));

  r = run("conjecture " + spec.string());
  CHECK(r.out.rfind(kCsvHeader, 0) == 0);
  r = run("conjecture " + spec.string() + " --format json --rule half");
  CHECK(r.out.find("\"rule\": \"half\"") != std::string::npos);

  // Identical numbers regardless of worker count.
  const Run a = run("--threads 1 conjecture " + spec.string());
  const Run b = run("--threads 3 conjecture " + spec.string());
  auto strip_time = [](const std::string& s) {
    std::istringstream is(s);
    std::string line, out;
    while (std::getline(is, line)) {
      std::vector<std::string> f;
      std::stringstream ls(line);
      std::string tok;
      while (std::getline(ls, tok, ',')) f.push_back(tok);
      for (std::size_t i = 0; i < f.size(); ++i)
        if (i != 10) out += f[i] + ",";
      out += "\n";
    }
    return out;
  };
  CHECK(strip_time(a.out) == strip_time(b.out));
}

TEST_CASE("conjecture: spec and failure exit codes") {
  CHECK(run("conjecture /nonexistent/spec.json").code == 2);
  CHECK(run("conjecture " + temp_file("bad1.json", "{").string()).code == 2);
  CHECK(run("conjecture " + temp_file("bad2.json", R"({"partition":[1],"deep":{"mode":"angle","values":["0"]},
    "regular_angles":["pi/5","pi/4","pi/4","pi/4","pi/4"],"r_values":[100]})").string()).code == 2);
  CHECK(run("conjecture " + temp_file("bad3.json", R"({"partition":[1],"deep":{"mode":"angle","values":["0"]},
    "regular_angles":["pi/5","pi/4","pi/4"],"r_values":[101]})").string()).code == 2);
  CHECK(run("conjecture " + temp_file("bad4.json", R"({"partition":[1],"deep":{"mode":"angle","values":["0"]},
    "regular_angles":["pi/5","pi/4","pi/4","pi/4","pi/4"],"r_values":[101],"colour":"x"})").string()).code == 2);
  CHECK(run("conjecture " + temp_file("bad5.json", R"({"partition":[1],"deep":{"mode":"angle","values":["7pi/5"]},
    "regular_angles":["pi/5","pi/4","pi/4","pi/4","pi/4"],"r_values":[101]})").string()).code == 2);
  // The tetrahedron does not exist.
  CHECK(run("conjecture " + temp_file("geo.json", R"({"partition":[],"deep":{"mode":"angle","values":[]},
    "regular_angles":["pi/2","pi/2","pi/2","pi/2","pi/2","pi/2"],"r_values":[101]})").string()).code == 3);
  // Too few distinct r for the fit.
  CHECK(run("conjecture " + temp_file("fit.json", kRow1).string() + " --r-values 101,201 --fit").code == 4);
}

TEST_CASE("csv round trip") {
  std::vector<RunRecord> recs(3);
  for (int i = 0; i < 3; ++i) {
    auto& r = recs[i];
    r.r = 101 + 200 * i;
    r.b_I = {50 + i, 7};
    r.a_J = {40, 41 + i, 40, 3};
    r.log_mag_Y = 100.0 / 3.0 + i;
    r.phase_Y = i == 1 ? std::numbers::pi : 0.0;
    r.target = 6.5872982810453671;
    r.rule = static_cast<ColoringRule>(i);
    r.precision = i == 2 ? "auto:mp256:unresolved" : "auto:double";
    r.resolved = i != 2;
    r.wall_time = 0.1 * i + 1e-7;
    refresh_derived(r);
  }
  recs[0].empty_sum = true;
  refresh_derived(recs[0]);
  std::stringstream ss;
  write_csv(ss, recs);
  const auto back = read_csv(ss);
  REQUIRE(back.size() == recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK(back[i].r == recs[i].r);
    CHECK(back[i].b_I == recs[i].b_I);
    CHECK(back[i].a_J == recs[i].a_J);
    CHECK(back[i].log_mag_Y == recs[i].log_mag_Y);
    CHECK(back[i].phase_Y == recs[i].phase_Y);
    CHECK(back[i].scaled == recs[i].scaled);
    CHECK(back[i].target == recs[i].target);
    CHECK(back[i].rel_err == recs[i].rel_err);
    CHECK(back[i].rule == recs[i].rule);
    CHECK(back[i].wall_time == recs[i].wall_time);
    CHECK(back[i].precision == recs[i].precision);
    CHECK(back[i].empty_sum == recs[i].empty_sum);
    CHECK(back[i].resolved == recs[i].resolved);
  }
  std::stringstream again;
  write_csv(again, back);
  CHECK(again.str() == ss.str());
  std::stringstream bad("r,b\n");
  CHECK_THROWS_AS(read_csv(bad), InputError);
}

TEST_CASE("shipped table specs parse") {
  int n = 0;
  for (const auto& e : fs::directory_iterator(QSIXJ_TABLE_DIR)) {
    const RunSpecFile s = RunSpecFile::load(e.path().string());
    CHECK(s.exact_angles().has_value());
    CHECK(s.rule == ColoringRule::quarter_doubled);
    CHECK_NOTHROW(s.tetra().validate());
    ++n;
  }
  CHECK(n == 7);
}
