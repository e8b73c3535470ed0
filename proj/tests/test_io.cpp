#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "eqgs/analysis_io.hpp"
#include "eqgs/commands.hpp"
#include "eqgs/error.hpp"
#include "eqgs/framework_io.hpp"
#include "eqgs/svg.hpp"
#include "support/frameworks.hpp"

using namespace eqgs;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string sample_path(const std::string& stem) {
  return std::string(EQGS_TEST_SAMPLES) + "/" + stem + ".json";
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  return json::parse(in);
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("eqgs_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string write_doc(const fs::path& dir, const std::string& name, const json& doc) {
  const std::string path = (dir / name).string();
  std::ofstream(path) << doc.dump(2);
  return path;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(EQGS_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("framework file round trip") {
  for (const char* name : {"triangle", "desargues", "z5_flower"}) {
    const FrameworkFile a = testing::load_sample(name);
    const FrameworkFile b = parse_framework(framework_to_json(a));
    CHECK(b.name == a.name);
    CHECK(b.framework.complex->edge_ids == a.framework.complex->edge_ids);
    CHECK(b.framework.complex->face_ids == a.framework.complex->face_ids);
    for (std::size_t v = 0; v < a.framework.positions.size(); ++v)
      CHECK(b.framework.positions[v] == a.framework.positions[v]);
    CHECK(b.group.has_value() == a.group.has_value());
    if (a.group) CHECK(b.group->generators == a.group->generators);
  }
}

TEST_CASE("parse errors carry a JSON pointer") {
  json doc = read_json(sample_path("triangle"));
  doc["vertices"][1]["x"] = "one";
  try {
    parse_framework(doc);
    FAIL("expected Parse");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
    CHECK(std::string(e.what()).find("/vertices/1") != std::string::npos);
  }
  json bad_edge = read_json(sample_path("triangle"));
  bad_edge["edges"][0]["u"] = "nowhere";
  CHECK_THROWS_AS(parse_framework(bad_edge), Error);
  CHECK_THROWS_AS(load_framework("/nonexistent/file.json"), Error);
  try {
    load_framework("/nonexistent/file.json");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
  }
}

TEST_CASE("analysis output round trip and byte determinism") {
  const Tolerance tol;
  for (const char* name : {"triangle", "desargues", "z5_flower", "d4_grid"}) {
    CAPTURE(name);
    const FrameworkFile file = testing::load_sample(name);
    const AnalysisOutput a = analyze(file, {true, true}, tol);
    const std::string text = dump_deterministic(to_json(a));
    const AnalysisOutput b = analysis_from_json(json::parse(text));
    CHECK(a == b);
    CHECK(dump_deterministic(to_json(b)) == text);
    CHECK(dump_deterministic(to_json(analyze(file, {true, true}, tol))) == text);
  }
}

TEST_CASE("floats carry 17 significant digits") {
  json j = json::array({0.1, 1.0 / 3.0});
  const std::string s = dump_deterministic(nlohmann::ordered_json(j), 0);
  CHECK(s.find("0.10000000000000001") != std::string::npos);
  CHECK(s.find("0.33333333333333331") != std::string::npos);
}

TEST_CASE("atomic write replaces the file") {
  const fs::path dir = scratch_dir("atomic");
  const std::string p = (dir / "out.txt").string();
  write_file_atomic(p, "first");
  write_file_atomic(p, "second");
  CHECK(read_text(p) == "second");
  int entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++entries;
  CHECK(entries == 1);
  CHECK_THROWS_AS(write_file_atomic((dir / "missing" / "x.txt").string(), "x"), Error);
  fs::remove_all(dir);
}

TEST_CASE("validate command") {
  std::ostringstream out, err;
  CHECK(cmd_validate(sample_path("desargues"), out, err) == 0);
  CHECK(json::parse(out.str())["ok"] == true);

  const fs::path dir = scratch_dir("validate");
  json broken = read_json(sample_path("triangle"));
  broken["faces"][0]["edges"][1]["sign"] = -broken["faces"][0]["edges"][1]["sign"].get<int>();
  std::ostringstream o2, e2;
  CHECK(cmd_validate(write_doc(dir, "broken.json", broken), o2, e2) != 0);
  CHECK(o2.str().find("BadCycle") != std::string::npos);

  json asym = read_json(sample_path("desargues"));
  asym["vertices"][0]["x"] = asym["vertices"][0]["x"].get<double>() + 0.1;
  std::ostringstream o3, e3;
  CHECK(cmd_validate(write_doc(dir, "asym.json", asym), o3, e3) != 0);
  CHECK(o3.str().find("NotARealization") != std::string::npos);

  std::ofstream(dir / "garbage.json") << "{ not json";
  std::ostringstream o4, e4;
  CHECK(cmd_validate((dir / "garbage.json").string(), o4, e4) == 2);
  std::ostringstream o5, e5;
  CHECK(cmd_validate((dir / "absent.json").string(), o5, e5) == 2);
  fs::remove_all(dir);
}

TEST_CASE("analyze command") {
  std::ostringstream out, err;
  AnalyzeArgs args{sample_path("triangle"), "-", true, false};
  CHECK(cmd_analyze(args, out, err) == 0);
  const json j = json::parse(out.str());
  CHECK(j["homology"]["h1_force"] == 0);
  CHECK(j["maxwell"]["lhs"] == 3);
  CHECK(j["maxwell"]["rhs"] == 3);

  std::ostringstream o2, e2;
  AnalyzeArgs des{sample_path("desargues"), "", false, false};
  CHECK(cmd_analyze(des, o2, e2) == 0);
  CHECK(o2.str().find("dim H1(F) = 1") != std::string::npos);

  std::ostringstream o3, e3;
  AnalyzeArgs d4{sample_path("d4_grid"), "-", false, false};
  CHECK(cmd_analyze(d4, o3, e3) == 0);
  const json jd = json::parse(o3.str());
  CHECK(jd["homology"]["h1_force"] == 4);
  CHECK(jd["homology"]["h2_position"] == 6);
}

TEST_CASE("reciprocal command writes one SVG per basis element") {
  const fs::path dir = scratch_dir("reciprocal");
  auto count_svgs = [&](const fs::path& d) {
    int n = 0;
    for (const auto& e : fs::directory_iterator(d)) n += e.path().extension() == ".svg";
    return n;
  };
  std::ostringstream out, err;
  CHECK(cmd_reciprocal({sample_path("desargues"), "1", (dir / "a1").string()}, out, err) == 0);
  CHECK(count_svgs(dir / "a1") == 2);
  CHECK(cmd_reciprocal({sample_path("desargues"), "2", (dir / "a2").string()}, out, err) == 0);
  CHECK(count_svgs(dir / "a2") == 1);
  CHECK(cmd_reciprocal({sample_path("triangle"), "", (dir / "tri").string()}, out, err) == 0);
  CHECK(count_svgs(dir / "tri") == 2);
  std::ostringstream o2, e2;
  CHECK(cmd_reciprocal({sample_path("desargues"), "Q", (dir / "bad").string()}, o2, e2) == 1);
  CHECK(e2.str().find("UnknownIrrep") != std::string::npos);

  // SVG dual vertices sit at transform(drawn positions) from the JSON.
  const json doc = read_json((dir / "a1" / "desargues_reciprocals.json").string());
  REQUIRE(doc["figures"].size() == 2);
  for (const auto& fig : doc["figures"]) {
    const std::string svg = read_text(dir / "a1" / fig["svg"].get<std::string>());
    const auto& t = fig["dual_transform"];
    Viewport vp{t["scale"], t["tx"], t["ty"]};
    const auto& ids = doc["face_ids"];
    for (std::size_t f = 0; f < ids.size(); ++f) {
      const Point want = vp.apply(Point(fig["drawn_dual_positions"][f][0].get<double>(), fig["drawn_dual_positions"][f][1].get<double>()));
      const std::regex re("<circle id=\"f-" + ids[f].get<std::string>() + "\" cx=\"([^\"]+)\" cy=\"([^\"]+)\"");
      std::smatch m;
      REQUIRE(std::regex_search(svg, m, re));
      CHECK(std::stod(m[1]) == doctest::Approx(want.x()).epsilon(1e-9));
      CHECK(std::stod(m[2]) == doctest::Approx(want.y()).epsilon(1e-9));
    }
    // The JSON reciprocal is parallel to the framework and maps to the stress.
    CHECK(svg.find("data-dual-transform") != std::string::npos);
  }
  fs::remove_all(dir);
}

TEST_CASE("svg colours follow the stress sign") {
  const FrameworkFile file = testing::load_sample("triangle");
  Vector w(3);
  w << 1.0, -1.0, 0.0;
  const Vector xi = Vector::Zero(4);
  const SvgFigure fig = render_reciprocal(file.framework, w, xi, "t <&>");
  CHECK(fig.svg.find("t &lt;&amp;&gt;") != std::string::npos);
  CHECK(fig.svg.find("stroke=\"#d62728\"") != std::string::npos);
  CHECK(fig.svg.find("stroke=\"#1f77b4\"") != std::string::npos);
  CHECK(fig.svg.find("stroke-dasharray") != std::string::npos);
}

TEST_CASE("fix_phase makes the largest entry real and positive") {
  Vector v(3);
  v << Complex(0, 1), Complex(0, -3), Complex(1, 1);
  const Vector f = fix_phase(v);
  CHECK(std::abs(f(1).imag()) < 1e-15);
  CHECK(f(1).real() == doctest::Approx(3.0));
  CHECK(f.norm() == doctest::Approx(v.norm()));
}

TEST_CASE("selftest command") {
  std::ostringstream out, err;
  CHECK(cmd_selftest({"", true}, out, err) == 0);
  CHECK(out.str().find("[ok]") != std::string::npos);

  const fs::path dir = scratch_dir("selftest");
  json corrupt = read_json(sample_path("desargues"));
  corrupt["expect"]["h1_force"] = 7;
  write_doc(dir, "desargues.json", corrupt);
  std::ostringstream o2, e2;
  CHECK(cmd_selftest({dir.string(), false}, o2, e2) != 0);
  CHECK(o2.str().find("[FAIL]") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("process exit codes") {
  const fs::path dir = scratch_dir("cli");
  CHECK(run_cli("validate " + sample_path("desargues")) == 0);
  CHECK(run_cli("validate " + (dir / "absent.json").string()) == 2);
  CHECK(run_cli("analyze --no-group " + sample_path("triangle")) == 0);
  CHECK(run_cli("frobnicate") == 2);
  CHECK(run_cli("reciprocal " + sample_path("triangle")) == 2);  // --svg is required
  json asym = read_json(sample_path("desargues"));
  asym["vertices"][0]["x"] = asym["vertices"][0]["x"].get<double>() + 0.1;
  CHECK(run_cli("validate " + write_doc(dir, "asym.json", asym)) == 1);
  fs::remove_all(dir);
}
