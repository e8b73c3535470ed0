#include "eqgs/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

#include "eqgs/analysis_io.hpp"
#include "eqgs/error.hpp"
#include "eqgs/framework_io.hpp"
#include "eqgs/statics.hpp"
#include "eqgs/svg.hpp"

#ifndef EQGS_SAMPLE_DIR
#define EQGS_SAMPLE_DIR "samples"
#endif

namespace eqgs {

using nlohmann::json;
using nlohmann::ordered_json;

std::string default_sample_dir() {
  if (const char* env = std::getenv("EQGS_SAMPLES"); env && *env) return env;
  return EQGS_SAMPLE_DIR;
}

namespace {

ordered_json error_json(const Error& e) {
  return ordered_json{{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
}

GroupBlock trivial_group() { return GroupBlock{GroupKind::Cyclic, 1, 90.0, {}}; }

std::string vec_str(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

}  // namespace

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  ordered_json report;
  report["file"] = path;
  ordered_json problems = ordered_json::array();
  int code = 0;
  try {
    const FrameworkFile file = load_framework(path);
    const auto& cx = *file.framework.complex;
    report["vertices"] = cx.count(0);
    report["edges"] = cx.count(1);
    report["faces"] = cx.count(2);
    for (const auto& line : validate(cx))
      problems.push_back(ordered_json{{"kind", "NonRegular"}, {"message", line}});
    for (const auto& c : check_planarity(file.framework))
      problems.push_back(ordered_json{{"kind", "NotPlanar"},
                                      {"message", "edges " + cx.edge_ids[c.first] + " and " +
                                                      cx.edge_ids[c.second] + " cross"}});
    if (cx.count(2) > 0) {
      try {
        require_sphere_closed(cx);
      } catch (const Error& e) {
        problems.push_back(error_json(e));
      }
    }
    report["sphere_closed"] = is_sphere_closed(cx);
    if (file.group) {
      try {
        auto action = build_action(file.framework, *file.group);
        for (const auto& line : check_action(*action))
          problems.push_back(ordered_json{{"kind", "NotEquivariant"}, {"message", line}});
      } catch (const Error& e) {
        problems.push_back(error_json(e));
      }
    }
    if (!problems.empty()) code = 1;
  } catch (const Error& e) {
    problems.push_back(error_json(e));
    code = exit_code(e.kind());
  }
  report["ok"] = problems.empty();
  report["problems"] = problems;
  out << dump_deterministic(report);
  if (code != 0) err << "validation failed: " << problems.size() << " problem(s)\n";
  return code;
}

int cmd_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const Tolerance tol = Tolerance::from_env();
    const FrameworkFile file = load_framework(args.path);
    const AnalysisOutput a = analyze(file, {!args.no_group, args.merge_conjugates}, tol);
    const std::string text = dump_deterministic(to_json(a));
    if (args.json_out == "-") {
      out << text;
      return 0;
    }
    if (!args.json_out.empty()) write_file_atomic(args.json_out, text);

    out << a.name << "\n";
    out << "  dim H0(F) = " << a.h0_force << "   motions\n";
    out << "  dim H1(F) = " << a.h1_force << "   self-stresses\n";
    if (a.h2_position) out << "  dim H2(P) = " << *a.h2_position << "   reciprocal diagrams\n";
    if (a.h1_position) out << "  dim H1(P) = " << *a.h1_position << "\n";
    out << "  Maxwell: " << a.maxwell_lhs << " = " << a.maxwell_rhs << "\n";
    if (a.group_kind) {
      out << "  group " << *a.group_kind << " m=" << a.group_m << "\n";
      out << "  irrep  dim  H1(F)  H2(P)  H0(F)  H1(P)  R2\n";
      for (const auto& r : a.irreps)
        out << "  " << std::left << std::setw(5) << r.label << std::right << std::setw(5) << r.dim
            << std::setw(7) << r.h1_force << std::setw(7) << r.h2_position << std::setw(7)
            << r.h0_force << std::setw(7) << r.h1_position << std::setw(4) << r.translations << "\n";
      for (const auto& e : a.euler)
        out << "  symmetric Euler (" << e.cosheaf << "): chains " << vec_str(e.chain)
            << " homology " << vec_str(e.homology) << "\n";
    }
    if (!a.merged.empty()) {
      for (const auto& m : a.merged) {
        out << "  merged {";
        for (std::size_t i = 0; i < m.irreps.size(); ++i) out << (i ? "," : "") << m.irreps[i];
        out << "}: " << m.stresses.size() << " real stresses, " << m.reciprocals.size()
            << " real reciprocals\n";
      }
    }
    return 0;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code(e.kind());
  }
}

int cmd_reciprocal(const ReciprocalArgs& args, std::ostream& out, std::ostream& err) {
  try {
    namespace fs = std::filesystem;
    const Tolerance tol = Tolerance::from_env();
    const FrameworkFile file = load_framework(args.path);
    const Framework& fw = file.framework;
    const GraphicStaticsSequence seq = build_graphic_statics_sequence(fw, tol);
    const GroupBlock block = file.group ? *file.group : trivial_group();
    const SymmetricStatics sym = build_symmetric_statics(seq, build_action(fw, block), tol);

    std::vector<int> wanted;
    if (args.irrep.empty()) {
      for (int j = 0; j < sym.table.size(); ++j) wanted.push_back(j);
    } else {
      wanted.push_back(sym.table.find(args.irrep));
    }
    const GraphicStaticsReport report = symmetric_graphic_statics(seq, sym, tol);

    const std::string dir = args.svg_dir.empty() ? "." : args.svg_dir;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create directory '" + dir + "'");
    const std::string stem = file.name.empty() ? fs::path(args.path).stem().string() : file.name;

    ordered_json doc;
    doc["schema_version"] = 1;
    doc["name"] = stem;
    doc["edge_ids"] = fw.complex->edge_ids;
    doc["face_ids"] = fw.complex->face_ids;
    ordered_json figures = ordered_json::array();
    for (int j : wanted) {
      const IrrepStatics& s = report.irreps[j];
      for (Index c = 0; c < s.reciprocals.dim(); ++c) {
        const Vector xi = fix_phase(s.reciprocals.basis.col(c));
        const Vector w = stress_from_reciprocal(seq, xi, tol);
        const std::string title = stem + "  irrep " + s.label + "  #" + std::to_string(c + 1);
        const SvgFigure fig = render_reciprocal(fw, w, xi, title);
        const std::string name = stem + "_" + s.label + "_" + std::to_string(c + 1) + ".svg";
        write_file_atomic((fs::path(dir) / name).string(), fig.svg);
        out << (fs::path(dir) / name).string() << "\n";

        ordered_json fj;
        fj["irrep"] = s.label;
        fj["index"] = c + 1;
        fj["svg"] = name;
        ordered_json re = ordered_json::array(), im = ordered_json::array();
        for (Index k = 0; k < xi.size(); ++k) {
          re.push_back(xi(k).real());
          im.push_back(xi(k).imag());
        }
        fj["reciprocal"] = ordered_json{{"re", re}, {"im", im}};
        ordered_json wre = ordered_json::array(), wim = ordered_json::array();
        for (Index k = 0; k < w.size(); ++k) {
          wre.push_back(w(k).real());
          wim.push_back(w(k).imag());
        }
        fj["stress"] = ordered_json{{"re", wre}, {"im", wim}};
        ordered_json drawn = ordered_json::array();
        for (const auto& p : fig.dual_positions) drawn.push_back(ordered_json::array({p.x(), p.y()}));
        fj["drawn_dual_positions"] = drawn;
        fj["primal_transform"] = fig.primal.to_json();
        fj["dual_transform"] = fig.dual.to_json();
        figures.push_back(fj);
      }
    }
    doc["figures"] = figures;
    const std::string json_path = (fs::path(dir) / (stem + "_reciprocals.json")).string();
    write_file_atomic(json_path, dump_deterministic(doc));
    out << json_path << "\n";
    return 0;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code(e.kind());
  }
}

namespace {

struct Checker {
  std::ostream& out;
  bool verbose;
  int code = 0;
  int passed = 0;
  int failed = 0;

  void record(const std::string& sample, const std::string& name, bool ok, const std::string& detail,
              int fail_code = 1) {
    if (ok) {
      ++passed;
      if (verbose) out << "[ok]   " << sample << ": " << name << "\n";
    } else {
      ++failed;
      code = std::max(code, fail_code);
      out << "[FAIL] " << sample << ": " << name << (detail.empty() ? "" : ": " + detail) << "\n";
    }
  }

  // Runs `body`; an exception counts as a failure of check `name`.
  void guard(const std::string& sample, const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const Error& e) {
      record(sample, name, false, e.what(), exit_code(e.kind()));
    } catch (const std::exception& e) {
      record(sample, name, false, e.what(), 3);
    }
  }
};

void check_expect(Checker& ck, const std::string& sample, const json& expect, const AnalysisOutput& a) {
  if (!expect.is_object()) return;
  auto scalar = [&](const char* key, std::optional<Index> got) {
    if (!expect.contains(key)) return;
    const Index want = expect[key].get<Index>();
    ck.record(sample, std::string("expected ") + key, got && *got == want,
              "got " + (got ? std::to_string(*got) : std::string("none")) + ", want " +
                  std::to_string(want));
  };
  scalar("h0_force", a.h0_force);
  scalar("h1_force", a.h1_force);
  scalar("h2_position", a.h2_position);
  scalar("h1_position", a.h1_position);
  auto by_irrep = [&](const char* key, auto field) {
    if (!expect.contains(key)) return;
    std::vector<int> got;
    for (const auto& r : a.irreps) got.push_back(int(r.*field));
    const auto want = expect[key].get<std::vector<int>>();
    ck.record(sample, std::string("expected ") + key, got == want,
              "got " + vec_str(got) + ", want " + vec_str(want));
  };
  by_irrep("h1_force_by_irrep", &IrrepRow::h1_force);
  by_irrep("h2_position_by_irrep", &IrrepRow::h2_position);
  if (expect.contains("chain_multiplicities_force")) {
    const json& cm = expect["chain_multiplicities_force"];
    for (auto it = cm.begin(); it != cm.end(); ++it) {
      const int deg = std::stoi(it.key());
      const auto want = it.value().get<std::vector<int>>();
      std::vector<int> got;
      if (!a.euler.empty()) got = a.euler[0].chain_multiplicity[deg];
      ck.record(sample, "expected force chain multiplicities in degree " + it.key(), got == want,
                "got " + vec_str(got) + ", want " + vec_str(want));
    }
  }
}

void selftest_sample(Checker& ck, const std::string& path, const Tolerance& tol) {
  namespace fs = std::filesystem;
  const std::string sample = fs::path(path).stem().string();
  FrameworkFile file;
  try {
    file = load_framework(path);
  } catch (const Error& e) {
    ck.record(sample, "load", false, e.what(), exit_code(e.kind()));
    return;
  }
  ck.record(sample, "load", true, "");
  const Framework& fw = file.framework;
  const auto& cx = *fw.complex;

  ck.record(sample, "signed incidence axioms", validate(cx).empty(), "");
  const auto crossings = check_planarity(fw);
  ck.record(sample, "planar embedding", crossings.empty(),
            std::to_string(crossings.size()) + " crossing pair(s)");
  ck.guard(sample, "Maxwell rule", [&] {
    const MaxwellCount m = maxwell_check(fw, tol);
    ck.record(sample, "Maxwell rule", m.lhs == m.rhs, "");
  });
  if (!is_sphere_closed(cx)) return;

  ck.guard(sample, "graphic statics sequence", [&] {
    const GraphicStaticsSequence seq = build_graphic_statics_sequence(fw, tol);
    const std::pair<const char*, const ChainComplex*> chains[] = {
        {"F", &seq.force_chain}, {"R2", &seq.constant_chain}, {"P", &seq.position_chain}};
    for (const auto& [nm, ch] : chains) {
      int hom = 0;
      for (int i = 0; i < 3; ++i) hom += (i % 2 ? -1 : 1) * int(homology(*ch, i, tol).dim());
      ck.record(sample, std::string("Euler identity for ") + nm, hom == ch->euler(),
                std::to_string(hom) + " vs " + std::to_string(ch->euler()));
    }
    const HomologyBasis h1 = homology(seq.force_chain, 1, tol);
    const HomologyBasis h2 = reciprocal_space(seq, tol);
    ck.record(sample, "dim H2(P) = dim H1(F) + 2", h2.dim() == h1.dim() + 2,
              std::to_string(h2.dim()) + " vs " + std::to_string(h1.dim()));
    double worst = 0.0, parallel = 0.0;
    for (Index c = 0; c < h1.dim(); ++c) {
      const Vector w = h1.representatives.basis.col(c);
      const Vector xi = reciprocal_from_stress(fw, w, tol);
      parallel = std::max(parallel, parallelism_defect(fw, xi));
      worst = std::max(worst, (stress_from_reciprocal(seq, xi, tol) - w).norm() / w.norm());
    }
    ck.record(sample, "stress -> reciprocal -> stress round trip", worst <= 1e-8,
              "relative error " + std::to_string(worst));
    ck.record(sample, "reciprocal parallelism", parallel <= 1e-8 * std::max(1.0, fw.diameter()),
              "defect " + std::to_string(parallel));

    if (!file.group) return;
    const SymmetricStatics sym = build_symmetric_statics(seq, build_action(fw, *file.group), tol);
    ck.record(sample, "action sign coherence", check_action(*sym.action).empty(), "");
    for (const auto* rep : {&sym.force_rep, &sym.constant_rep, &sym.position_rep}) {
      const auto rr = verify_equivariance(*rep, tol);
      ck.record(sample, "equivariance", rr.ok(), rr.ok() ? "" : rr.failures.front());
    }
    const double cube = std::max(map_equivariance_error(seq.phi, sym.force_rep, sym.constant_rep),
                                 map_equivariance_error(seq.quotient.pi, sym.constant_rep, sym.position_rep));
    ck.record(sample, "equivariant maps commute", cube <= 1e-9, "defect " + std::to_string(cube));
    symmetric_graphic_statics(seq, sym, tol);
    ck.record(sample, "per-irrep counts and symmetric Euler", true, "");
  });

  ck.guard(sample, "expected counts", [&] {
    const AnalysisOutput a = analyze(file, {true, false}, tol);
    check_expect(ck, sample, file.expect, a);
  });
}

}  // namespace

int cmd_selftest(const SelftestArgs& args, std::ostream& out, std::ostream& err) {
  namespace fs = std::filesystem;
  const std::string dir = args.samples_dir.empty() ? default_sample_dir() : args.samples_dir;
  Tolerance tol;
  try {
    tol = Tolerance::from_env();
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code(e.kind());
  }
  std::vector<std::string> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec))
    if (entry.path().extension() == ".json") files.push_back(entry.path().string());
  if (ec || files.empty()) {
    err << "no sample files found in '" << dir << "'\n";
    return 2;
  }
  std::sort(files.begin(), files.end());
  Checker ck{out, args.verbose};
  for (const auto& f : files) selftest_sample(ck, f, tol);
  out << ck.passed << " checks passed, " << ck.failed << " failed\n";
  return ck.code;
}

}  // namespace eqgs
