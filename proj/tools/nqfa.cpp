// nqfa: build finite quantum groups, verify their structure theory, and run
// the Fejer / bimodule / Fubini checkers from the command line.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 input or construction
// error. Reports are deterministic for a fixed seed: ordered keys, no
// timestamps, atomic writes.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nqfa/suites.hpp"

namespace fs = std::filesystem;
using namespace nqfa;

namespace {

struct RunConfig {
  std::string group = "trivial";
  std::string side = "function";
  std::string action;
  std::string ideal = "enumerate";
  std::string x = "fixed";
  std::string suite = "all";
  double tol = 0;  // 0 = per-suite default
  std::uint64_t seed = 0;
  std::string out;
  std::string format;  // json|csv|text; commands pick their default
  std::string dump;
};

void write_output(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::cout << payload;
    if (!payload.empty() && payload.back() != '\n') std::cout << "\n";
    return;
  }
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error("cannot write " + tmp);
    out << payload;
  }
  fs::rename(tmp, path);
}

Json base_report(const char* command, const RunConfig& cfg) {
  Json j;
  j["schema"] = "nqfa/1";
  j["command"] = command;
  j["group"] = cfg.group;
  j["side"] = cfg.side;
  j["seed"] = cfg.seed;
  return j;
}

std::vector<std::string> suite_names(const std::string& selection) {
  if (selection == "all")
    return {"hopf", "pentagon", "peterweyl", "fejer", "bimodule", "fubini"};
  std::vector<std::string> names;
  std::stringstream ss(selection);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) names.push_back(item);
  return names;
}

int cmd_build(const RunConfig& cfg) {
  auto q = build_quantum_group(cfg.group, cfg.side);
  Json j = base_report("build", cfg);
  j["name"] = q->name();
  j["dim"] = q->dim();
  Json dims = Json::array();
  for (const auto& ir : q->peter_weyl()) dims.push_back(ir.n);
  j["irrep_dims"] = dims;
  j["dual_dim"] = q->dual()->dim();
  double worst = 0;
  Json residuals;
  for (const auto& [name, r] : q->residuals()) {
    residuals[name] = r < 1e-300 ? 0.0 : r;
    worst = std::max(worst, r);
  }
  j["residuals"] = residuals;
  j["max_residual"] = worst < 1e-300 ? 0.0 : worst;
  if (!cfg.dump.empty()) write_output(cfg.dump, q->structure_tensors_json());
  write_output(cfg.out, j.dump(2));
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  auto q = build_quantum_group(cfg.group, cfg.side);
  Json j = base_report("verify", cfg);
  Json run = run_suites(q, suite_names(cfg.suite), cfg.seed, cfg.tol);
  j["suites"] = run["suites"];
  j["pass"] = run["pass"];
  write_output(cfg.out, j.dump(2));
  return run["pass"].get<bool>() ? 0 : 1;
}

int cmd_fejer(const RunConfig& cfg) {
  auto q = build_quantum_group(cfg.group, cfg.side);
  Action action = build_action(q, cfg.action);
  CrossedProduct cp(action);
  Functional epshat = Functional::counit(q->dual());
  const auto& pw = q->peter_weyl();

  std::ostringstream csv;
  csv << "basis,band,partial_residual,final_residual\n";
  csv.precision(17);
  Json rows = Json::array();
  double final_worst = 0;
  for (Index mu = 0; mu < cp.dim(); ++mu) {
    const CMatrix& t = cp.raw(mu);
    std::vector<int> bands;
    double final_residual = cp.fejer_reconstruct(t).residual;
    final_worst = std::max(final_worst, final_residual);
    for (const auto& ir : pw) {
      bands.push_back(ir.index);
      double partial = (cp.fejer_partial(t, epshat, bands) - t).norm();
      csv << mu << "," << ir.index << "," << partial << "," << final_residual << "\n";
      Json row;
      row["basis"] = mu;
      row["band"] = ir.index;
      row["partial_residual"] = partial;
      row["final_residual"] = final_residual;
      rows.push_back(row);
    }
  }
  bool pass = final_worst <= (cfg.tol > 0 ? cfg.tol : 1e-8);
  if (cfg.format == "json") {
    Json j = base_report("fejer", cfg);
    j["action"] = cfg.action.empty() ? "trivial" : cfg.action;
    j["rows"] = rows;
    j["max_final_residual"] = final_worst < 1e-300 ? 0.0 : final_worst;
    j["pass"] = pass;
    write_output(cfg.out, j.dump(2));
  } else {
    write_output(cfg.out, csv.str());
  }
  return pass ? 0 : 1;
}

int cmd_bimodule(const RunConfig& cfg) {
  auto q = build_quantum_group(cfg.group, cfg.side);
  std::vector<LeftIdeal> ideals;
  if (cfg.ideal == "enumerate") {
    ideals = enumerate_ideals(q);
  } else if (cfg.ideal.rfind("random:", 0) == 0) {
    ideals = sample_ideals(q, std::stoi(cfg.ideal.substr(7)), cfg.seed);
  } else {
    std::ifstream in(cfg.ideal);
    if (!in) throw Error("cannot open ideal file: " + cfg.ideal);
    std::ostringstream os;
    os << in.rdbuf();
    auto jf = Json::parse(os.str());
    std::vector<Functional> gens;
    for (const auto& gen : jf.at("generators")) {
      CVector c(q->dim());
      for (Index i = 0; i < q->dim(); ++i)
        c(i) = Cplx(gen[static_cast<size_t>(i)][0].get<double>(),
                    gen[static_cast<size_t>(i)][1].get<double>());
      gens.emplace_back(q, c);
    }
    ideals.push_back(LeftIdeal::from_generators(q, gens));
  }
  Json j = base_report("bimodule", cfg);
  j["ideal"] = cfg.ideal;
  Json entries = Json::array();
  bool pass = true;
  for (const auto& ideal : ideals) {
    BimRanReport rep = check_bim_equals_ranperp(ideal);
    Json e;
    e["ideal_dim"] = rep.ideal_dim;
    e["annihilator_dim"] = rep.annihilator_dim;
    e["bim_dim"] = rep.bim_dim;
    e["ranperp_dim"] = rep.ranperp_dim;
    e["equal"] = rep.equal;
    entries.push_back(e);
    pass = pass && rep.equal && rep.trace_identity;
  }
  j["ideals"] = entries;
  j["pass"] = pass;
  write_output(cfg.out, j.dump(2));
  return pass ? 0 : 1;
}

int cmd_fubini(const RunConfig& cfg) {
  auto q = build_quantum_group(cfg.group, cfg.side);
  Action action = build_action(q, cfg.action.empty() ? "canonical" : cfg.action);
  CrossedProduct cp(action);
  MatSubspace x(action.target().k, action.target().k);
  if (cfg.x == "full") {
    std::vector<CMatrix> basis = action.target().basis;
    x = MatSubspace::span(basis);
  } else if (cfg.x == "fixed") {
    x = action.fixed_points();
  } else if (cfg.x.rfind("random", 0) == 0) {
    x = orbit_closure_subspace(action, cfg.seed);
  } else {
    std::ifstream in(cfg.x);
    if (!in) throw Error("cannot open subspace file: " + cfg.x);
    std::ostringstream os;
    os << in.rdbuf();
    auto jf = Json::parse(os.str());
    std::vector<CMatrix> basis;
    for (const auto& m : jf.at("basis")) basis.push_back(matrix_from_json(m.dump()));
    x = MatSubspace::span(basis);
  }
  SliceMapReport rep = slice_map_check(cp, x);
  Json j = base_report("fubini", cfg);
  j["action"] = cfg.action.empty() ? "canonical" : cfg.action;
  j["x"] = cfg.x;
  j["x_dim"] = x.dim();
  j["invariant"] = rep.invariant;
  j["span_dim"] = rep.span_dim;
  j["fubini_dim"] = rep.fubini_dim;
  j["contained"] = rep.contained;
  j["equal"] = rep.equal;
  j["reformulation"] = rep.reformulation_ok;
  bool pass = rep.invariant && rep.contained && rep.equal && rep.reformulation_ok;
  j["pass"] = pass;
  write_output(cfg.out, j.dump(2));
  return pass ? 0 : 1;
}

int cmd_report(const RunConfig& cfg) {
  std::string dir = cfg.out.empty() ? "." : cfg.out;
  std::vector<fs::path> files;
  if (fs::exists(dir))
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::ostringstream os;
  if (files.empty()) {
    os << "no runs\n";
    std::cout << os.str();
    return 0;
  }
  bool all_pass = true;
  for (const auto& f : files) {
    std::ifstream in(f);
    std::ostringstream buf;
    buf << in.rdbuf();
    Json j;
    try {
      j = Json::parse(buf.str());
    } catch (...) {
      continue;
    }
    if (!j.contains("schema")) continue;
    std::string cmd = j.value("command", "?");
    os << "== " << f.filename().string() << " (" << cmd << ", group " << j.value("group", "?")
       << ", side " << j.value("side", "?") << ")\n";
    if (cmd == "build") {
      os << "   dim " << j.value("dim", 0) << ", irrep dims " << j["irrep_dims"].dump()
         << ", max residual " << j.value("max_residual", 0.0) << "\n";
    } else if (j.contains("pass")) {
      bool p = j["pass"].get<bool>();
      all_pass = all_pass && p;
      os << "   " << (p ? "PASS" : "FAIL") << "\n";
    }
  }
  os << (all_pass ? "overall: PASS\n" : "overall: FAIL\n");
  std::cout << os.str();
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite quantum group toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--group", cfg.group, "builtin name or JSON file");
    sub->add_option("--side", cfg.side, "function|group");
    sub->add_option("--tol", cfg.tol, "tolerance override")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "seed for randomized checks");
    sub->add_option("--out", cfg.out, "output path (stdout when omitted)");
    sub->add_option("--format", cfg.format, "json|csv|text");
  };

  auto* build = app.add_subcommand("build", "construct and validate a quantum group");
  add_common(build);
  build->add_option("--dump", cfg.dump, "write structure tensors to this file");

  auto* verify = app.add_subcommand("verify", "run verification suites");
  add_common(verify);
  verify->add_option("--suite", cfg.suite,
                     "all or comma list of hopf,pentagon,peterweyl,fejer,bimodule,fubini");

  auto* fejer = app.add_subcommand("fejer", "per-element Fejer residual table");
  add_common(fejer);
  fejer->add_option("--action", cfg.action, "trivial[:k], canonical, or action file");

  auto* bimodule = app.add_subcommand("bimodule", "Bim/Ran-perp correspondence checks");
  add_common(bimodule);
  bimodule->add_option("--ideal", cfg.ideal, "file|enumerate|random:k");

  auto* fubini = app.add_subcommand("fubini", "Fubini crossed product / slice map checks");
  add_common(fubini);
  fubini->add_option("--action", cfg.action, "trivial[:k], canonical, or action file");
  fubini->add_option("--x", cfg.x, "random|fixed|full|file");

  auto* report = app.add_subcommand("report", "summarize prior JSON reports");
  report->add_option("--out", cfg.out, "directory holding report files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (build->parsed()) return cmd_build(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (fejer->parsed()) return cmd_fejer(cfg);
    if (bimodule->parsed()) return cmd_bimodule(cfg);
    if (fubini->parsed()) return cmd_fubini(cfg);
    if (report->parsed()) return cmd_report(cfg);
  } catch (const ValidationError& e) {
    std::cerr << "construction failed: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
