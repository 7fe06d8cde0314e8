// qlw: build loop representations and run the exact verification suites.
//
// Exit status: 0 when every check passes, 1 when a check fails, 2 on bad
// input (arguments, files, parse errors).

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qlw/cp_engine.hpp"
#include "qlw/io.hpp"
#include "qlw/ktheory.hpp"
#include "qlw/loop_rep.hpp"
#include "qlw/qnumbers.hpp"
#include "qlw/qweyl.hpp"

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

enum Exit { kPass = 0, kFail = 1, kBadInput = 2 };

struct Globals {
  std::string format = "json";
  std::string output;
  std::string scalar = "symbolic";
  std::optional<std::size_t> order;
  std::optional<int> window;
  std::optional<qlw::NumericQ> q0;
};

// Input problems that map to exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::optional<qlw::NumericQ> resolve_scalar_mode(const Globals& g) {
  if (g.scalar == "symbolic") return std::nullopt;
  const std::string prefix = "rational:";
  if (g.scalar.rfind(prefix, 0) != 0) throw UsageError("--scalar must be 'symbolic' or 'rational:q0'");
  mpq_class q0;
  if (q0.set_str(g.scalar.substr(prefix.size()), 10) != 0) throw UsageError("cannot parse q0 in --scalar " + g.scalar);
  q0.canonicalize();
  std::cerr << "qlw: numeric q = " << q0.get_str() << "; avoiding roots of unity is the caller's responsibility\n";
  return qlw::NumericQ::checked(q0);
}

qlw::ScalarQ parse_scalar(const std::string& text, const Globals& g) {
  qlw::ScalarQ s = qlw::ScalarQ::parse(text);
  if (g.q0) return qlw::ScalarQ(s.evaluate(g.q0->value));
  return s;
}

qlw::RepOptions rep_options(const Globals& g) {
  qlw::RepOptions o;
  if (g.window) {
    if (*g.window < 1) throw UsageError("--window must be at least 1");
    o.k_min = -*g.window;
    o.k_max = *g.window;
  }
  return o;
}

std::size_t series_order(const Globals& g) {
  if (g.order) return *g.order;
  if (const char* env = std::getenv("QLW_DEFAULT_ORDER")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("QLW_DEFAULT_ORDER must be a positive integer, got '") + env + "'");
  }
  return 0;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

qlw::LoopRep load_rep(const std::string& path, const Globals& g) { return qlw::rep_from_json(read_json(path), rep_options(g)); }

void emit(const std::string& text, const Globals& g) {
  if (g.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.output);
  if (!out) throw UsageError("cannot write " + g.output);
  out << text;
}

json rep_descriptor(const qlw::LoopRep& rep, const std::string& source) {
  json d = {{"dim", rep.dim()},
            {"q", qlw::scalar_to_json(rep.q)},
            {"weights", rep.space.weights},
            {"window", {rep.k_min, rep.k_max}},
            {"meta", rep.meta}};
  if (!source.empty()) d["source"] = source;
  return d;
}

int finish(const std::string& command, const json& input, const qlw::Report& report, const json& result,
           double seconds, const Globals& g) {
  const bool ok = report.passed();
  if (g.format == "text") {
    std::ostringstream os;
    os << "qlw " << command << ": " << (ok ? "PASS" : "FAIL") << "\n" << report.to_text();
    if (!result.is_null()) os << "result: " << result.dump() << "\n";
    emit(os.str(), g);
  } else {
    json out = {{"tool", "qlw"},
                {"version", kVersion},
                {"command", command},
                {"input", input},
                {"checks", report.to_json()},
                {"summary",
                 {{"pass", report.count(qlw::CheckStatus::pass)},
                  {"fail", report.count(qlw::CheckStatus::fail)},
                  {"skipped", report.count(qlw::CheckStatus::skipped)}}},
                {"status", ok ? "pass" : "fail"},
                {"timing_seconds", seconds}};
    if (!result.is_null()) out["result"] = result;
    emit(out.dump(2) + "\n", g);
  }
  return ok ? kPass : kFail;
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int write_rep(const qlw::LoopRep& rep, const Globals& g) {
  emit(qlw::rep_to_json(rep).dump(2) + "\n", g);
  return kPass;
}

int run_verify(const std::string& kind, const std::string& file, const std::vector<std::string>& zetas, const Globals& g) {
  const auto t0 = std::chrono::steady_clock::now();
  const qlw::LoopRep rep = load_rep(file, g);
  const std::size_t order = series_order(g);
  json input = rep_descriptor(rep, file);
  if (order) input["order"] = order;
  qlw::Report report;
  json result = nullptr;
  if (kind == "relations") {
    report = qlw::check_relations(rep);
    report.merge(qlw::check_km_relations(qlw::beck_km_generators(rep), rep.q));
  } else if (kind == "weyl") {
    report = qlw::verify_weyl(rep);
    result = {{"lattice", qlw::matrix_to_json(qlw::lattice_operator(rep).matrix)}};
  } else if (kind == "cp") {
    report = qlw::verify_cp(rep, order);
  } else if (kind == "theorem") {
    report = qlw::verify_main_theorem(rep, order);
    result = {{"lattice", qlw::matrix_to_json(qlw::lattice_operator(rep).matrix)}};
  } else if (kind == "kernel") {
    report = qlw::verify_kernel_identities(rep, order);
  } else if (kind == "euler") {
    auto e = qlw::euler_transform(rep, order);
    report = e.report;
    result = {{"limit", qlw::matrix_to_json(e.limit)}};
  } else if (kind == "eigen") {
    report = qlw::verify_eigenvalues(rep, order);
  } else if (kind == "shift") {
    json zs = json::array();
    for (const auto& z : zetas) {
      const qlw::ScalarQ zeta = parse_scalar(z, g);
      if (zeta.is_zero()) throw UsageError("--zeta must be nonzero");
      report.merge(qlw::verify_shift_covariance(rep, zeta));
      zs.push_back(zeta.to_string());
    }
    input["zeta"] = zs;
  }
  return finish("verify " + kind, input, report, result, since(t0), g);
}

int run_ktheory(const std::string& file, const std::optional<std::size_t>& node, const Globals& g) {
  const auto t0 = std::chrono::steady_clock::now();
  const json j = read_json(file);
  const qlw::QuiverInstance inst = qlw::quiver_from_json(j);
  std::vector<std::size_t> nodes;
  if (node) {
    if (*node >= inst.cartan.size()) throw UsageError("--node is out of range");
    nodes.push_back(*node);
  } else {
    for (std::size_t k = 0; k < inst.cartan.size(); ++k) nodes.push_back(k);
  }
  const std::size_t order = series_order(g) ? series_order(g) : 12;
  qlw::Report report;
  json lines = json::array();
  for (std::size_t k : nodes) {
    report.merge(qlw::verify_nakajima_node(inst, k, order));
    const auto ck = qlw::complex_Ck(inst, k);
    const auto line = qlw::nakajima_lattice(inst, k);
    lines.push_back({{"node", k},
                     {"rank", ck.rank()},
                     {"psi", qlw::nakajima_psi(ck).to_string()},
                     {"line", line.from_formula.to_string()}});
  }
  json input = {{"source", file}, {"nodes", nodes}, {"order", order}, {"instance", j}};
  return finish("ktheory", input, report, {{"nodes", lines}}, since(t0), g);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact workbench for loop representations of U_q(sl_2) and their lattice operators"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("-o,--output", g.output, "Write to this file instead of stdout");
  app.add_option("--scalar", g.scalar, "Scalar mode: symbolic or rational:q0");
  app.add_option("--order", g.order, "Series order (default 2 dim + 9, or QLW_DEFAULT_ORDER)")->check(CLI::PositiveNumber);
  app.add_option("--window", g.window, "Mode window [-w, w] (default 3)");

  // rep
  auto* rep = app.add_subcommand("rep", "Build or transform a representation file");
  rep->require_subcommand(1);
  int n = 0;
  std::string a = "1";
  auto* rep_eval = rep->add_subcommand("eval", "Evaluation module L_n(a)");
  rep_eval->add_option("--n", n, "Highest weight")->required()->check(CLI::NonNegativeNumber);
  rep_eval->add_option("--a", a, "Evaluation parameter");
  std::vector<std::string> sum_files;
  auto* rep_sum = rep->add_subcommand("sum", "Direct sum of representation files");
  rep_sum->add_option("files", sum_files, "Summands")->required()->expected(2, -1);
  std::string zeta = "q";
  std::string in_file;
  auto* rep_twist = rep->add_subcommand("twist", "Twist by the shift automorphism z -> zeta z");
  rep_twist->add_option("--zeta", zeta, "Twist parameter")->required();
  rep_twist->add_option("file", in_file, "Representation file")->required();
  auto* rep_load = rep->add_subcommand("load", "Validate a representation file and write it back");
  rep_load->add_option("file", in_file, "Representation file")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->require_subcommand(1);
  std::string verify_file;
  std::vector<std::string> zetas = {"q", "-1", "2"};
  std::vector<std::pair<std::string, CLI::App*>> suites;
  for (const char* kind : {"relations", "weyl", "cp", "theorem", "kernel", "euler", "eigen", "shift"}) {
    auto* sub = verify->add_subcommand(kind);
    sub->add_option("file", verify_file, "Representation file")->required();
    if (std::string(kind) == "shift") sub->add_option("--zeta", zetas, "Twist parameters");
    suites.emplace_back(kind, sub);
  }
  suites[0].second->description("Loop relations on the window and affine Serre relations");
  suites[1].second->description("Weyl operators, closed form and lattice conjugation");
  suites[2].second->description("Series, difference equation, straightening, rationality and the constant C");
  suites[3].second->description("S1^-1 S0^-1 = (-q)^-H0 C");
  suites[4].second->description("Identities on Ker E_-1 and the left-ideal property");
  suites[5].second->description("Euler transform and its value at t = 1");
  suites[6].second->description("Spectra of psi and the lattice operator from characters");
  suites[7].second->description("Lattice operator under shift twists");
  int rmax = 8;
  int ymax = 8;
  auto* qpascal = verify->add_subcommand("qpascal", "q-Pascal expansion and alternating-sum identities");
  qpascal->add_option("--rmax", rmax, "Largest r")->check(CLI::NonNegativeNumber);
  qpascal->add_option("--ymax", ymax, "Largest y")->check(CLI::NonNegativeNumber);

  // ktheory
  std::string quiver_file;
  std::optional<std::size_t> node;
  auto* kt = app.add_subcommand("ktheory", "Tautological complex, psi action and determinant line of a quiver instance");
  kt->add_option("file", quiver_file, "Quiver instance file")->required();
  kt->add_option("--node", node, "Node index (default: all nodes)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    g.q0 = resolve_scalar_mode(g);
    if (rep_eval->parsed()) {
      const qlw::ScalarQ q = g.q0 ? qlw::ScalarQ(g.q0->value) : qlw::ScalarQ::q();
      const qlw::ScalarQ av = parse_scalar(a, g);
      if (av.is_zero()) throw UsageError("--a must be nonzero");
      return write_rep(qlw::eval_module(n, av, rep_options(g), q), g);
    }
    if (rep_sum->parsed()) {
      qlw::LoopRep acc = load_rep(sum_files[0], g);
      for (std::size_t i = 1; i < sum_files.size(); ++i) acc = qlw::direct_sum(acc, load_rep(sum_files[i], g));
      return write_rep(acc, g);
    }
    if (rep_twist->parsed()) {
      const qlw::LoopRep base = load_rep(in_file, g);
      const qlw::ScalarQ z = parse_scalar(zeta, g);
      if (z.is_zero()) throw UsageError("--zeta must be nonzero");
      return write_rep(qlw::shift_twist(base, z), g);
    }
    if (rep_load->parsed()) return write_rep(load_rep(in_file, g), g);
    for (const auto& [kind, sub] : suites) {
      if (sub->parsed()) return run_verify(kind, verify_file, zetas, g);
    }
    if (qpascal->parsed()) {
      const auto t0 = std::chrono::steady_clock::now();
      qlw::Report report = qlw::verify_qpascal_identities(rmax, ymax);
      return finish("verify qpascal", {{"rmax", rmax}, {"ymax", ymax}}, report, nullptr, since(t0), g);
    }
    if (kt->parsed()) return run_ktheory(quiver_file, node, g);
  } catch (const qlw::RelationError& e) {
    std::cerr << "qlw: " << e.what() << "\n";
    return finish("relations", nullptr, e.report(), nullptr, 0.0, g);
  } catch (const UsageError& e) {
    std::cerr << "qlw: " << e.what() << "\n";
    return kBadInput;
  } catch (const qlw::InputError& e) {
    std::cerr << "qlw: invalid input: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "qlw: invalid argument: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "qlw: error: " << e.what() << "\n";
    return kFail;
  }
  return kBadInput;
}
