#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "forminv/bench.hpp"
#include "forminv/flow.hpp"
#include "forminv/inversion.hpp"
#include "forminv/io.hpp"
#include "forminv/trees.hpp"

namespace forminv::cli {

namespace {

struct Common {
  std::string map_path;
  int deg = 0;
  std::string format = "text";
  unsigned threads = 1;
};

void add_common(CLI::App* cmd, Common& c, bool needs_map = true) {
  if (needs_map) cmd->add_option("--map", c.map_path, "Map document (default: read stdin)");
  cmd->add_option("--deg", c.deg, "Truncation degree (default: the document's D)")->check(CLI::Range(1, 127));
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--threads", c.threads, "Worker threads for parallel-safe steps")->check(CLI::Range(1u, 256u));
}

MapDocument load(const Common& c, std::istream& in) {
  std::string text;
  if (c.map_path.empty() || c.map_path == "-") {
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  } else {
    text = read_file(c.map_path);
  }
  return parse_map_document(text);
}

int degree_of(const Common& c, const MapDocument& doc) { return c.deg > 0 ? c.deg : doc.degree; }

void print_map(std::ostream& out, const Common& c, const std::string& title, const PolyMap& m, int deg) {
  if (c.format == "json")
    out << serialize(make_document(m, deg));
  else
    out << title << "\n" << to_string(m);
}

int finish(std::ostream& out, const Common& c, const Report& r) {
  out << (c.format == "json" ? r.to_json() : r.to_text());
  return r.passed() ? kExitOk : kExitVerifyFailed;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) parts.push_back(item);
  return parts;
}

int cmd_invert(const Common& c, const std::string& method, std::istream& in, std::ostream& out) {
  const MapDocument doc = load(c, in);
  const MapF f = MapF::from_map(doc.map);
  const int deg = degree_of(c, doc);
  if (method == "all") {
    CrossCheck cc = cross_check(f, deg, all_methods(), c.threads);
    print_map(out, c, "G through degree " + std::to_string(deg) + ":", cc.g, deg);
    if (c.format == "text") {
      out << cc.report.to_text();
      if (cc.agree()) {
        std::string names;
        for (const auto& r : cc.results) names += (names.empty() ? "" : ", ") + std::string(method_name(r.method));
        out << "all methods agree (" << names << ")\n";
      }
    }
    return cc.agree() ? kExitOk : kExitVerifyFailed;
  }
  const PolyMap g = invert(parse_method(method), f, deg, c.threads);
  print_map(out, c, "G through degree " + std::to_string(deg) + " (" + method + "):", g, deg);
  return kExitOk;
}

int cmd_verify(const Common& c, const std::string& suite, const std::string& u0_path, int s_order, int t_order,
               std::istream& in, std::ostream& out) {
  const MapDocument doc = load(c, in);
  const MapF f = MapF::from_map(doc.map);
  const int deg = degree_of(c, doc);
  const int n = f.nvars();
  auto u0 = [&] {
    if (!u0_path.empty()) {
      MapDocument u = parse_map_document(read_file(u0_path));
      if (u.nvars() != n) throw std::invalid_argument("--u0 map has a different dimension");
      return u.map;
    }
    std::vector<MSeries> sq;
    for (int i = 0; i < n; ++i) {
      MSeries zi = MSeries::variable(n, i);
      sq.push_back(zi * zi);
    }
    return PolyMap(std::move(sq));
  };
  auto run = [&](const std::string& name) -> Report {
    if (name == "pde") return check_pde(f, deg);
    if (name == "lemma31") return check_lemma31(f, deg);
    if (name == "newp") return check_newp(f.h(), deg);
    if (name == "bcw") return check_bcw_quadratic_nilpotent(f.h(), deg);
    if (name == "prop310") return check_prop310(f, deg, s_order, t_order);
    if (name == "gpde") return check_gpde(u0(), f.h(), deg);
    if (name == "euler") return check_euler_identities(f.h(), deg);
    SymmetryResult s = symmetry_detector(f.h());
    Report r("symmetry");
    r.note(s.note);
    return r;
  };
  if (suite != "all") return finish(out, c, run(suite));
  Report all("verify");
  const bool homogeneous = f.h().is_zero() || homogeneous_degree(f.h()).has_value();
  for (const char* name : {"pde", "lemma31", "newp", "bcw", "prop310", "gpde", "euler", "symmetry"}) {
    if (!homogeneous && (std::string(name) == "bcw" || std::string(name) == "euler")) {
      all.skip(name, "H is not homogeneous");
      continue;
    }
    all.merge(run(name));
  }
  return finish(out, c, all);
}

int cmd_flow(const Common& c, const std::string& t, std::istream& in, std::ostream& out) {
  const MapDocument doc = load(c, in);
  const MapF f = MapF::from_map(doc.map);
  const int deg = degree_of(c, doc);
  const TMap flow = formal_flow(f, deg, c.threads);
  if (t == "t") {
    if (c.format == "json") throw std::invalid_argument("json output needs a rational --t");
    out << "F(z; t) through degree " << deg << ":\n" << to_string(flow);
    return kExitOk;
  }
  Rat value;
  try {
    value = parse_rat(t);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("--t must be a rational or the literal t");
  }
  print_map(out, c, "F(z; " + to_string(value) + ") through degree " + std::to_string(deg) + ":",
            evaluate_t(flow, value), deg);
  return kExitOk;
}

int cmd_power(const Common& c, int m, std::istream& in, std::ostream& out) {
  const MapDocument doc = load(c, in);
  const MapF f = MapF::from_map(doc.map);
  const int deg = degree_of(c, doc);
  print_map(out, c, "F^[" + std::to_string(m) + "] through degree " + std::to_string(deg) + ":", power_map(f, m, deg),
            deg);
  return kExitOk;
}

int cmd_trees(const Common& c, int max_size, std::ostream& out) {
  const auto levels = enumerate_trees(max_size);
  std::size_t count = 0;
  if (c.format == "json") {
    out << "[\n";
    bool first = true;
    for (const auto& level : levels)
      for (const auto& t : level) {
        out << (first ? "" : ",\n") << "  {\"size\": " << t.size() << ", \"code\": \"" << t.code()
            << "\", \"aut\": " << t.aut_order().get_str() << ", \"order_polynomial\": \""
            << to_string(order_polynomial(t), "t") << "\"}";
        first = false;
      }
    out << "\n]\n";
    return kExitOk;
  }
  out << "size  |Aut|  code  order polynomial\n";
  for (const auto& level : levels)
    for (const auto& t : level) {
      out << t.size() << "  " << t.aut_order().get_str() << "  " << t.code() << "  "
          << to_string(order_polynomial(t), "t") << "\n";
      ++count;
    }
  out << count << " trees\n";
  return kExitOk;
}

int cmd_probe(const Common& c, int layers, std::istream& in, std::ostream& out) {
  const MapDocument doc = load(c, in);
  const MapF f = MapF::from_map(doc.map);
  ProbeResult p = polynomiality_probe(f.h(), layers);
  if (c.format == "json") {
    out << p.report.to_json();
  } else {
    out << p.report.to_text();
    for (int m = 1; m <= p.layers; ++m) out << "N_[" << m << "]: " << p.layer_terms[m - 1] << " terms\n";
    out << "last nonzero layer: " << p.last_nonzero << " of " << p.layers << "\n";
  }
  return kExitOk;
}

std::vector<int> parse_degrees(const std::string& range, int step) {
  if (step < 1) throw std::invalid_argument("--step must be >= 1");
  auto dots = range.find("..");
  std::vector<int> degrees;
  try {
    if (dots == std::string::npos) {
      for (const auto& part : split(range, ',')) degrees.push_back(std::stoi(part));
    } else {
      int a = std::stoi(range.substr(0, dots));
      int b = std::stoi(range.substr(dots + 2));
      for (int d = a; d <= b; d += step) degrees.push_back(d);
    }
  } catch (const std::logic_error&) {
    throw std::invalid_argument("--deg-range must look like A..B or a comma list");
  }
  if (degrees.empty()) throw std::invalid_argument("--deg-range selects no degrees");
  for (int d : degrees)
    if (d < 1 || d > 127) throw std::invalid_argument("bench degrees must be in [1, 127]");
  return degrees;
}

int cmd_bench(const Common& c, const std::string& range, int step, const std::string& methods, int repeats,
              bool parallel, const std::string& csv_path, std::istream& in, std::ostream& out) {
  BenchOptions opt;
  opt.degrees = parse_degrees(range, step);
  opt.methods.clear();
  for (const auto& name : split(methods, ',')) {
    if (name == "all") {
      opt.methods = all_methods();
      break;
    }
    opt.methods.push_back(parse_method(name));
  }
  if (opt.methods.empty()) throw std::invalid_argument("--methods is empty");
  opt.repeats = repeats;
  opt.threads = parallel ? std::max(1u, std::thread::hardware_concurrency()) : c.threads;

  std::vector<BenchInput> inputs;
  if (c.map_path.empty()) {
    inputs.push_back({"dense-cubic-n3", MapF::from_h(dense_homogeneous(3, 3, 20240607))});
  } else {
    const MapDocument doc = load(c, in);
    std::string id = c.map_path == "-" ? "stdin" : c.map_path.substr(c.map_path.find_last_of('/') + 1);
    inputs.push_back({id, MapF::from_map(doc.map)});
  }
  BenchResult result;
  try {
    result = run_bench(inputs, opt);
  } catch (const BenchDisagreement& e) {
    out << "benchmark aborted: " << e.what() << "\n";
    return kExitVerifyFailed;
  }
  const std::string csv = bench_csv(result.records);
  if (!csv_path.empty()) {
    std::ofstream f(csv_path);
    if (!f) throw std::invalid_argument("cannot write " + csv_path);
    f << csv;
  }
  out << (c.format == "json" ? csv : bench_table(result.records));
  for (const auto& n : result.notes) out << "note: " << n << "\n";
  if (c.format == "text") out << "all methods hash-agree\n";
  return kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in) {
  CLI::App app{"Formal inverses of maps z - H(z) over the rationals", "forminv"};
  app.require_subcommand(1);
  Common common;

  std::string method = "all";
  auto* invert_cmd = app.add_subcommand("invert", "Compute the formal inverse G");
  add_common(invert_cmd, common);
  invert_cmd->add_option("--method", method, "fixed|recurrent|homog|ag|bcw|jacobi|lagrange|all")
      ->check(CLI::IsMember({"fixed", "recurrent", "homog", "ag", "bcw", "jacobi", "lagrange", "all"}));

  std::string suite = "all", u0_path;
  int s_order = 3, t_order = 3;
  auto* verify_cmd = app.add_subcommand("verify", "Check identities of the deformation z - tH");
  add_common(verify_cmd, common);
  verify_cmd->add_option("--suite", suite, "lemma31|newp|bcw|prop310|gpde|euler|pde|symmetry|all")
      ->check(CLI::IsMember({"lemma31", "newp", "bcw", "prop310", "gpde", "euler", "pde", "symmetry", "all"}));
  verify_cmd->add_option("--u0", u0_path, "Initial map for the gpde suite (default: z_i^2)");
  verify_cmd->add_option("--s-order", s_order, "s truncation for prop310")->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--t-order", t_order, "t truncation for prop310")->check(CLI::NonNegativeNumber);

  std::string t_value = "t";
  auto* flow_cmd = app.add_subcommand("flow", "Formal flow F(z; t)");
  add_common(flow_cmd, common);
  flow_cmd->add_option("--t", t_value, "A rational value, or t for the symbolic flow");

  int power = 2;
  auto* power_cmd = app.add_subcommand("power", "Integer power F^[m]");
  add_common(power_cmd, common);
  power_cmd->add_option("--m", power, "Exponent (negative uses the inverse)")->required();

  int max_size = 5;
  auto* trees_cmd = app.add_subcommand("trees", "List rooted trees with |Aut| and order polynomials");
  add_common(trees_cmd, common, false);
  trees_cmd->add_option("--max-size", max_size, "Largest tree size")->check(CLI::Range(1, 12));

  int layers = 8;
  auto* probe_cmd = app.add_subcommand("probe", "Where do the layers of N_t stop (nilpotent homogeneous H)");
  add_common(probe_cmd, common);
  probe_cmd->add_option("--layers", layers, "Layer bound M")->check(CLI::Range(1, 60));

  std::string range = "4..10", methods = "recurrent,homog,ag,bcw", csv_path;
  int step = 2, repeats = 3;
  bool parallel = false;
  auto* bench_cmd = app.add_subcommand("bench", "Time the inversion methods against each other");
  add_common(bench_cmd, common);
  bench_cmd->add_option("--deg-range", range, "Degrees: A..B (with --step) or a comma list");
  bench_cmd->add_option("--step", step, "Step for A..B ranges");
  bench_cmd->add_option("--methods", methods, "Comma-separated methods, or all");
  bench_cmd->add_option("--repeats", repeats, "Runs per measurement (median is reported)")->check(CLI::Range(1, 99));
  bench_cmd->add_option("--csv", csv_path, "Also write the CSV here");
  bench_cmd->add_flag("--parallel", parallel, "Use all hardware threads where the library allows it");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*invert_cmd) return cmd_invert(common, method, in, out);
    if (*verify_cmd) return cmd_verify(common, suite, u0_path, s_order, t_order, in, out);
    if (*flow_cmd) return cmd_flow(common, t_value, in, out);
    if (*power_cmd) return cmd_power(common, power, in, out);
    if (*trees_cmd) return cmd_trees(common, max_size, out);
    if (*probe_cmd) return cmd_probe(common, layers, in, out);
    if (*bench_cmd) return cmd_bench(common, range, step, methods, repeats, parallel, csv_path, in, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace forminv::cli
