#include "CLI11.hpp"

#include "rdmom/fixtures.hpp"
#include "rdmom/problem_io.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace rdmom;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  return bool(out);
}

int parse_failed(const std::string& msg) {
  std::fprintf(stderr, "error: %s\n", msg.c_str());
  return 1;
}

std::optional<io::ProblemFile> load_problem(const std::string& path, int& rc) {
  auto text = read_file(path);
  if (!text) {
    rc = parse_failed("cannot read " + path);
    return std::nullopt;
  }
  auto parsed = io::parse_problem(*text);
  if (auto* err = std::get_if<io::ParseError>(&parsed)) {
    rc = parse_failed(path + ": " + err->message);
    return std::nullopt;
  }
  return std::get<io::ProblemFile>(std::move(parsed));
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

int run_analyze(const std::string& path, io::ReportOptions opts) {
  int rc = 0;
  auto prob = load_problem(path, rc);
  if (!prob) return rc;
  const auto t0 = std::chrono::steady_clock::now();

  const MomentMatrix m = build_moment_matrix(prob->moments, prob->degree / 2);
  io::AnalyzeData data;
  data.degree = prob->degree;
  data.psd = psd_check(m.mat());
  const std::size_t rk = rank(m.mat().mat());
  data.flat = m.degree() == 0
                  ? rk == 0
                  : rank(m.mat().leading(basis_size(m.degree() - 1)).mat()) == rk;
  data.relation_count = kernel_relations(m).size();
  data.rg = is_recursively_generated(m);
  data.profile = detect_rd(m);
  data.structure_violations = validate_structure(m.mat(), m.degree()).size();

  opts.command = "analyze";
  opts.elapsed_ms = ms_since(t0);
  std::fputs(io::analyze_report(data, opts).c_str(), stdout);
  return 0;
}

int run_chain_like(const std::string& path, io::ReportOptions opts,
                   std::optional<unsigned> max_steps, bool with_measure, double tol,
                   const std::string& plot_path) {
  int rc = 0;
  auto prob = load_problem(path, rc);
  if (!prob) return rc;
  const auto t0 = std::chrono::steady_clock::now();

  const MomentMatrix m = build_moment_matrix(prob->moments, prob->degree / 2);
  extend::ChainOptions copts;
  copts.max_steps = max_steps;
  if (const char* env = std::getenv("MOMENT_EXTEND_LOG"); env && *env && std::string(env) != "0")
    copts.log = [](const std::string& s) { std::fprintf(stderr, "[extend] %s\n", s.c_str()); };

  io::SolveData data;
  data.chain = extend::run_chain(m, copts);
  if (data.chain.profile) {
    data.variety = variety_count(*data.chain.profile);
    if (data.variety)
      data.variety_bound = 1 + long(*data.variety) - long(data.chain.start_rank);
  }

  MeasureReport meas;
  if (with_measure && data.chain.verdict == extend::Verdict::MeasureExists) {
    const MomentMatrix flat = build_moment_matrix(data.chain.final_beta, data.chain.flat_degree);
    meas = recover_measure(flat, prob->moments, *data.chain.profile, tol);
    data.measure = &meas;
    if (!plot_path.empty()) {
      std::string plot;
      char line[160];
      for (const Atom& a : meas.atoms) {
        std::snprintf(line, sizeof line, "%.12g %.12g %.12g\n", a.x, a.y, a.weight);
        plot += line;
      }
      if (!write_file(plot_path, plot)) return parse_failed("cannot write " + plot_path);
    }
  }

  opts.elapsed_ms = ms_since(t0);
  std::fputs(io::chain_report(data, opts).c_str(), stdout);
  return io::exit_code_for(data.chain.verdict);
}

std::optional<std::vector<Rat>> parse_rat_list(const std::string& csv) {
  std::vector<Rat> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto v = parse_rat(item);
    if (!v) return std::nullopt;
    out.push_back(*v);
  }
  if (out.empty()) return std::nullopt;
  return out;
}

int emit_generated(const MomentSequence& seq, unsigned degree, const std::string& out_path) {
  io::ProblemFile p{degree, seq};
  const std::string text = io::emit_problem(p);
  if (out_path.empty() || out_path == "-") {
    std::fputs(text.c_str(), stdout);
    return 0;
  }
  if (!write_file(out_path, text)) return parse_failed("cannot write " + out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"truncated moment sequences: decide representing measures through forced "
               "rank-preserving extensions"};
  app.require_subcommand(1);

  std::string file, out_path, plot_path;
  std::string format = "json";
  bool deterministic = false;
  unsigned max_steps_v = 0;
  double tol = 1e-9;

  auto* analyze = app.add_subcommand("analyze", "structural summary of the moment matrix");
  analyze->add_option("file", file, "problem JSON file")->required();
  analyze->add_option("--format", format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));
  analyze->add_flag("--deterministic", deterministic, "byte-stable output (zeroed timing)");

  auto* chain = app.add_subcommand("chain", "run the extension chain, report the verdict");
  chain->add_option("file", file, "problem JSON file")->required();
  chain->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  chain->add_flag("--deterministic", deterministic, "byte-stable output (zeroed timing)");
  auto* ms_opt = chain->add_option("--max-steps", max_steps_v, "extension step budget override");

  auto* solve = app.add_subcommand("solve", "chain plus measure recovery and verification");
  solve->add_option("file", file, "problem JSON file")->required();
  solve->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  solve->add_flag("--deterministic", deterministic, "byte-stable output (zeroed timing)");
  auto* ms_opt2 = solve->add_option("--max-steps", max_steps_v, "extension step budget override");
  solve->add_option("--tol", tol, "relative verification tolerance");
  solve->add_option("--emit-plot", plot_path, "write atoms as 'x y weight' lines");

  auto* gen = app.add_subcommand("gen", "generate problem files");
  gen->require_subcommand(1);
  std::string xs_csv, ys_csv, ws_csv, atoms_spec;
  unsigned gen_degree = 0;

  auto* ggrid = gen->add_subcommand("grid", "uniform product-grid measure");
  ggrid->add_option("--x-nodes", xs_csv, "comma separated x nodes (exact rationals)")->required();
  ggrid->add_option("--y-nodes", ys_csv, "comma separated y nodes")->required();
  ggrid->add_option("--weights", ws_csv, "optional weights, row major over the grid");
  ggrid->add_option("--degree", gen_degree, "moment degree (even)")->required();
  ggrid->add_option("-o,--output", out_path, "output file ('-' for stdout)");

  auto* gatoms = gen->add_subcommand("atoms", "finitely atomic measure");
  gatoms->add_option("--atoms", atoms_spec, "semicolon separated x,y,w triples")->required();
  gatoms->add_option("--degree", gen_degree, "moment degree (even)")->required();
  gatoms->add_option("-o,--output", out_path, "output file ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  io::ReportOptions opts;
  opts.deterministic = deterministic;
  opts.format = format;

  if (*analyze) return run_analyze(file, opts);
  if (*chain) {
    opts.command = "chain";
    return run_chain_like(file, opts,
                          ms_opt->count() ? std::optional<unsigned>(max_steps_v) : std::nullopt,
                          false, tol, "");
  }
  if (*solve) {
    opts.command = "solve";
    return run_chain_like(file, opts,
                          ms_opt2->count() ? std::optional<unsigned>(max_steps_v) : std::nullopt,
                          true, tol, plot_path);
  }

  if (*ggrid) {
    if (gen_degree < 2 || gen_degree % 2 != 0)
      return parse_failed("--degree must be an even integer >= 2");
    auto xs = parse_rat_list(xs_csv), ys = parse_rat_list(ys_csv);
    if (!xs || !ys) return parse_failed("cannot parse node lists");
    std::vector<Rat> ws;
    if (!ws_csv.empty()) {
      auto w = parse_rat_list(ws_csv);
      if (!w) return parse_failed("cannot parse weights");
      for (const Rat& v : *w)
        if (v <= 0) return parse_failed("weights must be positive");
      ws = *w;
    }
    try {
      const RatMeasure mu = grid_measure(*xs, *ys, ws);
      return emit_generated(moments_from_atoms(mu, gen_degree / 2), gen_degree, out_path);
    } catch (const std::exception& e) {
      return parse_failed(e.what());
    }
  }
  if (*gatoms) {
    if (gen_degree < 2 || gen_degree % 2 != 0)
      return parse_failed("--degree must be an even integer >= 2");
    RatMeasure mu;
    std::stringstream ss(atoms_spec);
    std::string triple;
    while (std::getline(ss, triple, ';')) {
      auto parts = parse_rat_list(triple);
      if (!parts || parts->size() != 3)
        return parse_failed("each atom must be three comma separated rationals: x,y,w");
      if ((*parts)[2] <= 0) return parse_failed("atom weights must be positive");
      for (const RatAtom& a : mu.atoms)
        if (a.x == (*parts)[0] && a.y == (*parts)[1])
          return parse_failed("duplicate atom location");
      mu.atoms.push_back({(*parts)[0], (*parts)[1], (*parts)[2]});
    }
    if (mu.atoms.empty()) return parse_failed("no atoms given");
    return emit_generated(moments_from_atoms(mu, gen_degree / 2), gen_degree, out_path);
  }
  return 1;
}
