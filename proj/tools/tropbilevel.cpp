#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "tropbilevel/bilevel.hpp"
#include "tropbilevel/errors.hpp"
#include "tropbilevel/instance_io.hpp"
#include "tropbilevel/lp/lp_format.hpp"
#include "tropbilevel/svg.hpp"

using namespace tropbilevel;

namespace {

enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kInfeasible = 2,
  kBudget = 3,
  kUnsupported = 4,
  kNotVerified = 5,
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string indices_text(const std::vector<std::size_t>& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k] + 1);
  return out + "}";
}

struct SolveArgs {
  std::string input;
  std::string algorithm = "auto";
  std::string output = "text";
  unsigned threads = 1;
  bool joint = false;
  bool no_prune = false;
  std::uint64_t budget = 1'000'000;
};

int cmd_solve(const SolveArgs& args) {
  auto inst = io::load_instance(args.input);
  auto algorithm = parse_algorithm(args.algorithm);
  if (!algorithm) throw UsageError("unknown algorithm " + args.algorithm);
  SolverOptions options;
  options.threads = args.threads;
  options.joint_pieces = args.joint;
  options.enumerate.prune = !args.no_prune;
  options.enumerate.budget = args.budget;
  auto sol = solve(inst, *algorithm, options);
  if (args.output == "json") {
    std::cout << io::solution_to_json(inst, sol).dump(2) << "\n";
  } else {
    std::cout << "variant: " << to_string(inst.variant) << "\n"
              << "method: " << to_string(sol.method) << "\n"
              << "x = " << sol.x << "\n"
              << "y = " << sol.y << "\n"
              << "value = " << sol.value << "\n"
              << "certificate: " << io::describe_certificate(sol.certificate) << "\n";
  }
  return kOk;
}

int cmd_verify(const std::string& input, const std::string& xs, const std::string& ys) {
  auto inst = io::load_instance(input);
  TropVector x, y;
  try {
    x = io::parse_vector(xs);
    y = io::parse_vector(ys);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("bad vector: ") + e.what());
  }
  if (x.dim() != inst.dim() || y.dim() != inst.dim())
    throw UsageError("x and y need " + std::to_string(inst.dim()) + " coordinates");

  const bool x_in = contains(inst.tp1, x).member;
  const bool y_in = contains(inst.tp2, y).member;
  std::cout << "x = " << x << (x_in ? " is in TP1" : " is NOT in TP1") << "\n";
  std::cout << "y = " << y << (y_in ? " is in TP2" : " is NOT in TP2") << "\n";
  if (!x_in || !y_in) {
    std::cout << "verdict: infeasible\n";
    return kNotVerified;
  }
  const TropScalar lower = lower_value(inst, x);
  std::cout << (lower_minimizes(inst.variant) ? "phi(x) = " : "x^T y_max = ") << lower << "\n";
  std::cout << "x^T y = " << tdot(x, y) << "\n";
  const bool ok = check_lower_optimality(inst, x, y);
  std::cout << "objective = " << inst.objective(x, y) << "\n";
  std::cout << "verdict: " << (ok ? "feasible (lower-level optimal)" : "not lower-level optimal") << "\n";
  return ok ? kOk : kNotVerified;
}

// "relaxed", "cut 2", "cut:2", "piece 1,2", "piece {1,2}"
struct Stage {
  enum Kind { Relaxed, Cut, Piece } kind = Relaxed;
  std::size_t cuts = 0;
  std::vector<std::size_t> I;
};

Stage parse_stage(std::string text, std::size_t dim) {
  for (char& c : text)
    if (c == ':' || c == '=' || c == '{' || c == '}' || c == ',') c = ' ';
  std::istringstream in(text);
  std::string head;
  in >> head;
  Stage st;
  if (head == "relaxed") {
    st.kind = Stage::Relaxed;
  } else if (head == "cut") {
    st.kind = Stage::Cut;
    long k = -1;
    if (!(in >> k) || k < 0) throw UsageError("stage cut needs a cut count, e.g. \"cut 1\"");
    st.cuts = static_cast<std::size_t>(k);
  } else if (head == "piece") {
    st.kind = Stage::Piece;
    long i;
    while (in >> i) {
      if (i < 1 || static_cast<std::size_t>(i) > dim) throw UsageError("piece index " + std::to_string(i) + " outside 1.." + std::to_string(dim));
      st.I.push_back(static_cast<std::size_t>(i - 1));
    }
    if (st.I.empty()) throw UsageError("stage piece needs a nonempty index set, e.g. \"piece 1,2\"");
  } else {
    throw UsageError("unknown stage \"" + head + "\" (relaxed, cut k, piece I)");
  }
  std::string rest;
  if (st.kind != Stage::Piece && in >> rest) throw UsageError("trailing text in stage: " + rest);
  return st;
}

int cmd_export(const std::string& input, const std::string& stage_text, const std::string& side, const std::string& out) {
  auto inst = io::load_instance(input);
  const Stage stage = parse_stage(stage_text, inst.dim());
  lp::SelectorSystem sys;
  std::string label;
  switch (stage.kind) {
    case Stage::Relaxed:
      sys = build_iterative_system(inst, {}).system;
      label = "relaxed problem";
      break;
    case Stage::Cut: {
      if (!lower_minimizes(inst.variant))
        throw UnsupportedInstance("cut stages exist for min-lower variants only");
      auto sol = solve_iterative(inst);
      const auto& cuts = std::get<IterationTrace>(sol.certificate).cuts;
      if (stage.cuts > cuts.size())
        throw UsageError("cut generation adds only " + std::to_string(cuts.size()) + " cut(s) on this instance");
      std::vector<TropVector> prefix(cuts.begin(), cuts.begin() + static_cast<std::ptrdiff_t>(stage.cuts));
      sys = build_iterative_system(inst, prefix).system;
      label = "relaxed problem with " + std::to_string(stage.cuts) + " cut(s)";
      break;
    }
    case Stage::Piece: {
      std::vector<bool> in_i(inst.dim(), false);
      for (auto i : stage.I) in_i[i] = true;
      std::vector<std::size_t> J;
      for (std::size_t j = 0; j < inst.dim(); ++j)
        if (!in_i[j]) J.push_back(j);
      auto piece = partition_piece(inst, stage.I, J);
      PieceSide ps = PieceSide::Joint;
      if (side == "x")
        ps = PieceSide::X;
      else if (side == "y")
        ps = PieceSide::Y;
      else if (side != "joint")
        throw UsageError("side must be x, y or joint");
      sys = build_piece_system(inst, piece, ps).system;
      label = "piece I = " + indices_text(piece.I) + " (" + side + ")";
      std::cout << "x-side: " << piece.describe_x() << "\n";
      std::cout << "y-side: " << piece.describe_y() << "\n";
      break;
    }
  }
  auto model = lp::export_bigm_milp(sys, out);
  const auto m = lp::compute_big_m(sys);
  std::cout << "exported " << label << " to " << out << "\n";
  std::size_t binaries = 0;
  for (const auto& v : model.vars) binaries += v.binary;
  std::cout << "variables: " << model.vars.size() << " (" << binaries << " binary), rows: " << model.rows.size() << "\n";
  std::cout << "M = " << to_string(m.used) << " (formula " << to_string(m.formula) << ", required "
            << to_string(m.required) << ")\n";
  return kOk;
}

int cmd_inspect(const std::string& input, const std::string& what, const std::string& polytope, const std::string& out) {
  auto inst = io::load_instance(input);
  if (polytope != "tp1" && polytope != "tp2") throw UsageError("polytope must be tp1 or tp2");
  const TropPolytopeV& p = polytope == "tp1" ? inst.tp1 : inst.tp2;
  if (what == "minpoints") {
    for (const auto& m : minimal_points(p)) std::cout << m << "\n";
  } else if (what == "ymax") {
    std::cout << greatest_point(p) << "\n";
  } else if (what == "xstar") {
    std::cout << x_star(greatest_point(inst.tp2)) << "\n";
  } else if (what == "partitions") {
    for (const auto& piece : all_partition_pieces(inst)) {
      std::cout << "I = " << indices_text(piece.I) << ", J = " << indices_text(piece.J) << "\n"
                << "  x-side: " << piece.describe_x() << "\n"
                << "  y-side: " << piece.describe_y() << "\n";
    }
  } else if (what == "figure") {
    const std::string svg = svg::render_figure(inst);
    if (out.empty() || out == "-") {
      std::cout << svg;
    } else {
      std::ofstream f(out);
      if (!(f << svg)) throw UsageError("cannot write " + out);
      std::cout << "wrote " << out << "\n";
    }
  } else {
    throw UsageError("unknown artifact \"" + what + "\"");
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tropical bilevel solver"};
  app.require_subcommand(1);

  SolveArgs sargs;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance");
  solve_cmd->add_option("input", sargs.input, "Instance JSON file")->required();
  solve_cmd->add_option("--algorithm", sargs.algorithm, "auto|iterative|enumerate|decompose|closed-form")
      ->check(CLI::IsMember({"auto", "iterative", "enumerate", "decompose", "closed-form"}));
  solve_cmd->add_option("--output", sargs.output, "text|json")->check(CLI::IsMember({"text", "json"}));
  solve_cmd->add_option("--threads", sargs.threads, "Worker threads for independent subproblems");
  solve_cmd->add_flag("--joint-pieces", sargs.joint, "Solve partition pieces as joint x/y systems");
  solve_cmd->add_flag("--no-prune", sargs.no_prune, "Plain exhaustive selector enumeration");
  solve_cmd->add_option("--budget", sargs.budget, "Search node budget per selector enumeration");

  std::string vinput, vx, vy;
  auto* verify_cmd = app.add_subcommand("verify", "Check a candidate pair");
  verify_cmd->add_option("input", vinput, "Instance JSON file")->required();
  verify_cmd->add_option("--x", vx, "Upper-level point, e.g. \"-3,-1\"")->required()->allow_extra_args(false);
  verify_cmd->add_option("--y", vy, "Lower-level point")->required()->allow_extra_args(false);

  std::string einput, estage, eside = "joint", eout;
  auto* export_cmd = app.add_subcommand("export", "Write a big-M MILP in LP format");
  export_cmd->add_option("input", einput, "Instance JSON file")->required();
  export_cmd->add_option("--stage", estage, "relaxed | \"cut k\" | \"piece 1,2\"")->required();
  export_cmd->add_option("--side", eside, "For piece stages: x, y or joint");
  export_cmd->add_option("--out", eout, "Output .lp path")->required();

  std::string iinput, iwhat, ipoly = "tp2", iout;
  auto* inspect_cmd = app.add_subcommand("inspect", "Print structural artifacts");
  inspect_cmd->add_option("input", iinput, "Instance JSON file")->required();
  inspect_cmd->add_option("--what", iwhat, "minpoints|ymax|xstar|partitions|figure")
      ->required()
      ->check(CLI::IsMember({"minpoints", "ymax", "xstar", "partitions", "figure"}));
  inspect_cmd->add_option("--polytope", ipoly, "tp1|tp2 (minpoints, ymax)");
  inspect_cmd->add_option("--out", iout, "SVG path for figure (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(sargs);
    if (*verify_cmd) return cmd_verify(vinput, vx, vy);
    if (*export_cmd) return cmd_export(einput, estage, eside, eout);
    if (*inspect_cmd) return cmd_inspect(iinput, iwhat, ipoly, iout);
  } catch (const io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InfeasibleProblem& e) {
    std::cout << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const UnsupportedInstance& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
