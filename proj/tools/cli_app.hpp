#ifndef IDXCODE_CLI_APP_HPP
#define IDXCODE_CLI_APP_HPP

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "idxcode/idxcode.hpp"

namespace idxcode::cli {

using nlohmann::json;

enum ExitCode { kOk = 0, kContractViolation = 1, kUsage = 2 };

struct GlobalOptions {
  std::uint64_t seed = 0;
  double tol = 1e-6;
  std::string format = "json";
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

inline Graph load_graph_file(const std::string& path) { return load_edge_list(read_file(path)).graph; }

inline json spectrum_json(const Spectrum& s) {
  json groups = json::array();
  for (const auto& g : s.groups) groups.push_back({{"value", g.value}, {"multiplicity", g.multiplicity}});
  return groups;
}

inline json bits_rows(const BitMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) rows.push_back(m.row(i).to_string());
  return rows;
}

inline json residuals_json(const VectorColoringResiduals& r) {
  return {{"max_norm_deviation", r.max_norm_deviation}, {"max_edge_violation", r.max_edge_violation}};
}

inline json verdict_json(const VerifyVerdict& v) {
  json out{{"pass", v.pass}, {"words_checked", v.words_checked}};
  if (!v.reason.empty()) out["reason"] = v.reason;
  if (v.counterexample)
    out["counterexample"] = {{"word", v.counterexample->word.to_string()},
                             {"receiver", v.counterexample->receiver},
                             {"decoded", v.counterexample->decoded}};
  return out;
}

/// Exhaustive up to the cap, sampled beyond it.
inline VerifyMode default_verify_mode(int n, std::uint64_t seed, int samples) {
  if (samples > 0) return VerifyMode::sampled(samples, seed);
  return n <= kExhaustiveVerifyMaxOrder ? VerifyMode::all_words() : VerifyMode::sampled(10000, seed);
}

inline json constants_report(int k) {
  json out;
  out["k"] = k;
  out["kappa"] = kappa(k);
  out["g_exponent"] = g_exponent(k);
  out["sigma"] = kappa(k) > 1.0 ? json(1.0 / (kappa(k) - 1.0)) : json(nullptr);
  if (k >= 3 && k <= 30) out["theta_quotient"] = theta_gk_complement(k);

  const double kappa3 = kappa(3);
  const double sigma3 = 1.0 / (kappa3 - 1.0);
  const double delta = kMinrank3DegreeExponent;
  const double c = kMinrank3C;
  const double g3 = g_exponent(3);
  json m3;
  m3["sigma"] = sigma3;
  m3["c"] = c;
  m3["delta"] = delta;
  m3["best_c"] = find_best_c(sigma3, delta);
  m3["condition_margin"] = shell_condition_margin(sigma3, c, delta);
  m3["inverse_one_plus_c"] = 1.0 / (1.0 + c);
  m3["coloring_exponent"] = 1.0 - delta;
  // n / D^{1 - 2/kappa_3} = D^{g(2)} at D = n^{g(3)}, compared as exponents of n.
  m3["balancing_residual"] = std::abs((1.0 - g3 * (1.0 - 2.0 / kappa3)) - g3);
  out["minrank3"] = m3;
  return out;
}

/// Runs one command. Reports go to `out`, the human summary and errors to `err`.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linear index coding toolkit: G_k graphs, minrank, vector coloring, rounding, index codes"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions global;
  app.add_option("--seed", global.seed, "Seed for all randomness")->capture_default_str();
  app.add_option("--tol", global.tol, "Numerical tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--format", global.format, "Report format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();

  json params = json::object();
  json outputs = json::object();
  std::string summary;
  std::function<void()> action;

  // gen-gk
  int gk_k = 3;
  std::string out_path;
  auto* gen_gk = app.add_subcommand("gen-gk", "Write G_k as an edge list");
  gen_gk->add_option("--k", gk_k, "Dimension")->required()->check(CLI::Range(1, 8));
  gen_gk->add_option("--out", out_path, "Output edge-list file");
  gen_gk->callback([&] {
    action = [&] {
      params["k"] = gk_k;
      const auto gk = build_gk(gk_k);
      const std::string text = save_edge_list(gk.graph);
      outputs["n"] = gk.order();
      outputs["edges"] = gk.graph.edge_count();
      outputs["degree"] = gk_degree(gk_k);
      if (!out_path.empty()) {
        write_file(out_path, text);
        outputs["file"] = out_path;
        params["out"] = out_path;
      } else {
        outputs["edge_list"] = text;
      }
      summary = "G_" + std::to_string(gk_k) + ": " + std::to_string(gk.order()) + " vertices";
    };
  });

  // spectrum
  std::optional<int> spec_k;
  std::string graph_path;
  bool full = false;
  auto* spectrum = app.add_subcommand("spectrum", "Adjacency spectrum of G_k (quotient route) or of a graph file");
  auto* spec_k_opt = spectrum->add_option("--k", spec_k, "G_k dimension")->check(CLI::Range(3, 30));
  auto* spec_graph_opt = spectrum->add_option("--graph", graph_path, "Edge-list file");
  spec_k_opt->excludes(spec_graph_opt);
  spectrum->add_flag("--full", full, "Also diagonalize the full G_k adjacency matrix (k <= 5)");
  spectrum->callback([&] {
    action = [&] {
      if (spec_k) {
        const int k = *spec_k;
        params["k"] = k;
        params["full"] = full;
        const auto q = closed_form_quotient_matrix(k);
        const auto s = quotient_spectrum(q);
        outputs["quotient_eigenvalues"] = s.values;
        outputs["closed_form_eigenvalues"] = gk_closed_form_eigenvalues(k);
        outputs["lambda_min"] = s.values.front();
        outputs["lambda_max"] = s.values.back();
        if (full) {
          if (k > 5) throw InputError("--full needs k <= 5");
          const auto gk = build_gk(k);
          std::vector<int> classes;
          for (int c : gk.orbit_class) classes.push_back(c - 1);
          const auto report = quotient_spectrum_check(gk.graph, classes, global.tol);
          outputs["full_spectrum"] = spectrum_json(report.full_spectrum);
          outputs["equal_value_sets"] = report.equal_sets;
        }
        summary = "spectrum of G_" + std::to_string(k) + ": lambda_min = " + std::to_string(s.values.front());
      } else {
        if (graph_path.empty()) throw InputError("spectrum needs --k or --graph");
        params["graph"] = graph_path;
        const Graph g = load_graph_file(graph_path);
        const auto s = eigenvalues_sym(SymmetricMatrix::adjacency(g));
        outputs["n"] = g.order();
        outputs["spectrum"] = spectrum_json(s);
        if (!s.values.empty()) {
          outputs["lambda_min"] = s.values.front();
          outputs["lambda_max"] = s.values.back();
        }
        summary = "spectrum of " + graph_path;
      }
    };
  });

  // theta
  std::optional<int> theta_k;
  int restarts = 5;
  auto* theta = app.add_subcommand("theta", "theta of the complement of G_k, or strict vector chromatic number of a graph");
  auto* theta_k_opt = theta->add_option("--k", theta_k, "G_k dimension")->check(CLI::Range(3, 30));
  auto* theta_graph_opt = theta->add_option("--graph", graph_path, "Edge-list file");
  theta_k_opt->excludes(theta_graph_opt);
  theta->add_option("--restarts", restarts, "Solver restarts for --graph")->check(CLI::Range(1, 1000))->capture_default_str();
  theta->callback([&] {
    action = [&] {
      if (theta_k) {
        const int k = *theta_k;
        params["k"] = k;
        const double via_quotient = theta_gk_complement(k);
        outputs["theta"] = via_quotient;
        outputs["closed_form"] = kappa(k);
        outputs["difference"] = std::abs(via_quotient - kappa(k));
        std::ostringstream os;
        os.precision(10);
        os << "theta(complement G_" << k << ") = " << via_quotient;
        summary = os.str();
      } else {
        if (graph_path.empty()) throw InputError("theta needs --k or --graph");
        params["graph"] = graph_path;
        params["restarts"] = restarts;
        const Graph g = load_graph_file(graph_path);
        VectorColoringOptions opt;
        opt.seed = global.seed;
        opt.restarts = restarts;
        opt.feasibility = global.tol;
        const auto vc = solve_vector_coloring(g, true, opt);
        outputs["theta"] = vc.kappa;
        outputs["residuals"] = residuals_json(vc.residuals);
        summary = "strict vector chromatic number " + std::to_string(vc.kappa);
      }
    };
  });

  // minrank
  int cap = kOracleMaxK;
  long long budget = kDefaultNodeBudget;
  auto* minrank = app.add_subcommand("minrank", "Exact minrank over F2 for small graphs");
  minrank->add_option("--graph", graph_path, "Edge-list file")->required();
  minrank->add_option("--cap", cap, "Largest k tried")->check(CLI::Range(1, kOracleMaxK))->capture_default_str();
  minrank->add_option("--budget", budget, "Search node budget")->check(CLI::PositiveNumber)->capture_default_str();
  minrank->callback([&] {
    action = [&] {
      params["graph"] = graph_path;
      params["cap"] = cap;
      params["budget"] = budget;
      const Graph g = load_graph_file(graph_path);
      const auto r = minrank_oracle(g, cap, budget);
      outputs["status"] = to_string(r.status);
      outputs["value"] = r.value;
      outputs["nodes"] = r.nodes;
      if (r.witness) outputs["representing_matrix"] = bits_rows(matrix_from_bi_representation(*r.witness));
      summary = "minrank " + to_string(r.status) + " " + std::to_string(r.value);
    };
  });

  // vector-color
  bool strict = false;
  bool emit_vectors = false;
  int rank = 30;
  std::optional<int> vc_k;
  auto* vcolor = app.add_subcommand("vector-color", "Low-rank vector coloring");
  auto* vc_graph_opt = vcolor->add_option("--graph", graph_path, "Edge-list file");
  auto* vc_k_opt = vcolor->add_option("--k", vc_k, "Use G_k")->check(CLI::Range(1, 5));
  vc_graph_opt->excludes(vc_k_opt);
  vcolor->add_flag("--strict", strict, "Equality on every edge");
  vcolor->add_option("--restarts", restarts, "Random restarts")->check(CLI::Range(1, 1000))->capture_default_str();
  vcolor->add_option("--rank", rank, "Vector dimension cap")->check(CLI::Range(2, 4096))->capture_default_str();
  vcolor->add_flag("--emit-vectors", emit_vectors, "Include the vectors in the report");
  vcolor->callback([&] {
    action = [&] {
      Graph g;
      if (vc_k) {
        params["k"] = *vc_k;
        g = build_gk(*vc_k).graph;
      } else {
        if (graph_path.empty()) throw InputError("vector-color needs --graph or --k");
        params["graph"] = graph_path;
        g = load_graph_file(graph_path);
      }
      params["strict"] = strict;
      params["restarts"] = restarts;
      params["rank"] = rank;
      VectorColoringOptions opt;
      opt.seed = global.seed;
      opt.restarts = restarts;
      opt.rank = rank;
      opt.feasibility = global.tol;
      const auto vc = solve_vector_coloring(g, strict, opt);
      outputs["kappa"] = vc.kappa;
      outputs["strict"] = vc.strict;
      outputs["dimension"] = vc.dimension();
      outputs["residuals"] = residuals_json(vc.residuals);
      outputs["valid"] = vc.residuals.valid(opt.tol);
      if (emit_vectors) {
        json rows = json::array();
        for (Eigen::Index i = 0; i < vc.vectors.rows(); ++i) {
          std::vector<double> row;
          for (Eigen::Index j = 0; j < vc.vectors.cols(); ++j) row.push_back(vc.vectors(i, j));
          rows.push_back(row);
        }
        outputs["vectors"] = rows;
      }
      summary = std::string(strict ? "strict " : "") + "vector coloring kappa = " + std::to_string(vc.kappa);
    };
  });

  // color
  int color_k = 3;
  std::string mode_name;
  RoundingKnobs knobs;
  auto add_knobs = [&](CLI::App* sub) {
    sub->add_option("--trials", knobs.trials, "Rounding trials per threshold (0: ceil(8 ln n))")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sub->add_option("--t-grid-size", knobs.t_grid_size, "Geometric threshold grid size")
        ->check(CLI::Range(1, 10000))
        ->capture_default_str();
    sub->add_option("--b-step", knobs.b_step, "Shell quantile step")->check(CLI::Range(1e-6, 1.0))->capture_default_str();
  };
  auto knob_params = [&] {
    params["trials"] = knobs.trials;
    params["t_grid_size"] = knobs.t_grid_size;
    params["b_step"] = knobs.b_step;
  };
  auto* color = app.add_subcommand("color", "Color a graph whose complement has minrank <= k");
  color->add_option("--graph", graph_path, "Edge-list file")->required();
  color->add_option("--k", color_k, "Minrank bound of the complement")->check(CLI::Range(1, 30))->capture_default_str();
  color->add_option("--mode", mode_name, "basic or minrank3 (default: minrank3 when k = 3)")
      ->check(CLI::IsMember({"basic", "minrank3"}));
  add_knobs(color);
  color->callback([&] {
    action = [&] {
      const Graph g = load_graph_file(graph_path);
      const ColoringMode mode = mode_name.empty() ? (color_k == 3 ? ColoringMode::minrank3 : ColoringMode::basic)
                                                  : parse_coloring_mode(mode_name);
      params["graph"] = graph_path;
      params["k"] = color_k;
      params["mode"] = to_string(mode);
      knob_params();
      const Coloring c = color_graph(g, color_k, global.seed, mode, knobs);
      if (!is_valid_coloring(g, c)) throw ContractViolation("color: produced coloring is not proper");
      outputs["colors"] = c.colors;
      outputs["count"] = c.count;
      outputs["class_sizes"] = c.class_sizes();
      summary = std::to_string(c.count) + " colors";
    };
  });

  // index-code
  std::string method = "oracle";
  int samples = 0;
  auto* icode = app.add_subcommand("index-code", "Build a linear index code for a side-information graph");
  icode->add_option("--graph", graph_path, "Edge-list file")->required();
  icode->add_option("--method", method, "oracle (minrank witness) or coloring (coloring of the complement)")
      ->check(CLI::IsMember({"oracle", "coloring"}))
      ->capture_default_str();
  icode->add_option("--k", color_k, "Minrank bound for --method coloring")->check(CLI::Range(1, 30))->capture_default_str();
  icode->add_option("--mode", mode_name, "Coloring mode for --method coloring")->check(CLI::IsMember({"basic", "minrank3"}));
  icode->add_option("--cap", cap, "Oracle cap for --method oracle")->check(CLI::Range(1, kOracleMaxK))->capture_default_str();
  icode->add_option("--out", out_path, "Output code file");
  icode->add_option("--samples", samples, "Sampled verification words (0: exhaustive when n <= 20)")
      ->check(CLI::NonNegativeNumber);
  add_knobs(icode);
  icode->callback([&] {
    action = [&] {
      const Graph g = load_graph_file(graph_path);
      params["graph"] = graph_path;
      params["method"] = method;
      LinearIndexCode code;
      if (method == "oracle") {
        params["cap"] = cap;
        const auto r = minrank_oracle(g, cap);
        if (r.status != MinrankStatus::exact)
          throw SolverError("minrank oracle gave status '" + to_string(r.status) + "'; no code built");
        code = code_from_matrix(matrix_from_bi_representation(*r.witness), g);
        outputs["minrank"] = r.value;
      } else {
        const ColoringMode mode = mode_name.empty() ? (color_k == 3 ? ColoringMode::minrank3 : ColoringMode::basic)
                                                    : parse_coloring_mode(mode_name);
        params["k"] = color_k;
        params["mode"] = to_string(mode);
        knob_params();
        code = code_from_coloring(g, color_graph(complement(g), color_k, global.seed, mode, knobs));
      }
      const VerifyVerdict v = verify_code(g, code, default_verify_mode(g.order(), global.seed, samples));
      outputs["n"] = code.n;
      outputs["length"] = code.length();
      outputs["verification"] = verdict_json(v);
      const std::string text = save_index_code(code);
      if (!out_path.empty()) {
        params["out"] = out_path;
        write_file(out_path, text);
        outputs["file"] = out_path;
      } else {
        outputs["code"] = text;
      }
      if (!v.pass) throw ContractViolation("index-code: built code failed verification");
      summary = "code of length " + std::to_string(code.length()) + " for n = " + std::to_string(code.n);
    };
  });

  // verify
  std::string code_path;
  bool exhaustive = false;
  auto* verify = app.add_subcommand("verify", "Check that every receiver decodes its bit");
  verify->add_option("--graph", graph_path, "Edge-list file")->required();
  verify->add_option("--code", code_path, "Code file")->required();
  auto* exhaustive_flag = verify->add_flag("--exhaustive", exhaustive, "All 2^n words (n <= 20)");
  auto* samples_opt = verify->add_option("--samples", samples, "Uniform random words")->check(CLI::PositiveNumber);
  exhaustive_flag->excludes(samples_opt);
  verify->callback([&] {
    action = [&] {
      const Graph g = load_graph_file(graph_path);
      const LinearIndexCode code = load_index_code(read_file(code_path));
      params["graph"] = graph_path;
      params["code"] = code_path;
      VerifyMode mode = exhaustive ? VerifyMode::all_words() : default_verify_mode(g.order(), global.seed, samples);
      params["exhaustive"] = mode.exhaustive;
      if (!mode.exhaustive) params["samples"] = mode.trials;
      const VerifyVerdict v = verify_code(g, code, mode);
      outputs = verdict_json(v);
      outputs["length"] = code.length();
      summary = v.pass ? "pass" : "FAIL";
      if (!v.pass) throw ContractViolation("verify: code is not decodable" + (v.reason.empty() ? "" : ": " + v.reason));
    };
  });

  // constants
  int const_k = 3;
  auto* constants = app.add_subcommand("constants", "Exponents and rounding constants");
  constants->add_option("--k", const_k, "Dimension")->check(CLI::Range(1, 30))->capture_default_str();
  constants->callback([&] {
    action = [&] {
      params["k"] = const_k;
      outputs = constants_report(const_k);
      summary = "constants for k = " + std::to_string(const_k);
    };
  });

  // gen-instance
  int inst_n = 100;
  int inst_k = 3;
  double inst_p = 0.5;
  auto* gen_inst = app.add_subcommand("gen-instance", "Random graph whose complement has minrank <= k");
  gen_inst->add_option("--n", inst_n, "Vertices")->check(CLI::Range(0, kMaxVertices))->capture_default_str();
  gen_inst->add_option("--k", inst_k, "Minrank bound")->check(CLI::Range(1, 8))->capture_default_str();
  gen_inst->add_option("--p", inst_p, "Edge keep probability")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  gen_inst->add_option("--out", out_path, "Output edge-list file");
  gen_inst->callback([&] {
    action = [&] {
      params["n"] = inst_n;
      params["k"] = inst_k;
      params["p"] = inst_p;
      const Graph g = gen_bounded_minrank_instance(inst_n, inst_k, inst_p, global.seed);
      const std::string text = save_edge_list(g);
      outputs["n"] = g.order();
      outputs["edges"] = g.edge_count();
      outputs["max_degree"] = g.max_degree();
      if (!out_path.empty()) {
        params["out"] = out_path;
        write_file(out_path, text);
        outputs["file"] = out_path;
      } else {
        outputs["edge_list"] = text;
      }
      summary = "instance with " + std::to_string(g.edge_count()) + " edges";
    };
  });

  std::vector<const char*> argv{"idxcode-cli"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  std::string command;
  for (const auto* sub : app.get_subcommands()) command = sub->get_name();
  const auto start = std::chrono::steady_clock::now();
  int status = kOk;
  std::string failure;
  try {
    action();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ContractViolation& e) {
    status = kContractViolation;
    failure = e.what();
  } catch (const SolverError& e) {
    status = kContractViolation;
    failure = e.what();
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  params["seed"] = global.seed;
  params["tol"] = global.tol;
  params["format"] = global.format;
  json report{{"command", command}, {"parameters", params}, {"outputs", outputs}, {"wall_clock_seconds", seconds}};
  if (status != kOk) report["error"] = failure;

  if (global.format == "json") {
    out << report.dump(2) << "\n";
  } else {
    out << "command: " << command << "\n";
    for (const auto& [key, value] : params.items()) out << "param." << key << ": " << value.dump() << "\n";
    for (const auto& [key, value] : outputs.items())
      out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    if (status != kOk) out << "error: " << failure << "\n";
    out << "wall_clock_seconds: " << seconds << "\n";
  }
  if (status != kOk) err << "error: " << failure << "\n";
  else err << command << ": " << summary << "\n";
  return status;
}

}  // namespace idxcode::cli

#endif  // IDXCODE_CLI_APP_HPP
