#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "lowrank/counterexample.hpp"
#include "lowrank/errors.hpp"
#include "lowrank/linesearch.hpp"
#include "lowrank/matrix_io.hpp"
#include "lowrank/retraction.hpp"
#include "lowrank/sampling.hpp"
#include "lowrank/variety.hpp"

namespace lowrank::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class ConfigError : public ParseError {
 public:
  using ParseError::ParseError;
};

struct Context {
  json config;
  fs::path config_dir;
  fs::path out_dir;
  std::uint64_t seed;
  std::ostream& out;
  std::ostream& err;

  bool has(const char* key) const { return config.contains(key) && !config.at(key).is_null(); }

  template <typename T>
  T get(const char* key) const {
    if (!has(key)) throw ConfigError(std::string("config: missing field '") + key + "'");
    try {
      return config.at(key).get<T>();
    } catch (const json::exception&) {
      throw ConfigError(std::string("config: field '") + key + "' has the wrong type");
    }
  }

  template <typename T>
  T get_or(const char* key, T fallback) const {
    return has(key) ? get<T>(key) : fallback;
  }

  fs::path input_path(const char* key) const {
    const fs::path p = get<std::string>(key);
    return p.is_absolute() ? p : config_dir / p;
  }

  fs::path output_path(const std::string& name) const {
    fs::create_directories(out_dir);
    return out_dir / name;
  }
};

std::size_t get_dim(const Context& ctx, const char* key) {
  const long long v = ctx.get<long long>(key);
  if (v < 0) throw ConfigError(std::string("config: field '") + key + "' must be non-negative");
  return static_cast<std::size_t>(v);
}

std::optional<std::size_t> get_dim_opt(const Context& ctx, const char* key) {
  if (!ctx.has(key)) return std::nullopt;
  return get_dim(ctx, key);
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path.string());
  f << content;
}

LineSearchConfig line_search_config(const Context& ctx) {
  LineSearchConfig cfg;
  cfg.beta = ctx.get_or("beta", cfg.beta);
  cfg.c = ctx.get_or("c", cfg.c);
  cfg.alpha0 = ctx.get_or("alpha0", cfg.alpha0);
  cfg.max_backtracks = ctx.get_or("max_backtracks", cfg.max_backtracks);
  cfg.validate();
  return cfg;
}

int cmd_project(const Context& ctx) {
  const Matrix a = load_matrix(ctx.input_path("input"));
  const std::size_t m = get_dim_opt(ctx, "m").value_or(a.rows());
  const std::size_t n = get_dim_opt(ctx, "n").value_or(a.cols());
  if (m != a.rows() || n != a.cols()) throw ConfigError("project: m/n do not match the input matrix");
  const VarietyBudget budget(m, n, get_dim(ctx, "r"));

  const VarietyPoint p = project_to_variety(a, budget);
  const fs::path target = ctx.output_path(ctx.get_or<std::string>("output", "projected.txt"));
  save_matrix(target, p.matrix());
  ctx.out << "rank " << p.rank() << '\n';
  ctx.out << "distance " << format_real(frobenius_norm(a - p.matrix())) << '\n';
  ctx.out << "wrote " << target.string() << '\n';
  return kExitOk;
}

Matrix leading_identity(std::size_t rows, std::size_t cols) {
  Matrix id(rows, cols);
  for (std::size_t i = 0; i < std::min(rows, cols); ++i) id(i, i) = 1.0;
  return id;
}

std::vector<double> tau_grid(const Context& ctx) {
  if (!ctx.has("tau_grid")) return {0.75, 0.9, 0.999999, 1.000001, 1.1, 1.3};
  const json& g = ctx.config.at("tau_grid");
  if (g.is_object()) {
    // {"start": a, "stop": b, "count": k}: k evenly spaced points, endpoints included.
    const double start = g.value("start", 0.0);
    const double stop = g.value("stop", 0.0);
    const int count = g.value("count", 0);
    if (count < 1) throw ConfigError("tau_grid: count must be positive");
    std::vector<double> grid;
    for (int i = 0; i < count; ++i) {
      grid.push_back(count == 1 ? start : start + (stop - start) * i / (count - 1));
    }
    return grid;
  }
  return ctx.get<std::vector<double>>("tau_grid");
}

int cmd_counterexample(const Context& ctx) {
  const VarietyBudget budget(get_dim_opt(ctx, "m").value_or(3), get_dim_opt(ctx, "n").value_or(3),
                             get_dim_opt(ctx, "r").value_or(2));
  const std::size_t r = budget.r();
  const Matrix u = ctx.has("U") ? load_matrix(ctx.input_path("U")) : leading_identity(budget.m(), r + 1);
  const Matrix v = ctx.has("V") ? load_matrix(ctx.input_path("V")) : leading_identity(budget.n(), r + 1);
  const counterexample::CounterexampleSpec spec(budget, ctx.get_or("sigma", std::vector<double>{2.0, 1.0}), u, v,
                                                ctx.get_or("t_star", 1.0));
  const std::vector<double> grid = tau_grid(ctx);

  const auto records = counterexample::sweep(spec, grid);
  std::ostringstream csv;
  counterexample::write_sweep_csv(csv, records, r);
  const fs::path csv_path = ctx.output_path("sweep.csv");
  write_file(csv_path, csv.str());

  if (ctx.get_or("dump_projections", false)) {
    const fs::path dir = ctx.output_path("projections");
    fs::create_directories(dir);
    for (std::size_t i = 0; i < records.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "tau_%03zu.txt", i);
      save_matrix(dir / name, records[i].projection);
    }
  }

  const double worst = counterexample::max_deviation(records);
  const double bound = 1e-8 * std::max(1.0, spec.sigma().front());
  const auto jump = counterexample::jump_magnitude(spec);
  const bool jump_ok = std::abs(jump.numeric - jump.closed_form) <= 1e-4;

  ctx.out << "max_deviation " << format_real(worst) << " (bound " << format_real(bound) << ")\n";
  ctx.out << "jump_closed_form " << format_real(jump.closed_form) << '\n';
  ctx.out << "jump_numeric " << format_real(jump.numeric) << '\n';
  ctx.out << "wrote " << csv_path.string() << '\n';
  if (worst <= bound && jump_ok) return kExitOk;
  ctx.err << "counterexample: reproduction check failed\n";
  return kExitFailed;
}

int cmd_optimize(const Context& ctx) {
  const std::string kind = ctx.get_or<std::string>("objective", "approx");
  Matrix target = load_matrix(ctx.input_path("target"));
  const VarietyBudget budget(target.rows(), target.cols(), get_dim(ctx, "r"));

  Objective obj;
  if (kind == "approx") {
    obj = approximation_objective(target);
  } else if (kind == "masked") {
    obj = masked_objective(target, load_matrix(ctx.input_path("mask")));
  } else {
    throw ConfigError("optimize: objective must be 'approx' or 'masked'");
  }

  const Matrix x0 = ctx.has("x0") ? load_matrix(ctx.input_path("x0")) : Matrix(budget.m(), budget.n());
  const VarietyPoint start = make_point(x0, budget);
  const LineSearchConfig cfg = line_search_config(ctx);
  std::optional<double> tol;
  if (ctx.has("tol")) tol = ctx.get<double>("tol");
  const int max_iters = ctx.get_or("max_iters", 1000);

  const SolveTrace trace = p2gd_solve(start, obj, cfg, tol, max_iters);
  std::ostringstream csv;
  write_trace_csv(csv, trace);
  write_file(ctx.output_path("trace.csv"), csv.str());
  save_matrix(ctx.output_path("final.txt"), trace.final_point.matrix());

  const IterationRecord& last = trace.records.back();
  ctx.out << "termination " << to_string(trace.reason) << '\n';
  ctx.out << "iterations " << last.iter << '\n';
  ctx.out << "f " << format_real(last.f) << '\n';
  ctx.out << "stationarity " << format_real(last.stationarity) << '\n';
  return trace.reason == Termination::stationary ? kExitOk : kExitFailed;
}

int cmd_verify_retraction(const Context& ctx) {
  const VarietyBudget budget(get_dim(ctx, "m"), get_dim(ctx, "n"), get_dim(ctx, "r"));
  const std::size_t base_rank = get_dim_opt(ctx, "base_rank").value_or(budget.r());
  if (base_rank > budget.r()) throw ConfigError("verify-retraction: base_rank exceeds r");
  const int probes = ctx.get_or("probes", 10);
  const int steps = ctx.get_or("steps", 20);
  const double corner_weight = ctx.get_or("corner_weight", 1.0);
  const bool zero_probe = ctx.get_or("zero_probe", true);
  if (probes < 0 || steps < 1) throw ConfigError("verify-retraction: probes >= 0 and steps >= 1 required");

  sampling::Rng rng(ctx.seed);
  const VarietyPoint x = sampling::random_point(budget, base_rank, rng);
  const TangentConeChart chart = tangent_cone_chart(x);
  std::vector<Matrix> directions;
  if (zero_probe) directions.emplace_back(budget.m(), budget.n());
  for (int i = 0; i < probes; ++i) {
    directions.push_back(tangent_embed(sampling::random_tangent_vector(chart, rng, corner_weight)));
  }

  const std::vector<double> grid = dyadic_grid(steps);
  const RetractionMap retraction = make_projective_retraction();
  std::vector<std::vector<double>> table;
  bool ok = true;
  for (const Matrix& v : directions) {
    table.push_back(verify_retraction_axiom(retraction, x, v, grid));
    ok = ok && table.back().back() < 1e-3;
  }

  std::ostringstream csv;
  csv << "probe,t,residual\n";
  ctx.out << "base_rank " << x.rank() << " of r=" << budget.r() << '\n';
  ctx.out << "t";
  for (std::size_t p = 0; p < table.size(); ++p) ctx.out << " probe_" << p;
  ctx.out << '\n';
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ctx.out << format_real(grid[i]);
    for (const auto& column : table) ctx.out << ' ' << format_real(column[i]);
    ctx.out << '\n';
  }
  for (std::size_t p = 0; p < table.size(); ++p) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      csv << p << ',' << format_real(grid[i]) << ',' << format_real(table[p][i]) << '\n';
    }
  }
  write_file(ctx.output_path("residuals.csv"), csv.str());
  ctx.out << (ok ? "verified" : "FAILED") << ": final residual < 1e-3 for all probes\n";
  return ok ? kExitOk : kExitFailed;
}

json read_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  try {
    json config = json::parse(in);
    if (!config.is_object()) throw ConfigError("config: top level must be an object");
    return config;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Retractions and projections on the bounded-rank matrix set", "lowrank-retract"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  struct Command {
    const char* name;
    const char* help;
    int (*fn)(const Context&);
  };
  const Command commands[] = {
      {"project", "Project a matrix onto the rank-r set", cmd_project},
      {"counterexample", "Sweep the discontinuity counterexample across tau = 1", cmd_counterexample},
      {"optimize", "Run projected line-search descent on a built-in objective", cmd_optimize},
      {"verify-retraction", "Check the first-order retraction axiom on random tangent vectors",
       cmd_verify_retraction},
  };
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--seed", seed, "Seed for randomized checks (default: config 'seed' or 0)");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  const auto* command =
      std::find_if(std::begin(commands), std::end(commands), [&](const Command& c) { return chosen->get_name() == c.name; });

  try {
    const fs::path cfg_path(config_path);
    json config = read_config(cfg_path);
    if (!config.contains("command")) throw ConfigError("config: missing field 'command'");
    if (config["command"] != command->name) {
      throw ConfigError("config command '" + config["command"].dump() + "' does not match '" + command->name + "'");
    }
    std::uint64_t effective_seed = 0;
    if (seed) {
      effective_seed = *seed;
    } else if (config.contains("seed")) {
      effective_seed = config["seed"].get<std::uint64_t>();
    }
    const Context ctx{std::move(config), cfg_path.parent_path(), fs::path(out_dir), effective_seed, out, err};
    return command->fn(ctx);
  } catch (const BudgetError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "error: config: " << e.what() << '\n';
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace lowrank::cli
