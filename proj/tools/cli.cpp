#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include "barronhjb/error.hpp"
#include "barronhjb/grid.hpp"
#include "barronhjb/json_io.hpp"
#include "barronhjb/linear_solver.hpp"
#include "barronhjb/nn_sampler.hpp"
#include "barronhjb/parallel.hpp"
#include "barronhjb/policy_iteration.hpp"
#include "barronhjb/problem.hpp"
#include "barronhjb/sde_verifier.hpp"

namespace barronhjb::cli {

namespace fs = std::filesystem;

namespace {

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotContractive:
      return kExitNotContractive;
    case ErrorCode::kBudgetExceeded:
      return kExitIterCap;
    case ErrorCode::kIo:
      return kExitIo;
    case ErrorCode::kSimulationFailure:
      return kExitOther;
    default:
      return kExitValidation;
  }
}

std::string iso_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  bool stamp = false;
  std::string started;
};

Json manifest(const Context& ctx, const std::string& command, const std::string& spec_path,
              Json options, std::optional<std::uint64_t> seed) {
  Json ts = Json::object();
  if (ctx.stamp) {
    ts["started"] = ctx.started;
    ts["finished"] = iso_now();
  }
  return Json{{"tool", "barronhjb"},
              {"tool_version", kToolVersion},
              {"command", command},
              {"spec_path", spec_path.empty() ? Json(nullptr) : Json(spec_path)},
              {"options", std::move(options)},
              {"seed", seed ? Json(*seed) : Json(nullptr)},
              {"timestamps", std::move(ts)}};
}

void emit(const Context& ctx, const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    ctx.out << text;
  } else {
    write_text_file(out_path, text);
    ctx.err << "wrote " << out_path << "\n";
  }
}

// A spectral function, or an object holding one under "V" (solve report) or
// final.V (iterate report).
SpectralFunction load_function(const std::string& path) {
  const Json j = read_json_file(path);
  if (j.is_object() && j.contains("atoms")) return spectral_from_json(j);
  if (j.is_object() && j.contains("V")) return spectral_from_json(j["V"]);
  if (j.is_object() && j.contains("final") && j["final"].contains("V")) {
    return spectral_from_json(j["final"]["V"]);
  }
  throw Error(ErrorCode::kParse, path + ": no spectral function found");
}

// "zero", an array of functions, a single function (m = 1), or a report
// carrying "u" or final.u_last.
SpectralVector load_control(const std::string& arg, const ValidatedProblem& vp) {
  if (arg.empty() || arg == "zero") return zero_control(vp);
  const Json j = read_json_file(arg);
  SpectralVector u;
  if (j.is_array()) {
    u = spectral_vector_from_json(j);
  } else if (j.is_object() && j.contains("atoms")) {
    u.push_back(spectral_from_json(j));
  } else if (j.is_object() && j.contains("u")) {
    u = spectral_vector_from_json(j["u"]);
  } else if (j.is_object() && j.contains("final") && j["final"].contains("u_last")) {
    u = spectral_vector_from_json(j["final"]["u_last"]);
  } else {
    throw Error(ErrorCode::kParse, arg + ": no control found");
  }
  if (u.size() != vp.spec.m) {
    throw Error(ErrorCode::kDimensionMismatch, arg + ": control has " + std::to_string(u.size()) +
                                                   " components, expected " +
                                                   std::to_string(vp.spec.m));
  }
  for (const auto& uj : u) {
    if (uj.dim() != vp.spec.d) throw Error(ErrorCode::kDimensionMismatch, arg + ": dimension");
  }
  return u;
}

ValidatedProblem load_problem(const std::string& path, bool linear_only) {
  return validate(problem_from_json(read_json_file(path)), linear_only);
}

PointSet load_points(const std::string& path, std::size_t d) {
  PointSet ps{d, {}};
  if (path.empty()) {
    for (double c : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
      for (std::size_t k = 0; k < d; ++k) ps.coords.push_back(c);
    }
    return ps;
  }
  const Json j = read_json_file(path);
  const Json& arr = (j.is_object() && j.contains("points")) ? j["points"] : j;
  if (!arr.is_array()) throw Error(ErrorCode::kParse, path + ": expected an array of points");
  for (const Json& p : arr) {
    const auto x = p.get<std::vector<double>>();
    if (x.size() != d) throw Error(ErrorCode::kDimensionMismatch, path + ": point dimension");
    ps.coords.insert(ps.coords.end(), x.begin(), x.end());
  }
  return ps;
}

void print_warnings(const Context& ctx, const ValidatedProblem& vp) {
  for (const auto& w : vp.warnings) ctx.err << "warning: " << w << "\n";
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const long long v = std::stoll(item, &used);
    if (used != item.size() || v <= 0) {
      throw Error(ErrorCode::kInvalidArgument, "bad list entry \"" + item + "\"");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw Error(ErrorCode::kInvalidArgument, "empty list");
  return out;
}

std::string csv_number(double v) { return number_json(v).dump(); }

// ---------------------------------------------------------------------------

struct ValidateArgs {
  std::string spec;
  bool linear_only = false;
  std::string out;
};

int cmd_validate(const Context& ctx, const ValidateArgs& a) {
  const ValidatedProblem vp = load_problem(a.spec, a.linear_only);
  print_warnings(ctx, vp);
  const DiscountReport dr = discount_threshold(vp);
  Json fp = nullptr;
  if (dr.gamma_ok) fp = to_json(fixed_point(vp));
  Json j{{"manifest", manifest(ctx, "validate", a.spec, Json{{"linear_only", a.linear_only}},
                               std::nullopt)},
         {"valid", true},
         {"d", vp.spec.d},
         {"m", vp.spec.m},
         {"s", vp.spec.s},
         {"gamma", vp.spec.gamma},
         {"norms", Json{{"f", vp.norm_f}, {"g", vp.norm_g}, {"ell", vp.norm_ell}}},
         {"c_r1", vp.c_r1},
         {"c_r2", vp.c_r2},
         {"discount", to_json(dr)},
         {"fixed_point", fp},
         {"warnings", vp.warnings}};
  emit(ctx, a.out, dump(j));
  return kExitOk;
}

struct SolveArgs {
  std::string spec;
  std::string u = "zero";
  double tol = 1e-8;
  std::size_t max_terms = 200;
  std::size_t max_atoms = 20000;
  double grid_window = std::numbers::pi;
  bool linear_only = false;
  std::string out;
};

int cmd_solve(const Context& ctx, const SolveArgs& a) {
  const ValidatedProblem vp = load_problem(a.spec, a.linear_only);
  print_warnings(ctx, vp);
  const SpectralVector u = load_control(a.u, vp);
  SolverOptions opts{a.tol, a.max_terms, a.max_atoms};
  const LinearSolveResult res = solve_linearized(vp, u, opts);
  ctx.err << "solve: q = " << res.contraction_q << ", terms = " << res.terms_used
          << ", atoms = " << res.V.atom_count() << "\n";
  const PointSet grid = default_grid(vp.spec.d, a.grid_window);
  Json j = to_json(res);
  j["manifest"] = manifest(ctx, "solve", a.spec,
                           Json{{"u", a.u},
                                {"tol", a.tol},
                                {"max_terms", a.max_terms},
                                {"max_atoms", a.max_atoms},
                                {"grid_window", a.grid_window},
                                {"linear_only", a.linear_only}},
                           std::nullopt);
  j["pde_residual"] = number_json(pde_residual(vp, u, res.V, grid));
  j["residual_certificate"] =
      number_json(residual_certificate(vp, u, res, max_abs_coordinate(grid)));
  emit(ctx, a.out, dump(j));
  return kExitOk;
}

struct IterateArgs {
  std::string spec;
  std::string u0 = "zero";
  std::size_t max_iter = 50;
  double res_tol = 1e-6;
  double grid_window = std::numbers::pi;
  double tol = 1e-8;
  std::size_t max_terms = 200;
  std::size_t max_atoms = 20000;
  std::size_t control_max_atoms = 2000;
  std::string out;
};

int cmd_iterate(const Context& ctx, const IterateArgs& a) {
  const ValidatedProblem vp = load_problem(a.spec, false);
  print_warnings(ctx, vp);
  const SpectralVector u0 = load_control(a.u0, vp);
  PolicyOptions opts;
  opts.max_iter = a.max_iter;
  opts.res_tol = a.res_tol;
  opts.grid_window = a.grid_window;
  opts.solver = SolverOptions{a.tol, a.max_terms, a.max_atoms};
  opts.control_max_atoms = a.control_max_atoms;
  const PolicyIterationReport rep = run_policy_iteration(vp, u0, opts);
  for (const auto& it : rep.iterations) {
    ctx.err << "iteration " << it.i << ": |u| = " << it.u_norm_s << ", |V| = " << it.V_norm_s1
            << ", residual = " << it.hjb_residual << "\n";
  }
  ctx.err << "stop: " << stop_reason_name(rep.stop_reason) << "\n";
  Json j = to_json(rep);
  j["manifest"] = manifest(ctx, "iterate", a.spec,
                           Json{{"u0", a.u0},
                                {"max_iter", a.max_iter},
                                {"res_tol", a.res_tol},
                                {"grid_window", a.grid_window},
                                {"tol", a.tol},
                                {"max_terms", a.max_terms},
                                {"max_atoms", a.max_atoms},
                                {"control_max_atoms", a.control_max_atoms}},
                           std::nullopt);
  emit(ctx, a.out, dump(j));
  switch (rep.stop_reason) {
    case StopReason::kResidualTol:
      return kExitOk;
    case StopReason::kIterCap:
      return kExitIterCap;
    case StopReason::kNotContractive:
      return kExitNotContractive;
  }
  return kExitOther;
}

struct SampleArgs {
  std::string fn;
  int k = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t best_of = 16;
  double box = std::numbers::pi;
  std::string out;
};

int cmd_sample(const Context& ctx, const SampleArgs& a) {
  const SpectralFunction f = load_function(a.fn);
  const Box box = Box::symmetric(f.dim(), a.box);
  const CosineNetwork net = sample_best_of(f, a.k, a.n, a.seed, a.best_of, box);
  const double err = network_h_k_error(net, f, box, a.k);
  Json j = to_json(net);
  j["h_k_error"] = number_json(err);
  j["bound"] = number_json(std::sqrt(box.volume()) * net.source_norm /
                           std::sqrt(static_cast<double>(a.n)));
  j["manifest"] = manifest(ctx, "sample", "",
                           Json{{"fn", a.fn},
                                {"k", a.k},
                                {"n", a.n},
                                {"best_of", a.best_of},
                                {"box", a.box}},
                           a.seed);
  emit(ctx, a.out, dump(j));
  return kExitOk;
}

struct RateArgs {
  std::string fn;
  int k = 2;
  std::string ns = "8,16,32,64,128,256,512,1024";
  std::size_t trials = 200;
  std::uint64_t seed = 0;
  double box = std::numbers::pi;
  std::string out;
};

std::string rate_csv(const std::vector<RateRow>& rows) {
  std::string s = "n,trial,h_k_error,bound\n";
  for (const auto& r : rows) {
    s += std::to_string(r.n) + "," + std::to_string(r.trial) + "," + csv_number(r.h_k_error) +
         "," + csv_number(r.bound) + "\n";
  }
  return s;
}

int cmd_rate(const Context& ctx, const RateArgs& a) {
  const SpectralFunction f = load_function(a.fn);
  const Box box = Box::symmetric(f.dim(), a.box);
  const std::vector<std::size_t> ns = parse_sizes(a.ns);
  const auto rows = rate_study(f, a.k, ns, a.trials, a.seed, box);
  emit(ctx, a.out, rate_csv(rows));
  if (!a.out.empty()) {
    const Json m = manifest(ctx, "rate", "",
                            Json{{"fn", a.fn},
                                 {"k", a.k},
                                 {"ns", a.ns},
                                 {"trials", a.trials},
                                 {"box", a.box}},
                            a.seed);
    write_text_file(a.out + ".manifest.json", dump(Json{{"manifest", m}}));
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string spec;
  std::string u = "zero";
  std::string V;
  std::string points;
  double dt = 1e-3;
  double horizon = 10.0;
  std::size_t paths = 10000;
  std::uint64_t seed = 0;
  std::optional<double> c_bias;
  bool no_antithetic = false;
  std::string out;
};

int cmd_verify(const Context& ctx, const VerifyArgs& a) {
  const ValidatedProblem vp = load_problem(a.spec, true);
  print_warnings(ctx, vp);
  const SpectralVector u = load_control(a.u, vp);
  const SpectralFunction V = load_function(a.V);
  if (V.dim() != vp.spec.d) throw Error(ErrorCode::kDimensionMismatch, "V dimension");
  const PointSet pts = load_points(a.points, vp.spec.d);
  SdeConfig cfg;
  cfg.dt = a.dt;
  cfg.horizon = a.horizon;
  cfg.n_paths = a.paths;
  cfg.seed = a.seed;
  cfg.antithetic = !a.no_antithetic;
  cfg.c_bias = a.c_bias;
  const VerifyReport rep = verify_value(vp, u, V, pts, cfg);
  for (const auto& p : rep.per_point) {
    ctx.err << "x0 = " << p.x[0] << (p.x.size() > 1 ? ",..." : "") << ": V = " << p.V_val
            << ", mc = " << p.mc.mean << " +- " << p.mc.std_error << (p.pass ? " pass" : " FAIL")
            << "\n";
  }
  Json j = to_json(rep);
  j["config"] = Json{{"dt", cfg.dt},
                     {"horizon", cfg.horizon},
                     {"paths", cfg.n_paths},
                     {"seed", cfg.seed},
                     {"antithetic", cfg.antithetic}};
  j["manifest"] = manifest(ctx, "verify", a.spec,
                           Json{{"u", a.u},
                                {"V", a.V},
                                {"points", a.points.empty() ? Json(nullptr) : Json(a.points)},
                                {"dt", a.dt},
                                {"horizon", a.horizon},
                                {"paths", a.paths},
                                {"c_bias", a.c_bias ? Json(*a.c_bias) : Json(nullptr)},
                                {"antithetic", cfg.antithetic}},
                           a.seed);
  emit(ctx, a.out, dump(j));
  return rep.all_pass ? kExitOk : kExitOther;
}

struct ReportArgs {
  std::string run_dir;
};

struct RateSummary {
  std::vector<std::size_t> ns;
  std::vector<double> mean_sq, rms, bound;
  double slope = 0.0;
};

RateSummary summarize_rate(const std::string& csv) {
  std::map<std::size_t, std::pair<double, std::size_t>> acc;
  std::map<std::size_t, double> bounds;
  std::stringstream ss(csv);
  std::string line;
  std::getline(ss, line);
  if (line != "n,trial,h_k_error,bound") {
    throw Error(ErrorCode::kParse, "rate.csv: unexpected header \"" + line + "\"");
  }
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::string n, trial, err, bound;
    if (!std::getline(ls, n, ',') || !std::getline(ls, trial, ',') || !std::getline(ls, err, ',') ||
        !std::getline(ls, bound, ',')) {
      throw Error(ErrorCode::kParse, "rate.csv: malformed row \"" + line + "\"");
    }
    const std::size_t nv = std::stoull(n);
    const double e = std::stod(err);
    acc[nv].first += e * e;
    acc[nv].second += 1;
    bounds[nv] = std::stod(bound);
  }
  RateSummary rs;
  for (const auto& [n, v] : acc) {
    rs.ns.push_back(n);
    rs.mean_sq.push_back(v.first / static_cast<double>(v.second));
    rs.rms.push_back(std::sqrt(rs.mean_sq.back()));
    rs.bound.push_back(bounds[n]);
  }
  if (rs.ns.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(rs.ns.size());
    for (std::size_t i = 0; i < rs.ns.size(); ++i) {
      const double x = std::log(static_cast<double>(rs.ns[i])), y = std::log(rs.rms[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    rs.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  }
  return rs;
}

int cmd_report(const Context& ctx, const ReportArgs& a) {
  const fs::path dir(a.run_dir);
  const fs::path iterate_path = dir / "iterate.json";
  if (!fs::exists(iterate_path)) {
    throw Error(ErrorCode::kIo, "missing " + iterate_path.string());
  }
  const Json it = read_json_file(iterate_path);
  std::optional<Json> verify;
  if (fs::exists(dir / "verify.json")) verify = read_json_file(dir / "verify.json");
  std::optional<RateSummary> rate;
  if (fs::exists(dir / "rate.csv")) rate = summarize_rate(read_text_file(dir / "rate.csv"));

  const Json& fp = it.at("fixed_point");
  const Json& iters = it.at("iterations");
  std::string csv = "iteration,u_norm,V_norm,residual,bound_x0,bound_V,mc_pass\n";
  auto num = [](const Json& v) { return v.is_null() ? std::string("") : v.dump(); };
  for (std::size_t i = 0; i < iters.size(); ++i) {
    const Json& r = iters[i];
    const double slack = r.at("slack").is_null() ? 0.0 : r.at("slack").get<double>();
    std::string mc;
    if (verify && i + 1 == iters.size()) mc = verify->at("all_pass").get<bool>() ? "true" : "false";
    csv += r.at("i").dump() + "," + num(r.at("u_norm_s")) + "," + num(r.at("V_norm_s1")) + "," +
           num(r.at("hjb_residual")) + "," + csv_number(fp.at("x0").get<double>() + slack) + "," +
           csv_number(fp.at("V_bound").get<double>() + slack) + "," + mc + "\n";
  }
  write_text_file(dir / "summary.csv", csv);

  Json summary{{"iterations", iters.size()},
               {"converged", it.at("converged")},
               {"stop_reason", it.at("stop_reason")},
               {"final_residual", iters.empty() ? Json(nullptr) : iters.back().at("hjb_residual")},
               {"final_check", it.at("final_check")},
               {"fixed_point", fp},
               {"mc", nullptr},
               {"rate", nullptr}};
  if (verify) {
    summary["mc"] = Json{{"all_pass", verify->at("all_pass")},
                         {"points", verify->at("per_point").size()}};
  }
  if (rate) {
    std::string long_csv = "n,series,value\n";
    Json per_n = Json::array();
    for (std::size_t i = 0; i < rate->ns.size(); ++i) {
      const std::string n = std::to_string(rate->ns[i]);
      long_csv += n + ",rms_error," + csv_number(rate->rms[i]) + "\n";
      long_csv += n + ",mean_sq_error," + csv_number(rate->mean_sq[i]) + "\n";
      long_csv += n + ",bound," + csv_number(rate->bound[i]) + "\n";
      per_n.push_back(Json{{"n", rate->ns[i]},
                           {"rms_error", number_json(rate->rms[i])},
                           {"mean_sq_error", number_json(rate->mean_sq[i])},
                           {"bound", number_json(rate->bound[i])}});
    }
    write_text_file(dir / "rate_summary.csv", long_csv);
    summary["rate"] = Json{{"per_n", std::move(per_n)}, {"slope", number_json(rate->slope)}};
  }
  summary["manifest"] = manifest(ctx, "report", "", Json{{"run_dir", a.run_dir}}, std::nullopt);
  write_text_file(dir / "summary.json", dump(summary));
  ctx.err << "wrote " << (dir / "summary.csv").string() << " and summary.json\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Policy iteration for elliptic HJB equations in spectral Barron form",
               "barronhjb"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kToolVersion);
  std::size_t threads = 0;
  bool stamp = false;
  app.add_option("--threads", threads, "Worker threads (0 = default)");
  app.add_flag("--stamp", stamp, "Record wall-clock timestamps in output manifests");

  ValidateArgs va;
  auto* validate_cmd = app.add_subcommand("validate", "Check a problem and report its constants");
  validate_cmd->add_option("--spec", va.spec, "Problem JSON")->required();
  validate_cmd->add_flag("--linear-only", va.linear_only, "Allow s >= 1 (single linear solves)");
  validate_cmd->add_option("--out", va.out, "Output file");

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "Solve the linearized equation for one control");
  solve_cmd->add_option("--spec", sa.spec, "Problem JSON")->required();
  solve_cmd->add_option("--u", sa.u, "Control JSON or 'zero'");
  solve_cmd->add_option("--tol", sa.tol, "Tail tolerance in B^{s+1}");
  solve_cmd->add_option("--max-terms", sa.max_terms, "Neumann term budget");
  solve_cmd->add_option("--max-atoms", sa.max_atoms, "Atom budget per term");
  solve_cmd->add_option("--grid-window", sa.grid_window, "Residual grid half width");
  solve_cmd->add_flag("--linear-only", sa.linear_only, "Allow s >= 1");
  solve_cmd->add_option("--out", sa.out, "Output file");

  IterateArgs ia;
  auto* iterate_cmd = app.add_subcommand("iterate", "Run policy iteration");
  iterate_cmd->add_option("--spec", ia.spec, "Problem JSON")->required();
  iterate_cmd->add_option("--u0", ia.u0, "Initial control JSON or 'zero'");
  iterate_cmd->add_option("--max-iter", ia.max_iter, "Iteration cap");
  iterate_cmd->add_option("--res-tol", ia.res_tol, "HJB residual tolerance");
  iterate_cmd->add_option("--grid-window", ia.grid_window, "Residual grid half width");
  iterate_cmd->add_option("--tol", ia.tol, "Linear solve tolerance");
  iterate_cmd->add_option("--max-terms", ia.max_terms, "Neumann term budget");
  iterate_cmd->add_option("--max-atoms", ia.max_atoms, "Atom budget per term");
  iterate_cmd->add_option("--control-max-atoms", ia.control_max_atoms,
                          "Atom budget per control component");
  iterate_cmd->add_option("--out", ia.out, "Output file");

  SampleArgs sm;
  auto* sample_cmd = app.add_subcommand("sample", "Sample a cosine network from a function");
  sample_cmd->add_option("--fn", sm.fn, "Function JSON (or a report holding V)")->required();
  sample_cmd->add_option("--k", sm.k, "Sobolev order (0, 1 or 2)")->required();
  sample_cmd->add_option("--n", sm.n, "Neuron count")->required();
  sample_cmd->add_option("--seed", sm.seed, "Random seed");
  sample_cmd->add_option("--best-of", sm.best_of, "Draws to choose the best from");
  sample_cmd->add_option("--box", sm.box, "Half width of the error box");
  sample_cmd->add_option("--out", sm.out, "Output file");

  RateArgs ra;
  auto* rate_cmd = app.add_subcommand("rate", "Network error versus width study (CSV)");
  rate_cmd->add_option("--fn", ra.fn, "Function JSON")->required();
  rate_cmd->add_option("--k", ra.k, "Sobolev order (0, 1 or 2)");
  rate_cmd->add_option("--ns", ra.ns, "Comma-separated widths");
  rate_cmd->add_option("--trials", ra.trials, "Trials per width");
  rate_cmd->add_option("--seed", ra.seed, "Random seed");
  rate_cmd->add_option("--box", ra.box, "Half width of the error box");
  rate_cmd->add_option("--out", ra.out, "Output CSV");

  VerifyArgs ve;
  auto* verify_cmd = app.add_subcommand("verify", "Monte Carlo check of a value function");
  verify_cmd->add_option("--spec", ve.spec, "Problem JSON")->required();
  verify_cmd->add_option("--u", ve.u, "Control JSON, iterate report, or 'zero'");
  verify_cmd->add_option("--V", ve.V, "Value function JSON or report")->required();
  verify_cmd->add_option("--points", ve.points, "JSON array of probe points");
  verify_cmd->add_option("--dt", ve.dt, "Time step");
  verify_cmd->add_option("--horizon", ve.horizon, "Truncation time");
  verify_cmd->add_option("--paths", ve.paths, "Path count");
  verify_cmd->add_option("--seed", ve.seed, "Random seed");
  verify_cmd->add_option("--c-bias", ve.c_bias, "Discretization allowance constant");
  verify_cmd->add_flag("--no-antithetic", ve.no_antithetic, "Disable antithetic pairs");
  verify_cmd->add_option("--out", ve.out, "Output file");

  ReportArgs rp;
  auto* report_cmd = app.add_subcommand("report", "Summarize a run directory");
  report_cmd->add_option("--run-dir", rp.run_dir, "Directory with iterate.json")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    out << error_json(ErrorCode::kInvalidArgument, e.what()).dump() << "\n";
    return kExitBadArgs;
  }

  if (threads > 0) set_thread_count(threads);
  Context ctx{out, err, stamp, stamp ? iso_now() : std::string()};
  try {
    if (validate_cmd->parsed()) return cmd_validate(ctx, va);
    if (solve_cmd->parsed()) return cmd_solve(ctx, sa);
    if (iterate_cmd->parsed()) return cmd_iterate(ctx, ia);
    if (sample_cmd->parsed()) return cmd_sample(ctx, sm);
    if (rate_cmd->parsed()) return cmd_rate(ctx, ra);
    if (verify_cmd->parsed()) return cmd_verify(ctx, ve);
    if (report_cmd->parsed()) return cmd_report(ctx, rp);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    out << error_json(e.code(), e.what()).dump() << "\n";
    return exit_for(e.code());
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    out << error_json(ErrorCode::kParse, e.what()).dump() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    out << Json{{"error", "Internal"}, {"detail", e.what()}}.dump() << "\n";
    return kExitOther;
  }
  return kExitBadArgs;
}

}  // namespace barronhjb::cli
