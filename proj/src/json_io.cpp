#include "barronhjb/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace barronhjb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::kParse, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) parse_error(std::string("expected an object with field \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) parse_error(std::string("missing field \"") + key + "\"");
  return *it;
}

double get_double(const Json& j, const char* what) {
  if (j.is_null()) return kInf;
  if (!j.is_number()) parse_error(std::string(what) + " must be a number");
  return j.get<double>();
}

std::size_t get_size(const Json& j, const char* what) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) {
    parse_error(std::string(what) + " must be an integer");
  }
  const auto v = j.get<long long>();
  if (v < 0) parse_error(std::string(what) + " must be non-negative");
  return static_cast<std::size_t>(v);
}

std::string order_key(double s) { return Json(s).dump(); }

bool is_zero_freq(const std::vector<double>& xi) {
  for (double v : xi) {
    if (v != 0.0) return false;
  }
  return true;
}

}  // namespace

Json number_json(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json to_json(const SpectralFunction& f) {
  Json atoms = Json::array();
  if (f.has_constant()) {
    atoms.push_back({{"freq", std::vector<double>(f.dim(), 0.0)},
                     {"re", f.constant_term()},
                     {"im", 0.0},
                     {"pair", false}});
  }
  for (std::size_t p = 0; p < f.pair_count(); ++p) {
    const Complex c = f.pair_amplitude(p);
    atoms.push_back(
        {{"freq", f.pair_frequency(p)}, {"re", c.real()}, {"im", c.imag()}, {"pair", true}});
  }
  Json j{{"dim", f.dim()}, {"atoms", std::move(atoms)}};
  if (!f.ledger().empty()) {
    Json led = Json::object();
    for (const auto& [s, v] : f.ledger()) led[order_key(s)] = number_json(v);
    j["ledger"] = std::move(led);
  }
  return j;
}

SpectralFunction spectral_from_json(const Json& j) {
  const std::size_t dim = get_size(field(j, "dim"), "dim");
  if (dim == 0) parse_error("dim must be positive");
  const Json& atoms = field(j, "atoms");
  if (!atoms.is_array()) parse_error("atoms must be an array");
  std::vector<FourierAtom> raw;
  raw.reserve(atoms.size());
  for (const Json& a : atoms) {
    const Json& fr = field(a, "freq");
    if (!fr.is_array() || fr.size() != dim) {
      throw Error(ErrorCode::kDimensionMismatch, "atom freq must have dim entries");
    }
    std::vector<double> xi;
    for (const Json& v : fr) {
      if (!v.is_number()) parse_error("freq entries must be numbers");
      xi.push_back(v.get<double>());
    }
    const double re = get_double(field(a, "re"), "re");
    const double im = get_double(field(a, "im"), "im");
    if (!std::isfinite(re) || !std::isfinite(im)) parse_error("amplitudes must be finite");
    bool pair = true;
    if (auto it = a.find("pair"); it != a.end()) {
      if (!it->is_boolean()) parse_error("pair must be a boolean");
      pair = it->get<bool>();
    }
    if (is_zero_freq(xi)) {
      if (pair) {
        throw Error(ErrorCode::kInvalidArgument, "zero-frequency atom must have pair = false");
      }
      if (im != 0.0) {
        throw Error(ErrorCode::kInvalidArgument, "zero-frequency atom must have a real amplitude");
      }
      raw.push_back({std::move(xi), Complex(re, 0.0)});
    } else {
      if (!pair) {
        throw Error(ErrorCode::kInvalidArgument,
                    "nonzero-frequency atom must be stored as a conjugate pair (pair = true)");
      }
      // Re(2c e^{i xi x}) is the pair (xi, c), (-xi, conj c).
      raw.push_back({std::move(xi), Complex(2.0 * re, 2.0 * im)});
    }
  }
  Ledger ledger;
  if (auto it = j.find("ledger"); it != j.end()) {
    if (!it->is_object()) parse_error("ledger must be an object");
    for (const auto& [k, v] : it->items()) {
      double s = 0.0;
      try {
        std::size_t used = 0;
        s = std::stod(k, &used);
        if (used != k.size()) throw std::invalid_argument(k);
      } catch (const std::exception&) {
        parse_error("ledger key \"" + k + "\" is not a number");
      }
      const double val = get_double(v, "ledger value");
      if (std::isfinite(val)) {
        if (val < 0.0) parse_error("ledger values must be non-negative");
        ledger[s] = val;
      }
    }
  }
  return SpectralFunction::real_part(dim, raw, std::move(ledger));
}

Json to_json(std::span<const SpectralFunction> fs) {
  Json arr = Json::array();
  for (const auto& f : fs) arr.push_back(to_json(f));
  return arr;
}

SpectralVector spectral_vector_from_json(const Json& j) {
  if (!j.is_array()) parse_error("expected an array of spectral functions");
  SpectralVector out;
  for (const Json& e : j) out.push_back(spectral_from_json(e));
  return out;
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows; ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols; ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (j.is_number()) return Matrix(1, 1, j.get<double>());
  if (!j.is_array() || j.empty()) parse_error("matrix must be a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array()) parse_error("matrix rows must be arrays");
  const std::size_t cols = j[0].size();
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) {
      throw Error(ErrorCode::kDimensionMismatch, "matrix rows have different lengths");
    }
    for (std::size_t k = 0; k < cols; ++k) {
      if (!j[i][k].is_number()) parse_error("matrix entries must be numbers");
      m(i, k) = j[i][k].get<double>();
    }
  }
  return m;
}

Json to_json(const ProblemSpec& spec) {
  Json g = Json::array();
  for (std::size_t k = 0; k < spec.g.rows; ++k) {
    Json row = Json::array();
    for (std::size_t j = 0; j < spec.g.cols; ++j) row.push_back(to_json(spec.g(k, j)));
    g.push_back(std::move(row));
  }
  return Json{{"d", spec.d},         {"m", spec.m},          {"gamma", spec.gamma},
              {"s", spec.s},         {"R", to_json(spec.R)}, {"f", to_json(spec.f)},
              {"g", std::move(g)},   {"ell", to_json(spec.ell)}};
}

ProblemSpec problem_from_json(const Json& j) {
  ProblemSpec spec;
  spec.d = get_size(field(j, "d"), "d");
  spec.m = get_size(field(j, "m"), "m");
  spec.gamma = get_double(field(j, "gamma"), "gamma");
  spec.s = j.contains("s") ? get_double(j["s"], "s") : 2.0;
  spec.R = matrix_from_json(field(j, "R"));
  spec.f = spectral_vector_from_json(field(j, "f"));
  const Json& g = field(j, "g");
  if (!g.is_array()) parse_error("g must be an array of rows");
  spec.g.rows = g.size();
  spec.g.cols = g.empty() ? 0 : g[0].size();
  for (const Json& row : g) {
    if (!row.is_array() || row.size() != spec.g.cols) {
      throw Error(ErrorCode::kDimensionMismatch, "g rows have different lengths");
    }
    for (const Json& e : row) spec.g.entries.push_back(spectral_from_json(e));
  }
  spec.ell = spectral_from_json(field(j, "ell"));
  return spec;
}

Json to_json(const DiscountReport& r) {
  return Json{{"T", number_json(r.T)},
              {"lhs", number_json(r.lhs)},
              {"gamma_star", number_json(r.gamma_star)},
              {"gamma_ok", r.gamma_ok}};
}

Json to_json(const FixedPointReport& r) {
  return Json{{"a", number_json(r.a)},
              {"b", number_json(r.b)},
              {"c", number_json(r.c)},
              {"d_coef", number_json(r.d_coef)},
              {"threshold", number_json(r.threshold)},
              {"gamma_ok", r.gamma_ok},
              {"x0", number_json(r.x0)},
              {"a0", number_json(r.a0)},
              {"V_bound", number_json(r.V_bound)}};
}

Json to_json(const LinearSolveResult& r) {
  Json norms = Json::array();
  for (double v : r.term_norms) norms.push_back(number_json(v));
  return Json{{"terms_used", r.terms_used},
              {"q", number_json(r.contraction_q)},
              {"tail_bound", number_json(r.tail_bound)},
              {"prune_ledger", number_json(r.prune_ledger)},
              {"term_norms", std::move(norms)},
              {"norm_bound", r.norm_bound ? number_json(*r.norm_bound) : Json(nullptr)},
              {"V", to_json(r.V)}};
}

Json to_json(const PolicyIterationReport& r) {
  Json its = Json::array();
  for (const auto& it : r.iterations) {
    its.push_back(Json{{"i", it.i},
                       {"u_norm_s", number_json(it.u_norm_s)},
                       {"V_norm_s1", number_json(it.V_norm_s1)},
                       {"hjb_residual", number_json(it.hjb_residual)},
                       {"successive_diff", number_json(it.successive_diff)},
                       {"worst_violation", number_json(it.worst_violation)},
                       {"solve_cert", number_json(it.solve_cert)},
                       {"slack", number_json(it.slack)},
                       {"monotone_slack", number_json(it.monotone_slack)},
                       {"q", number_json(it.q)},
                       {"terms_used", it.terms_used},
                       {"value_decrease_ok", it.value_decrease_ok},
                       {"u_bound_ok", it.u_bound_ok},
                       {"V_bound_ok", it.V_bound_ok},
                       {"recurrence_ok", it.recurrence_ok}});
  }
  return Json{{"iterations", std::move(its)},
              {"converged", r.converged},
              {"stop_reason", std::string(stop_reason_name(r.stop_reason))},
              {"detail", r.detail},
              {"fixed_point", to_json(r.fixed_point)},
              {"grid_points", r.grid_points},
              {"final_check", Json{{"residual", number_json(r.final_check_residual)},
                                   {"points", r.final_check_points}}},
              {"bounds_ok", r.bounds_ok},
              {"monotone_ok", r.monotone_ok},
              {"residual_monotone", r.residual_monotone},
              {"final", Json{{"u", to_json(r.u_final)},
                             {"V", to_json(r.V_final)},
                             {"u_last", to_json(r.u_last)}}}};
}

Json to_json(const CosineNetwork& net) {
  Json neurons = Json::array();
  for (const auto& nr : net.neurons) neurons.push_back(Json{{"a", nr.a}, {"w", nr.w}, {"b", nr.b}});
  return Json{{"n", net.n},
              {"k", net.k},
              {"dim", net.dim},
              {"source_norm", number_json(net.source_norm)},
              {"neurons", std::move(neurons)}};
}

CosineNetwork network_from_json(const Json& j) {
  CosineNetwork net;
  net.n = get_size(field(j, "n"), "n");
  net.k = static_cast<int>(get_size(field(j, "k"), "k"));
  net.source_norm = get_double(field(j, "source_norm"), "source_norm");
  const Json& ns = field(j, "neurons");
  if (!ns.is_array()) parse_error("neurons must be an array");
  for (const Json& e : ns) {
    Neuron nr;
    nr.a = get_double(field(e, "a"), "a");
    nr.b = get_double(field(e, "b"), "b");
    nr.w = field(e, "w").get<std::vector<double>>();
    net.neurons.push_back(std::move(nr));
  }
  if (j.contains("dim")) {
    net.dim = get_size(j["dim"], "dim");
  } else if (!net.neurons.empty()) {
    net.dim = net.neurons[0].w.size();
  }
  for (const auto& nr : net.neurons) {
    if (nr.w.size() != net.dim) throw Error(ErrorCode::kDimensionMismatch, "neuron weight length");
  }
  if (net.neurons.size() != net.n) parse_error("n does not match the number of neurons");
  return net;
}

Json to_json(const CostEstimate& e) {
  return Json{{"mean", number_json(e.mean)},
              {"std_error", number_json(e.std_error)},
              {"tail_bound", number_json(e.tail_bound)},
              {"bias_allowance", number_json(e.bias_allowance)},
              {"paths", e.paths},
              {"failed_paths", e.failed_paths},
              {"steps", e.steps}};
}

Json to_json(const VerifyReport& r) {
  Json pts = Json::array();
  for (const auto& p : r.per_point) {
    pts.push_back(Json{{"x", p.x},
                       {"V_val", number_json(p.V_val)},
                       {"mc_mean", number_json(p.mc.mean)},
                       {"mc_stderr", number_json(p.mc.std_error)},
                       {"tail_bound", number_json(p.mc.tail_bound)},
                       {"bias_allowance", number_json(p.mc.bias_allowance)},
                       {"tolerance", number_json(p.tolerance)},
                       {"failed_paths", p.mc.failed_paths},
                       {"pass", p.pass}});
  }
  return Json{{"per_point", std::move(pts)}, {"all_pass", r.all_pass}};
}

Json error_json(ErrorCode code, const std::string& detail) {
  return Json{{"error", std::string(error_code_name(code))}, {"detail", detail}};
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "error reading " + path.string());
  return os.str();
}

Json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "error writing " + path.string());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace barronhjb
