#include "hlp/io.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include "hlp/errors.hpp"

namespace hlp {

namespace {

json num_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json mpz_list(const std::vector<mpz_class>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

std::vector<mpz_class> mpz_list_from(const json& j) {
  std::vector<mpz_class> out;
  if (!j.is_array()) throw InvalidInstance("expected an array of integers");
  for (const auto& x : j) out.push_back(mpz_from_json(x));
  return out;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInstance(std::string("missing field: ") + key);
  return j.at(key);
}

std::size_t size_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw InvalidInstance(std::string("field must be a non-negative integer: ") + key);
  return v.get<std::size_t>();
}

LatticeBasis basis_from(const json& j) {
  try {
    return LatticeBasis(matrix_from_json(j));
  } catch (const InvalidInstance&) {
    throw;
  } catch (const Error& e) {
    throw InvalidInstance(std::string("bad basis: ") + e.what());
  }
}

}  // namespace

mpz_class mpz_from_json(const json& j) {
  if (j.is_number_integer()) return mpz_class(j.dump());
  if (!j.is_string()) throw InvalidInstance("integer must be a decimal string");
  mpz_class x;
  const std::string& s = j.get_ref<const std::string&>();
  if (s.empty() || x.set_str(s, 10) != 0) throw InvalidInstance("not a decimal integer: " + s);
  return x;
}

mpq_class mpq_from_string(const std::string& s) {
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0) throw InvalidInstance("not a rational p/q: " + s);
  q.canonicalize();
  return q;
}

json matrix_to_json(const IntegerMatrix& a) {
  json rows = json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (const auto& x : a.row(i)) row.push_back(x.get_str());
    rows.push_back(std::move(row));
  }
  return rows;
}

IntegerMatrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw InvalidInstance("matrix must be an array of rows");
  std::vector<IntVector> rows;
  for (const auto& r : j) {
    rows.push_back(mpz_list_from(r));
    if (rows.back().size() != rows.front().size()) throw InvalidInstance("ragged matrix");
  }
  if (rows.empty()) return {};
  return IntegerMatrix::from_rows(rows);
}

json instance_to_json(const InstanceFile& f) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = f.kind;
  if (f.nhlp) {
    const NhlpInstance& x = *f.nhlp;
    j["m"] = x.m;
    j["n"] = x.n;
    j["r"] = x.r;
    j["N"] = x.N.get_str();
    j["N_factorization"] = mpz_list(x.N_factorization);
    j["M_basis"] = matrix_to_json(x.W_basis.matrix());
    j["rho"] = x.rho;
    if (x.planted) {
      json p;
      p["L_basis"] = matrix_to_json(x.planted->L_basis.matrix());
      p["X_basis"] = matrix_to_json(x.planted->X_basis);
      p["mu_sq"] = x.planted->mu_sq.get_str();
      p["rho_actual"] = x.planted->rho_actual;
      p["seed"] = x.planted->seed;
      j["planted"] = std::move(p);
    }
  } else if (f.hlp) {
    const HlpInstance& x = *f.hlp;
    j["m"] = x.m;
    j["n"] = x.n;
    j["r"] = x.r;
    j["N"] = x.N.get_str();
    j["N_factorization"] = mpz_list(x.N_factorization);
    j["M_basis"] = matrix_to_json(x.M_basis.matrix());
    if (x.planted) {
      json p;
      p["L_basis"] = matrix_to_json(x.planted->L_basis.matrix());
      p["mu_sq"] = x.planted->mu_sq.get_str();
      p["seed"] = x.planted->seed;
      if (!x.planted->coefficients.empty()) p["coefficients"] = matrix_to_json(x.planted->coefficients);
      if (!f.secrets.is_null()) p["secrets"] = f.secrets;
      j["planted"] = std::move(p);
    }
  } else {
    throw InvalidArgument("empty instance file");
  }
  return j;
}

static InstanceFile parse_instance(const json& j) {
  if (!j.is_object()) throw InvalidInstance("instance must be a JSON object");
  if (size_field(j, "schema_version") != static_cast<std::size_t>(kSchemaVersion))
    throw InvalidInstance("unsupported schema_version");
  InstanceFile f;
  f.kind = field(j, "kind").get<std::string>();
  const std::size_t m = size_field(j, "m"), n = size_field(j, "n"), r = size_field(j, "r");
  mpz_class N = mpz_from_json(field(j, "N"));
  std::vector<mpz_class> fac = j.contains("N_factorization") ? mpz_list_from(j["N_factorization"]) : std::vector<mpz_class>{};
  LatticeBasis M = basis_from(field(j, "M_basis"));
  const json* p = j.contains("planted") && !j["planted"].is_null() ? &j["planted"] : nullptr;

  if (f.kind == "nhlp") {
    NhlpInstance x;
    x.m = m, x.n = n, x.r = r, x.N = N, x.N_factorization = fac;
    x.W_basis = std::move(M);
    x.rho = field(j, "rho").get<double>();
    if (p) {
      PlantedNhlp pl;
      pl.L_basis = basis_from(field(*p, "L_basis"));
      pl.X_basis = matrix_from_json(field(*p, "X_basis"));
      pl.mu_sq = mpq_from_string(field(*p, "mu_sq").get<std::string>());
      pl.rho_actual = p->value("rho_actual", 0.0);
      pl.seed = p->value("seed", std::uint64_t{0});
      x.planted = std::move(pl);
    }
    x.validate();
    f.nhlp = std::move(x);
  } else {
    HlpInstance x;
    x.m = m, x.n = n, x.r = r, x.N = N, x.N_factorization = fac;
    x.M_basis = std::move(M);
    if (p) {
      PlantedHlp pl;
      pl.L_basis = basis_from(field(*p, "L_basis"));
      pl.mu_sq = mpq_from_string(field(*p, "mu_sq").get<std::string>());
      pl.seed = p->value("seed", std::uint64_t{0});
      if (p->contains("coefficients")) pl.coefficients = matrix_from_json((*p)["coefficients"]);
      if (p->contains("secrets")) f.secrets = (*p)["secrets"];
      x.planted = std::move(pl);
    }
    x.validate();
    f.hlp = std::move(x);
  }
  return f;
}

InstanceFile instance_from_json(const json& j) {
  try {
    return parse_instance(j);
  } catch (const json::exception& e) {
    throw InvalidInstance(std::string("malformed instance: ") + e.what());
  }
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInstance(std::string("malformed JSON: ") + e.what());
  }
}

void save_instance(const std::string& path, const InstanceFile& f) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << instance_to_json(f).dump(1) << '\n';
}

InstanceFile load_instance(const std::string& path) {
  try {
    return instance_from_json(load_json(path));
  } catch (const json::exception& e) {
    throw InvalidInstance(std::string("malformed instance: ") + e.what());
  }
}

json report_to_json(const SolveReport& r) {
  json j;
  j["algorithm"] = r.algorithm;
  j["completion_mode"] = r.completion_mode;
  j["rank"] = r.recovered.rank();
  j["recovered_basis"] = matrix_to_json(r.recovered.matrix());
  j["recovered_gram_det"] = r.recovered.gram_det().get_str();
  j["intermediate_rank"] = r.intermediate.rank();
  j["sigma_out"] = num_or_null(r.sigma_out);
  j["log2_sigma_out"] = num_or_null(r.log2_sigma_out);
  j["reduction"] = {{"swap_count", r.reduction.swap_count},
                    {"size_reduction_count", r.reduction.size_reduction_count},
                    {"max_intermediate_bitlength", r.reduction.max_intermediate_bitlength},
                    {"certified", r.reduction.certified}};
  j["step1_ms"] = r.step1_ms;
  j["step2_ms"] = r.step2_ms;
  j["success"] = r.success ? json(*r.success) : json(nullptr);
  if (r.intermediate_in_hidden_orthogonal) j["intermediate_in_hidden_orthogonal"] = *r.intermediate_in_hidden_orthogonal;
  return j;
}

json bound_report_to_json(const BoundReport& b, const AnalysisParams& p) {
  json j;
  j["params"] = {{"n", p.n}, {"m", p.m}, {"r", p.r}, {"log_mu", p.log_mu}, {"log_iota", p.log_iota},
                 {"theta", p.theta}, {"delta", p.delta}, {"epsilon", p.epsilon}};
  j["heuristic_I"] = b.heuristic_I_bits;
  j["heuristic_II"] = b.heuristic_II_bits;
  j["heuristic_II_minkowski"] = b.heuristic_II_minkowski_bits;
  j["proven_I_logNeps"] = b.proven_I_bits ? json(*b.proven_I_bits) : json(nullptr);
  j["proven_II_logNeps"] = b.proven_II_bits ? json(*b.proven_II_bits) : json(nullptr);
  if (b.proven_I_bits) j["proven_I_logN"] = *b.proven_I_bits - std::log2(p.epsilon);
  if (b.proven_II_bits) j["proven_II_logN"] = *b.proven_II_bits - std::log2(p.epsilon);
  if (b.density) j["density"] = {{"delta", b.density->delta}, {"delta_I", b.density->delta_I}, {"delta_II", b.density->delta_II}};
  if (b.eps) j["epsilon_diagnostics"] = {{"log2_k_eps", b.eps->log2_k_eps}, {"log2_l_eps", b.eps->log2_l_eps}};
  if (b.cost)
    j["cost"] = {{"cost_I_log2", b.cost->cost_I_log2}, {"cost_II_log2", b.cost->cost_II_log2},
                 {"bkz_lower_log2", b.cost->bkz_lower_log2}};
  return j;
}

json gap_profile_to_json(const GapProfile& g) {
  json j;
  j["reduced_norms"] = g.reduced_norms;
  j["log2_g"] = g.log2_g;
  j["log2_jump"] = g.log2_jump;
  j["detected_rank"] = g.detected_rank ? json(*g.detected_rank) : json(nullptr);
  j["tau_log2"] = g.tau_log2;
  return j;
}

json verdict_to_json(const DhlpVerdict& v) {
  json j;
  j["exists"] = v.exists;
  j["detected_rank"] = v.detected_rank ? json(*v.detected_rank) : json(nullptr);
  j["k_star"] = v.k_star;
  j["max_jump_log2"] = v.max_jump_log2;
  j["profile"] = gap_profile_to_json(v.profile);
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << csv_field(fields[i]);
  os << "\r\n";
}

}  // namespace hlp
