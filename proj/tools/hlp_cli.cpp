// hlp: generate, solve, decide and analyse Hidden Lattice Problem instances.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "hlp/bounds.hpp"
#include "hlp/errors.hpp"
#include "hlp/experiments.hpp"
#include "hlp/instances.hpp"
#include "hlp/io.hpp"
#include "hlp/linalg.hpp"
#include "hlp/parallel.hpp"

using namespace hlp;

namespace {

// "0.99", "99/100" or "1" as an exact rational.
mpq_class parse_rational(const std::string& s) {
  if (s.find('/') != std::string::npos) return mpq_from_string(s);
  auto dot = s.find('.');
  if (dot == std::string::npos) return mpq_from_string(s);
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  mpz_class num, den = 1;
  if (digits.empty() || digits == "-" || num.set_str(digits, 10) != 0) throw InvalidArgument("not a number: " + s);
  for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

void emit(const json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) throw InvalidArgument("cannot write " + out);
  f << j.dump(2) << '\n';
}

HlpInstance require_hlp(const InstanceFile& f) {
  if (!f.hlp) throw InvalidInstance("expected an HLP instance, got kind " + f.kind);
  return *f.hlp;
}

struct Common {
  std::string delta = "0.99";
  ReductionParams reduction() const {
    ReductionParams p;
    p.delta = parse_rational(delta);
    validate_delta(p.delta);
    return p;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hidden Lattice Problem toolkit"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a seeded instance");
  std::string kind = "hlp", out;
  GenSpec spec;
  unsigned log_n = 0;
  std::string exact_N;
  bool composite = false;
  gen->add_option("--kind", kind, "hlp|nhlp|crt_acd|hssp|rank2_preset");
  gen->add_option("--n", spec.n);
  gen->add_option("--m", spec.m);
  gen->add_option("--r", spec.r)->capture_default_str();
  gen->add_option("--log-n", log_n);
  gen->add_option("--modulus", exact_N, "exact N (overrides --log-n)");
  gen->add_option("--alpha", spec.alpha)->capture_default_str();
  gen->add_option("--rho", spec.rho)->capture_default_str();
  gen->add_option("--eta", spec.eta);
  gen->add_option("--rho-acd", spec.rho_acd);
  gen->add_option("--seed", spec.seed)->envname("HLP_SEED");
  gen->add_flag("--composite", composite, "N = 2^log_n + random odd offset");
  gen->add_option("-o,--out", out);

  // solve
  auto* solve = app.add_subcommand("solve", "recover the hidden lattice");
  std::string input, algo = "I", completion = "auto", k_mult = "1";
  bool as_json = false;
  std::size_t block_dim = 0;
  Common common;
  solve->add_option("--algo", algo)->check(CLI::IsMember({"I", "II"}));
  solve->add_option("--delta", common.delta);
  solve->add_option("--completion", completion)->check(CLI::IsMember({"auto", "double-orth", "mod-n"}));
  solve->add_option("--k-multiplier", k_mult);
  solve->add_option("--blockwise", block_dim, "solve on projections of this dimension");
  solve->add_option("--input", input)->required();
  solve->add_flag("--json", as_json);
  solve->add_option("-o,--out", out);

  // decide
  auto* decide = app.add_subcommand("decide", "decisional HLP via the gap statistic");
  double tau = 32;
  std::string side = "orth";
  decide->add_option("--input", input)->required();
  decide->add_option("--tau", tau)->capture_default_str();
  decide->add_option("--side", side)->check(CLI::IsMember({"orth", "cong"}));
  decide->add_option("--delta", common.delta);

  // nhlp
  auto* nhlp = app.add_subcommand("nhlp", "solve a noisy HLP instance");
  nhlp->add_option("--input", input)->required();
  nhlp->add_option("--algo", algo)->check(CLI::IsMember({"I", "II"}));
  nhlp->add_option("--delta", common.delta);
  nhlp->add_option("-o,--out", out);

  // bounds
  auto* bounds = app.add_subcommand("bounds", "heuristic and proven modulus bounds");
  AnalysisParams ap;
  std::optional<double> bound_log_n;
  std::string hermite = "gaussian";
  bounds->add_option("--n", ap.n)->required();
  bounds->add_option("--m", ap.m)->required();
  bounds->add_option("--r", ap.r)->required();
  bounds->add_option("--log-mu", ap.log_mu)->required();
  bounds->add_option("--log-iota", ap.log_iota)->capture_default_str();
  bounds->add_option("--theta", ap.theta)->capture_default_str();
  bounds->add_option("--delta", ap.delta)->capture_default_str();
  bounds->add_option("--epsilon", ap.epsilon)->capture_default_str();
  bounds->add_option("--log-n", bound_log_n, "evaluate density and cost at this log N");
  bounds->add_option("--hermite", hermite)->check(CLI::IsMember({"gaussian", "2n/3"}));

  // oracle
  auto* oracle = app.add_subcommand("oracle", "brute-force oracles");
  oracle->require_subcommand(1);
  auto* count_orth = oracle->add_subcommand("count-orth", "#{a mod N : <a,t> = 0 mod N}");
  std::vector<std::string> t_str;
  std::string modulus;
  count_orth->add_option("--t", t_str)->required()->delimiter(',');
  count_orth->add_option("--modulus", modulus)->required();
  count_orth->add_flag("--json", as_json);

  // bench
  auto* bench = app.add_subcommand("bench", "run a seeded experiment suite");
  std::string suite, params_file;
  bool timings = false;
  std::size_t threads = default_threads();
  bench->add_option("--suite", suite)->required()->check(CLI::IsMember({"table4", "table5", "table2", "success-rate"}));
  bench->add_option("--params", params_file, "suite parameter JSON (defaults built in)");
  bench->add_option("--out", out);
  bench->add_option("--threads", threads)->envname("HLP_THREADS");
  bench->add_flag("--timings", timings, "fill the step1_ms/step2_ms columns");

  // verify
  auto* verify = app.add_subcommand("verify", "independently check a solve report");
  std::string report_file;
  verify->add_option("--input", input)->required();
  verify->add_option("--report", report_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*gen) {
      spec.kind = gen_kind_from_string(kind);
      if (!exact_N.empty()) spec.N = mpz_from_json(json(exact_N));
      if (log_n) spec.log_N = log_n;
      spec.prime_modulus = !composite;
      InstanceFile f;
      f.kind = to_string(spec.kind);
      switch (spec.kind) {
        case GenKind::hlp: f.hlp = gen_hlp(spec); break;
        case GenKind::nhlp: f.nhlp = gen_nhlp(spec); break;
        case GenKind::hssp: f.hlp = gen_hssp(spec.n, spec.m, log_n, spec.seed); break;
        case GenKind::rank2_preset: f.hlp = gen_rank2_preset(spec.m, log_n, spec.alpha, spec.seed); break;
        case GenKind::crt_acd: {
          CrtAcdInstance c = gen_crt_acd(spec.n, spec.eta, spec.rho_acd, spec.seed);
          f.hlp = c.instance;
          f.secrets = {{"primes", json::array()}, {"residues", matrix_to_json(c.residues)}};
          for (const auto& p : c.primes) f.secrets["primes"].push_back(p.get_str());
          break;
        }
      }
      emit(instance_to_json(f), out);
      return 0;
    }

    if (*solve) {
      HlpInstance inst = require_hlp(load_instance(input));
      SolveOptions opt;
      opt.reduction = common.reduction();
      opt.complement.reduction = opt.reduction;
      opt.complement.k_multiplier = mpz_from_json(json(k_mult));
      opt.completion = completion == "mod-n"         ? CompletionMode::mod_n_local
                       : completion == "double-orth" ? CompletionMode::double_orthogonal
                                                     : CompletionMode::automatic;
      const Algorithm a = algo == "I" ? Algorithm::I : Algorithm::II;
      SolveReport rep;
      if (block_dim) {
        BlockwiseOptions bo;
        bo.block_dim = block_dim;
        bo.algo = a;
        bo.solve = opt;
        bo.threads = default_threads();
        rep = blockwise_solve(inst, bo);
      } else {
        rep = solve_hlp(inst, a, opt);
      }
      json j = report_to_json(rep);
      if (as_json || !out.empty()) {
        emit(j, out);
      } else {
        std::cout << "algorithm " << rep.algorithm << " (" << rep.completion_mode << ")\n"
                  << "rank " << rep.recovered.rank() << ", log2 sigma " << rep.log2_sigma_out << '\n'
                  << "success " << (rep.success ? (*rep.success ? "yes" : "no") : "unknown") << '\n'
                  << rep.recovered.matrix().to_string() << '\n';
      }
      return 0;
    }

    if (*decide) {
      InstanceFile f = load_instance(input);
      const HlpInstance inst = require_hlp(f);
      DhlpVerdict v =
          decide_dhlp(inst.M_basis, inst.N, tau, side == "orth" ? DhlpSide::orthogonal : DhlpSide::congruence, common.reduction());
      emit(verdict_to_json(v), out);
      return 0;
    }

    if (*nhlp) {
      InstanceFile f = load_instance(input);
      if (!f.nhlp) throw InvalidInstance("expected an NHLP instance, got kind " + f.kind);
      SolveOptions opt;
      opt.reduction = common.reduction();
      opt.complement.reduction = opt.reduction;
      SolveReport rep = solve_nhlp(*f.nhlp, opt, algo == "I" ? Algorithm::I : Algorithm::II);
      emit(report_to_json(rep), out);
      return 0;
    }

    if (*bounds) {
      ap.hermite = hermite == "2n/3" ? HermiteMode::upper_bound_2n3 : HermiteMode::gaussian_n_2pie;
      emit(bound_report_to_json(bound_report(ap, bound_log_n), ap), "");
      return 0;
    }

    if (*count_orth) {
      IntVector t;
      for (const auto& s : t_str) t.push_back(mpz_from_json(json(s)));
      mpz_class N = mpz_from_json(json(modulus));
      mpz_class c = count_orthogonal_mod_oracle(t, N);
      if (as_json)
        emit({{"count", c.get_str()}, {"formula", count_orthogonal_mod_formula(t, N).get_str()}}, "");
      else
        std::cout << c.get_str() << '\n';
      return 0;
    }

    if (*bench) {
      json params = params_file.empty() ? default_suite_params(suite) : load_json(params_file);
      auto rows = run_suite(suite, params, threads);
      if (out.empty() || out == "-") {
        write_rows_csv(std::cout, rows, timings);
      } else {
        std::ofstream f(out, std::ios::binary);
        if (!f) throw InvalidArgument("cannot write " + out);
        write_rows_csv(f, rows, timings);
      }
      return 0;
    }

    if (*verify) {
      HlpInstance inst = require_hlp(load_instance(input));
      json rep = load_json(report_file);
      LatticeBasis R(matrix_from_json(rep.at("recovered_basis")));
      json res;
      res["rank_ok"] = R.rank() == inst.n && R.ambient_dim() == inst.m;
      // M ⊆ R (mod N): every row of M lies in R + N·Z^m.
      res["contains_M_mod_N"] = res["rank_ok"].get<bool>() &&
                                rows_in_lattice(inst.M_basis.matrix(), cong_mod_basis(R, inst.N).matrix());
      ComplementParams cp;
      cp.method = ComplementMethod::integer_kernel;
      res["complete"] = res["rank_ok"].get<bool>() && hlp::completion(R, cp).gram_det() == R.gram_det();
      if (inst.planted) res["matches_planted"] = matches_planted(R, inst.planted->L_basis);
      bool ok = true;
      for (auto& [k, v] : res.items()) ok = ok && v.get<bool>();
      res["ok"] = ok;
      emit(res, "");
      return ok ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << json{{"error", e.kind()}, {"message", e.what()}}.dump() << '\n';
    return 1;
  } catch (const json::exception& e) {
    std::cerr << json{{"error", "InvalidInstance"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }
  return 0;
}
