#pragma once

// Command-line front end: one subcommand per module, config-file support,
// JSON/text reporting, deterministic seeds. Exit codes: 0 all checks pass,
// 1 a verification failed, 2 usage or configuration error.

#include "eiscoh/selftest.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace eiscoh::cli {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

inline std::vector<long long> parse_int_list(const std::string& s) {
  std::vector<long long> out;
  for (const auto& part : split(s, ','))
    if (!part.empty()) out.push_back(std::stoll(part));
  return out;
}

inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(BigInt(s));
  return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

inline std::vector<Rational> parse_rational_list(const std::string& s) {
  std::vector<Rational> out;
  for (const auto& part : split(s, ','))
    if (!part.empty()) out.push_back(parse_rational(part));
  return out;
}

struct TowerOptions {
  std::string preset = "gauss";
  std::string poly_f0, poly_f1, poly_f2;

  std::shared_ptr<FieldTower> build() const {
    if (poly_f0.empty()) return make_tower(preset);
    TowerSpec spec;
    spec.f0 = parse_rational_list(poly_f0);
    for (const auto& coeff : split(poly_f1, '|')) spec.f1.push_back(parse_rational_list(coeff));
    for (const auto& coeff : split(poly_f2, '|')) {
      std::vector<std::vector<Rational>> e;
      for (const auto& sub : split(coeff, ';')) e.push_back(parse_rational_list(sub));
      spec.f2.push_back(std::move(e));
    }
    return std::make_shared<FieldTower>("custom", std::move(spec));
  }
};

struct SigmaOptions {
  std::vector<std::string> names;  // named generators or integer parameters
  std::string perm;                // explicit label permutation
  long long a = 1;
  long long modulus = 0;

  std::vector<GaloisElement> build(const FieldTower& t) const {
    std::vector<GaloisElement> out;
    for (const auto& nm : names) out.push_back(named_sigma(t, nm));
    if (!perm.empty()) {
      std::vector<size_t> fwd;
      for (long long v : parse_int_list(perm)) fwd.push_back(static_cast<size_t>(v));
      out.push_back(GaloisElement::explicit_perm(
          t, std::move(fwd), a, modulus ? modulus : t.sigma_modulus, "explicit"));
    }
    if (out.empty())
      for (auto& g : generator_sigmas(t)) out.push_back(std::move(g));
    return out;
  }
};

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string elem_to_string(const LayeredAlgebra& alg, const FlatElem& e) {
  static const char* vars[3] = {"x", "y", "z"};
  std::ostringstream os;
  bool first = true;
  for (int m = 0; m < alg.dim; ++m) {
    const Rational& c = e[static_cast<size_t>(m)];
    if (c == 0) continue;
    if (!first) os << " + ";
    os << c;
    int rem = m;
    int pows[3] = {rem % alg.d0, (rem / alg.d0) % alg.d1, rem / (alg.d0 * alg.d1)};
    for (int v = 0; v < 3; ++v)
      for (int t = 0; t < pows[v]; ++t) os << "*" << vars[v];
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

inline void emit(const Json& body, bool as_json, std::ostream& out) {
  if (as_json) {
    out << body.dump(2) << "\n";
    return;
  }
  // Plain text: flat rendering of the top-level entries.
  for (auto it = body.begin(); it != body.end(); ++it) {
    out << it.key() << ": ";
    if (it->is_string()) out << it->get<std::string>();
    else out << it->dump();
    out << "\n";
  }
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"eiscoh: verification toolkit for constant-term and intertwining identities"};
  app.require_subcommand(0, 1);
  app.fallthrough();
  const char* env_cfg = std::getenv("EISCOH_CONFIG");
  app.set_config("--config", env_cfg ? env_cfg : "", "Config file with [subcommand] sections");

  std::string format = "json";
  app.add_option("--format", format, "Output format: json|text")
      ->check(CLI::IsMember({"json", "text"}));
  int threads = 1;
  app.add_option("--threads", threads, "Worker thread cap")->check(CLI::PositiveNumber);

  bool self_test = false;
  int n = 2, k = 0;
  std::string eta_str;
  long long eta_hi = 0, eta_lo = 0;
  std::string beta_str;
  std::string method = "radial-iterated";
  int nodes = 0;
  long long samples = 1000000;
  std::uint64_t seed = 20240801;
  double tol = 1e-6;
  std::uint64_t cap = 10000000ull;
  bool list_reps = false, verify_unique = false, keep_s = false, curated = false;
  TowerOptions tower_opt;
  SigmaOptions sigma_opt;

  auto add_common = [&](CLI::App* sub, bool with_field) {
    sub->add_flag("--self-test", self_test, "Run this module's invariant suite");
    if (with_field) {
      sub->add_option("--field", tower_opt.preset,
                      "Tower preset: gauss|zeta5|zeta8|zeta12|gauss-root-1pi");
      sub->add_option("--poly-f0", tower_opt.poly_f0, "Custom tower: f0 coefficients c0,c1,...");
      sub->add_option("--poly-f1", tower_opt.poly_f1, "Custom tower: f1 coefficients e|e|... (e = r0,r1,...)");
      sub->add_option("--poly-f2", tower_opt.poly_f2, "Custom tower: f2 coefficients E|E|... (E = e;e)");
    }
  };

  CLI::App* weyl_cmd = app.add_subcommand("weyl", "Weyl group combinatorics");
  weyl_cmd->add_option("--n", n, "Rank n of GL_n");
  weyl_cmd->add_flag("--list-coset-reps", list_reps, "List the P_n-coset representatives w_k");
  add_common(weyl_cmd, false);

  CLI::App* kostant_cmd = app.add_subcommand("kostant", "Kostant representatives and weights");
  kostant_cmd->add_option("--n", n, "Rank n");
  kostant_cmd->add_option("--k", k, "Index k (0 = all)");
  kostant_cmd->add_option("--eta", eta_str, "Infinity type, comma list in the fixed embedding order");
  kostant_cmd->add_flag("--verify-unique", verify_unique, "Exhaustively verify the unique-match claim");
  kostant_cmd->add_option("--cap", cap, "Enumeration size cap");
  add_common(kostant_cmd, true);

  CLI::App* ct_cmd = app.add_subcommand("constant-term", "Constant-term coefficient algebra");
  ct_cmd->add_option("--n", n, "Rank n");
  ct_cmd->add_option("--eta", eta_str, "Infinity type, comma list");
  ct_cmd->add_flag("--keep-s", keep_s, "Keep s formal instead of specializing to s = 0");
  add_common(ct_cmd, true);

  CLI::App* int_cmd = app.add_subcommand("intertwine", "Archimedean intertwining values");
  int_cmd->add_option("--n", n, "Rank n");
  int_cmd->add_option("--k", k, "Index k");
  int_cmd->add_option("--eta-hi", eta_hi, "Local exponent eta_hi (>= n)");
  int_cmd->add_option("--eta-lo", eta_lo, "Local exponent eta_lo (<= 0)");
  int_cmd->add_option("--beta", beta_str, "Composition beta (default: lowest-weight beta_0)");
  int_cmd->add_option("--method", method,
                      "Quadrature method: radial-iterated|tensor-grid|monte-carlo");
  int_cmd->add_option("--nodes", nodes, "Nodes per dimension (0 = default)");
  int_cmd->add_option("--samples", samples, "Monte-Carlo sample count");
  int_cmd->add_option("--seed", seed, "Random seed");
  int_cmd->add_option("--tol", tol, "Relative tolerance for the oracle comparison");
  add_common(int_cmd, false);

  CLI::App* field_cmd = app.add_subcommand("field", "Field tower constants and Galois data");
  field_cmd->add_option("--sigma", sigma_opt.names, "Sigma specs (named generator or integer)");
  field_cmd->add_option("--sigma-perm", sigma_opt.perm, "Explicit sigma as a label permutation");
  field_cmd->add_option("--sigma-a", sigma_opt.a, "Cyclotomic parameter of the explicit sigma");
  field_cmd->add_option("--sigma-mod", sigma_opt.modulus, "Modulus of the cyclotomic parameter");
  add_common(field_cmd, true);

  CLI::App* diag_cmd = app.add_subcommand("diagram", "End-to-end diagram checks");
  diag_cmd->add_option("--n", n, "Rank n");
  diag_cmd->add_option("--eta", eta_str, "Infinity type, comma list");
  diag_cmd->add_option("--sigma", sigma_opt.names, "Sigma specs (default: tower generating set)");
  diag_cmd->add_flag("--curated", curated, "Run every curated scenario");
  diag_cmd->add_option("--seed", seed, "Random seed");
  diag_cmd->add_option("--tol", tol, "Tolerance forwarded to numeric settings");
  add_common(diag_cmd, true);

  std::vector<char*> argv;
  std::vector<std::string> storage = std::move(args);
  storage.insert(storage.begin(), "eiscoh");
  argv.reserve(storage.size());
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  const bool as_json = format == "json";

  try {
    if (self_test) {
      std::string module;
      for (auto* sub : {weyl_cmd, kostant_cmd, ct_cmd, int_cmd, field_cmd, diag_cmd})
        if (sub->parsed()) module = sub->get_name();
      return selftest::run(module, out) ? 0 : 1;
    }

    if (weyl_cmd->parsed()) {
      if (n < 2) throw Error("weyl: requires --n >= 2");
      Json body;
      body["schema"] = "eiscoh-report-v1";
      body["command"] = "weyl";
      body["n"] = n;
      Json reps = Json::array();
      for (const auto& w : coset_reps_p(n)) {
        Json e;
        e["one_line"] = w.images();
        e["length"] = w.length();
        Json inv = Json::array();
        for (auto [i, j] : w.inversion_set()) inv.push_back(Json::array({i, j}));
        e["inversions"] = inv;
        reps.push_back(e);
      }
      body["coset_reps"] = reps;
      (void)list_reps;
      emit(body, as_json, out);
      return 0;
    }

    if (kostant_cmd->parsed()) {
      auto tower = tower_opt.build();
      InfinityType eta;
      eta.eta = parse_int_list(eta_str);
      if (eta.eta.empty()) throw Error("kostant: --eta is required");
      auto conj = tower->conj_pairing();
      if (!eta.is_balanced(conj, n)) throw Error("kostant: eta is not balanced for this (tower, n)");
      Json body;
      body["schema"] = "eiscoh-report-v1";
      body["command"] = "kostant";
      body["tower"] = tower->name;
      body["n"] = n;
      body["eta"] = eta.eta;
      body["bottom_degree"] = bottom_degree(eta.labels(), n);
      Weight mu = highest_weight_from_eta(eta, n);
      body["highest_weight"] = detail_report::weight_to_json(mu);
      Json list = Json::array();
      bool all_pass = true;
      for (int kk = (k ? k : 1); kk <= (k ? k : n); ++kk) {
        Json e;
        e["k"] = kk;
        WeylElement wk = find_wk(eta, conj, kk, n);
        e["w_k"] = detail_report::weyl_to_json(wk);
        e["length"] = wk.length();
        e["kostant_weight"] = detail_report::weight_to_json(kostant_weight(wk, mu));
        if (verify_unique) {
          auto um = verify_unique_match(eta, conj, kk, n, cap);
          e["unique_match"] = um.pass;
          e["enumerated"] = um.enumerated;
          e["matches"] = um.matches;
          all_pass = all_pass && um.pass;
        }
        list.push_back(e);
      }
      body["representatives"] = list;
      body["pass"] = all_pass;
      emit(body, as_json, out);
      return all_pass ? 0 : 1;
    }

    if (ct_cmd->parsed()) {
      auto tower = tower_opt.build();
      auto etas = parse_int_list(eta_str);
      if (etas.empty()) throw Error("constant-term: --eta is required");
      if (etas.size() != tower->emb.count())
        throw Error("constant-term: eta length != number of embeddings");
      auto ctx = tower->period_context();
      CharId chi = CharId::untwisted("eta", etas);
      auto coeffs = constant_term_coefficients(n, chi, !keep_s, ctx);
      Json body;
      body["schema"] = "eiscoh-report-v1";
      body["command"] = "constant-term";
      body["tower"] = tower->name;
      body["n"] = n;
      body["eta"] = etas;
      Json list = Json::array();
      for (int kk = 1; kk <= n; ++kk) {
        Json e;
        e["k"] = kk;
        e["coefficient"] = coeffs[static_cast<size_t>(kk - 1)].to_string();
        if (!keep_s) {
          FormalLRatio rw = coeffs[static_cast<size_t>(kk - 1)];
          rw.rewrite_discriminant();
          e["rewritten"] = rw.to_string();
        }
        list.push_back(e);
      }
      body["coefficients"] = list;
      body["entry_n_is_identity"] = coeffs.back().is_one();
      emit(body, as_json, out);
      return coeffs.back().is_one() ? 0 : 1;
    }

    if (int_cmd->parsed()) {
      if (k < 1 || k > n) throw Error("intertwine: requires 1 <= k <= n");
      LocalCharData d{eta_lo, eta_hi, n};
      d.validate();
      Composition beta = Composition::lowest(d);
      if (!beta_str.empty()) beta.beta = parse_int_list(beta_str);
      beta.validate(d);
      QuadratureConfig qc;
      if (method == "radial-iterated") qc.method = QuadMethod::RadialIterated;
      else if (method == "tensor-grid") qc.method = QuadMethod::TensorGrid;
      else if (method == "monte-carlo") qc.method = QuadMethod::MonteCarlo;
      else throw Error("intertwine: unknown method '" + method + "'");
      if (nodes > 0) {
        qc.radial_nodes = nodes;
        qc.tensor_nodes = nodes;
      }
      qc.mc_samples = samples;
      qc.seed = seed;
      qc.threads = threads;
      TwoPiValue closed = intertwine_closed_form(k, n, d, beta);
      QuadResult num = intertwine_numeric(k, n, d, beta, qc);
      double closed_num = closed.numeric();
      double scale = TwoPiValue{1, n - k}.numeric();
      double rel = closed_num != 0.0
                       ? std::abs(num.estimate.real() - closed_num) / std::abs(closed_num) +
                             std::abs(num.estimate.imag()) / std::abs(closed_num)
                       : std::abs(num.estimate) / scale;
      bool pass = rel <= tol;
      Json body;
      body["schema"] = "eiscoh-report-v1";
      body["command"] = "intertwine";
      body["n"] = n;
      body["k"] = k;
      body["eta_lo"] = d.eta_lo;
      body["eta_hi"] = d.eta_hi;
      body["beta"] = beta.beta;
      body["method"] = method;
      body["seed"] = seed;
      body["closed_form"] = closed.to_string();
      body["closed_form_value"] = format_double(closed_num);
      body["numeric"] = format_double(num.estimate.real());
      body["numeric_imag"] = format_double(num.estimate.imag());
      body["error_bound"] = format_double(num.err_bound);
      body["relative_deviation"] = format_double(rel);
      body["tolerance"] = format_double(tol);
      body["normalized_value"] = normalized_value(k, n, d).to_string();
      body["pass"] = pass;
      emit(body, as_json, out);
      return pass ? 0 : 1;
    }

    if (field_cmd->parsed()) {
      auto tower = tower_opt.build();
      auto pc = tower->period_constants();
      auto rel = tower->verify_discriminant_relation();
      Json body;
      body["schema"] = "eiscoh-report-v1";
      body["command"] = "field";
      body["tower"] = tower->name;
      body["degree"] = tower->degree();
      body["r1"] = tower->r1;
      body["r2"] = tower->r2;
      body["delta_k_over_k1"] =
          elem_to_string(tower->alg, tower->relative_discriminant(2, tower->top_basis));
      body["delta_k1_over_k0"] =
          elem_to_string(tower->alg, tower->relative_discriminant(1, tower->mid_basis));
      body["Delta"] = pc.delta_upper.to_string();
      body["Nabla"] = pc.nabla.to_string();
      body["abs_disc"] = [&] {
        std::ostringstream os;
        os << rel.abs_delta;
        return os.str();
      }();
      body["basis"] = rel.basis_description;
      body["c"] = [&] {
        std::ostringstream os;
        os << rel.c;
        return os.str();
      }();
      body["relation_rel_err"] = format_double(static_cast<double>(rel.rel_err_relation));
      body["embedding_check_rel_err"] = format_double(static_cast<double>(rel.rel_err_embeddings));
      Json embs = Json::array();
      for (size_t l = 0; l < tower->emb.count(); ++l) {
        const auto& v = tower->emb.values[l];
        Json e;
        e["label"] = l;
        std::ostringstream zs;
        zs << std::setprecision(32) << v.z;
        e["z"] = zs.str();
        embs.push_back(e);
      }
      body["embeddings"] = embs;
      bool pass = rel.pass;
      if (!sigma_opt.names.empty() || !sigma_opt.perm.empty()) {
        Json sg = Json::array();
        for (const auto& sigma : sigma_opt.build(*tower)) {
          auto dec = sigma_decompose(*tower, sigma);
          auto sign = verify_sign_identity(*tower, sigma);
          Json e;
          e["sigma"] = sigma.name;
          e["a"] = sigma.a;
          e["perm"] = sigma.perm.fwd;
          e["epsilon"] = dec.epsilon;
          e["chi"] = sign.chi;
          e["sign_identity"] = sign.pass;
          pass = pass && sign.pass;
          sg.push_back(e);
        }
        body["sigmas"] = sg;
      }
      body["pass"] = pass;
      emit(body, as_json, out);
      return pass ? 0 : 1;
    }

    if (diag_cmd->parsed()) {
      std::vector<ScenarioConfig> scenarios;
      if (curated) {
        scenarios = curated_scenarios();
      } else {
        ScenarioConfig cfg;
        cfg.tower = tower_opt.build();
        cfg.n = n;
        cfg.eta = parse_int_list(eta_str);
        if (cfg.eta.empty()) throw Error("diagram: --eta is required");
        cfg.name = cfg.tower->name + "-n" + std::to_string(n);
        cfg.sigmas = sigma_opt.build(*cfg.tower);
        cfg.quad.seed = seed;
        cfg.quad.threads = threads;
        scenarios.push_back(std::move(cfg));
      }
      Json body;
      body["schema"] = "eiscoh-report-v1";
      body["command"] = "diagram";
      Json list = Json::array();
      bool pass = true;
      for (const auto& cfg : scenarios) {
        auto a = check_intertwine_equivariance(cfg);
        auto b = check_constant_term_diagram(cfg);
        pass = pass && a.pass && b.pass;
        list.push_back(a.body);
        list.push_back(b.body);
      }
      body["reports"] = list;
      body["pass"] = pass;
      emit(body, as_json, out);
      return pass ? 0 : 1;
    }

    err << app.help();
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace eiscoh::cli
