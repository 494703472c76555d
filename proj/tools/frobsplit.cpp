// frobsplit: exact Frobenius pushforward decompositions of invariant rings,
// non-FFRT witness production, and F-singularity identity checks.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "frobsplit/frobsplit.hpp"

using json = nlohmann::ordered_json;
using namespace frobsplit;

namespace {

struct OutputOptions {
  std::string format = "text";
  std::string out_path;
};

struct CommandResult {
  json payload;
  std::string text;
  bool pass = true;
};

long long default_cap_from_env() {
  const char* e = std::getenv("FROBSPLIT_CAP");
  if (!e) return default_group_cap();
  try {
    return std::stoll(e);
  } catch (...) {
    throw FrobError("FROBSPLIT_CAP is not an integer");
  }
}

json shifts_json(const std::vector<Rational>& shifts) {
  json arr = json::array();
  for (const auto& s : shifts) arr.push_back(to_string(s));
  return arr;
}

std::string verdict_str(bool ok) { return ok ? "pass" : "FAIL"; }

MatrixGroup load_group(const std::string& builtin, const std::string& file, long long cap) {
  if (!builtin.empty() && !file.empty()) throw FrobError("give either --builtin or --group, not both");
  if (!builtin.empty()) return builtin_group(builtin);
  if (!file.empty()) return load_group_file(file, cap);
  throw FrobError("a group is required: --builtin <name> or --group <file>");
}

json group_config(const MatrixGroup& g, const std::string& builtin, const std::string& file) {
  json cfg;
  if (!builtin.empty()) cfg["builtin"] = builtin;
  if (!file.empty()) cfg["group_file"] = file;
  cfg["field"] = g.spec->describe();
  cfg["vars"] = g.n;
  cfg["order"] = g.order();
  return cfg;
}

// --- decompose -------------------------------------------------------------

CommandResult run_decompose(const MatrixGroup& g, int e, bool verify, const Rational& max_degree) {
  MonomialStructure ms = require_monomial(g);
  DecompositionReport rep = decompose(g, ms, e);

  CommandResult res;
  json classes = json::array();
  std::ostringstream text;
  text << "decomposition of (S^G)^(1/q), q = " << rep.p << "^" << rep.e << " = " << ipow(rep.p, rep.e) << "\n";
  text << "field: " << g.spec->describe() << ", n = " << rep.n << ", |G| = " << rep.order << "\n";
  for (const auto& c : rep.classes) {
    json cls;
    cls["label"] = c.label;
    cls["name"] = c.name ? json(*c.name) : json(nullptr);
    cls["stabilizer_order"] = c.stabilizer_order;
    json chi = json::array();
    for (size_t i = 0; i < c.stabilizer.size(); ++i)
      chi.push_back(json{{"element", c.stabilizer[i]}, {"value", c.character[i]}});
    cls["character"] = chi;
    cls["orbit_size"] = c.orbit_size;
    cls["multiplicity"] = c.multiplicity;
    cls["shifts"] = shifts_json(c.shifts);
    classes.push_back(cls);
    text << "  class " << (c.name ? *c.name : std::string("(unnamed)")) << "  |H| = " << c.stabilizer_order
         << "  multiplicity " << c.multiplicity << "\n";
    text << "    label " << c.label << "\n    shifts:";
    for (const auto& s : c.shifts) text << " " << to_string(s);
    text << "\n";
  }
  res.payload["p"] = rep.p;
  res.payload["e"] = rep.e;
  res.payload["n"] = rep.n;
  res.payload["order"] = rep.order;
  res.payload["classes"] = classes;
  res.payload["rank_check"] =
      json{{"sum", rep.rank_sum}, {"expected", rep.rank_expected}, {"ok", rep.rank_ok}};
  res.pass = rep.rank_ok;
  text << "rank check: " << rep.rank_sum << " / " << rep.rank_expected << " " << verdict_str(rep.rank_ok) << "\n";

  if (verify) {
    bool perm_ok = true;
    std::set<ExpVec> visited;
    int orbits_checked = 0;
    for (const ExpVec& mu : enumerate_basis(g.n, rep.p, e).monomials) {
      if (visited.count(mu)) continue;
      OrbitSummand s = orbit_and_stabilizer(g, ms, mu, e);
      for (const auto& v : s.orbit) visited.insert(v);
      PermMapReport pm = verify_perm_map(g, ms, mu, e, max_degree);
      perm_ok = perm_ok && pm.ok;
      ++orbits_checked;
    }
    SplitWitnessReport split = fpure_split_witness(g, ms, e, max_degree);
    res.payload["verify"] = json{{"max_degree", to_string(max_degree)},
                                 {"orbits_checked", orbits_checked},
                                 {"perm_map_ok", perm_ok},
                                 {"split_witness_ok", split.ok}};
    res.pass = res.pass && perm_ok && split.ok;
    text << "coset-sum isomorphisms up to degree " << to_string(max_degree) << ": " << verdict_str(perm_ok)
         << " (" << orbits_checked << " orbits)\n";
    text << "splitting witness: " << verdict_str(split.ok) << "\n";
  }
  res.text = text.str();
  return res;
}

// --- counterexample --------------------------------------------------------

CommandResult run_counterexample(int max_e, const std::string& alpha_text) {
  auto k = FieldSpec::perfection(3);
  FieldElement alpha = alpha_text.empty() ? FieldElement::t(k) : parse_element(alpha_text, k);
  bool default_alpha = alpha == FieldElement::t(k);

  // the group for this alpha, with the (Z/3)^2 presentation
  FMatrix s = FMatrix::identity(k, 3), tau = FMatrix::identity(k, 3);
  s.at(0, 1) = FieldElement::one(k);
  s.at(1, 2) = FieldElement::one(k);
  tau.at(0, 1) = alpha;
  tau.at(1, 2) = alpha;
  GroupPresentation pres;
  pres.relators = {Relator{{{0, 3}}, "g1^3"},
                   Relator{{{1, 3}}, "g2^3"},
                   Relator{{{0, 1}, {1, 1}, {0, -1}, {1, -1}}, "g1 g2 g1^-1 g2^-1"}};
  pres.abstract_order = 9;
  MatrixGroup g = generate_group(k, 3, {s, tau}, default_group_cap(), pres);
  SmallnessReport small = pseudoreflection_and_smallness(g);

  WitnessTable table;
  if (default_alpha) {
    table = distinct_witnesses(max_e);
  } else {
    KGModule base = build_V(alpha);
    for (int e = 0; e <= max_e; ++e) {
      KGModule m = twist_module(base, e);
      Witness w;
      w.e = e;
      w.shift = Rational(1, ipow(3, e));
      w.ann = annihilator(m);
      w.socle = socle_dim(m);
      w.alpha = w.ann.linear_generator_alpha();
      table.witnesses.push_back(std::move(w));
    }
    table.pairwise_distinct = true;
    for (size_t i = 0; i < table.witnesses.size(); ++i)
      for (size_t j = i + 1; j < table.witnesses.size(); ++j)
        if (table.witnesses[i].ann == table.witnesses[j].ann) table.pairwise_distinct = false;
    table.all_indecomposable = true;
    for (const auto& w : table.witnesses)
      if (w.socle != 1) table.all_indecomposable = false;
  }

  // the closed form for sigma^i tau^j over all nine exponent pairs
  FMatrix N(k, 3, 3);
  N.at(0, 1) = FieldElement::one(k);
  N.at(1, 2) = FieldElement::one(k);
  bool closed_form_ok = true;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      FieldElement c1 = FieldElement::from_int(k, i) + FieldElement::from_int(k, j) * alpha;
      FieldElement c2 = FieldElement::from_int(k, i * (i - 1) / 2) + FieldElement::from_int(k, i * j) * alpha +
                        FieldElement::from_int(k, j * (j - 1) / 2) * alpha * alpha;
      FMatrix rhs = FMatrix::identity(k, 3) + c1 * N + c2 * (N * N);
      if (!(s.pow(i) * tau.pow(j) == rhs)) closed_form_ok = false;
    }

  CommandResult res;
  json witnesses = json::array();
  std::ostringstream text;
  text << "witness summands of (S^G)^(1/3^e), alpha = " << alpha.to_string() << "\n";
  for (const auto& w : table.witnesses) {
    json jw;
    jw["e"] = w.e;
    jw["shift"] = to_string(w.shift);
    jw["annihilator"] = w.ann.to_string();
    jw["generator_alpha"] = w.alpha ? json(w.alpha->to_string()) : json(nullptr);
    jw["socle_dim"] = w.socle;
    witnesses.push_back(jw);
    text << "  e = " << w.e << "  shift " << to_string(w.shift) << "  socle " << w.socle << "  ann ";
    if (w.alpha)
      text << "(b - (" << w.alpha->to_string() << ")*a)";
    else
      text << w.ann.to_string();
    text << "\n";
  }
  res.payload["p"] = 3;
  res.payload["field"] = k->describe();
  res.payload["alpha"] = alpha.to_string();
  res.payload["max_e"] = max_e;
  res.payload["witnesses"] = witnesses;
  res.payload["pairwise_distinct"] = table.pairwise_distinct;
  res.payload["all_indecomposable"] = table.all_indecomposable;
  res.payload["closed_form_ok"] = closed_form_ok;
  json sj;
  sj["order"] = small.order;
  sj["pseudoreflections"] = small.pseudoreflections;
  sj["relators_checked"] = small.relators_checked;
  sj["relators_hold"] = small.relators_hold;
  sj["injective"] = small.injective;
  sj["small"] = small.small;
  res.payload["smallness"] = sj;

  text << "pairwise distinct annihilators: " << verdict_str(table.pairwise_distinct) << "\n";
  text << "socle dimension 1 throughout: " << verdict_str(table.all_indecomposable) << "\n";
  text << "closed form for sigma^i tau^j: " << verdict_str(closed_form_ok) << "\n";
  text << "group order " << small.order << ", pseudoreflections: " << small.pseudoreflections.size()
       << ", small: " << (small.small ? "yes" : "no") << "\n";
  res.pass = table.pairwise_distinct && table.all_indecomposable && closed_form_ok;
  res.text = text.str();
  return res;
}

// --- signature ---------------------------------------------------------------

CommandResult run_signature(const MatrixGroup& g, int e_lo, int e_hi) {
  MonomialStructure ms = require_monomial(g);
  SignatureTable table = empirical_signature(g, ms, e_lo, e_hi);
  CommandResult res;
  json rows = json::array();
  std::ostringstream text;
  text << "empirical summand-class ratios, e = " << e_lo << ".." << e_hi << " (free class target 1/" << g.order()
       << ")\n";
  for (const auto& row : table.rows) {
    json jr;
    jr["e"] = row.e;
    jr["label"] = row.label;
    jr["name"] = row.name ? json(*row.name) : json(nullptr);
    jr["multiplicity"] = row.multiplicity;
    jr["ratio"] = to_string(row.ratio);
    jr["free_class"] = row.free_class;
    if (row.gap) jr["gap_to_limit"] = to_string(*row.gap);
    rows.push_back(jr);
    text << "  e=" << row.e << "  " << (row.name ? *row.name : row.label) << "  x" << row.multiplicity
         << "  ratio " << to_string(row.ratio);
    if (row.gap) text << "  (off the limit by " << to_string(*row.gap) << ")";
    text << "\n";
  }
  res.payload["order"] = g.order();
  res.payload["rows"] = rows;
  res.text = text.str();
  return res;
}

// --- fsing suite -------------------------------------------------------------

CommandResult run_identity51(int p) {
  IdentityReport rep = verify_identity_51(p);
  CommandResult res;
  res.payload["p"] = p;
  res.payload["determinant_identity"] = rep.determinant_identity;
  res.payload["identity51"] = rep.identity51;
  res.pass = rep.ok();
  std::ostringstream text;
  text << "p = " << p << "\n";
  text << "three-determinant identity: " << verdict_str(rep.determinant_identity) << "\n";
  text << "t^p - v x1^p - u x2^p = t (x1 x2^p - x1^p x2)^(p-1): " << verdict_str(rep.identity51) << "\n";
  res.text = text.str();
  return res;
}

CommandResult run_fedder(int p, const std::string& file) {
  HypersurfacePresentation h;
  CommandResult res;
  if (!file.empty()) {
    h = load_hypersurface_file(file);
    res.payload["file"] = file;
  } else if (p > 0) {
    h = section5_presentation(p);
    res.payload["builtin"] = "hypersurface presentation, p = " + std::to_string(p);
  } else {
    throw FrobError("fedder needs --file <hypersurface file> or --p <prime>");
  }
  FedderResult r = fedder_test(h);
  res.payload["field"] = h.spec->describe();
  res.payload["weighted_degree"] = to_string(h.degree());
  res.payload["f_pure"] = r.f_pure;
  if (r.witness_monomial) {
    json mono = json::array();
    for (int x : *r.witness_monomial) mono.push_back(x);
    res.payload["witness_monomial"] = mono;
  } else {
    res.payload["witness_monomial"] = nullptr;
  }
  std::ostringstream text;
  text << "F over " << h.spec->describe() << ", weighted degree " << to_string(h.degree()) << "\n";
  text << "verdict: " << (r.f_pure ? "F-pure" : "not F-pure") << "\n";
  if (r.witness_monomial) {
    text << "witness monomial of F^(p-1) outside the Frobenius power ideal:";
    for (int x : *r.witness_monomial) text << " " << x;
    text << "\n";
  }
  res.text = text.str();
  return res;
}

CommandResult run_sandwich(int p) {
  SandwichReport rep = sandwich_check(p);
  CommandResult res;
  res.payload["p"] = p;
  res.payload["split_remainder_zero"] = rep.split_remainder_zero;
  res.payload["u_tilde_invariant"] = rep.u_tilde_invariant;
  res.payload["v_tilde_invariant"] = rep.v_tilde_invariant;
  res.payload["key_identity"] = rep.key_identity;
  res.payload["powers_in_A"] = rep.powers_in_A;
  res.payload["membership_cross_checked"] = rep.membership_cross_checked;
  res.payload["jacobian_rank"] = rep.jacobian_rank;
  res.payload["jacobian_conclusive"] = rep.jacobian_conclusive;
  res.payload["integral_chain"] = rep.integral_chain;
  res.payload["ok"] = rep.ok;
  res.pass = rep.ok;
  std::ostringstream text;
  text << "p = " << p << ": A = F_p[x1, x2, u~, v~] under the invariant ring\n";
  text << "w^(p-1) splits with zero remainder: " << verdict_str(rep.split_remainder_zero) << "\n";
  text << "u~, v~ invariant: " << verdict_str(rep.u_tilde_invariant && rep.v_tilde_invariant) << "\n";
  text << "t^p = v~ x1^p + u~ x2^p: " << verdict_str(rep.key_identity) << "\n";
  text << "p-th powers of generators lie in A: " << verdict_str(rep.powers_in_A)
       << (rep.membership_cross_checked ? " (cross-checked by graded linear algebra)" : "") << "\n";
  text << "jacobian rank " << rep.jacobian_rank
       << (rep.jacobian_conclusive ? " (full: independence certified)"
                                   : " (singular, as forced by d(t^p) = 0: inconclusive)")
       << "\n";
  text << "module-finiteness certificate (monic equations over A): " << verdict_str(rep.integral_chain) << "\n";
  text << "sandwich: " << verdict_str(rep.ok) << "\n";
  res.text = text.str();
  return res;
}

CommandResult run_presentation(const std::string& data_path) {
  PresentationData data = load_presentation_file(data_path);
  PresentationReport rep = verify_presentation_remark(data);
  CommandResult res;
  res.payload["data_file"] = data_path;
  res.payload["generators_invariant"] = rep.generators_invariant;
  res.payload["f9_matches_orbit"] = rep.f9_matches_orbit;
  res.payload["relation_vanishes"] = rep.relation_vanishes;
  res.payload["weights_match"] = rep.weights_match;
  res.payload["relation_degree"] = to_string(rep.relation_degree);
  res.payload["a_invariant"] = to_string(rep.a_invariant);
  res.payload["not_f_pure"] = rep.not_f_pure;
  res.payload["ok"] = rep.ok();
  res.pass = rep.ok();
  std::ostringstream text;
  text << "presentation of the invariant ring over " << data.spec->describe() << "\n";
  text << "f1, f3, f5, f9 invariant: " << verdict_str(rep.generators_invariant) << "\n";
  text << "f9 equals the orbit product of x3: " << verdict_str(rep.f9_matches_orbit) << "\n";
  text << "degree-15 relation expands to zero: " << verdict_str(rep.relation_vanishes) << "\n";
  text << "weights (1, 3, 5, 9), relation degree " << to_string(rep.relation_degree) << ": "
       << verdict_str(rep.weights_match) << "\n";
  text << "a-invariant: " << to_string(rep.a_invariant) << "\n";
  text << "hypersurface not F-pure (Fedder): " << verdict_str(rep.not_f_pure) << "\n";
  res.text = text.str();
  return res;
}

void emit(const std::string& command, const json& config, const CommandResult& result, double total_ms,
          const OutputOptions& opts) {
  if (opts.format == "json") {
    json report;
    report["schema"] = 1;
    report["version"] = kVersion;
    report["command"] = command;
    report["config"] = config;
    report["payload"] = result.payload;
    report["verdict"] = result.pass ? "pass" : "fail";
    report["timings"] = json{{"total_ms", total_ms}};
    std::string dumped = report.dump(2) + "\n";
    if (opts.out_path.empty()) {
      std::cout << dumped;
    } else {
      std::ofstream f(opts.out_path);
      if (!f) throw FrobError("cannot write to " + opts.out_path);
      f << dumped;
    }
  } else {
    std::string body = result.text + (result.pass ? "verdict: pass\n" : "verdict: FAIL\n");
    if (opts.out_path.empty()) {
      std::cout << body;
    } else {
      std::ofstream f(opts.out_path);
      if (!f) throw FrobError("cannot write to " + opts.out_path);
      f << body;
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frobsplit: exact Frobenius pushforward decompositions of invariant rings"};
  app.require_subcommand(1);

  OutputOptions opts;
  int workers = 1;
  app.add_option("--format", opts.format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", opts.out_path, "write the report to this file");
  app.add_option("--workers", workers, "worker threads for large polynomial products")
      ->check(CLI::PositiveNumber);

  // decompose
  auto* dec = app.add_subcommand("decompose", "decompose (S^G)^(1/p^e) for a monomial group");
  std::string dec_builtin, dec_group;
  int dec_e = 1;
  int dec_maxdeg = 3;
  long long cap = default_cap_from_env();
  bool dec_verify = false;
  dec->add_option("--builtin", dec_builtin, "built-in example group (a3, cyclic-<p>, z4-f2, veronese-<n>, ...)");
  dec->add_option("--group", dec_group, "group input file");
  dec->add_option("--e", dec_e, "Frobenius level e >= 0")->check(CLI::NonNegativeNumber);
  dec->add_option("--max-degree", dec_maxdeg, "degree bound D for --verify checks")->check(CLI::NonNegativeNumber);
  dec->add_option("--cap", cap, "group enumeration cap");
  dec->add_flag("--verify", dec_verify, "also verify the coset-sum isomorphisms and the splitting witness");

  // counterexample
  auto* ce = app.add_subcommand("counterexample", "annihilator witnesses over the perfection of F_3(t)");
  int ce_max_e = 2;
  std::string ce_alpha;
  ce->add_option("--max-e", ce_max_e, "largest Frobenius level e")->check(CLI::NonNegativeNumber);
  ce->add_option("--alpha", ce_alpha, "field element replacing t in the second generator");

  // signature
  auto* sig = app.add_subcommand("signature", "empirical summand-class ratios over a range of e");
  std::string sig_builtin, sig_group;
  int sig_max_e = 3, sig_min_e = 1;
  sig->add_option("--builtin", sig_builtin, "built-in example group");
  sig->add_option("--group", sig_group, "group input file");
  sig->add_option("--min-e", sig_min_e, "first level")->check(CLI::PositiveNumber);
  sig->add_option("--max-e", sig_max_e, "last level")->check(CLI::PositiveNumber);
  sig->add_option("--cap", cap, "group enumeration cap");

  // fsing
  auto* fs = app.add_subcommand("fsing", "F-singularity and identity checks");
  fs->require_subcommand(1);
  auto* id51 = fs->add_subcommand("identity51", "verify the determinant identity and its hypersurface form");
  int id_p = 2;
  id51->add_option("--p", id_p, "prime")->check(CLI::PositiveNumber);
  auto* fed = fs->add_subcommand("fedder", "F-purity of a graded hypersurface");
  int fed_p = 0;
  std::string fed_file;
  fed->add_option("--p", fed_p, "use the built-in order-p^3 presentation");
  fed->add_option("--file", fed_file, "hypersurface input file");
  auto* sand = fs->add_subcommand("sandwich", "verify A inside S^G inside A^(1/p)");
  int sand_p = 2;
  sand->add_option("--p", sand_p, "prime")->check(CLI::PositiveNumber);
  auto* pres = fs->add_subcommand("presentation", "verify the invariant-ring presentation data");
  std::string pres_data = std::string(FROBSPLIT_DATA_DIR) + "/presentation.txt";
  pres->add_option("--data", pres_data, "presentation data file");

  CLI11_PARSE(app, argc, argv);

  worker_count() = workers;

  try {
    auto start = std::chrono::steady_clock::now();
    CommandResult result;
    std::string command;
    json config;
    config["workers"] = workers;

    if (dec->parsed()) {
      command = "decompose";
      MatrixGroup g = load_group(dec_builtin, dec_group, cap);
      config.update(group_config(g, dec_builtin, dec_group));
      config["e"] = dec_e;
      if (dec_verify) config["max_degree"] = dec_maxdeg;
      result = run_decompose(g, dec_e, dec_verify, Rational(dec_maxdeg));
    } else if (ce->parsed()) {
      command = "counterexample";
      config["max_e"] = ce_max_e;
      if (!ce_alpha.empty()) config["alpha"] = ce_alpha;
      result = run_counterexample(ce_max_e, ce_alpha);
    } else if (sig->parsed()) {
      command = "signature";
      MatrixGroup g = load_group(sig_builtin, sig_group, cap);
      config.update(group_config(g, sig_builtin, sig_group));
      config["min_e"] = sig_min_e;
      config["max_e"] = sig_max_e;
      result = run_signature(g, sig_min_e, sig_max_e);
    } else if (id51->parsed()) {
      command = "fsing identity51";
      config["p"] = id_p;
      result = run_identity51(id_p);
    } else if (fed->parsed()) {
      command = "fsing fedder";
      if (fed_p > 0) config["p"] = fed_p;
      if (!fed_file.empty()) config["file"] = fed_file;
      result = run_fedder(fed_p, fed_file);
    } else if (sand->parsed()) {
      command = "fsing sandwich";
      config["p"] = sand_p;
      result = run_sandwich(sand_p);
    } else if (pres->parsed()) {
      command = "fsing presentation";
      config["data"] = pres_data;
      result = run_presentation(pres_data);
    }

    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    emit(command, config, result, ms, opts);
    return result.pass ? 0 : 1;
  } catch (const FrobError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
