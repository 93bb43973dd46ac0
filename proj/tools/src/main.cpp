#include <chrono>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "pacsem/backends.hpp"
#include "pacsem/errors.hpp"
#include "pacsem/io/formats.hpp"
#include "pacsem/io/scenario.hpp"
#include "pacsem/oracle.hpp"

using namespace pacsem;
namespace fs = std::filesystem;

namespace {

constexpr int kAccept = 0;
constexpr int kReject = 1;
constexpr int kError = 2;

int verdict_code(bool accepted) { return accepted ? kAccept : kReject; }

struct FormulaFile {
  std::size_t n = 0;
  std::vector<Formula> formulas;
};

// Any of the formula-bearing formats, detected from the header.
FormulaFile load_formulas(const fs::path& path) {
  const std::string text = io::read_file(path);
  const std::string src = path.string();
  const std::string kind = io::header_kind(text);
  FormulaFile out;
  if (kind == "cnf") {
    Cnf cnf = io::parse_dimacs(text, src);
    out.n = cnf.num_vars();
    for (const auto& c : cnf.clauses()) out.formulas.push_back(to_formula(c));
  } else if (kind == "kdnf") {
    auto f = io::parse_kdnf(text, src);
    out.n = f.n;
    for (const auto& p : f.formulas) out.formulas.push_back(to_formula(p));
  } else if (kind == "poly") {
    auto f = io::parse_poly(text, src);
    out.n = f.n;
    for (const auto& p : f.polys) out.formulas.push_back(to_formula(p));
  } else if (kind == "cp") {
    auto f = io::parse_cp(text, src);
    out.n = f.n;
    for (const auto& p : f.ineqs) out.formulas.push_back(to_formula(p));
  } else {
    throw InputError(src + ": expected a cnf, kdnf, poly or cp file");
  }
  return out;
}

Formula conjunction_of(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::constant(true);
  if (fs.size() == 1) return fs.front();
  return Formula::conjunction(fs);
}

struct ProveArgs {
  std::string system;
  std::string kb, query;
  std::optional<std::size_t> s, k, w, d;
  std::optional<std::string> L;
  std::string rho;
};

void need(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

void only(const ProveArgs& a, std::initializer_list<const char*> allowed) {
  auto allowed_has = [&](std::string_view p) {
    for (const char* x : allowed)
      if (p == x) return true;
    return false;
  };
  auto check = [&](bool present, const char* p) {
    if (present && !allowed_has(p)) throw InputError(std::string("--") + p + " does not apply to " + a.system);
    if (!present && allowed_has(p)) throw InputError(a.system + " needs --" + p);
  };
  check(a.s.has_value(), "s");
  check(a.k.has_value(), "k");
  check(a.w.has_value(), "w");
  check(a.d.has_value(), "d");
  check(a.L.has_value(), "L");
}

PartialAssignment rho_for(const std::string& text, std::size_t n) {
  if (text.empty()) return PartialAssignment(n);
  auto rho = PartialAssignment::from_string(text);
  need(rho.size() == n, "--rho has length " + std::to_string(rho.size()) + ", expected " + std::to_string(n));
  return rho;
}

int run_prove(const ProveArgs& a) {
  const std::string kb_text = io::read_file(a.kb), q_text = io::read_file(a.query);
  if (a.system == "res-space") {
    only(a, {"s"});
    need(*a.s > 0, "--s must be positive");
    Cnf kb = io::parse_dimacs(kb_text, a.kb);
    Cnf q = io::parse_dimacs(q_text, a.query);
    need(q.size() == 1, a.query + ": the query must be a single clause");
    const auto rho = rho_for(a.rho, kb.num_vars());
    const Clause target = restrict_clause(q.clauses().front(), rho);
    const Cnf phi = restrict_cnf(kb, rho);
    SearchStats stats;
    auto proof = search_space(phi, *a.s, target, &stats);
    std::cout << (proof ? "accept" : "reject") << "\n";
    if (proof)
      std::cout << "size: " << proof->size() << "\nspace: " << clause_space(*proof) << "\n"
                << serialize_proof(*proof) << "\n";
    return verdict_code(proof.has_value());
  }
  if (a.system == "res-k-width") {
    only(a, {"k", "w"});
    std::size_t n;
    std::vector<KDnf> hyps;
    if (io::header_kind(kb_text) == "cnf") {
      Cnf cnf = io::parse_dimacs(kb_text, a.kb);
      n = cnf.num_vars();
      for (const auto& c : cnf.clauses()) hyps.push_back(KDnf::from_clause(c));
    } else {
      auto f = io::parse_kdnf(kb_text, a.kb);
      n = f.n;
      hyps = std::move(f.formulas);
    }
    for (auto& f : negate_query({io::parse_dimacs(q_text, a.query)}, *a.k)) hyps.push_back(std::move(f));
    const auto rho = rho_for(a.rho, n);
    std::vector<KDnf> restricted;
    for (const auto& h : hyps) {
      need(h.max_var() <= n, "a formula mentions a variable beyond n=" + std::to_string(n));
      KDnf r = restrict_kdnf(h, rho);
      if (!r.is_top()) restricted.push_back(std::move(r));
    }
    auto result = decide_resk_width(restricted, KDnf::bottom(), *a.k, *a.w);
    std::cout << (result.accepted ? "accept" : "reject") << "\n";
    std::cout << "table: " << result.stats.table_size << "\n";
    if (result.trace) std::cout << format_resk_trace(*result.trace);
    return verdict_code(result.accepted);
  }
  if (a.system == "pc" || a.system == "pcr") {
    only(a, {"d"});
    auto kb = io::parse_poly(kb_text, a.kb);
    auto q = io::parse_poly(q_text, a.query);
    need(q.polys.size() == 1, a.query + ": the query must be a single polynomial");
    const auto rho = rho_for(a.rho, kb.n);
    std::vector<Polynomial> hyps;
    for (const auto& p : kb.polys) {
      Polynomial r = restrict_polynomial(p, rho);
      if (!r.is_zero()) hyps.push_back(std::move(r));
    }
    auto result = decide_pc(hyps, restrict_polynomial(q.polys.front(), rho), *a.d,
                            a.system == "pc" ? PcMode::PC : PcMode::PCR);
    std::cout << (result.accepted ? "accept" : "reject") << "\n"
              << "basis: " << result.stats.basis_size << "\n";
    return verdict_code(result.accepted);
  }
  if (a.system == "cp") {
    only(a, {"w", "L"});
    const Integer L = parse_integer(*a.L);
    auto kb = io::parse_cp(kb_text, a.kb);
    auto q = io::parse_cp(q_text, a.query);
    need(q.ineqs.size() == 1, a.query + ": the query must be a single inequality");
    const auto rho = rho_for(a.rho, kb.n);
    auto target = restrict_ineq(q.ineqs.front(), rho);
    if (!target) {
      std::cout << "accept\n";
      return kAccept;
    }
    std::vector<LinIneq> hyps;
    for (const auto& f : kb.ineqs)
      if (auto r = restrict_ineq(f, rho)) hyps.push_back(std::move(*r));
    auto result = decide_cp(hyps, *target, *a.w, L);
    std::cout << (result.accepted ? "accept" : "reject") << "\n"
              << "table: " << result.stats.table_size << "\n";
    if (result.trace) std::cout << format_cp_trace(*result.trace);
    return verdict_code(result.accepted);
  }
  throw InputError("unknown system '" + a.system + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PAC-semantics reasoning with masked examples"};
  app.require_subcommand(1);

  // decide
  auto* decide = app.add_subcommand("decide", "Run DecidePAC on a scenario file");
  std::string scenario_path;
  std::optional<std::size_t> threads;
  bool per_example = false, json = false, no_early_exit = false;
  decide->add_option("scenario", scenario_path, "Scenario file")->required();
  decide->add_option("--threads", threads, "Worker threads (0 = hardware)");
  decide->add_flag("--per-example", per_example, "List every example's verdict");
  decide->add_flag("--json", json, "JSON report");
  decide->add_flag("--no-early-exit", no_early_exit, "Evaluate every example");

  // prove
  auto* prove = app.add_subcommand("prove", "Run one backend decision on explicit inputs");
  ProveArgs pa;
  prove->add_option("--system", pa.system, "res-space | res-k-width | pc | pcr | cp")->required();
  prove->add_option("--kb", pa.kb, "Knowledge base file")->required();
  prove->add_option("--query", pa.query, "Query file")->required();
  prove->add_option("--s", pa.s, "Clause space bound");
  prove->add_option("--k", pa.k, "Term size bound");
  prove->add_option("--w", pa.w, "Width / sparsity bound");
  prove->add_option("--d", pa.d, "Degree bound");
  prove->add_option("--L", pa.L, "Coefficient bound");
  prove->add_option("--rho", pa.rho, "Restriction over {0,1,*}");

  // sample
  auto* sample = app.add_subcommand("sample", "Draw masked examples as a pasgn file");
  std::string dist_path, mask_spec;
  std::size_t m = 0;
  Seed seed = 0;
  sample->add_option("--dist", dist_path, "Distribution file")->required();
  sample->add_option("--mask", mask_spec, "fixed:<bits> | iid:<p> | table:<path>")->required();
  sample->add_option("--m", m, "Number of examples")->required();
  sample->add_option("--seed", seed, "Seed")->required();

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive ground truth");
  oracle_cmd->require_subcommand(1);
  auto* sat = oracle_cmd->add_subcommand("sat", "First model of a CNF");
  std::string cnf_path;
  sat->add_option("cnf", cnf_path, "DIMACS file")->required();
  auto* entails = oracle_cmd->add_subcommand("entails", "Does the KB entail the query?");
  std::string kb_path, query_path;
  entails->add_option("--kb", kb_path, "KB file")->required();
  entails->add_option("--query", query_path, "Query file")->required();
  auto* validity = oracle_cmd->add_subcommand("validity", "Exact validity under a distribution");
  std::string formula_path;
  std::string witness_mask;
  validity->add_option("--dist", dist_path, "Distribution file")->required();
  validity->add_option("--formula", formula_path, "Formula file (conjunction of its lines)")->required();
  validity->add_option("--mask", witness_mask, "Also report the witness probability under this mask");

  // encode
  auto* encode = app.add_subcommand("encode", "Encode CNF clauses as PCR polynomials or inequalities");
  std::string target;
  encode->add_option("--to", target, "pcr | cp")->required()->check(CLI::IsMember({"pcr", "cp"}));
  encode->add_option("cnf", cnf_path, "DIMACS file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  try {
    if (*decide) {
      io::ScenarioConfig config = io::load_scenario(scenario_path);
      if (threads) config.threads = *threads;
      if (per_example) config.per_example = true;
      if (no_early_exit) config.early_exit = false;
      const auto start = std::chrono::steady_clock::now();
      const auto run = io::run_scenario(config);
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      std::cout << (json ? io::format_report_json(run, config.per_example)
                         : io::format_report(run, config.per_example));
      std::cerr << "wall_time_s: " << elapsed.count() << "\n";
      return verdict_code(run.outcome.verdict == Verdict::Accept);
    }
    if (*prove) return run_prove(pa);
    if (*sample) {
      const auto dist = io::parse_dist(io::read_file(dist_path), dist_path);
      const auto mask = io::parse_mask_spec(mask_spec, fs::current_path());
      std::cout << io::write_pasgn(dist.num_vars(), draw_masked_examples(dist, mask, m, seed));
      return 0;
    }
    if (*sat) {
      const Cnf cnf = io::parse_dimacs(io::read_file(cnf_path), cnf_path);
      if (auto x = oracle::sat_solve(cnf)) {
        std::cout << "sat " << io::bits_to_string(*x) << "\n";
        return 0;
      }
      std::cout << "unsat\n";
      return 1;
    }
    if (*entails) {
      const auto kb = load_formulas(kb_path);
      const auto q = load_formulas(query_path);
      const bool yes = oracle::entails(kb.formulas, conjunction_of(q.formulas), std::max(kb.n, q.n));
      std::cout << (yes ? "entailed" : "not entailed") << "\n";
      return yes ? 0 : 1;
    }
    if (*validity) {
      const auto dist = io::parse_dist(io::read_file(dist_path), dist_path);
      const auto f = load_formulas(formula_path);
      if (f.n > dist.num_vars()) throw InputError(formula_path + ": more variables than the distribution");
      const Formula phi = conjunction_of(f.formulas);
      std::cout << "validity: " << to_fraction_string(pacsem::validity(dist, phi)) << "\n";
      if (!witness_mask.empty())
        std::cout << "witnessed: "
                  << to_fraction_string(witness_probability(
                         dist, io::parse_mask_spec(witness_mask, fs::current_path()), phi))
                  << "\n";
      return 0;
    }
    if (*encode) {
      const Cnf cnf = io::parse_dimacs(io::read_file(cnf_path), cnf_path);
      if (target == "pcr") {
        io::PolyFile out{cnf.num_vars(), {}};
        for (const auto& c : cnf.clauses()) out.polys.push_back(encode_clause_pcr(c));
        std::cout << io::write_poly(out);
      } else {
        io::CpFile out{cnf.num_vars(), {}};
        for (const auto& c : cnf.clauses()) out.ineqs.push_back(encode_clause_cp(c));
        std::cout << io::write_cp(out);
      }
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  } catch (const RuleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
