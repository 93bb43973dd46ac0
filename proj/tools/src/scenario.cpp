#include "pacsem/io/scenario.hpp"

#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

#include "pacsem/backends.hpp"
#include "pacsem/errors.hpp"
#include "pacsem/io/formats.hpp"

namespace pacsem::io {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::size_t to_size(const std::string& key, const std::string& value) {
  const Integer z = parse_integer(value);
  if (sgn(z) < 0 || !z.fits_ulong_p()) throw InputError(key + " must be a nonnegative integer");
  return z.get_ui();
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw InputError(key + " must be true or false");
}

const std::map<std::string, std::set<std::string>>& system_params() {
  static const std::map<std::string, std::set<std::string>> table{
      {"res-space", {"s"}}, {"res-k-width", {"k", "w"}}, {"pc", {"d"}}, {"pcr", {"d"}}, {"cp", {"w", "L"}}};
  return table;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& value) {
  std::filesystem::path p(value);
  return p.is_relative() ? base / p : p;
}

struct Loaded {
  std::string text;
  std::string source;
};

Loaded load(const std::filesystem::path& p) { return {read_file(p), p.string()}; }

template <class T>
const T& single(const std::vector<T>& items, const std::string& what) {
  if (items.size() != 1)
    throw InputError(what + " must hold exactly one item, found " + std::to_string(items.size()));
  return items.front();
}

}  // namespace

ScenarioConfig parse_scenario(std::string_view text, const std::filesystem::path& base_dir,
                              const std::string& source) {
  ScenarioConfig c;
  c.base_dir = base_dir;
  std::map<std::string, std::string> values;
  std::istringstream in{std::string(text)};
  std::size_t number = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError(source + ":" + std::to_string(number) + ": expected key = value");
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty() || value.empty())
      throw InputError(source + ":" + std::to_string(number) + ": empty key or value");
    if (!values.emplace(key, value).second)
      throw InputError(source + ":" + std::to_string(number) + ": duplicate key '" + key + "'");
  }

  auto take = [&](const std::string& key) -> std::optional<std::string> {
    auto it = values.find(key);
    if (it == values.end()) return std::nullopt;
    std::string v = it->second;
    values.erase(it);
    return v;
  };
  auto require = [&](const std::string& key) {
    auto v = take(key);
    if (!v) throw InputError(source + ": missing required key '" + key + "'");
    return *v;
  };
  auto wrap = [&](const std::string& key, auto&& f) {
    try {
      return f();
    } catch (const InputError& e) {
      throw InputError(source + ": " + key + ": " + e.what());
    }
  };

  c.system = require("system");
  auto sys = system_params().find(c.system);
  if (sys == system_params().end())
    throw InputError(source + ": unknown system '" + c.system + "' (res-space, res-k-width, pc, pcr, cp)");
  for (const char* key : {"epsilon", "gamma", "delta"}) {
    const std::string v = require(key);
    Rational q = wrap(key, [&] { return parse_rational(v); });
    if (std::string(key) == "epsilon") c.params.epsilon = q;
    else if (std::string(key) == "gamma") c.params.gamma = q;
    else c.params.delta = q;
  }
  wrap("parameters", [&] { c.params.validate(); return 0; });

  for (const char* key : {"s", "k", "w", "d", "L"}) {
    auto v = take(key);
    const bool wanted = sys->second.count(key) > 0;
    if (v && !wanted)
      throw InputError(source + ": parameter '" + key + "' does not apply to system " + c.system);
    if (!v && wanted) throw InputError(source + ": system " + c.system + " needs parameter '" + key + "'");
    if (!v) continue;
    const std::string k = key;
    if (k == "L") {
      c.L = wrap(k, [&] { return parse_integer(*v); });
      if (sgn(*c.L) <= 0) throw InputError(source + ": L must be positive");
      continue;
    }
    const std::size_t value = wrap(k, [&] { return to_size(k, *v); });
    if (value == 0) throw InputError(source + ": " + k + " must be positive");
    if (k == "s") c.s = value;
    else if (k == "k") c.k = value;
    else if (k == "w") c.w = value;
    else c.d = value;
  }

  c.kb = resolve(base_dir, require("kb"));
  c.query = resolve(base_dir, require("query"));
  if (auto v = take("samples")) c.samples = resolve(base_dir, *v);
  if (auto v = take("dist")) c.dist = resolve(base_dir, *v);
  c.mask = take("mask");
  if (auto v = take("seed")) c.seed = wrap("seed", [&] { return Seed(to_size("seed", *v)); });
  if (c.samples && (c.dist || c.mask || c.seed))
    throw InputError(source + ": give either samples or dist/mask/seed, not both");
  if (!c.samples && !(c.dist && c.mask && c.seed))
    throw InputError(source + ": need samples, or all of dist, mask and seed");
  if (auto v = take("m")) {
    c.m = wrap("m", [&] { return to_size("m", *v); });
    if (*c.m == 0) throw InputError(source + ": m must be positive");
  }
  if (auto v = take("threads")) c.threads = wrap("threads", [&] { return to_size("threads", *v); });
  if (auto v = take("per_example")) c.per_example = wrap("per_example", [&] { return to_bool("per_example", *v); });
  if (auto v = take("early_exit")) c.early_exit = wrap("early_exit", [&] { return to_bool("early_exit", *v); });
  if (!values.empty()) throw InputError(source + ": unknown key '" + values.begin()->first + "'");
  return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_file(path), path.parent_path(), path.string());
}

std::unique_ptr<DecisionBackend> make_backend(const ScenarioConfig& c) {
  const auto kb = load(c.kb);
  const auto query = load(c.query);
  if (c.system == "res-space") {
    Cnf q = parse_dimacs(query.text, query.source);
    return std::make_unique<SpaceResolutionBackend>(parse_dimacs(kb.text, kb.source),
                                                    single(q.clauses(), query.source), *c.s);
  }
  if (c.system == "res-k-width") {
    std::size_t n = 0;
    std::vector<KDnf> hyps;
    if (header_kind(kb.text) == "cnf") {
      Cnf cnf = parse_dimacs(kb.text, kb.source);
      n = cnf.num_vars();
      for (const auto& cl : cnf.clauses()) hyps.push_back(KDnf::from_clause(cl));
    } else {
      KdnfFile f = parse_kdnf(kb.text, kb.source);
      n = f.n;
      hyps = std::move(f.formulas);
    }
    return std::make_unique<ReskWidthBackend>(n, std::move(hyps), parse_dimacs(query.text, query.source),
                                              *c.k, *c.w);
  }
  if (c.system == "pc" || c.system == "pcr") {
    PolyFile f = parse_poly(kb.text, kb.source);
    PolyFile q = parse_poly(query.text, query.source);
    return std::make_unique<PolyCalcBackend>(f.n, std::move(f.polys), single(q.polys, query.source), *c.d,
                                             c.system == "pc" ? PcMode::PC : PcMode::PCR);
  }
  CpFile f = parse_cp(kb.text, kb.source);
  CpFile q = parse_cp(query.text, query.source);
  return std::make_unique<CuttingPlanesBackend>(f.n, std::move(f.ineqs), single(q.ineqs, query.source), *c.w,
                                                *c.L);
}

std::vector<PartialAssignment> load_examples(const ScenarioConfig& c, std::size_t n) {
  if (c.samples) {
    const auto s = load(*c.samples);
    PasgnFile f = parse_pasgn(s.text, s.source);
    if (f.n != n)
      throw InputError(s.source + ": samples have n=" + std::to_string(f.n) + " but the KB has n=" + std::to_string(n));
    if (c.m) {
      if (*c.m > f.rows.size())
        throw InputError(s.source + ": m=" + std::to_string(*c.m) + " exceeds the " +
                         std::to_string(f.rows.size()) + " rows available");
      f.rows.resize(*c.m);
    }
    return f.rows;
  }
  const auto d = load(*c.dist);
  ExplicitDistribution dist = parse_dist(d.text, d.source);
  if (dist.num_vars() != n)
    throw InputError(d.source + ": distribution has n=" + std::to_string(dist.num_vars()) +
                     " but the KB has n=" + std::to_string(n));
  const MaskSpec mask = parse_mask_spec(*c.mask, c.base_dir);
  const std::size_t m = c.m ? *c.m : required_sample_size(c.params.gamma, c.params.delta);
  return draw_masked_examples(dist, mask, m, *c.seed);
}

ScenarioRun run_scenario(const ScenarioConfig& config) {
  ScenarioRun run;
  run.config = config;
  auto backend = make_backend(config);
  run.n = backend->num_vars();
  run.backend = backend->name();
  const auto examples = load_examples(config, run.n);
  run.outcome = decide_pac(*backend, config.params, examples, {config.threads, config.early_exit});
  return run;
}

std::string format_report(const ScenarioRun& run, bool per_example) {
  const auto& o = run.outcome;
  std::ostringstream out;
  out << "system: " << run.config.system << "\n"
      << "n: " << run.n << "\n"
      << "epsilon: " << to_fraction_string(run.config.params.epsilon) << "\n"
      << "gamma: " << to_fraction_string(run.config.params.gamma) << "\n"
      << "delta: " << to_fraction_string(run.config.params.delta) << "\n"
      << "m: " << o.m << "\n"
      << "budget: " << o.budget << "\n"
      << "evaluated: " << o.evaluated << "\n"
      << "failed: " << o.failed_count << "\n"
      << "verdict: " << to_string(o.verdict) << "\n";
  if (per_example)
    for (std::size_t i = 0; i < o.per_example.size(); ++i)
      out << "example " << i + 1 << ": " << to_string(o.per_example[i]) << "\n";
  return out.str();
}

std::string format_report_json(const ScenarioRun& run, bool per_example) {
  const auto& o = run.outcome;
  nlohmann::ordered_json j;
  j["system"] = run.config.system;
  j["n"] = run.n;
  j["epsilon"] = to_fraction_string(run.config.params.epsilon);
  j["gamma"] = to_fraction_string(run.config.params.gamma);
  j["delta"] = to_fraction_string(run.config.params.delta);
  j["m"] = o.m;
  j["budget"] = o.budget;
  j["evaluated"] = o.evaluated;
  j["failed"] = o.failed_count;
  j["verdict"] = to_string(o.verdict);
  if (per_example) {
    auto& arr = j["per_example"] = nlohmann::ordered_json::array();
    for (Verdict v : o.per_example) arr.push_back(to_string(v));
  }
  return j.dump(2) + "\n";
}

}  // namespace pacsem::io
