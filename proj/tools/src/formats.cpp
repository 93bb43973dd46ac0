#include "pacsem/io/formats.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "pacsem/errors.hpp"

namespace pacsem::io {

namespace {

struct Line {
  std::size_t number = 0;
  std::string text;
};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

// Non-empty lines with comments removed.
std::vector<Line> content_lines(std::string_view text, bool dimacs_comments) {
  std::vector<Line> out;
  std::size_t number = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    if (dimacs_comments && line[0] == 'c' && (line.size() == 1 || std::isspace(static_cast<unsigned char>(line[1]))))
      continue;
    out.push_back({number, std::move(line)});
    if (end == text.size()) break;
  }
  return out;
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& msg) {
  throw InputError(source + ":" + std::to_string(line) + ": " + msg);
}

std::size_t parse_count(const std::string& tok, const std::string& source, std::size_t line,
                        const char* what) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    fail(source, line, std::string("expected a nonnegative integer for ") + what + ", got '" + tok + "'");
  try {
    return std::stoul(tok);
  } catch (const std::exception&) {
    fail(source, line, std::string(what) + " is out of range");
  }
}

struct Body {
  std::vector<std::size_t> header;  // numeric header fields after the kind
  std::vector<Line> lines;          // everything after the header
  std::size_t header_line = 0;
};

Body split_header(std::string_view text, const std::string& source, const std::string& kind,
                  std::size_t fields, bool dimacs_comments = false) {
  auto lines = content_lines(text, dimacs_comments);
  if (lines.empty()) fail(source, 1, "missing 'p " + kind + "' header");
  const auto tokens = split_ws(lines.front().text);
  if (tokens.size() < 2 || tokens[0] != "p" || tokens[1] != kind)
    fail(source, lines.front().number, "expected header 'p " + kind + "'");
  if (tokens.size() != fields + 2)
    fail(source, lines.front().number,
         "header 'p " + kind + "' takes " + std::to_string(fields) + " numbers");
  Body body;
  body.header_line = lines.front().number;
  for (std::size_t i = 2; i < tokens.size(); ++i)
    body.header.push_back(parse_count(tokens[i], source, lines.front().number, "header field"));
  body.lines.assign(lines.begin() + 1, lines.end());
  return body;
}

void expect_count(const Body& body, std::size_t have, std::size_t want, const std::string& source,
                  const char* what) {
  if (have != want)
    fail(source, body.header_line,
         "header declares " + std::to_string(want) + " " + what + " but the file has " +
             std::to_string(have));
}

// Re-throws InputError from a line parser with the line prefix attached.
template <class F>
auto at_line(const std::string& source, std::size_t line, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InputError& e) {
    fail(source, line, e.what());
  }
}

VarId parse_var(std::string_view tok, std::size_t n_hint = 0) {
  if (tok.size() < 2 || tok[0] != 'x') throw InputError("expected a variable like x3, got '" + std::string(tok) + "'");
  const Integer z = parse_integer(tok.substr(1));
  if (sgn(z) <= 0 || !z.fits_uint_p()) throw InputError("variable index out of range in '" + std::string(tok) + "'");
  (void)n_hint;
  return VarId(static_cast<std::uint32_t>(z.get_ui()));
}

void check_range(std::uint32_t max_var, std::size_t n, const std::string& source, std::size_t line) {
  if (max_var > n) fail(source, line, "x" + std::to_string(max_var) + " exceeds n=" + std::to_string(n));
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string header_kind(std::string_view text) {
  for (const auto& l : content_lines(text, true)) {
    auto tokens = split_ws(l.text);
    if (tokens.size() >= 2 && tokens[0] == "p") return tokens[1];
    return "";
  }
  return "";
}

std::string bits_to_string(const std::vector<bool>& bits) {
  std::string s;
  for (bool b : bits) s += b ? '1' : '0';
  return s;
}

std::vector<bool> parse_bits(std::string_view text, std::size_t n) {
  if (text.size() != n)
    throw InputError("bitstring '" + std::string(text) + "' has length " + std::to_string(text.size()) +
                     ", expected " + std::to_string(n));
  std::vector<bool> bits;
  for (char c : text) {
    if (c != '0' && c != '1') throw InputError("bitstring '" + std::string(text) + "' has a character other than 0/1");
    bits.push_back(c == '1');
  }
  return bits;
}

// --- DIMACS ---------------------------------------------------------------------

Cnf parse_dimacs(std::string_view text, const std::string& source) {
  Body body = split_header(text, source, "cnf", 2, true);
  const std::size_t n = body.header[0], m = body.header[1];
  std::vector<Clause> clauses;
  std::vector<int> current;
  std::size_t last_line = body.header_line;
  for (const auto& line : body.lines) {
    last_line = line.number;
    for (const auto& tok : split_ws(line.text)) {
      const Integer z = at_line(source, line.number, [&] { return parse_integer(tok); });
      if (!z.fits_sint_p()) fail(source, line.number, "literal out of range");
      const int code = static_cast<int>(z.get_si());
      if (code == 0) {
        clauses.push_back(Clause::from_dimacs(current));
        check_range(clauses.back().max_var(), n, source, line.number);
        if (clauses.back().is_tautology())
          for (int c : current) check_range(static_cast<std::uint32_t>(std::abs(c)), n, source, line.number);
        current.clear();
      } else {
        current.push_back(code);
      }
    }
  }
  if (!current.empty()) fail(source, last_line, "last clause is not terminated by 0");
  expect_count(body, clauses.size(), m, source, "clauses");
  return Cnf(n, std::move(clauses));
}

std::string write_dimacs(const Cnf& cnf) {
  std::string s = "p cnf " + std::to_string(cnf.num_vars()) + " " + std::to_string(cnf.size()) + "\n";
  for (const auto& c : cnf.clauses()) {
    if (c.is_tautology()) {
      s += "1 -1 0\n";
      continue;
    }
    for (Literal l : c.literals()) s += std::to_string(l.to_dimacs()) + " ";
    s += "0\n";
  }
  return s;
}

// --- pasgn ------------------------------------------------------------------------

PasgnFile parse_pasgn(std::string_view text, const std::string& source) {
  Body body = split_header(text, source, "pasgn", 2);
  PasgnFile f;
  f.n = body.header[0];
  for (const auto& line : body.lines) {
    auto row = at_line(source, line.number, [&] { return PartialAssignment::from_string(line.text); });
    if (row.size() != f.n)
      fail(source, line.number, "row has length " + std::to_string(row.size()) + ", expected " + std::to_string(f.n));
    f.rows.push_back(std::move(row));
  }
  expect_count(body, f.rows.size(), body.header[1], source, "rows");
  return f;
}

std::string write_pasgn(std::size_t n, const std::vector<PartialAssignment>& rows) {
  std::string s = "p pasgn " + std::to_string(n) + " " + std::to_string(rows.size()) + "\n";
  for (const auto& r : rows) s += r.to_string() + "\n";
  return s;
}

// --- kdnf -------------------------------------------------------------------------

KDnf parse_kdnf_formula(std::string_view line) {
  const std::string text = trim(line);
  if (text == "true") return KDnf::top();
  if (text == "false") return KDnf::bottom();
  std::vector<Term> terms;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t bar = text.find('|', pos);
    if (bar == std::string::npos) bar = text.size();
    const std::string term_text = trim(std::string_view(text).substr(pos, bar - pos));
    if (term_text.empty()) throw InputError("empty term in '" + text + "'");
    std::vector<Literal> lits;
    std::size_t tp = 0;
    while (tp <= term_text.size()) {
      std::size_t amp = term_text.find('&', tp);
      if (amp == std::string::npos) amp = term_text.size();
      std::string lit = trim(std::string_view(term_text).substr(tp, amp - tp));
      bool positive = true;
      if (!lit.empty() && lit[0] == '-') {
        positive = false;
        lit.erase(0, 1);
      }
      lits.emplace_back(parse_var(lit), positive);
      if (amp == term_text.size()) break;
      tp = amp + 1;
    }
    terms.emplace_back(std::move(lits));
    if (bar == text.size()) break;
    pos = bar + 1;
  }
  return KDnf(std::move(terms));
}

KdnfFile parse_kdnf(std::string_view text, const std::string& source) {
  Body body = split_header(text, source, "kdnf", 3);
  KdnfFile f;
  f.n = body.header[0];
  f.k = body.header[1];
  for (const auto& line : body.lines) {
    KDnf phi = at_line(source, line.number, [&] { return parse_kdnf_formula(line.text); });
    check_range(phi.max_var(), f.n, source, line.number);
    if (phi.max_term_size() > f.k)
      fail(source, line.number, "conjunction longer than k=" + std::to_string(f.k));
    f.formulas.push_back(std::move(phi));
  }
  expect_count(body, f.formulas.size(), body.header[2], source, "formulas");
  return f;
}

std::string write_kdnf(const KdnfFile& file) {
  std::string s = "p kdnf " + std::to_string(file.n) + " " + std::to_string(file.k) + " " +
                  std::to_string(file.formulas.size()) + "\n";
  for (const auto& f : file.formulas) s += f.to_string() + "\n";
  return s;
}

// --- poly -------------------------------------------------------------------------

Polynomial parse_polynomial(std::string_view line) {
  const std::string text = trim(line);
  if (text.empty()) throw InputError("empty polynomial");
  Polynomial p;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t semi = text.find(';', pos);
    if (semi == std::string::npos) semi = text.size();
    const auto tokens = split_ws(std::string_view(text).substr(pos, semi - pos));
    if (tokens.empty()) throw InputError("empty term in '" + text + "'");
    std::size_t i = 0;
    Rational coeff = 1;
    if (tokens[0][0] != 'x' && tokens[0][0] != '~') {
      coeff = parse_rational(tokens[0]);
      i = 1;
    }
    std::vector<Indeterminate> factors;
    for (; i < tokens.size(); ++i) {
      std::string_view t = tokens[i];
      const bool dual = !t.empty() && t[0] == '~';
      if (dual) t.remove_prefix(1);
      factors.push_back({parse_var(t), dual});
    }
    p.add_scaled(Polynomial::monomial(Monomial(std::move(factors))), coeff);
    if (semi == text.size()) break;
    pos = semi + 1;
  }
  return p;
}

PolyFile parse_poly(std::string_view text, const std::string& source) {
  Body body = split_header(text, source, "poly", 2);
  PolyFile f;
  f.n = body.header[0];
  for (const auto& line : body.lines) {
    Polynomial p = at_line(source, line.number, [&] { return parse_polynomial(line.text); });
    check_range(p.max_var(), f.n, source, line.number);
    f.polys.push_back(std::move(p));
  }
  expect_count(body, f.polys.size(), body.header[1], source, "polynomials");
  return f;
}

std::string write_poly(const PolyFile& file) {
  std::string s = "p poly " + std::to_string(file.n) + " " + std::to_string(file.polys.size()) + "\n";
  for (const auto& p : file.polys) s += p.to_string() + "\n";
  return s;
}

// --- cp ---------------------------------------------------------------------------

LinIneq parse_lin_ineq(std::string_view line) {
  const auto tokens = split_ws(line);
  auto ge = std::find(tokens.begin(), tokens.end(), ">=");
  if (ge == tokens.end() || ge + 2 != tokens.end())
    throw InputError("expected '<terms> >= <bound>' in '" + trim(line) + "'");
  LinIneq::Coeffs coeffs;
  for (auto it = tokens.begin(); it != ge; ++it) {
    if (*it == "0" && tokens.size() == 3) break;  // "0 >= b"
    const auto colon = it->find(':');
    if (colon == std::string::npos) throw InputError("expected x<i>:<int>, got '" + *it + "'");
    coeffs.emplace_back(parse_var(std::string_view(*it).substr(0, colon)),
                        parse_integer(std::string_view(*it).substr(colon + 1)));
  }
  std::set<VarId> seen;
  for (const auto& [v, c] : coeffs)
    if (!seen.insert(v).second) throw InputError("x" + std::to_string(v.index) + " appears twice");
  return LinIneq(std::move(coeffs), parse_integer(*(ge + 1)));
}

CpFile parse_cp(std::string_view text, const std::string& source) {
  Body body = split_header(text, source, "cp", 2);
  CpFile f;
  f.n = body.header[0];
  for (const auto& line : body.lines) {
    LinIneq ineq = at_line(source, line.number, [&] { return parse_lin_ineq(line.text); });
    check_range(ineq.max_var(), f.n, source, line.number);
    f.ineqs.push_back(std::move(ineq));
  }
  expect_count(body, f.ineqs.size(), body.header[1], source, "inequalities");
  return f;
}

std::string write_cp(const CpFile& file) {
  std::string s = "p cp " + std::to_string(file.n) + " " + std::to_string(file.ineqs.size()) + "\n";
  for (const auto& f : file.ineqs) s += f.to_string() + "\n";
  return s;
}

// --- dist / masktable ---------------------------------------------------------------

ExplicitDistribution parse_dist(std::string_view text, const std::string& source) {
  Body body = split_header(text, source, "dist", 2);
  const std::size_t n = body.header[0];
  std::vector<WeightedPoint> support;
  for (const auto& line : body.lines) {
    const auto tokens = split_ws(line.text);
    if (tokens.size() != 2) fail(source, line.number, "expected '<weight> <bitstring>'");
    Rational w = at_line(source, line.number, [&] { return parse_rational(tokens[0]); });
    auto x = at_line(source, line.number, [&] { return parse_bits(tokens[1], n); });
    support.push_back({std::move(x), std::move(w)});
  }
  expect_count(body, support.size(), body.header[1], source, "support points");
  return at_line(source, body.header_line, [&] { return ExplicitDistribution(n, std::move(support)); });
}

std::string write_dist(const ExplicitDistribution& d) {
  std::string s = "p dist " + std::to_string(d.num_vars()) + " " + std::to_string(d.support().size()) + "\n";
  for (const auto& p : d.support()) s += to_fraction_string(p.weight) + " " + bits_to_string(p.x) + "\n";
  return s;
}

TableMask parse_masktable(std::string_view text, const std::string& source) {
  Body body = split_header(text, source, "masktable", 2);
  const std::size_t n = body.header[0];
  TableMask mask;
  for (const auto& line : body.lines) {
    const auto tokens = split_ws(line.text);
    if (tokens.size() != 2) fail(source, line.number, "expected '<bitstring> <hidebits>'");
    auto x = at_line(source, line.number, [&] { return parse_bits(tokens[0], n); });
    auto hidden = at_line(source, line.number, [&] { return parse_bits(tokens[1], n); });
    if (!mask.rule.emplace(std::move(x), std::move(hidden)).second)
      fail(source, line.number, "duplicate rule for " + tokens[0]);
  }
  expect_count(body, mask.rule.size(), body.header[1], source, "rules");
  return mask;
}

std::string write_masktable(std::size_t n, const TableMask& mask) {
  std::string s = "p masktable " + std::to_string(n) + " " + std::to_string(mask.rule.size()) + "\n";
  for (const auto& [x, hidden] : mask.rule) s += bits_to_string(x) + " " + bits_to_string(hidden) + "\n";
  return s;
}

MaskSpec parse_mask_spec(std::string_view spec, const std::filesystem::path& base_dir) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw InputError("mask spec '" + std::string(spec) + "' must be fixed:<bits>, iid:<p> or table:<path>");
  const std::string kind(spec.substr(0, colon));
  const std::string arg = trim(spec.substr(colon + 1));
  if (kind == "fixed") {
    FixedMask m;
    for (char c : arg) {
      if (c != '0' && c != '1') throw InputError("fixed mask '" + arg + "' must be a 0/1 string");
      m.hidden.push_back(c == '1');
    }
    return m;
  }
  if (kind == "iid") return IndependentMask{parse_rational(arg)};
  if (kind == "table") {
    std::filesystem::path p(arg);
    if (p.is_relative()) p = base_dir / p;
    return parse_masktable(read_file(p), p.string());
  }
  throw InputError("unknown mask kind '" + kind + "'");
}

}  // namespace pacsem::io
