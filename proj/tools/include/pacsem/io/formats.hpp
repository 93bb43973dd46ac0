#pragma once

// Line-oriented text formats. Every format starts with a "p <kind> ..."
// header; '#' starts a comment anywhere on a line. Parse errors throw
// InputError with "source:line: message".

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pacsem/clause.hpp"
#include "pacsem/cutting_planes.hpp"
#include "pacsem/polynomial.hpp"
#include "pacsem/resk.hpp"
#include "pacsem/sampling.hpp"

namespace pacsem::io {

std::string read_file(const std::filesystem::path& path);

// Header kind ("cnf", "kdnf", ...) of a document, or "" when there is none.
std::string header_kind(std::string_view text);

// DIMACS: "p cnf n m", then clauses as 0-terminated literal lists. Lines
// starting with 'c' are comments too.
Cnf parse_dimacs(std::string_view text, const std::string& source = "<input>");
std::string write_dimacs(const Cnf& cnf);

// "p pasgn n m", then m rows over {0,1,*}.
struct PasgnFile {
  std::size_t n = 0;
  std::vector<PartialAssignment> rows;
};
PasgnFile parse_pasgn(std::string_view text, const std::string& source = "<input>");
std::string write_pasgn(std::size_t n, const std::vector<PartialAssignment>& rows);

// "p kdnf n k m", then one formula per line: "x1&-x2|x3", "false", "true".
struct KdnfFile {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<KDnf> formulas;
};
KdnfFile parse_kdnf(std::string_view text, const std::string& source = "<input>");
KDnf parse_kdnf_formula(std::string_view line);
std::string write_kdnf(const KdnfFile& file);

// "p poly n m", then one polynomial per line as ';'-separated terms
// "<rational> x1 ~x2"; "0" is the zero polynomial.
struct PolyFile {
  std::size_t n = 0;
  std::vector<Polynomial> polys;
};
PolyFile parse_poly(std::string_view text, const std::string& source = "<input>");
Polynomial parse_polynomial(std::string_view line);
std::string write_poly(const PolyFile& file);

// "p cp n m", then lines "x1:2 x2:-1 >= 1".
struct CpFile {
  std::size_t n = 0;
  std::vector<LinIneq> ineqs;
};
CpFile parse_cp(std::string_view text, const std::string& source = "<input>");
LinIneq parse_lin_ineq(std::string_view line);
std::string write_cp(const CpFile& file);

// "p dist n m", then lines "<num>/<den> <bitstring>".
ExplicitDistribution parse_dist(std::string_view text, const std::string& source = "<input>");
std::string write_dist(const ExplicitDistribution& d);

// "p masktable n m", then lines "<bitstring> <hidebits>" (1 = hidden).
TableMask parse_masktable(std::string_view text, const std::string& source = "<input>");
std::string write_masktable(std::size_t n, const TableMask& mask);

// "fixed:0110" (1 = hidden), "iid:1/4" or "table:<path>"; relative table
// paths resolve against base_dir.
MaskSpec parse_mask_spec(std::string_view spec, const std::filesystem::path& base_dir = {});

std::string bits_to_string(const std::vector<bool>& bits);
std::vector<bool> parse_bits(std::string_view text, std::size_t n);

}  // namespace pacsem::io
