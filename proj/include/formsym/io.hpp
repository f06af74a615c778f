#pragma once

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "formsym/abelian_group.hpp"
#include "formsym/complex.hpp"
#include "formsym/finite_group.hpp"
#include "formsym/library.hpp"

namespace formsym::io {

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::string strip_comment(const std::string& line) { return trim(line.substr(0, line.find('#'))); }

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) out.push_back(trim(part));
  if (!s.empty() && s.back() == sep) out.push_back({});
  return out;
}

inline std::string where(const std::string& source, std::size_t line) {
  return source + ":" + std::to_string(line) + ": ";
}

template <class T>
T parse_number(const std::string& token, const std::string& context) {
  T value{};
  auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  require(ec == std::errc() && end == token.data() + token.size() && !token.empty(), ErrorCode::kParse,
          context + "expected an integer, got '" + token + "'");
  return value;
}

}  // namespace detail

/// Whitespace-separated vertex indices.
inline Simplex parse_simplex(const std::string& text, const std::string& context = {}) {
  Simplex s;
  std::istringstream in(text);
  std::string token;
  while (in >> token) s.push_back(detail::parse_number<Vertex>(token, context));
  require(!s.empty(), ErrorCode::kParse, context + "empty simplex");
  std::sort(s.begin(), s.end());
  require(std::adjacent_find(s.begin(), s.end()) == s.end(), ErrorCode::kValidation,
          context + "simplex {" + text + "} repeats a vertex");
  return s;
}

/// Simplices separated by ';' or ',', e.g. "0 1; 1 2".
inline std::vector<Simplex> parse_simplex_list(const std::string& text, const std::string& context = {}) {
  std::string normalized = text;
  std::replace(normalized.begin(), normalized.end(), ',', ';');
  std::vector<Simplex> out;
  for (const auto& part : detail::split(normalized, ';')) out.push_back(parse_simplex(part, context));
  return out;
}

/// One facet per line; '#' starts a comment and blank lines are skipped.
inline ComplexPtr parse_facets(std::istream& in, const std::string& source = "<input>") {
  std::vector<Simplex> facets;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    std::string body = detail::strip_comment(line);
    if (body.empty()) continue;
    facets.push_back(parse_simplex(body, detail::where(source, n)));
  }
  require(!facets.empty(), ErrorCode::kParse, source + ": no facets");
  return build_complex(facets);
}

inline ComplexPtr read_facet_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::kParse, "cannot read '" + path + "'");
  return parse_facets(in, path);
}

/// A library name, or else a path to a facet file.
inline ComplexPtr load_complex(const std::string& spec) {
  if (std::filesystem::is_regular_file(spec)) return read_facet_file(spec);
  return library::by_name(spec);
}

/// Facet file text for x: sorted facets, one per line.
inline std::string export_facets(const SimplicialComplex& x) {
  std::vector<Simplex> facets;
  for (SimplexId f : x.facets()) facets.push_back(x.simplex(f));
  std::sort(facets.begin(), facets.end());
  std::string out;
  for (const auto& f : facets) out += simplex_to_string(f) + "\n";
  return out;
}

/// Coefficient groups written as sums of "0", "Z", "Z^r" and "Z/d" terms,
/// normalized to invariant factors.
inline AbelianGroup parse_coefficients(const std::string& text) {
  static const std::regex term(R"(\s*(0|Z(\^([0-9]+)|/([0-9]+))?)\s*)");
  require(!detail::trim(text).empty(), ErrorCode::kParse, "empty coefficient group");
  std::vector<Integer> moduli;
  for (const auto& part : detail::split(text, '+')) {
    std::smatch m;
    require(std::regex_match(part, m, term), ErrorCode::kParse,
            "invalid coefficient group '" + text + "': cannot read term '" + part + "'");
    if (m[1] == "0") continue;
    if (m[3].matched) {
      auto r = detail::parse_number<std::size_t>(m[3].str(), "coefficient rank: ");
      require(r <= 64, ErrorCode::kValidation, "coefficient rank too large");
      moduli.insert(moduli.end(), r, Integer(0));
    } else if (m[4].matched) {
      auto d = detail::parse_number<std::uint64_t>(m[4].str(), "coefficient modulus: ");
      require(d >= 1, ErrorCode::kValidation, "invalid coefficient group '" + text + "': Z/0 is not allowed");
      moduli.push_back(Integer(d));
    } else {
      moduli.push_back(Integer(0));
    }
  }
  IntMatrix rel(moduli.size(), moduli.size());
  for (std::size_t i = 0; i < moduli.size(); ++i) rel(i, i) = moduli[i];
  return present(rel, moduli.size()).group;
}

/// Comma- or space-separated coordinates, reduced into a.
inline Element parse_element(const AbelianGroup& a, const std::string& text) {
  std::string normalized = text;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream in(normalized);
  Element e;
  std::string token;
  while (in >> token) e.push_back(Integer(detail::parse_number<long long>(token, "element: ")));
  require(e.size() == a.dimension(), ErrorCode::kValidation,
          "element needs " + std::to_string(a.dimension()) + " coordinates for " + a.to_string() + ", got " +
              std::to_string(e.size()));
  return a.reduce(e);
}

/// The up-closure of the listed generators; "all" is the whole space.
inline StarOpen parse_open(const ComplexPtr& x, const std::string& text) {
  std::string t = detail::trim(text);
  if (t == "all" || t == "whole") return StarOpen::whole(x);
  if (t == "empty") return StarOpen::empty_open(x);
  auto gens = parse_simplex_list(t, "open: ");
  for (const auto& g : gens)
    require(x->find(g).has_value(), ErrorCode::kValidation, "open: {" + simplex_to_string(g) + "} is not a simplex");
  return star_open(x, gens);
}

/// The closure of the listed simplices.
inline Subcomplex parse_subcomplex(const ComplexPtr& x, const std::string& text) {
  auto simplices = parse_simplex_list(text, "subcomplex: ");
  for (const auto& s : simplices)
    require(x->find(s).has_value(), ErrorCode::kValidation,
            "subcomplex: {" + simplex_to_string(s) + "} is not a simplex");
  return Subcomplex::closure(x, simplices);
}

/// Cover file: each line lists the generators of one element, separated by ';'.
inline std::vector<StarOpen> parse_cover(std::istream& in, const ComplexPtr& x, const std::string& source = "<cover>") {
  std::vector<StarOpen> out;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    std::string body = detail::strip_comment(line);
    if (body.empty()) continue;
    auto gens = parse_simplex_list(body, detail::where(source, n));
    for (const auto& g : gens)
      require(x->find(g).has_value(), ErrorCode::kValidation,
              detail::where(source, n) + "{" + simplex_to_string(g) + "} is not a simplex");
    out.push_back(star_open(x, gens));
  }
  require(!out.empty(), ErrorCode::kParse, source + ": no cover elements");
  return out;
}

/// Multiplication table file: one row per line, entries are element indices.
inline GroupPtr parse_group_table(std::istream& in, const std::string& source = "<group>") {
  FiniteGroup::Table t;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    std::string body = detail::strip_comment(line);
    if (body.empty()) continue;
    std::istringstream row(body);
    std::vector<std::size_t> r;
    std::string token;
    while (row >> token) r.push_back(detail::parse_number<std::size_t>(token, detail::where(source, n)));
    t.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < t.size(); ++i)
    require(t[i].size() == t.size(), ErrorCode::kValidation,
            source + ": row " + std::to_string(i) + " has " + std::to_string(t[i].size()) + " entries, expected " +
                std::to_string(t.size()));
  if (auto v = FiniteGroup::check_axioms(t))
    fail(ErrorCode::kValidation, source + ": not a group table: " + v->axiom + " fails");
  return std::make_shared<FiniteGroup>(std::move(t), source);
}

/// A library group name, or else a path to a table file.
inline GroupPtr load_group(const std::string& spec) {
  if (std::filesystem::is_regular_file(spec)) {
    std::ifstream in(spec);
    require(in.good(), ErrorCode::kParse, "cannot read '" + spec + "'");
    return parse_group_table(in, spec);
  }
  return groups::by_name(spec);
}

/// Lexicographically sorted copy.
inline std::vector<Simplex> sorted(std::vector<Simplex> s) {
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace formsym::io
