#pragma once

#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "formsym/anomaly.hpp"
#include "formsym/covers.hpp"
#include "formsym/group_ring.hpp"
#include "formsym/homology.hpp"
#include "formsym/io.hpp"
#include "formsym/symmetry.hpp"

namespace formsym::cli {

using Json = nlohmann::ordered_json;

/// Bumped on the minor digit when fields are added, on the major digit when
/// fields are renamed, removed or change meaning.
inline constexpr const char* kSchemaVersion = "1.0.0";

inline std::string report_schema_version() { return kSchemaVersion; }

// ---- serialization --------------------------------------------------------

inline Json integer_json(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return x.str();
}

inline Json element_json(const Element& e) {
  Json out = Json::array();
  for (const auto& x : e) out.push_back(integer_json(x));
  return out;
}

inline Json simplices_json(const std::vector<Simplex>& list) {
  Json out = Json::array();
  for (const auto& s : io::sorted(list)) out.push_back(s);
  return out;
}

inline Json open_json(const StarOpen& u) { return simplices_json(u.minimal_generators()); }

inline Json subcomplex_json(const Subcomplex& k) {
  auto c = k.as_complex();
  std::vector<Simplex> facets;
  for (SimplexId f : c->facets()) facets.push_back(c->simplex(f));
  return simplices_json(facets);
}

/// Elements in a canonical order: by sorted generator lists, duplicates dropped.
inline Json cover_json(const std::vector<StarOpen>& elements) {
  std::vector<std::vector<Simplex>> gens;
  for (const auto& u : elements) gens.push_back(io::sorted(u.minimal_generators()));
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  Json out = Json::array();
  for (const auto& g : gens) out.push_back(simplices_json(g));
  return out;
}

inline Json complex_json(const std::string& source, const SimplicialComplex& x, bool with_facets) {
  Json fv = Json::array();
  for (int k = 0; k <= x.dimension(); ++k) fv.push_back(x.count(k));
  Json out{{"source", source}, {"dimension", x.dimension()}, {"f_vector", fv},
           {"euler_characteristic", x.euler_characteristic()}};
  if (with_facets) {
    std::vector<Simplex> facets;
    for (SimplexId f : x.facets()) facets.push_back(x.simplex(f));
    out["facets"] = simplices_json(facets);
  }
  return out;
}

inline Json operator_json(const SymmetryOperator& op) {
  Json out{{"open", open_json(op.open)},
           {"degree", op.algebra->degree()},
           {"group", op.algebra->value(op.open).to_string()},
           {"coordinates", element_json(op.value)},
           {"label", nullptr},
           {"identity", op.is_identity()}};
  if (op.defect) {
    out["label"] = element_json(op.defect->label);
    out["support"] = subcomplex_json(op.defect->support);
  }
  return out;
}

inline Json cocycle_json(const Cocycle2& c) {
  return Json{{"modulus", c.modulus}, {"entries", c.values}};
}

inline Json ring_element_json(const GroupRingElement& x) {
  Json out = Json::array();
  for (std::size_t g = 0; g < x.group()->order(); ++g) out.push_back(integer_json(x.coefficient(g)));
  return out;
}

// ---- random nested configurations -----------------------------------------

/// Disjoint opens V_i, each holding disjoint opens U_ij, inside W. Every
/// open is a star of one to three random simplices.
inline Nesting random_nesting(const ComplexPtr& x, std::mt19937& rng) {
  auto pick = [&](const std::vector<SimplexId>& from) { return x->simplex(from[rng() % from.size()]); };
  std::vector<SimplexId> all(x->size());
  std::iota(all.begin(), all.end(), SimplexId{0});
  Nesting n;
  StarOpen used = StarOpen::empty_open(x);
  const std::size_t want = 1 + rng() % 3;
  for (int attempt = 0; attempt < 40 && n.groups.size() < want; ++attempt) {
    std::vector<Simplex> gens;
    for (std::size_t i = 0, c = 1 + rng() % 3; i < c; ++i) gens.push_back(pick(all));
    StarOpen v = star_open(x, gens);
    if (!v.disjoint(used)) continue;
    Nesting::Group g{v, {}};
    if (rng() % 4 == 0) {
      g.inner.push_back(v);
    } else {
      StarOpen taken = StarOpen::empty_open(x);
      const auto ids = v.ids();
      for (std::size_t i = 0, c = 1 + rng() % 3; i < 3 * c && g.inner.size() < c; ++i) {
        StarOpen u = star_open(x, {pick(ids)});
        if (!u.disjoint(taken)) continue;
        taken = taken.unite(u);
        g.inner.push_back(u);
      }
    }
    used = used.unite(v);
    n.groups.push_back(std::move(g));
  }
  n.outer = rng() % 2 ? StarOpen::whole(x) : used.unite(star_open(x, {pick(all)}));
  return n;
}

inline std::vector<std::size_t> random_permutation(std::size_t n, std::mt19937& rng) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng() % i]);
  return p;
}

// ---- commands ---------------------------------------------------------------

struct Options {
  std::string complex = "S1hex";
  std::string coefficients = "Z";
  int q = 0;
  std::optional<int> n;
  std::vector<std::string> opens;
  std::string open = "all";
  std::string in = "all";
  std::string support, support2;
  std::string label, label2;
  bool reverse = false;
  std::string cover = "weiss:vertex";
  std::string target = "all";
  int k = 0;
  std::size_t s = 1;
  int subdivisions = 0;
  std::string style = "vertex";
  std::string group = "Z2";
  std::string x, y;
  int form_degree = 0;
  std::size_t count = 20;
  unsigned seed = 1;
  std::string expect;
};

struct Outcome {
  Json input;
  Json result;
  std::optional<bool> passed;
};

namespace detail {

inline Orientation support_orientation(const Subcomplex& m, bool reverse) {
  auto o = orient(m.as_complex());
  Orientation out = o.orientable() ? *o.orientation : Orientation::mod_two(m.as_complex());
  return reverse ? out.reversed() : out;
}

inline CoverSpec load_cover(const ComplexPtr& x, const Options& o) {
  if (o.cover == "weiss:vertex") return weiss_cover(x, WeissStyle::kVertexComplements);
  if (o.cover == "weiss:simplex") return weiss_cover(x, WeissStyle::kSimplexComplements);
  std::ifstream in(o.cover);
  require(in.good(), ErrorCode::kParse, "cannot read cover '" + o.cover + "'");
  // the path is not echoed so reports do not depend on file names
  return CoverSpec{io::parse_open(x, o.target), io::parse_cover(in, x, "cover")};
}

inline Json cover_input(const CoverSpec& c, const Options& o) {
  Json j{{"target", open_json(c.target)}, {"elements", cover_json(c.elements)}};
  if (o.cover.rfind("weiss:", 0) == 0) j["style"] = o.cover;
  return j;
}

inline AlgebraPtr algebra(const ComplexPtr& x, const Options& o) {
  return QFormAlgebra::create(x, o.q, io::parse_coefficients(o.coefficients));
}

inline Json base_input(const Options& o, bool with_q) {
  Json j{{"complex", o.complex}, {"A", io::parse_coefficients(o.coefficients).to_string()}};
  if (with_q) j["q"] = o.q;
  return j;
}

inline SymmetryOperator make_operator(const AlgebraPtr& f, const ComplexPtr& x, const std::string& support,
                                      const std::string& label, bool reverse) {
  require(!support.empty(), ErrorCode::kValidation, "a defect support is required");
  Subcomplex m = io::parse_subcomplex(x, support);
  return defect_operator(f, m, io::parse_element(f->coefficients(), label.empty() ? "1" : label),
                         support_orientation(m, reverse));
}

inline Outcome homology_cmd(const Options& o) {
  auto x = io::load_complex(o.complex);
  auto a = io::parse_coefficients(o.coefficients);
  Outcome out{base_input(o, false), {}, std::nullopt};
  Json degrees = Json::array();
  for (int n = 0; n <= x->dimension(); ++n) degrees.push_back({{"degree", n}, {"group", homology(*x, n, a).to_string()}});
  out.result = {{"complex", complex_json(o.complex, *x, true)}, {"homology", degrees}};
  return out;
}

inline Outcome cohomology_cmd(const Options& o) {
  auto x = io::load_complex(o.complex);
  auto a = io::parse_coefficients(o.coefficients);
  StarOpen u = io::parse_open(x, o.open);
  Outcome out{base_input(o, false), {}, std::nullopt};
  out.input["open"] = open_json(u);
  Json degrees = Json::array();
  for (int n = 0; n <= x->dimension(); ++n)
    degrees.push_back({{"degree", n}, {"group", compactly_supported_cohomology(u, n, a).to_string()}});
  out.result = {{"compact_cohomology", degrees}};
  return out;
}

inline Outcome duality_cmd(const Options& o) {
  auto x = io::load_complex(o.complex);
  auto a = io::parse_coefficients(o.coefficients);
  Outcome out{base_input(o, false), {}, true};
  std::vector<StarOpen> opens;
  for (const auto& text : o.opens) opens.push_back(io::parse_open(x, text));
  if (opens.empty()) {
    opens.push_back(StarOpen::whole(x));
    for (SimplexId v : x->of_dim(0)) opens.push_back(star_open(x, {x->simplex(v)}));
  }
  auto oriented = orient(x);
  std::optional<Orientation> used;
  std::string kind = "none";
  if (oriented.orientable()) {
    used = oriented.orientation;
    kind = "integral";
  } else if (a.is_finite() && 2 % a.exponent() == 0) {
    used = Orientation::mod_two(x);
    kind = "mod 2";
  }
  Json rows = Json::array();
  for (const auto& u : opens) {
    DualityReport r = poincare_duality_check(x, used, u, a);
    Json degrees = Json::array();
    for (const auto& d : r.degrees) {
      Json map = d.map_is_isomorphism ? Json(*d.map_is_isomorphism) : Json(nullptr);
      degrees.push_back({{"degree", d.degree},
                         {"compact_cohomology", d.compact_cohomology.to_string()},
                         {"nerve_homology", d.nerve_homology.to_string()},
                         {"groups_match", d.groups_match},
                         {"map_isomorphism", map}});
    }
    rows.push_back({{"open", open_json(u)}, {"pass", r.pass()}, {"degrees", degrees}});
    *out.passed = *out.passed && r.pass();
  }
  out.input["opens"] = rows.size();
  out.result = {{"orientable", oriented.orientable()}, {"orientation", kind}, {"opens", rows}};
  return out;
}

inline Outcome operator_cmd(const Options& o) {
  auto x = io::load_complex(o.complex);
  auto f = algebra(x, o);
  auto op = make_operator(f, x, o.support, o.label, o.reverse);
  Outcome out{base_input(o, true), {}, std::nullopt};
  out.input["reverse"] = o.reverse;
  out.result = {{"operator", operator_json(op)}};
  return out;
}

inline Outcome fuse_cmd(const Options& o) {
  auto x = io::load_complex(o.complex);
  auto f = algebra(x, o);
  const std::string& support2 = o.support2.empty() ? o.support : o.support2;
  auto a = make_operator(f, x, o.support, o.label, false);
  auto b = make_operator(f, x, support2, o.label2, o.reverse);
  Outcome out{base_input(o, true), {}, true};
  out.result = {{"left", operator_json(a)}, {"right", operator_json(b)}};
  if (a.open == b.open) {
    auto fused = fuse(a, b);
    const auto& c = f->coefficients();
    Subcomplex m = io::parse_subcomplex(x, o.support);
    auto sum = defect_operator(f, m, c.add(a.defect->label, io::parse_element(c, o.label2.empty() ? "1" : o.label2)),
                               detail::support_orientation(m, false));
    bool match = o.reverse || f->value(a.open).equal(fused.value, sum.value);
    out.result["fused"] = operator_json(fused);
    if (!o.reverse) out.result["matches_label_sum"] = match;
    out.passed = match;
  } else {
    StarOpen w = io::parse_open(x, o.in);
    out.input["in"] = open_json(w);
    out.result["fused"] = operator_json(fuse_into(w, a, b));
  }
  return out;
}

inline Outcome compare_cmd(const Options& o) {
  auto x = io::load_complex(o.complex);
  auto f = algebra(x, o);
  auto a = make_operator(f, x, o.support, o.label, false);
  auto b = make_operator(f, x, o.support2.empty() ? o.support : o.support2, o.label2, o.reverse);
  StarOpen w = io::parse_open(x, o.in);
  Outcome out{base_input(o, true), {}, std::nullopt};
  out.input["in"] = open_json(w);
  bool equal = compare_in(w, a, b);
  out.result = {{"left", operator_json(a)}, {"right", operator_json(b)}, {"equal", equal}};
  out.passed = equal;
  return out;
}

inline Outcome pi_cmd(const Options& o) {
  auto x = io::load_complex(o.complex);
  auto a = io::parse_coefficients(o.coefficients);
  StarOpen u = io::parse_open(x, o.open);
  const int n = o.n.value_or(o.q + 1);
  Outcome out{base_input(o, false), {}, std::nullopt};
  out.input["n"] = n;
  out.input["open"] = open_json(u);
  Json groups = Json::array();
  for (int i = 0; i <= n; ++i)
    groups.push_back({{"i", i}, {"group", homotopy_groups_of_symmetry_space(u, n, a, i).to_string()}});
  out.result = {{"homotopy_groups", groups}};
  return out;
}

inline Outcome cover_check_cmd(const Options& o) {
  auto x = io::load_complex(o.complex);
  CoverSpec c = detail::load_cover(x, o);
  Outcome out{{{"complex", o.complex}, {"cover", cover_input(c, o)}}, {}, false};
  out.input["k"] = o.k;
  out.input["s"] = o.s;
  out.input["subdivisions"] = o.subdivisions;
  bool cover = is_cover(c);
  out.result = {{"is_cover", cover}};
  if (cover) {
    auto v = is_k_supportive(c, {o.k, o.s, o.subdivisions});
    out.result["verified"] = v.verified;
    out.result["complexes_checked"] = v.complexes_checked;
    out.result["counterexample"] = v.verified ? Json(nullptr) : simplices_json(v.counterexample);
    out.passed = v.verified;
  }
  return out;
}

inline Outcome weiss_cmd(const Options& o) {
  auto x = io::load_complex(o.complex);
  require(o.style == "vertex" || o.style == "simplex", ErrorCode::kValidation,
          "weiss style must be 'vertex' or 'simplex'");
  auto c = weiss_cover(x, o.style == "vertex" ? WeissStyle::kVertexComplements : WeissStyle::kSimplexComplements);
  Outcome out{{{"complex", o.complex}, {"style", o.style}}, {}, std::nullopt};
  out.result = {{"elements", cover_json(c.elements)}, {"count", c.elements.size()}};
  return out;
}

inline Outcome descent_cmd(const Options& o) {
  auto x = io::load_complex(o.complex);
  auto f = algebra(x, o);
  CoverSpec c = detail::load_cover(x, o);
  Outcome out{base_input(o, true), {}, std::nullopt};
  out.input["cover"] = cover_input(c, o);
  DescentReport r = descent_check(*f, c);
  out.result = {{"elements", r.elements},
                {"poset_size", r.poset_size},
                {"colimit_size", r.colimit_size},
                {"target_size", r.target_size},
                {"injective", r.injective},
                {"surjective", r.surjective},
                {"verdict", r.bijective() ? "bijective" : "not bijective"},
                {"witness", r.witness},
                {"abelian_colimit", r.abelian_colimit.to_string()},
                {"target_group", r.target_group.to_string()}};
  out.passed = r.bijective();
  return out;
}

inline GroupRingElement parse_ring_element(const GroupPtr& g, const std::string& text, const char* what) {
  require(!text.empty(), ErrorCode::kValidation, std::string("group ring element --") + what + " is required");
  auto coords = io::parse_element(AbelianGroup::free(g->order()), text);
  GroupRingElement::Coefficients c;
  for (std::size_t i = 0; i < coords.size(); ++i) c[i] = coords[i];
  return GroupRingElement(g, std::move(c));
}

inline Outcome group_ring_cmd(const Options& o) {
  auto g = io::load_group(o.group);
  auto x = parse_ring_element(g, o.x, "x");
  Outcome out{{{"group", g->name()}, {"order", g->order()}, {"x", ring_element_json(x)}}, {}, std::nullopt};
  out.result = {{"square", ring_element_json(x * x)}};
  if (!o.y.empty()) {
    auto y = parse_ring_element(g, o.y, "y");
    out.input["y"] = ring_element_json(y);
    out.result["sum"] = ring_element_json(x + y);
    out.result["product"] = ring_element_json(x * y);
    out.result["commute"] = x * y == y * x;
  }
  return out;
}

inline Outcome unit_cmd(const Options& o) {
  auto g = io::load_group(o.group);
  auto x = parse_ring_element(g, o.x, "x");
  auto t = is_unit(x);
  Outcome out{{{"group", g->name()}, {"order", g->order()}, {"x", ring_element_json(x)}}, {}, t.unit};
  out.result = {{"unit", t.unit},
                {"determinant", integer_json(t.determinant)},
                {"inverse", t.inverse ? ring_element_json(*t.inverse) : Json(nullptr)}};
  return out;
}

inline Outcome anomaly_cmd(const Options& o) {
  auto g = io::load_group(o.group);
  auto c = classify_anomalies(g, o.form_degree);
  Outcome out{{{"group", g->name()}, {"order", g->order()}, {"form_degree", o.form_degree}}, {}, c.counts_match};
  auto classes = c.group.elements();
  Json reps = Json::array();
  for (std::size_t i = 0; i < c.representatives.size(); ++i) {
    auto ext = build_central_extension(c.representatives[i]);
    reps.push_back({{"class", element_to_string(classes[i])},
                    {"cocycle", cocycle_json(c.representatives[i])},
                    {"extension", {{"order", ext.group->order()}, {"abelian", ext.group->is_abelian()}}}});
  }
  out.result = {{"class_group", c.group.to_string()},
                {"integral_h3", c.predicted.to_string()},
                {"modulus", c.modulus},
                {"counts_match", c.counts_match},
                {"representatives", reps}};
  return out;
}

inline Outcome coherence_cmd(const Options& o) {
  auto x = io::load_complex(o.complex);
  auto f = algebra(x, o);
  std::mt19937 rng(o.seed);
  std::size_t commuting = 0, symmetric = 0;
  Json failures = Json::array();
  for (std::size_t t = 0; t < o.count; ++t) {
    Nesting n = random_nesting(x, rng);
    auto r = check_coherence(*f, n);
    commuting += r.commutes;
    std::vector<StarOpen> flat;
    for (const auto& g : n.groups) flat.insert(flat.end(), g.inner.begin(), g.inner.end());
    bool sym = structure_map_is_symmetric(*f, flat, n.outer, random_permutation(flat.size(), rng));
    symmetric += sym;
    if ((!r.commutes || !sym) && failures.size() < 5)
      failures.push_back({{"configuration", t}, {"commutes", r.commutes}, {"symmetric", sym},
                          {"counterexample", r.counterexample}});
  }
  Outcome out{base_input(o, true), {}, commuting == o.count && symmetric == o.count};
  out.input["count"] = o.count;
  out.input["seed"] = o.seed;
  out.result = {{"configurations", o.count}, {"commuting", commuting}, {"permutation_invariant", symmetric},
                {"failures", failures}};
  return out;
}

}  // namespace detail

/// Runs one command; args exclude the program name. Exit codes: 0 success,
/// 1 verdict differs from --expect, 2 input or module error.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"formsym: higher-form symmetry algebras on triangulated manifolds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("formsym report schema ") + kSchemaVersion);

  using Handler = std::function<Outcome(const Options&)>;
  std::map<CLI::App*, std::pair<std::string, Handler>> handlers;

  auto add = [&](const std::string& name, const std::string& about, Handler h) {
    CLI::App* sub = app.add_subcommand(name, about);
    sub->add_option("--expect", o.expect, "exit 1 unless the verdict is this")->check(CLI::IsMember({"pass", "fail"}));
    handlers[sub] = {name, std::move(h)};
    return sub;
  };
  auto complex_opt = [&](CLI::App* s) { s->add_option("--complex", o.complex, "library name or facet file"); };
  auto coeff_opt = [&](CLI::App* s) { s->add_option("--A", o.coefficients, "coefficients, e.g. Z^2 + Z/2"); };
  auto q_opt = [&](CLI::App* s) { s->add_option("--q", o.q, "form degree"); };
  auto operator_opts = [&](CLI::App* s) {
    complex_opt(s);
    coeff_opt(s);
    q_opt(s);
    s->add_option("--support", o.support, "defect support simplices, e.g. '0 1; 1 2; 0 2'")->required();
    s->add_option("--label", o.label, "coefficient coordinates, default 1");
  };
  auto cover_opts = [&](CLI::App* s) {
    complex_opt(s);
    s->add_option("--cover", o.cover, "weiss:vertex, weiss:simplex or a cover file");
    s->add_option("--target", o.target, "covered open for cover files, default all");
  };

  CLI::App* s = add("homology", "simplicial homology", detail::homology_cmd);
  complex_opt(s);
  coeff_opt(s);

  s = add("cohomology-c", "compactly supported cohomology of an open", detail::cohomology_cmd);
  complex_opt(s);
  coeff_opt(s);
  s->add_option("--open", o.open, "generators of the open, default all");

  s = add("duality", "duality check on opens", detail::duality_cmd);
  complex_opt(s);
  coeff_opt(s);
  s->add_option("--open", o.opens, "open to check; default all and every vertex star");

  s = add("operator", "defect operator on a closed support", detail::operator_cmd);
  operator_opts(s);
  s->add_flag("--reverse", o.reverse, "reverse the support orientation");

  s = add("fuse", "fuse two defect operators", detail::fuse_cmd);
  operator_opts(s);
  s->add_option("--support2", o.support2, "second support, default the first");
  s->add_option("--label2", o.label2, "second label, default 1");
  s->add_flag("--reverse", o.reverse, "reverse the second orientation");
  s->add_option("--in", o.in, "open receiving the fusion of disjoint operators");

  s = add("compare", "compare two defect operators inside an open", detail::compare_cmd);
  operator_opts(s);
  s->add_option("--support2", o.support2, "second support, default the first");
  s->add_option("--label2", o.label2, "second label, default 1");
  s->add_flag("--reverse", o.reverse, "reverse the second orientation");
  s->add_option("--in", o.in, "open to compare in, default all");

  s = add("pi", "homotopy groups of the symmetry space", detail::pi_cmd);
  complex_opt(s);
  coeff_opt(s);
  q_opt(s);
  s->add_option("--n", o.n, "target degree, default q+1");
  s->add_option("--open", o.open, "generators of the open, default all");

  s = add("cover-check", "k-dimensional supportiveness of a cover", detail::cover_check_cmd);
  cover_opts(s);
  s->add_option("--k", o.k, "dimension bound");
  s->add_option("--s", o.s, "facet bound");
  s->add_option("--subdivisions", o.subdivisions, "barycentric subdivisions first");

  s = add("weiss", "complement cover", detail::weiss_cmd);
  complex_opt(s);
  s->add_option("--style", o.style, "vertex or simplex");

  s = add("descent", "descent at the level of components", detail::descent_cmd);
  cover_opts(s);
  coeff_opt(s);
  q_opt(s);

  s = add("group-ring", "products in the integral group ring", detail::group_ring_cmd);
  s->add_option("--group", o.group, "library group or table file");
  s->add_option("--x", o.x, "coefficients per group element")->required();
  s->add_option("--y", o.y, "second element");

  s = add("unit", "unit test in the integral group ring", detail::unit_cmd);
  s->add_option("--group", o.group, "library group or table file");
  s->add_option("--x", o.x, "coefficients per group element")->required();

  s = add("anomaly", "anomaly classes of a finite symmetry", detail::anomaly_cmd);
  s->add_option("--group", o.group, "library group or table file");
  s->add_option("--form-degree", o.form_degree, "form degree of the symmetry");

  s = add("coherence", "nesting coherence on random configurations", detail::coherence_cmd);
  complex_opt(s);
  coeff_opt(s);
  q_opt(s);
  s->add_option("--count", o.count, "number of configurations");
  s->add_option("--seed", o.seed, "random seed");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const auto& [name, handler] = handlers.at(chosen);
  Json report{{"schema_version", kSchemaVersion}, {"command", name}};
  try {
    Outcome r = handler(o);
    report["input"] = std::move(r.input);
    report["result"] = std::move(r.result);
    report["verdict"] = r.passed ? Json(*r.passed ? "pass" : "fail") : Json(nullptr);
    out << report.dump(2) << "\n";
    if (!o.expect.empty() && r.passed && *r.passed != (o.expect == "pass")) return 1;
    if (!o.expect.empty() && !r.passed) {
      err << "formsym: " << name << " has no verdict to compare with --expect\n";
      return 2;
    }
    return 0;
  } catch (const Error& e) {
    report["error"] = {{"code", std::string(e.code_name())}, {"message", e.what()}};
    out << report.dump(2) << "\n";
    err << "formsym: " << e.code_name() << ": " << e.what() << "\n";
    return 2;
  }
}

}  // namespace formsym::cli
