// kgb: command-line front end.
//
// Exit codes: 0 success or true verdict, 1 false verdict, 2 error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "kgb/koszul.hpp"
#include "kgb/na2n.hpp"
#include "kgb/presentation_io.hpp"

using namespace kgb;
using Json = nlohmann::ordered_json;

namespace {

struct Options {
  std::string command;
  std::string file;
  std::string field;
  std::optional<std::size_t> max_arity;
  std::optional<int> max_weight;
  std::optional<int> n;
  std::vector<std::string> alphabet;
  unsigned threads = 1;
  bool pretty = false;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::string> functional(const GeneratorSet& gens, const std::vector<TreeMonomial>& ts) {
  std::vector<std::string> out;
  for (const auto& t : ts) out.push_back(to_functional(gens, t));
  return out;
}

Json basis_json(const GroebnerBasis& g) {
  Json elems = Json::array();
  for (const auto& e : g.elements)
    elems.push_back({{"leading", to_functional(g.gens, e.lt)},
                     {"element", format_expression(g.gens, e.element)}});
  return {{"size", g.elements.size()},
          {"order", g.order.name()},
          {"complete_up_to", g.complete_up_to.to_string()},
          {"reduced", g.reduced},
          {"stats",
           {{"pairs_considered", g.stats.pairs_considered},
            {"pairs_beyond_bounds", g.stats.pairs_beyond_bounds},
            {"reductions_to_zero", g.stats.reductions_to_zero}}},
          {"elements", elems}};
}

Json dims_by_weight(const std::map<int, std::vector<std::size_t>>& m) {
  Json out = Json::object();
  for (const auto& [w, v] : m) out[std::to_string(w)] = v;
  return out;
}

// Context shared by every command.
class Runner {
 public:
  explicit Runner(const Options& o) : opt_(o) {
    if (!o.field.empty()) field_ = Field::parse(o.field);
  }

  int run(Json& report) {
    report["command"] = opt_.command;
    const std::string& c = opt_.command;
    if (c == "na2n-verify") return na2n_verify(report);
    load(report);
    if (c == "gb") return gb(report);
    if (c == "normal-forms") return normal_forms(report);
    if (c == "algebra-gb") return algebra_gb(report);
    if (c == "algebra-basis") return algebra_basis(report);
    if (c == "dual") return dual(report);
    if (c == "nkoszul") return nkoszul(report);
    if (c == "ext-dims") return ext_dims(report);
    if (c == "kd-present") return kd_present(report);
    throw UsageError("unknown command '" + c + "'");
  }

 private:
  void load(Json& report) {
    const std::string text = read_file(opt_.file);
    pres_ = parse_presentation(text, field_);
    if (!opt_.alphabet.empty()) pres_.alphabet = opt_.alphabet;
    bounds_ = pres_.bounds;
    if (opt_.max_arity) bounds_.max_arity = opt_.max_arity;
    if (opt_.max_weight) bounds_.max_weight = opt_.max_weight;
    report["input_hash"] = "fnv1a:" + hex64(fnv1a(text));
    report["field"] = pres_.field.name();
    Json b = Json::object();
    b["max_arity"] = bounds_.max_arity ? Json(*bounds_.max_arity) : Json(nullptr);
    b["max_weight"] = bounds_.max_weight ? Json(*bounds_.max_weight) : Json(nullptr);
    report["bounds"] = b;
  }

  std::size_t need_arity() const {
    if (!bounds_.max_arity) throw UsageError("this command needs --max-arity");
    return *bounds_.max_arity;
  }
  int need_weight() const {
    if (!bounds_.max_weight) throw UsageError("this command needs --max-weight");
    return *bounds_.max_weight;
  }
  const NHomogPresentation& need_nhomog() const {
    if (!pres_.nhomog) throw UsageError("the input has no [nhomog] section");
    return *pres_.nhomog;
  }

  GroebnerBasis operad_gb() const {
    if (!bounds_.max_arity && !bounds_.max_weight)
      throw UsageError("this command needs --max-arity or --max-weight");
    BuchbergerOptions o;
    o.bounds.max_arity = bounds_.max_arity;
    o.bounds.max_weight = bounds_.max_weight;
    o.threads = opt_.threads;
    const auto& p = pres_.operad;
    return reduce_gb(buchberger(p.gens, p.relations, pres_.order(p.gens), o));
  }

  GroebnerBasis algebra_gb_basis() const {
    BuchbergerOptions o;
    o.bounds.max_weight = need_weight();
    o.bounds.max_arity = bounds_.max_arity;
    o.bounds.measure = WeightMeasure::potential;
    o.threads = opt_.threads;
    const auto a = pres_.algebra();
    return reduce_gb(algebra_groebner(a, pres_.order(a.gens), o));
  }

  int gb(Json& r) {
    r["basis"] = basis_json(operad_gb());
    return 0;
  }

  int normal_forms(Json& r) {
    const std::size_t arity = need_arity();
    const int weight = need_weight();
    const auto g = operad_gb();
    Json counts = Json::object(), mons = Json::object();
    for (std::size_t k = 1; k <= arity; ++k) {
      const auto ts = normal_monomials(g, k, weight);
      counts[std::to_string(k)] = ts.size();
      mons[std::to_string(k)] = functional(g.gens, ts);
    }
    r["gb_size"] = g.elements.size();
    r["counts"] = counts;
    r["normal_monomials"] = mons;
    return 0;
  }

  int algebra_gb(Json& r) {
    r["basis"] = basis_json(algebra_gb_basis());
    return 0;
  }

  int algebra_basis(Json& r) {
    const auto g = algebra_gb_basis();
    const auto basis = algebra_normal_basis(g, need_weight());
    Json counts = Json::object(), mons = Json::object();
    for (const auto& [w, ts] : basis) {
      counts[std::to_string(w)] = ts.size();
      mons[std::to_string(w)] = functional(g.gens, ts);
    }
    r["gb_size"] = g.elements.size();
    r["dims"] = counts;
    r["basis"] = mons;
    return 0;
  }

  int dual(Json& r) {
    const auto& a = need_nhomog();
    const auto d = dual_presentation(a);
    Json rels = Json::array();
    for (std::size_t i = 0; i < d.relations.rows(); ++i)
      rels.push_back(format_word_combination(d.names, d.n, d.relations.row(i)));
    r["relation_dim"] = a.relation_dim();
    r["dual"] = {{"n", d.n}, {"gens", d.names}, {"relation_dim", d.relation_dim()},
                 {"relations", rels}};
    if (bounds_.max_weight) {
      r["dims"] = GradedAlgebraTable(a, *bounds_.max_weight).dims();
      r["dual_dims"] = GradedAlgebraTable(d, *bounds_.max_weight).dims();
    }
    return 0;
  }

  int nkoszul(Json& r) {
    const auto& a = need_nhomog();
    const int w = need_weight();
    const auto v = is_n_koszul(a, w);
    const auto y = check_yoneda_dims(a, w);
    r["verdict"] = v.koszul ? "koszul-up-to-bound" : "not-koszul";
    if (!v.koszul) r["witness"] = {{"weight", v.weight}, {"degree", v.degree}};
    r["koszul_homology"] = dims_by_weight(v.homology);
    r["yoneda"] = {{"match", y.match},
                   {"first_mismatch", y.match ? Json(nullptr) : Json(y.first_mismatch)},
                   {"ext", dims_by_weight(y.ext)},
                   {"expected", dims_by_weight(y.expected)}};
    return v.koszul ? 0 : 1;
  }

  int ext_dims(Json& r) {
    const auto b = bar_construction(need_nhomog(), need_weight());
    r["ext_dims"] = dims_by_weight(b.ext_dims);
    return 0;
  }

  int kd_present(Json& r) {
    const auto c = presentation_compare(need_nhomog(), need_weight(), opt_.threads);
    Json rows = Json::array();
    for (const auto& row : c.rows)
      rows.push_back({{"weight", row.weight},
                      {"dual_dim", row.dual_dim},
                      {"presented", row.presented},
                      {"dims_equal", row.dims_equal},
                      {"isomorphic", row.isomorphic},
                      {"products_equal", row.products_equal}});
    r["gb_size"] = c.gb_size;
    r["rows"] = rows;
    r["verdict"] = c.all_equal() ? "equal" : "different";
    return c.all_equal() ? 0 : 1;
  }

  int na2n_verify(Json& r) {
    if (!opt_.n) throw UsageError("na2n-verify needs --n");
    if (!opt_.max_arity) throw UsageError("na2n-verify needs --max-arity");
    const int n = *opt_.n;
    const std::size_t bound = *opt_.max_arity;
    const Field f = field_.value_or(Field::rationals());
    const auto p = na2n_presentation(n, f);
    BuchbergerOptions o;
    o.bounds.max_arity = bound;
    o.threads = opt_.threads;
    const MonomialOrder order(p.gens);
    const auto g = reduce_gb(buchberger(p.gens, p.relations, order, o));
    const auto expected =
        reduce_gb(make_basis(p.gens, order, f, na2n_expected_gb(p, n, bound), o.bounds));
    bool match = g.elements.size() == expected.elements.size();
    for (std::size_t i = 0; match && i < g.elements.size(); ++i)
      match = g.elements[i].element == expected.elements[i].element;
    r["field"] = f.name();
    r["bounds"] = {{"max_arity", bound}, {"max_weight", nullptr}};
    r["n"] = n;
    r["expected_size"] = expected.elements.size();
    r["match"] = match;
    r["basis"] = basis_json(g);
    r["verdict"] = match ? "matches" : "differs";
    return match ? 0 : 1;
  }

  Options opt_;
  std::optional<Field> field_;
  PresentationFile pres_;
  Bounds bounds_;
};

// Indented key: value listing.
void pretty(std::ostream& out, const Json& j, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const auto scalar_array = [](const Json& a) {
    for (const auto& x : a)
      if (x.is_structured()) return false;
    return true;
  };
  std::size_t index = 0;
  for (auto it = j.begin(); it != j.end(); ++it, ++index) {
    const std::string key = j.is_object() ? it.key() : "[" + std::to_string(index) + "]";
    const Json& v = *it;
    if (v.is_string()) {
      out << pad << key << ": " << v.get<std::string>() << "\n";
    } else if (v.is_array() && scalar_array(v)) {
      out << pad << key << ":";
      for (const auto& x : v) out << " " << (x.is_string() ? x.get<std::string>() : x.dump());
      out << "\n";
    } else if (v.is_structured()) {
      out << pad << key << ":\n";
      pretty(out, v, indent + 2);
    } else {
      out << pad << key << ": " << v.dump() << "\n";
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Groebner bases for operads and Koszul duality of N-homogeneous algebras"};
  app.require_subcommand(1);
  Options opt;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"gb", "reduced Groebner basis of an operad presentation"},
      {"normal-forms", "normal tree monomials per arity"},
      {"algebra-gb", "Groebner basis of an algebra over an operad"},
      {"algebra-basis", "normal basis of an algebra over an operad, per weight"},
      {"dual", "quadratic-style dual T(V*)/(R^perp) of an N-homogeneous algebra"},
      {"nkoszul", "N-Koszulness up to a weight bound, with the bar-construction check"},
      {"ext-dims", "Ext dimensions from the bar construction"},
      {"na2n-verify", "complete NA(2,N) and compare with the tower basis"},
      {"kd-present", "compare A^! with its presentation over NA(2,N)"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    if (name != "na2n-verify") sub->add_option("file", opt.file, "presentation file")->required();
    sub->add_option("--field", opt.field, "q, f2 or f<p>");
    sub->add_option("--max-arity", opt.max_arity, "arity bound");
    sub->add_option("--max-weight", opt.max_weight, "weight bound");
    sub->add_option("--threads", opt.threads, "worker threads")->check(CLI::PositiveNumber);
    if (name != "na2n-verify")
      sub->add_option("--order", opt.alphabet, "alphabet, greatest first (overrides [order])")
          ->delimiter(',');
    sub->add_flag("--pretty", opt.pretty, "human-readable output");
    if (name == "na2n-verify") sub->add_option("--n", opt.n, "arity N of the second operation");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  opt.command = app.get_subcommands().front()->get_name();

  Json report;
  int code = 0;
  try {
    code = Runner(opt).run(report);
  } catch (const std::exception& e) {
    std::cerr << "kgb " << opt.command << ": " << e.what() << "\n";
    return 2;
  }
  if (opt.pretty)
    pretty(std::cout, report);
  else
    std::cout << report.dump(2) << "\n";
  return code;
}
