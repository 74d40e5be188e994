#include "kgb/presentation_io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace kgb {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

// Cursor over one line of text; columns are 1-based.
class Lexer {
 public:
  Lexer(std::string_view text, std::size_t line) : s_(text), line_(line) {}

  void skip_space() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip_space();
    return i_ >= s_.size();
  }
  char peek() {
    skip_space();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::string ident() {
    skip_space();
    const std::size_t start = i_;
    if (i_ >= s_.size() || !ident_start(s_[i_])) fail("expected a generator name");
    while (i_ < s_.size() && ident_char(s_[i_])) ++i_;
    while (i_ < s_.size() && s_[i_] == '*') ++i_;
    return std::string(s_.substr(start, i_ - start));
  }
  std::size_t integer() {
    skip_space();
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected a slot number");
    return std::stoul(std::string(s_.substr(start, i_ - start)));
  }
  // Optional unsigned rational literal.
  std::optional<std::string> number() {
    skip_space();
    if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) return std::nullopt;
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ < s_.size() && s_[i_] == '/') {
      ++i_;
      const std::size_t den = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (den == i_) fail("expected a denominator");
    }
    return std::string(s_.substr(start, i_ - start));
  }
  [[noreturn]] void fail(const std::string& what) const { fail_at(i_, what); }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& what) const {
    throw ParseError(what, line_, pos + 1);
  }
  std::size_t position() {
    skip_space();
    return i_;
  }

 private:
  std::string_view s_;
  std::size_t line_;
  std::size_t i_ = 0;
};

// A signed composite monomial.
struct Signed {
  TreeMonomial tree;
  int sign = 1;
};

Signed parse_monomial(Lexer& lx, const GeneratorSet& gens) {
  const std::string name = lx.ident();
  const int id = gens.find(name);
  if (id < 0) lx.fail("unknown generator '" + name + "'");
  Signed out{TreeMonomial::corolla(gens, id), 1};
  while (lx.accept('.')) {
    const std::size_t at = lx.position();
    const std::size_t slot = lx.integer();
    if (slot == 0 || slot > arity(out.tree))
      lx.fail_at(at, "slot " + std::to_string(slot) + " out of range for arity " +
                 std::to_string(arity(out.tree)));
    lx.expect('(');
    const Signed inner = parse_monomial(lx, gens);
    lx.expect(')');
    const auto c = partial_compose(gens, out.tree, slot, inner.tree);
    out.tree = c.result;
    out.sign *= c.sign * inner.sign;
  }
  return out;
}

// Children of the root of t, as trees (a leaf child is the identity).
std::vector<TreeMonomial> root_children(const GeneratorSet& gens, const TreeMonomial& t) {
  std::vector<TreeMonomial> out;
  std::size_t pos = 1;
  for (int k = 0; k < gens.arity(t.code[0]); ++k) {
    const std::size_t end = subtree_end(gens, t, pos);
    TreeMonomial c;
    c.code.assign(t.code.begin() + static_cast<long>(pos), t.code.begin() + static_cast<long>(end));
    out.push_back(std::move(c));
    pos = end;
  }
  return out;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

int to_int(const std::string& s, std::size_t line, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError("expected an integer for " + what + ", got '" + s + "'", line, 1);
}

std::string coefficient_prefix(const Scalar& c, bool first) {
  std::string coef = c.to_string();
  const bool neg = !coef.empty() && coef[0] == '-';
  if (neg) coef.erase(0, 1);
  std::string s = first ? (neg ? "-" : "") : (neg ? " - " : " + ");
  if (coef != "1") s += coef + " ";
  return s;
}

}  // namespace

OperadElement parse_expression(const GeneratorSet& gens, Field f, std::string_view text,
                               std::size_t line) {
  Lexer lx(text, line);
  std::optional<OperadElement> out;
  bool first = true;
  while (!lx.done()) {
    int sign = 1;
    if (lx.accept('-'))
      sign = -1;
    else if (!lx.accept('+') && !first)
      lx.fail("expected '+' or '-'");
    first = false;
    Scalar c = Scalar::one(f);
    if (auto num = lx.number()) {
      try {
        c = Scalar::parse(*num, f);
      } catch (const Error& e) {
        lx.fail(e.what());
      }
    }
    const Signed m = parse_monomial(lx, gens);
    if (sign * m.sign < 0) c = -c;
    if (!out) out.emplace(f, arity(m.tree));
    if (arity(m.tree) != out->arity())
      lx.fail("term of arity " + std::to_string(arity(m.tree)) + " in an expression of arity " +
              std::to_string(out->arity()));
    out->add(m.tree, c);
  }
  if (!out) lx.fail("empty expression");
  return *out;
}

std::pair<std::string, int> format_monomial(const GeneratorSet& gens, const TreeMonomial& t) {
  if (t.is_identity()) throw Error("the identity has no composite form");
  const int root = t.code[0];
  std::string text = gens[root].name;
  TreeMonomial acc = TreeMonomial::corolla(gens, root);
  int sign = 1;
  const auto kids = root_children(gens, t);
  // Right to left, so the slots still to be filled keep their numbers.
  for (std::size_t i = kids.size(); i-- > 0;) {
    if (kids[i].is_identity()) continue;
    const auto [inner, s] = format_monomial(gens, kids[i]);
    text += "." + std::to_string(i + 1) + "(" + inner + ")";
    const auto c = partial_compose(gens, acc, i + 1, kids[i]);
    acc = c.result;
    sign *= c.sign * s;
  }
  return {text, sign};
}

std::string format_expression(const GeneratorSet& gens, const OperadElement& e) {
  if (e.is_zero()) return "0";
  std::string s;
  for (const auto& [t, c] : e.terms()) {
    const auto [text, sign] = format_monomial(gens, t);
    s += coefficient_prefix(sign < 0 ? -c : c, s.empty()) + text;
  }
  return s;
}

SparseVec parse_word_combination(const std::vector<std::string>& names, int n, Field f,
                                 std::string_view text, std::size_t line) {
  std::map<std::string, int> letter;
  for (std::size_t i = 0; i < names.size(); ++i) letter[names[i]] = static_cast<int>(i);
  Lexer lx(text, line);
  std::map<std::size_t, Scalar> acc;
  bool first = true;
  while (!lx.done()) {
    int sign = 1;
    if (lx.accept('-'))
      sign = -1;
    else if (!lx.accept('+') && !first)
      lx.fail("expected '+' or '-'");
    first = false;
    Scalar c = Scalar::one(f);
    if (auto num = lx.number()) {
      try {
        c = Scalar::parse(*num, f);
      } catch (const Error& e) {
        lx.fail(e.what());
      }
    }
    if (sign < 0) c = -c;
    std::vector<int> w;
    do {
      const std::string name = lx.ident();
      auto it = letter.find(name);
      if (it == letter.end()) lx.fail("unknown letter '" + name + "'");
      w.push_back(it->second);
    } while (lx.accept('.'));
    if (static_cast<int>(w.size()) != n)
      lx.fail("word of length " + std::to_string(w.size()) + ", expected " + std::to_string(n));
    auto& slot = acc.try_emplace(word_index(w, names.size()), Scalar::zero(f)).first->second;
    slot += c;
  }
  return to_sparse(acc);
}

std::string format_word_combination(const std::vector<std::string>& names, int n,
                                    const SparseVec& v) {
  if (v.empty()) return "0";
  std::string s;
  for (const auto& e : v) {
    std::vector<std::string> letters;
    for (int l : word_letters(e.index, names.size(), n))
      letters.push_back(names[static_cast<std::size_t>(l)]);
    s += coefficient_prefix(e.value, s.empty()) + join(letters, ".");
  }
  return s;
}

AlgebraPresentation PresentationFile::algebra() const {
  AlgebraPresentation a = AlgebraPresentation::over(operad, constants);
  a.relations = algebra_relations;
  return a;
}

MonomialOrder PresentationFile::order(const GeneratorSet& gens) const {
  return MonomialOrder(gens, alphabet, order_kind);
}

bool operator==(const PresentationFile& a, const PresentationFile& b) {
  if (!(a.field == b.field) || !(a.operad.gens == b.operad.gens) ||
      a.operad.relations != b.operad.relations || a.algebra_relations != b.algebra_relations ||
      a.order_kind != b.order_kind || a.alphabet != b.alphabet ||
      a.bounds.max_arity != b.bounds.max_arity || a.bounds.max_weight != b.bounds.max_weight ||
      a.constants.size() != b.constants.size() || a.nhomog.has_value() != b.nhomog.has_value())
    return false;
  for (std::size_t i = 0; i < a.constants.size(); ++i) {
    const auto &x = a.constants[i], &y = b.constants[i];
    if (x.name != y.name || x.degree != y.degree || x.weight != y.weight) return false;
  }
  if (a.nhomog) {
    const auto &x = *a.nhomog, &y = *b.nhomog;
    if (x.n != y.n || x.names != y.names || !(x.relations == y.relations)) return false;
  }
  return true;
}

PresentationFile parse_presentation(std::string_view text, std::optional<Field> field) {
  struct Line {
    std::size_t number;
    std::string text;
  };
  std::map<std::string, std::vector<Line>> sections;
  std::string current;
  std::size_t number = 0;
  std::istringstream in{std::string(text)};
  const std::vector<std::string> known = {"field",  "operad", "constants", "algebra-relations",
                                          "order",  "bounds", "nhomog"};
  for (std::string raw; std::getline(in, raw);) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const auto b = raw.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = raw.find_last_not_of(" \t\r");
    std::string line = raw.substr(b, e - b + 1);
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", number, 1);
      current = line.substr(1, line.size() - 2);
      if (std::find(known.begin(), known.end(), current) == known.end())
        throw ParseError("unknown section [" + current + "]", number, 2);
      if (sections.count(current))
        throw ParseError("duplicate section [" + current + "]", number, 2);
      sections[current];
      continue;
    }
    if (current.empty()) throw ParseError("content before the first section", number, 1);
    sections[current].push_back({number, line});
  }

  PresentationFile p;
  p.field = Field::rationals();
  if (auto it = sections.find("field"); it != sections.end()) {
    if (it->second.size() != 1)
      throw ParseError("[field] takes exactly one line", it->second.empty() ? 0 : it->second[1].number, 1);
    try {
      p.field = Field::parse(it->second[0].text);
    } catch (const Error& e) {
      throw ParseError(e.what(), it->second[0].number, 1);
    }
  }
  if (field) p.field = *field;
  p.operad.field = p.field;

  auto words_of = [](const Line& l) { return split_words(l.text); };
  // Keeps the columns of the original line.
  auto rest_after = [](const Line& l, const std::string& key) {
    return std::string(key.size(), ' ') + l.text.substr(key.size());
  };

  std::vector<Line> operad_rels;
  for (const auto& l : sections["operad"]) {
    const auto w = words_of(l);
    if (w[0] == "gen") {
      if (w.size() < 3 || w.size() > 5)
        throw ParseError("expected: gen NAME ARITY [DEGREE [WEIGHT]]", l.number, 1);
      Generator g;
      g.name = w[1];
      g.arity = to_int(w[2], l.number, "arity");
      if (w.size() > 3) g.degree = to_int(w[3], l.number, "degree");
      if (w.size() > 4) g.weight = to_int(w[4], l.number, "weight");
      try {
        p.operad.gens.add(g);
      } catch (const Error& e) {
        throw ParseError(e.what(), l.number, 1);
      }
    } else if (w[0] == "rel") {
      operad_rels.push_back({l.number, rest_after(l, "rel")});
    } else {
      throw ParseError("expected 'gen' or 'rel'", l.number, 1);
    }
  }
  for (const auto& l : operad_rels)
    p.operad.relations.push_back(parse_expression(p.operad.gens, p.field, l.text, l.number));

  for (const auto& l : sections["constants"]) {
    const auto w = words_of(l);
    if (w.size() > 3) throw ParseError("expected: NAME [DEGREE [WEIGHT]]", l.number, 1);
    Generator g{w[0], 0, 0, 1, true};
    if (w.size() > 1) g.degree = to_int(w[1], l.number, "degree");
    if (w.size() > 2) g.weight = to_int(w[2], l.number, "weight");
    p.constants.push_back(g);
  }
  if (!sections["algebra-relations"].empty()) {
    AlgebraPresentation a;
    try {
      a = AlgebraPresentation::over(p.operad, p.constants);
    } catch (const Error& e) {
      throw ParseError(e.what(), sections["algebra-relations"][0].number, 1);
    }
    for (const auto& l : sections["algebra-relations"])
      p.algebra_relations.push_back(parse_expression(a.gens, p.field, l.text, l.number));
  }

  for (const auto& l : sections["order"]) {
    const auto w = words_of(l);
    if (w[0] == "kind" && w.size() == 2) {
      if (w[1] == "path-lex")
        p.order_kind = MonomialOrder::Kind::path_lex;
      else if (w[1] == "pure-lex")
        p.order_kind = MonomialOrder::Kind::pure_lex;
      else
        throw ParseError("unknown order '" + w[1] + "'", l.number, 6);
    } else if (w[0] == "alphabet") {
      p.alphabet.assign(w.begin() + 1, w.end());
    } else {
      throw ParseError("expected 'kind NAME' or 'alphabet NAMES...'", l.number, 1);
    }
  }

  for (const auto& l : sections["bounds"]) {
    const auto w = words_of(l);
    if (w.size() != 2) throw ParseError("expected: KEY VALUE", l.number, 1);
    const int v = to_int(w[1], l.number, w[0]);
    if (v < 0) throw ParseError("bounds must be non-negative", l.number, 1);
    if (w[0] == "max-arity")
      p.bounds.max_arity = static_cast<std::size_t>(v);
    else if (w[0] == "max-weight")
      p.bounds.max_weight = v;
    else
      throw ParseError("unknown bound '" + w[0] + "'", l.number, 1);
  }

  if (auto it = sections.find("nhomog"); it != sections.end()) {
    int n = 0;
    std::vector<std::string> names;
    std::vector<Line> rels;
    for (const auto& l : it->second) {
      const auto w = words_of(l);
      if (w[0] == "n" && w.size() == 2)
        n = to_int(w[1], l.number, "n");
      else if (w[0] == "gens")
        names.assign(w.begin() + 1, w.end());
      else if (w[0] == "rel")
        rels.push_back({l.number, rest_after(l, "rel")});
      else
        throw ParseError("expected 'n', 'gens' or 'rel'", l.number, 1);
    }
    const std::size_t line0 = it->second.empty() ? 0 : it->second[0].number;
    if (n < 2) throw ParseError("[nhomog] needs 'n' of at least 2", line0, 1);
    if (names.empty()) throw ParseError("[nhomog] needs 'gens'", line0, 1);
    std::vector<SparseVec> rows;
    for (const auto& l : rels) rows.push_back(parse_word_combination(names, n, p.field, l.text, l.number));
    p.nhomog = NHomogPresentation::make(
        p.field, n, names, ExactMatrix::from_rows(p.field, ipow(names.size(), n), std::move(rows)));
  }
  return p;
}

std::string serialize(const PresentationFile& p) {
  std::ostringstream out;
  out << "[field]\n" << p.field.name() << "\n";
  if (!p.operad.gens.empty() || !p.operad.relations.empty()) {
    out << "\n[operad]\n";
    for (const auto& g : p.operad.gens.all())
      out << "gen " << g.name << " " << g.arity << " " << g.degree << " " << g.weight << "\n";
    for (const auto& r : p.operad.relations)
      out << "rel " << format_expression(p.operad.gens, r) << "\n";
  }
  if (!p.constants.empty()) {
    out << "\n[constants]\n";
    for (const auto& c : p.constants) out << c.name << " " << c.degree << " " << c.weight << "\n";
  }
  if (!p.algebra_relations.empty()) {
    const auto a = AlgebraPresentation::over(p.operad, p.constants);
    out << "\n[algebra-relations]\n";
    for (const auto& r : p.algebra_relations) out << format_expression(a.gens, r) << "\n";
  }
  out << "\n[order]\nkind "
      << (p.order_kind == MonomialOrder::Kind::path_lex ? "path-lex" : "pure-lex") << "\n";
  if (!p.alphabet.empty()) out << "alphabet " << join(p.alphabet, " ") << "\n";
  if (p.bounds.max_arity || p.bounds.max_weight) {
    out << "\n[bounds]\n";
    if (p.bounds.max_arity) out << "max-arity " << *p.bounds.max_arity << "\n";
    if (p.bounds.max_weight) out << "max-weight " << *p.bounds.max_weight << "\n";
  }
  if (p.nhomog) {
    const auto& a = *p.nhomog;
    out << "\n[nhomog]\nn " << a.n << "\ngens " << join(a.names, " ") << "\n";
    for (std::size_t i = 0; i < a.relations.rows(); ++i)
      out << "rel " << format_word_combination(a.names, a.n, a.relations.row(i)) << "\n";
  }
  return out.str();
}

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace kgb
