#ifndef FROBSPLIT_IO_HPP
#define FROBSPLIT_IO_HPP

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "frobsplit/fsing.hpp"
#include "frobsplit/group.hpp"
#include "frobsplit/parse.hpp"

namespace frobsplit {

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FrobError("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

/// key/value lines "key: value", '#' comments, blank lines skipped; a value
/// continues across following lines until the next "key:" line
inline std::vector<std::pair<std::string, std::string>> parse_keyed_file(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::string s = strip(line);
    if (s.empty()) continue;
    size_t colon = s.find(':');
    bool is_key = false;
    if (colon != std::string::npos && colon > 0) {
      is_key = true;
      for (size_t i = 0; i < colon; ++i)
        if (!std::isalnum(static_cast<unsigned char>(s[i])) && s[i] != '_') is_key = false;
    }
    if (is_key) {
      out.emplace_back(strip(s.substr(0, colon)), strip(s.substr(colon + 1)));
    } else if (!out.empty()) {
      out.back().second += " " + s;  // continuation
    } else {
      throw FrobError("malformed input line (expected key: value): " + s);
    }
  }
  return out;
}

/// "p=3", "p=2 n=2", "p=3 perfection" (or "transcendental")
inline FieldSpecPtr parse_field_spec(const std::string& text) {
  int p = 0, n = 1;
  bool perf = false;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    if (token.rfind("p=", 0) == 0) {
      p = std::stoi(token.substr(2));
    } else if (token.rfind("n=", 0) == 0) {
      n = std::stoi(token.substr(2));
    } else if (token == "perfection" || token == "transcendental") {
      perf = true;
    } else {
      throw FrobError("unrecognized field spec token: " + token);
    }
  }
  if (p == 0) throw FrobError("field spec must set p=<prime>");
  if (perf) {
    if (n != 1) throw FrobError("the perfection is only taken over the prime field (n = 1)");
    return FieldSpec::perfection(p);
  }
  return n == 1 ? FieldSpec::prime_field(p) : FieldSpec::extension(p, n);
}

/// row-major bracket matrix [[a,b],[c,d]] with constant-expression entries
/// (entries may themselves contain parenthesized expressions)
inline FMatrix parse_matrix(const std::string& text, const FieldSpecPtr& spec, int n) {
  std::vector<std::vector<std::string>> rows;
  int depth = 0, parens = 0;
  std::string cell;
  std::vector<std::string> row;
  for (char c : text) {
    if (c == '(' && depth == 2) {
      ++parens;
      cell += c;
    } else if (c == ')' && depth == 2) {
      --parens;
      cell += c;
    } else if (c == '[') {
      ++depth;
      if (depth > 2) throw FrobError("matrix nesting too deep: " + text);
      if (depth == 2) {
        row.clear();
        cell.clear();
      }
    } else if (c == ']') {
      if (depth == 2) {
        row.push_back(cell);
        rows.push_back(row);
        cell.clear();
      }
      --depth;
      if (depth < 0) throw FrobError("unbalanced brackets in matrix: " + text);
    } else if (c == ',' && depth == 2 && parens == 0) {
      row.push_back(cell);
      cell.clear();
    } else if (depth == 2) {
      cell += c;
    } else if (depth == 1 && c != ',' && !std::isspace(static_cast<unsigned char>(c))) {
      throw FrobError("unexpected character between matrix rows: " + std::string(1, c));
    }
  }
  if (depth != 0 || parens != 0) throw FrobError("unbalanced brackets in matrix: " + text);
  if (static_cast<int>(rows.size()) != n) throw FrobError("matrix has " + std::to_string(rows.size()) +
                                                          " rows, expected " + std::to_string(n));
  FMatrix m(spec, n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      throw FrobError("matrix row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                      " entries, expected " + std::to_string(n));
    for (int j = 0; j < n; ++j) m.at(i, j) = parse_element(rows[i][j], spec);
  }
  return m;
}

/// words like "g1^3" or "g1*g2*g1^-1*g2^-1" (separators '*' or spaces)
inline Relator parse_relator(const std::string& text) {
  Relator r;
  r.text = strip(text);
  size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == '*')) ++pos;
  };
  skip();
  while (pos < text.size()) {
    if (text[pos] != 'g') throw FrobError("relator term must start with g<k>: " + text);
    ++pos;
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) throw FrobError("missing generator index in relator: " + text);
    int gen = std::stoi(text.substr(start, pos - start)) - 1;
    int exp = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      bool neg = pos < text.size() && text[pos] == '-';
      if (neg) ++pos;
      size_t es = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (es == pos) throw FrobError("missing exponent in relator: " + text);
      exp = std::stoi(text.substr(es, pos - es));
      if (neg) exp = -exp;
    }
    r.word.emplace_back(gen, exp);
    skip();
  }
  return r;
}

inline std::vector<std::string> split_on(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(strip(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(strip(cur));
  return out;
}

}  // namespace detail

/// Group input file: a field spec header, one `gen:` line per generator in
/// row-major bracket syntax, and optionally `relators:` (comma separated)
/// with `order:` giving the abstract group order.
inline MatrixGroup parse_group_text(const std::string& text, long long cap = default_group_cap()) {
  auto entries = detail::parse_keyed_file(text);
  FieldSpecPtr spec;
  int n = 0;
  std::vector<std::string> gen_texts;
  std::optional<GroupPresentation> pres;
  for (const auto& [key, value] : entries) {
    if (key == "field") {
      spec = detail::parse_field_spec(value);
    } else if (key == "vars") {
      n = std::stoi(value);
    } else if (key == "gen") {
      gen_texts.push_back(value);
    } else if (key == "relators") {
      if (!pres) pres.emplace();
      for (const auto& part : detail::split_on(value, ','))
        if (!part.empty()) pres->relators.push_back(detail::parse_relator(part));
    } else if (key == "order") {
      if (!pres) pres.emplace();
      pres->abstract_order = std::stoll(value);
    } else if (key == "cap") {
      cap = std::stoll(value);
    } else {
      throw FrobError("unknown key in group file: " + key);
    }
  }
  if (!spec) throw FrobError("group file is missing the field: header");
  if (n <= 0) throw FrobError("group file is missing vars: <n>");
  if (gen_texts.empty()) throw FrobError("group file has no gen: lines");
  std::vector<FMatrix> gens;
  for (const auto& gt : gen_texts) gens.push_back(detail::parse_matrix(gt, spec, n));
  return generate_group(spec, n, std::move(gens), cap, std::move(pres));
}

inline MatrixGroup load_group_file(const std::string& path, long long cap = default_group_cap()) {
  return parse_group_text(detail::read_file(path), cap);
}

/// Hypersurface input file: field, vars, optional names, weights, poly.
inline HypersurfacePresentation parse_hypersurface_text(const std::string& text) {
  auto entries = detail::parse_keyed_file(text);
  HypersurfacePresentation h;
  int n = 0;
  std::string poly_text;
  for (const auto& [key, value] : entries) {
    if (key == "field") {
      h.spec = detail::parse_field_spec(value);
    } else if (key == "vars") {
      n = std::stoi(value);
    } else if (key == "names") {
      std::istringstream in(value);
      std::string name;
      while (in >> name) h.varnames.push_back(name);
    } else if (key == "weights") {
      std::istringstream in(value);
      long long w;
      while (in >> w) h.weights.push_back(w);
    } else if (key == "poly") {
      poly_text = value;
    } else {
      throw FrobError("unknown key in hypersurface file: " + key);
    }
  }
  if (!h.spec) throw FrobError("hypersurface file is missing the field: header");
  if (n == 0) n = static_cast<int>(h.varnames.size());
  if (n == 0) throw FrobError("hypersurface file needs vars: or names:");
  if (h.varnames.empty()) h.varnames = default_varnames(n);
  if (static_cast<int>(h.varnames.size()) != n) throw FrobError("names count does not match vars");
  if (h.weights.empty()) h.weights.assign(n, 1);
  if (static_cast<int>(h.weights.size()) != n) throw FrobError("weights count does not match vars");
  if (poly_text.empty()) throw FrobError("hypersurface file is missing poly:");
  h.f = parse_polynomial(poly_text, h.spec, h.varnames);
  if (!h.is_weighted_homogeneous()) throw FrobError("hypersurface polynomial is not homogeneous for the weights");
  return h;
}

inline HypersurfacePresentation load_hypersurface_file(const std::string& path) {
  return parse_hypersurface_text(detail::read_file(path));
}

/// presentation data file: f3, f5, f9_forms (separated by '|'), relation
inline PresentationData parse_presentation_text(const std::string& text) {
  PresentationData d;
  d.spec = FieldSpec::perfection(3);
  auto entries = detail::parse_keyed_file(text);
  static const std::vector<std::string> relation_vars = {"f1", "f3", "f5", "f9"};
  bool have_f3 = false, have_f5 = false, have_f9 = false, have_rel = false;
  for (const auto& [key, value] : entries) {
    if (key == "f3") {
      d.f3 = parse_polynomial(value, d.spec, 3);
      have_f3 = true;
    } else if (key == "f5") {
      d.f5 = parse_polynomial(value, d.spec, 3);
      have_f5 = true;
    } else if (key == "f9_forms") {
      for (const auto& part : detail::split_on(value, '|')) d.f9_forms.push_back(parse_polynomial(part, d.spec, 3));
      have_f9 = true;
    } else if (key == "relation") {
      d.relation = parse_polynomial(value, d.spec, relation_vars);
      have_rel = true;
    } else {
      throw FrobError("unknown key in presentation file: " + key);
    }
  }
  if (!(have_f3 && have_f5 && have_f9 && have_rel))
    throw FrobError("presentation file must define f3, f5, f9_forms, relation");
  if (d.f9_forms.size() != 9) throw FrobError("expected nine linear forms in f9_forms");
  return d;
}

inline PresentationData load_presentation_file(const std::string& path) {
  return parse_presentation_text(detail::read_file(path));
}

// ---------------------------------------------------------------------------
// built-in example library (mirrors the worked examples; no files needed)

inline std::vector<std::string> builtin_names() {
  return {"a3", "cyclic-<p>", "z4-f2", "veronese-<n>", "counterexample", "hypersurface-<p>"};
}

/// builds the named example group; names: a3, cyclic-<p>, z4-f2,
/// veronese-<n>, counterexample, hypersurface-<p>
inline MatrixGroup builtin_group(const std::string& name) {
  auto cyclic_perm = [](const FieldSpecPtr& k, int n) {
    FMatrix g(k, n, n);
    for (int j = 0; j < n; ++j) g.at((j + 1) % n, j) = FieldElement::one(k);
    GroupPresentation pres;
    pres.relators = {Relator{{{0, n}}, "g1^" + std::to_string(n)}};
    pres.abstract_order = n;
    return generate_group(k, n, {g}, default_group_cap(), pres);
  };
  if (name == "a3") return cyclic_perm(FieldSpec::prime_field(3), 3);
  if (name == "z4-f2") return cyclic_perm(FieldSpec::prime_field(2), 4);
  if (name.rfind("cyclic-", 0) == 0) {
    int p = std::stoi(name.substr(7));
    return cyclic_perm(FieldSpec::prime_field(p), p);
  }
  if (name.rfind("veronese-", 0) == 0) {
    int n = std::stoi(name.substr(9));
    if (n < 2) throw FrobError("veronese-<n> needs n >= 2");
    if (n % 2 == 0) throw FrobError("veronese-<n> over characteristic 2 needs odd n");
    // smallest k with n | 2^k - 1, then an order-n scalar in F_{2^k}
    int k = 1;
    long long pk = 2;
    while ((pk - 1) % n != 0) {
      ++k;
      pk *= 2;
      if (k > 20) throw FrobError("veronese-<n>: field too large");
    }
    FieldSpecPtr spec = FieldSpec::extension(2, k);
    FieldElement zeta = k == 1 ? FieldElement::one(spec) : FieldElement::generator(spec).pow((pk - 1) / n);
    FMatrix m(spec, 2, 2);
    m.at(0, 0) = zeta;
    m.at(1, 1) = zeta;
    GroupPresentation pres;
    pres.relators = {Relator{{{0, n}}, "g1^" + std::to_string(n)}};
    pres.abstract_order = n;
    return generate_group(spec, 2, {m}, default_group_cap(), pres);
  }
  if (name == "counterexample") return counterexample_group();
  if (name.rfind("hypersurface-", 0) == 0) {
    int p = std::stoi(name.substr(13));
    return section5_group(p);
  }
  throw FrobError("unknown builtin group: " + name +
                  " (available: a3, cyclic-<p>, z4-f2, veronese-<n>, counterexample, hypersurface-<p>)");
}

}  // namespace frobsplit

#endif  // FROBSPLIT_IO_HPP
