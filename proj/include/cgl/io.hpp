#pragma once

#include <climits>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cgl/analysis.hpp"
#include "cgl/certify.hpp"
#include "cgl/gg.hpp"
#include "cgl/named.hpp"

namespace cgl {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// small string utilities

inline std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

/// Split on a delimiter, ignoring occurrences nested in () or [].
inline std::vector<std::string> split_top(const std::string& s, char delim) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == delim && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

inline long parse_long(const std::string& s, const std::string& what) {
  std::string t = strip(s);
  if (t.empty()) throw UsageError(what + " is empty");
  char* end = nullptr;
  long v = std::strtol(t.c_str(), &end, 10);
  if (end != t.c_str() + t.size()) throw UsageError(what + " '" + t + "' is not an integer");
  return v;
}

inline int parse_int(const std::string& s, const std::string& what) {
  long v = parse_long(s, what);
  if (v < INT_MIN || v > INT_MAX) throw UsageError(what + " '" + s + "' overflows an int");
  return static_cast<int>(v);
}

/// key=value pairs separated by top-level commas, preserving order.
inline std::vector<std::pair<std::string, std::string>> parse_kv(const std::string& s) {
  std::vector<std::pair<std::string, std::string>> out;
  if (strip(s).empty()) return out;
  for (const std::string& part : split_top(s, ',')) {
    std::size_t eq = part.find('=');
    if (eq == std::string::npos)
      throw UsageError("expected key=value, got '" + strip(part) + "'");
    out.emplace_back(strip(part.substr(0, eq)), strip(part.substr(eq + 1)));
  }
  return out;
}

inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << content;
  if (!out) throw UsageError("write to '" + path + "' failed");
}

inline Json parse_json(const std::string& text, const std::string& what) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw UsageError(what + " is not valid JSON");
  return j;
}

// ---------------------------------------------------------------------------
// polynomial and group parsing

/// Inverse of the modulus/label printer: "+"-joined monomials over t, high
/// degree first or in any order, e.g. "t^2+2t+1".
inline poly::Poly parse_poly(const std::string& s) {
  std::string t = strip(s);
  if (t.empty()) throw UsageError("empty polynomial");
  poly::Poly out;
  auto set_coeff = [&out](int deg, int coeff) {
    if (static_cast<int>(out.size()) <= deg) out.resize(deg + 1, 0);
    out[deg] += coeff;
  };
  for (const std::string& raw : split_top(t, '+')) {
    std::string term = strip(raw);
    if (term.empty()) throw UsageError("empty term in polynomial '" + s + "'");
    std::size_t tp = term.find('t');
    if (tp == std::string::npos) {
      set_coeff(0, parse_int(term, "polynomial coefficient"));
      continue;
    }
    int coeff = tp == 0 ? 1 : parse_int(term.substr(0, tp), "polynomial coefficient");
    int deg = 1;
    std::string rest = term.substr(tp + 1);
    if (!rest.empty()) {
      if (rest[0] != '^') throw UsageError("bad polynomial term '" + term + "'");
      deg = parse_int(rest.substr(1), "polynomial degree");
    }
    if (deg < 0) throw UsageError("negative degree in polynomial '" + s + "'");
    set_coeff(deg, coeff);
  }
  poly::trim(out);
  return out;
}

inline Family family_from_tag(const std::string& tag) {
  for (Family f : {Family::Cyclic, Family::ProductCyclic, Family::Symmetric,
                   Family::Alternating, Family::Dihedral, Family::AdditiveField, Family::SL2,
                   Family::GL2, Family::PSL2, Family::PGL2})
    if (tag == family_tag(f)) return f;
  throw UsageError("unknown group family '" + tag + "'");
}

/// "cyclic:4", "sym:5", "psl2:13", "addfield:9:t^2+1", "z2:7".
inline GroupPtr parse_group(const std::string& spec) {
  std::vector<std::string> parts = split_top(strip(spec), ':');
  if (parts.size() < 2 || parts.size() > 3)
    throw UsageError("group spec must be family:n[:modulus], got '" + spec + "'");
  Family fam = family_from_tag(strip(parts[0]));
  int n = parse_int(parts[1], "group order parameter");
  std::optional<poly::Poly> modulus;
  if (parts.size() == 3) {
    if (fam != Family::AdditiveField)
      throw UsageError("only addfield groups take a modulus");
    modulus = parse_poly(parts[2]);
  }
  return build_group(fam, n, std::move(modulus));
}

// ---------------------------------------------------------------------------
// element parsing, per family

/// Permutation in disjoint-cycle notation with 1-based letters: "e",
/// "(1,2)", "(1,2)(3,4)".
inline Elem parse_perm(const std::string& s, int n) {
  std::string t = strip(s);
  Elem e{};
  for (int i = 0; i < n; ++i) e[i] = static_cast<int16_t>(i);
  if (t == "e" || t == "()") return e;
  std::vector<bool> used(n, false);
  std::size_t pos = 0;
  while (pos < t.size()) {
    if (t[pos] != '(') throw UsageError("expected '(' in permutation '" + s + "'");
    std::size_t close = t.find(')', pos);
    if (close == std::string::npos) throw UsageError("unclosed cycle in '" + s + "'");
    std::vector<int> cycle;
    for (const std::string& part : split_top(t.substr(pos + 1, close - pos - 1), ',')) {
      int v = parse_int(part, "cycle letter");
      if (v < 1 || v > n) throw UsageError("letter " + std::to_string(v) + " out of range");
      if (used[v - 1]) throw UsageError("letter " + std::to_string(v) + " repeats in '" + s + "'");
      used[v - 1] = true;
      cycle.push_back(v - 1);
    }
    if (cycle.size() < 2) throw UsageError("cycles need at least two letters in '" + s + "'");
    for (std::size_t i = 0; i < cycle.size(); ++i)
      e[cycle[i]] = static_cast<int16_t>(cycle[(i + 1) % cycle.size()]);
    pos = close + 1;
  }
  return e;
}

/// "[[a,b],[c,d]]" with integer entries reduced into the base field.
inline Elem parse_matrix(const std::string& s, const FiniteField& f) {
  std::string t;
  for (char c : strip(s))
    if (c != ' ') t += c;
  if (t.size() < 9 || t.front() != '[' || t.back() != ']')
    throw UsageError("matrix must look like [[a,b],[c,d]], got '" + s + "'");
  std::vector<std::string> rows = split_top(t.substr(1, t.size() - 2), ',');
  if (rows.size() != 2) throw UsageError("matrix needs two rows, got '" + s + "'");
  Elem e{};
  int slot = 0;
  for (const std::string& row : rows) {
    std::string r = strip(row);
    if (r.size() < 5 || r.front() != '[' || r.back() != ']')
      throw UsageError("bad matrix row '" + row + "'");
    std::vector<std::string> cells = split_top(r.substr(1, r.size() - 2), ',');
    if (cells.size() != 2) throw UsageError("matrix rows need two entries");
    for (const std::string& cell : cells)
      e[slot++] = static_cast<int16_t>(f.from_int(parse_long(cell, "matrix entry")));
  }
  return e;
}

inline Elem parse_element(const GroupPtr& g, const std::string& s) {
  std::string t = strip(s);
  Elem e{};
  switch (g->family()) {
    case Family::Cyclic: {
      long v = parse_long(t, "cyclic element");
      long n = g->n();
      e[0] = static_cast<int16_t>(((v % n) + n) % n);
      break;
    }
    case Family::ProductCyclic: {
      if (t.size() < 5 || t.front() != '(' || t.back() != ')')
        throw UsageError("z2 elements look like (a,b), got '" + s + "'");
      std::vector<std::string> parts = split_top(t.substr(1, t.size() - 2), ',');
      if (parts.size() != 2) throw UsageError("z2 elements have two coordinates");
      long n = g->n();
      for (int i = 0; i < 2; ++i) {
        long v = parse_long(parts[i], "coordinate");
        e[i] = static_cast<int16_t>(((v % n) + n) % n);
      }
      break;
    }
    case Family::Symmetric:
    case Family::Alternating:
      e = parse_perm(t, g->n());
      break;
    case Family::Dihedral: {
      std::string r = t;
      int rot = 0, flip = 0;
      if (r == "e") r = "";
      if (!r.empty() && r.back() == 's') {
        flip = 1;
        r.pop_back();
      }
      if (!r.empty()) {
        if (r[0] != 'r') throw UsageError("dihedral elements look like e, r2, s, r2s");
        rot = r.size() > 1 ? parse_int(r.substr(1), "rotation power") : 1;
      }
      if (rot < 0 || rot >= g->n()) throw UsageError("rotation power out of range");
      e[0] = static_cast<int16_t>(rot);
      e[1] = static_cast<int16_t>(flip);
      break;
    }
    case Family::AdditiveField: {
      const FiniteField& f = g->field();
      if (t.find('t') == std::string::npos) {
        e[0] = static_cast<int16_t>(f.from_int(parse_long(t, "field element")));
      } else {
        poly::Poly p = parse_poly(t);
        if (static_cast<int>(p.size()) > f.k())
          throw UsageError("element degree exceeds the field degree");
        std::uint32_t idx = 0, scale = 1;
        for (int i = 0; i < f.k(); ++i) {
          int c = i < static_cast<int>(p.size()) ? p[i] : 0;
          idx += f.from_int(c) * scale;
          scale *= f.p();
        }
        e[0] = static_cast<int16_t>(idx);
      }
      break;
    }
    case Family::SL2:
    case Family::GL2:
    case Family::PSL2:
    case Family::PGL2:
      e = g->canonicalize(parse_matrix(t, g->field()));
      break;
  }
  g->index_of(e);  // membership check; throws on bad input
  return e;
}

// ---------------------------------------------------------------------------
// connection multisets and twist maps from strings

/// "1;7" | "class:(1,2,3)" | "classes:(1,2);(1,2,3)" | "squares" |
/// "transpositions".  Plain lists keep multiplicities.
inline ConnectionMultiset parse_connection(const GroupPtr& g, const std::string& s) {
  std::string t = strip(s);
  if (t == "squares") {
    if (g->family() != Family::AdditiveField)
      throw UsageError("'squares' needs an additive field group");
    const FiniteField& f = g->field();
    std::vector<Elem> elems;
    for (std::uint32_t a = 1; a < f.q(); ++a)
      if (f.is_square(a)) {
        Elem e{};
        e[0] = static_cast<int16_t>(a);
        elems.push_back(e);
      }
    return ConnectionMultiset::from_elems(g, elems);
  }
  if (t == "transpositions") {
    if (g->family() != Family::Symmetric)
      throw UsageError("'transpositions' needs a symmetric group");
    if (g->n() < 2) throw UsageError("no transpositions below two letters");
    return class_connection(g, parse_perm("(1,2)", g->n()));
  }
  if (t.rfind("class:", 0) == 0) return class_connection(g, parse_element(g, t.substr(6)));
  if (t.rfind("classes:", 0) == 0) {
    std::set<Elem> acc;
    for (const std::string& part : split_top(t.substr(8), ';'))
      for (const Elem& e : conjugacy_class(g, parse_element(g, part))) acc.insert(e);
    return ConnectionMultiset::from_elems(g, std::vector<Elem>(acc.begin(), acc.end()));
  }
  std::vector<Elem> elems;
  for (const std::string& part : split_top(t, ';')) elems.push_back(parse_element(g, part));
  return ConnectionMultiset::from_elems(g, elems);
}

/// "id" | "neg" | "conj:<elem>" | "conjtrans:(p,q)" | "conjmat:[[a,b],[c,d]]"
/// | "frobenius".  conjtrans conjugates by a transposition that need not lie
/// in the group itself (alternating groups).
inline GroupMap parse_sigma(const GroupPtr& g, const std::string& s) {
  std::string t = strip(s);
  if (t == "id") return identity_map(g);
  if (t == "neg" || t == "inv") return inversion_map(g);
  if (t == "frobenius") return frobenius_automorphism(g);
  if (t.rfind("conj:", 0) == 0) return inner_automorphism(g, parse_element(g, t.substr(5)));
  if (t.rfind("conjtrans:", 0) == 0) {
    Elem e = parse_perm(t.substr(10), g->n());
    std::vector<int> moved;
    for (int i = 0; i < g->n(); ++i)
      if (e[i] != i) moved.push_back(i);
    if (moved.size() != 2) throw UsageError("conjtrans takes a single transposition");
    return transposition_conjugation(g, moved[0], moved[1]);
  }
  if (t.rfind("conjmat:", 0) == 0)
    return matrix_conjugation_automorphism(g, parse_matrix(t.substr(8), g->field()));
  throw UsageError("unknown twist '" + t + "'");
}

// ---------------------------------------------------------------------------
// family strings -> graphs

struct BuiltGraph {
  VariantGraph graph;
  GroupPtr group;
  std::optional<ConnectionMultiset> set;
  std::optional<GroupMap> sigma;
};

/// One deterministic graph per family string.  Generic builds:
///   "cayley:group=cyclic:8,set=1;7"
///   "twisted:group=sym:4,set=transpositions,sigma=conj:(1,2)"
/// Named builds:
///   "lps:p=13,q=5,sigma=1"        (sigma absent: plain Cayley graph)
///   "paley:q=13,variant=sum"
///   "sl2class:q=7,twist=1"        (twist=0: sum graph; twist>0 defaults to
///                                  the twisted graph; variant= overrides)
///   "gg:n=10,theta=swap"
///   "perm:k=2,n=8"
inline BuiltGraph build_from_spec(const std::string& family) {
  std::string t = strip(family);
  std::size_t colon = t.find(':');
  if (colon == std::string::npos) throw UsageError("family string needs a kind prefix");
  std::string kind = t.substr(0, colon);
  std::string rest = t.substr(colon + 1);
  BuiltGraph b;

  auto kv = [&rest]() {
    std::map<std::string, std::string> m;
    for (auto& [k, v] : parse_kv(rest)) {
      if (m.count(k)) throw UsageError("duplicate key '" + k + "'");
      m[k] = v;
    }
    return m;
  };
  auto need = [&](std::map<std::string, std::string>& m, const std::string& k) {
    auto it = m.find(k);
    if (it == m.end()) throw UsageError("family string needs " + k + "=");
    return it->second;
  };

  if (kind == "cayley" || kind == "sum" || kind == "twisted" || kind == "twistedsum") {
    auto m = kv();
    Variant v = kind == "cayley"    ? Variant::Cayley
                : kind == "sum"     ? Variant::CayleySum
                : kind == "twisted" ? Variant::TwistedCayley
                                    : Variant::TwistedCayleySum;
    b.group = parse_group(need(m, "group"));
    b.set = parse_connection(b.group, need(m, "set"));
    bool twisted = v == Variant::TwistedCayley || v == Variant::TwistedCayleySum;
    if (twisted) b.sigma = parse_sigma(b.group, need(m, "sigma"));
    if (!twisted && m.count("sigma")) throw UsageError("untwisted variants take no sigma");
    b.graph = build_variant(b.group, *b.set, v, b.sigma ? &*b.sigma : nullptr);
  } else if (kind == "lps") {
    auto m = kv();
    LpsData d = lps_build(parse_int(need(m, "p"), "p"), parse_int(need(m, "q"), "q"));
    b.group = d.group;
    b.set = d.s;
    if (m.count("sigma")) {
      b.sigma = lps_sigma(d, parse_int(m["sigma"], "sigma choice"));
      b.graph = build_variant(b.group, *b.set, Variant::TwistedCayley, &*b.sigma);
    } else {
      b.graph = build_variant(b.group, *b.set, Variant::Cayley);
    }
  } else if (kind == "paley") {
    auto m = kv();
    std::optional<poly::Poly> modulus;
    if (m.count("modulus")) modulus = parse_poly(m["modulus"]);
    b.graph = paley(parse_int(need(m, "q"), "q"), paley_variant_from_tag(need(m, "variant")),
                    std::move(modulus));
    b.group = b.graph.group;
  } else if (kind == "sl2class") {
    auto m = kv();
    int q = parse_int(need(m, "q"), "q");
    int twist = m.count("twist") ? parse_int(m["twist"], "twist") : 0;
    if (twist < 0 || twist > 2) throw UsageError("sl2 twist must be 0, 1 or 2");
    b.group = build_group(Family::SL2, q);
    b.set = sl2_class_set(b.group);
    std::string vtag = m.count("variant") ? m["variant"] : (twist == 0 ? "sum" : "twisted");
    Variant v = vtag == "cayley"       ? Variant::Cayley
                : vtag == "sum"        ? Variant::CayleySum
                : vtag == "twisted"    ? Variant::TwistedCayley
                : vtag == "twistedsum" ? Variant::TwistedCayleySum
                                       : throw UsageError("unknown variant '" + vtag + "'");
    bool twisted = v == Variant::TwistedCayley || v == Variant::TwistedCayleySum;
    if (twisted != (twist > 0))
      throw UsageError("twist index and variant disagree in '" + family + "'");
    if (twist > 0) b.sigma = sl2_sigma(b.group, twist);
    b.graph = build_variant(b.group, *b.set, v, b.sigma ? &*b.sigma : nullptr);
  } else if (kind == "gg") {
    auto m = kv();
    int n = parse_int(need(m, "n"), "n");
    GgTheta theta = m.count("theta") ? gg_theta_from_tag(m["theta"]) : GgTheta::None;
    b.graph = build_gabber_galil(n, theta);
    b.group = b.graph.group;
  } else if (kind == "perm") {
    auto m = kv();
    PermutationApparatus a =
        perm_apparatus(parse_int(need(m, "k"), "k"), parse_int(need(m, "n"), "n"));
    b.group = a.group;
    b.set = a.s;
    b.graph = build_variant(b.group, *b.set, Variant::Cayley);
  } else {
    throw UsageError("unknown family kind '" + kind + "'");
  }
  b.graph.family = t;
  return b;
}

// ---------------------------------------------------------------------------
// graph JSON (schema vcg-1)

inline Variant variant_from_tag(const std::string& tag) {
  for (Variant v : {Variant::Cayley, Variant::CayleySum, Variant::TwistedCayley,
                    Variant::TwistedCayleySum, Variant::Schreier})
    if (tag == variant_tag(v)) return v;
  throw UsageError("unknown variant tag '" + tag + "'");
}

inline Json graph_to_json(const VariantGraph& g) {
  Json entries = Json::array();
  for (std::uint32_t x = 0; x < g.n; ++x)
    for (const auto& [y, m] : g.rows[x]) entries.push_back({x, y, m});
  Json j;
  j["schema"] = "vcg-1";
  j["family"] = g.family;
  j["variant"] = variant_tag(g.variant);
  j["sigma"] = g.sigma_desc;
  j["n_vertices"] = g.n;
  j["degree"] = g.degree;
  j["undirected"] = g.undirected;
  j["vertex_labels"] = g.labels;
  j["adjacency"] = Json{{"format", "coo"}, {"entries", std::move(entries)}};
  return j;
}

inline VariantGraph graph_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("schema") || j["schema"] != "vcg-1")
    throw UsageError("not a vcg-1 graph file");
  for (const char* key : {"family", "variant", "sigma", "n_vertices", "degree", "undirected",
                          "vertex_labels", "adjacency"})
    if (!j.contains(key)) throw UsageError(std::string("graph file lacks '") + key + "'");
  VariantGraph g;
  g.variant = variant_from_tag(j["variant"].get<std::string>());
  g.family = j["family"].get<std::string>();
  g.sigma_desc = j["sigma"].get<std::string>();
  g.n = j["n_vertices"].get<std::uint32_t>();
  g.degree = j["degree"].get<int>();
  g.undirected = j["undirected"].get<bool>();
  g.labels = j["vertex_labels"].get<std::vector<std::string>>();
  if (g.labels.size() != g.n) throw UsageError("vertex label count does not match n_vertices");
  const Json& adj = j["adjacency"];
  if (!adj.is_object() || adj.value("format", "") != "coo" || !adj.contains("entries"))
    throw UsageError("adjacency must be {format:'coo', entries:[...]}");
  g.rows.resize(g.n);
  for (const Json& ent : adj["entries"]) {
    if (!ent.is_array() || ent.size() != 3) throw UsageError("adjacency entries are triples");
    std::int64_t r = ent[0].get<std::int64_t>(), c = ent[1].get<std::int64_t>(),
                 m = ent[2].get<std::int64_t>();
    if (r < 0 || r >= g.n || c < 0 || c >= g.n || m < 1)
      throw UsageError("adjacency entry out of range");
    g.add_edge(static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c),
               static_cast<std::int32_t>(m));
  }
  g.sort_rows();
  g.check_row_sums();
  if (g.undirected != g.matrix_symmetric())
    throw UsageError("stored undirected flag disagrees with the matrix");
  return g;
}

inline void write_graph_json(const VariantGraph& g, const std::string& path) {
  write_file(path, graph_to_json(g).dump(2) + "\n");
}

inline VariantGraph read_graph_json(const std::string& path) {
  return graph_from_json(parse_json(read_file(path), "graph file '" + path + "'"));
}

// ---------------------------------------------------------------------------
// spectrum CSV

inline std::string spectrum_csv(const std::vector<double>& values) {
  std::string out = "index,eigenvalue\n";
  for (std::size_t i = 0; i < values.size(); ++i)
    out += std::to_string(i) + "," + format_g17(values[i]) + "\n";
  return out;
}

inline void write_spectrum_csv(const std::vector<double>& values, const std::string& path) {
  write_file(path, spectrum_csv(values));
}

inline std::vector<double> read_spectrum_csv(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line) || strip(line) != "index,eigenvalue")
    throw UsageError("'" + path + "' is not a spectrum CSV");
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (strip(line).empty()) continue;
    std::size_t comma = line.find(',');
    if (comma == std::string::npos) throw UsageError("malformed CSV row '" + line + "'");
    const std::string cell = strip(line.substr(comma + 1));
    char* end = nullptr;
    double v = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size())
      throw UsageError("malformed eigenvalue '" + cell + "'");
    values.push_back(v);
  }
  return values;
}

// ---------------------------------------------------------------------------
// certificate and analysis report JSON

inline Json ramanujan_to_json(const RamanujanCertificate& c, const Json& inputs) {
  Json j;
  j["kind"] = "ramanujan";
  j["inputs"] = inputs;
  j["pass"] = c.pass;
  j["numbers"] = {{"n", c.n},
                  {"degree", c.degree},
                  {"bipartite", c.bipartite},
                  {"trivial_removed", c.trivial_removed},
                  {"lambda_star", c.lambda_star},
                  {"bound", c.bound},
                  {"margin", c.margin}};
  return j;
}

inline Json pairing_to_json(const PairingReport& r, const Json& inputs) {
  Json j;
  j["kind"] = "pairing";
  j["inputs"] = inputs;
  j["pass"] = r.pass();
  j["numbers"] = {{"n", r.n},
                  {"degree", r.degree},
                  {"variant_i", r.variant_i},
                  {"variant_j", r.variant_j},
                  {"fixed_points", r.fixed_points},
                  {"dim_plus", r.dim_plus},
                  {"dim_minus", r.dim_minus}};
  j["checks"] = {{"undirected_i", r.undirected_i},
                 {"undirected_j", r.undirected_j},
                 {"hypotheses_hold", r.hypotheses_hold},
                 {"exact_transport", r.exact_transport},
                 {"dims_formula", r.dims_formula},
                 {"plus_match", r.plus_match},
                 {"minus_match", r.minus_match},
                 {"split_covers_i", r.split_covers_i},
                 {"split_covers_j", r.split_covers_j}};
  j["pairing_map"] = r.pairing_map;
  if (!r.witness.empty()) j["witness"] = r.witness;
  return j;
}

inline Json h_isospectral_to_json(const HIsospectralReport& r, const Json& inputs) {
  Json entries = Json::array();
  for (const HIsospectralEntry& e : r.entries)
    entries.push_back({{"h", mask_name(e.h_mask, r.k)},
                       {"chi", mask_name(e.char_mask, r.k)},
                       {"sign", e.sign},
                       {"match", e.match}});
  Json j;
  j["kind"] = "h-isospectral";
  j["inputs"] = inputs;
  j["pass"] = r.pass;
  j["numbers"] = {{"n", r.n}, {"k", r.k}};
  j["entries"] = std::move(entries);
  return j;
}

inline Json dichotomy_to_json(const DichotomyReport& r, const Json& inputs) {
  Json j;
  j["kind"] = "dichotomy";
  j["inputs"] = inputs;
  j["pass"] = r.pass;
  j["numbers"] = {{"n", r.n},
                  {"dims", r.dims},
                  {"required_symmetric", r.required},
                  {"max_symmetric", r.max_symmetric}};
  j["checks"] = {{"horn_symmetric", r.horn_symmetric}, {"horn_twist", r.horn_twist}};
  if (!r.twist_witness.empty()) j["witness"] = r.twist_witness;
  return j;
}

inline Json analysis_json(const std::string& kind, const Json& inputs, const Json& numbers,
                          const Json& witnesses, bool pass) {
  Json j;
  j["kind"] = kind;
  j["inputs"] = inputs;
  j["numbers"] = numbers;
  j["witnesses"] = witnesses;
  j["pass"] = pass;
  return j;
}

// ---------------------------------------------------------------------------
// run configuration

struct RunConfig {
  std::uint32_t dense_cap = 6000;
  double tol = 1e-6;
  std::string out_dir = ".";
  int workers = 1;
  bool deterministic = false;

  void validate() const {
    if (dense_cap < 1) throw UsageError("dense cap must be at least 1");
    if (!(tol > 0.0) || tol > 1e-2) throw UsageError("tolerance must lie in (0, 1e-2]");
    if (workers < 1) throw UsageError("worker count must be at least 1");
  }
  /// Deterministic mode pins the worker count so logs are byte-identical.
  int effective_workers() const { return deterministic ? 1 : workers; }
};

inline RunConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  RunConfig c;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (k == "dense_cap")
      c.dense_cap = it.value().get<std::uint32_t>();
    else if (k == "tol")
      c.tol = it.value().get<double>();
    else if (k == "out_dir")
      c.out_dir = it.value().get<std::string>();
    else if (k == "workers")
      c.workers = it.value().get<int>();
    else if (k == "deterministic")
      c.deterministic = it.value().get<bool>();
    else
      throw UsageError("unknown config key '" + k + "'");
  }
  c.validate();
  return c;
}

inline Json config_to_json(const RunConfig& c) {
  return Json{{"dense_cap", c.dense_cap},
              {"tol", c.tol},
              {"out_dir", c.out_dir},
              {"workers", c.workers},
              {"deterministic", c.deterministic}};
}

inline RunConfig load_config(const std::string& path) {
  return config_from_json(parse_json(read_file(path), "config file '" + path + "'"));
}

// ---------------------------------------------------------------------------
// sweep manifests

struct SweepJob {
  std::string command;           // build | spectrum | certify | analyze
  Json args;                     // remaining keys, passed to the command
  std::optional<bool> expected;  // expected pass/fail, when stated
};

inline std::vector<SweepJob> parse_manifest(const Json& j) {
  if (!j.is_object() || !j.contains("jobs") || !j["jobs"].is_array())
    throw UsageError("manifest must be {jobs: [...]}");
  std::vector<SweepJob> jobs;
  for (const Json& item : j["jobs"]) {
    if (!item.is_object() || !item.contains("command"))
      throw UsageError("each job needs a command");
    SweepJob job;
    job.command = item["command"].get<std::string>();
    for (auto it = item.begin(); it != item.end(); ++it) {
      if (it.key() == "command") continue;
      if (it.key() == "expected") {
        if (!it.value().is_boolean()) throw UsageError("'expected' must be a boolean");
        job.expected = it.value().get<bool>();
        continue;
      }
      job.args[it.key()] = it.value();
    }
    jobs.push_back(std::move(job));
  }
  return jobs;
}

}  // namespace cgl
