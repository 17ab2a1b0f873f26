#include "hse/io.hpp"

#include <algorithm>
#include <cctype>

#include "json.hpp"

namespace hse {

using Json = nlohmann::ordered_json;

InstanceError::InstanceError(std::string code, const std::string& message, int line, int column)
    : std::runtime_error(code + (line > 0 ? " at " + std::to_string(line) + ":" + std::to_string(column) : "") +
                         ": " + message),
      code_(std::move(code)),
      line_(line),
      column_(column) {}

std::vector<CharacterSpaces> InstanceFile::spaces() const {
  return strict ? character_spaces(C) : character_spaces(three);
}

std::vector<int> InstanceFile::subgroup_indices() const {
  std::vector<int> out;
  if (subgroup)
    for (const auto& r : *subgroup) out.push_back(G.index(r));
  return out;
}

namespace {

[[noreturn]] void fail(const std::string& code, const std::string& msg) { throw InstanceError(code, msg); }

const Json& field(const Json& obj, const char* key, const char* where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail("E_FIELD", std::string(where) + ": missing \"" + key + "\"");
  return *it;
}

mpz_class parse_integer(const Json& v, const std::string& where) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return mpz_class(std::to_string(v.get<unsigned long long>()));
    return mpz_class(std::to_string(v.get<long long>()));
  }
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const std::size_t start = !s.empty() && (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (s.size() > start && std::all_of(s.begin() + start, s.end(), [](unsigned char c) { return std::isdigit(c); }))
      return mpz_class(s[0] == '+' ? s.substr(1) : s);
  }
  fail("E_NUMBER", where + ": expected an integer, got " + v.dump());
}

mpq_class parse_rational(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return mpq_class(parse_integer(v, where));
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const auto slash = s.find('/');
    mpz_class num = parse_integer(Json(s.substr(0, slash)), where);
    mpz_class den = 1;
    if (slash != std::string::npos) den = parse_integer(Json(s.substr(slash + 1)), where);
    if (den == 0) fail("E_NUMBER", where + ": zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }
  fail("E_NUMBER", where + ": expected a rational, got " + v.dump());
}

Json integer_json(const mpz_class& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(z.get_str());
}

std::vector<int> parse_residues(const std::string& key, std::size_t rank, const std::string& where) {
  std::string s;
  for (char c : key)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    fail("E_ELEMENT", where + ": bad group element key \"" + key + "\"");
  std::vector<int> r;
  const std::string body = s.substr(1, s.size() - 2);
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t next = body.find(',', pos);
    if (next == std::string::npos) next = body.size();
    const std::string tok = body.substr(pos, next - pos);
    try {
      std::size_t used = 0;
      r.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      fail("E_ELEMENT", where + ": bad residue \"" + tok + "\" in \"" + key + "\"");
    }
    pos = next + 1;
    if (next + 1 == body.size()) fail("E_ELEMENT", where + ": trailing comma in \"" + key + "\"");
  }
  if (r.size() != rank)
    fail("E_ELEMENT", where + ": \"" + key + "\" needs " + std::to_string(rank) + " residues");
  return r;
}

ZG parse_element(const FiniteAbelianGroup& G, const Json& v, const std::string& where) {
  if (!v.is_object()) fail("E_ELEMENT", where + ": a group ring element is an object");
  ZG x(G);
  for (auto it = v.begin(); it != v.end(); ++it) {
    auto r = parse_residues(it.key(), G.rank(), where);
    x[G.index(r)] += parse_integer(it.value(), where);
  }
  return x;
}

Json element_json(const ZG& x) {
  const auto& G = x.group();
  Json o = Json::object();
  for (int g = 0; g < G.order(); ++g) {
    if (x[g] == 0) continue;
    std::string key = "[";
    auto r = G.element(g);
    for (std::size_t i = 0; i < r.size(); ++i) key += (i ? "," : "") + std::to_string(r[i]);
    o[key + "]"] = integer_json(x[g]);
  }
  return o;
}

// Rows of elements. `cols` fixes the width of an empty matrix.
ZGMatrix parse_matrix(const FiniteAbelianGroup& G, const Json& v, const std::string& where,
                      std::size_t cols_if_empty = 0) {
  if (!v.is_array()) fail("E_MATRIX_SHAPE", where + ": a matrix is a list of rows");
  if (v.empty()) return ZGMatrix(G, 0, cols_if_empty);
  std::size_t cols = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_array()) fail("E_MATRIX_SHAPE", where + ": row " + std::to_string(i) + " is not a list");
    if (i == 0) cols = v[i].size();
    if (v[i].size() != cols) fail("E_MATRIX_SHAPE", where + ": ragged rows");
  }
  ZGMatrix A(G, v.size(), cols);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      A(i, j) = parse_element(G, v[i][j], where + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
  return A;
}

Json matrix_json(const ZGMatrix& A) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < A.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < A.cols(); ++j) row.push_back(element_json(A(i, j)));
    rows.push_back(row);
  }
  return rows;
}

// A list of column vectors of length d, stored as a d x n matrix.
ZGMatrix parse_vectors(const FiniteAbelianGroup& G, const Json& v, std::size_t d, const std::string& where) {
  if (!v.is_array()) fail("E_X_RANGE", where + ": expected a list of vectors");
  ZGMatrix A(G, d, v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (!v[j].is_array() || v[j].size() != d)
      fail("E_X_RANGE", where + ": vector " + std::to_string(j) + " must have " + std::to_string(d) + " coordinates");
    for (std::size_t i = 0; i < d; ++i) A(i, j) = parse_element(G, v[j][i], where);
  }
  return A;
}

Json vectors_json(const ZGMatrix& A) {
  Json out = Json::array();
  for (std::size_t j = 0; j < A.cols(); ++j) {
    Json col = Json::array();
    for (std::size_t i = 0; i < A.rows(); ++i) col.push_back(element_json(A(i, j)));
    out.push_back(col);
  }
  return out;
}

std::string rational_string(const mpq_class& q) { return q.get_str(); }

Cyc parse_field_entry(const Json& v, int e, const std::string& where) {
  if (v.is_array()) {
    if (v.empty() || v.size() > static_cast<std::size_t>(e))
      fail("E_LAMBDA_FIELD", where + ": at most " + std::to_string(e) + " power-basis coefficients");
    std::vector<mpq_class> c(e, mpq_class(0));
    for (std::size_t i = 0; i < v.size(); ++i) c[i] = parse_rational(v[i], where);
    return Cyc::from_coeffs(e, c);
  }
  return Cyc(parse_rational(v, where));
}

Json field_entry_json(const Cyc& x, int e) {
  if (x.is_rational()) return Json(rational_string(x.rational()));
  Json out = Json::array();
  const Cyc y = x.promoted(e);
  for (const auto& q : y.coeffs()) out.push_back(rational_string(q));
  return out;
}

LambdaMap parse_lambda(const InstanceFile& f, const Json& v) {
  const auto& G = f.G;
  if (!v.is_object()) fail("E_LAMBDA_SHAPE", "lambda: expected an object");
  const Json& cj = field(v, "conductor", "lambda");
  if (!cj.is_number_integer()) fail("E_LAMBDA_FIELD", "lambda: conductor must be an integer");
  const long e = cj.get<long>();
  if (e < 1 || G.exponent() % e != 0)
    fail("E_LAMBDA_FIELD", "lambda: conductor must divide the exponent " + std::to_string(G.exponent()));
  const Json& blocks = field(v, "blocks", "lambda");
  if (!blocks.is_array() || blocks.size() != static_cast<std::size_t>(G.order()))
    fail("E_LAMBDA_SHAPE", "lambda: expected " + std::to_string(G.order()) + " blocks, one per character");
  const auto S = f.spaces();
  LambdaMap lam{G, {}};
  for (int chi = 0; chi < G.order(); ++chi) {
    const std::string where = "lambda block " + std::to_string(chi);
    const std::size_t r = S[chi].h1.size();
    const Json& b = blocks[chi];
    if (!b.is_array() || b.size() != r)
      fail("E_LAMBDA_SHAPE", where + ": expected " + std::to_string(r) + " x " + std::to_string(r));
    KMatrix M(r, r, Cyc(0));
    for (std::size_t i = 0; i < r; ++i) {
      if (!b[i].is_array() || b[i].size() != r)
        fail("E_LAMBDA_SHAPE", where + ": expected " + std::to_string(r) + " x " + std::to_string(r));
      for (std::size_t j = 0; j < r; ++j) M(i, j) = parse_field_entry(b[i][j], static_cast<int>(e), where);
    }
    lam.blocks.push_back(std::move(M));
  }
  if (!lam.galois_compatible()) fail("E_LAMBDA_FIELD", "lambda: blocks at conjugate characters are not conjugate");
  return lam;
}

void parse_complex(InstanceFile& f, const Json& v) {
  if (!v.is_object()) fail("E_COMPLEX", "complex: expected an object");
  const Json& shape = field(v, "shape", "complex");
  const std::string s = shape.is_string() ? shape.get<std::string>() : "";
  if (s == "strict") {
    f.strict = true;
    f.C.psi = parse_matrix(f.G, field(v, "psi", "complex"), "psi");
    if (f.C.psi.rows() != f.C.psi.cols()) fail("E_MATRIX_SHAPE", "psi must be square");
    return;
  }
  if (s != "three_term") fail("E_COMPLEX", "complex: shape must be \"strict\" or \"three_term\"");
  f.strict = false;
  ZGMatrix d1 = parse_matrix(f.G, field(v, "d1", "complex"), "d1");
  ZGMatrix d2 = parse_matrix(f.G, field(v, "d2", "complex"), "d2", d1.rows());
  if (d2.cols() != d1.rows()) fail("E_MATRIX_SHAPE", "d2 must have as many columns as d1 has rows");
  try {
    if (v.contains("d0")) {
      ZGMatrix d0 = parse_matrix(f.G, v["d0"], "d0");
      if (d0.rows() != d1.cols()) fail("E_MATRIX_SHAPE", "d0 must have as many rows as d1 has columns");
      f.three = ThreeTermComplex::with_degree_zero(d0, d1, d2);
    } else {
      f.three = ThreeTermComplex::make(d1, d2);
    }
    f.three.validate();
  } catch (const std::invalid_argument& ex) {
    fail("E_COMPLEX", ex.what());
  }
}

}  // namespace

InstanceFile parse_instance(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& ex) {
    // Byte offsets are 1-based and point just past the offending character.
    std::size_t pos = std::min<std::size_t>(ex.byte == 0 ? 0 : ex.byte - 1, text.size());
    int line = 1, column = 1;
    for (std::size_t i = 0; i < pos; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string msg = ex.what();
    const auto colon = msg.find(": ", msg.find("parse error"));
    throw InstanceError("E_SYNTAX", colon == std::string::npos ? msg : msg.substr(colon + 2), line, column);
  }
  if (!doc.is_object()) fail("E_SYNTAX", "top level must be an object");

  InstanceFile f;
  const Json& g = field(doc, "group", "instance");
  if (!g.is_array()) fail("E_GROUP", "group: expected a list of invariant factors");
  for (const auto& n : g) {
    if (!n.is_number_integer() || n.get<long>() < 2 || n.get<long>() > 1000)
      fail("E_GROUP", "group: invariant factors are integers >= 2");
    f.group.push_back(n.get<int>());
  }
  for (std::size_t i = 1; i < f.group.size(); ++i)
    if (f.group[i] % f.group[i - 1] != 0) fail("E_GROUP", "group: each factor must divide the next");
  f.G = FiniteAbelianGroup(f.group);

  parse_complex(f, field(doc, "complex", "instance"));
  if (doc.contains("lambda")) f.lambda = parse_lambda(f, doc["lambda"]);
  if (doc.contains("X")) f.X = parse_vectors(f.G, doc["X"], f.d(), "X");
  if (doc.contains("Xprime")) f.Xprime = parse_vectors(f.G, doc["Xprime"], f.d(), "Xprime");
  if (doc.contains("subgroup")) {
    const Json& s = doc["subgroup"];
    if (!s.is_array()) fail("E_SUBGROUP", "subgroup: expected a list of residue tuples");
    std::vector<std::vector<int>> gens;
    for (const auto& t : s) {
      if (!t.is_array() || t.size() != f.group.size())
        fail("E_SUBGROUP", "subgroup: each generator needs " + std::to_string(f.group.size()) + " residues");
      std::vector<int> r;
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (!t[i].is_number_integer() || t[i].get<long>() < 0 || t[i].get<long>() >= f.group[i])
          fail("E_SUBGROUP", "subgroup: residue out of range");
        r.push_back(t[i].get<int>());
      }
      gens.push_back(r);
    }
    f.subgroup = gens;
  }
  if (doc.contains("x_element")) f.x_element = parse_element(f.G, doc["x_element"], "x_element");
  if (doc.contains("metadata")) {
    const Json& m = doc["metadata"];
    if (!m.is_object()) fail("E_FIELD", "metadata: expected an object");
    if (m.contains("seed")) {
      mpz_class s = parse_integer(m["seed"], "metadata.seed");
      if (s < 0 || !s.fits_ulong_p()) fail("E_NUMBER", "metadata.seed out of range");
      f.seed = s.get_ui();
    }
    if (m.contains("description")) {
      if (!m["description"].is_string()) fail("E_FIELD", "metadata.description must be a string");
      f.description = m["description"].get<std::string>();
    }
  }
  return f;
}

std::string serialize_instance(const InstanceFile& f) {
  Json doc;
  doc["group"] = f.group;
  Json c;
  if (f.strict) {
    c["shape"] = "strict";
    c["psi"] = matrix_json(f.C.psi);
  } else {
    c["shape"] = "three_term";
    if (f.three.s0 > 0) c["d0"] = matrix_json(f.three.d0);
    c["d1"] = matrix_json(f.three.d1);
    c["d2"] = matrix_json(f.three.d2);
  }
  doc["complex"] = c;
  if (f.lambda) {
    const int e = f.G.exponent();
    Json blocks = Json::array();
    for (const auto& B : f.lambda->blocks) {
      Json rows = Json::array();
      for (std::size_t i = 0; i < B.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < B.cols(); ++j) row.push_back(field_entry_json(B(i, j), e));
        rows.push_back(row);
      }
      blocks.push_back(rows);
    }
    doc["lambda"] = {{"conductor", e}, {"blocks", blocks}};
  }
  if (f.X) doc["X"] = vectors_json(*f.X);
  if (f.Xprime) doc["Xprime"] = vectors_json(*f.Xprime);
  if (f.subgroup) doc["subgroup"] = *f.subgroup;
  if (f.x_element) doc["x_element"] = element_json(*f.x_element);
  if (f.seed || !f.description.empty()) {
    Json m = Json::object();
    if (f.seed) m["seed"] = *f.seed;
    if (!f.description.empty()) m["description"] = f.description;
    doc["metadata"] = m;
  }
  return doc.dump(1) + "\n";
}

}  // namespace hse
