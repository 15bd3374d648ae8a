#include "sfg/json_io.h"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sfg {

namespace {

[[noreturn]] void bad(const std::string& what) { throw InputError(what); }

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

long as_long(const json& v, const std::string& what) {
  if (!v.is_number_integer()) bad(what + " must be an integer");
  return v.get<long>();
}

double as_double(const json& v, const std::string& what) {
  if (!v.is_number()) bad(what + " must be a number");
  return v.get<double>();
}

IntMat int_matrix(const json& v, const std::string& what) {
  if (!v.is_array()) bad(what + " must be an array of rows");
  IntMat m;
  for (auto& row : v) {
    if (!row.is_array()) bad(what + " must be an array of rows");
    std::vector<long> r;
    for (auto& x : row) r.push_back(as_long(x, what));
    m.push_back(r);
  }
  return m;
}

SFRat sfrat_of(const json& v, const std::string& what) {
  try {
    if (v.is_number_integer()) return SFRat(v.get<long>());
    if (v.is_string()) return SFRat::parse(v.get<std::string>());
  } catch (const std::exception& e) {
    bad(what + ": " + e.what());
  }
  bad(what + " must be a string expression");
}

std::vector<SFRat> sfrat_list(const json& v, const std::string& what) {
  if (!v.is_array()) bad(what + " must be an array");
  std::vector<SFRat> out;
  for (auto& x : v) out.push_back(sfrat_of(x, what));
  return out;
}

json strings(const std::vector<SFRat>& v) {
  json a = json::array();
  for (auto& x : v) a.push_back(x.str());
  return a;
}

std::array<double, 3> triple(const json& v, const std::string& what) {
  if (!v.is_array() || v.size() != 3) bad(what + " must have three entries");
  return {as_double(v[0], what), as_double(v[1], what), as_double(v[2], what)};
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    bad("malformed JSON in " + path + ": " + e.what());
  }
}

SeedFile seed_from_json(const json& j) {
  SeedFile s;
  IntMat eps = int_matrix(need(j, "epsilon"), "epsilon");
  long nf = j.contains("n_frozen") ? as_long(j["n_frozen"], "n_frozen") : 0;
  std::vector<long> d;
  if (j.contains("d")) {
    if (!j["d"].is_array()) bad("d must be an array");
    for (auto& x : j["d"]) d.push_back(as_long(x, "d"));
  }
  try {
    s.ex = make_exchange(eps, d, static_cast<int>(nf));
    if (j.contains("n_mut") && as_long(j["n_mut"], "n_mut") != s.ex.n_mut) bad("n_mut disagrees with epsilon and n_frozen");
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    bad(std::string("exchange data: ") + e.what());
  }
  if (j.contains("x")) {
    s.x = sfrat_list(j["x"], "x");
    if (s.x->size() != s.ex.n()) bad("x needs one entry per index");
  }
  if (j.contains("a")) {
    s.a = sfrat_list(j["a"], "a");
    if (s.a->size() != s.ex.n()) bad("a needs one entry per index");
  }
  if (j.contains("W")) {
    s.W = int_matrix(j["W"], "W");
    s.has_W = true;
    for (auto& row : s.W)
      if (row.size() != s.ex.n()) bad("W rows need one entry per index");
  }
  if (j.contains("mode")) {
    if (!j["mode"].is_string()) bad("mode must be a string");
    try {
      s.mode = parse_super_mode(j["mode"].get<std::string>());
    } catch (const std::exception& e) {
      bad(e.what());
    }
    s.has_mode = true;
  }
  if (j.contains("quantum")) {
    if (!j["quantum"].is_boolean()) bad("quantum must be true or false");
    s.quantum = j["quantum"].get<bool>();
  }
  return s;
}

json to_json(const SeedFile& s) {
  json j;
  j["n_mut"] = s.ex.n_mut;
  j["n_frozen"] = s.ex.n_frozen;
  j["epsilon"] = s.ex.eps;
  j["d"] = s.ex.d;
  if (s.x) j["x"] = strings(*s.x);
  if (s.a) j["a"] = strings(*s.a);
  if (s.has_W) j["W"] = s.W;
  if (s.has_mode) j["mode"] = to_string(s.mode);
  if (s.quantum) j["quantum"] = true;
  return j;
}

BoundaryMatrix boundary_from_json(const json& j) {
  if (j.contains("matrix")) {
    const json& m = j["matrix"];
    if (!m.is_array() || m.empty()) bad("matrix must be a nonempty array of rows");
    Mat<SFRat> rows;
    for (auto& row : m) rows.push_back(sfrat_list(row, "matrix entry"));
    for (auto& r : rows)
      if (r.size() != rows[0].size()) bad("matrix rows differ in length");
    return BoundaryMatrix::from_rows(rows);
  }
  const json& n = need(j, "normalized");
  if (!n.is_array() || n.size() != 2) bad("normalized must be [r, f]");
  long r = as_long(n[0], "r"), f = as_long(n[1], "f");
  if (r < 1 || f < r) bad("normalized needs 1 <= r <= f");
  std::vector<ElementaryMove> moves;
  if (j.contains("moves")) {
    if (!j["moves"].is_array()) bad("moves must be an array");
    for (auto& mv : j["moves"]) {
      ElementaryMove e;
      e.a = static_cast<int>(as_long(need(mv, "a"), "a")) - 1;
      e.b = static_cast<int>(as_long(need(mv, "b"), "b")) - 1;
      e.gamma = sfrat_of(need(mv, "gamma"), "gamma");
      moves.push_back(e);
    }
  }
  try {
    return transport(BoundaryMatrix::normalized(static_cast<size_t>(r), static_cast<size_t>(f)), moves);
  } catch (const std::exception& e) {
    bad(std::string("moves: ") + e.what());
  }
}

json boundary_to_json(const BoundaryMatrix& c) {
  json rows = json::array();
  for (auto& r : c.entries) rows.push_back(strings(r));
  json j;
  j["matrix"] = rows;
  return j;
}

LetterPoly letterpoly_from_json(const json& terms, size_t nvars) {
  if (!terms.is_array()) bad("a Laurent relation is an array of terms");
  LetterPoly p;
  for (auto& t : terms) {
    const json& e = need(t, "exp");
    if (!e.is_array() || e.size() != nvars) bad("exp needs one entry per letter");
    std::vector<int> ex;
    for (auto& v : e) ex.push_back(static_cast<int>(as_long(v, "exp")));
    p.add(ex, sfrat_of(need(t, "coeff"), "coeff"));
  }
  return p;
}

VerticalSystem vertical_from_json(const json& j) {
  VerticalSystem s;
  const json& L = need(j, "letters");
  if (!L.is_array() || L.empty()) bad("letters must be a nonempty array");
  for (auto& x : L) {
    if (!x.is_string()) bad("letters are names");
    s.letters.push_back(x.get<std::string>());
  }
  if (j.contains("binomials")) {
    s.binomials = int_matrix(j["binomials"], "binomials");
    for (auto& row : s.binomials)
      if (row.size() != s.letters.size()) bad("binomial rows need one entry per letter");
    s.units = sfrat_list(need(j, "units"), "units");
    if (s.units.size() != s.binomials.size()) bad("one unit per binomial row");
  }
  const json& lr = need(j, "laurents");
  if (!lr.is_array()) bad("laurents must be an array");
  for (auto& terms : lr) s.laurents.push_back(letterpoly_from_json(terms, s.letters.size()));
  return s;
}

json to_json(const LetterPoly& p, const std::vector<std::string>&) {
  json a = json::array();
  for (auto& [e, c] : p.terms) a.push_back(json{{"exp", e}, {"coeff", c.str()}});
  return a;
}

json to_json(const VerticalSystem& s) {
  json j;
  j["letters"] = s.letters;
  if (!s.binomials.empty()) {
    j["binomials"] = s.binomials;
    j["units"] = strings(s.units);
  }
  json l = json::array();
  for (auto& p : s.laurents) l.push_back(to_json(p, s.letters));
  j["laurents"] = l;
  return j;
}

std::vector<std::pair<long, long>> support_from_json(const json& j) {
  const json& s = need(j, "support");
  if (!s.is_array() || s.empty()) bad("support must be a nonempty array of points");
  std::vector<std::pair<long, long>> out;
  for (auto& p : s) {
    if (!p.is_array() || p.size() != 2) bad("support points are [i, j]");
    out.emplace_back(as_long(p[0], "support"), as_long(p[1], "support"));
  }
  return out;
}

FlagChart chart_from_json(const json& j) {
  try {
    if (j.contains("f_o")) {
      FlagChart c;
      c.f_o = triple(j["f_o"], "f_o");
      c.f_e = triple(need(j, "f_e"), "f_e");
      for (int i = 0; i < 3; ++i)
        if (!(c.f_o[i] > 0) || !(c.f_e[i] > 0)) bad("chart ratios must be positive");
      return c;
    }
    return chart_from_uy(triple(need(j, "u"), "u"), triple(need(j, "y"), "y"));
  } catch (const std::domain_error& e) {
    bad(e.what());
  }
}

json to_json(const FlagChart& c) { return json{{"f_o", c.f_o}, {"f_e", c.f_e}}; }

json cplx_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

cplx parse_cplx(const std::string& s0) {
  std::string s;
  for (char ch : s0)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) bad("empty complex number");
  auto num = [&](const std::string& t) {
    size_t pos = 0;
    double v = 0;
    try {
      v = std::stod(t, &pos);
    } catch (const std::exception&) {
      bad("cannot parse number \"" + s0 + "\"");
    }
    if (pos != t.size()) bad("cannot parse number \"" + s0 + "\"");
    return v;
  };
  if (s.back() != 'i') return num(s);
  std::string body = s.substr(0, s.size() - 1);
  // split at the last sign that is not part of an exponent
  size_t cut = std::string::npos;
  for (size_t k = body.size(); k-- > 1;)
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      cut = k;
      break;
    }
  auto imag = [&](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return num(t);
  };
  if (cut == std::string::npos) return cplx(0, imag(body));
  return cplx(num(body.substr(0, cut)), imag(body.substr(cut)));
}

std::string digest(const json& j) {
  std::string s = j.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace sfg
