#include "tiltlab/ahdetect.hpp"

#include <algorithm>
#include <cstdint>
#include <json.hpp>

#include "tiltlab/error.hpp"

namespace tiltlab {

using nlohmann::json;

namespace {

using Relation = std::vector<std::vector<bool>>;

void check_relation(const Relation& r, std::size_t n, const char* what) {
  if (r.size() != n) throw ValidationError(std::string(what) + ": expected " + std::to_string(n) + " rows");
  for (const auto& row : r)
    if (row.size() != n)
      throw ValidationError(std::string(what) + ": expected " + std::to_string(n) + " columns");
}

std::string row_string(const std::vector<bool>& row) {
  std::string s;
  for (bool b : row) s += b ? '1' : '0';
  return s;
}

Relation relation_from_json(const json& j, std::size_t n, const char* what) {
  if (!j.is_array()) throw ValidationError(std::string(what) + " must be an array of 0/1 strings");
  Relation r;
  for (const auto& row : j) {
    if (!row.is_string()) throw ValidationError(std::string(what) + " rows must be strings");
    std::vector<bool> bits;
    for (char c : row.get<std::string>()) {
      if (c != '0' && c != '1') throw ValidationError(std::string(what) + " rows may only contain 0 and 1");
      bits.push_back(c == '1');
    }
    r.push_back(std::move(bits));
  }
  check_relation(r, n, what);
  return r;
}

int small_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw ValidationError(std::string(what) + " must be an integer");
  return j.get<int>();
}

}  // namespace

HomQuiver::HomQuiver(std::vector<QuiverVertex> vertices, Relation hom_nonzero, Relation ext1_nonzero,
                     std::optional<int> bound)
    : vertices_(std::move(vertices)), hom_(std::move(hom_nonzero)), ext1_(std::move(ext1_nonzero)), bound_(bound) {
  const std::size_t n = vertices_.size();
  if (n == 0) throw ValidationError("hom-quiver has no vertices");
  check_relation(hom_, n, "hom_nonzero");
  check_relation(ext1_, n, "ext1_nonzero");
  std::set<std::string> names;
  bool any_r = false;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& v = vertices_[i];
    if (v.name.empty()) throw ValidationError("vertex " + std::to_string(i) + " has an empty name");
    if (!names.insert(v.name).second) throw ValidationError("duplicate vertex name " + v.name);
    if (v.pd < 0 || v.pd > 2) throw ValidationError(v.name + ": pd must be 0, 1 or 2");
    if (v.injdim < 0 || v.injdim > 2) throw ValidationError(v.name + ": injdim must be 0, 1 or 2");
    if (v.r_summand && v.pd != 0) throw ValidationError(v.name + ": r_summand vertex must have pd 0");
    if (!hom_[i][i]) throw ValidationError(v.name + ": hom_nonzero must be reflexive");
    any_r = any_r || v.r_summand;
  }
  if (!any_r) throw ValidationError("hom-quiver has no r_summand vertex");
  if (bound_ && *bound_ < 0) throw ValidationError("bound must be nonnegative");
}

HomQuiver HomQuiver::from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("hom-quiver JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("hom-quiver document must be a JSON object");
  static const std::set<std::string> known = {"schema", "bound", "vertices", "hom_nonzero", "ext1_nonzero",
                                              "description"};
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) throw ValidationError("unknown hom-quiver key " + key);
  if (!j.contains("schema") || j["schema"] != kHomQuiverSchema)
    throw ValidationError(std::string("schema must be ") + kHomQuiverSchema);
  for (const char* key : {"vertices", "hom_nonzero", "ext1_nonzero"})
    if (!j.contains(key)) throw ValidationError(std::string("missing key ") + key);
  if (j.contains("description") && !j["description"].is_string())
    throw ValidationError("description must be a string");

  std::optional<int> bound;
  if (j.contains("bound") && !j["bound"].is_null()) bound = small_int(j["bound"], "bound");

  if (!j["vertices"].is_array()) throw ValidationError("vertices must be an array");
  std::vector<QuiverVertex> vs;
  static const std::set<std::string> vkeys = {"name", "pd", "injdim", "r_summand"};
  for (const auto& v : j["vertices"]) {
    if (!v.is_object()) throw ValidationError("vertex entries must be objects");
    for (const auto& [key, _] : v.items())
      if (!vkeys.count(key)) throw ValidationError("unknown vertex key " + key);
    for (const auto& key : vkeys)
      if (!v.contains(key)) throw ValidationError("vertex missing key " + key);
    if (!v["name"].is_string()) throw ValidationError("vertex name must be a string");
    if (!v["r_summand"].is_boolean()) throw ValidationError("r_summand must be a boolean");
    vs.push_back({v["name"].get<std::string>(), small_int(v["pd"], "pd"), small_int(v["injdim"], "injdim"),
                  v["r_summand"].get<bool>()});
  }
  const std::size_t n = vs.size();
  return HomQuiver(std::move(vs), relation_from_json(j["hom_nonzero"], n, "hom_nonzero"),
                   relation_from_json(j["ext1_nonzero"], n, "ext1_nonzero"), bound);
}

std::string HomQuiver::to_json() const {
  // One vertex or relation row per line.
  std::string out = "{\n  \"schema\": \"" + std::string(kHomQuiverSchema) + "\",\n";
  out += "  \"bound\": " + (bound_ ? std::to_string(*bound_) : std::string("null")) + ",\n";
  out += "  \"vertices\": [\n";
  for (std::size_t i = 0; i < size(); ++i) {
    const auto& v = vertices_[i];
    out += "    {\"name\": " + json(v.name).dump() + ", \"pd\": " + std::to_string(v.pd) +
           ", \"injdim\": " + std::to_string(v.injdim) + ", \"r_summand\": " + (v.r_summand ? "true" : "false") +
           "}" + (i + 1 < size() ? "," : "") + "\n";
  }
  out += "  ],\n";
  auto rel = [&](const char* key, const Relation& r, bool last) {
    out += std::string("  \"") + key + "\": [\n";
    for (std::size_t i = 0; i < r.size(); ++i)
      out += "    \"" + row_string(r[i]) + "\"" + (i + 1 < r.size() ? "," : "") + "\n";
    out += last ? "  ]\n" : "  ],\n";
  };
  rel("hom_nonzero", hom_, false);
  rel("ext1_nonzero", ext1_, true);
  return out + "}\n";
}

std::optional<std::size_t> HomQuiver::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i].name == name) return i;
  return std::nullopt;
}

VertexSet HomQuiver::all() const {
  VertexSet s;
  for (std::size_t i = 0; i < size(); ++i) s.insert(i);
  return s;
}

HomQuiver HomQuiver::with_hom_edge(std::size_t from, std::size_t to) const {
  HomQuiver q = *this;
  q.hom_.at(from).at(to) = true;
  return q;
}

std::string format_set(const HomQuiver& q, const VertexSet& s) {
  std::string out = "{";
  for (auto it = s.begin(); it != s.end(); ++it) {
    if (it != s.begin()) out += ", ";
    out += q.vertex(*it).name;
  }
  return out + "}";
}

CLevels c_levels(const HomQuiver& q) {
  CLevels out;
  VertexSet level;
  for (std::size_t i = 0; i < q.size(); ++i)
    if (q.vertex(i).pd == 2) level.insert(i);
  out.levels.push_back(level);
  out.closure = level;
  while (!level.empty()) {
    VertexSet next;
    for (std::size_t p : level)
      for (std::size_t v = 0; v < q.size(); ++v)
        if (q.hom(p, v)) next.insert(v);
    out.levels.push_back(next);
    std::size_t before = out.closure.size();
    out.closure.insert(next.begin(), next.end());
    if (out.closure.size() == before) break;
    level = std::move(next);
  }
  return out;
}

Verdict verify_c_equals_c1(const HomQuiver& q) {
  CLevels c = c_levels(q);
  VertexSet c01 = c.levels[0];
  if (c.levels.size() > 1) c01.insert(c.levels[1].begin(), c.levels[1].end());
  Verdict v;
  v.passed = c01 == c.closure;
  v.detail = "C = " + format_set(q, c.closure) + ", C_0 u C_1 = " + format_set(q, c01) + ", " +
             std::to_string(c.levels.size()) + " levels";
  return v;
}

TorsionPairOnQuiver torsion_pair_x0y0(const HomQuiver& q) {
  TorsionPairOnQuiver tp;
  tp.x = c_levels(q).closure;
  for (std::size_t i = 0; i < q.size(); ++i)
    if (!tp.x.count(i)) tp.y.insert(i);
  return tp;
}

bool is_orthogonal(const HomQuiver& q, const TorsionPairOnQuiver& tp) {
  for (std::size_t x : tp.x)
    for (std::size_t y : tp.y)
      if (q.hom(x, y)) return false;
  return true;
}

namespace {

void validate_pair(const HomQuiver& q, const TorsionPairOnQuiver& tp) {
  VertexSet both = tp.x;
  for (std::size_t y : tp.y) {
    if (y >= q.size()) throw ValidationError("torsion pair names a vertex out of range");
    if (!both.insert(y).second) throw ValidationError("torsion pair sides overlap at " + q.vertex(y).name);
  }
  if (both != q.all()) throw ValidationError("torsion pair does not cover every vertex");
  for (std::size_t x : tp.x)
    for (std::size_t y : tp.y)
      if (q.hom(x, y))
        throw ValidationError("Hom(" + q.vertex(x).name + ", " + q.vertex(y).name + ") != 0 across the pair");
}

void finish(ConditionReport& r) {
  r.passed = std::all_of(r.items.begin(), r.items.end(), [](const CheckItem& c) { return c.passed; });
}

}  // namespace

ConditionReport check_condition_ii(const HomQuiver& q, const TorsionPairOnQuiver& tp) {
  validate_pair(q, tp);
  ConditionReport r;
  CheckItem split{"split", true, {}};
  for (std::size_t y : tp.y)
    for (std::size_t x : tp.x)
      if (q.ext1(y, x)) split.failures.push_back("Ext1(" + q.vertex(y).name + ", " + q.vertex(x).name + ") != 0");
  CheckItem pd{"pd(Y) <= 1", true, {}};
  for (std::size_t y : tp.y)
    if (q.vertex(y).pd > 1) pd.failures.push_back("pd(" + q.vertex(y).name + ") = " + std::to_string(q.vertex(y).pd));
  CheckItem rin{"R in Y", true, {}};
  for (std::size_t x : tp.x)
    if (q.vertex(x).r_summand) rin.failures.push_back(q.vertex(x).name + " lies in X");
  for (CheckItem* c : {&split, &pd, &rin}) {
    c->passed = c->failures.empty();
    r.items.push_back(std::move(*c));
  }
  finish(r);
  return r;
}

ConditionReport check_condition_iii(const HomQuiver& q) {
  ConditionReport r;
  CheckItem gl{"gldim <= 2", true, {}};
  CheckItem dich{"pd <= 1 or injdim <= 1", true, {}};
  for (const auto& v : q.vertices()) {
    if (v.pd > 2) gl.failures.push_back("pd(" + v.name + ") = " + std::to_string(v.pd));
    if (v.pd > 1 && v.injdim > 1)
      dich.failures.push_back(v.name + ": pd " + std::to_string(v.pd) + ", injdim " + std::to_string(v.injdim));
  }
  for (CheckItem* c : {&gl, &dich}) {
    c->passed = c->failures.empty();
    r.items.push_back(std::move(*c));
  }
  finish(r);
  return r;
}

Verdict hom_to_r_check(const HomQuiver& q) {
  Verdict v;
  std::vector<std::string> bad;
  const VertexSet c0 = c_levels(q).levels[0];
  for (std::size_t m : c0)
    for (std::size_t r = 0; r < q.size(); ++r)
      if (q.vertex(r).r_summand && q.hom(m, r)) bad.push_back("Hom(" + q.vertex(m).name + ", " + q.vertex(r).name + ") != 0");
  v.passed = bad.empty();
  if (bad.empty()) {
    v.detail = "no nonzero Hom from C_0 into an R-summand";
  } else {
    for (std::size_t i = 0; i < bad.size(); ++i) v.detail += (i ? "; " : "") + bad[i];
  }
  return v;
}

std::vector<std::vector<bool>> reachability(const HomQuiver& q) {
  const std::size_t n = q.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r[i][j] = i == j || q.hom(i, j);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (r[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (r[k][j]) r[i][j] = true;
  return r;
}

LRClasses lr_classes(const HomQuiver& q) {
  auto reach = reachability(q);
  LRClasses out;
  for (std::size_t m = 0; m < q.size(); ++m) {
    bool in_l = true, in_r = true;
    for (std::size_t n = 0; n < q.size(); ++n) {
      if (reach[n][m] && q.vertex(n).pd > 1) in_l = false;
      if (reach[m][n] && q.vertex(n).injdim > 1) in_r = false;
    }
    if (in_l) out.l.insert(m);
    if (in_r) out.r.insert(m);
  }
  return out;
}

std::vector<TorsionPairOnQuiver> enumerate_split_torsion_pairs(const HomQuiver& q, std::size_t max_vertices) {
  const std::size_t n = q.size();
  if (n > max_vertices || n > 30)
    throw BoundExceeded("split torsion pair enumeration over " + std::to_string(n) + " vertices exceeds bound " +
                        std::to_string(std::min<std::size_t>(max_vertices, 30)));
  // Masks over vertices: X must be closed under Hom-successors (equivalent
  // to orthogonality for a bipartition), Y must avoid pd 2, and nothing in Y
  // may extend by something in X.
  std::vector<std::uint32_t> succ(n), ext_into(n);
  std::uint32_t pd2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (q.hom(i, j)) succ[i] |= 1u << j;
      if (q.ext1(i, j)) ext_into[i] |= 1u << j;
    }
    if (q.vertex(i).pd > 1) pd2 |= 1u << i;
  }
  const std::uint32_t full = (1u << n) - 1;
  std::vector<TorsionPairOnQuiver> out;
  for (std::uint64_t m = 0; m <= full; ++m) {
    const auto x = static_cast<std::uint32_t>(m);
    const std::uint32_t y = full & ~x;
    if (y & pd2) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if ((x >> i & 1) && (succ[i] & y)) ok = false;
      if ((y >> i & 1) && (ext_into[i] & x)) ok = false;
    }
    if (!ok) continue;
    TorsionPairOnQuiver tp;
    for (std::size_t i = 0; i < n; ++i) (x >> i & 1 ? tp.x : tp.y).insert(i);
    out.push_back(std::move(tp));
  }
  return out;
}

bool contains_r_summands(const HomQuiver& q, const VertexSet& s) {
  for (std::size_t i = 0; i < q.size(); ++i)
    if (q.vertex(i).r_summand && !s.count(i)) return false;
  return true;
}

}  // namespace tiltlab
