#include "qtopo/io.hpp"

#include <string>

#include "qtopo/errors.hpp"

namespace qtopo::io {

namespace {

std::string at(const std::string& base, const std::string& key) { return base + "/" + key; }
std::string at(const std::string& base, std::size_t idx) { return base + "/" + std::to_string(idx); }

const json& field(const json& obj, const std::string& ptr, const char* key) {
  if (!obj.is_object()) throw SchemaError(ptr, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(at(ptr, key), "missing required field");
  return *it;
}

std::int64_t as_int(const json& v, const std::string& ptr) {
  if (!v.is_number_integer()) throw SchemaError(ptr, "expected an integer");
  return v.get<std::int64_t>();
}

double as_double(const json& v, const std::string& ptr) {
  if (!v.is_number()) throw SchemaError(ptr, "expected a number");
  return v.get<double>();
}

Vec3 as_vec3(const json& v, const std::string& ptr) {
  if (!v.is_array() || v.size() != 3) throw SchemaError(ptr, "expected [x, y, z]");
  return {as_double(v[0], at(ptr, 0)), as_double(v[1], at(ptr, 1)), as_double(v[2], at(ptr, 2))};
}

std::vector<Vec3> as_points(const json& v, const std::string& ptr) {
  if (!v.is_array()) throw SchemaError(ptr, "expected an array of points");
  std::vector<Vec3> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_vec3(v[i], at(ptr, i)));
  return out;
}

}  // namespace

FramedLinkMatrix parse_framed_link(const json& doc) {
  const json& jm = field(doc, "", "J");
  if (!jm.is_array()) throw SchemaError("/J", "expected an array of rows");
  const std::size_t m = jm.size();
  if (doc.contains("m") && as_int(doc["m"], "/m") != static_cast<std::int64_t>(m)) {
    throw SchemaError("/m", "does not match the number of rows in /J");
  }
  std::vector<std::vector<std::int64_t>> rows(m);
  for (std::size_t r = 0; r < m; ++r) {
    const std::string rp = at("/J", r);
    if (!jm[r].is_array() || jm[r].size() != m) {
      throw SchemaError(rp, "expected a row of " + std::to_string(m) + " integers");
    }
    for (std::size_t c = 0; c < m; ++c) rows[r].push_back(as_int(jm[r][c], at(rp, c)));
  }
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = r + 1; c < m; ++c) {
      if (rows[r][c] != rows[c][r]) {
        throw SchemaError(at(at("/J", c), r), "matrix is not symmetric (differs from /J/" +
                                                  std::to_string(r) + "/" + std::to_string(c) + ")");
      }
    }
  }
  return FramedLinkMatrix::from_rows(rows);
}

PolyLink parse_polylink(const json& doc) {
  PolyLink link;
  const json& comps = field(doc, "", "components");
  if (!comps.is_array()) throw SchemaError("/components", "expected an array");
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const std::string cp = at("/components", i);
    FramedCurve fc;
    fc.points = as_points(field(comps[i], cp, "points"), at(cp, "points"));
    fc.offsets = as_points(field(comps[i], cp, "offsets"), at(cp, "offsets"));
    if (fc.points.size() < 3) throw SchemaError(at(cp, "points"), "need at least 3 points");
    if (fc.offsets.size() != fc.points.size()) {
      throw SchemaError(at(cp, "offsets"), "need one offset per point");
    }
    link.components.push_back(std::move(fc));
  }
  if (doc.contains("delta")) {
    link.delta = as_double(doc["delta"], "/delta");
    if (!(link.delta > 0.0)) throw SchemaError("/delta", "must be positive");
  }
  return link;
}

LinkFormat detect_format(const json& doc) {
  if (!doc.is_object()) throw SchemaError("", "expected a JSON object");
  if (doc.contains("J")) return LinkFormat::kMatrix;
  if (doc.contains("components")) return LinkFormat::kPolyLink;
  throw SchemaError("", "neither a linking matrix (/J) nor a polygonal link (/components)");
}

FramedLinkMatrix load_link(const json& doc) {
  return detect_format(doc) == LinkFormat::kMatrix ? parse_framed_link(doc)
                                                   : linking_matrix(parse_polylink(doc));
}

json to_json(const FramedLinkMatrix& j) {
  return json{{"m", j.size()}, {"J", j.rows()}};
}

json to_json(const PolyLink& link) {
  json comps = json::array();
  for (const auto& c : link.components) comps.push_back({{"points", c.points}, {"offsets", c.offsets}});
  return json{{"components", comps}, {"delta", link.delta}};
}

const char* method_name(Method m) { return m == Method::kBrute ? "brute" : "factorized"; }

json to_json(const InvariantResult& r) {
  return json{{"re", r.value.real()},
              {"im", r.value.imag()},
              {"method", method_name(r.method)},
              {"k", r.k},
              {"m", r.m},
              {"normalized_re", r.normalized.real()},
              {"normalized_im", r.normalized.imag()}};
}

json to_json(const PhaseEstimate& e) {
  return json{{"k", e.k},
              {"a", e.a},
              {"phi_hat", e.phi},
              {"phi_true", e.phi_true},
              {"epsilon", e.epsilon},
              {"samples", e.samples},
              {"ci_halfwidth", e.ci_halfwidth},
              {"seed", e.seed}};
}

}  // namespace qtopo::io
