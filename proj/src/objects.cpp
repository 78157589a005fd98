#include "nmds/objects.hpp"

#include <sstream>

#include "nmds/polarspaces.hpp"
#include "nmds/twistedcubic.hpp"

namespace nmds {

using json = nlohmann::ordered_json;

const std::vector<std::string>& object_names() {
  static const std::vector<std::string> names{
      "elliptic-ovoid", "suzuki-ovoid", "ovoid-intersection", "quadric-suzuki-ovoid",
      "elliptic-section", "cap", "twisted-cubic", "twisted-cubic-extension"};
  return names;
}

json points_json(const PointSet& s) {
  json arr = json::array();
  for (const auto& p : s.points()) {
    json c = json::array();
    for (std::size_t i = 0; i < p.size(); ++i) c.push_back(p[i]);
    arr.push_back(c);
  }
  return arr;
}

namespace {

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

BuiltObject build_object(const ObjectRequest& req) {
  FieldPtr f = Field::of_order(req.q);
  json d{{"object", req.object}, {"q", req.q}};
  const std::string& o = req.object;

  if (o == "elliptic-ovoid" || o == "suzuki-ovoid" || o == "ovoid-intersection") {
    SymplecticSpace w(f);
    if (o == "elliptic-ovoid") {
      d["delta"] = f->pick_delta();
      return {elliptic_ovoid_W(w).points, d};
    }
    Ovoid t = suzuki_ovoid_W(w);
    d["sigma_exponent"] = f->sqrt_2q();
    if (o == "suzuki-ovoid") return {t.points, d};
    d["seed"] = req.seed;
    d["delta"] = f->pick_delta();
    Ovoid e = random_symplectic_image(w, elliptic_ovoid_W(w), req.seed);
    return {intersect_ovoids(e, t).sorted(), d};
  }

  if (o == "quadric-suzuki-ovoid" || o == "elliptic-section" || o == "cap") {
    ParabolicQuadric q4(f);
    if (o == "quadric-suzuki-ovoid") return {suzuki_ovoid_Q4(q4).points, d};
    EllipticSection es = elliptic_section_Q4(q4);
    d["hyperplane_index"] = es.hyperplane_index;
    if (o == "elliptic-section") return {es.ovoid.points, d};
    d["seed"] = req.seed;
    Ovoid e = random_orthogonal_image(q4, es.ovoid, req.seed);
    return {build_cap(e, suzuki_ovoid_Q4(q4), q4.nucleus()).sorted(), d};
  }

  if (o == "twisted-cubic" || o == "twisted-cubic-extension") {
    TwistedCubic c(f);
    PointSet s = c.points();
    if (o == "twisted-cubic-extension") {
      json added = json::array();
      for (const auto& name : split(req.kind)) {
        auto kind = candidate_from_string(name);
        if (!kind) throw Error(ErrorCode::InvalidArgument, "unknown extension point '" + name + "'");
        CandidatePoint cp = extension_candidate(c, *kind);
        json entry{{"kind", name}, {"point", json::array()}};
        for (std::size_t i = 0; i < 4; ++i) entry["point"].push_back(cp.point[i]);
        for (auto& [k, v] : cp.params) entry[k] = v;
        added.push_back(entry);
        s.insert(cp.point);
      }
      if (added.empty()) throw Error(ErrorCode::InvalidArgument, "twisted-cubic-extension needs --kind");
      d["added"] = added;
    }
    return {s, d};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown object '" + o + "'");
}

}  // namespace nmds
