#pragma once

// Named constructions used by the command line tool and the claim suite.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "nmds/projgeom.hpp"

namespace nmds {

struct ObjectRequest {
  std::string object;
  std::uint32_t q = 0;
  std::uint64_t seed = 0;
  /// twisted-cubic-extension: comma separated candidate names, e.g. "Q,R".
  std::string kind;
};

struct BuiltObject {
  PointSet points;
  /// Construction descriptor with every resolved parameter.
  nlohmann::ordered_json descriptor;
};

/// Known names: elliptic-ovoid, suzuki-ovoid, ovoid-intersection, quadric-suzuki-ovoid,
/// elliptic-section, cap, twisted-cubic, twisted-cubic-extension.
/// InvalidArgument for an unknown name.
BuiltObject build_object(const ObjectRequest& req);
const std::vector<std::string>& object_names();

nlohmann::ordered_json points_json(const PointSet& s);

}  // namespace nmds
