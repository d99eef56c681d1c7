#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "qcox/groupcheck.hpp"
#include "qcox/presentation.hpp"
#include "qcox/quiver.hpp"
#include "qcox/surface.hpp"

namespace qcox {

using json = nlohmann::json;

json to_json(const Quiver& q);
Quiver quiver_from_json(const json& j);

json to_json(const AnnotatedQuiver& aq);
AnnotatedQuiver annotated_from_json(const json& j);

json to_json(const Triangulation& t);
Triangulation triangulation_from_json(const json& j);

json to_json(const SurfaceSignature& s);

json to_json(const PolygonGluing& pg);
PolygonGluing polygon_from_json(const json& j);

json to_json(const FiniteGroupTarget& g);
FiniteGroupTarget target_from_json(const json& j);

// Letters are 1-based in the serialized form, matching the text format.
json to_json(const Presentation& p);
Presentation presentation_from_json(const json& j);

json to_json(const Digon& d);
json to_json(const AssociateResult& r);

json to_json(const FlipGraph& g);
std::string to_dot(const FlipGraph& g);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace qcox
