#pragma once

#include "logmoduli/graph.hpp"
#include "logmoduli/obstruction.hpp"
#include "logmoduli/positivity.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace logmoduli {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

using CharacterRows = std::vector<std::map<std::string, long long>>;

struct ClusterRequest {
    std::vector<std::string> vertices;
    bool nef = true;
};

// Everything a single input file may carry.
struct GraphDocument {
    std::string schema_version = kSchemaVersion;
    std::optional<std::string> description;
    Graph graph;
    std::optional<SectionData> sections;
    std::optional<GeometryProfile> profile;
    std::optional<CharacterRows> characters;
    std::optional<std::string> relation_ghost;  // ghost vertex for the ob / o_v0 relation
    std::optional<ClusterRequest> cluster;
};

GraphDocument parse_document(const Json& j);
GraphDocument load_document(const std::string& path);
Json to_json(const GraphDocument& doc);

Graph parse_graph(const Json& j, const std::string& path = {});
Json graph_to_json(const Graph& g);

SectionData parse_sections(const Json& j, int N, const std::string& path = "sections");
Json sections_to_json(const SectionData& s);

GeometryProfile parse_profile(const Json& j, const std::string& path = "profile");
Json profile_to_json(const GeometryProfile& p);

CharacterRows parse_characters(const Json& j, const std::string& path = "characters");
Json characters_to_json(const CharacterRows& rows);

Json load_json_file(const std::string& path);

// 1-based JSON stratum list <-> 0-based stratum.
Json stratum_to_json(const Stratum& s);
Json contact_to_json(const ContactVector& c);

}  // namespace logmoduli
