#ifndef GSLEARN_IO_HPP
#define GSLEARN_IO_HPP

#include "gslearn/bounds.hpp"
#include "gslearn/gaussian.hpp"
#include "gslearn/learning.hpp"
#include "gslearn/locality.hpp"

#include <json.hpp>
#include <string>

namespace gslearn {

using Json = nlohmann::ordered_json;

/// Matrix schema: {rows, cols, layout: "row-major", data: [..]}; complex
/// matrices carry {re: [..], im: [..]} instead of data.
Json matrix_to_json(const Mat& m);
Json matrix_to_json(const CMat& m);
Mat matrix_from_json(const Json& j);
CMat cmatrix_from_json(const Json& j);

Json vector_to_json(const Vec& v);
Vec vector_from_json(const Json& j);

/// State schema: {m, t, V, optional H}.
Json state_to_json(const GaussianState& s);
GaussianState state_from_json(const Json& j);

/// Graph schema: {m, edges: [[i,j], ...]} (adjacency list of pairs).
Json graph_to_json(const InteractionGraph& g);
InteractionGraph graph_from_json(const Json& j);

Json neighborhoods_to_json(const NeighborhoodStructure& n);
NeighborhoodStructure neighborhoods_from_json(const Json& j);

Json certificate_to_json(const BoundCertificate& c);
Json report_to_json(const LearnReport& r);

void write_json_file(const Json& j, const std::string& path);
Json read_json_file(const std::string& path);

} // namespace gslearn

#endif
