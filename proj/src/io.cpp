#include "gslearn/io.hpp"

#include <fstream>

namespace gslearn {

Json matrix_to_json(const Mat& m) {
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["layout"] = "row-major";
    std::vector<double> data;
    data.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
    j["data"] = data;
    return j;
}

Json matrix_to_json(const CMat& m) {
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["layout"] = "row-major";
    std::vector<double> re, im;
    re.reserve(static_cast<std::size_t>(m.size()));
    im.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            re.push_back(m(r, c).real());
            im.push_back(m(r, c).imag());
        }
    j["re"] = re;
    j["im"] = im;
    return j;
}

Mat matrix_from_json(const Json& j) {
    Eigen::Index rows = j.at("rows").get<Eigen::Index>();
    Eigen::Index cols = j.at("cols").get<Eigen::Index>();
    auto data = j.at("data").get<std::vector<double>>();
    if (static_cast<Eigen::Index>(data.size()) != rows * cols)
        throw DimensionMismatch("io", "matrix_from_json",
                                "data length mismatch");
    Mat m(rows, cols);
    std::size_t k = 0;
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = data[k++];
    return m;
}

CMat cmatrix_from_json(const Json& j) {
    Eigen::Index rows = j.at("rows").get<Eigen::Index>();
    Eigen::Index cols = j.at("cols").get<Eigen::Index>();
    auto re = j.at("re").get<std::vector<double>>();
    auto im = j.at("im").get<std::vector<double>>();
    if (re.size() != im.size() ||
        static_cast<Eigen::Index>(re.size()) != rows * cols)
        throw DimensionMismatch("io", "cmatrix_from_json",
                                "data length mismatch");
    CMat m(rows, cols);
    std::size_t k = 0;
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c, ++k)
            m(r, c) = Complex(re[k], im[k]);
    return m;
}

Json vector_to_json(const Vec& v) {
    return Json(std::vector<double>(v.data(), v.data() + v.size()));
}

Vec vector_from_json(const Json& j) {
    auto data = j.get<std::vector<double>>();
    return Eigen::Map<const Vec>(data.data(),
                                 static_cast<Eigen::Index>(data.size()));
}

Json state_to_json(const GaussianState& s) {
    Json j;
    j["m"] = s.m;
    j["t"] = vector_to_json(s.t);
    j["V"] = matrix_to_json(s.V);
    return j;
}

GaussianState state_from_json(const Json& j) {
    GaussianState s;
    s.m = j.at("m").get<int>();
    s.t = vector_from_json(j.at("t"));
    s.V = matrix_from_json(j.at("V"));
    if (s.t.size() != 2 * s.m || s.V.rows() != 2 * s.m)
        throw DimensionMismatch("io", "state_from_json",
                                "inconsistent dimensions");
    return s;
}

Json graph_to_json(const InteractionGraph& g) {
    Json j;
    j["m"] = g.m;
    Json edges = Json::array();
    for (auto& [a, b] : g.edges) edges.push_back({a, b});
    j["edges"] = edges;
    return j;
}

InteractionGraph graph_from_json(const Json& j) {
    InteractionGraph g{j.at("m").get<int>(), {}};
    for (auto& e : j.at("edges"))
        g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
    return g;
}

Json neighborhoods_to_json(const NeighborhoodStructure& n) {
    Json j;
    j["sets"] = n.sets;
    return j;
}

NeighborhoodStructure neighborhoods_from_json(const Json& j) {
    NeighborhoodStructure n;
    n.sets = j.at("sets").get<std::vector<std::vector<int>>>();
    n.validate("neighborhoods_from_json");
    return n;
}

Json certificate_to_json(const BoundCertificate& c) {
    Json j;
    j["bound_name"] = c.bound_name;
    j["hypothesis_ok"] = c.hypothesis_ok;
    j["lhs"] = c.lhs;
    j["rhs"] = c.rhs;
    j["margin"] = c.margin();
    return j;
}

Json report_to_json(const LearnReport& r) {
    Json j;
    j["N"] = r.N;
    j["t_hat"] = r.t_hat.size() ? vector_to_json(r.t_hat) : Json();
    j["V_used"] = r.V_used.size() ? matrix_to_json(r.V_used) : Json();
    j["H_hat"] = r.H_hat.size() ? matrix_to_json(r.H_hat) : Json();
    Json edges = Json::array();
    for (auto& [a, b] : r.edges) edges.push_back({a, b});
    j["edges"] = edges;
    j["params"] = {{"l", r.params.l},
                   {"zeta", r.params.zeta},
                   {"eps_prime", r.params.eps_prime},
                   {"eta", r.params.eta},
                   {"from_override", r.params.from_override},
                   {"constants", r.params.constants}};
    j["search_loop_count"] = r.search_loop_count;
    j["trace_bound_value"] = r.trace_bound_value;
    j["certificate_ok"] = r.certificate_ok;
    j["err_h"] = r.err_h;
    j["err_t"] = r.err_t;
    return j;
}

void write_json_file(const Json& j, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error("io", "write_json_file", "cannot open " + path);
    f << j.dump(2) << '\n';
}

Json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("io", "read_json_file", "cannot open " + path);
    return Json::parse(f);
}

} // namespace gslearn
