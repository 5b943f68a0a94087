#include "fdmc/mesh_io.hpp"

#include <fstream>

namespace fdmc {

using nlohmann::json;

json mesh_to_json(const QuadMesh& m) {
    json rows = json::array();
    for (int t = 0; t <= m.T; ++t) {
        json row = json::array();
        for (int p = 0; p <= m.P; ++p) row.push_back(m.vertex(p, t));
        rows.push_back(std::move(row));
    }
    return json{{"P", m.P}, {"T", m.T}, {"dim", m.dim}, {"vertices", std::move(rows)}};
}

QuadMesh mesh_from_json(const json& j) {
    QuadMesh m(j.at("P").get<int>(), j.at("T").get<int>(), j.at("dim").get<int>());
    const json& rows = j.at("vertices");
    if (int(rows.size()) != m.T + 1) throw std::invalid_argument("mesh json: row count mismatch");
    for (int t = 0; t <= m.T; ++t) {
        const json& row = rows.at(t);
        if (int(row.size()) != m.P + 1)
            throw std::invalid_argument("mesh json: column count mismatch");
        for (int p = 0; p <= m.P; ++p) {
            m.vertex(p, t) = row.at(p).get<Point>();
            if (int(m.vertex(p, t).size()) != m.dim)
                throw std::invalid_argument("mesh json: point dimension mismatch");
        }
    }
    m.validate();
    return m;
}

json reparam_to_json(const Reparameterization& r) {
    json bps = json::array();
    for (const auto& [x, y] : r.breakpoints) bps.push_back(json::array({x, y}));
    return json{{"breakpoints", std::move(bps)}};
}

Reparameterization reparam_from_json(const json& j) {
    Reparameterization r;
    for (const auto& bp : j.at("breakpoints"))
        r.breakpoints.push_back({bp.at(0).get<double>(), bp.at(1).get<double>()});
    r.validate();
    return r;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void save_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
}

QuadMesh load_mesh(const std::string& path) { return mesh_from_json(load_json(path)); }
void save_mesh(const QuadMesh& m, const std::string& path) { save_json(mesh_to_json(m), path); }
Reparameterization load_reparam(const std::string& path) {
    return reparam_from_json(load_json(path));
}
void save_reparam(const Reparameterization& r, const std::string& path) {
    save_json(reparam_to_json(r), path);
}

}  // namespace fdmc
