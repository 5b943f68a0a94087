#pragma once

#include <string>

#include <json.hpp>

#include "fdmc/mesh.hpp"

namespace fdmc {

nlohmann::json mesh_to_json(const QuadMesh& m);
QuadMesh mesh_from_json(const nlohmann::json& j);

nlohmann::json reparam_to_json(const Reparameterization& r);
Reparameterization reparam_from_json(const nlohmann::json& j);

QuadMesh load_mesh(const std::string& path);
void save_mesh(const QuadMesh& m, const std::string& path);
Reparameterization load_reparam(const std::string& path);
void save_reparam(const Reparameterization& r, const std::string& path);

nlohmann::json load_json(const std::string& path);
void save_json(const nlohmann::json& j, const std::string& path);

}  // namespace fdmc
