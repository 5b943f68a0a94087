// Replays archived regression fixtures: instances where a primary/oracle
// disagreement (or an outright bug) was once observed. Each fixture pins the
// expected decision for both graph modes and the sampled oracle.

#include <doctest.h>

#include <filesystem>

#include "fdmc/constant.hpp"
#include "fdmc/dynamic.hpp"
#include "fdmc/mesh_io.hpp"
#include "fdmc/oracles.hpp"

using namespace fdmc;

TEST_CASE("regression fixtures replay") {
#ifdef FDMC_FIXTURES
    namespace fs = std::filesystem;
    int replayed = 0;
    for (const auto& entry : fs::directory_iterator(FDMC_FIXTURES)) {
        if (entry.path().extension() != ".json") continue;
        ++replayed;
        INFO("fixture: " << entry.path().filename().string());
        auto j = load_json(entry.path().string());
        QuadMesh a = mesh_from_json(j.at("a"));
        QuadMesh b = mesh_from_json(j.at("b"));
        double eps = j.at("eps").get<double>();
        NormKind norm = parse_norm(j.at("norm").get<std::string>());
        bool expect = j.at("expect_accept").get<bool>();

        CHECK(decide_ic(a, b, eps, norm).accepted == expect);
        CHECK(decide_id(a, b, eps, norm, GraphMode::FullR) == expect);
        CHECK(decide_id(a, b, eps, norm, GraphMode::ReducedE) == expect);
        CHECK(oracle::full_R_reachability(a, b, eps, norm, oracle::SamplingPlan(12)) == expect);
    }
    CHECK(replayed >= 2);
#endif
}
