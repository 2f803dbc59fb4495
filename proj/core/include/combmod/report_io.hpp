#pragma once

#include <string>

#include <json.hpp>

#include "combmod/graph.hpp"
#include "combmod/modulus.hpp"
#include "combmod/pipeline.hpp"
#include "combmod/type_problem.hpp"

namespace combmod {

// JSON views of results. Objects use nlohmann's sorted keys; masses and
// domains are keyed by vertex id, so output is byte-stable.

nlohmann::json modulus_to_json(const Graph& g, const ModulusResult& r);
/// `vertex,mass`, one row per vertex in id order.
std::string masses_csv(const Graph& g, const MassDistribution& m);

nlohmann::json profile_to_json(const ExhaustionProfile& p);
nlohmann::json verdict_to_json(const TypeVerdict& v);
nlohmann::json returns_to_json(const ReturnEstimate& e);
nlohmann::json epsilon_to_json(const EpsilonTable& t);
nlohmann::json l_to_json(const LFunction& L);
nlohmann::json config_to_json(const PipelineConfig& c);
nlohmann::json keyl_to_json(const KeyLReport& r);
nlohmann::json book_to_json(const BookReport& r);
nlohmann::json pipeline_to_json(const PipelineReport& r);

/// `k,eps_hat,floorL,Bk,ak_closed,ak_contour,bk_closed,bk_contour,adm_margin,total_mass`
/// where adm_margin = shortest crossing - 1 and total_mass = sum m^2.
std::string keyl_csv(const KeyLReport& r, const EpsilonTable& eps);

/// Two-space indented dump with a trailing newline.
std::string dump_json(const nlohmann::json& j);

}  // namespace combmod
