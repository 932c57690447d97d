#pragma once

#include <string>

#include <json.hpp>

#include "branchwork/ball.hpp"
#include "branchwork/engine.hpp"
#include "branchwork/group.hpp"
#include "branchwork/tower.hpp"
#include "branchwork/word.hpp"

// JSON forms for every value that crosses the CLI boundary, plus the CSV
// emitter for period tables. Parsing rejects malformed shapes with
// DomainError; budgets apply to parsed vectors exactly as to constructed
// ones. Emission is deterministic: object keys come out sorted and all big
// integers are decimal strings.
namespace branchwork::io {

using json = nlohmann::json;

json to_json(const F2Vector& v);
F2Vector f2vector_from_json(const json& j, const Budgets& budgets = {});

json to_json(const TowerInt& t);
TowerInt tower_from_json(const json& j, const Budgets& budgets = {});

json to_json(const Word& w);
Word word_from_json(const json& j, const Budgets& budgets = {});

json to_json(const VertexPath& v);
VertexPath vertex_from_json(const json& j, const Budgets& budgets = {});

json to_json(const Portrait& p);
Portrait portrait_from_json(const json& j, const Budgets& budgets = {});

json to_json(const GroupSpec& spec);
GroupSpec spec_from_json(const json& j);

// inverse of F2Vector::repr, used for portrait children keys
F2Vector f2vector_from_repr(const std::string& s, const Budgets& budgets = {});

// header line "# format=1", then n,ball_size,pi,witness_json rows with the
// witness JSON CSV-quoted
std::string period_table_csv(const PeriodTable& table);

} // namespace branchwork::io
