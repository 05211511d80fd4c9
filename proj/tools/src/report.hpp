#pragma once

#include <json.hpp>
#include <string>

#include "conifold/numeric.hpp"

namespace conifold::cli {

using json = nlohmann::ordered_json;

json to_json(cplx z);

// Serialization with every float written as %.17g, so identical runs give
// identical bytes. Non-finite floats become the strings "nan", "inf", "-inf".
std::string dump(const json& j, int indent = 2);

// {schema, command, params, results, residuals, tolerances, pass}
struct Report {
  std::string command;
  json params = json::object();
  json results = json::object();
  json residuals = json::object();
  json tolerances = json::object();
  bool pass = true;

  json to_json() const;
};

}  // namespace conifold::cli
