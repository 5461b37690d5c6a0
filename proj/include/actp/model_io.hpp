#pragma once

#include <string>

#include "actp/model.hpp"
#include "actp/value_function.hpp"

namespace actp {

// Model files are JSON documents (schema: docs/model-schema.md). Loading
// validates the model; both directions round-trip deterministically.
ActivePerceptionModel load_model(const std::string& path);
ActivePerceptionModel model_from_json_text(const std::string& text);
std::string model_to_json_text(const ActivePerceptionModel& m);
void save_model(const ActivePerceptionModel& m, const std::string& path);

// Value-function files hold every solved stage (stage 1..h) with action
// annotations; the single-stage helpers read/write a one-stage file.
std::string value_functions_to_json_text(const std::vector<ValueFunction>& stages,
                                         const std::string& manifest_json = "");
void save_value_functions(const std::vector<ValueFunction>& stages, const std::string& path,
                          const std::string& manifest_json = "");
std::vector<ValueFunction> load_value_functions(const std::string& path);
ValueFunction load_value_function(const std::string& path);  // last stage
void save_value_function(const ValueFunction& vf, const std::string& path,
                         const std::string& manifest_json = "");

}  // namespace actp
