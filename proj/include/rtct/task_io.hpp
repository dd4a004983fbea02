#pragma once

#include "rtct/model.hpp"

#include <json.hpp>

#include <filesystem>

namespace rtct {

/// Rational from a JSON value: integral numbers, or strings "p", "p/q",
/// "d.ddd". Non-integral numeric literals are rejected: a binary double
/// cannot carry an exact decimal.
Rational rational_from_json(const nlohmann::json& value);

/// Schema: {"deadline_model": "constrained"|"arbitrary",
///          "tasks": [{"T": ..., "D": ..., "C": ...|null}, ...]}
/// "C" may be null or absent when the execution time is a free variable.
TaskSet parse_task_set(const nlohmann::json& doc);

TaskSet load_task_set(const std::filesystem::path& path);

nlohmann::json task_set_to_json(const TaskSet& ts);

}  // namespace rtct
