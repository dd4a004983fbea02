#include "rtct/task_io.hpp"

#include <fstream>
#include <stdexcept>

namespace rtct {

using nlohmann::json;

Rational rational_from_json(const json& value) {
  if (value.is_number_integer()) return Rational(static_cast<long>(value.get<std::int64_t>()));
  if (value.is_number_unsigned()) return Rational(static_cast<long>(value.get<std::uint64_t>()));
  if (value.is_string()) return Rational::parse(value.get<std::string>());
  if (value.is_number_float())
    throw std::invalid_argument(
        "non-integral numeric literal " + value.dump() +
        "; write it as a string (\"p/q\" or decimal) to keep parsing exact");
  throw std::invalid_argument("expected a rational, got " + value.dump());
}

TaskSet parse_task_set(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("task file must be a JSON object");

  DeadlineModel model = DeadlineModel::Constrained;
  if (doc.contains("deadline_model")) {
    const std::string name = doc.at("deadline_model").get<std::string>();
    if (name == "constrained")
      model = DeadlineModel::Constrained;
    else if (name == "arbitrary")
      model = DeadlineModel::Arbitrary;
    else
      throw std::invalid_argument("unknown deadline_model '" + name + "'");
  }

  if (!doc.contains("tasks") || !doc.at("tasks").is_array())
    throw std::invalid_argument("task file needs a 'tasks' array");

  std::vector<Task> tasks;
  for (const json& entry : doc.at("tasks")) {
    if (!entry.is_object()) throw std::invalid_argument("each task must be an object");
    Task t;
    if (!entry.contains("T")) throw std::invalid_argument("task missing period 'T'");
    if (!entry.contains("D")) throw std::invalid_argument("task missing deadline 'D'");
    t.period = rational_from_json(entry.at("T"));
    t.deadline = rational_from_json(entry.at("D"));
    if (entry.contains("C") && !entry.at("C").is_null())
      t.wcet = rational_from_json(entry.at("C"));
    tasks.push_back(std::move(t));
  }
  return TaskSet(std::move(tasks), model);
}

TaskSet load_task_set(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open task file '" + path.string() + "'");
  json doc;
  in >> doc;
  return parse_task_set(doc);
}

json task_set_to_json(const TaskSet& ts) {
  json doc;
  doc["deadline_model"] =
      ts.deadline_model() == DeadlineModel::Constrained ? "constrained" : "arbitrary";
  json tasks = json::array();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    json t;
    t["T"] = ts[i].period.str();
    t["D"] = ts[i].deadline.str();
    t["C"] = ts[i].wcet ? json(ts[i].wcet->str()) : json(nullptr);
    tasks.push_back(std::move(t));
  }
  doc["tasks"] = std::move(tasks);
  return doc;
}

}  // namespace rtct
