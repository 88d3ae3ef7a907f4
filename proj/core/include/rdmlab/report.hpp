#pragma once

#include <functional>
#include <json.hpp>
#include <ostream>
#include <string>
#include <vector>

namespace rdmlab {

using json = nlohmann::ordered_json;

/// One JSON object per line; key order is insertion order and double
/// serialization is shortest-round-trip, so equal inputs give identical
/// bytes.
void write_json_lines(std::ostream& out, const std::vector<json>& rows);
std::string to_json_lines(const std::vector<json>& rows);

/// CSV with the given header; numeric cells rendered by the same
/// shortest-round-trip formatter as the JSON path.
std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& rows);

std::string format_double(double v);

/// Runs fn(i) for i in [0, count) on a pool capped by RDMLAB_THREADS
/// (default: hardware concurrency). Results are slotted by index, so
/// output order is deterministic regardless of scheduling.
void parallel_for(int count, const std::function<void(int)>& fn);

int worker_count();

}  // namespace rdmlab
