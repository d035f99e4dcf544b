#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mla/existence.hpp"
#include "mla/experiments.hpp"
#include "mla/instance.hpp"
#include "mla/methods.hpp"
#include "mla/quota.hpp"

namespace mla {

// Malformed input text. For JSON syntax errors line and column are 1-based.
class FormatError : public std::runtime_error {
public:
    FormatError(const std::string& message, std::size_t line = 0, std::size_t column = 0);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

std::string read_file(const std::filesystem::path& path);

// {"nodes": [{"id": 0, "parent": null, "weight": "1"}, ...]}
// Weights are strings "p/q" or "p"; JSON integers are accepted too, decimals are not.
RawInstance parse_instance(std::string_view json_text);
Instance load_instance(const std::filesystem::path& path);
std::string instance_to_json(const Instance& inst);

// {"h": 6, "seats": [6, 2, 1, 2, 1, 3, 3]}
Allocation parse_allocation(std::string_view json_text);
Allocation load_allocation(const std::filesystem::path& path);
std::string allocation_to_json(const Allocation& alloc);

std::string trajectory_to_json(const Trajectory& trajectory);
std::string reduction_to_json(const BinaryReduction& reduction);
std::string report_to_json(const QuotaReport& report);
std::string validation_to_json(const std::vector<InstanceError>& errors);

// {"families": [{"kind": "binary", "height": 3}], "instance_count": 1000,
//  "base_seed": 1, "house_sizes": [100, 500], "methods": ["adams", ...],
//  "max_weight": 10, "mode": "all", "threads": 1}
// A single "family" object is accepted in place of "families".
ExperimentConfig parse_experiment_config(std::string_view json_text);

}  // namespace mla
