#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ucurve/cost.hpp"

namespace ucurve {

/// Raised for malformed instance or sample files.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance files:
//   {"n":3,"kind":"subset_sum","weights":[2,3,5],"target":5}
//   {"n":2,"kind":"explicit","costs":{"00":2.0,"10":1.0,"01":3.0,"11":2.0}}
// Unknown keys are ignored.
Instance instance_from_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const Instance& instance);
Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& instance, const std::filesystem::path& path, const nlohmann::json& extra = {});

// Sample files: optional header "n=<int> t=<int>", then one "<bits> <0|1>"
// row per line.
SampleTable parse_samples(std::string_view text);
std::string samples_to_text(const SampleTable& samples);
SampleTable load_samples(const std::filesystem::path& path);
void save_samples(const SampleTable& samples, const std::filesystem::path& path);

}  // namespace ucurve
