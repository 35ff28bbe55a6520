#include "ucurve/instance_io.hpp"

#include <charconv>
#include <optional>
#include <stdexcept>
#include <fstream>
#include <sstream>

namespace ucurve {

using nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

int read_degree(const json& j) {
  if (!j.contains("n") || !j["n"].is_number_integer()) throw InputError("instance needs an integer \"n\"");
  const auto n = j["n"].get<long long>();
  if (n < 1 || n > kMaxDegree) throw InputError("instance degree must be in [1, 64]");
  return static_cast<int>(n);
}

}  // namespace

Instance instance_from_json(const json& j) {
  if (!j.is_object()) throw InputError("instance must be a JSON object");
  const int n = read_degree(j);
  const std::string kind = j.value("kind", "");
  try {
    if (kind == "subset_sum") {
      if (!j.contains("weights") || !j["weights"].is_array()) throw InputError("subset_sum instance needs \"weights\"");
      std::vector<std::uint64_t> weights;
      for (const auto& w : j["weights"]) {
        if (!w.is_number_unsigned() && !(w.is_number_integer() && w.get<long long>() >= 0))
          throw InputError("weights must be non-negative integers");
        weights.push_back(w.get<std::uint64_t>());
      }
      if (static_cast<int>(weights.size()) != n) throw InputError("weight count differs from n");
      const auto& t = j.at("target");
      if (!t.is_number_unsigned() && !(t.is_number_integer() && t.get<long long>() >= 0))
        throw InputError("target must be a non-negative integer");
      return Instance::subset_sum(std::move(weights), t.get<std::uint64_t>());
    }
    if (kind == "explicit") {
      if (n > kMaxExplicitDegree) throw InputError("explicit instances support n <= 24");
      if (!j.contains("costs") || !j["costs"].is_object()) throw InputError("explicit instance needs \"costs\"");
      const std::size_t size = std::size_t{1} << n;
      const auto& costs = j["costs"];
      if (costs.size() != size) throw InputError("explicit instance must list all 2^n subsets");
      std::vector<Cost> table(size, -1.0);
      std::vector<bool> seen(size, false);
      for (const auto& [key, value] : costs.items()) {
        if (static_cast<int>(key.size()) != n) throw InputError("cost key \"" + key + "\" has wrong width");
        const ElementSet x = ElementSet::parse(key);
        if (!value.is_number()) throw InputError("cost for \"" + key + "\" is not a number");
        if (seen[x.bits()]) throw InputError("duplicate cost key \"" + key + "\"");
        seen[x.bits()] = true;
        table[x.bits()] = value.get<double>();
      }
      return Instance::explicit_table(n, std::move(table));
    }
  } catch (const ContractViolation& e) {
    throw InputError(e.what());
  } catch (const json::exception& e) {
    throw InputError(e.what());
  }
  throw InputError("unknown instance kind \"" + kind + "\"");
}

json instance_to_json(const Instance& instance) {
  const int n = instance.degree();
  if (const auto* s = std::get_if<SubsetSumCosts>(&instance.payload()))
    return json{{"n", n}, {"kind", "subset_sum"}, {"weights", s->weights}, {"target", s->target}};
  if (const auto* e = std::get_if<ExplicitCosts>(&instance.payload())) {
    json costs = json::object();
    for (std::size_t b = 0; b < e->costs.size(); ++b) costs[ElementSet(n, b).to_string()] = e->costs[b];
    return json{{"n", n}, {"kind", "explicit"}, {"costs", costs}};
  }
  throw ContractViolation("sample-table instances are stored as sample files");
}

Instance load_instance(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return instance_from_json(j);
}

void save_instance(const Instance& instance, const std::filesystem::path& path, const json& extra) {
  json j = instance_to_json(instance);
  if (extra.is_object())
    for (const auto& [k, v] : extra.items()) j[k] = v;
  write_file(path, j.dump(1) + "\n");
}

SampleTable parse_samples(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<int> header_n;
  std::optional<long long> header_t;
  std::optional<SampleTable> table;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const std::string where = "sample line " + std::to_string(line_no) + ": ";
    if (line.rfind("n=", 0) == 0) {
      if (table || header_n) throw InputError(where + "header must be the first line");
      std::istringstream hs(line);
      std::string a, b;
      hs >> a >> b;
      try {
        header_n = std::stoi(a.substr(2));
        if (b.rfind("t=", 0) != 0) throw InputError(where + "expected t=<int>");
        header_t = std::stoll(b.substr(2));
      } catch (const std::logic_error&) {
        throw InputError(where + "malformed header");
      }
      if (*header_n < 1 || *header_n > kMaxDegree) throw InputError(where + "n must be in [1, 64]");
      continue;
    }
    std::istringstream ls(line);
    std::string bits, label, rest;
    if (!(ls >> bits >> label) || (ls >> rest)) throw InputError(where + "expected \"<bits> <0|1>\"");
    if (label != "0" && label != "1") throw InputError(where + "label must be 0 or 1");
    ElementSet x;
    try {
      x = ElementSet::parse(bits);
    } catch (const ContractViolation& e) {
      throw InputError(where + e.what());
    }
    if (!table) {
      if (header_n && *header_n != x.width()) throw InputError(where + "row width differs from header n");
      table.emplace(x.width());
    }
    if (x.width() != table->degree()) throw InputError(where + "row width differs from earlier rows");
    table->add(x, label == "1" ? 1 : 0);
  }
  if (!table || table->size() == 0) throw InputError("sample file has no rows");
  if (header_t && *header_t != static_cast<long long>(table->size()))
    throw InputError("sample header t differs from the number of rows");
  return *table;
}

std::string samples_to_text(const SampleTable& samples) {
  std::string out = "n=" + std::to_string(samples.degree()) + " t=" + std::to_string(samples.size()) + "\n";
  for (const auto& row : samples.rows()) {
    out += ElementSet(samples.degree(), row.x).to_string();
    out += row.y ? " 1\n" : " 0\n";
  }
  return out;
}

SampleTable load_samples(const std::filesystem::path& path) { return parse_samples(read_file(path)); }

void save_samples(const SampleTable& samples, const std::filesystem::path& path) {
  write_file(path, samples_to_text(samples));
}

}  // namespace ucurve
