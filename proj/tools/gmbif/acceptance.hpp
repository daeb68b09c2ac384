#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gmbif::acceptance {

struct Measurement {
  std::string name;
  double value = 0.0;
  std::string expected;
  bool pass = true;
};

struct Result {
  int id = 0;
  std::string key;
  std::string title;
  bool pass = false;
  double seconds = 0.0;
  std::vector<Measurement> measurements;
  std::vector<std::string> notes;
};

struct Config {
  std::uint64_t rng_seed = 20240611;
};

const std::vector<int>& all_ids();
std::string_view key_for(int id);

// "3", "cusp", "1,4,hopf" -> ids; throws InvalidInput on unknown entries.
std::vector<int> parse_selection(std::string_view sel);

Result run(int id, const Config& cfg = {});
std::vector<Result> run(const std::vector<int>& ids, const Config& cfg = {});

// One line: "PASS  3 cusp  <summary of failing or key measurements>".
std::string summary_line(const Result& r);

} // namespace gmbif::acceptance
