#pragma once

#include <random>
#include <string>

#include "edurisk/schema.hpp"

namespace fixtures {

/// Table 2 training set, built in code so tests do not depend on the parser.
edurisk::Dataset table2();

/// Path of a committed file under data/ or tests/golden/.
std::string data_path(const std::string& name);
std::string golden_path(const std::string& name);
std::string read_file(const std::string& path);

struct RandomShape {
  std::size_t max_records = 12;
  std::size_t max_attributes = 5;
};

/// Random labelled dataset with attributes A0..A{k-1}, 1 <= n <= max_records.
edurisk::Dataset random_dataset(std::mt19937& rng, RandomShape shape = {});

/// Random record over the same attributes, without a target.
edurisk::StudentRecord random_record(std::mt19937& rng, const edurisk::AttributeSchema& schema);

}  // namespace fixtures
