#include "fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fixtures {

using edurisk::Category;

edurisk::Dataset table2() {
  // Quiz 1, Quiz 2, Mid-Term, Assignment 1, Assignment 2, Final
  static const char* kRows[] = {
      "PPPPPP", "PPPPPP", "FPFPPF", "PPPPPP", "FFFPFF", "FFPPPF", "PFPPPF",
      "PPPPPP", "PPPPPP", "FFPPPF", "PPPPPP", "PPFPPP", "PPPPPP", "PPPPPP",
      "PFPPPF", "PPPPPP", "PPPPPP", "PFFPFF", "PPPPPP", "PPPPPP",
  };
  edurisk::Dataset ds{edurisk::standard_schema(edurisk::CourseType::with_practical), {}};
  int id = 1;
  for (const char* row : kRows) {
    edurisk::StudentRecord r;
    r.student_id = std::to_string(id++);
    for (std::size_t j = 0; j < 5; ++j) {
      r.values[ds.schema.attributes[j].name] = row[j] == 'P' ? Category::Pass : Category::Fail;
    }
    r.target = row[5] == 'P' ? Category::Pass : Category::Fail;
    ds.records.push_back(std::move(r));
  }
  return ds;
}

std::string data_path(const std::string& name) { return std::string(EDURISK_SOURCE_DIR) + "/data/" + name; }

std::string golden_path(const std::string& name) {
  return std::string(EDURISK_SOURCE_DIR) + "/tests/golden/" + name;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

edurisk::Dataset random_dataset(std::mt19937& rng, RandomShape shape) {
  std::uniform_int_distribution<std::size_t> n_dist(1, shape.max_records);
  std::uniform_int_distribution<std::size_t> k_dist(1, shape.max_attributes);
  const std::size_t k = k_dist(rng);
  const std::size_t n = n_dist(rng);

  edurisk::AttributeSchema schema;
  for (std::size_t j = 0; j < k; ++j) {
    schema.attributes.push_back({"A" + std::to_string(j), edurisk::AttributeKind::other, j});
  }
  // Skewed label probability so pure and near-pure partitions show up often.
  std::uniform_real_distribution<double> p_dist(0.0, 1.0);
  std::bernoulli_distribution label(p_dist(rng));
  edurisk::Dataset ds{schema, {}};
  for (std::size_t i = 0; i < n; ++i) {
    auto r = random_record(rng, schema);
    r.student_id = "r" + std::to_string(i);
    r.target = label(rng) ? Category::Fail : Category::Pass;
    ds.records.push_back(std::move(r));
  }
  return ds;
}

edurisk::StudentRecord random_record(std::mt19937& rng, const edurisk::AttributeSchema& schema) {
  std::bernoulli_distribution coin(0.5);
  edurisk::StudentRecord r;
  r.student_id = "x";
  for (const auto& a : schema.attributes) r.values[a.name] = coin(rng) ? Category::Fail : Category::Pass;
  return r;
}

}  // namespace fixtures
