#include <doctest.h>

#include <algorithm>
#include <random>

#include "edurisk/error.hpp"
#include "edurisk/tree.hpp"
#include "fixtures.hpp"

using namespace edurisk;

namespace {

StudentRecord record_from(const Dataset& ds, const std::string& id) {
  auto it = std::find_if(ds.records.begin(), ds.records.end(),
                         [&](const StudentRecord& r) { return r.student_id == id; });
  REQUIRE(it != ds.records.end());
  return *it;
}

}  // namespace

TEST_CASE("criterion names") {
  CHECK(to_string(Criterion::gain_ratio) == "gain-ratio");
  CHECK(parse_criterion("info-gain") == Criterion::info_gain);
  CHECK_FALSE(parse_criterion("gini").has_value());
}

TEST_CASE("select_attribute on Table 2") {
  const auto ds = fixtures::table2();
  const auto all = ds.schema.predictor_names();
  CHECK(select_attribute(ds, all, Criterion::gain_ratio) == "Quiz 2");
  CHECK(select_attribute(ds, all, Criterion::info_gain) == "Quiz 2");

  const auto q2_pass = ds.filtered("Quiz 2", Category::Pass);
  REQUIRE(q2_pass.size() == 14);
  const std::vector<std::string> rest = {"Quiz 1", "Mid-Term", "Assignment 1", "Assignment 2"};
  CHECK(select_attribute(q2_pass, rest, Criterion::gain_ratio) == "Quiz 1");
  // Quiz 1 isolates the single failure (record 3) so its gain ratio is 1.
  CHECK(*score_attribute(q2_pass, "Quiz 1").gain_ratio == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_FALSE(select_attribute(ds, std::vector<std::string>{}, Criterion::gain_ratio).has_value());
  CHECK_FALSE(select_attribute(ds, std::vector<std::string>{"Assignment 1"}, Criterion::gain_ratio));
  CHECK_THROWS_AS(select_attribute(ds, std::vector<std::string>{"Attendance"}, Criterion::gain_ratio),
                  UnknownAttributeError);
}

TEST_CASE("select_attribute returns nothing for a single-label dataset") {
  const auto ds = fixtures::table2().filtered("Quiz 2", Category::Fail);
  CHECK_FALSE(select_attribute(ds, ds.schema.predictor_names(), Criterion::gain_ratio).has_value());
  CHECK_FALSE(select_attribute(ds, ds.schema.predictor_names(), Criterion::info_gain).has_value());
}

TEST_CASE("ties go to the earliest schema position regardless of candidate order") {
  auto ds = fixtures::table2();
  // Make Mid-Term an exact copy of Quiz 2.
  for (auto& r : ds.records) r.values["Mid-Term"] = r.values["Quiz 2"];
  const std::vector<std::string> reversed = {"Mid-Term", "Quiz 2"};
  CHECK(select_attribute(ds, reversed, Criterion::gain_ratio) == "Quiz 2");
  CHECK(select_attribute(ds, reversed, Criterion::info_gain) == "Quiz 2");
}

TEST_CASE("Table 2 tree") {
  const auto tree = induce_tree(fixtures::table2(), Criterion::gain_ratio);
  REQUIRE_FALSE(tree.is_leaf());
  CHECK(tree.attribute() == "Quiz 2");
  CHECK(tree.support() == ClassCounts(13, 7));

  const auto* fail = tree.child(Category::Fail);
  REQUIRE(fail != nullptr);
  CHECK(fail->is_leaf());
  CHECK(fail->label() == Category::Fail);
  CHECK(fail->support() == ClassCounts(0, 6));
  CHECK(fail->purity() == 1.0);

  const auto* pass = tree.child(Category::Pass);
  REQUIRE(pass != nullptr);
  REQUIRE_FALSE(pass->is_leaf());
  CHECK(pass->attribute() == "Quiz 1");
  CHECK(pass->child(Category::Fail)->is_leaf());
  CHECK(pass->child(Category::Fail)->support() == ClassCounts(0, 1));
  CHECK(pass->child(Category::Pass)->label() == Category::Pass);
  CHECK(pass->child(Category::Pass)->support() == ClassCounts(13, 0));

  CHECK(tree.leaf_count() == 3);
  CHECK(tree.depth() == 2);
  CHECK(induce_tree(fixtures::table2(), Criterion::info_gain) == tree);
}

TEST_CASE("degenerate inductions") {
  auto one = fixtures::table2();
  one.records.resize(1);
  const auto leaf = induce_tree(one);
  CHECK(leaf.is_leaf());
  CHECK(leaf.label() == Category::Pass);
  CHECK(leaf.support() == ClassCounts(1, 0));

  auto mirror = fixtures::table2();
  for (auto& r : mirror.records) r.target = r.values["Quiz 1"];
  for (auto criterion : {Criterion::gain_ratio, Criterion::info_gain}) {
    const auto t = induce_tree(mirror, criterion);
    CHECK(t.attribute() == "Quiz 1");
    CHECK(t.leaf_count() == 2);
    CHECK(t.child(Category::Pass)->purity() == 1.0);
    CHECK(t.child(Category::Fail)->purity() == 1.0);
  }

  // Contradictory duplicates: no attribute can separate them, tie goes to Fail.
  auto conflict = fixtures::table2();
  conflict.records = {conflict.records[0], conflict.records[0]};
  conflict.records[1].target = Category::Fail;
  const auto tie = induce_tree(conflict);
  CHECK(tie.is_leaf());
  CHECK(tie.label() == Category::Fail);
  CHECK(tie.support() == ClassCounts(1, 1));
}

TEST_CASE("induce_tree errors") {
  auto ds = fixtures::table2();
  CHECK_THROWS_AS(induce_tree(Dataset{ds.schema, {}}), ValidationError);
  ds.records[3].target.reset();
  CHECK_THROWS_AS(induce_tree(ds), ValidationError);
  CHECK_THROWS_AS(induce_tree(fixtures::table2(), Criterion::gain_ratio, {0, std::nullopt}), ValidationError);
}

TEST_CASE("induction params") {
  const auto ds = fixtures::table2();
  const auto stump = induce_tree(ds, Criterion::gain_ratio, {1, 1});
  CHECK(stump.attribute() == "Quiz 2");
  CHECK(stump.child(Category::Pass)->is_leaf());
  CHECK(stump.child(Category::Pass)->label() == Category::Pass);
  CHECK(stump.child(Category::Pass)->support() == ClassCounts(13, 1));

  // Quiz 1 would leave a one-record branch under Quiz 2 = Pass. Mid-Term
  // (12 Pass / 2 Fail there) still has positive gain and takes its place.
  const auto supported = induce_tree(ds, Criterion::gain_ratio, {2, std::nullopt});
  CHECK(supported.attribute() == "Quiz 2");
  CHECK(supported.child(Category::Pass)->attribute() == "Mid-Term");
  const auto strict = induce_tree(ds, Criterion::gain_ratio, {7, std::nullopt});
  CHECK(strict.is_leaf());
  CHECK(strict.label() == Category::Pass);
}

TEST_CASE("classify Table 2 students") {
  const auto ds = fixtures::table2();
  const auto tree = induce_tree(ds);

  const auto s7 = classify(tree, record_from(ds, "7"));
  CHECK(s7.label == Category::Fail);
  CHECK(s7.at_risk);
  CHECK(s7.path == std::vector<Condition>{{"Quiz 2", Category::Fail}});

  const auto s1 = classify(tree, record_from(ds, "1"));
  CHECK(s1.label == Category::Pass);
  CHECK_FALSE(s1.at_risk);
  CHECK(s1.path == std::vector<Condition>{{"Quiz 2", Category::Pass}, {"Quiz 1", Category::Pass}});

  for (const auto& r : ds.records) CHECK(classify(tree, r).label == *r.target);

  auto partial = record_from(ds, "1");
  partial.values.erase("Quiz 1");
  try {
    classify(tree, partial);
    FAIL("expected UnknownAttributeError");
  } catch (const UnknownAttributeError& e) {
    CHECK(e.attribute() == "Quiz 1");
  }
}

TEST_CASE("classify falls back to the node majority for unseen values") {
  // Internal node with only a Pass branch.
  const auto tree = TreeNode::internal(
      "Quiz 2", {Branch{Category::Pass, TreeNode::leaf(Category::Pass, ClassCounts(5, 2))}});
  StudentRecord r{"x", {{"Quiz 2", Category::Fail}}, std::nullopt};
  const auto c = classify(tree, r);
  CHECK(c.label == Category::Pass);
  CHECK(c.path == std::vector<Condition>{{"Quiz 2", Category::Fail}});
}

TEST_CASE("TreeNode::internal validates and orders branches") {
  CHECK_THROWS_AS(TreeNode::internal("Quiz 2", {}), ValidationError);
  CHECK_THROWS_AS(TreeNode::internal("", {Branch{Category::Pass, TreeNode::leaf(Category::Pass, {})}}),
                  ValidationError);
  const auto node = TreeNode::internal(
      "Quiz 2", {Branch{Category::Fail, TreeNode::leaf(Category::Fail, ClassCounts(0, 3))},
                 Branch{Category::Pass, TreeNode::leaf(Category::Pass, ClassCounts(4, 0))}});
  REQUIRE(node.branches().size() == 2);
  CHECK(node.branches()[0].value == Category::Pass);
  CHECK(node.support() == ClassCounts(4, 3));
  CHECK(node.label() == Category::Pass);
}

TEST_CASE("rules from the Table 2 tree") {
  const auto ds = fixtures::table2();
  const auto tree = induce_tree(ds);
  const auto rules = extract_rules(tree);
  REQUIRE(rules.size() == 3);

  const Rule want_fail_q2{{{"Quiz 2", Category::Fail}}, Category::Fail, ClassCounts(0, 6)};
  const Rule want_fail_q1{{{"Quiz 2", Category::Pass}, {"Quiz 1", Category::Fail}}, Category::Fail,
                          ClassCounts(0, 1)};
  const Rule want_pass{{{"Quiz 2", Category::Pass}, {"Quiz 1", Category::Pass}}, Category::Pass,
                       ClassCounts(13, 0)};
  for (const auto& want : {want_fail_q2, want_fail_q1, want_pass}) {
    CHECK(std::count(rules.begin(), rules.end(), want) == 1);
  }
  // Depth first, Pass branch first.
  CHECK(rules[0] == want_pass);
  CHECK(rules[1] == want_fail_q1);
  CHECK(rules[2] == want_fail_q2);

  CHECK(format_rule(rules[0], "Final") ==
        "IF Quiz 2 = \"Pass\" AND Quiz 1 = \"Pass\" THEN Final = \"Pass\"");

  std::mt19937 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const auto r = fixtures::random_record(rng, ds.schema);
    REQUIRE(predict(rules, r) == classify(tree, r).label);
  }
}

TEST_CASE("single leaf gives one unconditional rule") {
  const auto leaf = TreeNode::leaf(Category::Pass, ClassCounts(3, 0));
  const auto rules = extract_rules(leaf);
  REQUIRE(rules.size() == 1);
  CHECK(rules[0].conditions.empty());
  CHECK(rules[0].conclusion == Category::Pass);
  CHECK(format_rule(rules[0], "Final") == "IF true THEN Final = \"Pass\"");
  CHECK(predict(rules, StudentRecord{}) == Category::Pass);
}

TEST_CASE("student_id never appears in a tree") {
  auto ds = fixtures::table2();
  const auto tree = induce_tree(ds);
  std::vector<const TreeNode*> stack{&tree};
  while (!stack.empty()) {
    const auto* n = stack.back();
    stack.pop_back();
    CHECK(n->attribute() != "student_id");
    for (const auto& b : n->branches()) stack.push_back(&b.node);
  }
}
