#include "edurisk/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "edurisk/analytics.hpp"
#include "edurisk/error.hpp"
#include "edurisk/model_io.hpp"
#include "edurisk/schema.hpp"
#include "edurisk/tree.hpp"

namespace edurisk::cli {
namespace {

using nlohmann::json;

/// Unreadable or unwritable file.
class IoError : public Error {
 public:
  using Error::Error;
};

std::string pad(std::string_view s, std::size_t width) {
  std::string out(s);
  if (out.size() < width) out.append(width - out.size(), ' ');
  return out;
}

std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

class Io {
 public:
  Io(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

  std::string read(const std::string& path) {
    if (path == "-") {
      if (stdin_used_) throw IoError("standard input can only be read once");
      stdin_used_ = true;
      return {std::istreambuf_iterator<char>(in_), std::istreambuf_iterator<char>()};
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << file.rdbuf();
    if (file.bad()) throw IoError("error while reading '" + path + "'");
    return buf.str();
  }

  void write(const std::string& path, const std::string& text) {
    if (path == "-") {
      out_ << text;
      return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot write '" + path + "'");
    file << text;
    if (!file) throw IoError("error while writing '" + path + "'");
  }

  std::ostream& out() { return out_; }

 private:
  std::istream& in_;
  std::ostream& out_;
  bool stdin_used_ = false;
};

json path_json(const std::vector<Condition>& path) {
  json out = json::array();
  for (const auto& c : path) out.push_back({c.attribute, std::string(to_string(c.value))});
  return out;
}

std::string path_text(const std::vector<Condition>& path) {
  std::string out;
  for (const auto& c : path) {
    if (!out.empty()) out += ", ";
    out += c.attribute + " = " + std::string(to_string(c.value));
  }
  return out.empty() ? "(root)" : out;
}

std::string support_text(const ClassCounts& support) {
  return "(support: Pass " + std::to_string(support.count(Category::Pass)) + ", Fail " +
         std::to_string(support.count(Category::Fail)) + ")";
}

json support_json(const ClassCounts& support) {
  json out = json::object();
  for (auto c : kCategories) {
    if (support.count(c) > 0) out[std::string(to_string(c))] = support.count(c);
  }
  return out;
}

struct Options {
  std::string data;
  std::string schema;
  std::string model;
  std::string out;
  std::string mode = "categorical";
  std::string format;
  std::string criterion = "gain-ratio";
  std::size_t min_support = 1;
  std::optional<std::size_t> max_depth;
  std::string course_id;
  std::optional<double> fail_rate_threshold;
  bool deterministic = false;
};

int cmd_ingest(const Options& o, Io& io, std::ostream& err) {
  const auto schema = parse_schema(io.read(o.schema));
  const auto mode = o.mode == "raw" ? CsvMode::raw_marks : CsvMode::categorical;
  const auto dataset = parse_csv(io.read(o.data), schema, mode);
  const auto violations = validate_dataset(dataset);
  if (!violations.empty()) {
    for (const auto& v : violations) {
      err << "record " << v.record_index + 1 << (v.attribute.empty() ? "" : " (" + v.attribute + ")")
          << ": " << v.message << '\n';
    }
    return kExitDataError;
  }
  io.out() << write_csv(dataset);
  return kExitOk;
}

int cmd_metrics(const Options& o, Io& io) {
  const auto schema = parse_schema(io.read(o.schema));
  const auto dataset = parse_csv(io.read(o.data), schema);
  const auto scores = score_all(dataset);
  if (o.format == "machine") {
    json rows = json::array();
    for (const auto& s : scores) {
      rows.push_back({{"attribute", s.attribute},
                      {"gain", s.gain},
                      {"split_info", s.split_info},
                      {"gain_ratio", s.gain_ratio ? json(*s.gain_ratio) : json(nullptr)}});
    }
    io.out() << rows.dump(2) << '\n';
  } else {
    io.out() << metrics_table(scores);
  }
  return kExitOk;
}

int cmd_train(const Options& o, Io& io) {
  const auto schema = parse_schema(io.read(o.schema));
  const auto dataset = parse_csv(io.read(o.data), schema);
  const auto criterion = *parse_criterion(o.criterion);
  const InductionParams params{o.min_support, o.max_depth};
  Model model{schema, criterion, induce_tree(dataset, criterion, params)};
  io.write(o.out, serialize_model(model));
  return kExitOk;
}

int cmd_rules(const Options& o, Io& io) {
  const auto model = deserialize_model(io.read(o.model));
  const auto rules = extract_rules(model.tree);
  if (o.format == "machine") {
    json rows = json::array();
    for (const auto& r : rules) {
      rows.push_back({{"conditions", path_json(r.conditions)},
                      {"conclusion", std::string(to_string(r.conclusion))},
                      {"support", support_json(r.support)}});
    }
    io.out() << rows.dump(2) << '\n';
  } else {
    for (const auto& r : rules) {
      io.out() << format_rule(r, model.schema.target_name) << "  " << support_text(r.support) << '\n';
    }
  }
  return kExitOk;
}

int cmd_predict(const Options& o, Io& io) {
  const auto model = deserialize_model(io.read(o.model));
  const auto cohort = parse_csv(io.read(o.data), model.schema);
  if (o.format == "machine") {
    json rows = json::array();
    for (const auto& r : cohort.records) {
      const auto c = classify(model.tree, r);
      rows.push_back({{"student_id", r.student_id},
                      {"label", std::string(to_string(c.label))},
                      {"at_risk", c.at_risk},
                      {"path", path_json(c.path)}});
    }
    io.out() << rows.dump(2) << '\n';
    return kExitOk;
  }
  std::size_t id_width = std::string_view("student_id").size();
  for (const auto& r : cohort.records) id_width = std::max(id_width, r.student_id.size());
  io.out() << pad("student_id", id_width) << "  predicted  at_risk  path\n";
  for (const auto& r : cohort.records) {
    const auto c = classify(model.tree, r);
    io.out() << pad(r.student_id, id_width) << "  " << pad(to_string(c.label), 9) << "  "
             << pad(c.at_risk ? "yes" : "no", 7) << "  " << path_text(c.path) << '\n';
  }
  return kExitOk;
}

int cmd_report(const Options& o, Io& io) {
  const auto model = deserialize_model(io.read(o.model));
  const auto cohort = parse_csv(io.read(o.data), model.schema).unlabeled();
  const double threshold = o.fail_rate_threshold.value_or(model.schema.fail_rate_threshold);
  const auto now = o.deterministic
                       ? Timestamp{}
                       : std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
  const auto report = build_report(model, cohort, o.course_id, threshold, now);
  io.out() << render_report(report, o.format == "machine" ? ReportFormat::machine : ReportFormat::text);
  return kExitOk;
}

}  // namespace

std::string metrics_table(std::span<const AttributeScore> scores) {
  std::size_t width = std::string_view("attribute").size();
  for (const auto& s : scores) width = std::max(width, s.attribute.size());
  constexpr std::size_t kNum = 12;
  auto right = [](std::string_view s) {
    std::string out;
    if (s.size() < kNum) out.append(kNum - s.size(), ' ');
    out += s;
    return out;
  };
  std::string out = pad("attribute", width) + right("gain") + right("split_info") + right("gain_ratio") + "\n";
  for (const auto& s : scores) {
    out += pad(s.attribute, width) + right(fixed6(s.gain)) + right(fixed6(s.split_info)) +
           right(s.gain_ratio ? fixed6(*s.gain_ratio) : "n/a") + "\n";
  }
  return out;
}

int run(std::span<const std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decision-tree analysis of course assessments for at-risk students", "edurisk"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  Options o;
  const auto add_data = [&](CLI::App* sub) {
    sub->add_option("--data", o.data, "Grade CSV file, '-' for stdin")->required();
  };
  const auto add_schema = [&](CLI::App* sub) {
    sub->add_option("--schema", o.schema, "Course schema config")->required();
  };
  const auto add_model = [&](CLI::App* sub) {
    sub->add_option("--model", o.model, "Model JSON written by 'train'")->required();
  };
  const auto add_format = [&](CLI::App* sub, std::string fallback, std::vector<std::string> allowed) {
    sub->add_option("--format", o.format, "Output format")
        ->default_str(fallback)
        ->check(CLI::IsMember(std::move(allowed)));
  };

  auto* ingest = app.add_subcommand("ingest", "Validate a grade sheet and echo it as Pass/Fail CSV");
  add_data(ingest);
  add_schema(ingest);
  ingest->add_option("--mode", o.mode, "Cell interpretation")
      ->check(CLI::IsMember({"raw", "categorical"}))
      ->capture_default_str();

  auto* metrics = app.add_subcommand("metrics", "Gain, split info and gain ratio of every attribute");
  add_data(metrics);
  add_schema(metrics);
  add_format(metrics, "table", {"table", "machine"});

  auto* train = app.add_subcommand("train", "Induce a decision tree and write the model file");
  add_data(train);
  add_schema(train);
  train->add_option("--criterion", o.criterion, "Attribute selection criterion")
      ->check(CLI::IsMember({"gain-ratio", "info-gain"}))
      ->capture_default_str();
  train->add_option("--min-support", o.min_support, "Minimum records per branch of a split")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train->add_option("--max-depth", o.max_depth, "Maximum tests on a path")->check(CLI::PositiveNumber);
  train->add_option("--out", o.out, "Model file, '-' for stdout")->required();

  auto* rules = app.add_subcommand("rules", "Print the IF-THEN rules of a model");
  add_model(rules);
  add_format(rules, "text", {"text", "machine"});

  auto* predict = app.add_subcommand("predict", "Classify every student of a cohort");
  add_model(predict);
  add_data(predict);
  add_format(predict, "text", {"text", "machine"});

  auto* report = app.add_subcommand("report", "Assessment summary, patterns and at-risk list");
  add_model(report);
  add_data(report);
  report->add_option("--course-id", o.course_id, "Course identifier")->required();
  report->add_option("--fail-rate-threshold", o.fail_rate_threshold,
                     "Fail rate that counts as many failures (default from schema)")
      ->check(CLI::Range(0.0, 1.0));
  report->add_flag("--deterministic", o.deterministic, "Freeze generated_at at the epoch");
  add_format(report, "text", {"text", "machine"});

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "edurisk: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  }

  Io io(in, out);
  try {
    if (ingest->parsed()) return cmd_ingest(o, io, err);
    if (metrics->parsed()) return cmd_metrics(o, io);
    if (train->parsed()) return cmd_train(o, io);
    if (rules->parsed()) return cmd_rules(o, io);
    if (predict->parsed()) return cmd_predict(o, io);
    if (report->parsed()) {
      if (o.fail_rate_threshold) check_fail_rate_threshold(*o.fail_rate_threshold);
      return cmd_report(o, io);
    }
  } catch (const Error& e) {
    err << "edurisk: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace edurisk::cli
