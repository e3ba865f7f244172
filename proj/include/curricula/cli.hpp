#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "curricula/anova.hpp"
#include "curricula/io.hpp"
#include "curricula/metrics.hpp"
#include "curricula/report.hpp"
#include "curricula/stats.hpp"
#include "curricula/study.hpp"
#include "curricula/synthgen.hpp"

namespace curricula::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInfeasible = 3;

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  study::write_text(path, text);
}

namespace detail {

struct FileError : std::runtime_error {
  FileError(const std::string& file, const std::exception& e)
      : std::runtime_error(file + ": " + e.what()) {}
};

// Rethrows anything from parsing with the file name prefixed.
template <typename F>
auto with_file(const std::string& file, F&& f) {
  try {
    return f();
  } catch (const InfeasibleError&) {
    throw;
  } catch (const std::exception& e) {
    throw FileError(file, e);
  }
}

inline ComplexitySampleSet load_samples(const std::string& file) {
  return with_file(file, [&] { return parse_samples(read_file(file)); });
}

inline ParsedCurriculum load_curriculum(const std::string& file) {
  return with_file(file, [&] {
    return parse_curriculum(read_file(file), std::filesystem::path(file).stem().string());
  });
}

inline bool is_reference_sample_size(double sigma, double z, double e) {
  return std::fabs(sigma - 60.0) < 1e-9 && std::fabs(z - 1.96) < 1e-9 && std::fabs(e - 30.0) < 1e-9;
}

inline const char* kReferenceSampleSizeNote =
    "the reference study used n = 20 per tier with sigma = 60, Z = 1.96, E = 30; "
    "the formula itself gives 15.3664, i.e. 16 after rounding up";

}  // namespace detail

/// Runs one CLI invocation. Returns the process exit code: 0 on success, 2 on
/// input or validation errors, 3 when generation targets are infeasible.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structural complexity of curricula and tiered ANOVA studies", "curricula"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML file; subcommand keys go under [subcommand] sections");

  // validate
  std::vector<std::string> validate_files;
  auto* validate = app.add_subcommand("validate", "Parse and validate curriculum CSV files");
  validate->add_option("files", validate_files, "Curriculum CSV files")->required();

  // metrics
  std::vector<std::string> metric_files;
  std::vector<double> weights{1.0, 1.0};
  std::vector<std::string> edge_kinds;
  std::string metrics_format = "json";
  auto* metrics = app.add_subcommand("metrics", "Blocking, delay and complexity per course");
  metrics->add_option("files", metric_files, "Curriculum CSV files")->required();
  metrics->add_option("--weights", weights, "Blocking and delay weights, e.g. 1,1")
      ->delimiter(',')
      ->expected(2);
  metrics->add_option("--edge-kinds", edge_kinds,
                      "Requisite kinds in the metric graph (prerequisite,corequisite,strict_corequisite)")
      ->delimiter(',');
  metrics->add_option("--format", metrics_format, "json or table")
      ->check(CLI::IsMember({"json", "table"}));

  // boxplot
  std::string boxplot_file;
  std::string svg_path;
  auto* boxplot = app.add_subcommand("boxplot", "Notched box-plot data per tier");
  boxplot->add_option("samples", boxplot_file, "Samples CSV (tier,complexity)")->required();
  boxplot->add_option("--svg", svg_path, "Also write an SVG rendering to this path");

  // hist
  std::string hist_file;
  std::optional<double> hist_width;
  std::vector<double> hist_edges;
  auto* hist = app.add_subcommand("hist", "Histograms per tier and pooled");
  hist->add_option("samples", hist_file, "Samples CSV (tier,complexity)")->required();
  auto* width_opt = hist->add_option("--width", hist_width, "Fixed bin width");
  hist->add_option("--edges", hist_edges, "Explicit ascending bin edges")
      ->delimiter(',')
      ->excludes(width_opt);

  // anova
  std::string anova_file;
  double alpha = 0.05;
  std::string anova_format = "json";
  auto* anova_cmd = app.add_subcommand("anova", "One-way ANOVA and F-test across tiers");
  anova_cmd->add_option("samples", anova_file, "Samples CSV (tier,complexity)")->required();
  anova_cmd->add_option("--alpha", alpha, "Significance level");
  anova_cmd->add_option("--format", anova_format, "json or table")
      ->check(CLI::IsMember({"json", "table"}));

  // samplesize
  double sigma = 0.0;
  double z = 1.96;
  double margin = 0.0;
  std::string size_format = "json";
  auto* samplesize = app.add_subcommand("samplesize", "Per-tier sample size (sigma*Z/E)^2");
  samplesize->add_option("--sigma", sigma, "Estimated standard deviation")->required();
  samplesize->add_option("--z", z, "Standard-normal deviate for the confidence level");
  samplesize->add_option("--e", margin, "Margin of error")->required();
  samplesize->add_option("--format", size_format, "json or table")
      ->check(CLI::IsMember({"json", "table"}));

  // generator knobs shared by generate and study
  synth::GeneratorConfig gen;
  auto add_generator_options = [&gen](CLI::App* cmd) {
    cmd->add_option("--seed", gen.seed, "Random seed");
    cmd->add_option("--terms", gen.num_terms, "Number of terms");
    cmd->add_option("--min-courses", gen.min_courses_per_term, "Fewest courses per term");
    cmd->add_option("--max-courses", gen.max_courses_per_term, "Most courses per term");
    cmd->add_option("--max-prereqs", gen.max_prereqs_per_course, "Prerequisite cap per course");
    cmd->add_option("--coreq-prob", gen.corequisite_probability, "Corequisite probability");
  };

  std::string generate_out;
  auto* generate = app.add_subcommand("generate", "Emit a seeded synthetic curriculum CSV");
  add_generator_options(generate);
  generate->add_option("--edge-prob", gen.edge_probability, "Prerequisite probability per earlier term");
  generate->add_option("--out", generate_out, "Output file (default stdout)");

  std::string targets_spec;
  std::string study_out;
  double study_alpha = 0.05;
  std::optional<double> study_sigma;
  double study_z = 1.96;
  double study_margin = 30.0;
  auto* study_cmd = app.add_subcommand("study", "Generate and analyse a synthetic tiered study");
  study_cmd->add_option("--targets", targets_spec, "'paper' or a CSV file label,mean,std,count")
      ->required();
  study_cmd->add_option("--out", study_out, "Output directory")->required();
  study_cmd->add_option("--alpha", study_alpha, "Significance level");
  study_cmd->add_option("--sigma", study_sigma, "Sigma for the sample-size calculation");
  study_cmd->add_option("--z", study_z, "Z for the sample-size calculation");
  study_cmd->add_option("--margin", study_margin, "E for the sample-size calculation");
  add_generator_options(study_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInput;
  }

  try {
    using report::dump;
    using report::Json;
    if (*validate) {
      for (const auto& file : validate_files) {
        const auto parsed = detail::load_curriculum(file);
        out << file << ": valid (" << parsed.curriculum.courses.size() << " courses, "
            << parsed.curriculum.edges.size() << " requisites";
        if (parsed.plan) out << ", " << parsed.plan->terms.size() << " terms";
        out << ")\n";
      }
    } else if (*metrics) {
      MetricConfig config;
      config.blocking_weight = weights.at(0);
      config.delay_weight = weights.at(1);
      if (!edge_kinds.empty()) {
        config.edge_kinds = {};
        for (const auto& name : edge_kinds) {
          auto kind = parse_requisite_kind(name);
          if (!kind) throw InputError("unknown edge kind '" + name + "'");
          config.edge_kinds.insert(*kind);
        }
      }
      config.validate();
      // Files are independent; evaluate concurrently, report in input order.
      std::vector<std::future<CurriculumMetrics>> jobs;
      for (const auto& file : metric_files) {
        jobs.push_back(std::async(std::launch::async, [file, config] {
          const auto parsed = detail::load_curriculum(file);
          return detail::with_file(file, [&] {
            return parsed.plan ? curriculum_complexity(*parsed.plan, config)
                               : curriculum_complexity(parsed.curriculum, config);
          });
        }));
      }
      std::vector<CurriculumMetrics> results;
      for (auto& job : jobs) results.push_back(job.get());
      if (metrics_format == "table") {
        for (std::size_t i = 0; i < results.size(); ++i) {
          if (results.size() > 1) out << "== " << metric_files[i] << " ==\n";
          out << report::metrics_table(results[i]);
        }
      } else if (results.size() == 1) {
        out << dump(report::to_json(results.front()));
      } else {
        Json arr = Json::array();
        for (std::size_t i = 0; i < results.size(); ++i) {
          auto doc = report::to_json(results[i]);
          doc["file"] = metric_files[i];
          arr.push_back(std::move(doc));
        }
        out << dump(arr);
      }
    } else if (*boxplot) {
      const auto samples = detail::load_samples(boxplot_file);
      std::vector<study::TierReport> tiers;
      for (const auto& t : samples.tiers) tiers.push_back({t.label, stats::summarize_sample(t.values), {}});
      out << dump(study::boxplot_json(tiers));
      if (!svg_path.empty()) study::write_text(svg_path, study::boxplot_svg(tiers));
    } else if (*hist) {
      const auto samples = detail::load_samples(hist_file);
      auto build = [&](const std::vector<double>& values) {
        if (hist_width) return stats::histogram_with_width(values, *hist_width);
        if (!hist_edges.empty()) return stats::histogram(values, hist_edges);
        return stats::histogram(values);
      };
      Json tiers = Json::array();
      for (const auto& t : samples.tiers) {
        auto doc = report::to_json(build(t.values));
        doc["label"] = t.label;
        tiers.push_back(std::move(doc));
      }
      out << dump(Json{{"tiers", std::move(tiers)}, {"pooled", report::to_json(build(samples.pooled()))}});
    } else if (*anova_cmd) {
      const auto samples = detail::load_samples(anova_file);
      const auto result = anova::hypothesis_test(anova::TierSamples::from(samples), alpha);
      if (anova_format == "table") {
        out << report::anova_table_text(result.table, result.decision);
      } else {
        Json labels = Json::array();
        for (const auto& t : samples.tiers) labels.push_back(t.label);
        auto table = report::to_json(result.table);
        table["labels"] = std::move(labels);
        out << dump(Json{{"anova", std::move(table)}, {"decision", report::to_json(result.decision)}});
      }
    } else if (*samplesize) {
      const auto result = stats::sample_size(sigma, z, margin);
      const bool reference = detail::is_reference_sample_size(sigma, z, margin);
      if (size_format == "table") {
        out << "unrounded: " << report::general(result.unrounded, 12) << "\n"
            << "n: " << result.n << "\n";
        if (reference) out << "note: " << detail::kReferenceSampleSizeNote << "\n";
      } else {
        auto doc = report::to_json(result, sigma, z, margin);
        if (reference) doc["note"] = detail::kReferenceSampleSizeNote;
        out << dump(doc);
      }
    } else if (*generate) {
      write_output(generate_out, serialize_curriculum(synth::generate_curriculum(gen)), out);
    } else if (*study_cmd) {
      const auto targets = targets_spec == "paper"
                               ? study::paper_targets()
                               : detail::with_file(targets_spec, [&] {
                                   return study::parse_targets(read_file(targets_spec));
                                 });
      if (targets.size() < 2) throw InputError("ANOVA requires >= 2 tiers");
      if (!(study_alpha > 0.0 && study_alpha < 1.0)) throw InputError("alpha must lie in (0, 1)");
      const auto generated = synth::generate_tier_study(targets, gen);
      const auto analysed = study::analyse(generated.samples, study_alpha,
                                           {study_sigma, study_z, study_margin});
      study::write_study(study_out, generated, analysed);
      for (const auto& tier : generated.tiers) {
        out << tier.target.label << ": mean " << report::fixed(tier.achieved_mean, 1) << " (target "
            << report::fixed(tier.target.target_mean, 1) << "), std "
            << report::fixed(tier.achieved_std, 1) << " (target "
            << report::fixed(tier.target.target_std, 1) << ")"
            << (tier.attained ? "" : " [not attained]") << "\n";
      }
      out << report::anova_table_text(analysed.anova, analysed.decision);
    }
  } catch (const InfeasibleError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"curricula"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace curricula::cli
