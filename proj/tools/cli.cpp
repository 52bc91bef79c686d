#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "concord/agreement.hpp"
#include "concord/categories.hpp"
#include "concord/display.hpp"
#include "concord/error.hpp"
#include "concord/guessing.hpp"
#include "concord/inference.hpp"
#include "concord/ingest.hpp"
#include "concord/report.hpp"
#include "concord/rng.hpp"
#include "concord/table_csv.hpp"

namespace concord::cli {

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  }
  return in;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  }
  out << content;
  if (!out) {
    throw Error(ErrorCode::Io, "failed writing '" + path + "'");
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    items.push_back(item);
  }
  return items;
}

double parse_double(std::string_view s, std::string_view what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("{} '{}' is not a number", what, std::string(s)));
  }
  return value;
}

GuessingModel model_from(const RunConfig& cfg) {
  std::vector<double> p;
  for (const auto& item : split_list(cfg.p_vector)) {
    p.push_back(parse_double(item, "probability"));
  }
  std::optional<CategoryScheme> scheme;
  if (!cfg.labels.empty()) {
    scheme = CategoryScheme(split_list(cfg.labels));
  }
  return GuessingModel(cfg.pi, std::move(p), std::move(scheme));
}

SummaryFormat parse_format(const std::string& name) {
  if (name == "text") return SummaryFormat::Text;
  if (name == "csv") return SummaryFormat::Csv;
  return SummaryFormat::Json;
}

std::string scheme_name_of(const CategoryScheme& scheme) {
  if (scheme == full_afte_scheme()) {
    return "full";
  }
  for (auto b : {BuiltinPooling::PoolInconclusives, BuiltinPooling::PoolToLean}) {
    if (scheme == builtin_pooling(b).target()) {
      return std::string(to_string(b));
    }
  }
  return "custom";
}

std::string join_percent(const std::vector<double>& v, int decimals) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out += (i ? ", " : "") + format_percent(v[i], decimals);
  }
  return out;
}

// ---------------------------------------------------------------------------

int cmd_stats(const RunConfig& cfg, std::ostream& out) {
  const auto table = load_table_csv(cfg.table_path);
  const auto summary = summarize(table);
  std::map<SummaryKey, AgreementSummary> one;
  one.emplace(SummaryKey{cfg.subject, cfg.stratum, cfg.material,
                         cfg.scheme_name.value_or(scheme_name_of(table.scheme()))},
              summary);
  const DisplayOptions display{cfg.percent_decimals, cfg.kappa_decimals};
  out << render_summary(one, parse_format(cfg.format), display);
  if (cfg.format == "text") {
    out << "row marginals: " << join_percent(summary.row_marginals, cfg.percent_decimals) << '\n';
    out << "col marginals: " << join_percent(summary.col_marginals, cfg.percent_decimals) << '\n';
  }
  return kExitOk;
}

PoolingScheme pooling_from(const RunConfig& cfg, const CategoryScheme& source) {
  if (!cfg.pooling_file.empty()) {
    auto in = open_input(cfg.pooling_file);
    return parse_pooling(in, source);
  }
  auto pooling = builtin_pooling(cfg.pooling_name);
  if (!(pooling.source() == source)) {
    throw Error(ErrorCode::SchemeMismatch,
                "builtin poolings apply to the six AFTE categories only");
  }
  return pooling;
}

int cmd_pool(const RunConfig& cfg, std::ostream& out) {
  const auto table = load_table_csv(cfg.table_path);
  const auto pooled = apply_pooling(table, pooling_from(cfg, table.scheme()));
  std::ostringstream csv;
  write_table_csv(csv, pooled);
  if (cfg.output_path.empty()) {
    out << csv.str();
  } else {
    write_file(cfg.output_path, csv.str());
  }
  return kExitOk;
}

int cmd_model(const RunConfig& cfg, std::ostream& out) {
  const auto model = model_from(cfg);
  const auto table = model_table(model);
  const auto summary = cohen_kappa(table);
  write_proportion_csv(out, table);
  out << fmt::format("# pi={} gamma={}\n", model.pi(), model.gamma());
  out << fmt::format("# p_observed={} p_expected={}\n", summary.p_observed,
                     summary.p_expected);
  const auto kappa = model_kappa(model);
  out << "# kappa=" << (kappa ? fmt::format("{}", *kappa) : "NA (degenerate)") << '\n';
  return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  const auto model = model_from(cfg);
  const auto table = simulate_run(model, cfg.n, cfg.seed);
  const auto summary = summarize(table);
  write_table_csv(out, table);
  out << fmt::format("# seed={} generator={} n={}\n", cfg.seed, kGeneratorId, cfg.n);
  out << fmt::format("# pi={} p_observed={} p_expected={} kappa_hat={}\n",
                     model.pi(), summary.p_observed, summary.p_expected,
                     summary.kappa ? fmt::format("{}", *summary.kappa) : "NA");
  return kExitOk;
}

int cmd_signtest(const RunConfig& cfg, std::ostream& out) {
  auto in = open_input(cfg.input_path);
  std::vector<double> differences;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    const auto fields = split_list(line);
    if (fields.size() != 2) {
      throw Error(ErrorCode::MalformedRow, "expected 'observed,expected'", line_no);
    }
    if (line_no == 1 && fields[0] == "observed" && fields[1] == "expected") {
      continue;
    }
    try {
      differences.push_back(parse_double(fields[0], "observed") -
                            parse_double(fields[1], "expected"));
    } catch (const Error& e) {
      throw Error(ErrorCode::MalformedRow, e.what(), line_no);
    }
  }
  out << render_sign_test(sign_test(differences), cfg.input_path);
  return kExitOk;
}

int cmd_plot(const RunConfig& cfg, std::ostream& out) {
  auto in = open_input(cfg.input_path);
  ScatterSpec spec;
  spec.isolines = cfg.isolines;
  spec.title = cfg.title;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line_no == 1) {
      if (line != "subject,p_expected,p_observed") {
        throw Error(ErrorCode::BadHeader, "expected 'subject,p_expected,p_observed'", 1);
      }
      continue;
    }
    if (line.empty()) {
      continue;
    }
    const auto f = split_list(line);
    if (f.size() != 3) {
      throw Error(ErrorCode::MalformedRow, "expected 3 fields", line_no);
    }
    try {
      spec.points.push_back({parse_double(f[1], "p_expected"), parse_double(f[2], "p_observed"),
                             f[0]});
    } catch (const Error& e) {
      throw Error(ErrorCode::MalformedRow, e.what(), line_no);
    }
  }
  const auto path = cfg.output_stem + ".svg";
  write_file(path, scatter_plot(spec));
  out << "wrote " << path << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct NamedPooling {
  std::string name;
  PoolingScheme pooling;
};

std::string title_case(std::string s) {
  if (!s.empty()) {
    s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  }
  return s;
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  const auto scheme = full_afte_scheme();
  const auto records = load_records(cfg.records_path, scheme);
  const std::set<std::string> excluded(cfg.excluded.begin(), cfg.excluded.end());

  std::vector<NamedPooling> schemes{
      {"full", identity_pooling(scheme)},
      {"pool_inconclusives", builtin_pooling(BuiltinPooling::PoolInconclusives)},
      {"pool_to_lean", builtin_pooling(BuiltinPooling::PoolToLean)},
  };
  if (!cfg.pooling_file.empty()) {
    auto in = open_input(cfg.pooling_file);
    schemes.push_back({"custom", parse_pooling(in, scheme)});
  }
  const DisplayOptions display{cfg.percent_decimals, cfg.kappa_decimals};

  struct Mode {
    std::string name;
    std::vector<PairedEvaluation> pairs;
  };
  const std::vector<Mode> modes{{"repeatability", repeatability_pairs(records)},
                                {"reproducibility", reproducibility_pairs(records)}};

  out << fmt::format("records: {}\n", records.size());
  for (const auto& mode : modes) {
    const auto stem = cfg.output_stem + "-" + mode.name;
    auto tables = build_tables(mode.pairs, scheme, GroupBy::PerSubject, excluded);
    tables.merge(build_tables(mode.pairs, scheme, GroupBy::PooledOverSubjects, excluded));
    if (tables.empty()) {
      out << fmt::format("{}: no pairs\n", mode.name);
      continue;
    }

    std::map<SummaryKey, AgreementSummary> summaries;
    for (const auto& named : schemes) {
      for (const auto& [key, table] : tables) {
        summaries.emplace(SummaryKey{key.subject, std::string(to_string(key.stratum)),
                                     std::string(to_string(key.material)), named.name},
                          summarize(apply_pooling(table, named.pooling)));
      }
    }

    // Per-subject groups drive the sign tests and the scatter plots.
    std::map<std::tuple<std::string, std::string, std::string>, std::vector<ScatterPoint>> groups;
    for (const auto& [key, s] : summaries) {
      if (key.subject == kAllSubjects) {
        continue;
      }
      groups[{key.material, key.stratum, key.scheme}].push_back(
          {s.p_expected, s.p_observed, key.subject});
    }

    std::string text = render_summary(summaries, SummaryFormat::Text, display);
    std::vector<std::string> written;
    for (const auto& [group, points] : groups) {
      const auto& [material, stratum, scheme_name] = group;
      const auto label = fmt::format("{} {} {} {}", mode.name, material, stratum, scheme_name);
      std::vector<double> differences;
      for (const auto& p : points) {
        differences.push_back(p.p_observed - p.p_expected);
      }
      text += '\n';
      try {
        text += render_sign_test(sign_test(differences), label);
      } catch (const Error& e) {
        text += fmt::format("sign test: {}\n  not computed: {}\n", label, e.what());
      }

      ScatterSpec spec;
      spec.points = points;
      spec.isolines = cfg.isolines;
      spec.title = fmt::format("{}. {} {}, {} scoring", title_case(mode.name), title_case(stratum),
                               material, scheme_name);
      const auto svg_path = fmt::format("{}-{}-{}-{}.svg", stem, material, stratum, scheme_name);
      write_file(svg_path, scatter_plot(spec));
      written.push_back(svg_path);
    }

    write_file(stem + ".summary.csv", render_summary(summaries, SummaryFormat::Csv, display));
    write_file(stem + ".summary.txt", text);
    out << fmt::format("{}: {} pairs, {} tables\n", mode.name, mode.pairs.size(), tables.size());
    out << "wrote " << stem << ".summary.csv\n";
    out << "wrote " << stem << ".summary.txt\n";
    for (const auto& path : written) {
      out << "wrote " << path << '\n';
    }
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"concord: agreement, kappa and guessing-model analysis of categorical conclusions",
               "concord"};
  app.require_subcommand(1);

  const std::vector<std::string> formats{"text", "csv", "json"};
  auto add_display = [&](CLI::App* sub) {
    sub->add_option("--decimals", cfg.percent_decimals, "Decimals for percentages")
        ->check(CLI::Range(0, 10))
        ->capture_default_str();
    sub->add_option("--kappa-decimals", cfg.kappa_decimals, "Decimals for kappa")
        ->check(CLI::Range(0, 15))
        ->capture_default_str();
  };

  auto* stats = app.add_subcommand("stats", "P_o, P_e, kappa and marginals of a table CSV");
  stats->add_option("--table", cfg.table_path, "Table CSV")->required();
  stats->add_option("--format", cfg.format, "text, csv or json")
      ->check(CLI::IsMember(formats))
      ->capture_default_str();
  stats->add_option("--subject", cfg.subject, "Subject column value")->capture_default_str();
  stats->add_option("--stratum", cfg.stratum, "Stratum column value")->capture_default_str();
  stats->add_option("--material", cfg.material, "Material column value")->capture_default_str();
  stats->add_option("--scheme", cfg.scheme_name,
                    "Scheme column value (default: detected from the labels)");
  add_display(stats);

  auto* pool = app.add_subcommand("pool", "Pool the categories of a table CSV");
  pool->add_option("--table", cfg.table_path, "Table CSV")->required();
  auto* builtin = pool->add_option("--pooling", cfg.pooling_name,
                                   "pool_inconclusives or pool_to_lean");
  auto* custom = pool->add_option("--pooling-file", cfg.pooling_file,
                                  "File of 'source -> target' lines");
  builtin->excludes(custom);
  custom->excludes(builtin);
  pool->add_option("--out", cfg.output_path, "Write the pooled CSV here instead of stdout");

  auto* analyze = app.add_subcommand(
      "analyze", "Repeatability and reproducibility summaries, sign tests and plots");
  analyze->add_option("--records", cfg.records_path, "Records CSV")->required();
  analyze->add_option("--out", cfg.output_stem, "Output stem")->required();
  analyze->add_option("--exclude", cfg.excluded, "Drop pairs with this conclusion (repeatable)");
  analyze->add_option("--pooling-file", cfg.pooling_file, "Extra custom scoring scheme");
  analyze->add_option("--isoline", cfg.isolines, "Kappa isolines to draw")->capture_default_str();
  add_display(analyze);

  auto* model = app.add_subcommand("model", "Closed-form guessing-model table and kappa");
  auto* sim = app.add_subcommand("simulate", "Simulate one guessing-model rater twice");
  for (auto* sub : {model, sim}) {
    sub->add_option("--pi", cfg.pi, "Precise-perception rate in [0, 1]")->required();
    sub->add_option("--p", cfg.p_vector, "Comma-separated category probabilities")->required();
    sub->add_option("--labels", cfg.labels, "Comma-separated category labels");
  }
  sim->add_option("--n", cfg.n, "Sequence length")->check(CLI::PositiveNumber)->capture_default_str();
  sim->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();

  auto* signtest = app.add_subcommand("signtest", "One-sided sign test on observed,expected rows");
  signtest->add_option("--input", cfg.input_path, "CSV of observed,expected")->required();

  auto* plot = app.add_subcommand("plot", "Observed-vs-expected scatter SVG");
  plot->add_option("--input", cfg.input_path, "CSV of subject,p_expected,p_observed")->required();
  plot->add_option("--out", cfg.output_stem, "Output stem (writes <stem>.svg)")->required();
  plot->add_option("--isoline", cfg.isolines, "Kappa isolines to draw")->capture_default_str();
  plot->add_option("--title", cfg.title, "Plot title");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "concord: usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  if (cfg.subcommand == "pool" && cfg.pooling_name.empty() && cfg.pooling_file.empty()) {
    err << "concord: usage error: pool needs --pooling or --pooling-file\n";
    return kExitUsage;
  }

  try {
    if (cfg.subcommand == "stats") return cmd_stats(cfg, out);
    if (cfg.subcommand == "pool") return cmd_pool(cfg, out);
    if (cfg.subcommand == "analyze") return cmd_analyze(cfg, out);
    if (cfg.subcommand == "model") return cmd_model(cfg, out);
    if (cfg.subcommand == "simulate") return cmd_simulate(cfg, out);
    if (cfg.subcommand == "signtest") return cmd_signtest(cfg, out);
    if (cfg.subcommand == "plot") return cmd_plot(cfg, out);
  } catch (const Error& e) {
    err << "concord: " << e.what() << '\n';
    return kExitFailure;
  }
  err << "concord: usage error: unknown subcommand\n";
  return kExitUsage;
}

}  // namespace concord::cli
