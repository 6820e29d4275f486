#include "primstab/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "primstab/representation.hpp"
#include "primstab/serialization.hpp"
#include "primstab/whitehead.hpp"

namespace primstab::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

struct RunConfig {
  std::string word;
  std::string rep_source;
  std::string example_name;
  int rank = 0;  // 0: infer from the word
  int max_length = 8;
  int n_max = 4;
  int l_max = 10;
  int repetitions = 0;
  int window = 5;
  double schottky_s = 2.0 * std::numbers::ln2 * 2.0;  // 2 ln 4
  std::string format;
  std::string out_path;
  std::string base_point;
  bool no_invert_dedup = false;
  double tol_parabolic = 1e-9;
};

// Usage errors detected after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Word parse_input_word(const RunConfig& cfg) {
  const int rank = cfg.rank > 0 ? cfg.rank : infer_rank(cfg.word);
  return parse_word(cfg.word, rank);
}

H3Point parse_base_point(const std::string& text) {
  std::stringstream in(text);
  std::vector<double> parts;
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--base-point expects re,im,t");
    }
  }
  if (parts.size() != 3) throw UsageError("--base-point expects re,im,t");
  return H3Point({parts[0], parts[1]}, parts[2]);
}

Representation builtin_representation(const std::string& name, double s) {
  if (name == "schottky") return make_schottky_pair(s);
  if (name == "sanov") return make_sanov();
  if (name == "ptorus") return make_punctured_torus();
  throw UsageError("unknown example '" + name + "' (expected schottky, sanov or ptorus)");
}

Representation load_representation(const RunConfig& cfg) {
  constexpr std::string_view scheme = "builtin:";
  if (cfg.rep_source.starts_with(scheme)) {
    std::string name = cfg.rep_source.substr(scheme.size());
    double s = cfg.schottky_s;
    if (auto colon = name.find(':'); colon != std::string::npos) {
      try {
        s = std::stod(name.substr(colon + 1));
      } catch (const std::exception&) {
        throw UsageError("bad parameter in '" + cfg.rep_source + "'");
      }
      name.resize(colon);
    }
    return builtin_representation(name, s);
  }
  std::ifstream in(cfg.rep_source);
  if (!in) throw UsageError("cannot read representation file '" + cfg.rep_source + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return representation_from_json(buffer.str());
}

ordered_json json_number(double value) {
  if (std::isfinite(value)) return value;
  return format_number(value);
}

// ---------------------------------------------------------------------------

int cmd_primitive(const RunConfig& cfg, std::ostream& out) {
  const Word w = parse_input_word(cfg);
  const CyclicReduction red = cyclic_reduce(w);
  const auto report = connectivity_report(whitehead_graph(red.cyclic));
  const Separability sep = whitehead_separability_test(red.cyclic);
  const PrimitivityVerdict verdict = minimize(red.cyclic);

  out << "word: " << w.to_string() << "\n";
  out << "rank: " << w.rank() << "\n";
  out << "cyclic_word: " << red.cyclic.to_string() << "\n";
  out << "conjugator: " << red.conjugator.to_string() << "\n";
  out << "whitehead_graph: connected=" << (report.is_connected ? "yes" : "no") << " cut_vertices=";
  if (report.cut_vertices.empty()) out << "none";
  for (std::size_t i = 0; i < report.cut_vertices.size(); ++i) {
    out << (i ? "," : "") << report.cut_vertices[i].to_char();
  }
  out << "\n";
  out << "separability_test: " << to_string(sep) << "\n";
  out << "verdict: " << (verdict.is_primitive ? "primitive" : "not primitive") << "\n";
  out << "minimal_length: " << verdict.minimal_length << "\n";
  out << "reduction_trace:";
  if (verdict.reduction_trace.empty()) out << " (none)";
  out << "\n";
  for (std::size_t i = 0; i < verdict.reduction_trace.size(); ++i) {
    const auto& step = verdict.reduction_trace[i];
    out << "  " << (i + 1) << ". " << step.automorphism.to_string() << " -> " << step.result.to_string() << "\n";
  }
  return verdict.is_primitive ? kExitOk : kExitNegative;
}

int cmd_enumerate(const RunConfig& cfg, std::ostream& out) {
  const int rank = cfg.rank > 0 ? cfg.rank : 2;
  const auto classes = enumerate_primitive_classes(rank, cfg.max_length, !cfg.no_invert_dedup);
  if (cfg.format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& c : classes) arr.push_back(c.to_string());
    out << arr.dump() << "\n";
  } else {
    for (const auto& c : classes) out << c.to_string() << "," << c.size() << "\n";
  }
  return kExitOk;
}

int cmd_whgraph(const RunConfig& cfg, std::ostream& out) {
  const CyclicWord c = cyclic_reduce(parse_input_word(cfg)).cyclic;
  const WhiteheadGraph g = whitehead_graph(c);
  out << (cfg.format == "json" ? whitehead_json(g, c.to_string()) : whitehead_dot(g, c.to_string()));
  return kExitOk;
}

int cmd_blocking(const RunConfig& cfg, std::ostream& out) {
  const CyclicWord g = cyclic_reduce(parse_input_word(cfg)).cyclic;
  const BlockingReport report = blocking_witness(g, cfg.n_max, cfg.l_max);
  const std::string label = "bounded evidence (n <= " + std::to_string(cfg.n_max) +
                            ", primitive length <= " + std::to_string(cfg.l_max) + ")";
  out << "word: " << g.to_string() << "\n";
  for (const auto& probe : report.probes) {
    out << "n=" << probe.n << ": ";
    if (probe.vacuous) {
      out << "power longer than " << cfg.l_max << ", nothing searched\n";
    } else if (probe.occurs) {
      out << "occurs in primitive " << probe.host->to_string() << "\n";
    } else {
      out << "no occurrence in primitive classes of length <= " << cfg.l_max << "\n";
    }
  }
  if (report.witness) {
    out << "result: witness n = " << *report.witness;
    if (report.bound_limited) out << " (bound-limited)";
    out << "\n";
  } else {
    out << "result: inconclusive at these bounds\n";
  }
  out << "label: " << label << "\n";
  return report.witness ? kExitOk : kExitNegative;
}

std::string ping_pong_status(const Representation& rho) {
  try {
    return to_string(ping_pong_certificate(rho));
  } catch (const NumericError& e) {
    return std::string("unavailable (") + e.what() + ")";
  }
}

int cmd_psreport(const RunConfig& cfg, std::ostream& out) {
  const Representation rho = load_representation(cfg);
  MetricParams params;
  params.repetitions = cfg.repetitions;
  params.window = cfg.window;
  params.tolerances.parabolic = cfg.tol_parabolic;
  if (!cfg.base_point.empty()) params.base_point = parse_base_point(cfg.base_point);

  const PSReport report = ps_report(rho, cfg.max_length, params, thread_count_from_env(), !cfg.no_invert_dedup);
  const std::string certificate = ping_pong_status(rho);

  if (cfg.format == "json") {
    ordered_json rows = ordered_json::array();
    for (const auto& r : report.rows) {
      ordered_json row;
      row["class"] = r.word_class.to_string();
      row["length"] = r.word_length;
      if (r.overflow) {
        row["trace_class"] = "overflow";
      } else {
        row["trace_class"] = to_string(r.trace_class);
        row["near_parabolic"] = r.near_parabolic;
        row["translation_length"] = json_number(r.translation_length);
        row["slope_lower"] = json_number(r.slope_lower);
        row["additive_defect"] = json_number(r.additive_defect);
        row["upper_constant"] = json_number(r.upper_constant);
        row["axis_margin"] = json_number(r.axis_margin);
      }
      row["degenerate"] = r.degenerate;
      row["overflow"] = r.overflow;
      rows.push_back(row);
    }
    ordered_json trend = ordered_json::array();
    for (const auto& t : report.trend) {
      trend.push_back({{"length", t.length},
                       {"classes", t.classes},
                       {"min_slope_lower", json_number(t.min_slope_lower)},
                       {"max_axis_margin", json_number(t.max_axis_margin)},
                       {"degenerate", t.degenerate}});
    }
    ordered_json doc;
    doc["label"] = rho.label();
    doc["rows"] = rows;
    doc["summary"] = {{"classes", report.rows.size()},
                      {"min_slope_lower", json_number(report.min_slope_lower)},
                      {"max_axis_margin", json_number(report.max_axis_margin)},
                      {"degenerate", report.degenerate_count},
                      {"overflow", report.overflow_count},
                      {"ping_pong", certificate},
                      {"evidence", "numeric evidence"},
                      {"trend", trend}};
    out << doc.dump(2) << "\n";
  } else {
    out << "class,length,trace_class,translation_length,slope_lower,axis_margin,degenerate\n";
    for (const auto& r : report.rows) {
      out << r.word_class.to_string() << "," << r.word_length << ",";
      if (r.overflow) {
        out << "overflow,nan,nan,nan,overflow\n";
        continue;
      }
      out << to_string(r.trace_class) << "," << format_number(r.translation_length) << ","
          << format_number(r.slope_lower) << "," << format_number(r.axis_margin) << ","
          << (r.degenerate ? 1 : 0) << "\n";
    }
    out << "# label," << rho.label() << "\n";
    out << "# classes," << report.rows.size() << "\n";
    out << "# min_slope_lower," << format_number(report.min_slope_lower) << "\n";
    out << "# max_axis_margin," << format_number(report.max_axis_margin) << "\n";
    out << "# degenerate," << report.degenerate_count << "\n";
    out << "# overflow," << report.overflow_count << "\n";
    out << "# ping_pong," << certificate << "\n";
    out << "# evidence,numeric evidence\n";
    out << "# trend,length,classes,min_slope_lower,max_axis_margin,degenerate\n";
    for (const auto& t : report.trend) {
      out << "# trend," << t.length << "," << t.classes << "," << format_number(t.min_slope_lower) << ","
          << format_number(t.max_axis_margin) << "," << t.degenerate << "\n";
    }
  }
  return report.degenerate_count > 0 ? kExitNegative : kExitOk;
}

int cmd_examples(const RunConfig& cfg, std::ostream& out) {
  out << representation_to_json(builtin_representation(cfg.example_name, cfg.schottky_s));
  return kExitOk;
}

}  // namespace

int thread_count_from_env() {
  if (const char* env = std::getenv("PRIMSTAB_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Primitive-stability diagnostics for free-group words and PSL(2,C) representations",
               "primstab"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto positive = CLI::PositiveNumber;
  auto add_rank = [&](CLI::App* sub) { sub->add_option("--rank", cfg.rank, "Rank of the free group")->check(CLI::Range(1, kMaxRank)); };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", cfg.out_path, "Write output to this file"); };

  auto* primitive = app.add_subcommand("primitive", "Decide primitivity with a Whitehead reduction trace");
  primitive->add_option("word", cfg.word, "Word, e.g. abAB")->required();
  add_rank(primitive);
  add_out(primitive);

  auto* enumerate = app.add_subcommand("enumerate", "List primitive conjugacy classes");
  add_rank(enumerate);
  enumerate->add_option("--max-length", cfg.max_length, "Maximal cyclic length")->check(positive);
  enumerate->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  enumerate->add_flag("--no-invert-dedup", cfg.no_invert_dedup, "List w and w^-1 separately");
  add_out(enumerate);

  auto* whgraph = app.add_subcommand("whgraph", "Emit the Whitehead graph of a word");
  whgraph->add_option("word", cfg.word, "Word")->required();
  add_rank(whgraph);
  whgraph->add_option("--format", cfg.format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
  add_out(whgraph);

  auto* blocking = app.add_subcommand("blocking", "Bounded search for a blocking power");
  blocking->add_option("word", cfg.word, "Word")->required();
  add_rank(blocking);
  blocking->add_option("--n-max", cfg.n_max, "Largest power tried")->check(positive);
  blocking->add_option("--l-max", cfg.l_max, "Longest primitive host searched")->check(positive);
  add_out(blocking);

  auto* psreport = app.add_subcommand("psreport", "Quasi-geodesic metrics over primitive classes");
  psreport->add_option("rep", cfg.rep_source, "Representation file or builtin:NAME[:s]")->required();
  psreport->add_option("--max-length", cfg.max_length, "Maximal cyclic length")->check(positive);
  psreport->add_option("--reps", cfg.repetitions, "Periods per orbit path (default: mR >= 60, R >= 4)")
      ->check(CLI::Range(2, 1 << 20));
  psreport->add_option("--window", cfg.window, "Minimal index separation for slopes")->check(positive);
  psreport->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  psreport->add_option("--base-point", cfg.base_point, "Base point re,im,t");
  psreport->add_option("--tol-parabolic", cfg.tol_parabolic, "Tolerance on |tr^2 - 4|")->check(positive);
  psreport->add_flag("--no-invert-dedup", cfg.no_invert_dedup, "Treat w and w^-1 as separate classes");
  add_out(psreport);

  auto* examples = app.add_subcommand("examples", "Write a built-in representation file");
  examples->add_option("name", cfg.example_name, "schottky, sanov or ptorus")
      ->required()
      ->check(CLI::IsMember({"schottky", "sanov", "ptorus"}));
  examples->add_option("--s", cfg.schottky_s, "Schottky translation length")->check(positive);
  add_out(examples);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::function<int(const RunConfig&, std::ostream&)> command;
  if (*primitive) command = cmd_primitive;
  else if (*enumerate) command = cmd_enumerate;
  else if (*whgraph) command = cmd_whgraph;
  else if (*blocking) command = cmd_blocking;
  else if (*psreport) command = cmd_psreport;
  else command = cmd_examples;

  try {
    if (cfg.out_path.empty()) return command(cfg, out);
    std::ostringstream buffer;
    const int code = command(cfg, buffer);
    std::ofstream file(cfg.out_path, std::ios::binary);
    if (!file) throw UsageError("cannot write '" + cfg.out_path + "'");
    file << buffer.str();
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const NumericError& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("primstab");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace primstab::cli
