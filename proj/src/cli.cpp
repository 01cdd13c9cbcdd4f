#include "qew/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace qew::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '\r', ' ');
  return s;
}

// whole-file write: assemble, write to <path>.tmp, rename into place
void write_atomic(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw ParseError("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
  std::cout << "wrote " << path.string() << '\n';
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// the first header field names the id column
std::string id_column_of(const std::string& text, char delimiter) {
  std::string head = text.substr(0, std::min(text.find('\n'), text.size()));
  head = head.substr(0, std::min(head.find(delimiter), head.size()));
  if (!head.empty() && head.back() == '\r') head.pop_back();
  if (head.size() >= 3 && head[0] == '\xEF' && head[1] == '\xBB' && head[2] == '\xBF')
    head.erase(0, 3);
  return head;
}

IndicatorMatrix load_matrix(const CliConfig& config, RawSupplyData* raw_out = nullptr) {
  const bool has_supply = !config.supply_csv.empty();
  const bool has_indicators = !config.indicators_csv.empty();
  if (has_supply == has_indicators)
    throw ParseError("exactly one of --supply and --indicators is required");

  if (has_indicators) {
    if (!config.orders_csv.empty())
      throw ParseError("--orders only applies to --supply input");
    return parse_indicator_csv(read_file(config.indicators_csv), config.delimiter);
  }

  const std::string supply_text = read_file(config.supply_csv);
  CsvSchema schema;
  schema.delimiter = config.delimiter;
  schema.id_column = id_column_of(supply_text, config.delimiter);
  RawSupplyData data = parse_supply_csv(supply_text, schema);

  bool with_orders = false;
  if (!config.orders_csv.empty()) {
    const std::string orders_text = read_file(config.orders_csv);
    CsvSchema orders_schema = schema;
    orders_schema.id_column = id_column_of(orders_text, config.delimiter);
    attach_orders(data, parse_supply_csv(orders_text, orders_schema));
    with_orders = true;
  }
  if (raw_out) *raw_out = data;
  return derive_indicators(data, with_orders);
}

QModelConfig q_config(const CliConfig& config) {
  QModelConfig q;
  q.grey = config.grey;
  q.solver = config.solver;
  q.weight_mode = config.q_weight_mode;
  return q;
}

std::string scores_csv(const ScoreTable& table) {
  std::vector<std::size_t> order(table.ids.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return table.rank[a] < table.rank[b]; });
  std::ostringstream out;
  out << "serial,id,score,d_plus,d_minus,rank\n";
  std::size_t serial = 1;
  for (std::size_t i : order) {
    out << serial++ << ',' << table.ids[i] << ',' << fmt6(table.scores[i]) << ','
        << fmt6(table.d_plus[i]) << ',' << fmt6(table.d_minus[i]) << ',' << table.rank[i] << '\n';
  }
  return out.str();
}

std::string matrix_csv(const Matrix& values, const std::vector<std::string>& ids,
                       const std::vector<std::string>& names) {
  std::ostringstream out;
  out << "id";
  for (const std::string& name : names) out << ',' << name;
  out << '\n';
  for (std::size_t i = 0; i < values.rows(); ++i) {
    out << ids[i];
    for (std::size_t j = 0; j < values.cols(); ++j) out << ',' << fmt6(values(i, j));
    out << '\n';
  }
  return out.str();
}

// flat weight/entropy table mirroring the weights.json content
std::string weights_csv(const json& doc) {
  std::ostringstream out;
  out << "method,indicator,weight,entropy,utility,q\n";
  const std::vector<std::string> names = doc["indicators"];
  for (const char* method : {"shannon", "gra", "tsallis", "cv", "critic", "iw"}) {
    if (!doc.contains("weights") || !doc["weights"].contains(method)) continue;
    const json& weights = doc["weights"][method];
    for (std::size_t j = 0; j < names.size(); ++j) {
      out << method << ',' << names[j] << ',' << fmt6(weights[j].get<double>()) << ',';
      const bool shannon = std::string(method) == "shannon";
      const bool tsallis = std::string(method) == "tsallis";
      if (shannon && doc.contains("entropy") && doc["entropy"].contains("shannon"))
        out << fmt6(doc["entropy"]["shannon"][j].get<double>());
      if (tsallis && doc.contains("entropy") && doc["entropy"].contains("tsallis"))
        out << fmt6(doc["entropy"]["tsallis"][j].get<double>());
      out << ',';
      if (shannon && doc.contains("entropy") && doc["entropy"].contains("utility"))
        out << fmt6(doc["entropy"]["utility"][j].get<double>());
      out << ',';
      if (tsallis && doc.contains("q_values")) out << fmt6(doc["q_values"][j].get<double>());
      out << '\n';
    }
  }
  return out.str();
}

void add_q_diagnostics(json& doc, const EvaluationResult& base, const EvaluationResult& qres) {
  doc["weights"]["shannon"] = base.weight_vector.weights;
  doc["weights"]["tsallis"] = qres.weight_vector.weights;
  if (qres.grey_report) {
    doc["weights"]["gra"] = qres.grey_report->weights.weights;
    doc["xi_selected"] = qres.grey_report->xi_used;
    doc["gra_degrees"] = qres.grey_report->degrees;
  }
  doc["q_values"] = qres.entropy_report.q_values;
  doc["q_mean"] = qres.entropy_report.q_mean;
  doc["entropy"]["shannon"] = base.entropy_report.entropies;
  doc["entropy"]["utility"] = base.entropy_report.utilities;
  doc["entropy"]["tsallis"] = qres.entropy_report.entropies;
  try {
    const ComparisonDiagnostics delta =
        delta_proportions(base.weight_vector, qres.weight_vector);
    doc["delta"] = delta.delta_per_indicator;
    doc["delta_mean"] = delta.delta_mean;
  } catch (const std::exception& e) {
    doc["delta_error"] = one_line(e.what());
  }
  const auto [count, rate] = impact_rate(base.score_table, qres.score_table);
  doc["impact_count"] = count;
  doc["impact_rate"] = rate;
}

int run_guarded(const CliConfig& config, int (*body)(const CliConfig&)) {
  try {
    return body(config);
  } catch (const ParseError& e) {
    std::cerr << "error: " << one_line(e.what()) << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << one_line(e.what()) << '\n';
    return 2;
  }
}

int evaluate_body(const CliConfig& config) {
  const IndicatorMatrix matrix = load_matrix(config);
  const fs::path out = config.out_dir;

  json doc;
  doc["indicators"] = matrix.names;

  if (config.dump_matrices && config.write_csv) {
    const NormalizedMatrix norm = forward_normalize(matrix);
    write_atomic(out / "normalized.csv", matrix_csv(norm.values, matrix.ids, matrix.names));
    write_atomic(out / "probability.csv",
                 matrix_csv(probability_matrix(norm).values, matrix.ids, matrix.names));
  }

  switch (config.method) {
    case Method::Ew: {
      const EvaluationResult result = run_ew_topsis(matrix);
      if (config.write_csv) write_atomic(out / "scores.csv", scores_csv(result.score_table));
      doc["method"] = "ew";
      doc["weights"]["shannon"] = result.weight_vector.weights;
      doc["entropy"]["shannon"] = result.entropy_report.entropies;
      doc["entropy"]["utility"] = result.entropy_report.utilities;
      break;
    }
    case Method::Qew: {
      const EvaluationResult base = run_ew_topsis(matrix);
      const EvaluationResult qres = run_q_ew_topsis(matrix, q_config(config));
      if (config.write_csv) write_atomic(out / "scores.csv", scores_csv(qres.score_table));
      doc["method"] = "qew";
      add_q_diagnostics(doc, base, qres);
      break;
    }
    case Method::Cv:
    case Method::Critic:
    case Method::Iw: {
      WeightVector w = config.method == Method::Cv       ? cv_weights(matrix)
                       : config.method == Method::Critic ? critic_weights(matrix)
                                                         : iw_weights(matrix);
      const std::string name = to_string(w.method);
      const EvaluationResult result = evaluate_with_weights(matrix, std::move(w));
      if (config.write_csv) write_atomic(out / "scores.csv", scores_csv(result.score_table));
      doc["method"] = name;
      doc["weights"][name] = result.weight_vector.weights;
      break;
    }
    case Method::All: {
      const std::vector<MethodOutcome> outcomes = compare_methods(matrix, q_config(config));
      doc["method"] = "all";
      const EvaluationResult* base = nullptr;
      const EvaluationResult* qres = nullptr;
      for (const MethodOutcome& outcome : outcomes) {
        const std::string name = to_string(outcome.method);
        if (!outcome.result) {
          doc["errors"][name] = one_line(outcome.error);
          continue;
        }
        const std::string file = outcome.method == WeightMethod::Shannon   ? "scores_ew.csv"
                                 : outcome.method == WeightMethod::Tsallis ? "scores_qew.csv"
                                                                           : "scores_" + name + ".csv";
        if (config.write_csv) write_atomic(out / file, scores_csv(outcome.result->score_table));
        doc["weights"][name] = outcome.result->weight_vector.weights;
        if (outcome.method == WeightMethod::Shannon) base = &*outcome.result;
        if (outcome.method == WeightMethod::Tsallis) qres = &*outcome.result;
      }
      if (base && qres) add_q_diagnostics(doc, *base, *qres);
      break;
    }
  }

  if (config.write_csv) write_atomic(out / "weights.csv", weights_csv(doc));
  if (config.write_json) write_atomic(out / "weights.json", doc.dump(2) + "\n");
  return 0;
}

int sweep_body(const CliConfig& config) {
  const IndicatorMatrix matrix = load_matrix(config);
  if (config.grey.sweep_end >= kXiUpperGuideline)
    std::cerr << "warning: xi above " << kXiUpperGuideline
              << " discriminates poorly between sequences\n";

  const EvaluationResult base = run_ew_topsis(matrix);
  const NormalizedMatrix norm = forward_normalize(matrix);
  std::vector<double> reference(base.score_table.scores.size());
  for (std::size_t i = 0; i < reference.size(); ++i)
    reference[i] = base.score_table.scores[i] / 100.0;

  const XiSweepResult sweep = xi_sweep(reference, norm, base.weight_vector, config.grey);

  std::ostringstream csv;
  csv << "xi";
  for (const std::string& name : matrix.names) csv << ",w_" << name;
  csv << ",distance\n";
  for (const XiSweepRow& row : sweep.rows) {
    csv << fmt6(row.xi);
    for (double w : row.weights) csv << ',' << fmt6(w);
    csv << ',' << fmt6(row.distance) << '\n';
  }
  if (config.write_csv) write_atomic(config.out_dir / "xi_sweep.csv", csv.str());

  if (config.write_json) {
    json doc;
    doc["xi_selected"] = sweep.best_xi;
    doc["indicators"] = matrix.names;
    doc["weights"]["gra"] = sweep.report.weights.weights;
    doc["weights"]["shannon"] = base.weight_vector.weights;
    doc["grid_points"] = sweep.rows.size();
    write_atomic(config.out_dir / "xi_selected.json", doc.dump(2) + "\n");
  }
  std::cout << "selected_xi=" << fmt6(sweep.best_xi) << '\n';
  return 0;
}

int robustness_body(const CliConfig& config) {
  if (!config.indicators_csv.empty())
    throw ParseError("robustness needs raw supply data (--supply), not --indicators");
  RawSupplyData data;
  load_matrix(config, &data);

  std::vector<std::size_t> sizes = config.subset_sizes;
  if (sizes.empty()) {
    // ten evenly spaced sizes from max(2, m/10) up to m
    const std::size_t m = data.suppliers.size();
    const std::size_t lo = std::max<std::size_t>(2, m / 10);
    for (int k = 0; k < 10; ++k)
      sizes.push_back(lo + static_cast<std::size_t>(std::llround(
                               static_cast<double>(k) * static_cast<double>(m - lo) / 9.0)));
  }

  const RobustnessReport report = robustness_sweep(data, sizes, config.seed, q_config(config));
  const std::size_t n = report.indicator_names.size();

  std::ostringstream csv;
  csv << "iteration,subset_size";
  for (const std::string& name : report.indicator_names) csv << ",w0_" << name;
  for (const std::string& name : report.indicator_names) csv << ",w1_" << name;
  for (const std::string& name : report.indicator_names) csv << ",relerr0_" << name;
  for (const std::string& name : report.indicator_names) csv << ",relerr1_" << name;
  csv << '\n';
  for (std::size_t it = 0; it < report.iterations.size(); ++it) {
    const RobustnessIteration& row = report.iterations[it];
    csv << (it + 1) << ',' << row.subset_size;
    for (std::size_t j = 0; j < n; ++j) csv << ',' << fmt6(row.w0[j]);
    for (std::size_t j = 0; j < n; ++j) csv << ',' << fmt6(row.w1[j]);
    for (std::size_t j = 0; j < n; ++j) csv << ',' << fmt6(row.rel_err0[j]);
    for (std::size_t j = 0; j < n; ++j) csv << ',' << fmt6(row.rel_err1[j]);
    csv << '\n';
  }
  if (config.write_csv) write_atomic(config.out_dir / "robustness.csv", csv.str());

  if (config.write_json) {
    json doc;
    doc["indicators"] = report.indicator_names;
    doc["iterations"] = report.iterations.size();
    doc["seed"] = config.seed;
    doc["subset_sizes"] = sizes;
    doc["w0_mean"] = report.w0_mean;
    doc["w1_mean"] = report.w1_mean;
    doc["w0_var"] = report.w0_var;
    doc["w1_var"] = report.w1_var;
    write_atomic(config.out_dir / "summary.json", doc.dump(2) + "\n");
  }
  return 0;
}

}  // namespace

Method parse_method(const std::string& name) {
  if (name == "ew") return Method::Ew;
  if (name == "qew") return Method::Qew;
  if (name == "cv") return Method::Cv;
  if (name == "critic") return Method::Critic;
  if (name == "iw") return Method::Iw;
  if (name == "all") return Method::All;
  throw ParseError("unknown method '" + name + "' (expected ew|qew|cv|critic|iw|all)");
}

int cmd_evaluate(const CliConfig& config) { return run_guarded(config, evaluate_body); }
int cmd_sweep_xi(const CliConfig& config) { return run_guarded(config, sweep_body); }
int cmd_robustness(const CliConfig& config) { return run_guarded(config, robustness_body); }

}  // namespace qew::cli
