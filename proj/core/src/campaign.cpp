#include "wildfire/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace wildfire {

namespace {

using nlohmann::json;

std::string fixed6(double v) {
  if (!std::isfinite(v)) return "NA";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw IoError("cannot create directory " + dir.string());
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

std::size_t outcome_slot(OutcomeClass o) {
  switch (o) {
    case OutcomeClass::fully_suppressed: return 0;
    case OutcomeClass::contained: return 1;
    case OutcomeClass::escaped: return 2;
  }
  return 2;
}

OutcomeClass parse_outcome(const std::string& text) {
  if (text == "fully_suppressed") return OutcomeClass::fully_suppressed;
  if (text == "contained") return OutcomeClass::contained;
  if (text == "escaped") return OutcomeClass::escaped;
  throw FileFormatError("unknown outcome class '" + text + "'");
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(line);
  while (std::getline(in, item, ',')) out.push_back(item);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

json mcts_json(const MctsConfig& m) {
  return {{"discount", m.discount},
          {"exploration_c", m.exploration_c},
          {"max_depth", m.max_depth},
          {"iteration_limit", m.iteration_limit},
          {"time_limit_s", m.time_limit_s ? json(*m.time_limit_s) : json(nullptr)},
          {"schedule_depth", m.schedule_depth}};
}

json drone_json(const DronePosition& d) { return json::array({d.x, d.y, d.z}); }

// Minimal SVG line chart of mean with a shaded 95% band.
void write_series_svg(std::ostream& out, const std::string& title, const std::vector<Summary>& series) {
  constexpr double W = 640, H = 360, L = 60, R = 20, T = 40, B = 40;
  double lo = 0.0, hi = 1e-9;
  for (const auto& s : series) {
    for (double v : {s.mean, s.has_ci() ? s.ci_low() : s.mean, s.has_ci() ? s.ci_high() : s.mean}) {
      if (std::isfinite(v)) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
  }
  const double n = std::max<double>(1.0, static_cast<double>(series.size()) - 1.0);
  auto px = [&](std::size_t i) { return L + (W - L - R) * static_cast<double>(i) / n; };
  auto py = [&](double v) { return H - B - (H - T - B) * (v - lo) / (hi - lo); };
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  out << "<text x=\"" << L << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  out << "<text x=\"4\" y=\"" << T + 4 << "\" font-size=\"10\">" << fixed6(hi) << "</text>\n";
  out << "<text x=\"4\" y=\"" << H - B << "\" font-size=\"10\">" << fixed6(lo) << "</text>\n";
  if (!series.empty()) {
    bool band = std::all_of(series.begin(), series.end(), [](const Summary& s) { return s.has_ci(); });
    if (band) {
      out << "<polygon fill=\"steelblue\" fill-opacity=\"0.25\" stroke=\"none\" points=\"";
      for (std::size_t i = 0; i < series.size(); ++i) out << fixed6(px(i)) << ',' << fixed6(py(series[i].ci_high())) << ' ';
      for (std::size_t i = series.size(); i-- > 0;) out << fixed6(px(i)) << ',' << fixed6(py(series[i].ci_low())) << ' ';
      out << "\"/>\n";
    }
    out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < series.size(); ++i) out << fixed6(px(i)) << ',' << fixed6(py(series[i].mean)) << ' ';
    out << "\"/>\n";
  }
  out << "</svg>\n";
}

// Horizontal bars, one group per label.
void write_bar_svg(std::ostream& out, const std::string& title, const std::vector<std::string>& labels,
                   const std::vector<std::vector<double>>& values, const std::vector<std::string>& legend) {
  constexpr double W = 640, L = 160, R = 40, row_h = 18;
  double hi = 1e-9;
  for (const auto& group : values)
    for (double v : group)
      if (std::isfinite(v)) hi = std::max(hi, v);
  const std::size_t bars = legend.size();
  const double H = 60 + static_cast<double>(labels.size() * bars) * row_h + static_cast<double>(labels.size()) * 8;
  static const char* colours[] = {"seagreen", "goldenrod", "firebrick", "steelblue"};
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  out << "<text x=\"10\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
  double y = 40;
  for (std::size_t g = 0; g < labels.size(); ++g) {
    out << "<text x=\"10\" y=\"" << y + row_h - 4 << "\" font-size=\"11\">" << labels[g] << "</text>\n";
    for (std::size_t b = 0; b < bars; ++b) {
      const double v = std::isfinite(values[g][b]) ? values[g][b] : 0.0;
      out << "<rect x=\"" << L << "\" y=\"" << y << "\" width=\"" << fixed6((W - L - R) * v / hi) << "\" height=\""
          << row_h - 2 << "\" fill=\"" << colours[b % 4] << "\"><title>" << legend[b] << ' ' << fixed6(values[g][b])
          << "</title></rect>\n";
      y += row_h;
    }
    y += 8;
  }
  out << "</svg>\n";
}

std::string sanitize(const std::string& label) {
  std::string out = label;
  for (char& c : out) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_')) c = '_';
  }
  return out;
}

}  // namespace

void CampaignConfig::validate() const {
  if (runs < 1) throw ConfigError("runs must be at least 1");
  if (policies.empty()) throw ConfigError("a campaign needs at least one policy");
  if (threads < 0) throw ConfigError("threads must be non-negative");
  std::vector<std::string> labels;
  for (const auto& p : policies) {
    if (p.label.empty()) throw ConfigError("policy labels must be non-empty");
    if (std::find(labels.begin(), labels.end(), p.label) != labels.end()) {
      throw ConfigError("duplicate policy label '" + p.label + "'");
    }
    labels.push_back(p.label);
  }
  try {
    episode.validate();
  } catch (const ContractViolation& e) {
    throw ConfigError(e.what());
  }
}

EpisodeConfig CampaignConfig::episode_for(const PolicyVariant& policy) const {
  EpisodeConfig cfg = episode;
  cfg.suppression_policy = policy.suppression;
  cfg.surveillance_kind = policy.surveillance;
  return cfg;
}

std::string to_string(Metric metric) {
  switch (metric) {
    case Metric::destruction: return "destruction";
    case Metric::flame_size: return "flame_size";
    case Metric::ring_radius: return "ring_radius";
    case Metric::burning_accuracy: return "burning_accuracy";
  }
  return "?";
}

RunRecord make_record(const std::string& label, int run, std::uint64_t seed, const EpisodeLog& log, int horizon) {
  require(horizon >= 1, "horizon must be positive");
  require(!log.rows.empty(), "episode log has no rows");
  RunRecord rec;
  rec.label = label;
  rec.run = run;
  rec.seed = seed;
  rec.outcome = log.outcome;
  for (auto& s : rec.series) s.resize(static_cast<std::size_t>(horizon));
  for (int t = 0; t < horizon; ++t) {
    const auto& row = log.rows[std::min<std::size_t>(static_cast<std::size_t>(t), log.rows.size() - 1)];
    rec.series[0][t] = row.destruction;
    rec.series[1][t] = row.burning_count;
    rec.series[2][t] = row.ring_radius_m;
    rec.series[3][t] = row.burning_accuracy;
  }
  return rec;
}

const PolicyAggregate& AggregateReport::policy(const std::string& label) const {
  for (const auto& p : policies) {
    if (p.label == label) return p;
  }
  throw ContractViolation("no policy labelled '" + label + "' in report");
}

AggregateReport aggregate(std::vector<RunRecord> records, int horizon) {
  AggregateReport report;
  report.horizon = horizon;
  std::vector<std::string> order;
  for (const auto& r : records) {
    if (std::find(order.begin(), order.end(), r.label) == order.end()) order.push_back(r.label);
  }
  std::stable_sort(records.begin(), records.end(), [&](const RunRecord& a, const RunRecord& b) {
    const auto ia = std::find(order.begin(), order.end(), a.label) - order.begin();
    const auto ib = std::find(order.begin(), order.end(), b.label) - order.begin();
    return ia != ib ? ia < ib : a.run < b.run;
  });

  std::size_t begin = 0;
  for (const auto& label : order) {
    std::size_t end = begin;
    while (end < records.size() && records[end].label == label) ++end;
    const std::span<const RunRecord> group(records.data() + begin, end - begin);
    PolicyAggregate agg;
    agg.label = label;
    agg.runs = static_cast<int>(group.size());
    for (std::size_t m = 0; m < kMetrics.size(); ++m) {
      for (const auto& r : group) agg.final_samples[m].push_back(r.series[m].back());
      agg.finals[m] = summarize(agg.final_samples[m]);
      agg.series[m].reserve(static_cast<std::size_t>(horizon));
      std::vector<double> column(group.size());
      for (int t = 0; t < horizon; ++t) {
        for (std::size_t i = 0; i < group.size(); ++i) column[i] = group[i].series[m][t];
        agg.series[m].push_back(summarize(column));
      }
    }
    for (const auto& r : group) agg.outcome_fraction[outcome_slot(r.outcome)] += 1.0;
    for (double& f : agg.outcome_fraction) f /= static_cast<double>(group.size());
    report.policies.push_back(std::move(agg));
    begin = end;
  }

  for (std::size_t i = 0; i < report.policies.size(); ++i) {
    for (std::size_t j = i + 1; j < report.policies.size(); ++j) {
      const auto& a = report.policies[i];
      const auto& b = report.policies[j];
      if (a.runs < 2 || b.runs < 2) continue;
      report.tests.push_back({a.label, b.label, Metric::destruction,
                              welch_test(a.final_samples[0], b.final_samples[0])});
    }
  }
  return report;
}

CampaignResult run_campaign(const CampaignConfig& cfg) {
  cfg.validate();
  const int horizon = cfg.episode.timeline.horizon;
  std::vector<Scenario> scenarios;
  scenarios.reserve(static_cast<std::size_t>(cfg.runs));
  for (int run = 0; run < cfg.runs; ++run) scenarios.push_back(build_case(cfg.case_def, cfg.base_seed + run));

  const std::size_t jobs = cfg.policies.size() * static_cast<std::size_t>(cfg.runs);
  std::vector<EpisodeLog> logs(jobs);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t job = next++; job < jobs; job = next++) {
      const std::size_t p = job / static_cast<std::size_t>(cfg.runs);
      const int run = static_cast<int>(job % static_cast<std::size_t>(cfg.runs));
      try {
        logs[job] = run_episode(scenarios[run], cfg.episode_for(cfg.policies[p]), cfg.base_seed + run);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = jobs;
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n_threads =
      std::min<std::size_t>(jobs, cfg.threads > 0 ? static_cast<std::size_t>(cfg.threads) : hw);
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  CampaignResult result;
  for (std::size_t job = 0; job < jobs; ++job) {
    const auto& policy = cfg.policies[job / static_cast<std::size_t>(cfg.runs)];
    const int run = static_cast<int>(job % static_cast<std::size_t>(cfg.runs));
    result.records.push_back(make_record(policy.label, run, cfg.base_seed + run, logs[job], horizon));
  }
  result.logs = std::move(logs);
  result.report = aggregate(result.records, horizon);
  return result;
}

void write_raw_runs(const CampaignResult& result, const std::filesystem::path& dir) {
  for (std::size_t i = 0; i < result.records.size(); ++i) {
    const auto& rec = result.records[i];
    const auto sub = dir / "runs" / sanitize(rec.label);
    ensure_dir(sub);
    const auto path = sub / ("run_" + std::to_string(rec.run) + ".csv");
    auto out = open_for_write(path);
    result.logs[i].write_csv(out);
    finish(out, path);
  }
}

std::vector<RunRecord> load_raw_runs(const std::filesystem::path& dir, int horizon) {
  const auto runs_dir = dir / "runs";
  if (!std::filesystem::is_directory(runs_dir)) throw IoError("no runs directory under " + dir.string());
  std::vector<std::filesystem::path> labels;
  for (const auto& entry : std::filesystem::directory_iterator(runs_dir)) {
    if (entry.is_directory()) labels.push_back(entry.path());
  }
  std::sort(labels.begin(), labels.end());
  std::vector<RunRecord> records;
  for (const auto& label_dir : labels) {
    std::vector<std::pair<int, std::filesystem::path>> files;
    for (const auto& entry : std::filesystem::directory_iterator(label_dir)) {
      const std::string name = entry.path().filename().string();
      if (name.rfind("run_", 0) != 0 || entry.path().extension() != ".csv") continue;
      files.emplace_back(std::stoi(name.substr(4)), entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& [run, path] : files) {
      std::ifstream in(path);
      if (!in) throw IoError("cannot read " + path.string());
      std::string line;
      if (!std::getline(in, line)) throw FileFormatError(path.string() + ": empty file");
      const auto header = split_csv(line);
      auto column = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw FileFormatError(path.string() + ": missing column " + name);
        return static_cast<std::size_t>(it - header.begin());
      };
      const std::size_t c_destruction = column("destruction"), c_burning = column("burning_count"),
                        c_ring = column("ring_radius_m"), c_acc = column("burning_accuracy"),
                        c_outcome = column("outcome_at_end");
      EpisodeLog log;
      int line_no = 1;
      while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != header.size()) {
          throw FileFormatError(path.string() + " line " + std::to_string(line_no) + ": wrong column count");
        }
        EpisodeRow row;
        try {
          row.destruction = std::stod(cells[c_destruction]);
          row.burning_count = std::stoi(cells[c_burning]);
          row.ring_radius_m = std::stod(cells[c_ring]);
          row.burning_accuracy = std::stod(cells[c_acc]);
        } catch (const std::exception&) {
          throw FileFormatError(path.string() + " line " + std::to_string(line_no) + ": bad number");
        }
        log.outcome = parse_outcome(cells[c_outcome]);
        log.rows.push_back(row);
      }
      if (log.rows.empty()) throw FileFormatError(path.string() + ": no rows");
      records.push_back(make_record(label_dir.filename().string(), run, 0, log, horizon));
    }
  }
  return records;
}

ReportFormat parse_report_format(const std::string& text) {
  if (text == "csv") return ReportFormat::csv;
  if (text == "text") return ReportFormat::text;
  if (text == "svg") return ReportFormat::svg;
  throw ConfigError("unknown report format '" + text + "' (expected csv, text or svg)");
}

std::vector<std::filesystem::path> emit_report(const AggregateReport& report, ReportFormat format,
                                               const std::filesystem::path& dir) {
  ensure_dir(dir);
  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::filesystem::path& path, auto&& body) {
    auto out = open_for_write(path);
    body(out);
    finish(out, path);
    written.push_back(path);
  };

  if (format == ReportFormat::csv) {
    for (std::size_t m = 0; m < kMetrics.size(); ++m) {
      emit(dir / (to_string(kMetrics[m]) + ".csv"), [&](std::ostream& out) {
        out << 't';
        for (const auto& p : report.policies) out << ',' << p.label << "_mean," << p.label << "_ci_low," << p.label << "_ci_high";
        out << '\n';
        if (report.policies.empty()) return;
        for (int t = 0; t < report.horizon; ++t) {
          out << t;
          for (const auto& p : report.policies) {
            const Summary& s = p.series[m][t];
            out << ',' << fixed6(s.mean) << ',' << fixed6(s.has_ci() ? s.ci_low() : NAN) << ','
                << fixed6(s.has_ci() ? s.ci_high() : NAN);
          }
          out << '\n';
        }
      });
    }
    emit(dir / "finals.csv", [&](std::ostream& out) {
      out << "policy,metric,runs,mean,sd,ci_half,ci_defined\n";
      for (const auto& p : report.policies) {
        for (std::size_t m = 0; m < kMetrics.size(); ++m) {
          const Summary& s = p.finals[m];
          out << p.label << ',' << to_string(kMetrics[m]) << ',' << p.runs << ',' << fixed6(s.mean) << ','
              << fixed6(s.sd) << ',' << fixed6(s.ci_half) << ',' << (s.has_ci() ? 1 : 0) << '\n';
        }
      }
    });
    emit(dir / "outcomes.csv", [&](std::ostream& out) {
      out << "policy,runs,fully_suppressed,contained,escaped\n";
      for (const auto& p : report.policies) {
        out << p.label << ',' << p.runs << ',' << fixed6(p.outcome_fraction[0]) << ',' << fixed6(p.outcome_fraction[1])
            << ',' << fixed6(p.outcome_fraction[2]) << '\n';
      }
    });
    emit(dir / "tests.csv", [&](std::ostream& out) {
      out << "a,b,metric,t,df,p_value,significant_0.05\n";
      for (const auto& w : report.tests) {
        out << w.a << ',' << w.b << ',' << to_string(w.metric) << ',' << fixed6(w.result.t) << ','
            << fixed6(w.result.df) << ',' << fixed6(w.result.p_value) << ',' << (w.result.significant() ? 1 : 0)
            << '\n';
      }
    });
  } else if (format == ReportFormat::text) {
    emit(dir / "summary.txt", [&](std::ostream& out) {
      char buf[256];
      std::snprintf(buf, sizeof buf, "%-24s %5s %26s %12s %12s %10s %6s %6s %6s\n", "policy", "runs",
                    "final destruction (95% CI)", "flame size", "ring [m]", "accuracy", "supp", "cont", "esc");
      out << buf;
      for (const auto& p : report.policies) {
        const Summary& d = p.finals[0];
        const std::string ci = d.has_ci() ? fixed6(d.ci_half) : std::string("undefined");
        std::snprintf(buf, sizeof buf, "%-24s %5d %13.2f +- %-9s %12.2f %12.2f %10.4f %6.2f %6.2f %6.2f\n",
                      p.label.c_str(), p.runs, d.mean, ci.c_str(), p.finals[1].mean, p.finals[2].mean,
                      p.finals[3].mean, p.outcome_fraction[0], p.outcome_fraction[1], p.outcome_fraction[2]);
        out << buf;
      }
      if (!report.tests.empty()) out << "\nWelch t-tests on final destruction (alpha = 0.05)\n";
      for (const auto& w : report.tests) {
        std::snprintf(buf, sizeof buf, "%s vs %s: t = %.4f, df = %.2f, p = %.6f%s\n", w.a.c_str(), w.b.c_str(),
                      w.result.t, w.result.df, w.result.p_value, w.result.significant() ? " (significant)" : "");
        out << buf;
      }
    });
  } else {
    for (const auto& p : report.policies) {
      for (std::size_t m = 0; m < kMetrics.size(); ++m) {
        const std::string name = to_string(kMetrics[m]);
        emit(dir / ("series_" + sanitize(p.label) + "_" + name + ".svg"),
             [&](std::ostream& out) { write_series_svg(out, p.label + ": " + name, p.series[m]); });
      }
    }
    std::vector<std::string> labels;
    std::vector<std::vector<double>> finals, outcomes;
    for (const auto& p : report.policies) {
      labels.push_back(p.label);
      finals.push_back({p.finals[0].mean});
      outcomes.push_back({p.outcome_fraction[0], p.outcome_fraction[1], p.outcome_fraction[2]});
    }
    emit(dir / "summary_final_destruction.svg", [&](std::ostream& out) {
      write_bar_svg(out, "Final destruction (mean)", labels, finals, {"destruction"});
    });
    emit(dir / "summary_outcomes.svg", [&](std::ostream& out) {
      write_bar_svg(out, "Outcome classes", labels, outcomes, {"fully_suppressed", "contained", "escaped"});
    });
  }
  return written;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_json(const CampaignConfig& cfg) {
  const EpisodeConfig& e = cfg.episode;
  json policies = json::array();
  for (const auto& p : cfg.policies) {
    policies.push_back({{"label", p.label},
                        {"suppression", to_string(p.suppression)},
                        {"surveillance", to_string(p.surveillance)}});
  }
  json propagation = nullptr;
  if (e.propagation) {
    const auto& p = *e.propagation;
    propagation = {{"alpha", p.alpha},           {"p0", p.p0},
                   {"p_partial", p.p_partial},   {"gamma_full", p.gamma_full},
                   {"gamma_partial", p.gamma_partial}, {"wind_bias", p.wind_bias},
                   {"slope_bias", p.slope_bias}};
  }
  json j = {
      {"case", cfg.case_def.id},
      {"preset", cfg.case_def.preset ? json(to_string(*cfg.case_def.preset)) : json(nullptr)},
      {"data_dir", cfg.case_def.terrain == TerrainKind::file ? json(cfg.case_def.data_dir.string()) : json(nullptr)},
      {"runs", cfg.runs},
      {"base_seed", cfg.base_seed},
      {"policies", policies},
      {"timeline",
       {{"uav_arrival", e.timeline.uav_arrival},
        {"manned_arrival", e.timeline.manned_arrival},
        {"horizon", e.timeline.horizon},
        {"k", e.timeline.k}}},
      {"surveillance_enabled", e.surveillance_enabled},
      {"surveillance_mcts", mcts_json(e.surveillance_mcts)},
      {"penalties",
       {{"tau1", e.penalties.tau1},
        {"p_u", e.penalties.p_u},
        {"p_m", e.penalties.p_m},
        {"tau4", e.penalties.tau4},
        {"d_u", e.penalties.d_u},
        {"d_m", e.penalties.d_m}}},
      {"ranging", {{"side_per_level", e.ranging.side_per_level}, {"cap", e.ranging.cap}}},
      {"suppression",
       {{"asr_method", e.suppression.asr_method},
        {"quantile", e.suppression.quantile},
        {"rollout", e.suppression.rollout},
        {"reward", to_string(e.suppression.reward)},
        {"mcts", mcts_json(e.suppression.mcts)}}},
      {"dispatch",
       {{"enabled", e.dispatch.enabled},
        {"time_threshold", e.dispatch.time_threshold},
        {"ring_threshold", e.dispatch.ring_threshold}}},
      {"perfect_information", e.perfect_information},
      {"stop_at_boundary", e.stop_at_boundary},
      {"propagation", propagation},
      {"drone_start", {drone_json(e.drone_start.drone1), drone_json(e.drone_start.drone2)}},
  };
  return j.dump();
}

void write_manifest(const CampaignConfig& cfg, const std::string& command, const std::filesystem::path& dir) {
  ensure_dir(dir);
  const std::string canonical = config_json(cfg);
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a(canonical)));
  json inputs = json::array();
  if (cfg.case_def.terrain == TerrainKind::file) {
    for (const char* name : {"fuel.csv", "elevation.csv", "resources.csv", "scenario.txt"}) {
      inputs.push_back((cfg.case_def.data_dir / name).string());
    }
  } else {
    inputs.push_back("generated case " + std::to_string(cfg.case_def.id));
  }
  json seeds = json::array();
  for (int run = 0; run < cfg.runs; ++run) seeds.push_back(cfg.base_seed + static_cast<std::uint64_t>(run));
  const json manifest = {{"command", command},
                         {"inputs", inputs},
                         {"seeds", seeds},
                         {"config", json::parse(canonical)},
                         {"config_hash", hash}};
  const auto path = dir / "manifest.json";
  auto out = open_for_write(path);
  out << manifest.dump(2) << '\n';
  finish(out, path);
}

}  // namespace wildfire
