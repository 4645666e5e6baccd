#include "assure/cli.h"

#include <charconv>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "assure/config.h"
#include "assure/csv.h"
#include "assure/error.h"
#include "assure/fixed_format.h"
#include "assure/io.h"
#include "assure/pipeline.h"

namespace assure::cli {

namespace {

using nlohmann::ordered_json;

struct Options {
  std::string predictions;
  std::string signals;
  std::string config;
  std::string format = "csv";
  std::string range;
  std::string initial;
  std::string gating;
  std::string worst_zone;
  double threshold = 0.5;
  double das = 0.0;
};

std::optional<std::filesystem::path> ConfigPath(const Options& o) {
  if (o.config.empty()) return std::nullopt;
  return std::filesystem::path(o.config);
}

std::string Opt4(const std::optional<double>& v) { return v ? FormatFixed4(*v) : "NA"; }

ordered_json OptJson(const std::optional<double>& v) {
  return v ? ordered_json(Round4(*v)) : ordered_json(nullptr);
}

double ParseNumber(std::string_view text, const char* what) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + ": '" + std::string(text) + "' is not a number");
  }
  return v;
}

stability::SweepRange ParseRange(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (a == std::string::npos || b == std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument, "--range must be MIN:MAX:STEP");
  }
  return {ParseNumber(text.substr(0, a), "--range"),
          ParseNumber(text.substr(a + 1, b - a - 1), "--range"),
          ParseNumber(text.substr(b + 1), "--range")};
}

int Evaluate(const Options& o, std::ostream& out) {
  const EngineConfig cfg = LoadConfig(ConfigPath(o));
  const lifecycle::Format format = lifecycle::ParseFormat(o.format);
  const auto columns = eval::SampleColumns::FromSamples(io::ParsePredictions(o.predictions));
  const auto counts = eval::ComputeConfusion(columns, o.threshold);
  const auto rates = eval::ComputeRates(counts);
  const auto support = eval::SupportOf(counts);
  const auto gaps = eval::ComputeGaps(rates, support, cfg.min_support);
  const auto fdi = fdi::ComputeFdi(fdi::PanelFromGaps(gaps, cfg.tolerances), cfg.fdi_mode);
  const auto mean_fpr = eval::MacroMean(eval::GapMetric::kFpr, rates, support, cfg.min_support);
  const auto mean_fnr = eval::MacroMean(eval::GapMetric::kFnr, rates, support, cfg.min_support);

  if (format == lifecycle::Format::kJson) {
    ordered_json doc;
    doc["threshold"] = Round4(o.threshold);
    ordered_json groups = ordered_json::array();
    for (const auto& [name, c] : counts) {
      const auto& r = rates.at(name);
      groups.push_back({{"subgroup", name}, {"n", c.total()}, {"tp", c.tp}, {"fp", c.fp},
                        {"tn", c.tn}, {"fn", c.fn}, {"fpr", OptJson(r.fpr)},
                        {"fnr", OptJson(r.fnr)}, {"tpr", OptJson(r.tpr)},
                        {"selection_rate", OptJson(r.selection_rate)}});
    }
    doc["subgroups"] = std::move(groups);
    doc["gaps"] = {{"delta_fpr", Round4(gaps.delta_fpr)}, {"delta_fnr", Round4(gaps.delta_fnr)},
                   {"delta_tpr", Round4(gaps.delta_tpr)}, {"delta_sr", Round4(gaps.delta_sr)}};
    doc["macro_mean"] = {{"fpr", OptJson(mean_fpr)}, {"fnr", OptJson(mean_fnr)}};
    doc["fdi"] = {{"value", Round4(fdi.value)}, {"mode", fdi::ModeName(fdi.mode)}};
    ordered_json excluded = ordered_json::array();
    for (const auto& e : gaps.excluded_subgroups) {
      excluded.push_back({{"subgroup", e.subgroup}, {"gap", e.gap}, {"reason", e.reason}});
    }
    doc["excluded"] = std::move(excluded);
    out << doc.dump(2) << "\n";
    return kExitOk;
  }

  out << "subgroup,n,tp,fp,tn,fn,fpr,fnr,tpr,selection_rate\n";
  for (const auto& [name, c] : counts) {
    const auto& r = rates.at(name);
    out << csv::Escape(name) << ',' << std::to_string(c.total()) << ','
        << std::to_string(c.tp) << ',' << std::to_string(c.fp) << ','
        << std::to_string(c.tn) << ',' << std::to_string(c.fn) << ',' << Opt4(r.fpr)
        << ',' << Opt4(r.fnr) << ',' << Opt4(r.tpr) << ',' << Opt4(r.selection_rate)
        << '\n';
  }
  out << "\nmetric,value\n";
  out << "threshold," << FormatFixed4(o.threshold) << '\n';
  out << "delta_fpr," << FormatFixed4(gaps.delta_fpr) << '\n';
  out << "delta_fnr," << FormatFixed4(gaps.delta_fnr) << '\n';
  out << "delta_tpr," << FormatFixed4(gaps.delta_tpr) << '\n';
  out << "delta_sr," << FormatFixed4(gaps.delta_sr) << '\n';
  out << "mean_fpr," << Opt4(mean_fpr) << '\n';
  out << "mean_fnr," << Opt4(mean_fnr) << '\n';
  out << "fdi," << FormatFixed4(fdi.value) << '\n';
  out << "fdi_mode," << fdi::ModeName(fdi.mode) << '\n';
  out << "\nexcluded_subgroup,gap,reason\n";
  for (const auto& e : gaps.excluded_subgroups) {
    out << csv::Escape(e.subgroup) << ',' << e.gap << ',' << e.reason << '\n';
  }
  return kExitOk;
}

int Sweep(const Options& o, std::ostream& out) {
  EngineConfig cfg = LoadConfig(ConfigPath(o));
  if (!o.range.empty()) cfg.sweep = ParseRange(o.range);
  const lifecycle::Format format = lifecycle::ParseFormat(o.format);
  const auto samples = io::ParsePredictions(o.predictions);
  const auto profile = stability::Sweep(samples, cfg.sweep, cfg.panel());
  const auto sens = stability::Sensitivity(profile, cfg.zones);
  const auto tsz = stability::ComputeTszScalar(sens, cfg.aggregation, cfg.s_ref);

  if (format == lifecycle::Format::kJson) {
    ordered_json points = ordered_json::array();
    for (std::size_t i = 0; i < profile.points.size(); ++i) {
      points.push_back({{"threshold", Round4(profile.points[i].threshold)},
                        {"fdi", Round4(profile.points[i].fdi)},
                        {"interpolated", profile.points[i].interpolated},
                        {"s", Round4(sens.points[i].s)},
                        {"zone", stability::ZoneName(sens.points[i].zone)}});
    }
    ordered_json doc;
    doc["points"] = std::move(points);
    doc["tsz"] = {{"value", Round4(tsz.value)},
                  {"aggregation", stability::AggregationName(tsz.aggregation)},
                  {"s_ref", Round4(tsz.s_ref)}};
    doc["worst_zone"] = stability::ZoneName(sens.worst_zone());
    out << doc.dump(2) << "\n";
    return kExitOk;
  }

  out << "threshold,fdi,interpolated,s,zone\n";
  for (std::size_t i = 0; i < profile.points.size(); ++i) {
    out << FormatFixed4(profile.points[i].threshold) << ','
        << FormatFixed4(profile.points[i].fdi) << ','
        << (profile.points[i].interpolated ? "1" : "0") << ','
        << FormatFixed4(sens.points[i].s) << ',' << stability::ZoneName(sens.points[i].zone)
        << '\n';
  }
  out << "\nmetric,value\n";
  out << "tsz," << FormatFixed4(tsz.value) << '\n';
  out << "aggregation," << stability::AggregationName(tsz.aggregation) << '\n';
  out << "s_ref," << FormatFixed4(tsz.s_ref) << '\n';
  out << "worst_zone," << stability::ZoneName(sens.worst_zone()) << '\n';
  return kExitOk;
}

int Score(const Options& o, std::ostream& out) {
  const EngineConfig cfg = LoadConfig(ConfigPath(o));
  const lifecycle::Format format = lifecycle::ParseFormat(o.format);
  const auto assessments =
      lifecycle::AssessSequence(io::ParseSignals(o.signals), cfg.assessment());

  if (format == lifecycle::Format::kJson) {
    ordered_json rows = ordered_json::array();
    for (const auto& a : assessments) {
      rows.push_back({{"snapshot_id", a.snapshot_id},
                      {"fdi", Round4(a.signals.fdi)},
                      {"delta_fpr", Round4(a.signals.delta_fpr)},
                      {"delta_fnr", Round4(a.signals.delta_fnr)},
                      {"tsz", Round4(a.signals.tsz)},
                      {"das", Round4(a.das)},
                      {"ges", LevelName(a.ges)},
                      {"drc", StateName(a.stateless_drc)}});
    }
    ordered_json doc;
    doc["config_fingerprint"] = Fingerprint(cfg);
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << "\n";
    return kExitOk;
  }

  out << "snapshot_id,fdi,delta_fpr,delta_fnr,tsz,das,ges,drc\n";
  for (const auto& a : assessments) {
    out << csv::Escape(a.snapshot_id) << ',' << FormatFixed4(a.signals.fdi) << ','
        << FormatFixed4(a.signals.delta_fpr) << ',' << FormatFixed4(a.signals.delta_fnr)
        << ',' << FormatFixed4(a.signals.tsz) << ',' << FormatFixed4(a.das) << ','
        << LevelName(a.ges) << ',' << StateName(a.stateless_drc) << '\n';
  }
  return kExitOk;
}

int Lifecycle(const Options& o, std::ostream& out) {
  EngineConfig cfg = LoadConfig(ConfigPath(o));
  if (!o.gating.empty()) cfg.recovery_gating = o.gating == "on";
  if (!o.initial.empty()) cfg.initial_state = ParseState(o.initial);
  const lifecycle::Format format = lifecycle::ParseFormat(o.format);
  auto assessments = lifecycle::AssessSequence(io::ParseSignals(o.signals), cfg.assessment());
  lifecycle::GovernanceTrace trace =
      lifecycle::Replay(std::move(assessments), cfg.initial_state, cfg.rules());
  trace.config_fingerprint = Fingerprint(cfg);
  out << lifecycle::EmitTrace(trace, format);
  return kExitOk;
}

int Classify(const Options& o, std::ostream& out) {
  const EngineConfig cfg = LoadConfig(ConfigPath(o));
  std::optional<stability::Zone> zone;
  if (!o.worst_zone.empty()) zone = stability::ParseZone(o.worst_zone);
  out << StateName(ClassifyDrc(o.das, cfg.bands, zone)) << '\n';
  return kExitOk;
}

int AssessCmd(const Options& o, std::ostream& out) {
  EngineConfig cfg = LoadConfig(ConfigPath(o));
  if (!o.range.empty()) cfg.sweep = ParseRange(o.range);
  const lifecycle::Format format = lifecycle::ParseFormat(o.format);
  const auto columns = eval::SampleColumns::FromSamples(io::ParsePredictions(o.predictions));
  const PredictionReport report = AssessPredictions(columns, o.threshold, cfg);
  const lifecycle::SnapshotAssessment a =
      lifecycle::Assess({std::filesystem::path(o.predictions).stem().string(), report.signals},
                        cfg.assessment());
  const std::string zone(stability::ZoneName(*report.signals.worst_zone));

  if (format == lifecycle::Format::kJson) {
    ordered_json doc;
    doc["snapshot_id"] = a.snapshot_id;
    doc["threshold"] = Round4(o.threshold);
    doc["fdi"] = Round4(a.signals.fdi);
    doc["delta_fpr"] = Round4(a.signals.delta_fpr);
    doc["delta_fnr"] = Round4(a.signals.delta_fnr);
    doc["tsz"] = Round4(a.signals.tsz);
    doc["worst_zone"] = zone;
    doc["das"] = Round4(a.das);
    doc["ges"] = LevelName(a.ges);
    doc["drc"] = StateName(a.stateless_drc);
    out << doc.dump(2) << "\n";
    return kExitOk;
  }
  out << "snapshot_id,threshold,fdi,delta_fpr,delta_fnr,tsz,worst_zone,das,ges,drc\n";
  out << csv::Escape(a.snapshot_id) << ',' << FormatFixed4(o.threshold) << ','
      << FormatFixed4(a.signals.fdi) << ',' << FormatFixed4(a.signals.delta_fpr) << ','
      << FormatFixed4(a.signals.delta_fnr) << ',' << FormatFixed4(a.signals.tsz) << ','
      << zone << ',' << FormatFixed4(a.das) << ',' << LevelName(a.ges) << ','
      << StateName(a.stateless_drc) << '\n';
  return kExitOk;
}

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deployment assurance engine: fairness disagreement, threshold "
               "stability, assurance scoring and governance traces"};
  app.require_subcommand(1);
  Options o;

  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("--config", o.config, "JSON engine config (defaults when absent)");
  };
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  auto* evaluate = app.add_subcommand("evaluate", "Rates, gaps and FDI at one threshold");
  evaluate->add_option("--predictions", o.predictions, "predictions CSV/JSONL")->required();
  evaluate->add_option("--threshold", o.threshold, "decision threshold in [0,1]")->required();
  add_config(evaluate);
  add_format(evaluate);

  auto* sweep = app.add_subcommand("sweep", "FDI, sensitivity and zones over a threshold grid");
  sweep->add_option("--predictions", o.predictions, "predictions CSV/JSONL")->required();
  sweep->add_option("--range", o.range, "MIN:MAX:STEP (default 0.2:0.9:0.05)");
  add_config(sweep);
  add_format(sweep);

  auto* score = app.add_subcommand("score", "DAS, GES and readiness per signals row");
  score->add_option("--signals", o.signals, "signals CSV/JSONL")->required();
  add_config(score);
  add_format(score);

  auto* life = app.add_subcommand("lifecycle", "Governed state trace over a signals sequence");
  life->add_option("--signals", o.signals, "signals CSV/JSONL")->required();
  life->add_option("--initial", o.initial, "initial deployment state");
  life->add_option("--gating", o.gating, "recovery gating on|off")
      ->check(CLI::IsMember({"on", "off"}));
  add_config(life);
  add_format(life);

  auto* classify = app.add_subcommand("classify", "Readiness classification of a DAS value");
  classify->add_option("--das", o.das, "assurance score in [0,1]")->required();
  classify->add_option("--worst-zone", o.worst_zone, "worst stability zone, if known");
  add_config(classify);

  auto* assess = app.add_subcommand("assess", "Signals, DAS, GES and readiness from predictions");
  assess->add_option("--predictions", o.predictions, "predictions CSV/JSONL")->required();
  assess->add_option("--threshold", o.threshold, "operating threshold in [0,1]")->required();
  assess->add_option("--range", o.range, "sweep MIN:MAX:STEP for TSZ");
  add_config(assess);
  add_format(assess);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*evaluate) return Evaluate(o, out);
    if (*sweep) return Sweep(o, out);
    if (*score) return Score(o, out);
    if (*life) return Lifecycle(o, out);
    if (*classify) return Classify(o, out);
    if (*assess) return AssessCmd(o, out);
  } catch (const Error& e) {
    err << "error [" << ErrorCodeName(e.code()) << "]: " << e.what() << "\n";
    return e.is_io() ? kExitIo : kExitValidation;
  }
  return kExitValidation;
}

}  // namespace assure::cli
