#include "qgms/report.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qgms/error.hpp"

namespace qgms::report {

namespace {

std::string iso8601(std::time_t t) {
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json stage_json(const synth::StageFormula& s) {
  return Json{{"name", s.name}, {"column", s.column}, {"cnot", s.cnot}, {"toffoli", s.toffoli},
              {"ancilla", s.ancilla}};
}

}  // namespace

std::string make_timestamp(bool wall_clock) {
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH"); env && *env) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0') return iso8601(static_cast<std::time_t>(v));
  }
  if (!wall_clock) return {};
  return iso8601(std::chrono::system_clock::to_time_t(std::chrono::system_clock::now()));
}

Json to_json(const RunManifest& m) {
  Json seeds = Json::object();
  for (const auto& [k, v] : m.seeds) seeds[k] = v;
  return Json{{"subcommand", m.subcommand},
              {"config", m.config},
              {"seeds", seeds},
              {"tool_version", m.tool_version},
              {"timestamp", m.timestamp.empty() ? Json(nullptr) : Json(m.timestamp)}};
}

Json to_json(const ir::ResourceProfile& p) {
  return Json{{"cnot", p.cnot},         {"toffoli", p.toffoli},       {"t_depth", p.t_depth},
              {"ancilla", p.ancilla},   {"total_qubits", p.total_qubits}, {"cnot_raw", p.cnot_raw},
              {"toffoli_raw", p.toffoli_raw}, {"mcx_raw", p.mcx_raw},  {"oracle_calls", p.oracle_calls}};
}

std::string to_string(const gms::BigInt& v) { return v.str(); }

std::string to_string(const gms::BigRational& v) {
  return boost::multiprecision::numerator(v).str() + "/" + boost::multiprecision::denominator(v).str();
}

Json to_json(const gms::CountReport& c) {
  return Json{{"n", c.n},
              {"brute", c.brute ? Json(*c.brute) : Json(nullptr)},
              {"formula", to_string(c.formula)},
              {"relaxation_bound", to_string(c.relaxation_bound)},
              {"agree", c.agree},
              {"below_bound", c.below_bound}};
}

Json to_json(const gms::QueryRatio& q) {
  return Json{{"m", q.m},
              {"n", q.n},
              {"n_over_r", to_string(q.n_over_r)},
              {"n_over_r_value", q.n_over_r.convert_to<double>()},
              {"bound", to_string(q.bound)},
              {"exceeds", q.exceeds},
              {"t_lower", q.t_lower},
              {"t_ratio", q.t_ratio},
              {"t_exhaustive", q.t_exhaustive}};
}

Json to_json(const gms::GmsConfig& cfg) {
  return Json{{"m", cfg.m},
              {"n", cfg.n},
              {"l", cfg.l},
              {"t_max", cfg.t_max},
              {"seed", cfg.seed},
              {"plaintexts", cfg.plaintexts},
              {"seed_policy", std::string(gms::name(cfg.policy))},
              {"diffusion", std::string(gms::name(cfg.diffusion))},
              {"cipher", std::string(sim::name(gms::cipher_model(cfg)))}};
}

Json synth_report(const synth::SynthKind& kind, const ir::Circuit& c, const RunManifest& m) {
  const auto built = ir::resources(c);
  const auto pred = synth::predicted_resources(kind);
  Json j;
  j["schema"] = kSchema;
  j["manifest"] = to_json(m);
  j["kind"] = std::string(synth::name(kind.kind));
  j["dims"] = Json{{"m", kind.m}, {"n", kind.n}, {"l", kind.l}};
  j["qubits"] = c.qubit_count();
  j["gates"] = c.size();
  j["constructed"] = to_json(built);
  j["closed_form"] = pred.closed_form ? to_json(*pred.closed_form) : Json(nullptr);
  j["stage_sum"] = to_json(pred.stage_sum);
  if (pred.closed_form) {
    j["closed_form_delta"] = Json{{"cnot", built.cnot - pred.closed_form->cnot},
                                  {"t_depth", built.t_depth - pred.closed_form->t_depth},
                                  {"ancilla", built.ancilla - pred.closed_form->ancilla}};
  } else {
    j["closed_form_delta"] = nullptr;
  }
  Json stages = Json::array();
  for (const auto& s : pred.stages) stages.push_back(stage_json(s));
  j["stages"] = stages;
  return j;
}

Json gms_report(const GmsReportInput& in, const RunManifest& m) {
  const auto& st = in.result.stats;
  const auto& pa = in.result.analysis;
  Json j;
  j["schema"] = kSchema;
  j["manifest"] = to_json(m);
  j["config"] = to_json(in.instance.cfg);
  j["N"] = st.N;
  j["r"] = st.r;
  j["k0_mean"] = st.k0_mean;
  j["l0_mean"] = st.l0_mean;
  j["sigma2"] = st.sigma2;
  j["p_max"] = st.p_max;
  Json curve = Json::array();
  for (std::size_t t = 0; t < in.result.curve.size(); ++t) curve.push_back(Json::array({t, in.result.curve[t]}));
  j["t_curve"] = curve;
  j["best"] = Json{{"t", in.result.best_t}, {"p", in.result.best}};
  const bool has_t = st.r >= 1 && st.l0_mean != 0.0;
  j["optimal_t"] = has_t ? Json(in.result.optimal_t) : Json(nullptr);
  j["optimal_t_valid"] = in.result.optimal_t_valid;
  j["query_ratio"] = to_json(in.query_ratio);
  j["counts"] = to_json(in.counts);
  j["marked_mass"] = st.marked_mass;
  j["sum_l_sq"] = st.sum_l_sq;
  j["mean_sq_over_n"] = st.mean_sq_over_n;
  j["analysis_accounting"] = Json{{"N", pa.N},
                               {"r_rank", pa.r_rank},
                               {"r_check", pa.r_check},
                               {"sum_l_sq", pa.sum_l_sq},
                               {"mean_sq_over_n", pa.mean_sq_over_n},
                               {"p_max_estimate", pa.p_max_estimate}};
  Json hcurve = Json::array();
  for (std::size_t t = 0; t < in.hybrid.curve.size(); ++t) hcurve.push_back(Json::array({t, in.hybrid.curve[t]}));
  j["hybrid"] = Json{{"accept", in.hybrid.accept}, {"t_curve", hcurve}, {"best", Json{{"t", in.hybrid.best_t}, {"p", in.hybrid.best}}}};
  j["instance"] = Json{{"key", in.instance.fx.key},
                       {"k1", in.instance.fx.k1},
                       {"k2", in.instance.fx.k2},
                       {"cipher_seed", in.instance.cipher_seed},
                       {"seed_attempts", in.instance.attempts}};
  return j;
}

std::string curve_csv(const std::vector<double>& curve) {
  std::ostringstream os;
  os << "t,probability\n";
  char buf[64];
  for (std::size_t t = 0; t < curve.size(); ++t) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", t, curve[t]);
    os << buf;
  }
  return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
  }
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << contents;
    if (!out) throw Error("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw Error("cannot move " + tmp.string() + " to " + path + ": " + ec.message());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace qgms::report
