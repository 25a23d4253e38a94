// qgms: synthesize elimination circuits, run the verification suites and the
// Grover-meets-Simon experiment.
//
// Exit codes: 0 ok, 1 verification failure or IO error, 2 usage error,
// 3 qubit cap exceeded.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qgms/counting.hpp"
#include "qgms/error.hpp"
#include "qgms/gms.hpp"
#include "qgms/report.hpp"
#include "qgms/statevector.hpp"
#include "qgms/synth.hpp"
#include "qgms/verify.hpp"

namespace {

using namespace qgms;
using report::Json;

constexpr int kOk = 0, kFail = 1, kUsage = 2, kCap = 3;

struct SynthArgs {
  std::string kind;
  std::optional<unsigned> m, n, l;
  std::string out;
  bool stamp = false;
};

int cmd_synth(const SynthArgs& a) {
  const auto kind = synth::parse_kind(a.kind);
  if (!kind) {
    std::cerr << "unknown circuit kind '" << a.kind << "' (row-echelon, qge, qgje, rref, uqge)\n";
    return kUsage;
  }
  if (!a.n) throw InvalidDimensions("--n is required");
  const unsigned n = *a.n;
  synth::SynthKind sk;
  switch (*kind) {
    case synth::Kind::RowEchelon: sk = synth::SynthKind::row_echelon(a.m.value_or(n), n); break;
    case synth::Kind::Qge: sk = synth::SynthKind::qge(n); break;
    case synth::Kind::Qgje: sk = synth::SynthKind::qgje(n); break;
    case synth::Kind::Rref: sk = synth::SynthKind::rref(a.m.value_or(n), n); break;
    case synth::Kind::Uqge: sk = synth::SynthKind::uqge(n, a.l.value_or(n - 1)); break;
  }
  const ir::Circuit c = synth::build(sk);

  report::RunManifest man;
  man.subcommand = "synth";
  man.config = Json{{"kind", a.kind}, {"m", sk.m}, {"n", sk.n}, {"l", sk.l}};
  man.timestamp = report::make_timestamp(a.stamp);
  const Json rep = report::synth_report(sk, c, man);

  const std::string prefix = a.out.empty() ? std::string(synth::name(sk.kind)) + "_n" + std::to_string(n) : a.out;
  report::write_file(prefix + ".txt", ir::to_text(c));
  report::write_file(prefix + ".json", report::dump(rep));
  std::cout << prefix << ".txt " << c.qubit_count() << " qubits, " << c.size() << " gates\n"
            << prefix << ".json cnot=" << rep["constructed"]["cnot"] << " t_depth=" << rep["constructed"]["t_depth"]
            << " ancilla=" << rep["constructed"]["ancilla"] << "\n";
  return kOk;
}

struct VerifyArgs {
  std::string suite;
  std::optional<unsigned> n, l;
  std::uint64_t seed = 7;
  std::string json;
};

int cmd_verify(const VerifyArgs& a) {
  if (!verify::is_suite(a.suite)) {
    std::cerr << "unknown suite '" << a.suite << "' (gf2, circuits, counting, deferred, gms)\n";
    return kUsage;
  }
  verify::SuiteOptions opts;
  opts.n = a.n;
  opts.l = a.l;
  opts.seed = a.seed;
  const auto res = verify::run_suite(a.suite, opts);
  std::cout << verify::to_text(res);
  if (!a.json.empty()) report::write_file(a.json, report::dump(verify::to_json(res)));
  return res.pass() ? kOk : kFail;
}

struct GmsArgs {
  gms::GmsConfig cfg;
  std::string policy = "ideal";
  std::string diffusion = "mean-inversion";
  std::string cipher = "auto";
  std::string out = "gms";
  bool stamp = false;
};

int cmd_gms(GmsArgs a) {
  auto& cfg = a.cfg;
  if (a.policy == "as-drawn") cfg.policy = gms::SeedPolicy::AsDrawn;
  else if (a.policy == "clean") cfg.policy = gms::SeedPolicy::Clean;
  else cfg.policy = gms::SeedPolicy::Ideal;
  cfg.diffusion = a.diffusion == "reflect-prep" ? gms::Diffusion::ReflectPrep : gms::Diffusion::MeanInversion;
  if (a.cipher == "permutation") cfg.cipher = sim::CipherModel::Permutation;
  else if (a.cipher == "function") cfg.cipher = sim::CipherModel::Function;
  if (cfg.m < 1 || cfg.n < 2 || cfg.l < 1) throw InvalidDimensions("gms needs m >= 1, n >= 2, l >= 1");
  const unsigned need = gms::search_qubits(cfg);
  if (need > sim::qubit_cap()) throw QubitCapExceeded(need, sim::qubit_cap());

  const auto inst = gms::make_instance(cfg);
  report::GmsReportInput in{inst, gms::run_gms(inst), gms::hybrid_baseline(inst, cfg.t_max),
                            gms::query_ratio(cfg.m, cfg.n),
                            gms::count_rank_n_minus_1(cfg.n, cfg.n <= 4 ? gms::CountMode::Brute : gms::CountMode::Formula)};
  report::RunManifest man;
  man.subcommand = "gms";
  man.config = report::to_json(cfg);
  man.seeds = {{"seed", cfg.seed}, {"cipher_seed", inst.cipher_seed}};
  man.timestamp = report::make_timestamp(a.stamp);
  const Json rep = report::gms_report(in, man);
  report::write_file(a.out + ".json", report::dump(rep));
  report::write_file(a.out + ".csv", report::curve_csv(in.result.curve));
  std::cout << a.out << ".json N=" << in.result.stats.N << " r=" << in.result.stats.r << " p_max=" << in.result.stats.p_max
            << " best=" << in.result.best << " at t=" << in.result.best_t << " hybrid=" << in.hybrid.best << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reversible GF(2) elimination circuits and Grover-meets-Simon simulation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", report::kToolVersion);

  SynthArgs sa;
  auto* synth_cmd = app.add_subcommand("synth", "build a circuit, write <out>.txt and <out>.json");
  synth_cmd->add_option("kind", sa.kind, "row-echelon, qge, qgje, rref or uqge")->required();
  synth_cmd->add_option("--n", sa.n, "columns (matrix size for qge/qgje)");
  synth_cmd->add_option("--m", sa.m, "rows for row-echelon/rref (default n)");
  synth_cmd->add_option("--l", sa.l, "rows of Y for uqge (default n-1)");
  synth_cmd->add_option("--out", sa.out, "output prefix");
  synth_cmd->add_flag("--stamp", sa.stamp, "record the wall-clock time in the manifest");

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd->add_option("suite", va.suite, "gf2, circuits, counting, deferred or gms")->required();
  verify_cmd->add_option("--n", va.n, "deferred suite: block width");
  verify_cmd->add_option("--l", va.l, "deferred suite: Simon rounds");
  verify_cmd->add_option("--seed", va.seed, "seed for randomized checks");
  verify_cmd->add_option("--json", va.json, "write a machine-readable report here");

  GmsArgs ga;
  auto* gms_cmd = app.add_subcommand("gms", "run the deferred-measurement experiment, write <out>.json and <out>.csv");
  gms_cmd->add_option("--m", ga.cfg.m, "key bits")->capture_default_str();
  gms_cmd->add_option("--n", ga.cfg.n, "block bits")->capture_default_str();
  gms_cmd->add_option("--l", ga.cfg.l, "Simon rounds")->capture_default_str();
  gms_cmd->add_option("--t-max", ga.cfg.t_max, "largest iteration count")->capture_default_str();
  gms_cmd->add_option("--seed", ga.cfg.seed, "instance seed")->capture_default_str();
  gms_cmd->add_option("--plaintexts", ga.cfg.plaintexts, "plaintexts for the key check")->capture_default_str();
  gms_cmd->add_option("--seed-policy", ga.policy, "as-drawn, clean or ideal")
      ->check(CLI::IsMember({"as-drawn", "clean", "ideal"}))
      ->capture_default_str();
  gms_cmd->add_option("--diffusion", ga.diffusion, "mean-inversion or reflect-prep")
      ->check(CLI::IsMember({"mean-inversion", "reflect-prep"}))
      ->capture_default_str();
  gms_cmd->add_option("--cipher", ga.cipher, "auto, permutation or function (auto: function at n = 2)")
      ->check(CLI::IsMember({"auto", "permutation", "function"}))
      ->capture_default_str();
  gms_cmd->add_option("--out", ga.out, "output prefix")->capture_default_str();
  gms_cmd->add_flag("--stamp", ga.stamp, "record the wall-clock time in the manifest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*synth_cmd) return cmd_synth(sa);
    if (*verify_cmd) return cmd_verify(va);
    if (*gms_cmd) return cmd_gms(ga);
  } catch (const QubitCapExceeded& e) {
    std::cerr << "error: " << e.what() << " (set QGMS_QUBIT_CAP to raise it)\n";
    return kCap;
  } catch (const InvalidDimensions& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
