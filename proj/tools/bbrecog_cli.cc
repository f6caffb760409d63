// Copyright 2026 The bbrecog Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// bbrecog: simulated black-box instances, recognition, verification,
// exhaustive self-tests and operation-count benchmarks.
//
// Exit codes: 0 ok, 2 verification failure, 3 configuration error,
// 4 black-box inconsistency.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bbrecog/adjoint_oracle.hpp"
#include "bbrecog/bench.hpp"
#include "bbrecog/errors.hpp"
#include "bbrecog/instance.hpp"
#include "bbrecog/recognition.hpp"
#include "bbrecog/testing/exhaustive.hpp"
#include "bbrecog/verify.hpp"
#include "json.hpp"

namespace {

using bbrecog::ErrorCode;
using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 2;
constexpr int kExitConfig = 3;
constexpr int kExitInconsistent = 4;
constexpr const char* kReportSchema = "bbrecog.report/1";

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfig:
    case ErrorCode::kIo:
      return kExitConfig;
    default:
      return kExitInconsistent;
  }
}

class Stopwatch {
 public:
  double Millis() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

Json CountsJson(const bbrecog::OpCounts& c) {
  return {{"field_add", c.field.add},  {"field_mul", c.field.mul},
          {"field_inv", c.field.inv},  {"group_mul", c.group.mul},
          {"group_inv", c.group.inv},  {"total", c.total()}};
}

void Emit(const Json& report, const std::string& out) {
  const std::string text = bbrecog::DumpJson(report);
  if (out.empty()) {
    std::cout << text;
  } else {
    bbrecog::WriteTextFile(out, text);
  }
}

struct RunOptions {
  std::string instance;
  std::string flavor;
  std::uint64_t seed = 1;
  std::uint64_t samples = 0;
  int retries = 64;
  std::string out;
};

bbrecog::RecognitionOptions RecognitionOptionsFor(const RunOptions& o) {
  bbrecog::RecognitionOptions r;
  r.whiten_retries = o.retries;
  r.theta_retries = o.retries;
  return r;
}

template <class Proxy>
Json RunProxy(Proxy& proxy, const bbrecog::SimulatedField& k,
              const bbrecog::SimulatedGroup& g, const RunOptions& o,
              double build_ms, const bbrecog::OpCounts& build_counts) {
  bbrecog::ResetCounts(k, g);
  bbrecog::Rng rng(o.seed ^ 0x7e51);
  Stopwatch watch;
  const auto counts = bbrecog::CheckProxy(proxy, o.samples, rng);
  const double verify_ms = watch.Millis();
  Json j;
  j["round_trip_checks"] = counts.round_trip_checks;
  j["round_trip_failures"] = counts.round_trip_failures;
  j["homomorphism_checks"] = counts.homomorphism_checks;
  j["homomorphism_failures"] = counts.homomorphism_failures;
  j["op_counts"] = {{"build", CountsJson(build_counts)},
                    {"verify", CountsJson(bbrecog::ReadCounts(k, g))}};
  j["timings"] = {{"build_ms", build_ms}, {"verify_ms", verify_ms}};
  j["status"] = counts.failures() == 0 ? "pass" : "fail";
  return j;
}

Json RecognitionStatsJson(const bbrecog::RecognitionStats& s) {
  return {{"psi_bar_calls", s.psi_bar_calls},
          {"whitened_involutions", s.whitened_involutions},
          {"whiten_draws", s.whiten_draws},
          {"theta_bar_calls", s.theta_bar_calls},
          {"theta_resamples", s.theta_resamples}};
}

int RunRecognize(const RunOptions& o, const std::string& command) {
  bbrecog::InstanceConfig config;
  try {
    config = bbrecog::ReadInstanceFile(o.instance);
  } catch (const bbrecog::Error& e) {
    // A bad instance file is a configuration problem, not an inconsistency
    // of the black box.
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  const bbrecog::Flavor flavor =
      o.flavor.empty() ? config.flavor : bbrecog::ParseFlavor(o.flavor);
  bbrecog::SimulatedGroup g(config.q, config.flavor, config.seed,
                            config.mode);
  Json report;
  report["schema"] = kReportSchema;
  report["command"] = command;
  report["flavor"] = bbrecog::FlavorName(flavor);
  report["instance_seed"] = config.seed;
  report["seed"] = o.seed;
  report["samples"] = o.samples;

  Json body;
  Json stats;
  if (flavor == bbrecog::Flavor::kPgl2) {
    const auto bundle = bbrecog::PglAdjointBundle::Build(g);
    const auto& k = bundle.field();
    bbrecog::ResetCounts(k, g);
    Stopwatch watch;
    bbrecog::Pgl2Proxy<bbrecog::PglAdjointBundle> proxy(bundle, o.seed);
    const double build_ms = watch.Millis();
    body = RunProxy(proxy, k, g, o, build_ms, bbrecog::ReadCounts(k, g));
  } else {
    if (g.flavor() == bbrecog::Flavor::kPgl2) {
      throw bbrecog::Error(ErrorCode::kConfig,
                           "instance does not match the requested flavor");
    }
    const auto bundle = bbrecog::AdjointBundle::Build(g);
    const auto& k = bundle.field();
    bbrecog::ResetCounts(k, g);
    Stopwatch watch;
    if (flavor == bbrecog::Flavor::kSl2) {
      bbrecog::Sl2Proxy<bbrecog::AdjointBundle> proxy(
          bundle, o.seed, RecognitionOptionsFor(o));
      const double build_ms = watch.Millis();
      body = RunProxy(proxy, k, g, o, build_ms, bbrecog::ReadCounts(k, g));
      stats = RecognitionStatsJson(proxy.recognizer().stats());
    } else {
      bbrecog::Psl2Proxy<bbrecog::AdjointBundle> proxy(
          bundle, o.seed, RecognitionOptionsFor(o));
      const double build_ms = watch.Millis();
      body = RunProxy(proxy, k, g, o, build_ms, bbrecog::ReadCounts(k, g));
      stats = RecognitionStatsJson(proxy.recognizer().stats());
    }
  }
  const bool pass = body["status"] == "pass";
  Json timings = body["timings"];
  body.erase("timings");
  report.update(body);
  if (!stats.is_null()) report["recognition"] = stats;
  report["timings"] = timings;
  Emit(report, o.out);
  return pass ? kExitOk : kExitVerificationFailure;
}

int RunSelftest(std::uint64_t seed, const std::string& out) {
  namespace t = bbrecog::testing;
  using bbrecog::Flavor;
  constexpr std::uint64_t q = 7;
  Stopwatch watch;
  std::vector<t::CheckResult> results;
  results.push_back(t::CheckPhiBijection(q, seed));
  results.push_back(t::CheckTransvectionCensus(q, seed));
  for (Flavor f : {Flavor::kSl2, Flavor::kPsl2}) {
    auto suffix = std::string("_") + bbrecog::FlavorName(f);
    for (auto r : {t::CheckInvolutionWhitening(q, f, seed),
                   t::CheckThetaBar(q, f, seed),
                   t::CheckNormalizerWhitening(q, f, bbrecog::TorusId::kS,
                                               seed, nullptr),
                   t::CheckNormalizerWhitening(q, f, bbrecog::TorusId::kR,
                                               seed, nullptr)}) {
      r.name += suffix;
      results.push_back(r);
    }
  }
  results.push_back(t::CheckSl2RoundTrips(q, seed));
  results.push_back(t::CheckPgl2Bijection(q, seed));

  Json report;
  report["schema"] = kReportSchema;
  report["command"] = "selftest";
  report["q"] = q;
  report["seed"] = seed;
  bool pass = true;
  Json checks = Json::array();
  for (const auto& r : results) {
    pass = pass && r.ok();
    checks.push_back({{"name", r.name},
                      {"checks", r.checks},
                      {"failures", r.failures},
                      {"status", r.ok() ? "pass" : "fail"}});
  }
  report["checks"] = checks;
  report["status"] = pass ? "pass" : "fail";
  report["timings"] = {{"total_ms", watch.Millis()}};
  Emit(report, out);
  return pass ? kExitOk : kExitVerificationFailure;
}

int RunBench(const std::vector<std::uint64_t>& ladder, std::uint64_t seed,
             int evaluations, const std::string& out) {
  std::vector<bbrecog::ScalingSample> samples;
  Json rows = Json::array();
  Json timings = Json::array();
  for (std::uint64_t q : ladder) {
    Stopwatch watch;
    samples.push_back(bbrecog::MeasureSl2Proxy(q, seed, evaluations));
    const auto& s = samples.back();
    rows.push_back({{"q", q},
                    {"log2_q", s.log2_q},
                    {"build", CountsJson(s.build)},
                    {"workload", CountsJson(s.workload)},
                    {"total", s.total()}});
    timings.push_back({{"q", q}, {"ms", watch.Millis()}});
  }
  Json report;
  report["schema"] = kReportSchema;
  report["command"] = "bench";
  report["seed"] = seed;
  report["evaluations"] = evaluations;
  report["ladder"] = rows;
  report["fitted_log_exponent"] = bbrecog::FitLogExponent(samples);
  report["timings"] = timings;
  Emit(report, out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constructive recognition of black boxes encrypting SL2, "
               "PSL2 and PGL2"};
  app.require_subcommand(1);

  bbrecog::InstanceConfig gen_config;
  std::string gen_flavor = "sl2";
  std::string gen_mode = "exact";
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Write a simulated instance file");
  gen->add_option("--q", gen_config.q, "Field order (odd prime power >= 7)")
      ->required();
  gen->add_option("--flavor", gen_flavor, "sl2, psl2 or pgl2");
  gen->add_option("--seed", gen_config.seed, "Instance seed");
  gen->add_option("--exponent-mode", gen_mode,
                  "exact (E = group exponent) or multiple");
  gen->add_option("--out", gen_out, "Output path (default: stdout)");

  RunOptions recognize_options{.samples = 32};
  RunOptions verify_options{.samples = 1000};
  auto add_run_options = [](CLI::App* cmd, RunOptions& o) {
    cmd->add_option("--instance", o.instance, "Instance file")->required();
    cmd->add_option("--flavor", o.flavor,
                    "sl2, psl2 or pgl2 (default: instance flavor)");
    cmd->add_option("--seed", o.seed, "Recognition seed");
    cmd->add_option("--samples", o.samples, "Random samples")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--retries", o.retries, "Whitening retry budget")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", o.out, "Report path (default: stdout)");
  };
  auto* recognize = app.add_subcommand(
      "recognize", "Build the proxy for an instance and report");
  add_run_options(recognize, recognize_options);
  auto* verify = app.add_subcommand(
      "verify", "Round-trip and homomorphism suite on random samples");
  add_run_options(verify, verify_options);

  std::uint64_t selftest_seed = 1;
  std::string selftest_out;
  auto* selftest = app.add_subcommand(
      "selftest", "Exhaustive comparisons against brute-force oracles at q=7");
  selftest->add_option("--seed", selftest_seed, "Seed");
  selftest->add_option("--out", selftest_out, "Report path (default: stdout)");

  std::vector<std::uint64_t> bench_ladder = {7, 101, 1009, 65521,
                                             2147483647};
  std::uint64_t bench_seed = 1;
  int bench_samples = 10;
  std::string bench_out;
  auto* bench = app.add_subcommand(
      "bench", "Operation counts of SL2 recognition over a ladder of q");
  bench->add_option("--q", bench_ladder, "Field orders");
  bench->add_option("--seed", bench_seed, "Seed");
  bench->add_option("--samples", bench_samples,
                    "psi and theta evaluations per q")
      ->check(CLI::PositiveNumber);
  bench->add_option("--out", bench_out, "Report path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*gen) {
      gen_config.flavor = bbrecog::ParseFlavor(gen_flavor);
      gen_config.mode = bbrecog::ParseExponentMode(gen_mode);
      Emit(bbrecog::InstanceToJson(gen_config), gen_out);
      return kExitOk;
    }
    if (*recognize) return RunRecognize(recognize_options, "recognize");
    if (*verify) return RunRecognize(verify_options, "verify");
    if (*selftest) return RunSelftest(selftest_seed, selftest_out);
    if (*bench) {
      for (std::uint64_t q : bench_ladder) {
        bbrecog::SimulatedGroup probe(q, bbrecog::Flavor::kSl2, bench_seed);
      }
      return RunBench(bench_ladder, bench_seed, bench_samples, bench_out);
    }
  } catch (const bbrecog::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  }
  return kExitOk;
}
