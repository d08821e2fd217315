// tts: streaming temporal-triangle counting toolbox.
//
// Subcommands cover the whole pipeline: preprocessing edge lists, exact
// counting, per-edge weights, predictor construction, the streaming
// estimator, multi-seed trials, and synthetic data generation.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tts/baseline.hpp"
#include "tts/edge.hpp"
#include "tts/errors.hpp"
#include "tts/harness.hpp"
#include "tts/oracle.hpp"
#include "tts/predictor.hpp"
#include "tts/step.hpp"

namespace {

using nlohmann::json;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("TTS_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw tts::ArgumentError("TTS_SEED is not a valid integer");
    }
  }
  return 42;
}

tts::EdgeStream load_input(const std::string& path, bool skip_preprocess) {
  tts::EdgeStream raw = tts::parse_stream_file(path);
  if (skip_preprocess) {
    tts::verify_preprocessed(raw);
    return raw;
  }
  return tts::preprocess(raw).first;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << std::endl;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      throw tts::ParseError("cannot open '" + out_path + "' for writing");
    }
    out << text << '\n';
  }
}

json run_to_json(std::uint64_t seed, const tts::RunResult& r) {
  json j;
  j["seed"] = seed;
  j["estimates"] = r.estimates;
  j["peak_live_edges"] = r.stats.peak_live_edges;
  j["peak_heavy"] = r.stats.peak_heavy;
  j["wedges_examined"] = r.stats.wedges_examined;
  j["edges_retained"] = r.stats.edges_retained;
  j["elapsed_ms"] = r.stats.elapsed_ms;
  return j;
}

json trial_to_json(const tts::TrialReport& report) {
  json j;
  j["schema"] = 1;
  j["runs"] = report.runs;
  j["single_run"] = report.single_run;
  j["config"] = {{"delta", report.delta},
                 {"p", report.p},
                 {"base_seed", report.base_seed},
                 {"predictor", report.predictor}};
  j["memory"] = {{"mean_peak_live_edges", report.mean_peak_live_edges},
                 {"max_peak_live_edges", report.max_peak_live_edges}};
  json kinds = json::array();
  for (int k = 0; k < tts::kNumTriangleKinds; ++k) {
    const tts::TrialKindStats& stats = report.per_kind[k];
    json entry;
    entry["kind"] = k;
    entry["mean_estimate"] = stats.mean_estimate;
    if (report.exact_available) {
      entry["exact"] = stats.exact;
    } else {
      entry["exact"] = nullptr;
    }
    entry["mae"] = stats.mae ? json(*stats.mae) : json(nullptr);
    entry["std"] = stats.std_dev ? json(*stats.std_dev) : json(nullptr);
    kinds.push_back(entry);
  }
  j["per_kind"] = kinds;
  return j;
}

std::string trial_to_csv(const tts::TrialReport& report) {
  std::ostringstream out;
  out << "kind,exact,mean_estimate,mae,std\n";
  for (int k = 0; k < tts::kNumTriangleKinds; ++k) {
    const tts::TrialKindStats& stats = report.per_kind[k];
    out << k << ',';
    if (report.exact_available) out << stats.exact;
    out << ',' << stats.mean_estimate << ',';
    if (stats.mae) out << *stats.mae;
    out << ',';
    if (stats.std_dev) out << *stats.std_dev;
    out << '\n';
  }
  return out.str();
}

struct CommonOpts {
  std::string input;
  std::string out;
  std::string format = "json";
  bool skip_preprocess = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_format = true) {
  cmd->add_option("--input", opts.input, "edge list file (src dst t)")
      ->required();
  cmd->add_flag("--skip-preprocess", opts.skip_preprocess,
                "assert the input is already preprocessed");
  cmd->add_option("--out", opts.out, "write output to a file");
  if (with_format) {
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"streaming temporal triangle counting"};
  app.require_subcommand(1);

  // ---- preprocess ----
  struct {
    std::string input, out;
  } pre;
  auto* cmd_pre = app.add_subcommand(
      "preprocess", "clean an edge list (self-loops, duplicates, sort, remap)");
  cmd_pre->add_option("--input", pre.input)->required();
  cmd_pre->add_option("--out", pre.out, "cleaned edge list")->required();
  cmd_pre->callback([&] {
    auto [stream, report] = tts::preprocess(tts::parse_stream_file(pre.input));
    tts::write_stream_file(pre.out, stream);
    json j;
    j["schema"] = 1;
    j["removed_self_loops"] = report.removed_self_loops;
    j["removed_duplicates"] = report.removed_duplicates;
    j["remapped_nodes"] = report.remapped_nodes;
    j["final_m"] = report.final_m;
    std::cout << j.dump(2) << std::endl;
  });

  // ---- exact ----
  CommonOpts exact_opts;
  std::int64_t exact_delta = 0;
  auto* cmd_exact =
      app.add_subcommand("exact", "exact per-kind delta-instance counts");
  add_common(cmd_exact, exact_opts);
  cmd_exact->add_option("--delta", exact_delta, "time window")->required();
  cmd_exact->callback([&] {
    tts::EdgeStream s = load_input(exact_opts.input,
                                   exact_opts.skip_preprocess);
    tts::KindCounts counts = tts::enumerate_exact(s, exact_delta);
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    if (exact_opts.format == "csv") {
      std::ostringstream out;
      out << "kind,count\n";
      for (int k = 0; k < tts::kNumTriangleKinds; ++k) {
        out << k << ',' << counts[k] << '\n';
      }
      emit(out.str(), exact_opts.out);
    } else {
      json j;
      j["schema"] = 1;
      j["kinds"] = counts;
      j["total"] = total;
      emit(j.dump(2), exact_opts.out);
    }
  });

  // ---- weights ----
  struct {
    std::string input, out;
    std::int64_t delta = 0;
    bool skip_preprocess = false;
  } wopt;
  auto* cmd_weights =
      app.add_subcommand("weights", "per-edge triangle participation counts");
  cmd_weights->add_option("--input", wopt.input)->required();
  cmd_weights->add_option("--delta", wopt.delta)->required();
  cmd_weights->add_option("--out", wopt.out, "idx W(e) W_0(e) .. W_7(e) lines")
      ->required();
  cmd_weights->add_flag("--skip-preprocess", wopt.skip_preprocess);
  cmd_weights->callback([&] {
    tts::EdgeStream s = load_input(wopt.input, wopt.skip_preprocess);
    tts::EdgeWeights w = tts::edge_weights(s, wopt.delta);
    std::ofstream out(wopt.out);
    if (!out) throw tts::ParseError("cannot open '" + wopt.out + "'");
    for (std::size_t i = 0; i < w.size(); ++i) {
      out << (w.idx_begin + i) << ' ' << w.total[i];
      for (int k = 0; k < tts::kNumTriangleKinds; ++k) {
        out << ' ' << w.per_kind[i][k];
      }
      out << '\n';
    }
  });

  // ---- estimate ----
  CommonOpts est_opts;
  struct {
    std::int64_t delta = 0;
    double p = 1.0;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string predictor = "never";
    std::size_t runs = 1;
  } est;
  auto* cmd_est = app.add_subcommand("estimate", "streaming estimator runs");
  add_common(cmd_est, est_opts);
  cmd_est->add_option("--delta", est.delta)->required();
  cmd_est->add_option("--p", est.p, "sampling probability in (0,1]")
      ->required();
  auto* est_seed = cmd_est->add_option("--seed", est.seed, "base seed");
  cmd_est->add_option("--predictor", est.predictor,
                      "perfect:K | mindeg:K | static:K | hybrid:K | "
                      "threshold:Z | noisy:K:A | never");
  cmd_est->add_option("--runs", est.runs, "independent seeded runs");
  cmd_est->callback([&] {
    if (!*est_seed) est.seed = default_seed();
    tts::EdgeStream s = load_input(est_opts.input, est_opts.skip_preprocess);
    tts::PredictorRequest req = tts::parse_predictor_request(est.predictor);
    tts::PredictorSpec spec =
        tts::resolve_predictor(req, s, est.delta, est.seed);
    tts::EstimatorConfig cfg;
    cfg.delta = est.delta;
    cfg.p = est.p;
    cfg.predictor = &spec;
    if (est_opts.format == "csv") {
      std::ostringstream out;
      out << "seed";
      for (int k = 0; k < tts::kNumTriangleKinds; ++k) out << ",e" << k;
      out << ",peak_live_edges,peak_heavy\n";
      for (std::size_t i = 0; i < est.runs; ++i) {
        cfg.seed = est.seed + i;
        tts::RunResult r = tts::run_step(s, cfg);
        out << cfg.seed;
        for (double v : r.estimates) out << ',' << v;
        out << ',' << r.stats.peak_live_edges << ',' << r.stats.peak_heavy
            << '\n';
      }
      emit(out.str(), est_opts.out);
    } else {
      json runs = json::array();
      for (std::size_t i = 0; i < est.runs; ++i) {
        cfg.seed = est.seed + i;
        runs.push_back(run_to_json(cfg.seed, tts::run_step(s, cfg)));
      }
      json j;
      j["schema"] = 1;
      j["runs"] = runs;
      emit(j.dump(2), est_opts.out);
    }
  });

  // ---- trials ----
  CommonOpts tr_opts;
  struct {
    std::int64_t delta = 0;
    double p = 1.0;
    std::uint64_t seed = 0;
    bool skip_exact = false;
    std::string predictor = "never";
    std::size_t runs = 10;
  } tr;
  auto* cmd_tr =
      app.add_subcommand("trials", "multi-seed trials with MAE reporting");
  add_common(cmd_tr, tr_opts);
  cmd_tr->add_option("--delta", tr.delta)->required();
  cmd_tr->add_option("--p", tr.p)->required();
  auto* tr_seed = cmd_tr->add_option("--seed", tr.seed, "base seed");
  cmd_tr->add_option("--predictor", tr.predictor);
  cmd_tr->add_option("--runs", tr.runs);
  cmd_tr->add_flag("--skip-exact", tr.skip_exact,
                   "skip the exact oracle; MAE is reported as null");
  cmd_tr->callback([&] {
    if (!*tr_seed) tr.seed = default_seed();
    tts::EdgeStream s = load_input(tr_opts.input, tr_opts.skip_preprocess);
    tts::PredictorRequest req = tts::parse_predictor_request(tr.predictor);
    tts::PredictorSpec spec = tts::resolve_predictor(req, s, tr.delta,
                                                     tr.seed);
    tts::EstimatorConfig cfg;
    cfg.delta = tr.delta;
    cfg.p = tr.p;
    cfg.predictor = &spec;
    std::optional<tts::KindCounts> exact;
    if (!tr.skip_exact) exact = tts::enumerate_exact(s, tr.delta);
    tts::TrialReport report =
        tts::run_trials(s, cfg, tr.runs, tr.seed, exact, tr.predictor);
    if (tr_opts.format == "csv") {
      emit(trial_to_csv(report), tr_opts.out);
    } else {
      emit(trial_to_json(report).dump(2), tr_opts.out);
    }
  });

  // ---- match-p ----
  struct {
    double p = 0.0;
    double k_frac = 0.0;
  } mp;
  auto* cmd_mp = app.add_subcommand(
      "match-p", "matched sampling probability for the no-predictor baseline");
  cmd_mp->add_option("--p", mp.p)->required();
  cmd_mp->add_option("--k-frac", mp.k_frac, "heavy fraction K/m")->required();
  cmd_mp->callback([&] {
    if (!(mp.p > 0.0 && mp.p <= 1.0)) {
      throw tts::ArgumentError("p must be in (0, 1]");
    }
    if (mp.k_frac < 0.0 || mp.k_frac > 1.0) {
      throw tts::ArgumentError("k-frac must be in [0, 1]");
    }
    // (p(m-K)+K)/m with K = f*m
    const double p_tilde =
        std::min(1.0, mp.p * (1.0 - mp.k_frac) + mp.k_frac);
    std::cout << p_tilde << std::endl;
  });

  // ---- predict-build ----
  struct {
    std::string input, out, spec;
    std::int64_t delta = 0;
    std::uint64_t seed = 0;
    bool seed_given = false;
    bool emit_threshold = false;
    bool skip_preprocess = false;
  } pb;
  auto* cmd_pb =
      app.add_subcommand("predict-build", "materialize a predictor spec");
  cmd_pb->add_option("--input", pb.input)->required();
  cmd_pb->add_option("--delta", pb.delta)->required();
  cmd_pb->add_option("--spec", pb.spec)->required();
  cmd_pb->add_option("--out", pb.out)->required();
  auto* pb_seed = cmd_pb->add_option("--seed", pb.seed);
  cmd_pb->add_flag("--emit-threshold", pb.emit_threshold,
                   "learn zeta from a mindeg:K spec and write 'threshold "
                   "zeta' instead of idx lines");
  cmd_pb->add_flag("--skip-preprocess", pb.skip_preprocess);
  cmd_pb->callback([&] {
    if (!*pb_seed) pb.seed = default_seed();
    tts::EdgeStream s = load_input(pb.input, pb.skip_preprocess);
    tts::PredictorRequest req = tts::parse_predictor_request(pb.spec);
    std::ofstream out(pb.out);
    if (!out) throw tts::ParseError("cannot open '" + pb.out + "'");
    json j;
    j["schema"] = 1;
    if (pb.emit_threshold) {
      if (req.kind != tts::PredictorKind::kMinDegree) {
        throw tts::ArgumentError(
            "--emit-threshold learns from a mindeg:K spec");
      }
      const std::uint64_t zeta = tts::learn_threshold(s, pb.delta, req.k);
      out << "threshold " << zeta << '\n';
      j["threshold"] = zeta;
    } else {
      tts::PredictorSpec spec =
          tts::resolve_predictor(req, s, pb.delta, pb.seed);
      for (tts::EdgeIdx idx : spec.heavy_set) out << idx << '\n';
      j["heavy"] = spec.heavy_set.size();
    }
    std::cout << j.dump(2) << std::endl;
  });

  // ---- correlate ----
  CommonOpts co_opts;
  struct {
    std::int64_t delta = 0;
    std::uint64_t k = 0;
    std::uint64_t seed = 0;
    std::string spec;
  } co;
  auto* cmd_co = app.add_subcommand(
      "correlate", "Jaccard / V-metric between perfect top-K and a predictor");
  add_common(cmd_co, co_opts);
  cmd_co->add_option("--delta", co.delta)->required();
  cmd_co->add_option("--k", co.k, "perfect top-K size")->required();
  cmd_co->add_option("--spec", co.spec, "predicted heavy set")->required();
  auto* co_seed = cmd_co->add_option("--seed", co.seed);
  cmd_co->callback([&] {
    if (!*co_seed) co.seed = default_seed();
    tts::EdgeStream s = load_input(co_opts.input, co_opts.skip_preprocess);
    tts::EdgeWeights w = tts::edge_weights(s, co.delta);
    tts::RankedEdges perfect = tts::rank_edges(s, w.total);
    tts::PredictorRequest req = tts::parse_predictor_request(co.spec);
    tts::PredictorSpec spec = tts::resolve_predictor(req, s, co.delta,
                                                     co.seed);
    tts::CorrelationReport rep =
        tts::correlation(perfect, spec.heavy_set, co.k);
    if (co_opts.format == "csv") {
      std::ostringstream out;
      out << "jaccard,v_metric,k_perfect,k_predicted\n" << rep.jaccard << ',';
      if (rep.v_metric) out << *rep.v_metric;
      out << ',' << rep.k_perfect << ',' << rep.k_predicted << '\n';
      emit(out.str(), co_opts.out);
    } else {
      json j;
      j["schema"] = 1;
      j["jaccard"] = rep.jaccard;
      j["v_metric"] = rep.v_metric ? json(*rep.v_metric) : json(nullptr);
      j["k_perfect"] = rep.k_perfect;
      j["k_predicted"] = rep.k_predicted;
      emit(j.dump(2), co_opts.out);
    }
  });

  // ---- split ----
  struct {
    std::string input, train_out, test_out;
    double fraction = 0.75;
    bool skip_preprocess = false;
  } sp;
  auto* cmd_sp =
      app.add_subcommand("split", "train/test split by stream order");
  cmd_sp->add_option("--input", sp.input)->required();
  cmd_sp->add_option("--fraction", sp.fraction, "training fraction");
  cmd_sp->add_option("--train-out", sp.train_out)->required();
  cmd_sp->add_option("--test-out", sp.test_out)->required();
  cmd_sp->add_flag("--skip-preprocess", sp.skip_preprocess);
  cmd_sp->callback([&] {
    tts::EdgeStream s = load_input(sp.input, sp.skip_preprocess);
    auto [train, test] = tts::split_stream(s, sp.fraction);
    tts::write_stream_file(sp.train_out, train);
    tts::write_stream_file(sp.test_out, test);
    json j;
    j["schema"] = 1;
    j["train_m"] = train.size();
    j["test_m"] = test.size();
    std::cout << j.dump(2) << std::endl;
  });

  // ---- gen ----
  struct {
    std::uint64_t n = 0, m = 0;
    std::int64_t horizon = 0;
    std::uint64_t seed = 0;
    std::string out;
  } gen;
  auto* cmd_gen = app.add_subcommand("gen", "synthetic skewed random stream");
  cmd_gen->add_option("--n", gen.n)->required();
  cmd_gen->add_option("--m", gen.m)->required();
  cmd_gen->add_option("--horizon", gen.horizon)->required();
  auto* gen_seed = cmd_gen->add_option("--seed", gen.seed);
  cmd_gen->add_option("--out", gen.out)->required();
  cmd_gen->callback([&] {
    if (!*gen_seed) gen.seed = default_seed();
    tts::EdgeStream s = tts::gen_random(gen.n, gen.m, gen.horizon, gen.seed);
    tts::write_stream_file(gen.out, s);
    json j;
    j["schema"] = 1;
    j["n"] = s.num_nodes;
    j["m"] = s.size();
    std::cout << j.dump(2) << std::endl;
  });

  // ---- augment ----
  struct {
    std::string input, out;
    std::uint64_t seed = 0;
    tts::AugmentConfig cfg;
    bool skip_preprocess = false;
  } aug;
  auto* cmd_aug = app.add_subcommand(
      "augment", "close sampled wedges to densify a (bipartite) stream");
  cmd_aug->add_option("--input", aug.input)->required();
  cmd_aug->add_option("--out", aug.out)->required();
  auto* aug_seed = cmd_aug->add_option("--seed", aug.seed);
  cmd_aug->add_option("--neighbors", aug.cfg.neighbors,
                      "first-hop sample size");
  cmd_aug->add_option("--second-hop", aug.cfg.second_hop,
                      "second-hop sample size");
  cmd_aug->add_option("--wedges", aug.cfg.wedges, "wedges closed per node");
  cmd_aug->add_flag("--skip-preprocess", aug.skip_preprocess);
  cmd_aug->callback([&] {
    if (!*aug_seed) aug.seed = default_seed();
    tts::EdgeStream s = load_input(aug.input, aug.skip_preprocess);
    tts::AugmentResult result = tts::augment_bipartite(s, aug.cfg, aug.seed);
    tts::write_stream_file(aug.out, result.stream);
    json j;
    j["schema"] = 1;
    j["m_before"] = s.size();
    j["m_added"] = result.added.size();
    j["m_after"] = result.stream.size();
    std::cout << j.dump(2) << std::endl;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const tts::ArgumentError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
  return 0;
}
