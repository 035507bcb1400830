// Command line front end: clustering, cluster-count estimation, and a small
// benchmarking harness over the library's methods, with a JSON manifest
// written for every run so results can be reproduced exactly.
#include <CLI11.hpp>

#include <nlohmann/json.hpp>

#include <array>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "shc/dataset.hpp"
#include "shc/datasets.hpp"
#include "shc/dendrogram.hpp"
#include "shc/estimate_k.hpp"
#include "shc/kmeans.hpp"
#include "shc/linkage.hpp"
#include "shc/pipeline.hpp"
#include "shc/rng.hpp"
#include "shc/score.hpp"

namespace {

using nlohmann::json;

// Seed streams: the master seed from --seed fans out into one stream for
// dataset generation and one for the algorithms, so the same data can be
// re-clustered under different algorithm settings and vice versa.
constexpr std::uint64_t kDataStream = 0xDA7A;
constexpr std::uint64_t kAlgoStream = 0xA190;
constexpr std::uint64_t kFnvBasis = 1469598103934665603ULL;

std::uint64_t fnv1a64(const void* data, std::size_t len, std::uint64_t h = kFnvBasis) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= bytes[i];
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string content_hash(const std::string& s) { return hex64(fnv1a64(s.data(), s.size())); }

std::string dataset_hash(const shc::Dataset& d) {
  std::uint64_t h = kFnvBasis;
  const std::int64_t shape[2] = {d.size(), d.dim()};
  h = fnv1a64(shape, sizeof shape, h);
  h = fnv1a64(d.values().data(), d.values().size() * sizeof(double), h);
  if (d.has_labels()) h = fnv1a64(d.labels().data(), d.labels().size() * sizeof(int), h);
  return hex64(h);
}

struct Options {
  std::string input;
  std::string label;
  std::string gen;
  int k = 0;  // bench: 0 means "use the label count"
  int b = 200;
  int kmax = 25;
  double alpha = 0.05;
  std::string dissim = "p20";
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string dump_dendrogram;
  int runs = 10;
  std::vector<std::string> methods{"shc-min", "shc-p20", "kmeans", "eac"};
};

void add_dataset_flags(CLI::App& cmd, Options& o) {
  auto* input = cmd.add_option("--input", o.input, "Numeric CSV file (optional single header line)");
  auto* gen = cmd.add_option("--gen", o.gen,
                             "Built-in generator: three_normals, spiral, half_ring, "
                             "blobs, two_uniform_1d");
  input->excludes(gen);
  gen->excludes(input);
  cmd.add_option("--label", o.label,
                 "CSV column holding ground-truth labels, by header name or 0-based index");
  cmd.add_option("--seed", o.seed, "Master seed; when omitted one is drawn and printed");
}

void add_ensemble_flags(CLI::App& cmd, Options& o) {
  cmd.add_option("--b", o.b, "Ensemble size")->capture_default_str();
  cmd.add_option("--kmax", o.kmax, "Largest per-iteration merge target")->capture_default_str();
  cmd.add_option("--alpha", o.alpha, "Small-cluster share threshold")->capture_default_str();
  cmd.add_option("--dissim", o.dissim, "Set dissimilarity: min or p20")
      ->check(CLI::IsMember({"min", "p20"}))
      ->capture_default_str();
}

shc::SetDissimilarity dissim_from_flag(const std::string& flag) {
  return flag == "min" ? shc::SetDissimilarity::minimum()
                       : shc::SetDissimilarity::percentile20();
}

shc::Dataset make_dataset(const Options& o, std::uint64_t data_seed) {
  if (!o.input.empty()) {
    std::optional<std::string> label;
    if (!o.label.empty()) label = o.label;
    return shc::load_csv(o.input, label);
  }
  if (o.gen == "three_normals") return shc::gen_three_normals(data_seed);
  if (o.gen == "spiral") return shc::gen_spiral(100, 0.005, data_seed);
  if (o.gen == "half_ring") return shc::gen_half_ring(100, 200, 0.05, data_seed);
  if (o.gen == "blobs") {
    const std::vector<int> counts{60, 60};
    const std::vector<std::array<double, 2>> centers{{0.0, 0.0}, {20.0, 0.0}};
    return shc::gen_blobs(counts, centers, 0.5, data_seed);
  }
  if (o.gen == "two_uniform_1d") return shc::gen_two_uniform_1d(1.0, 500, data_seed);
  if (o.gen.empty()) throw std::invalid_argument("one of --input or --gen is required");
  throw std::invalid_argument("unknown generator '" + o.gen +
                              "'; expected three_normals, spiral, half_ring, blobs or "
                              "two_uniform_1d");
}

json dataset_source(const Options& o) {
  if (!o.input.empty()) return "csv:" + o.input;
  return "gen:" + o.gen;
}

// Collects everything the manifest records and serializes output files so
// their bytes and hashes are known before they hit disk.
class RunRecorder {
 public:
  RunRecorder(std::string command, std::uint64_t seed)
      : command_(std::move(command)), seed_(seed), started_(std::chrono::steady_clock::now()) {}

  void set_config(json cfg) { config_ = std::move(cfg); }

  void set_dataset(const shc::Dataset& d, const Options& o) {
    dataset_ = json{{"n", d.size()},
                    {"m", d.dim()},
                    {"labeled", d.has_labels()},
                    {"hash", dataset_hash(d)},
                    {"source", dataset_source(o)}};
  }

  void write_output(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) throw std::runtime_error("failed while writing '" + path + "'");
    outputs_.push_back(json{
        {"path", path}, {"bytes", content.size()}, {"hash", content_hash(content)}});
  }

  void write_manifest(const std::string& path) const {
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
    const json m{{"command", command_}, {"config", config_},   {"seed", seed_},
                 {"dataset", dataset_}, {"outputs", outputs_}, {"wall_time_s", wall}};
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << m.dump(2) << '\n';
    if (!f) throw std::runtime_error("failed while writing '" + path + "'");
  }

 private:
  std::string command_;
  std::uint64_t seed_;
  json config_;
  json dataset_;
  json outputs_ = json::array();
  std::chrono::steady_clock::time_point started_;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  std::random_device rd;
  const std::uint64_t drawn = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  std::cout << "seed " << drawn << '\n';
  return drawn;
}

int cmd_cluster(const Options& o, std::uint64_t master) {
  RunRecorder rec("cluster", master);
  shc::ShcConfig cfg;
  cfg.k = o.k;
  cfg.alpha = o.alpha;
  cfg.ensemble.iterations = o.b;
  cfg.ensemble.k_max = o.kmax;
  cfg.ensemble.dissim = dissim_from_flag(o.dissim);
  cfg.ensemble.seed = shc::derive_seed(master, kAlgoStream);

  const shc::Dataset data = make_dataset(o, shc::derive_seed(master, kDataStream));
  rec.set_dataset(data, o);
  shc::validate(cfg, data.size());
  rec.set_config(json{{"k", o.k},
                      {"b", o.b},
                      {"kmax", o.kmax},
                      {"alpha", o.alpha},
                      {"dissim", o.dissim},
                      {"input", o.input},
                      {"label", o.label},
                      {"gen", o.gen},
                      {"out", o.out},
                      {"dump_dendrogram", o.dump_dendrogram}});

  // Same steps as shc_cluster, kept separate so the stabilized merge tree is
  // available for --dump-dendrogram without a second ensemble pass.
  const shc::EnsembleResult ens = shc::ensemble(data, cfg.ensemble);
  const shc::GrowPruneResult stage = shc::grow_and_prune(ens.distances, cfg.k, cfg.alpha);

  std::string labels;
  for (const int id : stage.clustering.assignment()) {
    labels += std::to_string(id);
    labels += '\n';
  }
  rec.write_output(o.out, labels);
  if (!o.dump_dendrogram.empty()) {
    const shc::Dendrogram tree =
        shc::single_linkage(ens.distances, shc::SetDissimilarity::minimum());
    std::string doc = tree.to_json();
    if (doc.empty() || doc.back() != '\n') doc += '\n';
    rec.write_output(o.dump_dendrogram, doc);
  }
  rec.write_manifest(o.out + ".manifest.json");
  std::cout << "wrote " << o.out << " (n=" << data.size()
            << ", k=" << stage.clustering.cluster_count() << ")\n";
  return 0;
}

int cmd_estimate_k(const Options& o, std::uint64_t master) {
  RunRecorder rec("estimate-k", master);
  shc::EkConfig cfg;
  cfg.alpha = o.alpha;
  cfg.ensemble.iterations = o.b;
  cfg.ensemble.k_max = o.kmax;
  cfg.ensemble.dissim = dissim_from_flag(o.dissim);
  cfg.ensemble.seed = shc::derive_seed(master, kAlgoStream);

  const shc::Dataset data = make_dataset(o, shc::derive_seed(master, kDataStream));
  rec.set_dataset(data, o);
  shc::validate(cfg, data.size());
  rec.set_config(json{{"b", o.b},
                      {"kmax", o.kmax},
                      {"alpha", o.alpha},
                      {"dissim", o.dissim},
                      {"input", o.input},
                      {"label", o.label},
                      {"gen", o.gen},
                      {"out", o.out}});

  const shc::EkResult r = shc::estimate_k(data, cfg);
  const json body{{"estimate", r.estimate},
                  {"rounded", r.rounded},
                  {"counts", r.counts},
                  {"lifetime_ks", r.lifetime_ks},
                  {"cuts", r.lifetime_cuts},
                  {"removed_sizes", r.removed_sizes}};
  rec.write_output(o.out, body.dump(2) + "\n");
  rec.write_manifest(o.out + ".manifest.json");
  std::cout << "estimate " << r.estimate << '\n'
            << "rounded " << r.rounded << '\n'
            << "counts " << r.counts[0] << ' ' << r.counts[1] << '\n'
            << "cuts " << r.lifetime_cuts[0] << ' ' << r.lifetime_cuts[1] << '\n';
  return 0;
}

shc::ClusterMethod make_method(const std::string& name, const Options& o, int k) {
  if (name == "kmeans") {
    return [k](const shc::Dataset& d, std::uint64_t s) { return shc::kmeans(d, k, s).clustering; };
  }
  if (name == "eac") {
    const int b = o.b;
    const int kmax = o.kmax;
    return [b, kmax, k](const shc::Dataset& d, std::uint64_t s) {
      return shc::eac_baseline(d, b, kmax, k, s);
    };
  }
  if (name == "shc-min" || name == "shc-p20") {
    shc::ShcConfig cfg;
    cfg.k = k;
    cfg.alpha = o.alpha;
    cfg.ensemble.iterations = o.b;
    cfg.ensemble.k_max = o.kmax;
    cfg.ensemble.dissim = name == "shc-min" ? shc::SetDissimilarity::minimum()
                                            : shc::SetDissimilarity::percentile20();
    return [cfg](const shc::Dataset& d, std::uint64_t s) {
      shc::ShcConfig run = cfg;
      run.ensemble.seed = s;
      return shc::shc_cluster(d, run).clustering;
    };
  }
  throw std::invalid_argument("unknown method '" + name +
                              "'; expected shc-min, shc-p20, kmeans or eac");
}

int cmd_bench(const Options& o, std::uint64_t master) {
  RunRecorder rec("bench", master);
  if (o.runs < 1) throw std::invalid_argument("--runs must be >= 1");
  if (o.methods.empty()) throw std::invalid_argument("--methods must name at least one method");

  const shc::Dataset data = make_dataset(o, shc::derive_seed(master, kDataStream));
  rec.set_dataset(data, o);
  if (!data.has_labels()) {
    throw std::runtime_error("bench requires a labeled dataset (generator labels or --label)");
  }
  const int k = o.k > 0 ? o.k : data.label_count();
  rec.set_config(json{{"k", k},
                      {"b", o.b},
                      {"kmax", o.kmax},
                      {"alpha", o.alpha},
                      {"runs", o.runs},
                      {"methods", o.methods},
                      {"input", o.input},
                      {"label", o.label},
                      {"gen", o.gen},
                      {"out", o.out}});

  const std::uint64_t algo_seed = shc::derive_seed(master, kAlgoStream);
  std::vector<shc::ScoreReport> reports;
  reports.reserve(o.methods.size());
  for (const std::string& name : o.methods) {
    // Seed stream keyed by method name, so a single-method run reproduces
    // that method's column from a full run with the same --seed.
    const std::uint64_t base = shc::derive_seed(algo_seed, fnv1a64(name.data(), name.size()));
    reports.push_back(shc::repeat_and_score(make_method(name, o, k), data, o.runs, base));
  }

  const std::string table = shc::render_score_table(o.methods, reports);
  std::cout << table;
  rec.write_output(o.out, shc::render_score_json(o.methods, reports));
  rec.write_manifest(o.out + ".manifest.json");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stabilized hybrid clustering: ensemble K-means + single-linkage merging "
               "with small-cluster pruning"};
  app.set_version_flag("--version", "shc 0.1.0");
  app.require_subcommand(1);

  Options cluster_opts;
  cluster_opts.out = "labels.txt";
  CLI::App& cluster = *app.add_subcommand("cluster", "Cluster a dataset, one label per line");
  add_dataset_flags(cluster, cluster_opts);
  add_ensemble_flags(cluster, cluster_opts);
  cluster.add_option("--k", cluster_opts.k, "Number of clusters")->required();
  cluster.add_option("--out", cluster_opts.out, "Label output file")->capture_default_str();
  cluster.add_option("--dump-dendrogram", cluster_opts.dump_dendrogram,
                     "Also write the stabilized merge tree as JSON");

  Options ek_opts;
  ek_opts.out = "estimate.json";
  CLI::App& estimate = *app.add_subcommand("estimate-k", "Estimate the number of clusters");
  add_dataset_flags(estimate, ek_opts);
  add_ensemble_flags(estimate, ek_opts);
  estimate.add_option("--out", ek_opts.out, "Result JSON file")->capture_default_str();

  Options bench_opts;
  bench_opts.out = "bench.json";
  CLI::App& bench = *app.add_subcommand(
      "bench", "Score methods against ground truth over repeated seeded runs");
  add_dataset_flags(bench, bench_opts);
  bench.add_option("--b", bench_opts.b, "Ensemble size for shc/eac methods")
      ->capture_default_str();
  bench.add_option("--kmax", bench_opts.kmax, "Largest per-iteration merge target")
      ->capture_default_str();
  bench.add_option("--alpha", bench_opts.alpha, "Small-cluster share threshold")
      ->capture_default_str();
  bench.add_option("--k", bench_opts.k, "Cluster count (default: the label count)");
  bench.add_option("--runs", bench_opts.runs, "Scored runs per method")->capture_default_str();
  bench.add_option("--methods", bench_opts.methods, "Methods: shc-min, shc-p20, kmeans, eac")
      ->delimiter(',')
      ->capture_default_str();
  bench.add_option("--out", bench_opts.out, "Score JSON file")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cluster.parsed()) return cmd_cluster(cluster_opts, resolve_seed(cluster_opts.seed));
    if (estimate.parsed()) return cmd_estimate_k(ek_opts, resolve_seed(ek_opts.seed));
    return cmd_bench(bench_opts, resolve_seed(bench_opts.seed));
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
