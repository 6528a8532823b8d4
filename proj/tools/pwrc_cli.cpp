// Command-line driver: generate | fit | compress | decompress | eval | bench.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pwrc/error.hpp"
#include "pwrc/experiment.hpp"
#include "pwrc/io.hpp"
#include "pwrc/synthetic.hpp"
#include "pwrc/transform.hpp"

namespace {

using namespace pwrc;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::size_t parse_count(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw InvalidInput("bad " + what + " '" + s + "'");
  }
  if (used != s.size() || v < 0) throw InvalidInput("bad " + what + " '" + s + "'");
  return static_cast<std::size_t>(v);
}

std::vector<std::size_t> parse_counts(const std::string& s, const std::string& what) {
  std::vector<std::size_t> out;
  for (const auto& item : split_list(s)) out.push_back(parse_count(item, what));
  if (out.empty()) throw InvalidInput("empty " + what + " list");
  return out;
}

// "1,50,100" (1-based signal indices), "stride:50" or "count:9".
std::vector<std::size_t> parse_pairs(const std::string& spec, std::size_t signal_count) {
  if (spec.rfind("stride:", 0) == 0) {
    return knots_for_stride(signal_count, parse_count(spec.substr(7), "stride"));
  }
  if (spec.rfind("count:", 0) == 0) {
    return knots_for_count(signal_count, parse_count(spec.substr(6), "knot count"));
  }
  std::vector<std::size_t> idx;
  for (std::size_t k : parse_counts(spec, "pair index")) {
    if (k < 1) throw InvalidInput("pair indices are 1-based");
    idx.push_back(k - 1);
  }
  return idx;
}

// "5/116" or "0.043" against reference dimension m.
std::size_t parse_ratio_rank(const std::string& s, Eigen::Index m) {
  double value = 0.0;
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      value = std::stod(s);
    } else {
      const double num = std::stod(s.substr(0, slash));
      const double den = std::stod(s.substr(slash + 1));
      if (den == static_cast<double>(m)) return static_cast<std::size_t>(num);
      value = num / den;
    }
  } catch (const std::exception&) {
    throw InvalidInput("bad compression ratio '" + s + "'");
  }
  const double rank = std::round(value * static_cast<double>(m));
  if (!(rank >= 1.0)) throw InvalidRank("compression ratio '" + s + "' gives rank < 1");
  return static_cast<std::size_t>(rank);
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("PWRC_SEED")) {
    return static_cast<std::uint64_t>(parse_count(env, "PWRC_SEED"));
  }
  return 1;
}

Factorization parse_mode(const std::string& mode) {
  if (mode == "A") return Factorization::kScaledDecoder;
  if (mode == "B") return Factorization::kOrthonormalDecoder;
  throw InvalidInput("mode must be A or B");
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Piecewise rank-constrained transform: fit, compress, reconstruct, evaluate"};
  app.require_subcommand(1);

  SyntheticSpec gen;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  auto* generate = app.add_subcommand("generate", "Write a seeded synthetic ensemble");
  generate->add_option("--out", out_path, "Output dataset directory")->required();
  generate->add_option("--m", gen.m, "Reference dimension");
  generate->add_option("--n", gen.n, "Observation dimension");
  generate->add_option("--q", gen.q, "Realizations per signal");
  generate->add_option("--N", gen.count, "Number of signals");
  generate->add_option("--smoothness", gen.smoothness, "Larger is smoother");
  generate->add_option("--seed", seed, "RNG seed (fallback: PWRC_SEED)");

  std::string data_dir, pairs_spec, rank_spec = "1", mode = "B";
  std::optional<double> tol;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a model from interpolation pairs");
  fit_cmd->add_option("--data", data_dir, "Dataset directory")->required();
  fit_cmd->add_option("--pairs", pairs_spec, "1-based list, stride:<s> or count:<p>")->required();
  fit_cmd->add_option("--rank", rank_spec, "Shared rank or per-interval list");
  fit_cmd->add_option("--mode", mode, "Factorization A (D=U S) or B (D=U)");
  fit_cmd->add_option("--tol", tol, "Relative pseudo-inverse threshold");
  fit_cmd->add_option("--out", out_path, "Model file (.pwrc)")->required();

  std::string model_path, in_path;
  double t = 0.0;
  auto* compress_cmd = app.add_subcommand("compress", "Compress one observation");
  compress_cmd->add_option("--model", model_path)->required();
  compress_cmd->add_option("--in", in_path, "Observation CSV (n x q)")->required();
  compress_cmd->add_option("--t", t, "Time stamp")->required();
  compress_cmd->add_option("--out", out_path, "Block file (.pwz)")->required();

  auto* decompress_cmd = app.add_subcommand("decompress", "Reconstruct from a block");
  decompress_cmd->add_option("--model", model_path)->required();
  decompress_cmd->add_option("--in", in_path, "Block file (.pwz)")->required();
  decompress_cmd->add_option("--out", out_path, "Reconstruction CSV (m x q)")->required();

  auto* eval_cmd = app.add_subcommand("eval", "Per-signal and knot errors of a model");
  eval_cmd->add_option("--model", model_path)->required();
  eval_cmd->add_option("--data", data_dir)->required();

  std::vector<std::string> grid;
  SyntheticSpec bench_data;
  bool timings = false;
  auto* bench_cmd = app.add_subcommand("bench", "Accuracy grid over knot counts and ratios");
  bench_cmd->add_option("--grid", grid, "p=<list> c=<list of r/m>");
  bench_cmd->add_option("--seed", seed, "RNG seed (fallback: PWRC_SEED)");
  bench_cmd->add_option("--m", bench_data.m);
  bench_cmd->add_option("--n", bench_data.n);
  bench_cmd->add_option("--q", bench_data.q);
  bench_cmd->add_option("--N", bench_data.count);
  bench_cmd->add_option("--smoothness", bench_data.smoothness);
  bench_cmd->add_option("--mode", mode);
  bench_cmd->add_option("--out", out_path, "CSV output (default stdout)");
  bench_cmd->add_flag("--timings", timings, "Append fit runtimes (not reproducible)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) {
      gen.seed = resolve_seed(seed);
      save_dataset(out_path, generate_synthetic(gen));
    } else if (*fit_cmd) {
      const EnsembleDataset data = load_dataset(data_dir);
      const auto indices = parse_pairs(pairs_spec, data.size());
      const auto pairs = make_pairs(data, indices);
      FitConfig cfg;
      cfg.ranks = parse_counts(rank_spec, "rank");
      cfg.tol = tol;
      cfg.factorization = parse_mode(mode);
      save_model(out_path, fit(pairs, cfg));
    } else if (*compress_cmd) {
      const PiecewiseTransform F = load_model(model_path);
      save_block(out_path, compress(F, t, SampleMatrix(load_csv(in_path))));
    } else if (*decompress_cmd) {
      const PiecewiseTransform F = load_model(model_path);
      save_csv(out_path, decompress(F, load_block(in_path)).data());
    } else if (*eval_cmd) {
      const PiecewiseTransform F = load_model(model_path);
      const EvalReport rep = evaluate(F, load_dataset(data_dir));
      std::cout << "signal,t,interval,error\n";
      for (std::size_t i = 0; i < rep.signal.size(); ++i) {
        std::cout << rep.signal[i] + 1 << ',' << num(rep.t[i]) << ',' << rep.interval[i] + 1 << ','
                  << num(rep.error[i]) << '\n';
      }
      std::cout << "summary,eps_min,eps_max\n"
                << "summary," << num(rep.eps_min) << ',' << num(rep.eps_max) << '\n';
      std::cout << "knot,interval,t,predicted,empirical\n";
      for (const KnotCheck& k : rep.knots) {
        std::cout << "knot," << k.interval + 1 << ',' << num(k.t) << ',' << num(k.predicted) << ','
                  << (k.empirical ? num(*k.empirical) : std::string("NA")) << '\n';
      }
    } else if (*bench_cmd) {
      BenchConfig cfg;
      bench_data.seed = resolve_seed(seed);
      cfg.data = bench_data;
      cfg.factorization = parse_mode(mode);
      cfg.ranks = {std::max<std::size_t>(1, static_cast<std::size_t>(bench_data.m / 8))};
      for (const auto& g : grid) {
        if (g.rfind("p=", 0) == 0) {
          cfg.knot_counts = parse_counts(g.substr(2), "knot count");
        } else if (g.rfind("c=", 0) == 0) {
          cfg.ranks.clear();
          for (const auto& c : split_list(g.substr(2))) {
            cfg.ranks.push_back(parse_ratio_rank(c, bench_data.m));
          }
        } else {
          throw InvalidInput("unknown grid axis '" + g + "'");
        }
      }
      const BenchReport rep = run_bench(cfg);
      if (out_path.empty()) {
        write_bench_csv(std::cout, rep, timings);
      } else {
        std::ofstream out(out_path);
        if (!out) throw FormatError("cannot open " + out_path);
        write_bench_csv(out, rep, timings);
      }
      for (const BenchCell& c : rep.cells) {
        std::cerr << "p=" << c.p << " r=" << c.rank << " fit " << c.fit_seconds << " s\n";
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "pwrc: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
