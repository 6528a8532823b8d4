#include "pwrc/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <string>

#include "pwrc/error.hpp"

namespace pwrc {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

std::vector<std::size_t> knots_for_count(std::size_t signal_count, std::size_t p) {
  if (p < 2) throw InvalidInput("need at least two knots");
  std::vector<std::size_t> idx{0};
  for (std::size_t i = 1; i < p; ++i) {
    const double pos = std::round(static_cast<double>(i) * static_cast<double>(signal_count) /
                                  static_cast<double>(p - 1));
    const auto k = static_cast<std::size_t>(pos) - 1;
    if (k <= idx.back()) {
      throw DegenerateKnots(std::to_string(p) + " knots do not fit in " +
                            std::to_string(signal_count) + " signals");
    }
    idx.push_back(k);
  }
  return idx;
}

std::vector<std::size_t> knots_for_stride(std::size_t signal_count, std::size_t stride) {
  if (stride < 1) throw InvalidInput("stride must be positive");
  std::vector<std::size_t> idx{0};
  for (std::size_t s = stride; s <= signal_count; s += stride) {
    if (s - 1 > idx.back()) idx.push_back(s - 1);
  }
  if (idx.back() != signal_count - 1) idx.push_back(signal_count - 1);
  if (idx.size() < 2) throw DegenerateKnots("stride selects fewer than two signals");
  return idx;
}

std::vector<InterpolationPair> make_pairs(const EnsembleDataset& data,
                                          std::span<const std::size_t> indices) {
  std::vector<InterpolationPair> pairs;
  pairs.reserve(indices.size());
  for (std::size_t k : indices) {
    if (k >= data.size()) {
      throw InvalidInput("pair index " + std::to_string(k + 1) + " exceeds dataset size " +
                         std::to_string(data.size()));
    }
    const Signal& s = data.signals[k];
    pairs.push_back({s.x, s.y, s.t});
  }
  return pairs;
}

std::vector<Signal> held_out(const EnsembleDataset& data, std::span<const std::size_t> excluded) {
  const std::set<std::size_t> skip(excluded.begin(), excluded.end());
  std::vector<Signal> out;
  for (std::size_t k = 0; k < data.size(); ++k) {
    if (!skip.contains(k)) out.push_back(data.signals[k]);
  }
  return out;
}

EvalReport evaluate(const PiecewiseTransform& F, const EnsembleDataset& data, Execution exec) {
  if (data.m != F.m() || data.n != F.n() || data.q != F.q()) {
    throw InvalidInput("dataset dimensions do not match the model");
  }
  EvalReport rep;
  std::vector<Signal> inside;
  for (std::size_t k = 0; k < data.size(); ++k) {
    const double t = data.signals[k].t;
    if (t < F.knots().front() || t > F.knots().back()) continue;
    rep.signal.push_back(k);
    rep.t.push_back(t);
    rep.interval.push_back(locate(F.knots(), t));
    inside.push_back(data.signals[k]);
  }
  if (inside.empty()) throw OutOfDomain("no dataset signal lies inside the model's time domain");
  rep.error = transform_errors(F, inside, exec);
  const auto [lo, hi] = std::minmax_element(rep.error.begin(), rep.error.end());
  rep.eps_min = *lo;
  rep.eps_max = *hi;

  for (std::size_t j = 0; j < F.intervals(); ++j) {
    KnotCheck check;
    check.interval = j;
    check.t = j == 0 ? F.knots()[0] : F.knots()[j + 1];
    check.predicted = predicted_knot_error(F, j);
    for (const Signal& s : data.signals) {
      if (s.t == check.t) {
        check.empirical = signal_error(s.x, apply_sub(F, j, s.y));
        break;
      }
    }
    rep.knots.push_back(check);
  }
  return rep;
}

BenchReport run_bench(const BenchConfig& cfg) {
  const EnsembleDataset data = generate_synthetic(cfg.data);
  std::set<std::size_t> all_knots;
  std::vector<std::vector<std::size_t>> knot_sets;
  for (std::size_t p : cfg.knot_counts) {
    knot_sets.push_back(knots_for_count(data.size(), p));
    all_knots.insert(knot_sets.back().begin(), knot_sets.back().end());
  }
  const std::vector<std::size_t> excluded(all_knots.begin(), all_knots.end());
  const std::vector<Signal> test = held_out(data, excluded);
  if (test.empty()) throw InvalidInput("bench: no held-out signals remain");

  BenchReport rep;
  rep.test_signals = test.size();
  for (std::size_t rank : cfg.ranks) {
    const auto individual = klt_fit_individual(test, RankBudget{rank}, cfg.execution);
    for (std::size_t c = 0; c < cfg.knot_counts.size(); ++c) {
      const auto pairs = make_pairs(data, knot_sets[c]);
      FitConfig fc = FitConfig::uniform(rank);
      fc.factorization = cfg.factorization;
      fc.execution = cfg.execution;

      const auto start = std::chrono::steady_clock::now();
      const PiecewiseTransform F = fit(pairs, fc);
      const auto stop = std::chrono::steady_clock::now();

      const ComparisonReport ind = compare(F, individual, test, cfg.execution);
      const KltModel generic = klt_fit_pooled(pairs, RankBudget{rank});
      const ComparisonReport gen = compare(F, std::span(&generic, 1), test, cfg.execution);

      BenchCell cell;
      cell.p = cfg.knot_counts[c];
      cell.rank = rank;
      cell.ratio = *uniform_compression_ratio(F);
      cell.eps_min = ind.eps_min;
      cell.eps_max = ind.eps_max;
      cell.delta_min = ind.delta_min;
      cell.delta_max = ind.delta_max;
      cell.generic_delta_min = gen.delta_min;
      cell.generic_delta_max = gen.delta_max;
      std::size_t wins = 0;
      for (std::size_t k = 0; k < test.size(); ++k) {
        if (gen.transform_error[k] <= gen.klt_error[k]) ++wins;
      }
      cell.beats_generic = static_cast<double>(wins) / static_cast<double>(test.size());
      cell.fit_seconds = std::chrono::duration<double>(stop - start).count();
      rep.cells.push_back(cell);
    }
  }
  return rep;
}

void write_bench_csv(std::ostream& out, const BenchReport& report, bool with_timings) {
  out << "p,rank,c,eps_min,eps_max,delta_min,delta_max,generic_delta_min,generic_delta_max,"
         "beats_generic";
  if (with_timings) out << ",fit_seconds";
  out << '\n';
  for (const BenchCell& c : report.cells) {
    out << c.p << ',' << c.rank << ',' << c.ratio.rank << '/' << c.ratio.dim << ','
        << fmt(c.eps_min) << ',' << fmt(c.eps_max) << ',' << fmt(c.delta_min) << ','
        << fmt(c.delta_max) << ',' << fmt(c.generic_delta_min) << ','
        << fmt(c.generic_delta_max) << ',' << fmt(c.beats_generic);
    if (with_timings) out << ',' << fmt(c.fit_seconds);
    out << '\n';
  }
}

}  // namespace pwrc
