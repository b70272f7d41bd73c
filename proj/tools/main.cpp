// Command-line front end: generate instances, solve them, verify against the
// brute-force oracle, export the reduced LP, and run benchmark sweeps.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nestsolve/errors.hpp"
#include "nestsolve/instances.hpp"
#include "nestsolve/oracle.hpp"
#include "nestsolve/solver.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct GenArgs {
  int m = 1;
  int n = 1;
  std::uint64_t seed = 0;
  double gamma = 0.5;
  double v0 = 1.0;
  double v_low = 0.1, v_high = 10.0;
  double r_low = 0.0, r_high = 10.0;
  std::string cap = "half";
  std::string out;
};

nestsolve::GenSpec to_spec(const GenArgs& args) {
  nestsolve::GenSpec spec;
  spec.num_nests = args.m;
  spec.products_per_nest = args.n;
  spec.seed = args.seed;
  spec.dissimilarity = args.gamma;
  spec.no_purchase_weight = args.v0;
  spec.weight_low = args.v_low;
  spec.weight_high = args.v_high;
  spec.revenue_low = args.r_low;
  spec.revenue_high = args.r_high;
  if (args.cap != "half") {
    std::vector<int> capacities;
    std::stringstream stream(args.cap);
    std::string item;
    while (std::getline(stream, item, ',')) {
      capacities.push_back(std::stoi(item));
    }
    spec.capacities = std::move(capacities);
  }
  return spec;
}

int run_gen(const GenArgs& args) {
  const auto instance = nestsolve::generate(to_spec(args));
  nestsolve::write_instance(instance, args.out);
  std::size_t products = 0;
  long long capacity_total = 0;
  for (const auto& nest : instance.nests) {
    products += nest.products.size();
    capacity_total += nest.capacity;
  }
  std::printf("wrote %s: %zu nests, %zu products, total capacity %lld\n", args.out.c_str(),
              instance.nests.size(), products, capacity_total);
  return 0;
}

void write_solution_file(const std::string& path, const nestsolve::Solution& solution) {
  std::ofstream out(path);
  if (!out) throw nestsolve::IoError("cannot open " + path + " for writing");
  std::int64_t candidates_total = 0;
  for (auto count : solution.candidate_counts) candidates_total += count;
  out << "{\n  \"z_star\": " << nestsolve::format_double(solution.z_star)
      << ",\n  \"g_at_zstar\": " << nestsolve::format_double(solution.g_at_zstar)
      << ",\n  \"segments_scanned\": " << solution.segments_scanned
      << ",\n  \"candidates_total\": " << candidates_total << ",\n  \"assortment\": [";
  for (std::size_t i = 0; i < solution.assortment.offered.size(); ++i) {
    out << (i == 0 ? "" : ", ") << "[";
    const auto& offered = solution.assortment.offered[i];
    for (std::size_t j = 0; j < offered.size(); ++j) {
      out << (j == 0 ? "" : ", ") << offered[j];
    }
    out << "]";
  }
  out << "]\n}\n";
  if (!out.flush()) throw nestsolve::IoError("failed writing " + path);
}

int run_solve(const std::string& in, const std::string& out, const std::string& emit_lp,
              bool parallel, int threads) {
  const auto instance = nestsolve::read_instance(in);

  nestsolve::SolveOptions options;
  options.parallel_nests = parallel;
  options.threads = threads;
  const auto start = Clock::now();
  const auto solution = nestsolve::solve(instance, options);
  const double elapsed = seconds_since(start);

  std::int64_t candidates_total = 0;
  std::int32_t candidates_max = 0;
  for (auto count : solution.candidate_counts) {
    candidates_total += count;
    candidates_max = std::max(candidates_max, count);
  }
  std::int64_t pieces_total = 0;
  for (auto count : solution.piece_counts) pieces_total += count;

  std::printf("z_star: %.12f\n", solution.z_star);
  std::printf("g_at_zstar: %.3e\n", solution.g_at_zstar);
  std::printf("nests: %zu\n", instance.nests.size());
  std::printf("candidates: %lld total, max %d per nest\n",
              static_cast<long long>(candidates_total), candidates_max);
  std::printf("envelope pieces: %lld total\n", static_cast<long long>(pieces_total));
  std::printf("segments scanned: %lld\n", static_cast<long long>(solution.segments_scanned));
  std::printf("wall time: %.6f s\n", elapsed);
  if (instance.nests.size() <= 50) {
    std::printf("assortment:\n");
    for (std::size_t i = 0; i < solution.assortment.offered.size(); ++i) {
      std::printf("  nest %zu:", i);
      for (auto j : solution.assortment.offered[i]) std::printf(" %d", j);
      std::printf("\n");
    }
  } else {
    std::size_t offered_total = 0;
    for (const auto& offered : solution.assortment.offered) offered_total += offered.size();
    std::printf("assortment: %zu products offered across %zu nests (use --out for the list)\n",
                offered_total, instance.nests.size());
  }

  if (!out.empty()) write_solution_file(out, solution);
  if (!emit_lp.empty()) {
    std::vector<nestsolve::CandidateSet> sets;
    sets.reserve(instance.nests.size());
    for (std::size_t i = 0; i < instance.nests.size(); ++i) {
      sets.push_back(nestsolve::generate_candidates(
          instance.nests[i], static_cast<std::int32_t>(i), /*record_members=*/false));
    }
    nestsolve::export_lp(instance, sets, emit_lp);
    std::size_t constraints = 1;
    for (const auto& set : sets) constraints += set.candidates.size();
    std::printf("wrote %s with %zu constraints\n", emit_lp.c_str(), constraints);
  }
  return 0;
}

int run_check(const std::string& in, double perturb) {
  const auto instance = nestsolve::read_instance(in);
  nestsolve::OracleResult oracle;
  try {
    oracle = nestsolve::brute_force_solve(instance);
  } catch (const nestsolve::TooLargeError& e) {
    std::fprintf(stderr, "oracle refused: %s\n", e.what());
    return 3;
  }
  const auto solution = nestsolve::solve(instance);
  const double solver_value = solution.z_star + perturb;
  const double abs_gap = std::abs(solver_value - oracle.z);
  const double rel_gap = abs_gap / std::max(1.0, std::abs(oracle.z));
  std::printf("solver z_star: %.15g\n", solver_value);
  std::printf("oracle z_star: %.15g\n", oracle.z);
  std::printf("abs gap: %.3e\nrel gap: %.3e\n", abs_gap, rel_gap);
  if (rel_gap > 1e-8) {
    std::printf("FAIL (relative tolerance 1e-8)\n");
    return 4;
  }
  std::printf("OK (relative tolerance 1e-8)\n");
  return 0;
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> values;
  std::stringstream stream(csv);
  std::string item;
  while (std::getline(stream, item, ',')) values.push_back(std::stoi(item));
  return values;
}

int run_bench(const std::string& m_list, const std::string& n_list, int trials,
              std::uint64_t seed, double gamma, double v0, const std::string& out,
              bool parallel, int threads) {
  const auto ms = parse_int_list(m_list);
  const auto ns = parse_int_list(n_list);
  if (ms.empty() || ns.empty() || trials < 1) {
    std::fprintf(stderr, "bench needs non-empty --m-list/--n-list and --trials >= 1\n");
    return 2;
  }
  std::ofstream file;
  std::ostream* sink = &std::cout;
  if (!out.empty()) {
    file.open(out);
    if (!file) {
      std::fprintf(stderr, "cannot open %s for writing\n", out.c_str());
      return 1;
    }
    sink = &file;
  }
  nestsolve::SolveOptions options;
  options.parallel_nests = parallel;
  options.threads = threads;

  *sink << "m,n,trials,mean_s,min_s,max_s,z_mean\n";
  for (int m : ms) {
    for (int n : ns) {
      double total = 0.0, best = 0.0, worst = 0.0, z_total = 0.0;
      for (int trial = 0; trial < trials; ++trial) {
        nestsolve::GenSpec spec;
        spec.num_nests = m;
        spec.products_per_nest = n;
        spec.seed = seed + static_cast<std::uint64_t>(trial);
        spec.dissimilarity = gamma;
        spec.no_purchase_weight = v0;
        const auto instance = nestsolve::generate(spec);

        const auto start = Clock::now();
        const auto solution = nestsolve::solve(instance, options);
        const double elapsed = seconds_since(start);

        total += elapsed;
        z_total += solution.z_star;
        best = trial == 0 ? elapsed : std::min(best, elapsed);
        worst = trial == 0 ? elapsed : std::max(worst, elapsed);
      }
      *sink << m << ',' << n << ',' << trials << ',' << total / trials << ',' << best << ','
            << worst << ',' << z_total / trials << '\n';
      sink->flush();
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Assortment optimization under the two-level nested logit model "
               "with per-nest cardinality constraints"};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a random instance file");
  gen_cmd->add_option("--m", gen.m, "Number of nests")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--n", gen.n, "Products per nest")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "PRNG seed")->default_val(0);
  gen_cmd->add_option("--gamma", gen.gamma, "Dissimilarity parameter in (0, 1]");
  gen_cmd->add_option("--v0", gen.v0, "No-purchase weight");
  gen_cmd->add_option("--cap", gen.cap, "\"half\" (floor(n/2), min 1) or per-nest list c1,c2,...");
  gen_cmd->add_option("--v-low", gen.v_low, "Weight range lower bound");
  gen_cmd->add_option("--v-high", gen.v_high, "Weight range upper bound");
  gen_cmd->add_option("--r-low", gen.r_low, "Revenue range lower bound");
  gen_cmd->add_option("--r-high", gen.r_high, "Revenue range upper bound");
  gen_cmd->add_option("--out", gen.out, "Output instance file")->required();

  std::string solve_in, solve_out, solve_lp;
  bool solve_parallel = false;
  int solve_threads = 0;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve an instance file");
  solve_cmd->add_option("--in", solve_in, "Instance file")->required();
  solve_cmd->add_option("--out", solve_out, "Write the solution as JSON");
  solve_cmd->add_option("--emit-lp", solve_lp, "Write the reduced LP to this path");
  solve_cmd->add_flag("--parallel-nests", solve_parallel,
                      "Generate per-nest candidates on multiple threads");
  solve_cmd->add_option("--threads", solve_threads, "Thread count for --parallel-nests");

  std::string check_in;
  double check_perturb = 0.0;
  CLI::App* check_cmd =
      app.add_subcommand("check", "Compare the solver against the brute-force oracle");
  check_cmd->add_option("--in", check_in, "Instance file")->required();
  check_cmd->add_option("--perturb", check_perturb,
                        "Offset added to the solver value before comparing (testing aid)");

  std::string bench_m, bench_n, bench_out;
  int bench_trials = 10;
  std::uint64_t bench_seed = 1;
  double bench_gamma = 0.5, bench_v0 = 1.0;
  bool bench_parallel = false;
  int bench_threads = 0;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Timing sweep over instance sizes (CSV)");
  bench_cmd->add_option("--m-list", bench_m, "Comma-separated nest counts")->required();
  bench_cmd->add_option("--n-list", bench_n, "Comma-separated products-per-nest")->required();
  bench_cmd->add_option("--trials", bench_trials, "Instances per (m, n) cell");
  bench_cmd->add_option("--seed", bench_seed, "Base seed; trial t uses seed + t");
  bench_cmd->add_option("--gamma", bench_gamma, "Dissimilarity parameter");
  bench_cmd->add_option("--v0", bench_v0, "No-purchase weight");
  bench_cmd->add_option("--out", bench_out, "Write CSV here instead of stdout");
  bench_cmd->add_flag("--parallel-nests", bench_parallel,
                      "Per-nest parallelism inside each solve");
  bench_cmd->add_option("--threads", bench_threads, "Thread count for --parallel-nests");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen_cmd->parsed()) return run_gen(gen);
    if (solve_cmd->parsed()) {
      return run_solve(solve_in, solve_out, solve_lp, solve_parallel, solve_threads);
    }
    if (check_cmd->parsed()) return run_check(check_in, check_perturb);
    if (bench_cmd->parsed()) {
      return run_bench(bench_m, bench_n, bench_trials, bench_seed, bench_gamma, bench_v0,
                       bench_out, bench_parallel, bench_threads);
    }
  } catch (const nestsolve::BadSpecError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
