#include "rbsect/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "rbsect/counters.hpp"
#include "rbsect/generator.hpp"
#include "rbsect/hausdorff.hpp"
#include "rbsect/instance.hpp"
#include "rbsect/oracle.hpp"
#include "rbsect/parallel.hpp"
#include "rbsect/svg.hpp"

namespace rbsect {
namespace {

constexpr double kCheckTol = 1e-9;

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void put_side(std::ostream& out, const std::optional<CandidatePoint>& c) {
  if (!c) {
    out << "none";
    return;
  }
  out << format_double(c->point.x) << ' ' << format_double(c->point.y) << ' ' << c->blue;
}

bool same_side(const std::optional<CandidatePoint>& a, const std::optional<CandidatePoint>& b) {
  if (!a || !b) return !a && !b;
  return dist(a->point, b->point) <= kCheckTol;
}

void print_stats(std::ostream& out, const OpCounts& c) {
  for (int k = 0; k < kOpCount; ++k)
    out << "# stat\t" << op_name(static_cast<Op>(k)) << '\t' << c.v[static_cast<std::size_t>(k)] << '\n';
  out << "# stat\ttotal\t" << c.total() << '\n';
}

// Sections A and B of one file, or section A of each of two files.
std::pair<std::vector<Record>, std::vector<Record>> load_pair(const std::vector<std::string>& files,
                                                              std::string& src_a, std::string& src_b) {
  const InstanceFile first = read_instance_file(files[0]);
  src_a = src_b = first.source;
  if (files.size() == 1) return {first.a, first.b};
  const InstanceFile second = read_instance_file(files[1]);
  src_b = second.source;
  return {first.a, second.a};
}

struct FirstLastArgs {
  std::vector<std::string> files;
  bool check = false, stats = false;
};

int cmd_firstlast(const FirstLastArgs& a, std::ostream& out) {
  std::string sa, sb;
  const auto [ra, rb] = load_pair(a.files, sa, sb);
  const std::vector<Curve> red = to_curves(ra, sa), blue = to_curves(rb, sb);
  counters::reset();
  const FirstLastResult r = first_last(red, blue);
  const OpCounts ops = counters::snapshot();
  print_first_last(out, r);
  if (a.stats) print_stats(out, ops);
  if (a.check) {
    const FirstLastResult want = brute_first_last(red, blue);
    for (std::size_t i = 0; i < r.size(); ++i)
      if (!same_side(r[i].first, want[i].first) || !same_side(r[i].last, want[i].last)) {
        std::ostringstream s;
        s << "check failed for red curve " << i << ": oracle gives ";
        put_side(s, want[i].first);
        s << " | ";
        put_side(s, want[i].last);
        throw CheckFailure(s.str());
      }
    out << "# check\t" << r.size() << " red curves agree with the oracle\n";
  }
  return kExitOk;
}

struct HausdorffArgs {
  std::vector<std::string> files;
  bool directed = false;
  double check = 0;
  std::string svg;
};

int cmd_hausdorff(const HausdorffArgs& a, std::ostream& out) {
  std::string sa, sb;
  const auto [ra, rb] = load_pair(a.files, sa, sb);
  const std::vector<Segment> P = to_segments(ra, sa), Q = to_segments(rb, sb);
  HausdorffTrace trace;
  HausdorffOptions opts;
  if (!a.svg.empty()) opts.trace = &trace;
  const HausdorffResult r = a.directed ? directed_hausdorff(P, Q, opts) : hausdorff(P, Q, opts);
  print_hausdorff(out, r);
  if (a.check > 0) {
    const double pq = sampled_directed_hausdorff(P, Q, a.check);
    const double s = a.directed ? pq : std::max(pq, sampled_directed_hausdorff(Q, P, a.check));
    if (!(s <= r.value + 1e-12 && r.value <= s + a.check / 2))
      throw CheckFailure("check failed: sampled " + format_double(s) + " does not bracket " +
                         format_double(r.value));
    out << "# check\tsampled\t" << format_double(s) << '\n';
  }
  if (!a.svg.empty()) {
    std::ofstream f(a.svg);
    if (!f) throw std::runtime_error("cannot write " + a.svg);
    SvgScene scene;
    const bool swap = r.direction == Direction::q_to_p;
    scene.p = swap ? Q : P;
    scene.q = swap ? P : Q;
    scene.diagram = &trace.diagram;
    scene.critical = trace.critical;
    scene.witness = r.witness;
    scene.radius = r.value;
    write_svg(f, scene);
  }
  return kExitOk;
}

struct GenArgs {
  std::string kind = "random-disjoint";
  std::size_t n = 0;
  std::uint64_t seed = 1;
  std::string output;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  const auto kind = parse_gen_kind(a.kind);
  if (!kind) throw CLI::ValidationError("--kind", "unknown generator kind '" + a.kind + "'");
  std::ofstream file;
  if (!a.output.empty()) {
    file.open(a.output);
    if (!file) throw std::runtime_error("cannot write " + a.output);
  }
  std::ostream& o = a.output.empty() ? out : file;
  o << "# rbsect gen --kind " << a.kind << " --n " << a.n << " --seed " << a.seed << '\n';
  if (*kind == GenKind::segments) {
    const SegmentSets s = generate_segments(a.n, a.seed);
    print_segments(o, s.p, s.q);
  } else {
    print_instance(o, generate(*kind, a.n, a.seed));
  }
  return kExitOk;
}

struct BenchArgs {
  std::vector<std::size_t> sizes;
  std::vector<int> threads{1};
  std::string kind = "random-disjoint";
  std::uint64_t seed = 1;
  int reps = 3;
};

std::string render(const FirstLastResult& r) {
  std::ostringstream s;
  print_first_last(s, r);
  return s.str();
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  const auto kind = parse_gen_kind(a.kind);
  if (!kind || *kind == GenKind::segments)
    throw CLI::ValidationError("--kind", "unknown curve generator kind '" + a.kind + "'");
  out << "# first_last on " << a.kind << " instances, best of " << a.reps << " runs\n";
  out << "n\tthreads\tseconds\tops";
  for (int k = 0; k < kOpCount; ++k) out << '\t' << op_name(static_cast<Op>(k));
  out << "\tsame_as_first\n";
  for (std::size_t n : a.sizes) {
    const Instance inst = generate(*kind, n, a.seed);
    std::string base;
    for (int t : a.threads) {
      parallel::ThreadScope scope(t);
      double best = INFINITY;
      OpCounts ops;
      std::string text;
      for (int rep = 0; rep < a.reps; ++rep) {
        counters::reset();
        const auto t0 = std::chrono::steady_clock::now();
        const FirstLastResult r = first_last(inst.red, inst.blue);
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        ops = counters::snapshot();
        if (rep == 0) text = render(r);
      }
      if (base.empty()) base = text;
      out << n << '\t' << t << '\t' << best << '\t' << ops.total();
      for (std::uint64_t v : ops.v) out << '\t' << v;
      out << '\t' << (text == base ? "yes" : "no") << '\n';
    }
  }
  return kExitOk;
}

}  // namespace

void print_first_last(std::ostream& out, const FirstLastResult& r) {
  for (std::size_t i = 0; i < r.size(); ++i) {
    out << i << ' ';
    put_side(out, r[i].first);
    out << " | ";
    put_side(out, r[i].last);
    out << '\n';
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Red/blue first-last intersections and segment-set Hausdorff distance", "rbsect"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 0;
  app.add_option("--threads", threads, "worker count (default: RB_THREADS or the OpenMP default)")
      ->check(CLI::PositiveNumber);

  FirstLastArgs fl;
  auto* c_fl = app.add_subcommand("firstlast", "first and last blue intersection of every red curve");
  c_fl->add_option("files", fl.files, "one file with [A]/[B] sections, or a red and a blue file")
      ->required()
      ->expected(1, 2)
      ->check(CLI::ExistingFile);
  c_fl->add_flag("--check", fl.check, "compare with the brute-force oracle");
  c_fl->add_flag("--stats", fl.stats, "print operation counters");

  HausdorffArgs hd;
  auto* c_hd = app.add_subcommand("hausdorff", "Hausdorff distance between segment sets P and Q");
  c_hd->add_option("files", hd.files, "one file with [A]=P and [B]=Q, or a P and a Q file")
      ->required()
      ->expected(1, 2)
      ->check(CLI::ExistingFile);
  c_hd->add_flag("--directed", hd.directed, "only d_H(P, Q)");
  c_hd->add_option("--check", hd.check, "check against the oracle sampled every DELTA")
      ->check(CLI::PositiveNumber);
  c_hd->add_option("--svg", hd.svg, "write a scene plot");

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "write a generated instance");
  c_gen->add_option("--kind", gen.kind, "random-disjoint, grid-crossing, nested-parabola or segments")
      ->capture_default_str();
  c_gen->add_option("--n", gen.n, "curve count")->required()->check(CLI::PositiveNumber);
  c_gen->add_option("--seed", gen.seed, "generator seed")->capture_default_str();
  c_gen->add_option("-o,--output", gen.output, "output file (default: stdout)");

  BenchArgs bench;
  auto* c_bench = app.add_subcommand("bench", "time first_last per size and worker count (TSV)");
  c_bench->add_option("--sizes", bench.sizes, "instance sizes")->delimiter(',');
  c_bench->add_option("--thread-list", bench.threads, "worker counts")->delimiter(',')->capture_default_str();
  c_bench->add_option("--kind", bench.kind, "curve generator kind")->capture_default_str();
  c_bench->add_option("--seed", bench.seed, "generator seed")->capture_default_str();
  c_bench->add_option("--reps", bench.reps, "runs per cell")->check(CLI::PositiveNumber)->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::optional<parallel::ThreadScope> scope;
  if (threads > 0) scope.emplace(threads);
  try {
    if (*c_fl) return cmd_firstlast(fl, out);
    if (*c_hd) return cmd_hausdorff(hd, out);
    if (*c_gen) return cmd_gen(gen, out);
    if (*c_bench) return cmd_bench(bench, out);
  } catch (const CheckFailure& e) {
    err << "rbsect: " << e.what() << '\n';
    return kExitCheck;
  } catch (const CLI::ValidationError& e) {
    err << "rbsect: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "rbsect: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace rbsect
