#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "limset/arith.hpp"
#include "limset/errors.hpp"
#include "limset/independence.hpp"
#include "limset/montecarlo.hpp"
#include "limset/psi.hpp"
#include "limset/serialize.hpp"
#include "limset/targets.hpp"

namespace limset::cli {

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_format = "json";
  std::string output_path;
  std::optional<std::uint64_t> seed;
  std::optional<long long> samples;
  int threads = 0;
  bool exact = false;
  bool mc = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "experiment config file (JSON)");
  cmd->add_option("--out", o.out_format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--output", o.output_path, "write the report to a file");
  cmd->add_option("--seed", o.seed, "64-bit RNG seed");
  cmd->add_option("--samples", o.samples, "Monte Carlo sample budget");
  cmd->add_option("--threads", o.threads, "worker threads (0 = hardware)");
  auto* ex = cmd->add_flag("--exact", o.exact, "require the exact path");
  cmd->add_flag("--mc", o.mc, "use the Monte Carlo path")->excludes(ex);
}

struct Experiment {
  Json raw = Json::object();
  std::optional<TargetFamily> family;
  std::optional<ApproxFunction> psi;
  int n = 1, m = 1;
  long long samples = 100000;
  std::uint64_t seed = 1;
  int threads = 0;
  std::vector<TailWindow> windows;
};

Experiment load_experiment(const CommonOpts& o, bool psi_fallback = false) {
  Experiment e;
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw DomainError("cannot open config file: " + o.config_path);
    in >> e.raw;
  }
  if (e.raw.contains("family")) e.family = family_from_json(e.raw.at("family"));
  if (e.raw.contains("psi")) {
    e.psi = psi_from_json(e.raw.at("psi"));
  } else if (psi_fallback && (e.raw.contains("entries") || e.raw.contains("kind"))) {
    // a bare psi spec is accepted as the whole config
    e.psi = psi_from_json(e.raw);
  }
  if (e.raw.contains("n")) e.n = e.raw.at("n").get<int>();
  else if (e.psi) e.n = e.psi->dim();
  if (e.raw.contains("m")) e.m = e.raw.at("m").get<int>();
  else if (e.family) e.m = e.family->m;
  if (e.raw.contains("samples")) e.samples = e.raw.at("samples").get<long long>();
  if (e.raw.contains("seed")) e.seed = e.raw.at("seed").get<std::uint64_t>();
  if (e.raw.contains("threads")) e.threads = e.raw.at("threads").get<int>();
  if (e.raw.contains("windows")) {
    for (const Json& w : e.raw.at("windows"))
      e.windows.push_back({w.at(0).get<long long>(), w.at(1).get<long long>()});
  }
  if (o.seed) e.seed = *o.seed;
  if (o.samples) e.samples = *o.samples;
  if (o.threads > 0) e.threads = o.threads;
  return e;
}

// Every run echoes its fully resolved configuration; reruns with the same
// inputs produce byte-identical output (no clocks, no environment).
Json resolved_config(const Experiment& e, Json extra) {
  Json c = Json::object();
  if (e.family) c["family"] = family_to_json(*e.family);
  if (e.psi) c["psi"] = psi_to_json(*e.psi);
  c["n"] = e.n;
  c["m"] = e.m;
  c["samples"] = e.samples;
  c["seed"] = e.seed;
  if (!e.windows.empty()) {
    Json w = Json::array();
    for (const TailWindow& win : e.windows) w.push_back({win.q0, win.q1});
    c["windows"] = w;
  }
  if (extra.is_object()) c.update(extra);
  return c;
}

void emit(const CommonOpts& o, std::ostream& out, const std::string& command,
          const Json& config, const Json& result_json, const std::string& result_csv) {
  std::ostringstream body;
  if (o.out_format == "json") {
    Json doc;
    doc["command"] = command;
    doc["config"] = config;
    doc["result"] = result_json;
    body << doc.dump(2) << '\n';
  } else {
    body << "# command: " << command << '\n';
    body << "# config: " << config.dump() << '\n';
    body << result_csv;
  }
  if (o.output_path.empty()) {
    out << body.str();
  } else {
    std::ofstream f(o.output_path, std::ios::binary);
    if (!f) throw DomainError("cannot write output file: " + o.output_path);
    f << body.str();
  }
}

IntVec parse_int_vec(const std::string& s) {
  IntVec v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(std::stoll(item));
  if (v.empty()) throw DomainError("empty integer vector: " + s);
  return v;
}

const TargetFamily& need_family(const Experiment& e) {
  if (!e.family) throw DomainError("config must provide a \"family\"");
  return *e.family;
}

const ApproxFunction& need_psi(const Experiment& e) {
  if (!e.psi) throw DomainError("config must provide a \"psi\"");
  return *e.psi;
}

// --- verify suites -----------------------------------------------------------

struct SuiteResult {
  std::string name;
  int passed = 0;
  int total = 0;
};

long long rand_int(CounterRng& rng, long long lo, long long hi) {
  return lo + static_cast<long long>(rng.next_u64() %
                                     static_cast<std::uint64_t>(hi - lo + 1));
}

Rat rand_unit_rat(CounterRng& rng, long long max_den) {
  long long den = rand_int(rng, 1, max_den);
  long long num = rand_int(rng, 0, den);
  return Rat(num, den);
}

TargetFamily rand_family(CounterRng& rng, int m) {
  switch (rand_int(rng, 0, 3)) {
    case 0: return TargetFamily::full_lattice(m);
    case 1: return TargetFamily::reduced(m);
    case 2: return TargetFamily::half_cube(m);
    default: {
      std::vector<Rat> y;
      for (int i = 0; i < m; ++i) y.push_back(rand_unit_rat(rng, 8));
      return TargetFamily::inhomogeneous(std::move(y));
    }
  }
}

// eq-6 exactness: measure of a disjoint union is count * (2r/d)^m
SuiteResult suite_measures(std::uint64_t seed) {
  SuiteResult s{"measures", 0, 100};
  for (int c = 0; c < s.total; ++c) {
    CounterRng rng(seed, 101, static_cast<std::uint64_t>(c));
    int m = static_cast<int>(rand_int(rng, 1, 2));
    int n = static_cast<int>(rand_int(rng, 1, 2));
    long long d = rand_int(rng, 1, m == 1 ? 50 : 20);
    TargetFamily fam = rand_family(rng, m);
    IntVec q(static_cast<std::size_t>(n), 0);
    q[0] = d;
    if (n > 1) q[static_cast<std::size_t>(n - 1)] = d * rand_int(rng, 0, 3);
    Rat bound = disjointness_bound(fam, d);
    Rat r = bound * Rat(rand_int(rng, 1, 16), 16);
    ApproxSet set = make_approx_set(q, r, fam, n, m);
    Rat expected = Rat(target_count(fam, d)) *
                   rat_pow(2 * r / Rat(d), static_cast<unsigned>(m));
    if (set_measure(set) == expected) ++s.passed;
  }
  return s;
}

// pairwise independence of linearly independent vectors (MC vs product)
SuiteResult suite_independence(std::uint64_t seed, long long samples) {
  SuiteResult s{"independence", 0, 5};
  int produced = 0;
  for (std::uint64_t c = 0; produced < s.total; ++c) {
    CounterRng rng(seed, 202, c);
    TargetFamily fam = TargetFamily::full_lattice(1);
    IntVec q1{rand_int(rng, 1, 6), rand_int(rng, 0, 6)};
    IntVec q2{rand_int(rng, 0, 6), rand_int(rng, 1, 6)};
    ApproxSet a = make_approx_set(q1, disjointness_bound(fam, gcd_vec(q1)) / 2, fam, 2, 1);
    ApproxSet b = make_approx_set(q2, disjointness_bound(fam, gcd_vec(q2)) / 2, fam, 2, 1);
    PairMeasure pm = pair_intersection_measure(a, b);
    if (pm.kind != PairKind::Independent || !pm.measure) continue;  // resample
    ++produced;
    double p = to_double(*pm.measure);
    McEstimate est = pair_intersection_estimate(a, b, samples, seed + c, 0);
    double se = std::sqrt(std::max(p * (1 - p), 1e-12) / static_cast<double>(samples));
    if (std::fabs(est.estimate - p) <= 4 * se) ++s.passed;
  }
  return s;
}

SuiteResult suite_discrepancy(std::uint64_t seed) {
  SuiteResult s{"discrepancy", 0, 250};
  for (int c = 0; c < s.total; ++c) {
    CounterRng rng(seed, 303, static_cast<std::uint64_t>(c));
    int m = c < 200 ? 1 : 2;
    long long q = rand_int(rng, 1, 1000);
    Rat side = rat_max(rand_unit_rat(rng, 64), Rat(1, 64));
    std::vector<std::vector<Rat>> shifts;
    for (int k = 0; k < 8; ++k) {
      std::vector<Rat> v;
      for (int j = 0; j < m; ++j) v.push_back(rand_unit_rat(rng, 97));
      shifts.push_back(std::move(v));
    }
    Rat disc = equidist_discrepancy(q, m, side, shifts);
    Rat bound = m == 1 ? Rat(1, q) : 2 * side / Rat(q) + Rat(1, q * q);
    if (disc <= bound) ++s.passed;
  }
  return s;
}

TorusRegion rand_region(CounterRng& rng, int m, int max_balls, long long max_den) {
  std::vector<TorusBall> balls;
  int count = static_cast<int>(rand_int(rng, 1, max_balls));
  for (int i = 0; i < count; ++i) {
    std::vector<Rat> center;
    for (int j = 0; j < m; ++j) center.push_back(rand_unit_rat(rng, max_den));
    balls.push_back(make_ball(std::move(center), rand_unit_rat(rng, 40) / 4));
  }
  return make_region(m, std::move(balls));
}

TorusRegion rand_disjoint_region(CounterRng& rng, int m) {
  TorusRegion r = rand_region(rng, m, 8, 23);
  return vitali_refine(r);  // keeps a disjoint subcollection
}

SuiteResult suite_vitali(std::uint64_t seed) {
  SuiteResult s{"vitali", 0, 200};
  for (int c = 0; c < s.total; ++c) {
    CounterRng rng(seed, 404, static_cast<std::uint64_t>(c));
    int m = c % 2 + 1;
    TorusRegion r = rand_region(rng, m, 10, 29);
    TorusRegion v = vitali_refine(r);
    bool ok = true;
    for (std::size_t i = 0; i < v.balls.size() && ok; ++i)
      for (std::size_t j = i + 1; j < v.balls.size() && ok; ++j)
        if (balls_intersect(v.balls[i], v.balls[j])) ok = false;
    for (const TorusBall& b : r.balls) {
      bool covered = false;
      for (const TorusBall& sel : v.balls) {
        if (ball_in_dilation(b, sel, 3)) {
          covered = true;
          break;
        }
      }
      if (!covered) {
        ok = false;
        break;
      }
    }
    if (ok) ++s.passed;
  }
  return s;
}

SuiteResult suite_dilation(std::uint64_t seed) {
  SuiteResult s{"dilation", 0, 200};
  const Rat factors[3] = {Rat(1, 4), Rat(1, 2), Rat(3, 4)};
  for (int c = 0; c < s.total; ++c) {
    CounterRng rng(seed, 505, static_cast<std::uint64_t>(c));
    int m = c % 2 + 1;
    TorusRegion I = rand_disjoint_region(rng, m);
    TorusRegion J = rand_disjoint_region(rng, m);
    Rat base = region_intersect_measure(I, J);
    bool ok = true;
    for (const Rat& f : factors) {
      Rat scaled = region_intersect_measure(scale_region(I, f), scale_region(J, f));
      if (scaled > rat_pow(f, static_cast<unsigned>(m)) * base) {
        ok = false;
        break;
      }
    }
    if (ok) ++s.passed;
  }
  return s;
}

int cmd_verify(const CommonOpts& o, const std::string& suite, std::ostream& out) {
  std::uint64_t seed = o.seed.value_or(20240901ull);
  long long samples = o.samples.value_or(50000);
  std::vector<SuiteResult> results;
  if (suite == "measures" || suite == "all") results.push_back(suite_measures(seed));
  if (suite == "independence" || suite == "all")
    results.push_back(suite_independence(seed, samples));
  if (suite == "discrepancy" || suite == "all") results.push_back(suite_discrepancy(seed));
  if (suite == "vitali" || suite == "all") results.push_back(suite_vitali(seed));
  if (suite == "dilation" || suite == "all") results.push_back(suite_dilation(seed));
  if (results.empty()) throw DomainError("unknown verify suite: " + suite);
  bool all_pass = true;
  for (const SuiteResult& r : results) {
    out << r.name << ": " << r.passed << "/" << r.total
        << (r.passed == r.total ? " pass" : " FAIL") << '\n';
    if (r.passed != r.total) all_pass = false;
  }
  return all_pass ? 0 : 3;
}

// --- example presets ---------------------------------------------------------

struct ExamplePreset {
  Experiment e;
  std::vector<long long> Q_list;  // nonempty selects the pipeline report
};

ExamplePreset example_preset(const std::string& name) {
  ExamplePreset p;
  Experiment& e = p.e;
  e.n = 2;
  e.m = 1;
  e.samples = 100000;
  e.seed = 7;
  if (name == "postopos") {
    e.family = TargetFamily::half_cube(1);
    e.psi = ApproxFunction::ray({1, 0}, PowerLaw{Rat(1, 20), 0});
    e.windows = {{51, 150}};
  } else if (name == "fulltopos") {
    e.family = TargetFamily::alternating_half();
    e.psi = ApproxFunction::alternating_axes(PowerLaw{Rat(1, 20), 0});
    e.windows = {{51, 150}};
  } else if (name == "postofull") {
    e.family = TargetFamily::half_cube(1);
    e.psi = ApproxFunction::univariate(2, PowerLaw{Rat(1, 2), 1});
    e.windows = {{6, 12}, {10, 20}};
    e.samples = 20000;
    p.Q_list = {1, 2, 4};
  } else {
    throw DomainError("unknown example: " + name +
                      " (expected postofull, postopos, or fulltopos)");
  }
  return p;
}

// --- commands ----------------------------------------------------------------

int cmd_series(const CommonOpts& o, const std::string& kind_name, long long limit,
               std::ostream& out) {
  Experiment e = load_experiment(o, true);
  SeriesKind kind;
  if (kind_name == "kg" || kind_name == "khintchine_groshev")
    kind = SeriesKind::KhintchineGroshev;
  else if (kind_name == "orthant") kind = SeriesKind::Orthant;
  else if (kind_name == "ds" || kind_name == "duffin_schaeffer")
    kind = SeriesKind::DuffinSchaeffer;
  else if (kind_name == "catlin") kind = SeriesKind::Catlin;
  else throw DomainError("unknown series kind: " + kind_name);

  SeriesResult r = series_partial_sum(kind, need_psi(e), e.n, e.m, limit);
  Json cfg = resolved_config(e, {{"kind", kind_name}, {"limit", limit}});
  std::ostringstream csv;
  csv << "kind,limit,partial,tag\n"
      << series_kind_name(kind) << ',' << limit << ',' << rat_str(r.partial) << ','
      << convergence_tag_name(r.tag) << '\n';
  emit(o, out, "series", cfg, series_to_json(r, kind), csv.str());
  return 0;
}

int cmd_transform(const CommonOpts& o, long long Q, long long dmax, long long shell_cap,
                  std::ostream& out) {
  Experiment e = load_experiment(o, true);
  TransformOptions topts;
  if (shell_cap > 0) topts.shell_cap = shell_cap;
  TransformResult t = psi_transform(need_psi(e), e.m, Q, dmax, topts);
  Json cfg = resolved_config(e, {{"Q", Q}, {"dmax", dmax}});
  emit(o, out, "transform", cfg, transform_to_json(t), transform_to_csv(t));
  return 0;
}

int cmd_measure(const CommonOpts& o, const std::string& q_str, const std::string& r_str,
                std::ostream& out) {
  Experiment e = load_experiment(o);
  IntVec q = parse_int_vec(q_str);
  Rat radius = parse_rat(r_str);
  e.n = static_cast<int>(q.size());
  ApproxSet set = make_approx_set(q, radius, need_family(e), e.n, e.m);
  Json cfg = resolved_config(e, {{"q", q}, {"r", rat_str(radius)}});
  Json result;
  std::ostringstream csv;
  if (o.mc) {
    McEstimate est = set_measure_estimate(set, e.samples, e.seed, e.threads);
    result = mc_to_json(est);
    csv << "estimate,half_width,samples,seed\n"
        << format_double(est.estimate) << ',' << format_double(est.half_width) << ','
        << est.samples << ',' << est.seed << '\n';
  } else {
    Rat meas = set_measure(set);
    result["measure"] = rat_to_json(meas);
    result["measure_approx"] = to_double(meas);
    result["d"] = set.d();
    result["target_count"] = target_count(set.family, set.d());
    csv << "measure,d,target_count\n"
        << rat_str(meas) << ',' << set.d() << ',' << target_count(set.family, set.d())
        << '\n';
  }
  emit(o, out, "measure", cfg, result, csv.str());
  return 0;
}

int cmd_intersect(const CommonOpts& o, const std::string& q1s, const std::string& r1s,
                  const std::string& q2s, const std::string& r2s, std::ostream& out) {
  Experiment e = load_experiment(o);
  const TargetFamily& fam = need_family(e);
  IntVec q1 = parse_int_vec(q1s), q2 = parse_int_vec(q2s);
  ApproxSet a = make_approx_set(q1, parse_rat(r1s), fam, static_cast<int>(q1.size()), e.m);
  ApproxSet b = make_approx_set(q2, parse_rat(r2s), fam, static_cast<int>(q2.size()), e.m);
  PairMeasure pm = pair_intersection_measure(a, b);
  Json cfg = resolved_config(e, {{"q1", q1}, {"r1", r1s}, {"q2", q2}, {"r2", r2s}});
  Json result;
  std::ostringstream csv;
  std::string kind = pm.kind == PairKind::Parallel        ? "parallel"
                     : pm.kind == PairKind::Independent   ? "independent"
                                                          : "overlapping_fallback";
  result["kind"] = kind;
  if (pm.measure) {
    result["measure"] = rat_to_json(*pm.measure);
    result["measure_approx"] = to_double(*pm.measure);
    csv << "kind,measure\n" << kind << ',' << rat_str(*pm.measure) << '\n';
  } else {
    McEstimate est = pair_intersection_estimate(a, b, e.samples, e.seed, e.threads);
    result["estimate"] = mc_to_json(est);
    csv << "kind,estimate,half_width,samples,seed\n"
        << kind << ',' << format_double(est.estimate) << ','
        << format_double(est.half_width) << ',' << est.samples << ',' << est.seed << '\n';
  }
  emit(o, out, "intersect", cfg, result, csv.str());
  return 0;
}

int cmd_qia(const CommonOpts& o, long long D, long long H, std::ostream& out) {
  Experiment e = load_experiment(o);
  QiaOptions qopts;
  qopts.seed = e.seed;
  qopts.threads = e.threads;
  qopts.mc_samples = e.samples;
  QiaReport r = qia_scan(need_psi(e), need_family(e), e.n, e.m, D, H, qopts);
  Json cfg = resolved_config(e, {{"D", D}, {"H", H}});
  emit(o, out, "qia", cfg, qia_to_json(r), qia_to_csv(r));
  return 0;
}

int cmd_tailmc(const CommonOpts& o, long long Q0, long long Q1, std::ostream& out) {
  Experiment e = load_experiment(o);
  McEstimate est = tail_union_estimate(need_psi(e), need_family(e), e.n, e.m, Q0, Q1,
                                       e.samples, e.seed, e.threads);
  Json cfg = resolved_config(e, {{"Q0", Q0}, {"Q1", Q1}});
  std::ostringstream csv;
  csv << "Q0,Q1,estimate,half_width,samples,seed\n"
      << Q0 << ',' << Q1 << ',' << format_double(est.estimate) << ','
      << format_double(est.half_width) << ',' << est.samples << ',' << est.seed << '\n';
  emit(o, out, "tailmc", cfg, mc_to_json(est), csv.str());
  return 0;
}

int cmd_profile(const CommonOpts& o, std::ostream& out) {
  Experiment e = load_experiment(o);
  if (e.windows.empty()) throw DomainError("profile: config must provide \"windows\"");
  TailProfile p = limsup_profile(need_psi(e), need_family(e), e.n, e.m, e.windows,
                                 e.samples, e.seed, e.threads);
  emit(o, out, "profile", resolved_config(e, {}), profile_to_json(p), profile_to_csv(p));
  return 0;
}

int cmd_cassels(const CommonOpts& o, std::ostream& out) {
  Experiment e = load_experiment(o);
  if (e.windows.empty()) throw DomainError("cassels: config must provide \"windows\"");
  if (!e.raw.contains("factors"))
    throw DomainError("cassels: config must provide \"factors\"");
  std::vector<Rat> factors;
  for (const Json& f : e.raw.at("factors")) factors.push_back(rat_from_json(f));
  CasselsReport r = cassels_scaling_probe(need_psi(e), need_family(e), e.n, e.m, factors,
                                          e.windows, e.samples, e.seed, e.threads);
  Json fs = Json::array();
  for (const Rat& f : factors) fs.push_back(rat_str(f));
  Json cfg = resolved_config(e, {{"factors", fs}});
  std::ostringstream csv;
  csv << "factor,Q0,Q1,estimate,half_width,samples,seed\n";
  for (const auto& [factor, profile] : r.profiles) {
    for (const TailStage& s : profile.stages) {
      csv << rat_str(factor) << ',' << s.window.q0 << ',' << s.window.q1 << ','
          << format_double(s.estimate.estimate) << ','
          << format_double(s.estimate.half_width) << ',' << s.estimate.samples << ','
          << s.estimate.seed << '\n';
    }
  }
  emit(o, out, "cassels", cfg, cassels_to_json(r), csv.str());
  return 0;
}

std::string bootstrap_csv(const BootstrapReport& r) {
  std::ostringstream csv;
  csv << "stage,Q,Q0,Q1,estimate,half_width,samples,seed\n";
  for (const auto& [Q, p] : r.one_by_m) {
    for (const TailStage& s : p.stages) {
      csv << "one_by_m," << Q << ',' << s.window.q0 << ',' << s.window.q1 << ','
          << format_double(s.estimate.estimate) << ','
          << format_double(s.estimate.half_width) << ',' << s.estimate.samples << ','
          << s.estimate.seed << '\n';
    }
  }
  for (const TailStage& s : r.n_by_m.stages) {
    csv << "n_by_m,," << s.window.q0 << ',' << s.window.q1 << ','
        << format_double(s.estimate.estimate) << ','
        << format_double(s.estimate.half_width) << ',' << s.estimate.samples << ','
        << s.estimate.seed << '\n';
  }
  return csv.str();
}

BootstrapOptions bootstrap_options(const Experiment& e) {
  BootstrapOptions b;
  b.samples = e.samples;
  b.seed = e.seed;
  b.threads = e.threads;
  b.n_by_m_windows = e.windows;
  if (e.raw.contains("d_max")) b.d_max = e.raw.at("d_max").get<long long>();
  if (e.raw.contains("shell_cap")) b.shell_cap = e.raw.at("shell_cap").get<long long>();
  if (e.raw.contains("qia_D")) b.qia_D = e.raw.at("qia_D").get<long long>();
  if (e.raw.contains("qia_H")) b.qia_H = e.raw.at("qia_H").get<long long>();
  if (e.raw.contains("one_by_m_windows")) {
    for (const Json& w : e.raw.at("one_by_m_windows"))
      b.one_by_m_windows.push_back({w.at(0).get<long long>(), w.at(1).get<long long>()});
  }
  return b;
}

int cmd_bootstrap(const CommonOpts& o, std::ostream& out) {
  Experiment e = load_experiment(o);
  std::vector<long long> Q_list{1, 2};
  if (e.raw.contains("Q_list")) Q_list = e.raw.at("Q_list").get<std::vector<long long>>();
  BootstrapOptions bopts = bootstrap_options(e);
  if (bopts.one_by_m_windows.empty())
    bopts.one_by_m_windows = {{1, std::max<long long>(bopts.d_max / 2, 1)},
                              {std::max<long long>(bopts.d_max / 2, 1), bopts.d_max}};
  if (bopts.n_by_m_windows.empty())
    throw DomainError("bootstrap: config must provide \"windows\"");
  BootstrapReport r = bootstrap_demo(need_psi(e), need_family(e), e.n, e.m, Q_list, bopts);
  Json cfg = resolved_config(e, {{"Q_list", Q_list}});
  emit(o, out, "bootstrap", cfg, bootstrap_to_json(r), bootstrap_csv(r));
  return 0;
}

int cmd_example(const CommonOpts& o, const std::string& name, std::ostream& out) {
  ExamplePreset preset = example_preset(name);
  Experiment& e = preset.e;
  if (o.seed) e.seed = *o.seed;
  if (o.samples) e.samples = *o.samples;
  if (o.threads > 0) e.threads = o.threads;
  Json cfg = resolved_config(e, {{"example", name}});
  if (!preset.Q_list.empty()) {
    BootstrapOptions bopts = bootstrap_options(e);
    bopts.d_max = 40;
    bopts.shell_cap = 20;
    bopts.one_by_m_windows = {{20, 30}, {25, 40}};
    BootstrapReport r = bootstrap_demo(*e.psi, *e.family, e.n, e.m, preset.Q_list, bopts);
    emit(o, out, "example", cfg, bootstrap_to_json(r), bootstrap_csv(r));
    return 0;
  }
  TailProfile p =
      limsup_profile(*e.psi, *e.family, e.n, e.m, e.windows, e.samples, e.seed, e.threads);
  emit(o, out, "example", cfg, profile_to_json(p), profile_to_csv(p));
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"limset - measures of limsup approximation sets on tori"};
  app.require_subcommand(1);

  CommonOpts common;

  auto* series = app.add_subcommand("series", "partial sums of divergence series");
  std::string series_kind = "kg";
  long long series_limit = 100;
  series->add_option("--kind", series_kind, "kg | orthant | ds | catlin");
  series->add_option("--limit", series_limit, "summation cutoff");
  add_common(series, common);

  auto* transform = app.add_subcommand("transform", "Psi_Q tables");
  long long tr_Q = 1, tr_dmax = 10, tr_cap = 0;
  transform->add_option("--Q", tr_Q, "primitive-norm threshold");
  transform->add_option("--dmax", tr_dmax, "largest modulus d");
  transform->add_option("--shell-cap", tr_cap, "primitive-shell truncation");
  add_common(transform, common);

  auto* measure = app.add_subcommand("measure", "exact or MC measure of one set");
  std::string q_str, r_str;
  measure->add_option("--q", q_str, "integer vector, comma separated")->required();
  measure->add_option("--r", r_str, "radius as num/den")->required();
  add_common(measure, common);

  auto* intersect = app.add_subcommand("intersect", "pairwise intersection measure");
  std::string q1s, r1s, q2s, r2s;
  intersect->add_option("--q1", q1s)->required();
  intersect->add_option("--r1", r1s)->required();
  intersect->add_option("--q2", q2s)->required();
  intersect->add_option("--r2", r2s)->required();
  add_common(intersect, common);

  auto* qia = app.add_subcommand("qia", "pair-sum decomposition scan");
  long long qia_D = 4, qia_H = 16;
  qia->add_option("--D", qia_D, "gcd cutoff");
  qia->add_option("--H", qia_H, "enumeration cap on |q|");
  add_common(qia, common);

  auto* tailmc = app.add_subcommand("tailmc", "tail-union Monte Carlo estimate");
  long long Q0 = 1, Q1 = 1;
  tailmc->add_option("--Q0", Q0)->required();
  tailmc->add_option("--Q1", Q1)->required();
  add_common(tailmc, common);

  auto* profile = app.add_subcommand("profile", "nested tail-union profile");
  add_common(profile, common);

  auto* cassels = app.add_subcommand("cassels", "scaling-invariance probe");
  add_common(cassels, common);

  auto* bootstrap = app.add_subcommand("bootstrap", "end-to-end pipeline report");
  add_common(bootstrap, common);

  auto* verify = app.add_subcommand("verify", "run a lemma-check suite");
  std::string suite = "all";
  verify->add_option("--suite", suite,
                     "measures | independence | discrepancy | vitali | dilation | all");
  add_common(verify, common);

  auto* example = app.add_subcommand("example", "reproduce a named scenario");
  std::string example_name;
  example->add_option("name", example_name, "postofull | postopos | fulltopos")
      ->required();
  add_common(example, common);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return 2;
  }

  try {
    if (series->parsed()) return cmd_series(common, series_kind, series_limit, out);
    if (transform->parsed()) return cmd_transform(common, tr_Q, tr_dmax, tr_cap, out);
    if (measure->parsed()) return cmd_measure(common, q_str, r_str, out);
    if (intersect->parsed()) return cmd_intersect(common, q1s, r1s, q2s, r2s, out);
    if (qia->parsed()) return cmd_qia(common, qia_D, qia_H, out);
    if (tailmc->parsed()) return cmd_tailmc(common, Q0, Q1, out);
    if (profile->parsed()) return cmd_profile(common, out);
    if (cassels->parsed()) return cmd_cassels(common, out);
    if (bootstrap->parsed()) return cmd_bootstrap(common, out);
    if (verify->parsed()) return cmd_verify(common, suite, out);
    if (example->parsed()) return cmd_example(common, example_name, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  err << app.help();
  return 2;
}

}  // namespace limset::cli
