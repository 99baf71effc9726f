#include "forge/cli.hpp"

#include "forge/error.hpp"
#include "forge/incidence.hpp"
#include "forge/rng.hpp"
#include "forge/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace forge::cli {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

template <class T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item[0] == '-') throw Error(Errc::invalid_argument, std::string("bad ") + what + " entry '" + item + "'");
    out.push_back(static_cast<T>(v));
  }
  return out;
}

// key=value lines become "--key value" tokens placed ahead of the real
// arguments; every option takes its last value, so flags win.
std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::invalid_argument, "cannot read config " + path);
  std::vector<std::string> out;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(Errc::invalid_argument, path + ":" + std::to_string(n) + ": expected key=value");
    const auto key = trim(line.substr(0, eq));
    if (key.empty() || key == "config")
      throw Error(Errc::invalid_argument, path + ":" + std::to_string(n) + ": bad key");
    out.push_back("--" + key);
    out.push_back(trim(line.substr(eq + 1)));
  }
  return out;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

struct RunOpts {
  std::string scenario = "subplane";
  std::uint32_t p = 3;
  unsigned k = 2;
  std::size_t n = 0;
  std::string J, caps, lambda = "auto", gamma, epsilon, c_plus, c_minus, c_rich;
  std::optional<std::uint64_t> seed;
  std::string out, ledger, config;
};

struct VerifyOpts {
  std::vector<std::string> only;
  std::optional<std::uint32_t> q_max;
  std::uint64_t seed = 1;
  std::size_t instances = 1000;
  std::string mutant;
};

struct BenchOpts {
  std::string n = "1000,5000,20000";
  std::uint32_t p = 251;
  unsigned k = 2;
  std::optional<std::uint64_t> seed;
};

ScenarioConfig to_scenario(const RunOpts& o) {
  ScenarioConfig c;
  c.scenario = o.scenario;
  if (c.scenario != "subplane" && c.scenario != "corollary-p2" && c.scenario != "corollary-p4" &&
      c.scenario != "random")
    throw Error(Errc::invalid_argument, "unknown scenario '" + o.scenario + "'");
  if (c.scenario != "subplane" && !o.seed) throw Error(Errc::invalid_argument, "--seed is required for " + c.scenario);
  if (c.scenario == "random" && o.n < 2) throw Error(Errc::invalid_argument, "--n must be at least 2 for random");
  c.p = o.p;
  c.k = o.k;
  c.n = o.n;
  c.seed = o.seed;
  c.J = parse_list<std::uint32_t>(o.J, "J");
  c.caps = parse_list<std::size_t>(o.caps, "caps");
  if (o.lambda == "auto") {
    c.lambda_policy = LambdaPolicy::threshold;
  } else {
    c.lambda_policy = LambdaPolicy::explicit_value;
    c.lambda = parse_rational(o.lambda);
    if (c.lambda < 0) throw Error(Errc::invalid_argument, "lambda must be nonnegative");
  }
  if (!o.gamma.empty()) c.gamma = parse_rational(o.gamma);
  if (!o.epsilon.empty()) c.pipeline.epsilon = parse_rational(o.epsilon);
  if (!o.c_plus.empty()) c.pipeline.c_plus = parse_rational(o.c_plus);
  if (!o.c_minus.empty()) c.pipeline.c_minus = parse_rational(o.c_minus);
  if (!o.c_rich.empty()) c.pipeline.c_rich = parse_rational(o.c_rich);
  return c;
}

int do_run(const RunOpts& o, std::ostream& out, std::ostream& err) {
  ScenarioConfig cfg;
  try {
    cfg = to_scenario(o);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  AuditReport rep;
  try {
    rep = theorem_audit(cfg);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == Errc::degenerate_instance ? 2 : 1;
  }
  std::ostringstream csv;
  csv << csv_header() << "\n" << csv_row(rep) << "\n";
  if (o.out.empty()) {
    out << csv.str();
  } else {
    std::ofstream f(o.out);
    if (!f) {
      err << "error: cannot write " << o.out << "\n";
      return 1;
    }
    f << csv.str();
  }
  if (!o.ledger.empty()) {
    std::ofstream f(o.ledger);
    if (!f) {
      err << "error: cannot write " << o.ledger << "\n";
      return 1;
    }
    f << ledger_csv(rep);
  }
  for (const auto& [stage, msg] : rep.stage_errors) err << "stage " << stage << ": " << msg << "\n";
  return 0;
}

int do_verify(const VerifyOpts& o, std::ostream& out, std::ostream& err) {
  verify::Config cfg;
  for (const auto& s : o.only) {
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!trim(item).empty()) cfg.only.push_back(trim(item));
  }
  cfg.q_max = o.q_max;
  cfg.seed = o.seed;
  cfg.random_instances = o.instances;
  if (!o.mutant.empty()) {
    if (o.mutant != "cross_ratio_sign") {
      err << "error: unknown mutant '" << o.mutant << "'\n";
      return 1;
    }
    cfg.inject_cross_ratio_mutant = true;
  }
  std::uint64_t bad = 0;
  try {
    verify::run_all(cfg, [&](const verify::SuiteResult& r) {
      out << (r.ok() ? "PASS " : "FAIL ") << r.name << " cases=" << r.cases << " violations=" << r.violations
          << " millis=" << r.millis << "\n";
      for (const auto& f : r.findings) out << "  note: " << f << "\n";
      if (!r.ok()) out << "  witness: " << r.witness << "\n";
      out.flush();
      bad += r.violations;
    });
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return bad == 0 ? 0 : 1;
}

int do_bench(const BenchOpts& o, std::ostream& out, std::ostream& err) {
  if (!o.seed) {
    err << "error: --seed is required for bench\n";
    return 1;
  }
  std::vector<std::size_t> ns;
  std::shared_ptr<const Field> f;
  try {
    ns = parse_list<std::size_t>(o.n, "n");
    f = Field::make(o.p, o.k);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  out << "n,q,slopes,millis\n";
  for (auto n : ns) {
    Rng rng(*o.seed + n);
    const std::uint64_t q = f->q();
    RawPoints pts;
    for (std::size_t i = 0; i < n; ++i) {
      pts.x.push_back(static_cast<std::uint32_t>(rng.below(q)));
      pts.y.push_back(static_cast<std::uint32_t>(rng.below(q)));
    }
    std::vector<RawLine> lines;
    for (std::size_t i = 0; i < n; ++i) {
      auto m = f->element(static_cast<std::uint32_t>(rng.below(q)));
      auto c = f->element(static_cast<std::uint32_t>(rng.below(q)));
      auto l = Line::graph(m, c);
      lines.push_back({l.a().value(), l.b().value(), l.c().value()});
    }
    const auto t0 = std::chrono::steady_clock::now();
    const auto I = kernels::count_incidences(*f, pts, lines);
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    (void)I;
    out << n << "," << q << "," << kernels::count_directions(lines) << "," << ms << "\n";
  }
  return 0;
}

}  // namespace

const std::string& csv_header() {
  static const std::string h =
      "scenario,p,k,n,lambda_num,lambda_den,I,I3,ratio_I_n32_num,ratio_I_n32_den,antifield_ok,strong_ok,case_tag,"
      "gamma,seed,millis";
  return h;
}

std::string csv_row(const AuditReport& r) {
  std::ostringstream o;
  o << r.scenario << "," << r.p << "," << r.k << "," << r.n << "," << numerator(r.lambda) << ","
    << denominator(r.lambda) << "," << r.I << "," << r.I3 << "," << numerator(r.ratio_I_n32) << ","
    << denominator(r.ratio_I_n32) << "," << bool_str(r.antifield_ok) << "," << bool_str(r.strong_ok) << ","
    << r.case_tag << ",";
  if (r.gamma) o << *r.gamma;
  o << ",";
  if (r.seed) o << *r.seed;
  o << "," << r.millis;
  return o.str();
}

std::string ledger_csv(const AuditReport& r) {
  std::ostringstream o;
  o << "kind,name,c,measured,formula,ratio,note\n";
  for (const auto& row : r.rows)
    o << "row," << row.name << "," << row.c << "," << to_string(row.measured) << "," << to_string(row.formula)
      << "," << to_string(row.ratio) << "," << row.note << "\n";
  for (const auto& [stage, msg] : r.stage_errors) o << "stage_error," << stage << ",,,,," << msg << "\n";
  for (const auto& n : r.notes) o << "note,,,,,," << n << "\n";
  o << "value,T,," << r.T << ",,,\n";
  o << "value,size_a,," << r.size_a << ",,,\n";
  o << "value,size_b,," << r.size_b << ",,,\n";
  return o.str();
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunOpts ro;
  VerifyOpts vo;
  BenchOpts bo;
  std::string q_max_text, seed_text, bench_seed_text;

  CLI::App app{"Finite-field point-line incidence experiments"};
  app.name("incidence-forge");
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  auto* run = app.add_subcommand("run", "Run one scenario and print a CSV row");
  run->add_option("--config", ro.config, "key=value file; flags win");
  run->add_option("--scenario", ro.scenario, "subplane | corollary-p2 | corollary-p4 | random");
  run->add_option("--p", ro.p, "characteristic");
  run->add_option("--k", ro.k, "degree (random scenario)");
  run->add_option("--n", ro.n, "points (random scenario)");
  run->add_option("--J", ro.J, "construction indices, comma separated");
  run->add_option("--caps", ro.caps, "per-index caps, comma separated");
  run->add_option("--lambda", ro.lambda, "rational, or 'auto' for gamma n^(2560/6419)");
  run->add_option("--gamma", ro.gamma, "multiplier for the automatic lambda");
  run->add_option("--epsilon", ro.epsilon);
  run->add_option("--c-plus", ro.c_plus);
  run->add_option("--c-minus", ro.c_minus);
  run->add_option("--c-rich", ro.c_rich);
  run->add_option("--seed", seed_text);
  run->add_option("--out", ro.out, "CSV path (default stdout)");
  run->add_option("--ledger", ro.ledger, "write audit rows here");

  auto* ver = app.add_subcommand("verify", "Run the property suites");
  ver->add_option("--only", vo.only, "suite names, comma separated")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  ver->add_option("--q-max", q_max_text);
  ver->add_option("--seed", vo.seed);
  ver->add_option("--instances", vo.instances, "random instances per randomized suite");
  ver->add_option("--inject-mutant", vo.mutant)->group("");

  auto* bench = app.add_subcommand("bench", "Time count_incidences on random instances");
  bench->add_option("--n", bo.n, "sizes, comma separated");
  bench->add_option("--p", bo.p);
  bench->add_option("--k", bo.k);
  bench->add_option("--seed", bench_seed_text);

  auto parse = [&](std::vector<std::string> tokens) {
    std::reverse(tokens.begin(), tokens.end());  // CLI11 consumes from the back
    app.parse(tokens);
  };

  std::vector<std::string> tokens(args.begin() + (args.empty() ? 0 : 1), args.end());
  try {
    parse(tokens);
    if (run->parsed() && !ro.config.empty()) {
      auto extra = config_tokens(ro.config);
      std::vector<std::string> merged{"run"};
      merged.insert(merged.end(), extra.begin(), extra.end());
      merged.insert(merged.end(), tokens.begin() + 1, tokens.end());
      app.clear();
      ro = RunOpts{};
      seed_text.clear();
      parse(merged);
    }
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  auto parse_u64 = [&](const std::string& text, std::optional<std::uint64_t>& dst) {
    if (text.empty()) return true;
    auto v = parse_list<std::uint64_t>(text, "seed");
    if (v.size() != 1) return false;
    dst = v[0];
    return true;
  };
  try {
    if (run->parsed()) {
      if (!parse_u64(seed_text, ro.seed)) throw Error(Errc::invalid_argument, "bad seed");
      return do_run(ro, out, err);
    }
    if (ver->parsed()) {
      if (!q_max_text.empty()) vo.q_max = parse_list<std::uint32_t>(q_max_text, "q-max").at(0);
      return do_verify(vo, out, err);
    }
    if (!parse_u64(bench_seed_text, bo.seed)) throw Error(Errc::invalid_argument, "bad seed");
    return do_bench(bo, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace forge::cli
