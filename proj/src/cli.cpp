#include "fermat/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <fstream>
#include <map>
#include <memory>
#include <new>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include <CLI11.hpp>

#include "fermat/arith.hpp"
#include "fermat/basis.hpp"
#include "fermat/categorical.hpp"
#include "fermat/census.hpp"
#include "fermat/error.hpp"
#include "fermat/expr.hpp"
#include "fermat/presentation.hpp"
#include "fermat/tower.hpp"

namespace fermat::cli {
namespace {

constexpr std::string_view kGrammar =
    "usage:\n"
    "  fermat-tower schedule   --count K\n"
    "  fermat-tower census     --primes P,.. [--unchecked] --level I --bound N\n"
    "  fermat-tower build      --primes P,.. [--unchecked] --dump N\n"
    "  fermat-tower scramble   --primes P,.. [--unchecked] --spec S --seed S --dump N\n"
    "  fermat-tower synthesize --primes P,.. [--unchecked] --levels L [--spec S] [--seed S]\n"
    "                          [--budget CODES] [--max-steps N] [--samples N] [--sample-seed S]\n"
    "  fermat-tower basis      --op member      --primes P,.. [--unchecked] --element E\n"
    "                          [--basis intrinsic|generators] [--max-prefix N] [budget options]\n"
    "  fermat-tower basis      --op annihilator --primes P,.. [--unchecked] --element E --gens E,..\n"
    "                          [budget options]\n"
    "  fermat-tower basis      --op interdep    --primes P,.. [--unchecked] --level I\n"
    "  fermat-tower --config FILE\n"
    "budget options: --strategy elimination|blind|elimination-then-blind\n"
    "                --max-terms N --blind-degree D\n"
    "common: --output FILE (default $FERMAT_REPORT_DIR/<command>.txt, else stdout)\n"
    "spec S: identity | swap=all | swap=0,1 | relabel=2,0 (items joined by ';')\n"
    "element E: integers, x<i>, y<i>, z<i>, + - * / ^, parentheses\n"
    "exit codes: 0 ok, 1 domain error, 2 usage or invalid config, 3 budget exhausted,\n"
    "            4 invariant violation, 5 resource limit\n";

const std::vector<std::string> kCommands = {"schedule", "census",     "build",
                                            "scramble", "synthesize", "basis"};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error("usage", what) {}
};

template <class T>
std::string join(const std::vector<T>& v, const char* sep) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
  return os.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t k = s.find(sep, start);
    out.push_back(s.substr(start, k - start));
    if (k == std::string::npos) return out;
    start = k + 1;
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  const auto bad = [&] { return ConfigError("config key '" + key + "': '" + v + "' is not a 64-bit nonnegative integer"); };
  if (v.empty() || !std::all_of(v.begin(), v.end(), [](char c) { return c >= '0' && c <= '9'; })) throw bad();
  try {
    return std::stoull(v);
  } catch (const std::out_of_range&) {
    throw bad();
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError("config key '" + key + "': expected true or false, got '" + v + "'");
}

// Field table shared by serialize and parse.
struct Field {
  const char* key;
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, const std::string&)> set;
};

template <class T>
Field size_field(const char* key, T RunConfig::*m) {
  return {key, [m](const RunConfig& c) { return std::to_string(c.*m); },
          [m, key](RunConfig& c, const std::string& v) { c.*m = static_cast<T>(parse_u64(key, v)); }};
}

Field string_field(const char* key, std::string RunConfig::*m) {
  return {key, [m](const RunConfig& c) { return c.*m; },
          [m](RunConfig& c, const std::string& v) { c.*m = v; }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> f = {
      string_field("command", &RunConfig::command),
      {"primes", [](const RunConfig& c) { return join(c.primes, ","); },
       [](RunConfig& c, const std::string& v) {
         c.primes.clear();
         for (const auto& s : split(v, ',')) c.primes.push_back(parse_u64("primes", s));
       }},
      {"unchecked", [](const RunConfig& c) { return std::string(c.unchecked ? "true" : "false"); },
       [](RunConfig& c, const std::string& v) { c.unchecked = parse_bool("unchecked", v); }},
      size_field("count", &RunConfig::count),
      size_field("level", &RunConfig::level),
      size_field("bound", &RunConfig::bound),
      size_field("dump", &RunConfig::dump),
      string_field("spec", &RunConfig::spec),
      size_field("seed", &RunConfig::seed),
      size_field("levels", &RunConfig::levels),
      size_field("max_codes", &RunConfig::max_codes),
      size_field("max_steps", &RunConfig::max_steps),
      size_field("samples", &RunConfig::samples),
      size_field("sample_seed", &RunConfig::sample_seed),
      string_field("op", &RunConfig::op),
      string_field("element", &RunConfig::element),
      {"gens", [](const RunConfig& c) { return join(c.gens, ","); },
       [](RunConfig& c, const std::string& v) { c.gens = split(v, ','); }},
      string_field("basis", &RunConfig::basis),
      string_field("strategy", &RunConfig::strategy),
      size_field("max_terms", &RunConfig::max_terms),
      size_field("max_prefix", &RunConfig::max_prefix),
      size_field("blind_degree", &RunConfig::blind_degree),
      string_field("output", &RunConfig::output),
  };
  return f;
}

AnnihilatorStrategy strategy_of(const std::string& s) {
  if (s == "elimination") return AnnihilatorStrategy::elimination;
  if (s == "blind") return AnnihilatorStrategy::blind;
  if (s == "elimination-then-blind") return AnnihilatorStrategy::elimination_then_blind;
  throw ConfigError("unknown strategy '" + s + "'");
}

BasisBudget budget_of(const RunConfig& c) {
  BasisBudget b;
  b.strategy = strategy_of(c.strategy);
  b.max_terms = c.max_terms;
  b.max_prefix = c.max_prefix;
  b.blind_max_degree = c.blind_degree;
  return b;
}

std::unique_ptr<Tower> make_tower(const RunConfig& c) {
  return std::make_unique<Tower>(TowerConfig{c.primes, c.unchecked});
}

ScrambleSpec spec_of(const RunConfig& c, std::size_t depth) {
  try {
    return ScrambleSpec::parse(c.spec, c.seed, depth);
  } catch (const PreconditionError& e) {
    throw ConfigError(std::string("scramble spec: ") + e.what());
  }
}

// Report text with a config header and "## name" sections.
class Report {
 public:
  explicit Report(const RunConfig& c) { os_ << "# fermat-tower report\n" << c.serialize(); }

  void section(const std::string& name) { os_ << "\n## " << name << "\n"; }
  std::ostream& line() { return os_; }
  void check(const std::string& name, bool ok) {
    ++checks_;
    if (!ok) failed_.push_back(name);
    os_ << "check " << name << ": " << (ok ? "pass" : "FAIL") << "\n";
  }
  std::string finish() {
    section("summary");
    os_ << "checks: " << checks_ << "\nfailures: " << failed_.size() << "\n";
    return os_.str();
  }
  const std::vector<std::string>& failed() const { return failed_; }

 private:
  std::ostringstream os_;
  std::size_t checks_ = 0;
  std::vector<std::string> failed_;
};

void schedule_report(const RunConfig& c, Report& r) {
  PrimeSchedule sched;
  std::vector<Nat> ps;
  for (std::size_t i = 0; i < c.count; ++i) ps.push_back(sched.at(i));
  r.section("schedule");
  for (std::size_t i = 0; i < ps.size(); ++i) r.line() << "p" << i << ": " << ps[i].get_str() << "\n";
  r.section("thresholds");
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const Nat g = genus(ps[i]);
    r.line() << "p" << i << ": genus=" << g.get_str() << " threshold=" << cover_threshold(g).get_str()
             << "\n";
  }
  r.section("invariants");
  r.check("p0 = 5", ps[0] == 5);
  for (std::size_t i = 0; i < ps.size(); ++i) r.check("p" + std::to_string(i) + " prime", is_prime(ps[i]));
  for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
    const Nat th = cover_threshold(genus(ps[i]));
    const std::string n = std::to_string(i);
    r.check("p" + std::to_string(i + 1) + " > 64 genus(p" + n + ")^2", ps[i + 1] > th);
    r.check("p" + std::to_string(i + 1) + " least such prime", ps[i + 1] == next_prime(th));
  }
}

std::string pair_label(const SolutionPair& s, std::size_t k) {
  if (s.kind == SolutionKind::trivial) return k == 0 ? "(0, 1)" : "(1, 0)";
  return relabelings()[k - 2].formula;
}

void census_report(const RunConfig& c, Report& r) {
  auto tw = make_tower(c);
  const Tower& t = *tw;
  const std::size_t i = c.level;
  const std::uint64_t p = t.prime(i);
  const auto cat = solution_catalog(t, i);

  r.section("catalog");
  r.line() << "level: " << i << "\np: " << p << "\nentries: " << cat.size() << "\n";
  for (std::size_t k = 0; k < cat.size(); ++k) {
    const auto& s = cat[k];
    const TowerElem lhs = t.add(t.pow(s.x, p), t.pow(s.y, p));
    r.line() << "entry " << k << " " << pair_label(s, k) << " "
             << (s.kind == SolutionKind::trivial ? "trivial" : "nontrivial") << "\n"
             << "  x = " << t.format(s.x) << "\n  y = " << t.format(s.y) << "\n"
             << "  proof: x^" << p << " + y^" << p << " = " << t.format(lhs) << "\n";
    r.check("entry " + std::to_string(k) + " relation", t.eq(lhs, t.one()));
  }
  bool distinct = true;
  for (std::size_t a = 0; a < cat.size(); ++a) {
    for (std::size_t b = a + 1; b < cat.size(); ++b) {
      distinct = distinct && !(t.eq(cat[a].x, cat[b].x) && t.eq(cat[a].y, cat[b].y));
    }
  }
  r.check("entries pairwise distinct", distinct);

  r.section("z-form");
  const TowerElem z = z_element(t, i);
  const TowerElem zc = z_closed_form(t, i);
  r.line() << "z" << i << " = " << t.format(z) << "\n";
  r.check("sum of six first coordinates = closed form", t.eq(z, zc));

  r.section("relabeling-group");
  const RelabelingGroup g = relabeling_group();
  for (const auto& row : g.table) r.line() << join(std::vector<RelabelChoice>(row.begin(), row.end()), " ") << "\n";
  const auto prof = g.order_profile();
  r.line() << "order profile: " << join(std::vector<unsigned>(prof.begin(), prof.end()), ",") << "\n";
  r.check("closed of order 6 with profile 1,2,2,2,3,3",
          prof == std::array<unsigned, 6>{1, 2, 2, 2, 3, 3});

  r.section("bounded-search");
  const auto hits = bounded_solution_search(t, i, c.bound);
  auto pres = Presentation::canonical(t, i + 1);
  pres->realize(c.bound);
  r.line() << "bound: " << c.bound << "\nfound: " << hits.size() << "\n";
  std::size_t covered = 0;
  for (const auto& h : hits) {
    std::size_t k = 0;
    while (k < cat.size() && !(t.eq(cat[k].x, h.x) && t.eq(cat[k].y, h.y))) ++k;
    r.line() << "(" << pres->encode(h.x) << ", " << pres->encode(h.y) << ") entry " << k << "\n";
    covered += k < cat.size();
  }
  r.check("every pair found is in the catalog", covered == hits.size());
  r.line() << "catalog covered: " << covered << " of " << cat.size() << "\n";

  r.section("psi");
  const PsiReport psi = psi_definition_report(t, i, c.bound);
  for (const auto& w : psi.witnesses) r.line() << "witness " << pres->encode(w) << ": " << t.format(w) << "\n";
  r.check("six witnesses", psi.witnesses.size() == 6);
  r.check("witness sum = z" + std::to_string(i), t.eq(psi.sum, z));
}

void build_report(const RunConfig& c, Report& r) {
  auto tw = make_tower(c);
  auto p = Presentation::canonical(*tw);
  p->realize(c.dump);
  r.section("elements");
  for (Code k = 0; k < c.dump; ++k) r.line() << k << ": " << tw->format(p->element(k)) << "\n";
  r.section("tables");
  r.line() << table_dump(*p, c.dump);
}

void scramble_report(const RunConfig& c, Report& r) {
  auto tw = make_tower(c);
  auto p = Presentation::scrambled(*tw, spec_of(c, tw->depth()));
  r.section("presentation");
  r.line() << "spec: " << p->spec().describe() << "\nzero: " << p->zero() << "\none: " << p->one() << "\n";
  r.section("tables");
  r.line() << table_dump(*p, c.dump);
}

void synthesize_report(const RunConfig& c, Report& r) {
  auto tw = make_tower(c);
  const Tower& t = *tw;
  auto target = Presentation::scrambled(t, spec_of(c, t.depth()));
  const SearchBudget budget{c.max_codes, c.max_steps};
  const PartialEmbedding f = synthesize(t, *target, c.levels, budget);
  const HomReport hom = verify_hom(f, t, *target, c.samples, c.sample_seed);
  const ImageReport img = verify_image(f, t, *target);
  r.section("iso-report");
  r.line() << iso_report(t, *target, budget, f, &hom, &img);
  r.section("verification");
  r.check("verify_hom failures = 0", hom.passed());
  for (std::size_t s = 0; s < f.levels_done(); ++s) {
    // Above level 0 of an unchecked tower the image is reported, not required.
    if (s > 0 && c.unchecked) {
      r.line() << "info verify_image level " << s << ": " << (img.passed_at(s) ? "match" : "no match") << "\n";
      continue;
    }
    r.check("verify_image level " + std::to_string(s), img.passed_at(s));
  }
}

void witness_lines(Report& r, const Tower& t, const AnnihilatorWitness& w, const TowerElem& e,
                   const std::string& name) {
  std::vector<std::string> names;
  for (std::size_t j = 0; j < w.gens.size(); ++j) names.push_back("g" + std::to_string(j));
  for (std::size_t j = 0; j < w.gens.size(); ++j) r.line() << "g" << j << " = " << t.format(w.gens[j]) << "\n";
  if (const std::string text = w.to_string(); text.size() <= 200) r.line() << "witness: " << text << "\n";
  r.line() << "degree: " << w.degree() << "\n";
  for (std::size_t k = 0; k < w.coeffs.size(); ++k) {
    if (w.coeffs[k].is_zero()) continue;
    r.line() << "c" << k << " = (" << w.coeffs[k].num.to_string(names) << ")/("
             << w.coeffs[k].den.to_string(names) << ")\n";
  }
  r.check(name + " vanishes", verify_witness(t, w, e));
}

void basis_report(const RunConfig& c, Report& r) {
  auto tw = make_tower(c);
  const Tower& t = *tw;
  const BasisBudget budget = budget_of(c);
  if (c.op == "member") {
    const TowerElem e = parse_element(t, c.element);
    const BasisEnumeration A =
        c.basis == "generators" ? BasisEnumeration::generators(t) : BasisEnumeration::intrinsic(t);
    const MembershipResult m = member_basis_report(t, e, A, budget);
    r.section("member");
    r.line() << "element: " << t.format(e) << "\nbasis: " << A.name << "\nmember: "
             << (m.member ? "true" : "false") << "\nn: " << m.n << "\n";
    if (m.witness) witness_lines(r, t, *m.witness, e, "witness");
  } else if (c.op == "annihilator") {
    const TowerElem e = parse_element(t, c.element);
    std::vector<TowerElem> gens;
    for (const auto& g : c.gens) gens.push_back(parse_element(t, g));
    const auto w = annihilator(t, e, gens, budget);
    if (!w) throw BudgetExhausted("no annihilator of " + c.element + " within the budget");
    r.section("annihilator");
    r.line() << "element: " << t.format(e) << "\n";
    witness_lines(r, t, *w, e, "witness");
  } else {
    const auto [zx, xz] = interdependence_check(t, c.level);
    const std::string i = std::to_string(c.level);
    r.section("z" + i + " over x" + i);
    witness_lines(r, t, zx, z_element(t, c.level), "z" + i + " witness");
    r.section("x" + i + " over z" + i);
    witness_lines(r, t, xz, t.gen_x(c.level), "x" + i + " witness");
  }
}

int exit_code_for(const std::string& reason) {
  if (reason == "usage" || reason == "invalid-config") return kUsage;
  if (reason == "budget-exhausted" || reason == "insufficient-bound") return kBudget;
  if (reason == "invariant-violation") return kInvariant;
  if (reason == "resource-limit") return kResource;
  return kDomainError;
}

void write_report(const RunConfig& c, const std::string& text, std::ostream& out) {
  std::filesystem::path path;
  if (!c.output.empty()) {
    path = c.output;
  } else if (const char* dir = std::getenv(kReportDirEnv); dir && *dir) {
    path = std::filesystem::path(dir) / (c.command + ".txt");
  } else {
    out << text;
    return;
  }
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream f(path, std::ios::binary);
  if (!(f << text) || !f.flush()) throw Error("io", "cannot write report to " + path.string());
}

}  // namespace

std::string RunConfig::serialize() const {
  std::string s;
  for (const auto& f : fields()) {
    const std::string v = f.get(*this);
    s += std::string(f.key) + ":" + (v.empty() ? "" : " " + v) + "\n";
  }
  return s;
}

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig c;
  std::map<std::string, const Field*> by_key;
  for (const auto& f : fields()) by_key[f.key] = &f;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const std::size_t colon = line.find(':');
    if (colon == std::string::npos) throw ConfigError("config line '" + line + "' lacks ':'");
    const std::string key = line.substr(0, colon);
    std::string value = line.substr(colon + 1);
    if (!value.empty() && value[0] == ' ') value.erase(0, 1);
    const auto it = by_key.find(key);
    if (it == by_key.end()) throw ConfigError("unknown config key '" + key + "'");
    it->second->set(c, value);
  }
  return c;
}

void RunConfig::validate() const {
  if (std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end()) {
    throw ConfigError("unknown command '" + command + "'");
  }
  for (const auto* s : {&spec, &element, &op, &basis, &strategy, &output}) {
    if (s->find('\n') != std::string::npos) throw ConfigError("config values are single lines");
  }
  if (command == "schedule") {
    if (count < 1) throw ConfigError("--count must be at least 1");
    return;
  }
  if (primes.empty()) throw ConfigError("--primes is required");
  auto tw = make_tower(*this);  // checks the primes
  const std::size_t depth = tw->depth();
  if (command == "census") {
    if (level >= depth) throw ConfigError("--level must be below the number of primes");
    if (bound < 1) throw ConfigError("--bound must be at least 1");
  } else if (command == "build" || command == "scramble") {
    if (dump < 1 || dump > 256) throw ConfigError("--dump must be in 1..256");
    if (command == "scramble") spec_of(*this, depth);
  } else if (command == "synthesize") {
    if (levels < 1 || levels > depth) throw ConfigError("--levels must be in 1..number of primes");
    if (max_codes < 1) throw ConfigError("--budget must be at least 1");
    spec_of(*this, depth);
  } else {
    strategy_of(strategy);
    if (basis != "intrinsic" && basis != "generators") throw ConfigError("unknown basis '" + basis + "'");
    if (max_prefix < 1) throw ConfigError("--max-prefix must be at least 1");
    if (op == "member" || op == "annihilator") {
      if (element.empty()) throw ConfigError("--op " + op + " needs --element");
      parse_element(*tw, element);
      if (op == "annihilator") {
        if (gens.empty()) throw ConfigError("--op annihilator needs --gens");
        for (const auto& g : gens) parse_element(*tw, g);
      } else if (!gens.empty()) {
        throw ConfigError("--gens only applies to --op annihilator");
      }
    } else if (op == "interdep") {
      if (level >= depth) throw ConfigError("--level must be below the number of primes");
      if (!element.empty() || !gens.empty()) throw ConfigError("--op interdep takes no elements");
    } else {
      throw ConfigError("--op must be member, annihilator or interdep");
    }
  }
}

namespace {

struct Outcome {
  std::string text;
  std::vector<std::string> failed;
};

Outcome build(const RunConfig& c) {
  c.validate();
  Report r(c);
  if (c.command == "schedule") {
    schedule_report(c, r);
  } else if (c.command == "census") {
    census_report(c, r);
  } else if (c.command == "build") {
    build_report(c, r);
  } else if (c.command == "scramble") {
    scramble_report(c, r);
  } else if (c.command == "synthesize") {
    synthesize_report(c, r);
  } else {
    basis_report(c, r);
  }
  std::string text = r.finish();
  return {std::move(text), r.failed()};
}

}  // namespace

std::string report(const RunConfig& c) { return build(c).text; }

RunConfig parse_args(const std::vector<std::string>& args) {
  if (args.size() == 2 && args[0] == "--config") {
    std::ifstream in(args[1]);
    if (!in) throw ConfigError("cannot read config file " + args[1]);
    std::stringstream ss;
    ss << in.rdbuf();
    return RunConfig::parse(ss.str());
  }
  RunConfig c;
  CLI::App app{"fermat-tower"};
  app.set_help_flag();
  app.require_subcommand(1);

  const auto tower_opts = [&](CLI::App* s) {
    s->add_option("--primes", c.primes)->delimiter(',')->required();
    s->add_flag("--unchecked", c.unchecked);
  };
  const auto out_opt = [&](CLI::App* s) { s->add_option("--output", c.output); };

  auto* sch = app.add_subcommand("schedule");
  sch->add_option("--count", c.count)->required();
  out_opt(sch);

  auto* cen = app.add_subcommand("census");
  tower_opts(cen);
  cen->add_option("--level", c.level)->required();
  cen->add_option("--bound", c.bound)->required();
  out_opt(cen);

  auto* bld = app.add_subcommand("build");
  tower_opts(bld);
  bld->add_option("--dump", c.dump)->required();
  out_opt(bld);

  auto* scr = app.add_subcommand("scramble");
  tower_opts(scr);
  scr->add_option("--spec", c.spec)->required();
  scr->add_option("--seed", c.seed)->required();
  scr->add_option("--dump", c.dump)->required();
  out_opt(scr);

  auto* syn = app.add_subcommand("synthesize");
  tower_opts(syn);
  syn->add_option("--levels", c.levels)->required();
  syn->add_option("--spec", c.spec);
  syn->add_option("--seed", c.seed);
  syn->add_option("--budget", c.max_codes);
  syn->add_option("--max-steps", c.max_steps);
  syn->add_option("--samples", c.samples);
  syn->add_option("--sample-seed", c.sample_seed);
  out_opt(syn);

  auto* bas = app.add_subcommand("basis");
  tower_opts(bas);
  bas->add_option("--op", c.op)->required();
  bas->add_option("--element", c.element);
  bas->add_option("--gens", c.gens)->delimiter(',');
  bas->add_option("--level", c.level);
  bas->add_option("--basis", c.basis);
  bas->add_option("--strategy", c.strategy);
  bas->add_option("--max-terms", c.max_terms);
  bas->add_option("--max-prefix", c.max_prefix);
  bas->add_option("--blind-degree", c.blind_degree);
  out_opt(bas);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  for (auto* s : app.get_subcommands()) c.command = s->get_name();
  return c;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty() || (args.size() == 1 && (args[0] == "--help" || args[0] == "-h"))) {
    (args.empty() ? err : out) << kGrammar;
    if (args.empty()) err << "reason: usage\n";
    return args.empty() ? kUsage : kOk;
  }
  try {
    const RunConfig c = parse_args(args);
    const Outcome o = build(c);
    write_report(c, o.text, out);
    if (!o.failed.empty()) throw InvariantViolation("failed checks: " + join(o.failed, "; "));
    return kOk;
  } catch (const Error& e) {
    const int code = exit_code_for(e.reason());
    err << "error: " << e.what() << "\n";
    if (code == kUsage) err << kGrammar;
    err << "reason: " << e.reason() << "\n";
    return code;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\nreason: resource-limit\n";
    return kResource;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\nreason: internal\n";
    return kDomainError;
  }
}

}  // namespace fermat::cli
