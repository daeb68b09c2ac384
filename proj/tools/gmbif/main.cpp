#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "acceptance.hpp"
#include "serialize.hpp"

namespace fs = std::filesystem;
using namespace gmbif;
using cli::json;

namespace {

enum Exit { kOk = 0, kInvalid = 2, kGuard = 3, kVerifyFailed = 4 };

struct RunConfig {
  std::string c, beta, b, d;
  double tol = 1e-8;     // degeneracy band for classification
  double int_tol = 1e-9; // integrator local error per unit step
  int jet_order = kDefaultJetOrder;
  std::string reading = "exact";
  std::string epsilon;
  std::string seeds = "ring:16";
  double t_max = 200.0;
  double delta_b = 0.0; // 0: 10% of b_SN
  bool no_simulate = false;
  std::string format = "json";
  std::string out;
  std::uint64_t rng_seed = acceptance::Config{}.rng_seed;
  std::string only;
  bool json_out = false;
  bool show_config = false;
};

double parse_double(const std::string& s, const std::string& what) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto r = std::from_chars(s.data(), end, v);
  if (r.ec != std::errc{} || r.ptr != end) throw InvalidInput(what + ": cannot parse '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::optional<double> scalar(const std::string& s, const char* name) {
  if (s.empty()) return std::nullopt;
  if (s.find(':') != std::string::npos)
    throw InvalidInput(std::string(name) + ": ranges are only accepted by scan");
  return parse_double(s, name);
}

AxisRange axis(const std::string& s, const char* name) {
  if (s.empty()) throw InvalidInput(std::string(name) + " is required");
  const auto parts = split(s, ':');
  if (parts.size() == 1) {
    const double v = parse_double(parts[0], name);
    return {v, v, 1};
  }
  if (parts.size() != 3) throw InvalidInput(std::string(name) + ": expected lo:hi:n");
  const double n = parse_double(parts[2], name);
  if (!(n >= 1) || n != std::floor(n)) throw InvalidInput(std::string(name) + ": n must be a positive integer");
  return {parse_double(parts[0], name), parse_double(parts[1], name), static_cast<int>(n)};
}

double required(const std::optional<double>& v, const char* name) {
  if (!v) throw InvalidInput(std::string("--") + name + " is required");
  return *v;
}

// Missing b or d fall back to the locus the command lives on.
Params resolve(const RunConfig& cfg, bool d_on_c, bool b_on_sn) {
  const double c = required(scalar(cfg.c, "c"), "c");
  const double beta = required(scalar(cfg.beta, "beta"), "beta");
  auto d = scalar(cfg.d, "d");
  if (!d && d_on_c) d = c;
  const double dd = required(d, "d");
  auto b = scalar(cfg.b, "b");
  if (!b && b_on_sn) b = 0.25 * dd * dd * beta * beta;
  return Params::make(c, beta, required(b, "b"), dd);
}

std::array<double, 3> parse_epsilon(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw InvalidInput("--epsilon: expected e1,e2,e3");
  return {parse_double(parts[0], "epsilon"), parse_double(parts[1], "epsilon"),
          parse_double(parts[2], "epsilon")};
}

State default_center(const Params& p) {
  const auto eqs = equilibria(p);
  for (auto label : {EquilibriumLabel::E2, EquilibriumLabel::E1})
    for (const auto& e : eqs)
      if (e.label == label) return e.point;
  return eqs.front().point;
}

// ring:N[@u,v][:r]  or  u,v;u,v;...
std::vector<State> parse_seeds(const std::string& text, const Params& p) {
  if (text.rfind("ring:", 0) == 0) {
    std::string rest = text.substr(5);
    std::optional<double> radius;
    std::optional<State> center;
    if (const auto colon = rest.find(':'); colon != std::string::npos) {
      radius = parse_double(rest.substr(colon + 1), "ring radius");
      rest = rest.substr(0, colon);
    }
    if (const auto at = rest.find('@'); at != std::string::npos) {
      const auto uv = split(rest.substr(at + 1), ',');
      if (uv.size() != 2) throw InvalidInput("--seeds: ring centre must be u,v");
      center = State{parse_double(uv[0], "seed"), parse_double(uv[1], "seed")};
      rest = rest.substr(0, at);
    }
    const double n = parse_double(rest, "ring size");
    if (!(n >= 0) || n != std::floor(n)) throw InvalidInput("--seeds: ring size must be an integer");
    if (n == 0) return {};
    const State ctr = center.value_or(default_center(p));
    const double r = radius.value_or(0.1 * (std::abs(ctr.u) + std::abs(ctr.v)));
    if (!(r > 0.0)) throw InvalidInput("--seeds: ring radius must be positive");
    return ring_seeds(ctr, r, static_cast<int>(n));
  }
  std::vector<State> out;
  for (const auto& item : split(text, ';')) {
    if (item.empty()) continue;
    const auto uv = split(item, ',');
    if (uv.size() != 2) throw InvalidInput("--seeds: expected u,v pairs separated by ';'");
    out.push_back({parse_double(uv[0], "seed"), parse_double(uv[1], "seed")});
  }
  return out;
}

LienardReading reading(const RunConfig& cfg) {
  return cfg.reading == "truncated" ? LienardReading::Truncated : LienardReading::Exact;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw InvalidInput("cannot open " + cfg.out + " for writing");
  f << text;
}

void emit(const RunConfig& cfg, const json& j) { emit(cfg, j.dump(2) + "\n"); }

void require_format(const RunConfig& cfg, std::initializer_list<const char*> ok) {
  for (const char* f : ok)
    if (cfg.format == f) return;
  throw InvalidInput("--format " + cfg.format + " is not available for this command");
}

json defaults_json(const RunConfig& cfg) {
  const IntegratorOptions io;
  const CycleSearchOptions cs;
  const HopfOptions ho;
  const ClassifyOptions co;
  const CuspOptions cu;
  const BtOptions bt;
  return {
      {"params", {{"c", cfg.c}, {"beta", cfg.beta}, {"b", cfg.b}, {"d", cfg.d}}},
      {"tol", cfg.tol},
      {"int_tol", cfg.int_tol},
      {"jet_order", cfg.jet_order},
      {"reading", cfg.reading},
      {"epsilon", cfg.epsilon},
      {"seeds", cfg.seeds},
      {"t_max", cfg.t_max},
      {"backward_time_cap", kBackwardTimeCap},
      {"delta_b", cfg.delta_b},
      {"format", cfg.format},
      {"out", cfg.out},
      {"rng_seed", cfg.rng_seed},
      {"integrator",
       {{"tol", io.tol},
        {"v_floor", io.v_floor},
        {"h_init", io.h_init},
        {"h_min", io.h_min},
        {"h_max", io.h_max},
        {"equilibrium_norm", io.equilibrium_norm},
        {"domain_bound", io.domain_bound},
        {"max_steps", io.max_steps},
        {"closure_tol", io.closure_tol}}},
      {"cycle_search",
       {{"tol", cs.integrator.tol},
        {"convergence", cs.convergence},
        {"max_returns", cs.max_returns},
        {"max_return_time", cs.max_return_time},
        {"neutral_band", cs.neutral_band},
        {"collapse_radius", cs.collapse_radius}}},
      {"hopf",
       {{"locus_tol", ho.locus_tol},
        {"side_offset", ho.side_offset},
        {"seed_fraction", ho.seed_fraction}}},
      {"classify", {{"degeneracy", co.degeneracy}, {"cusp_tol", co.cusp_tol}}},
      {"cusp", {{"E_tol", cu.E_tol}, {"locus_tol", cu.locus_tol}}},
      {"unfolding",
       {{"guard", bt.chain.guard},
        {"relative_guard", bt.chain.relative_guard},
        {"h_rel", bt.h_rel},
        {"locus_tol", bt.locus_tol}}},
  };
}

ClassifyOptions classify_options(const RunConfig& cfg) {
  ClassifyOptions o;
  o.degeneracy = cfg.tol;
  o.jet_order = cfg.jet_order;
  return o;
}

int cmd_equilibria(const RunConfig& cfg, bool with_sector) {
  require_format(cfg, {"json", "csv"});
  const Params p = resolve(cfg, false, false);
  const auto eqs = equilibria(p);
  const auto cls = classify_all(p, classify_options(cfg));
  if (cfg.format == "csv") {
    std::vector<cli::Row> rows;
    for (std::size_t k = 0; k < eqs.size(); ++k) rows.push_back({eqs[k], std::string(to_string(cls[k].kind))});
    emit(cfg, cli::equilibria_csv(rows));
    return kOk;
  }
  json list = json::array();
  for (std::size_t k = 0; k < eqs.size(); ++k) {
    json j = cli::to_json(cls[k]);
    j["u"] = eqs[k].point.u;
    j["v"] = eqs[k].point.v;
    list.push_back(std::move(j));
  }
  json out = {{"params", cli::to_json(p)}, {"equilibria", std::move(list)}};
  if (with_sector) {
    const bool sn = std::abs(p.discriminant()) <= default_discriminant_tol(p);
    if (sn && std::abs(p.d - p.c) > cfg.tol * std::max(p.c, p.d))
      out["sector"] = cli::to_json(sector_orientation(p, cfg.tol));
  }
  emit(cfg, out);
  return kOk;
}

int cmd_saddle_node(const RunConfig& cfg) {
  require_format(cfg, {"json"});
  const Params p = resolve(cfg, false, true);
  const auto rep = saddle_node_report(p);
  const double db = cfg.delta_b > 0.0 ? cfg.delta_b : 0.1 * p.b_sn();
  const auto counts = equilibrium_count_across_sn(p, db);
  json out = {{"params", cli::to_json(p)},
              {"report", cli::to_json(rep)},
              {"expected_wf_b", -p.c / (p.d * p.beta)},
              {"expected_wd2f", -2.0 * p.c / (p.d * p.beta)},
              {"delta_b", db},
              {"counts", counts}};
  if (std::abs(p.d - p.c) > cfg.tol * std::max(p.c, p.d))
    out["sector"] = cli::to_json(sector_orientation(p, cfg.tol));
  emit(cfg, out);
  return kOk;
}

int cmd_hopf(const RunConfig& cfg) {
  require_format(cfg, {"json"});
  const Params p = resolve(cfg, true, false);
  HopfOptions opt;
  opt.search.integrator.tol = std::min(cfg.int_tol, opt.search.integrator.tol);
  const auto rep = hopf_report(p, !cfg.no_simulate, opt);
  emit(cfg, json{{"params", cli::to_json(p)}, {"report", cli::to_json(rep)}});
  return kOk;
}

int cmd_normal_form(const RunConfig& cfg) {
  require_format(cfg, {"json"});
  const Params p = resolve(cfg, true, true);
  if (!cfg.epsilon.empty()) {
    BtOptions opt;
    opt.chain.order = cfg.jet_order;
    const auto rep = bt_unfolding(p, parse_epsilon(cfg.epsilon), opt);
    emit(cfg, json{{"params", cli::to_json(p)}, {"unfolding", cli::to_json(rep)}});
    return kOk;
  }
  CuspOptions opt;
  opt.order = cfg.jet_order;
  opt.reading = reading(cfg);
  const auto rep = cusp_report(p, opt);
  json out = {{"params", cli::to_json(p)}, {"cusp", cli::to_json(rep)}};
  out["reference"] = cli::to_json(compare_reference(rep.intermediate, p.c, p.beta));
  emit(cfg, out);
  return kOk;
}

int cmd_scan(const RunConfig& cfg) {
  require_format(cfg, {"json", "csv"});
  ParamBox box{axis(cfg.c, "c"), axis(cfg.beta, "beta"), axis(cfg.b, "b"), axis(cfg.d, "d")};
  const auto res = scan_bifurcation_set(box, cfg.tol);
  if (cfg.format == "csv")
    emit(cfg, cli::scan_csv(res));
  else
    emit(cfg, cli::to_json(res));
  return kOk;
}

int cmd_portrait(const RunConfig& cfg) {
  const Params p = resolve(cfg, false, false);
  const auto seeds = parse_seeds(cfg.seeds, p);
  if (seeds.empty()) throw InvalidInput("no seeds");
  if (!(cfg.t_max > 0.0)) throw InvalidInput("--t-max must be positive");
  IntegratorOptions io;
  io.tol = cfg.int_tol;
  io.record_stride = 4;
  const auto entries = portrait(p, seeds, cfg.t_max, io);

  std::size_t ok = 0;
  json list = json::array();
  std::vector<cli::SvgTrack> tracks;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    json j = {{"seed", cli::to_json(e.seed)}};
    if (e.forward) {
      j["forward"] = cli::to_json(*e.forward);
      tracks.push_back({&*e.forward, false});
    }
    if (e.backward) {
      j["backward"] = cli::to_json(*e.backward);
      tracks.push_back({&*e.backward, true});
    }
    if (!e.error.empty()) j["error"] = e.error;
    if (e.forward || e.backward) ++ok;
    list.push_back(std::move(j));
  }

  if (cfg.format == "svg") {
    emit(cfg, cli::portrait_svg(p, tracks, equilibria(p)));
  } else if (cfg.format == "csv") {
    // with --out: a directory of per-trajectory files; otherwise one long table
    if (!cfg.out.empty()) {
      fs::create_directories(cfg.out);
      for (std::size_t k = 0; k < entries.size(); ++k) {
        char name[32];
        for (int dir = 0; dir < 2; ++dir) {
          const auto& t = dir == 0 ? entries[k].forward : entries[k].backward;
          if (!t) continue;
          std::snprintf(name, sizeof name, "traj_%03zu_%s.csv", k, dir == 0 ? "fwd" : "bwd");
          std::ofstream(fs::path(cfg.out) / name) << cli::trajectory_csv(*t);
        }
      }
      std::ofstream(fs::path(cfg.out) / "portrait.svg") << cli::portrait_svg(p, tracks, equilibria(p));
      std::cout << json{{"params", cli::to_json(p)}, {"trajectories", list}}.dump(2) << "\n";
    } else {
      std::string s = "seed,direction,t,u,v\n";
      for (std::size_t k = 0; k < entries.size(); ++k)
        for (int dir = 0; dir < 2; ++dir) {
          const auto& t = dir == 0 ? entries[k].forward : entries[k].backward;
          if (!t) continue;
          for (const auto& smp : t->samples)
            s += std::to_string(k) + (dir == 0 ? ",forward," : ",backward,") + cli::fmt(smp.t) +
                 "," + cli::fmt(smp.s.u) + "," + cli::fmt(smp.s.v) + "\n";
        }
      std::cout << s;
    }
  } else {
    emit(cfg, json{{"params", cli::to_json(p)}, {"trajectories", list}});
  }
  for (const auto& e : entries)
    if (!e.error.empty()) std::cerr << "seed (" << e.seed.u << ", " << e.seed.v << "): " << e.error << "\n";
  if (ok == 0) {
    std::cerr << "error: no trajectory succeeded\n";
    return kInvalid;
  }
  return kOk;
}

int cmd_verify(const RunConfig& cfg) {
  const auto ids = cfg.only.empty() ? acceptance::all_ids() : acceptance::parse_selection(cfg.only);
  acceptance::Config ac;
  ac.rng_seed = cfg.rng_seed;
  bool all = true;
  json list = json::array();
  for (int id : ids) {
    const auto r = acceptance::run(id, ac);
    all = all && r.pass;
    if (cfg.json_out)
      list.push_back(cli::to_json(r));
    else
      std::cout << acceptance::summary_line(r) << std::endl;
  }
  if (cfg.json_out) emit(cfg, json{{"pass", all}, {"rng_seed", cfg.rng_seed}, {"criteria", list}});
  return all ? kOk : kVerifyFailed;
}

void add_params(CLI::App* sub, RunConfig& cfg, bool ranges) {
  const char* hint = ranges ? "value or lo:hi:n" : "value";
  sub->add_option("--c", cfg.c, std::string("activator decay rate c (") + hint + ")");
  sub->add_option("--beta", cfg.beta, std::string("production ratio beta (") + hint + ")");
  sub->add_option("--b", cfg.b, std::string("basal inhibitor production b (") + hint + ")");
  sub->add_option("--d", cfg.d, std::string("inhibitor decay rate d (") + hint + ")");
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--tol", cfg.tol, "degeneracy band for trace/determinant tests")->capture_default_str();
  sub->add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "svg"}))
      ->capture_default_str();
  sub->add_option("--out", cfg.out, "output path (stdout when empty)");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bifurcation analysis of the local Gierer-Meinhardt activator-inhibitor system"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_flag("--show-config", cfg.show_config, "print the resolved configuration and exit")
      ->configurable(false);
  app.fallthrough();

  auto* eq = app.add_subcommand("equilibria", "equilibria with coordinates, Delta and type");
  auto* cl = app.add_subcommand("classify", "classification evidence per equilibrium");
  auto* sn = app.add_subcommand("saddle-node", "transversality at b = b_SN (b defaults to b_SN)");
  auto* hp = app.add_subcommand("hopf", "Hopf analysis at d = c (d defaults to c)");
  auto* nf = app.add_subcommand("normal-form", "cusp normal form or unfolding (b, d default to the locus)");
  auto* sc = app.add_subcommand("scan", "equilibrium structure over a parameter grid");
  auto* pt = app.add_subcommand("portrait", "phase portrait trajectories");
  auto* vf = app.add_subcommand("verify", "run the acceptance suite");

  for (auto* s : {eq, cl, sn, hp, nf, pt}) {
    add_params(s, cfg, false);
    add_common(s, cfg);
  }
  add_params(sc, cfg, true);
  add_common(sc, cfg);
  for (auto* s : {eq, cl, nf})
    s->add_option("--jet-order", cfg.jet_order, "truncation order of the jets")
        ->check(CLI::Range(3, kMaxJetOrder))
        ->capture_default_str();
  nf->add_option("--reading", cfg.reading, "Lienard step reading")
      ->check(CLI::IsMember({"exact", "truncated"}))
      ->capture_default_str();
  nf->add_option("--epsilon", cfg.epsilon, "unfolding offsets e1,e2,e3 (beta, b, d)");
  sn->add_option("--delta-b", cfg.delta_b, "offset for the equilibrium count (default 0.1 b_SN)");
  hp->add_flag("--no-simulate", cfg.no_simulate, "skip the return-map search");
  for (auto* s : {hp, pt})
    s->add_option("--int-tol", cfg.int_tol, "integrator local error per unit step")->capture_default_str();
  pt->add_option("--seeds", cfg.seeds, "ring:N[@u,v][:r] or u,v;u,v;...")->capture_default_str();
  pt->add_option("--t-max", cfg.t_max, "forward integration horizon")->capture_default_str();
  vf->add_option("--only", cfg.only, "criteria by number or key, comma separated");
  vf->add_flag("--json", cfg.json_out, "machine-readable results");
  vf->add_option("--rng-seed", cfg.rng_seed, "seed for the randomized criteria")->capture_default_str();
  vf->add_option("--out", cfg.out, "output path for --json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalid;
  }

  if (cfg.show_config) {
    json j = defaults_json(cfg);
    j["command"] = app.get_subcommands().front()->get_name();
    std::cout << j.dump(2) << "\n";
    return kOk;
  }

  try {
    if (*eq) return cmd_equilibria(cfg, false);
    if (*cl) return cmd_equilibria(cfg, true);
    if (*sn) return cmd_saddle_node(cfg);
    if (*hp) return cmd_hopf(cfg);
    if (*nf) return cmd_normal_form(cfg);
    if (*sc) return cmd_scan(cfg);
    if (*pt) return cmd_portrait(cfg);
    if (*vf) return cmd_verify(cfg);
  } catch (const PipelineGuard& e) {
    std::cerr << "error: " << e.what() << "\nstage: " << e.stage() << "\n";
    return kGuard;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
