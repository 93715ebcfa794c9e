// kwf: command-line front end for the toolkit. Subcommands build a
// configuration from a key=value config file plus flags, run one analysis
// (identity suite, gradient flow, frequency scan, or rank-one limit model),
// and write machine-readable reports into the output directory.
//
// Exit codes: 0 all checks pass, 1 usage or configuration error, 2 a check
// exceeded its tolerance.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "kwflow/domain.hpp"
#include "kwflow/fields.hpp"
#include "kwflow/flow.hpp"
#include "kwflow/frequency.hpp"
#include "kwflow/functionals.hpp"
#include "kwflow/io.hpp"
#include "kwflow/limits.hpp"
#include "kwflow/synth.hpp"

using namespace kw;
using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Config file: flat UTF-8 "key = value" lines grouped by [section] headers.
// Keys are validated against the whitelist below; unknown keys are an error.

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "domain.kind",     "domain.n",          "domain.ns",
      "domain.extent",   "domain.extent_s",   "fields.generator",
      "fields.seed",     "fields.amp",        "fields.kmax",
      "fields.r",        "fields.tau",        "fields.degree",
      "fields.kind",     "flow.s_end",        "flow.dt",
      "frequency.r_min", "frequency.r_max",   "frequency.count",
      "limits.ring_balls", "limits.tube_radius",
      "run.tol",         "run.grid",          "run.preset",
  };
  return keys;
}

struct RunConfig {
  std::map<std::string, std::string> kv;

  bool has(const std::string& k) const { return kv.count(k) > 0; }
  std::string str(const std::string& k, const std::string& dflt) const {
    auto it = kv.find(k);
    return it == kv.end() ? dflt : it->second;
  }
  double num(const std::string& k, double dflt) const {
    auto it = kv.find(k);
    return it == kv.end() ? dflt : std::stod(it->second);
  }
  long integer(const std::string& k, long dflt) const {
    auto it = kv.find(k);
    return it == kv.end() ? dflt : std::stol(it->second);
  }
};

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Returns false (with a message on stderr) on syntax or unknown-key errors.
bool load_config(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in.good()) {
    std::fprintf(stderr, "kwf: cannot open config file '%s'\n", path.c_str());
    return false;
  }
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[' && t.back() == ']') {
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "kwf: %s:%d: expected key = value\n", path.c_str(),
                   lineno);
      return false;
    }
    std::string key = section.empty() ? trim(t.substr(0, eq))
                                      : section + "." + trim(t.substr(0, eq));
    if (!known_keys().count(key)) {
      std::fprintf(stderr, "kwf: %s:%d: unknown key '%s'\n", path.c_str(),
                   lineno, key.c_str());
      return false;
    }
    cfg.kv[key] = trim(t.substr(eq + 1));
  }
  return true;
}

Domain domain_from_config(const RunConfig& cfg, int grid) {
  std::string kind = cfg.str("domain.kind", "torus4");
  int n = grid > 0 ? grid : static_cast<int>(cfg.integer("domain.n", 8));
  double L = cfg.num("domain.extent", 1.0);
  if (kind == "torus4") return torus4(n, L);
  if (kind == "torus3") return torus3(n, L);
  if (kind == "slab_t3")
    return slab_t3(static_cast<int>(cfg.integer("domain.ns", n)), n,
                   cfg.num("domain.extent_s", L), L);
  throw std::runtime_error("unknown domain.kind '" + kind + "'");
}

Configuration config_from_generator(const RunConfig& cfg, const Domain& dom,
                                    std::uint64_t seed) {
  Configuration c(dom, cfg.num("fields.r", 0.8), cfg.num("fields.tau", 0.5));
  std::string gen = cfg.str("fields.generator", "random");
  if (gen == "flat") return c;  // zero connection pair: flat SL(2;C)
  int ndim = dom.kind == DomainKind::Torus3 ? 3 : 4;
  double amp = cfg.num("fields.amp", 0.3);
  int kmax = static_cast<int>(cfg.integer("fields.kmax", 1));
  if (gen == "constant") {
    for (std::size_t s = 0; s < dom.site_count(); ++s)
      for (int mu = 0; mu < 4; ++mu) {
        c.A.set_lie(s, mu, LieVec{{amp, 0, 0}});
        c.a.set_lie(s, mu, LieVec{{0, amp, 0}});
      }
    return c;
  }
  if (gen == "random") {
    c.A = sample_1form(random_lie_1form(ndim, kmax, amp, seed), dom);
    c.a = sample_1form(random_lie_1form(ndim, kmax, amp, seed + 1), dom);
    return c;
  }
  throw std::runtime_error("unknown fields.generator '" + gen + "'");
}

void write_summary(const std::string& out_dir, const json& j) {
  std::ofstream f(out_dir + "/summary.json");
  f << j.dump(2) << "\n";
}

void ensure_out_dir(const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
}

struct CheckSink {
  json rows = json::array();
  bool all_ok = true;

  void add(const std::string& id, double measured, double tol, bool ok) {
    rows.push_back({{"check", id},
                    {"measured", measured},
                    {"tolerance", tol},
                    {"pass", ok}});
    all_ok = all_ok && ok;
    std::printf("  %-34s %-4s  measured=%.3e tol=%.3e\n", id.c_str(),
                ok ? "ok" : "FAIL", measured, tol);
  }
  void gap(const std::string& id, const IdentityReport& r, double tol) {
    add(id, r.abs_gap, tol, r.abs_gap <= tol);
  }
};

// ---------------------------------------------------------------------------
// identities: run the discrete identity suite on the generated configuration
// and gate each absolute gap on the tolerance.

int cmd_identities(RunConfig cfg, const std::string& out, std::uint64_t seed,
                   int grid, double tol, const std::string& preset) {
  if (preset == "flat") {
    cfg.kv["fields.generator"] = "flat";
  } else if (!preset.empty()) {
    std::fprintf(stderr, "kwf: unknown identities preset '%s'\n",
                 preset.c_str());
    return 1;
  }
  ensure_out_dir(out);
  Domain dom = domain_from_config(cfg, grid);
  Configuration c = config_from_generator(cfg, dom, seed);
  CheckSink sink;

  bool flat = cfg.str("fields.generator", "random") == "flat";

  // The energy identities close against the topological term exactly when
  // the duality residuals vanish; in general the gap equals the residual
  // square integral, which is what we gate here. They involve 4-forms, so
  // they are only evaluated on 4-dimensional domains.
  if (dom.ndim() == 4) {
    IdentityReport quad = energy_identity_quadratic(c);
    IdentityReport weighted = energy_identity_weighted(c);
    ComplexCurvature cc = complex_curvature(c);
    double t = c.tau, u = 1.0 - c.tau;
    double D = t * t + u * u;
    FormField wp = sd_project(cc.w, +1), wm = sd_project(cc.w, -1);
    FormField vp = sd_project(cc.v, +1), vm = sd_project(cc.v, -1);
    double residue =
        grid_norm_sq(t * wp - u * vp) + grid_norm_sq(u * wm + t * vm);
    double scale = std::max(1.0, quad.lhs);
    double gq = std::abs((quad.lhs - quad.rhs) - 2.0 * residue / D);
    double gw = std::abs((weighted.lhs - weighted.rhs) - residue);
    sink.add("energy-quadratic-residue", gq / scale, tol, gq <= tol * scale);
    sink.add("energy-weighted-residue", gw / scale, tol, gw <= tol * scale);
    if (flat) {
      sink.gap("energy-quadratic", quad, tol);
      sink.gap("energy-weighted", weighted, tol);
    }
    double split = curvature_split_gap(c);
    sink.add("pointwise-split", split, tol, split <= tol);
    write_identity_json(out + "/energy_quadratic.json", "energy-quadratic",
                        quad, dom.sites[0], 0.0);
    write_identity_json(out + "/energy_weighted.json", "energy-weighted",
                        weighted, dom.sites[0], 0.0);
  }
  IdentityReport pairing = bochner_pairing(c);
  sink.gap("bochner-pairing", pairing, tol);
  write_identity_json(out + "/bochner_pairing.json", "bochner-pairing",
                      pairing, dom.sites[0], 0.0);

  if (dom.kind == DomainKind::Torus4) {
    // The representation formula assumes the section is covariantly
    // harmonic, so gate it on a configuration that satisfies that exactly.
    Configuration hc(dom, c.r, c.tau);
    if (!flat)
      for (std::size_t s = 0; s < dom.site_count(); ++s)
        for (int mu = 0; mu < 4; ++mu)
          hc.a.set_lie(s, mu, LieVec{{0.5 - 0.1 * mu, 0, 0}});
    IdentityReport green = green_identity(flat ? c : hc, dom.site_count() / 2);
    sink.gap("green-representation", green, std::max(tol, 0.0));
    write_identity_json(out + "/green.json", "green-representation", green,
                        dom.sites[0], 0.0);

    LieVec sigma0{{0, 0, 1}};
    FormField p(dom, 1, ValueKind::Lie), q(dom, 1, ValueKind::Lie);
    SynthLie1Form fp = random_lie_1form(4, 1, 0.4, seed + 2);
    SynthLie1Form fq = random_lie_1form(4, 1, 0.4, seed + 3);
    p = sample_1form(fp, dom);
    q = sample_1form(fq, dom);
    for (std::size_t s = 0; s < dom.site_count(); ++s)
      for (int mu = 0; mu < 4; ++mu) {
        LieVec vp = p.lie(s, mu), vq = q.lie(s, mu);
        vp[2] = vq[2] = 0.0;  // project onto the sigma0-orthogonal lanes
        p.set_lie(s, mu, vp);
        q.set_lie(s, mu, vq);
      }
    IdentityReport model = model_weitzenbock(p, q, sigma0, 0.8, 0);
    sink.gap("model-weitzenbock", model, tol);
    write_identity_json(out + "/model_weitzenbock.json", "model-weitzenbock",
                        model, dom.sites[0], 0.0);
  }

  write_summary(out, {{"subcommand", "identities"},
                      {"seed", seed},
                      {"grid", dom.sites[0]},
                      {"tolerance", tol},
                      {"checks", sink.rows},
                      {"pass", sink.all_ok}});
  return sink.all_ok ? 0 : 2;
}

// ---------------------------------------------------------------------------
// flow: integrate the gradient flow and gate the energy-balance assertions.

int cmd_flow(const RunConfig& cfg, const std::string& out, std::uint64_t seed,
             int grid, double tol, const std::string& preset) {
  ensure_out_dir(out);
  RunConfig c2 = cfg;
  if (preset == "dissipation") {
    c2.kv.emplace("domain.kind", "torus3");
    c2.kv.emplace("fields.generator", "random");
    c2.kv.emplace("fields.amp", "0.4");
  } else if (!preset.empty()) {
    std::fprintf(stderr, "kwf: unknown flow preset '%s'\n", preset.c_str());
    return 1;
  }
  Domain dom = domain_from_config(c2, grid > 0 ? grid : 8);
  Configuration c = config_from_generator(c2, dom, seed);
  double s_end = c2.num("flow.s_end", 0.1);
  double dt = c2.num("flow.dt", 0.002);
  FlowLedger led = integrate_flow(c, s_end, dt);
  write_flow_csv(out + "/flow.csv", led);

  CheckSink sink;
  double worst_rise = 0.0;
  for (std::size_t i = 1; i < led.rows.size(); ++i)
    worst_rise = std::max(
        worst_rise,
        led.rows[i].weighted_real - led.rows[i - 1].weighted_real);
  sink.add("weighted-action-monotone", worst_rise, 1e-9, worst_rise <= 1e-9);
  double drop = led.weighted_drop();
  sink.add("weighted-action-drop-positive", drop, 0.0, drop > 0.0);
  double mismatch =
      std::abs(drop - led.dissipation_time_integral) / std::max(drop, 1e-300);
  double mtol = tol > 0 ? tol : 1e-5;
  sink.add("drop-matches-dissipation", mismatch, mtol, mismatch <= mtol);

  write_summary(out, {{"subcommand", "flow"},
                      {"preset", preset},
                      {"seed", seed},
                      {"grid", dom.sites[0]},
                      {"steps", led.rows.size() - 1},
                      {"checks", sink.rows},
                      {"pass", sink.all_ok}});
  return sink.all_ok ? 0 : 2;
}

// ---------------------------------------------------------------------------
// frequency: scan the frequency function of a model or generated field.

DensitySampler homogeneous_d1_sampler() {
  // a = d(x1 x2) sigma1 about the origin: degree-1 homogeneous, N == 1.
  DensitySampler s;
  s.base = Point{0, 0, 0, 0};
  s.r_cfg = 1.0;
  s.a_sq = [](const Point& x) { return x[0] * x[0] + x[1] * x[1]; };
  s.energy = [](const Point&) { return 2.0; };
  s.wedge_sq = [](const Point&) { return 0.0; };
  s.rad_sq = [](const Point& x) {
    double nn = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
    nn = std::max(nn, 1e-300);
    return (x[0] * x[0] + x[1] * x[1]) / nn;
  };
  s.a_dot_rad = [](const Point& x) {
    double nn = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
    nn = std::sqrt(std::max(nn, 1e-300));
    return 2.0 * x[0] * x[1] / nn;
  };
  s.curv_bdry = [](const Point&) { return 0.0; };
  return s;
}

int cmd_frequency(const RunConfig& cfg, const std::string& out,
                  std::uint64_t seed, int grid, double tol,
                  const std::string& preset) {
  ensure_out_dir(out);
  double r_min = cfg.num("frequency.r_min", 0.1);
  double r_max = cfg.num("frequency.r_max", 0.4);
  int count = static_cast<int>(cfg.integer("frequency.count", 31));
  std::vector<double> radii;
  for (int i = 0; i < count; ++i)
    radii.push_back(r_min + (r_max - r_min) * i / (count - 1));
  QuadratureRule q;

  DensitySampler d;
  double n_target = -1.0;
  if (preset == "homogeneous-d1") {
    d = homogeneous_d1_sampler();
    n_target = 1.0;
  } else if (preset.empty()) {
    Domain dom = domain_from_config(cfg, grid);
    Configuration c = config_from_generator(cfg, dom, seed);
    Point base{0, 0, 0, 0};
    for (int k = 0; k < 4; ++k) base[k] = 0.5 * dom.extent[k];
    d = make_density_sampler(c, base);
  } else {
    std::fprintf(stderr, "kwf: unknown frequency preset '%s'\n",
                 preset.c_str());
    return 1;
  }

  FrequencyProfile p = profile(d, radii, q);
  write_profile_csv(out + "/profile.csv", p);

  CheckSink sink;
  if (n_target >= 0.0) {
    double worst = 0.0;
    for (const FrequencyPoint& pt : p.pts)
      worst = std::max(worst, std::abs(pt.N - n_target));
    double ntol = tol > 0 ? tol : 1e-3;
    sink.add("frequency-matches-degree", worst, ntol, worst <= ntol);
  }
  double defect = ode_defect(p);
  sink.add("log-derivative-consistency", defect, 0.05, defect <= 0.05);

  write_summary(out, {{"subcommand", "frequency"},
                      {"preset", preset},
                      {"seed", seed},
                      {"radii", radii.size()},
                      {"checks", sink.rows},
                      {"pass", sink.all_ok}});
  return sink.all_ok ? 0 : 2;
}

// ---------------------------------------------------------------------------
// limits: rank-one decomposition, sign holonomy, and Holder growth of the
// half-twist model (branch line along x2 at x0 = x1 = 1/2).

int cmd_limits(const RunConfig& cfg, const std::string& out,
               std::uint64_t seed, int grid, double tol,
               const std::string& preset) {
  ensure_out_dir(out);
  (void)seed;
  if (!preset.empty() && preset != "z2-model") {
    std::fprintf(stderr, "kwf: unknown limits preset '%s'\n", preset.c_str());
    return 1;
  }
  int n = grid > 0 ? grid : 32;
  Domain dom = torus3(n, cfg.num("domain.extent", 1.0));
  FormField a(dom, 1, ValueKind::Lie), sigma(dom, 0, ValueKind::Lie);
  FormField absa(dom, 0, ValueKind::Real);
  double tube = cfg.num("limits.tube_radius", 0.1);
  std::vector<char> masked(dom.site_count(), 0), zmask(dom.site_count(), 0);
  for (std::size_t s = 0; s < dom.site_count(); ++s) {
    Point x = dom.position(dom.site_coords(s));
    double u = x[0] - 0.5, v = x[1] - 0.5;
    double rho = std::sqrt(u * u + v * v), th = std::atan2(v, u);
    LieVec sg{{std::cos(th / 2), std::sin(th / 2), 0}};
    sigma.set_lie(s, 0, sg);
    a.set_lie(s, 0, (std::sqrt(rho) * std::cos(th / 2)) * sg);
    a.set_lie(s, 1, (-std::sqrt(rho) * std::sin(th / 2)) * sg);
    // |a|^2 = rho, so |a| = sqrt(rho): Holder exponent 1/2 off the line
    *absa.at(s, 0) = std::sqrt(site_norm_sq(a, s));
    if (rho < tube) masked[s] = 1;
    if (rho < 0.03) zmask[s] = 1;
  }

  int nb = static_cast<int>(cfg.integer("limits.ring_balls", 16));
  std::vector<BallSpec> cover;
  std::vector<int> chain;
  for (int k = 0; k < nb; ++k) {
    double th = 2.0 * kPi * k / nb;
    cover.push_back(BallSpec{
        Point{0.5 + 0.3 * std::cos(th), 0.5 + 0.3 * std::sin(th), 0.5, 0},
        0.15});
    chain.push_back(k);
  }
  CocycleResult cres = sign_cocycle(sigma, cover, masked);
  int hol = loop_holonomy(cres, chain);

  // Fit offsets must resolve at least two lattice spacings, otherwise the
  // sampled increments are dominated by interpolation error.
  std::vector<double> deltas;
  double d0 = std::max(0.04, 2.0 / n);
  for (double dd = d0; dd < 0.25; dd *= 1.5) deltas.push_back(dd);
  HolderFit hf = holder_fit(absa, zmask, deltas);

  CheckSink sink;
  sink.add("cocycle-consistent", cres.consistent ? 1.0 : 0.0, 1.0,
           cres.consistent);
  sink.add("branch-loop-holonomy", hol, -1.0, hol == -1);
  double etol = tol > 0 ? tol : 0.05;
  sink.add("holder-exponent-half", std::abs(hf.exponent - 0.5), etol,
           std::abs(hf.exponent - 0.5) <= etol);

  write_summary(out, {{"subcommand", "limits"},
                      {"preset", preset.empty() ? "z2-model" : preset},
                      {"grid", n},
                      {"ring_balls", nb},
                      {"holonomy", hol},
                      {"holder_exponent", hf.exponent},
                      {"checks", sink.rows},
                      {"pass", sink.all_ok}});
  return sink.all_ok ? 0 : 2;
}

// ---------------------------------------------------------------------------
// dump: write the generated connection pair and its sidecar to disk.

int cmd_dump(const RunConfig& cfg, const std::string& out, std::uint64_t seed,
             int grid) {
  ensure_out_dir(out);
  Domain dom = domain_from_config(cfg, grid);
  Configuration c = config_from_generator(cfg, dom, seed);
  write_field(out + "/A.kwf", c.A);
  write_field(out + "/a.kwf", c.a);
  write_config_sidecar(out + "/config.json", c);
  write_summary(out, {{"subcommand", "dump"},
                      {"seed", seed},
                      {"grid", dom.sites[0]},
                      {"files", {"A.kwf", "a.kwf", "config.json"}},
                      {"pass", true}});
  std::printf("  wrote A.kwf, a.kwf, config.json to %s\n", out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kwf: discrete complex connection analysis toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", preset;
  std::uint64_t seed = 1;
  int grid = 0;
  double tol = -1.0;
  app.add_option("--config", config_path, "key = value config file");
  app.add_option("--out", out_dir, "output directory (must exist)");
  app.add_option("--seed", seed, "seed for generated fields");
  app.add_option("--grid", grid, "sites per axis (overrides config)");
  app.add_option("--tol", tol, "check tolerance (overrides defaults)");
  app.add_option("--preset", preset, "named preset for the subcommand");

  CLI::App* s_id = app.add_subcommand("identities", "discrete identity suite");
  CLI::App* s_flow = app.add_subcommand("flow", "gradient-flow integration");
  CLI::App* s_freq = app.add_subcommand("frequency", "frequency-function scan");
  CLI::App* s_lim = app.add_subcommand("limits", "rank-one limit model checks");
  CLI::App* s_dump = app.add_subcommand("dump", "write generated fields");
  for (CLI::App* s : {s_id, s_flow, s_freq, s_lim, s_dump}) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  RunConfig cfg;
  if (!config_path.empty() && !load_config(config_path, cfg)) return 1;
  if (preset.empty()) preset = cfg.str("run.preset", "");
  if (tol < 0 && cfg.has("run.tol")) tol = cfg.num("run.tol", -1.0);
  if (grid == 0) grid = static_cast<int>(cfg.integer("run.grid", 0));
  double id_tol = tol >= 0 ? tol : 1e-8;

  try {
    if (s_id->parsed())
      return cmd_identities(cfg, out_dir, seed, grid, id_tol, preset);
    if (s_flow->parsed()) return cmd_flow(cfg, out_dir, seed, grid, tol, preset);
    if (s_freq->parsed())
      return cmd_frequency(cfg, out_dir, seed, grid, tol, preset);
    if (s_lim->parsed()) return cmd_limits(cfg, out_dir, seed, grid, tol, preset);
    if (s_dump->parsed()) return cmd_dump(cfg, out_dir, seed, grid);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "kwf: %s\n", e.what());
    return 1;
  }
  return 1;
}
