#include "metriq/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <json.hpp>
#include <map>
#include <ostream>
#include <sstream>

#include "metriq/analytic.hpp"
#include "metriq/builders.hpp"
#include "metriq/comparison.hpp"
#include "metriq/continuum.hpp"
#include "metriq/dispersion.hpp"
#include "metriq/eigensolver.hpp"
#include "metriq/error.hpp"
#include "metriq/graph_io.hpp"
#include "metriq/parallel.hpp"
#include "metriq/perturbation.hpp"
#include "metriq/version.hpp"

namespace metriq::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string seconds_since(Clock::time_point t0) {
  std::ostringstream s;
  s.precision(3);
  s << std::fixed << std::chrono::duration<double>(Clock::now() - t0).count() << " s";
  return s.str();
}

std::string sci(double x) {
  std::ostringstream s;
  s.precision(2);
  s << std::scientific << x;
  return s.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

template <class T>
CLI::IsMember choice(const std::map<std::string, T>& m) {
  std::vector<std::string> keys;
  for (const auto& kv : m) keys.push_back(kv.first);
  return CLI::IsMember(keys, CLI::ignore_case);
}

template <class T>
T pick(const std::map<std::string, T>& m, const std::string& key) {
  std::string k = key;
  std::transform(k.begin(), k.end(), k.begin(), ::tolower);
  const auto it = m.find(k);
  if (it == m.end()) throw Error(ErrorKind::ConfigError, "unknown value '" + key + "'");
  return it->second;
}

const std::map<std::string, Boundary> kBoundary{{"clamped", Boundary::Clamped}, {"free", Boundary::Free}};
const std::map<std::string, LatticeBoundary> kLatticeBoundary{
    {"clamped", LatticeBoundary::Clamped}, {"free", LatticeBoundary::Free}, {"periodic", LatticeBoundary::Periodic}};
const std::map<std::string, Connectivity> kConnectivity{
    {"cardinal", Connectivity::Cardinal}, {"ordinal", Connectivity::Ordinal}, {"both", Connectivity::Both}};
const std::map<std::string, TraceMode> kTrace{
    {"auto", TraceMode::Auto}, {"exact", TraceMode::Exact}, {"stochastic", TraceMode::Stochastic}};
const std::map<std::string, DensityMode> kDensity{{"empirical", DensityMode::Empirical},
                                                  {"dualcell", DensityMode::DualCell}};

std::string name_of(TraceMode m) {
  for (const auto& [k, v] : kTrace)
    if (v == m) return k;
  return "?";
}

struct SolverFlags {
  SolverConfig cfg;
  unsigned long long seed = 1;
  std::string trace = "auto";

  void add(CLI::App* app, bool range = true) {
    if (range) {
      app->add_option("--kmin", cfg.k_min, "lower end of the k window")->capture_default_str();
      app->add_option("--kmax", cfg.k_max, "upper end of the k window")->capture_default_str();
    }
    app->add_option("--seed-density", cfg.seed_density, "Newton seeds per unit k")->capture_default_str();
    app->add_option("--newton-tol", cfg.newton_tol)->capture_default_str();
    app->add_option("--max-iter", cfg.max_iter)->capture_default_str();
    app->add_option("--dedup-tol", cfg.dedup_tol)->capture_default_str();
    app->add_option("--nullspace-tol", cfg.nullspace_tol)->capture_default_str();
    app->add_option("--trace", trace, "auto, exact or stochastic")->check(choice(kTrace))->capture_default_str();
    app->add_option("--stochastic-threshold", cfg.stochastic_threshold)->capture_default_str();
    app->add_option("--probes", cfg.probe_count)->capture_default_str();
    app->add_option("--seed", seed, "rng seed for stochastic traces")->capture_default_str();
    app->add_option("--quad-order", cfg.quad_order)->capture_default_str();
    app->add_option("--inertia-check", cfg.inertia_check)->capture_default_str();
  }

  SolverConfig get() const {
    SolverConfig c = cfg;
    c.rng_seed = seed;
    c.trace_mode = pick(kTrace, trace);
    c.validate();
    return c;
  }
};

std::string spectrum_csv(const Spectrum& sp, const SolverConfig& cfg) {
  std::ostringstream s;
  if (sp.trace_mode == TraceMode::Stochastic) s << "# trace_mode=stochastic rng_seed=" << cfg.rng_seed << "\n";
  s << "index,k,multiplicity,residual,kirchhoff,certified\n";
  for (std::size_t i = 0; i < sp.modes.size(); ++i) {
    const auto& m = sp.modes[i];
    s << i << ',' << num(m.k) << ',' << m.multiplicity << ',' << num(m.residual) << ',' << num(m.kirchhoff) << ','
      << (m.certified ? 1 : 0) << '\n';
  }
  return s.str();
}

nlohmann::json spectrum_json(const Spectrum& sp, const SolverConfig& cfg, Boundary b, bool vectors) {
  nlohmann::json j;
  j["trace_mode"] = name_of(sp.trace_mode);
  j["rng_seed"] = cfg.rng_seed;
  j["boundary"] = b == Boundary::Clamped ? "clamped" : "free";
  j["k_min"] = cfg.k_min;
  j["k_max"] = cfg.k_max;
  j["total_multiplicity"] = sp.total_multiplicity();
  j["recovered_by_inertia"] = sp.recovered_by_inertia;
  j["pole_candidates"] = sp.pole_candidates;
  auto& modes = j["modes"] = nlohmann::json::array();
  for (const auto& m : sp.modes) {
    nlohmann::json e{{"k", m.k},
                     {"multiplicity", m.multiplicity},
                     {"residual", m.residual},
                     {"kirchhoff", m.kirchhoff},
                     {"certified", m.certified}};
    if (vectors) {
      auto& basis = e["basis"] = nlohmann::json::array();
      for (const auto& v : m.basis) basis.push_back(std::vector<double>(v.data(), v.data() + v.size()));
    }
    modes.push_back(std::move(e));
  }
  return j;
}

double max_residual(const Spectrum& sp) {
  double r = 0.0;
  for (const auto& m : sp.modes) r = std::max(r, m.residual);
  return r;
}

std::string rows_csv(const std::vector<ConvergenceRow>& rows) {
  std::ostringstream s;
  const bool corrected = std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.eta_corrected.has_value(); });
  s << "family,|V|,alpha_index,label,k,k_tilde,eta,chi";
  if (corrected) s << ",eta_corrected";
  s << '\n';
  for (const auto& r : rows) {
    s << to_string(r.family) << ',' << r.vertices << ',' << r.alpha_index << ',' << r.label << ',' << num(r.k) << ','
      << num(r.k_tilde) << ',' << num(r.eta) << ',' << num(r.chi);
    if (corrected) s << ',' << num(r.eta_corrected.value_or(std::nan("")));
    s << '\n';
  }
  return s.str();
}

void write_or_print(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty())
    out << text;
  else
    write_text_file(path, text);
}

int category_exit(ErrorKind k) {
  switch (k) {
    case ErrorKind::ConfigError: return kConfigError;
    case ErrorKind::IoError: return kIoError;
    default: return kDomainError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"metriq: spectra of metric graphs and their continuum limits", "metriq"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("metriq ") + kVersion);
  app.set_config("--config", "", "key = value file; command line flags override it");
  std::string write_config;
  app.add_option("--write-config", write_config, "write the effective configuration to this file")->configurable(false);
  unsigned threads = 0;
  app.add_option("--threads", threads, "cap on worker threads (0 = hardware)");

  // build
  auto* build = app.add_subcommand("build", "generate a graph and save it as JSON");
  std::string b_family, b_out, b_ops = "t";
  int b_n = 20, b_target = 400, b_ratio = 2, b_nx = 10, b_ny = 10, b_M = 32, b_rings = 17, b_edges = 8;
  double b_Lx = 1.0, b_Ly = 1.0, b_gamma = 1.0, b_length = 1.0;
  std::string b_boundary = "clamped", b_conn = "cardinal";
  bool b_free_rim = false;
  build->add_option("--family", b_family, "square, rect, torus, lattice, spider, goldberg or path")
      ->required()
      ->check(CLI::IsMember({"square", "rect", "torus", "lattice", "spider", "goldberg", "polyhedron", "path"}, CLI::ignore_case));
  build->add_option("-o,--output", b_out)->required();
  build->add_option("--n", b_n, "square: vertices per side")->capture_default_str();
  build->add_option("--target", b_target, "rect: approximate vertex count")->capture_default_str();
  build->add_option("--ratio", b_ratio, "rect: ly / lx")->capture_default_str();
  build->add_option("--nx", b_nx, "lattice, torus: points per side")->capture_default_str();
  build->add_option("--ny", b_ny)->capture_default_str();
  build->add_option("--Lx", b_Lx)->capture_default_str();
  build->add_option("--Ly", b_Ly)->capture_default_str();
  build->add_option("--boundary", b_boundary, "lattice: clamped, free or periodic")
      ->check(choice(kLatticeBoundary))
      ->capture_default_str();
  build->add_option("--connectivity", b_conn, "lattice: cardinal, ordinal or both")
      ->check(choice(kConnectivity))
      ->capture_default_str();
  build->add_option("--M", b_M, "spider: spokes")->capture_default_str();
  build->add_option("--rings", b_rings, "spider: rings")->capture_default_str();
  build->add_option("--gamma", b_gamma, "spider: rho = r / gamma")->capture_default_str();
  build->add_flag("--free-rim", b_free_rim, "spider: leave the outer ring unclamped");
  build->add_option("--ops", b_ops, "goldberg: Conway string over {t,d}")->capture_default_str();
  build->add_option("--edges", b_edges, "path: edge count")->capture_default_str();
  build->add_option("--length", b_length, "path: total length")->capture_default_str();

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues and eigenmodes of a graph");
  std::string s_graph, s_out;
  std::string s_boundary = "clamped";
  bool s_vectors = false;
  SolverFlags s_solver;
  spectrum->add_option("-g,--graph", s_graph)->required();
  spectrum->add_option("-o,--output", s_out, ".json or .csv");
  spectrum->add_option("--boundary", s_boundary, "clamped or free")->check(choice(kBoundary))->capture_default_str();
  spectrum->add_flag("--vectors", s_vectors, "include eigenvectors in JSON output");
  s_solver.add(spectrum);

  // fields
  auto* fields = app.add_subcommand("fields", "R tensor, density and homogeneity of an embedded graph");
  std::string f_graph, f_out;
  std::string f_density = "dualcell";
  fields->add_option("-g,--graph", f_graph)->required();
  fields->add_option("-o,--output", f_out, "per-vertex CSV");
  fields->add_option("--density", f_density, "empirical or dualcell")->check(choice(kDensity))->capture_default_str();

  // dispersion
  auto* dispersion = app.add_subcommand("dispersion", "plane-wave dispersion on periodic lattices");
  std::string d_conn = "cardinal";
  double d_ell = 0.1, d_kx = 1.0, d_ky = 0.0;
  int d_steps = 4;
  std::string d_out;
  dispersion->add_option("--connectivity", d_conn)->check(choice(kConnectivity))->capture_default_str();
  dispersion->add_option("--ell", d_ell)->capture_default_str();
  dispersion->add_option("--kx", d_kx)->capture_default_str();
  dispersion->add_option("--ky", d_ky)->capture_default_str();
  dispersion->add_option("--steps", d_steps, "halvings of ell in the limit table")->capture_default_str();
  dispersion->add_option("-o,--output", d_out, "limit table CSV");

  // perturb
  auto* perturb = app.add_subcommand("perturb", "first-order splittings on a sphere graph");
  std::string p_graph, p_out;
  int p_jmax = 4;
  bool p_nfactor = false;
  SolverFlags p_solver;
  perturb->add_option("-g,--graph", p_graph)->required();
  perturb->add_option("--jmax", p_jmax)->capture_default_str();
  perturb->add_flag("--n-factor", p_nfactor, "scale B by the degeneracy 2j+1");
  perturb->add_option("-o,--output", p_out);
  p_solver.add(perturb, false);

  // compare
  auto* compare = app.add_subcommand("compare", "match a graph spectrum to continuum modes");
  std::string c_graph, c_family, c_out;
  double c_param = 1.0, c_window = 0.1;
  int c_jmax = 4;
  bool c_nfactor = false;
  SolverFlags c_solver;
  compare->add_option("-g,--graph", c_graph)->required();
  compare->add_option("--family", c_family, "square, rect, spider, goldberg or path")->required();
  compare->add_option("--param", c_param, "spider gamma or path length")->capture_default_str();
  compare->add_option("--jmax", c_jmax)->capture_default_str();
  compare->add_option("--window", c_window, "relative k window for overlap matching")->capture_default_str();
  compare->add_flag("--n-factor", c_nfactor);
  compare->add_option("-o,--output", c_out);
  c_solver.add(compare, false);

  // convergence
  auto* convergence = app.add_subcommand("convergence", "eta and chi over a density sweep");
  std::string v_family, v_out, v_plot;
  std::vector<std::string> v_dens;
  double v_param = 1.0, v_window = 0.1;
  int v_jmax = 4;
  bool v_nfactor = false;
  SolverFlags v_solver;
  convergence->add_option("--family", v_family)->required();
  convergence->add_option("--densities", v_dens, "side n (10,20,30), spider MxK (16x9,32x17) or goldberg truncations (1,2,3)")->required()->delimiter(',');
  convergence->add_option("--param", v_param)->capture_default_str();
  convergence->add_option("--jmax", v_jmax)->capture_default_str();
  convergence->add_option("--window", v_window)->capture_default_str();
  convergence->add_flag("--n-factor", v_nfactor);
  convergence->add_option("-o,--output", v_out);
  convergence->add_option("--plot-data", v_plot, "directory for per-figure CSVs");
  v_solver.add(convergence, false);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: ConfigError: " << e.what() << '\n';
    return kConfigError;
  }

  const auto t0 = Clock::now();
  try {
    if (threads > 0) set_max_threads(threads);
    if (!write_config.empty()) {
      std::string text = "threads=" + std::to_string(threads) + "\n";
      for (auto* sub : app.get_subcommands()) text += "[" + sub->get_name() + "]\n" + sub->config_to_str(true, false);
      write_text_file(write_config, text);
    }

    if (*build) {
      std::string fam = b_family;
      std::transform(fam.begin(), fam.end(), fam.begin(), ::tolower);
      MetricGraph g = [&]() -> MetricGraph {
        if (fam == "square") return build_lattice(square_lattice_spec(b_n));
        if (fam == "rect") return build_lattice(rect_lattice_spec(b_target, b_ratio));
        if (fam == "lattice" || fam == "torus") {
          LatticeSpec ls;
          ls.nx = b_nx;
          ls.ny = b_ny;
          ls.Lx = b_Lx;
          ls.Ly = b_Ly;
          ls.boundary = fam == "torus" ? LatticeBoundary::Periodic : pick(kLatticeBoundary, b_boundary);
          ls.connectivity = pick(kConnectivity, b_conn);
          return build_lattice(ls);
        }
        if (fam == "spider") {
          SpiderSpec ss;
          ss.M = b_M;
          ss.rings = b_rings;
          ss.gamma = b_gamma;
          ss.clamped = !b_free_rim;
          return build_spider(ss);
        }
        if (fam == "path") return build_path(b_edges, b_length, true);
        return build_polyhedron({b_ops, true});
      }();
      save_graph(g, b_out);
      out << "build: " << fam << " |V|=" << g.num_vertices() << " |E|=" << g.num_edges() << " -> " << b_out << " ("
          << seconds_since(t0) << ")\n";
      return kOk;
    }

    if (*spectrum) {
      const auto g = load_graph(s_graph);
      const auto cfg = s_solver.get();
      const Boundary boundary = pick(kBoundary, s_boundary);
      const auto sp = solve_spectrum(g, cfg, boundary);
      if (!s_out.empty() && ends_with(s_out, ".csv"))
        write_text_file(s_out, spectrum_csv(sp, cfg));
      else if (!s_out.empty())
        write_text_file(s_out, spectrum_json(sp, cfg, boundary, s_vectors).dump(2) + "\n");
      else
        out << spectrum_csv(sp, cfg);
      out << "spectrum: " << sp.modes.size() << " roots, " << sp.total_multiplicity()
          << " with multiplicity, max residual " << sci(max_residual(sp)) << ", trace " << name_of(sp.trace_mode)
          << ", " << seconds_since(t0) << '\n';
      return kOk;
    }

    if (*fields) {
      const auto g = load_graph(f_graph);
      const auto field = compute_field(g, pick(kDensity, f_density));
      const auto rep = homogeneity_report(g, field);
      std::ostringstream s;
      s << "vertex,x,y,z,Rxx,Rxy,Rxz,Ryy,Ryz,Rzz,trR,mu,cell_volume,interior\n";
      for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        const auto& p = g.vertex(v).pos;
        const auto& R = field.R[v];
        s << v << ',' << num(p.x()) << ',' << num(p.y()) << ',' << num(p.z()) << ',' << num(R(0, 0)) << ','
          << num(R(0, 1)) << ',' << num(R(0, 2)) << ',' << num(R(1, 1)) << ',' << num(R(1, 2)) << ',' << num(R(2, 2))
          << ',' << num(field.trR[v]) << ',' << num(field.mu[v]) << ','
          << num(field.cell_volume.empty() ? std::nan("") : field.cell_volume[v]) << ','
          << (field.interior[v] ? 1 : 0) << '\n';
      }
      write_or_print(f_out, s.str(), out);
      out << "fields: |V|=" << g.num_vertices() << " r0=" << num(field.r0) << " mu0=" << num(field.mu0)
          << " homogeneity=" << sci(rep.homogeneity_rel) << " isotropy=" << sci(rep.isotropy_rel) << ", "
          << seconds_since(t0) << '\n';
      return kOk;
    }

    if (*dispersion) {
      const Connectivity conn = pick(kConnectivity, d_conn);
      const double k = dispersion_k({conn, d_ell, d_kx, d_ky});
      std::vector<double> ells{d_ell};
      for (int i = 0; i < d_steps; ++i) ells.push_back(ells.back() / 2);
      const auto rows = verify_limit(conn, d_kx, d_ky, ells);
      std::ostringstream s;
      s << "ell,k,defect,ratio\n";
      for (const auto& r : rows) s << num(r.ell) << ',' << num(r.k) << ',' << num(r.defect) << ',' << num(r.ratio) << '\n';
      if (!d_out.empty()) write_text_file(d_out, s.str());
      out << "dispersion: k=" << num(k) << " defect=" << num(rows.front().defect)
          << " last ratio=" << num(rows.back().ratio) << ", " << seconds_since(t0) << '\n';
      return kOk;
    }

    if (*perturb) {
      const auto g = load_graph(p_graph);
      const auto cfg = p_solver.get();
      const auto field = compute_field(g, DensityMode::Empirical);
      const auto obs = sphere_graph_levels(g, p_jmax, cfg);
      std::ostringstream s;
      s << "j,m_index,lambda0,lambda1,k_pred,k_observed,eta\n";
      double worst = 0.0;
      for (int j = 1; j <= p_jmax; ++j) {
        const auto c = compare_level(splittings(make_problem(g, field, j, p_nfactor)), obs);
        for (int i = 0; i < 2 * j + 1; ++i) {
          const double eta = std::abs(c.k_obs[i] - c.k_pred[i]) / c.k_pred[i];
          worst = std::max(worst, eta);
          s << j << ',' << i << ',' << num(c.lambda0) << ',' << num(c.lambda1[i]) << ',' << num(c.k_pred[i]) << ','
            << num(c.k_obs[i]) << ',' << num(eta) << '\n';
        }
      }
      write_or_print(p_out, s.str(), out);
      out << "perturb: levels 1.." << p_jmax << " on |V|=" << g.num_vertices() << ", max eta " << sci(worst) << ", "
          << seconds_since(t0) << '\n';
      return kOk;
    }

    if (*compare) {
      const auto g = load_graph(c_graph);
      StudyOptions opt;
      opt.solver = c_solver.get();
      opt.param = c_param;
      opt.jmax = c_jmax;
      opt.window = c_window;
      opt.n_factor = c_nfactor;
      const auto fam = family_from_string(c_family);
      const auto rows = compare_graph(g, fam, opt);
      write_or_print(c_out, rows_csv(rows), out);
      double worst = 0.0;
      for (const auto& r : rows) worst = std::max(worst, r.eta);
      out << "compare: " << rows.size() << " modes on |V|=" << g.num_vertices() << ", max eta " << sci(worst) << ", "
          << seconds_since(t0) << '\n';
      return kOk;
    }

    if (*convergence) {
      const auto fam = family_from_string(v_family);
      std::vector<DensityPoint> dens;
      for (const auto& d : v_dens) dens.push_back(parse_density(d));
      StudyOptions opt;
      opt.solver = v_solver.get();
      opt.param = v_param;
      opt.jmax = v_jmax;
      opt.window = v_window;
      opt.n_factor = v_nfactor;
      const auto rows = convergence_study(fam, dens, opt);
      write_or_print(v_out, rows_csv(rows), out);
      if (!v_plot.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(v_plot, ec);
        if (ec) throw Error(ErrorKind::IoError, "cannot create " + v_plot + ": " + ec.message());
        const std::string stem = v_plot + "/" + to_string(fam);
        std::ostringstream eig, ef;
        eig << "|V|,label,eta";
        ef << "|V|,label,chi\n";
        const bool corrected = fam == Family::Sphere;
        eig << (corrected ? ",eta_corrected\n" : "\n");
        for (const auto& r : rows) {
          eig << r.vertices << ',' << r.label << ',' << num(r.eta);
          if (corrected) eig << ',' << num(r.eta_corrected.value_or(std::nan("")));
          eig << '\n';
          ef << r.vertices << ',' << r.label << ',' << num(r.chi) << '\n';
        }
        write_text_file(stem + "_comparison_eig.csv", eig.str());
        write_text_file(stem + "_comparison_ef.csv", ef.str());
        if (corrected) {
          // eta_j per level, as plotted solid (leading order) and dashed (first order)
          std::ostringstream lv;
          lv << "|V|,j,eta_j,eta_j_corrected\n";
          std::map<std::pair<std::size_t, int>, std::array<double, 3>> acc;
          for (const auto& r : rows) {
            const int j = static_cast<int>(std::floor(std::sqrt(static_cast<double>(r.alpha_index)) + 1e-9));
            auto& a = acc[{r.vertices, j}];
            a[0] += r.eta;
            a[1] += r.eta_corrected.value_or(0.0);
            a[2] += 1.0;
          }
          for (const auto& [key, a] : acc)
            lv << key.first << ',' << key.second << ',' << num(a[0] / a[2]) << ',' << num(a[1] / a[2]) << '\n';
          write_text_file(stem + "_levels.csv", lv.str());
        }
      }
      std::size_t sizes = 0;
      for (const auto& d : mean_eta_by_size(rows)) sizes += d.first > 0;
      out << "convergence: " << to_string(fam) << ", " << sizes << " densities, " << rows.size() << " rows, "
          << seconds_since(t0) << '\n';
      return kOk;
    }
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return category_exit(e.kind());
  } catch (const std::exception& e) {
    err << "error: Internal: " << e.what() << '\n';
    return kInternalError;
  }
  return kOk;
}

}  // namespace metriq::cli
