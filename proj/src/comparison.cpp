#include "metriq/comparison.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>

#include "metriq/builders.hpp"
#include "metriq/continuum.hpp"
#include "metriq/error.hpp"
#include "metriq/perturbation.hpp"

namespace metriq {

EdgeFunction restrict_analytic(const MetricGraph& g, const AnalyticMode& mode, int quad_order) {
  const bool sphere = g.domain().kind == DomainKind::Sphere;
  const double radius = g.domain().radius;
  const MetricGraph* gp = &g;
  auto eval = mode.eval;
  EdgeFunction raw = [gp, eval, sphere, radius](std::size_t e, double x) {
    Eigen::Vector3d p = gp->edge_point(e, x);
    if (sphere) p = radius * p.normalized();
    return eval(p);
  };
  const double nrm = graph_norm(g, raw, quad_order);
  if (!(nrm > 0.0)) throw Error(ErrorKind::InvalidSpec, "analytic mode " + mode.label() + " vanishes on the graph");
  return [raw, nrm](std::size_t e, double x) { return raw(e, x) / nrm; };
}

std::vector<std::pair<double, Eigen::VectorXd>> flatten_modes(const Spectrum& s) {
  std::vector<std::pair<double, Eigen::VectorXd>> out;
  for (const auto& m : s.modes) {
    if (m.basis.empty())
      out.emplace_back(m.k, m.f);
    else
      for (const auto& b : m.basis) out.emplace_back(m.k, b);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

namespace {

/// Inside a degenerate eigenspace, pairs computed and analytic modes by
/// largest |alpha|.
void pair_within_eigenspaces(std::vector<ModeMatch>& matches) {
  std::map<std::size_t, std::vector<ModeMatch*>> groups;
  for (auto& m : matches) groups[m.eigenspace.front()].push_back(&m);
  for (auto& [key, ms] : groups) {
    if (ms.size() < 2) continue;
    struct Pair {
      double w;
      std::size_t c, a;
    };
    std::vector<Pair> pairs;
    for (std::size_t c = 0; c < ms.size(); ++c)
      for (std::size_t a = 0; a < ms[c]->eigenspace.size(); ++a)
        pairs.push_back({std::abs(ms[c]->alpha[static_cast<long>(a)]), c, a});
    std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.w > y.w; });
    std::vector<char> cu(ms.size(), 0), au(ms.front()->eigenspace.size(), 0);
    for (const auto& p : pairs) {
      if (cu[p.c] || au[p.a]) continue;
      cu[p.c] = au[p.a] = 1;
      ms[p.c]->analytic = ms[p.c]->eigenspace[p.a];
    }
  }
}

std::vector<std::vector<std::size_t>> eigenspaces(const std::vector<AnalyticMode>& analytic) {
  std::vector<std::vector<std::size_t>> spaces;
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    const double k = analytic[i].k;
    if (!spaces.empty() && std::abs(k - analytic[spaces.back().front()].k) <= 1e-10 * std::max(1.0, k))
      spaces.back().push_back(i);
    else
      spaces.push_back({i});
  }
  return spaces;
}

}  // namespace

std::vector<ModeMatch> match_modes(const std::vector<std::pair<double, Eigen::VectorXd>>& computed,
                                   const std::vector<AnalyticMode>& analytic, double dedup_tol) {
  if (computed.empty() || analytic.empty()) throw Error(ErrorKind::InvalidSpec, "nothing to match");
  const auto spaces = eigenspaces(analytic);
  std::vector<double> space_k;
  for (const auto& sp : spaces) space_k.push_back(analytic[sp.front()].k);
  for (std::size_t s = 0; s < spaces.size(); ++s) {
    const double tol = dedup_tol * std::max(1.0, space_k[s]);
    std::size_t near = 0;
    for (const auto& c : computed)
      if (std::abs(c.first - space_k[s]) <= tol) ++near;
    if (near > spaces[s].size())
      throw Error(ErrorKind::AmbiguousMatch, std::to_string(near) + " computed values at k = " +
                                                 std::to_string(space_k[s]) + " exceed its multiplicity " +
                                                 std::to_string(spaces[s].size()));
  }
  // global greedy on distance over nearby candidate spaces
  struct Cand {
    double d;
    std::size_t c, s;
  };
  std::vector<Cand> cands;
  const long width = 6;
  for (std::size_t c = 0; c < computed.size(); ++c) {
    const double k = computed[c].first;
    const long pos = std::lower_bound(space_k.begin(), space_k.end(), k) - space_k.begin();
    for (long s = std::max(0L, pos - width); s < std::min<long>(static_cast<long>(spaces.size()), pos + width); ++s)
      cands.push_back({std::abs(k - space_k[static_cast<std::size_t>(s)]), c, static_cast<std::size_t>(s)});
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.d < b.d; });
  std::vector<char> used(computed.size(), 0);
  std::vector<std::size_t> fill(spaces.size(), 0);
  std::vector<ModeMatch> out;
  for (const auto& cd : cands) {
    if (used[cd.c] || fill[cd.s] >= spaces[cd.s].size()) continue;
    used[cd.c] = 1;
    ModeMatch m;
    m.k = computed[cd.c].first;
    m.f = computed[cd.c].second;
    m.eigenspace = spaces[cd.s];
    m.analytic = spaces[cd.s][fill[cd.s]++];
    m.k_tilde = space_k[cd.s];
    m.eta = m.k_tilde > 0.0 ? std::abs(m.k - m.k_tilde) / m.k_tilde : std::abs(m.k);
    out.push_back(std::move(m));
  }
  // within an eigenspace keep computed order aligned with analytic order
  std::sort(out.begin(), out.end(), [](const ModeMatch& a, const ModeMatch& b) {
    return a.k_tilde < b.k_tilde || (a.k_tilde == b.k_tilde && a.k < b.k);
  });
  std::map<std::size_t, std::size_t> next;
  for (auto& m : out) m.analytic = m.eigenspace[next[m.eigenspace.front()]++];
  return out;
}

double chi_error(const MetricGraph& g, const EdgeFunction& f, const std::vector<EdgeFunction>& space,
                 Eigen::VectorXd* alpha, int quad_order) {
  std::vector<EdgeFunction> all = space;
  all.push_back(f);
  const Eigen::MatrixXd G = graph_gram(g, all, quad_order);
  const long n = static_cast<long>(space.size());
  const Eigen::MatrixXd S = G.topLeftCorner(n, n);
  const Eigen::VectorXd c = G.col(n).head(n);
  if (alpha) *alpha = c;
  const Eigen::VectorXd y = S.ldlt().solve(c);
  // integrate the residual itself; <f,f> - c^T y cancels to sqrt(eps)
  const EdgeFunction r = [&](std::size_t e, double x) {
    double v = f(e, x);
    for (long i = 0; i < n; ++i) v -= y[i] * space[static_cast<std::size_t>(i)](e, x);
    return v;
  };
  return graph_norm(g, r, quad_order);
}

void compute_chi(const MetricGraph& g, std::vector<ModeMatch>& matches, const std::vector<AnalyticMode>& analytic,
                 int quad_order) {
  std::map<std::size_t, EdgeFunction> restricted;
  for (const auto& m : matches)
    for (auto i : m.eigenspace)
      if (!restricted.count(i)) restricted.emplace(i, restrict_analytic(g, analytic[i], quad_order));
  for (auto& m : matches) {
    std::vector<EdgeFunction> space;
    for (auto i : m.eigenspace) space.push_back(restricted.at(i));
    const EdgeFunction f = mode_function(g, m.k, normalize_mode(g, m.k, m.f, quad_order));
    m.chi = chi_error(g, f, space, &m.alpha, quad_order);
  }
  pair_within_eigenspaces(matches);
}

std::vector<ModeMatch> match_by_overlap(const MetricGraph& g,
                                        const std::vector<std::pair<double, Eigen::VectorXd>>& computed,
                                        const std::vector<AnalyticMode>& analytic,
                                        const std::function<bool(const AnalyticMode&)>& wanted, double window,
                                        int quad_order) {
  struct Cand {
    double w;
    std::size_t c, s;
    double chi;
    Eigen::VectorXd alpha;
  };
  const auto spaces = eigenspaces(analytic);
  std::vector<Cand> cands;
  std::vector<EdgeFunction> fs(computed.size());
  std::vector<char> have(computed.size(), 0);
  for (std::size_t s = 0; s < spaces.size(); ++s) {
    if (!std::any_of(spaces[s].begin(), spaces[s].end(), [&](std::size_t i) { return wanted(analytic[i]); })) continue;
    const double kt = analytic[spaces[s].front()].k;
    std::vector<EdgeFunction> space;
    for (auto i : spaces[s]) space.push_back(restrict_analytic(g, analytic[i], quad_order));
    for (std::size_t c = 0; c < computed.size(); ++c) {
      const double k = computed[c].first;
      if (std::abs(k - kt) > window * std::max(kt, 1e-300)) continue;
      if (!have[c]) {
        fs[c] = mode_function(g, k, normalize_mode(g, k, computed[c].second, quad_order));
        have[c] = 1;
      }
      Cand cd{0.0, c, s, 0.0, {}};
      cd.chi = chi_error(g, fs[c], space, &cd.alpha, quad_order);
      cd.w = 1.0 - cd.chi * cd.chi;
      cands.push_back(std::move(cd));
    }
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.w > b.w; });
  std::vector<char> used(computed.size(), 0);
  std::vector<std::size_t> fill(spaces.size(), 0);
  std::vector<ModeMatch> out;
  for (auto& cd : cands) {
    if (used[cd.c] || fill[cd.s] >= spaces[cd.s].size()) continue;
    used[cd.c] = 1;
    ModeMatch m;
    m.k = computed[cd.c].first;
    m.f = computed[cd.c].second;
    m.eigenspace = spaces[cd.s];
    m.analytic = spaces[cd.s][fill[cd.s]++];
    m.k_tilde = analytic[m.analytic].k;
    m.eta = m.k_tilde > 0.0 ? std::abs(m.k - m.k_tilde) / m.k_tilde : std::abs(m.k);
    m.chi = cd.chi;
    m.alpha = std::move(cd.alpha);
    out.push_back(std::move(m));
  }
  pair_within_eigenspaces(out);
  std::sort(out.begin(), out.end(), [](const ModeMatch& a, const ModeMatch& b) { return a.analytic < b.analytic; });
  return out;
}

std::string DensityPoint::str() const { return b > 0 ? std::to_string(a) + "x" + std::to_string(b) : std::to_string(a); }

DensityPoint parse_density(const std::string& s) {
  DensityPoint d;
  try {
    const auto x = s.find('x');
    std::size_t used = 0;
    if (x == std::string::npos) {
      d.a = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
    } else {
      d.a = std::stoi(s.substr(0, x), &used);
      if (used != x) throw std::invalid_argument(s);
      const std::string rest = s.substr(x + 1);
      d.b = std::stoi(rest, &used);
      if (used != rest.size()) throw std::invalid_argument(s);
    }
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::ConfigError, "bad density '" + s + "'");
  }
  if (d.a <= 0 || d.b < 0) throw Error(ErrorKind::ConfigError, "bad density '" + s + "'");
  return d;
}

MetricGraph build_family_graph(Family family, const DensityPoint& d, double param) {
  switch (family) {
    case Family::Square: return build_lattice(square_lattice_spec(d.a));
    case Family::Rect: return build_lattice(rect_lattice_spec(d.a));
    case Family::Spider: {
      if (d.b <= 0) throw Error(ErrorKind::ConfigError, "spider density needs MxK");
      SpiderSpec s;
      s.M = d.a;
      s.rings = d.b;
      s.gamma = param;
      return build_spider(s);
    }
    case Family::Sphere: return build_polyhedron({goldberg_ops(d.a), true});
    case Family::Path: return build_path(d.a, param, true);
  }
  throw Error(ErrorKind::ConfigError, "unknown family");
}

bool in_default_mode_set(const AnalyticMode& m) {
  switch (m.family) {
    case Family::Square:
    case Family::Rect: return m.i0 >= 1 && m.i0 <= 3 && m.i1 >= 1 && m.i1 <= 3;
    case Family::Spider: return m.i0 == 0 ? m.i1 <= 2 : (m.i0 <= 2 && m.i1 >= 1 && m.i1 <= 3);
    case Family::Sphere: return m.i0 >= 1 && m.i0 <= 2;
    case Family::Path: return m.i0 >= 1 && m.i0 <= 3;
  }
  return false;
}

namespace {

double default_set_kmax(Family family, double param) {
  double k = 0.0;
  switch (family) {
    case Family::Square:
      for (int m = 1; m <= 3; ++m)
        for (int n = 1; n <= 3; ++n) k = std::max(k, square_mode(m, n).k);
      break;
    case Family::Rect:
      for (int m = 1; m <= 3; ++m)
        for (int n = 1; n <= 3; ++n) k = std::max(k, rect_mode(m, n).k);
      break;
    case Family::Spider:
      for (int n = 0; n <= 2; ++n) k = std::max(k, spider_mode(param, 0, n).k);
      for (int m = 1; m <= 2; ++m)
        for (int n = 1; n <= 3; ++n) k = std::max(k, spider_mode(param, m, n).k);
      break;
    case Family::Path: k = path_mode(3, param).k; break;
    case Family::Sphere: k = std::sqrt(3.0); break;
  }
  return k;
}

std::vector<ConvergenceRow> compare_sphere(const MetricGraph& g, const StudyOptions& opt) {
  const int jmax = opt.jmax;
  const auto sp = sphere_level_spectrum(g, jmax, opt.solver);
  auto flat = flatten_modes(sp);
  const double total = g.total_length();
  flat.insert(flat.begin(), {0.0, Eigen::VectorXd::Constant(static_cast<long>(g.num_vertices()), 1.0 / std::sqrt(total))});
  std::vector<double> obs;
  for (const auto& p : flat) obs.push_back(p.first);
  const auto field = compute_field(g, DensityMode::Empirical);
  std::vector<ConvergenceRow> rows;
  for (int j = 1; j <= jmax; ++j) {
    const auto cmp = compare_level(splittings(make_problem(g, field, j, opt.n_factor)), obs);
    std::vector<EdgeFunction> space;
    if (opt.compute_chi)
      for (int m = -j; m <= j; ++m) space.push_back(restrict_analytic(g, sphere_mode(j, m), opt.solver.quad_order));
    for (int i = 0; i < 2 * j + 1; ++i) {
      const std::size_t idx = static_cast<std::size_t>(j * j + i);
      ConvergenceRow r;
      r.family = Family::Sphere;
      r.vertices = g.num_vertices();
      r.alpha_index = idx;
      r.label = "(" + std::to_string(j) + "," + std::to_string(i) + ")";
      r.k = flat[idx].first;
      r.k_tilde = cmp.k_tilde;
      r.eta = std::abs(r.k - r.k_tilde) / r.k_tilde;
      r.eta_corrected = std::abs(cmp.k_obs[i] - cmp.k_pred[i]) / cmp.k_pred[i];
      if (opt.compute_chi) {
        const auto f = mode_function(g, r.k, normalize_mode(g, r.k, flat[idx].second, opt.solver.quad_order));
        r.chi = chi_error(g, f, space, nullptr, opt.solver.quad_order);
      }
      rows.push_back(r);
    }
  }
  return rows;
}

}  // namespace

std::vector<ConvergenceRow> compare_graph(const MetricGraph& g, Family family, const StudyOptions& opt) {
  if (family == Family::Sphere) return compare_sphere(g, opt);
  const double kset = default_set_kmax(family, opt.param);
  SolverConfig cfg = opt.solver;
  cfg.k_max = std::max(cfg.k_min * 2.0, 1.1 * kset);
  const auto sp = solve_spectrum(g, cfg, Boundary::Clamped);
  const auto analytic = analytic_modes(family, 1.4 * kset, opt.param);
  const auto computed = flatten_modes(sp);
  auto keep = match_modes(computed, analytic, cfg.dedup_tol);
  if (opt.compute_chi) {
    keep = match_by_overlap(g, computed, analytic, in_default_mode_set, opt.window, cfg.quad_order);
  }
  keep.erase(std::remove_if(keep.begin(), keep.end(), [&](const ModeMatch& m) { return !in_default_mode_set(analytic[m.analytic]); }),
             keep.end());
  std::vector<ConvergenceRow> rows;
  for (const auto& m : keep) {
    ConvergenceRow r;
    r.family = family;
    r.vertices = g.num_vertices();
    r.alpha_index = m.analytic;
    r.label = analytic[m.analytic].label();
    r.k = m.k;
    r.k_tilde = m.k_tilde;
    r.eta = m.eta;
    r.chi = opt.compute_chi ? m.chi : 0.0;
    rows.push_back(r);
  }
  return rows;
}

std::vector<ConvergenceRow> convergence_study(Family family, const std::vector<DensityPoint>& densities,
                                              const StudyOptions& opt) {
  std::vector<ConvergenceRow> all;
  for (const auto& d : densities) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto g = build_family_graph(family, d, opt.param);
    auto rows = compare_graph(g, family, opt);
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (auto& r : rows) r.runtime = dt;
    all.insert(all.end(), rows.begin(), rows.end());
  }
  return all;
}

std::vector<std::pair<std::size_t, double>> mean_eta_by_size(const std::vector<ConvergenceRow>& rows, bool corrected) {
  std::vector<std::pair<std::size_t, double>> out;
  std::vector<int> counts;
  for (const auto& r : rows) {
    const double e = corrected ? r.eta_corrected.value_or(r.eta) : r.eta;
    if (out.empty() || out.back().first != r.vertices) {
      out.push_back({r.vertices, 0.0});
      counts.push_back(0);
    }
    out.back().second += e;
    ++counts.back();
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i].second /= counts[i];
  return out;
}

}  // namespace metriq
