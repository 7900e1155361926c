#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "metriq/graph.hpp"

namespace metriq::testing {

inline constexpr double kPi = 3.14159265358979323846;

/// Straight segment from (0,0) to (length,0).
inline MetricGraph single_edge(double length, bool clamp_tail, bool clamp_head) {
  std::vector<Vertex> v(2);
  v[0] = {0, Eigen::Vector3d(0, 0, 0), clamp_tail};
  v[1] = {1, Eigen::Vector3d(length, 0, 0), clamp_head};
  return MetricGraph(2, std::move(v), {{0, 1, length}});
}

/// Centre vertex 0 joined to n leaves at unit distance; leaves clamped.
inline MetricGraph star(int n, bool clamp_leaves = true, std::vector<double> lengths = {}) {
  std::vector<Vertex> v;
  std::vector<Edge> e;
  v.push_back({0, Eigen::Vector3d::Zero(), false});
  for (int i = 0; i < n; ++i) {
    const double l = lengths.empty() ? 1.0 : lengths[i];
    const double a = 2.0 * kPi * i / n;
    v.push_back({std::size_t(i + 1), Eigen::Vector3d(l * std::cos(a), l * std::sin(a), 0), clamp_leaves});
    e.push_back({0, std::size_t(i + 1), l});
  }
  return MetricGraph(2, std::move(v), std::move(e));
}

/// Connected random planar graph: a random spanning tree plus extra
/// chords, lengths equal to the embedded distances.
inline MetricGraph random_graph(int n, int extra, std::uint64_t seed, int clamped = 0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<Vertex> v;
  for (int i = 0; i < n; ++i)
    v.push_back({std::size_t(i), Eigen::Vector3d(U(rng), U(rng), 0), i < clamped});
  std::vector<Edge> e;
  std::vector<std::vector<char>> used(n, std::vector<char>(n, 0));
  auto add = [&](int a, int b) {
    if (a == b || used[a][b]) return;
    used[a][b] = used[b][a] = 1;
    e.push_back({std::size_t(a), std::size_t(b), (v[a].pos - v[b].pos).norm()});
  };
  for (int i = 1; i < n; ++i) add(i, int(rng() % i));
  for (int c = 0; c < extra; ++c) add(int(rng() % n), int(rng() % n));
  return MetricGraph(2, std::move(v), std::move(e));
}

}  // namespace metriq::testing
