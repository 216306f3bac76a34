#include <algorithm>
#include <cmath>
#include <functional>

#include "reebforest/bench.hpp"
#include "reebforest/oracles.hpp"
#include "reebforest/report.hpp"

namespace reebforest::bench {

bool VerificationSummary::ok() const {
  return std::all_of(suites.begin(), suites.end(), [](const auto& s) { return s.second.failures == 0; });
}

nlohmann::json VerificationSummary::to_json() const {
  nlohmann::json j;
  j["instances"] = instances;
  j["ok"] = ok();
  nlohmann::json s = nlohmann::json::object();
  for (const auto& [name, suite] : suites)
    s[name] = {{"checked", suite.checked}, {"failures", suite.failures}, {"first_failure", suite.first_failure}};
  j["suites"] = s;
  return j;
}

namespace {

constexpr double kTol = kDefaultTolerance;

class Recorder {
 public:
  Recorder(VerificationSummary& summary, std::string instance) : summary_(summary), instance_(std::move(instance)) {}

  void check(const std::string& suite, bool ok, const std::function<std::string()>& detail) {
    auto& s = summary_.suites[suite];
    ++s.checked;
    if (ok) return;
    if (s.failures++ == 0) s.first_failure = instance_ + ": " + detail();
  }

 private:
  VerificationSummary& summary_;
  std::string instance_;
};

bool matrices_agree(const DistanceMatrix& a, const DistanceMatrix& b) {
  return a.size() == b.size() && max_abs_difference(a, b).value <= kTol;
}

/// Two quotients of the same n-element set coincide up to renaming classes.
bool same_quotient(std::size_t n, const Poset& pa, const std::vector<double>& fa, const Projection& a,
                   const Poset& pb, const std::vector<double>& fb, const Projection& b) {
  if (a.target_size() != b.target_size()) return false;
  for (Index x = 0; x < n; ++x) {
    if (fa[a(x)] != fb[b(x)]) return false;
    for (Index y = 0; y < n; ++y) {
      if ((a(x) == a(y)) != (b(x) == b(y))) return false;
      if (pa.leq(a(x), a(y)) != pb.leq(b(x), b(y))) return false;
    }
  }
  return true;
}

Projection compose(const Projection& first, const Projection& second) {
  Projection out;
  for (Index x : first.map) out.map.push_back(second(x));
  return out;
}

Projection identity(std::size_t n) {
  Projection out;
  for (Index x = 0; x < n; ++x) out.map.push_back(x);
  return out;
}

void check_quotients(Recorder& rec, const FilteredPoset& fp) {
  const std::size_t n = fp.size();
  const auto r = reeb_poset(fp);
  const auto rr = reeb_poset(r.reeb.filtered());
  rec.check("quotients", rr.projection.target_size() == r.reeb.size() &&
                             same_quotient(r.reeb.size(), r.reeb.poset(), r.reeb.f(), identity(r.reeb.size()),
                                           rr.reeb.poset(), rr.reeb.f(), rr.projection),
            [] { return std::string("R_f is not idempotent"); });

  const auto t = reeb_tree(fp);
  const auto tt = reeb_tree(t.tree.reeb().filtered());
  const std::size_t m = t.tree.size();
  rec.check("quotients",
            same_quotient(m, t.tree.poset(), t.tree.reeb().f(), identity(m), tt.tree.poset(), tt.tree.reeb().f(),
                          tt.projection),
            [] { return std::string("T_f(T) differs from T"); });

  const auto tr = reeb_tree(r.reeb.filtered());
  rec.check("quotients",
            same_quotient(n, t.tree.poset(), t.tree.reeb().f(), t.projection, tr.tree.poset(), tr.tree.reeb().f(),
                          compose(r.projection, tr.projection)),
            [] { return std::string("T_f(X) and T_f(R_f(X)) differ"); });
}

void check_oracles(Recorder& rec, const FilteredPoset& fp) {
  const std::size_t n = fp.size();
  rec.check("oracles", matrices_agree(induced_metric(fp), oracle::induced_metric(fp)),
            [] { return std::string("d_f differs from simple-path enumeration"); });
  rec.check("oracles", matrices_agree(merge_values(fp), oracle::merge_values(fp)),
            [] { return std::string("m_f differs from simple-path enumeration"); });
  const auto t = reeb_tree(fp);
  const auto rel = oracle::tree_relations(fp);
  bool same = true;
  for (Index x = 0; x < n && same; ++x)
    for (Index y = 0; y < n && same; ++y)
      same = (t.projection(x) == t.projection(y)) == (rel.same[x * n + y] != 0) &&
             t.tree.poset().leq(t.projection(x), t.projection(y)) == (rel.below[x * n + y] != 0);
  rec.check("oracles", same, [] { return std::string("T_f differs from the definition-level classes"); });
}

void check_poset(Recorder& rec, const ReebPoset& rp, std::mt19937_64& rng) {
  const Poset& poset = rp.poset();
  const std::size_t n = rp.size();
  const auto result = approximation_bound(rp);

  rec.check("main", result.ok && result.distortion <= result.bound + kTol, [&] {
    return "distortion " + std::to_string(result.distortion) + " exceeds bound " + std::to_string(result.bound) +
           " at pair (" + poset.label(result.worst_x) + ", " + poset.label(result.worst_y) + ")";
  });
  rec.check("lipschitz", result.min_merge_minus_product >= -kTol && result.identity_residual <= kTol,
            [&] { return "m - g reaches " + std::to_string(result.min_merge_minus_product); });

  const auto g = gromov_products(rp);
  const double hyp = result.hyp.value;
  for (std::size_t len = 1; len <= 8; ++len)
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<Index> seq(len + 1);
      for (auto& s : seq) s = std::uniform_int_distribution<Index>(0, n - 1)(rng);
      double low = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < len; ++i) low = std::min(low, g(seq[i], seq[i + 1]));
      const double slack = std::ceil(std::log2(static_cast<double>(len))) * hyp;
      rec.check("log_hyp", g(seq.front(), seq.back()) >= low - slack - kTol,
                [&] { return "chain of length " + std::to_string(len) + " breaks the log bound"; });
    }

  const auto betti = betti_covering(poset);
  const bool has_bottom = poset.smallest().has_value();
  if (has_bottom) {
    rec.check("betti", betti.iota_sum && *betti.iota_sum == betti.value, [&] {
      return "1 - V + E = " + std::to_string(betti.value) + " but sum(iota - 1) differs";
    });
    if (!result.fence_fallback)
      rec.check("fence_genus", result.max_fence.value <= static_cast<std::size_t>(2 * betti.value + 2), [&] {
        return "M_F = " + std::to_string(result.max_fence.value) + " > 2 beta + 2";
      });
  }

  const bool tree = is_tree(poset);
  rec.check("tree_characterization", tree == (hyp <= kTol),
            [&] { return std::string(tree ? "tree poset with positive hyp" : "non-tree poset with zero hyp"); });
  if (has_bottom)
    rec.check("tree_characterization", tree == covering_graph(poset).is_undirected_forest(),
              [] { return std::string("is_tree disagrees with covering-graph acyclicity"); });
  const auto tree_quotient = reeb_tree(rp.filtered());
  const double defect = hyp_four_point(tree_metric(tree_quotient.tree));
  rec.check("four_point", defect <= kTol, [&] { return "tree metric four-point defect " + std::to_string(defect); });

  if (n <= 10) {
    const auto fences = oracle::all_fences(poset);
    const std::size_t merging = merging_points(poset).size();
    bool counted = true;
    for (const auto& fence : fences) counted = counted && merging >= count_merging_lower_bound(fence, poset);
    rec.check("fence_merging", counted, [] { return std::string("a fence forces more merging points than exist"); });
    if (!result.fence_fallback) {
      const std::size_t brute = oracle::max_fence_length(poset);
      rec.check("oracles", brute == result.max_fence.value, [&] {
        return "exact M_F " + std::to_string(result.max_fence.value) + " vs enumeration " + std::to_string(brute);
      });
    }
    check_oracles(rec, rp.filtered());
  }
  check_quotients(rec, rp.filtered());
}

void check_metric_bases(Recorder& rec, const DistanceMatrix& d) {
  const std::size_t n = d.size();
  std::vector<double> per_base(n);
  for (Index p = 0; p < n; ++p) per_base[p] = hyp_base(d, p).value;
  bool ok = true;
  for (Index p = 0; p < n; ++p)
    for (Index q = 0; q < n; ++q) ok = ok && per_base[p] <= 2.0 * per_base[q] + kTol;
  rec.check("base_change", ok, [] { return std::string("hyp_p > 2 hyp_q for some bases"); });
  const double full = hyp_full(d).value;
  const double four = hyp_four_point(d);
  rec.check("hyp_routes", std::abs(full - four) <= kTol,
            [&] { return "max_p hyp_p = " + std::to_string(full) + " but four-point = " + std::to_string(four); });
}

void check_graph(Recorder& rec, const MetricGraph& g) {
  const auto d = shortest_paths(g);
  for (Index base = 0; base < g.vertex_count(); ++base) {
    const auto run = tree_approx_graph(g, base);
    const auto report = make_report(run, g.vertex_count());
    const std::string at = " at base " + g.label(base);
    rec.check("main_graph", report.ok && run.distortion <= run.bound_graph + kTol, [&] {
      std::string failed;
      for (const auto& [name, passed] : report.checks)
        if (!passed) failed += " " + name;
      return "check failed" + at + ":" + failed;
    });

    const auto& reg = run.regularized.graph;
    rec.check("regularization", !p_regularity_violation(reg, base).has_value(),
              [&] { return "result not p-regular" + at; });
    rec.check("regularization", regularize(reg, base).trace.added.empty(),
              [&] { return "regularization not idempotent" + at; });
    bool preserved = true;
    for (Index x = 0; x < g.vertex_count(); ++x)
      for (Index y = 0; y < g.vertex_count(); ++y) preserved = preserved && std::abs(run.distances(x, y) - d(x, y)) <= kTol;
    rec.check("regularization", preserved, [&] { return "metric on original vertices changed" + at; });
    if (reg.vertex_count() <= 14) {
      bool unique = true;
      for (const auto& e : reg.edges()) unique = unique && oracle::geodesic_count(reg, e.u, e.v, kTol) == 1;
      rec.check("regularization", unique, [&] { return "an edge is not the unique geodesic" + at; });
    }
    rec.check("vertex_hyp", std::abs(run.poset_result.hyp.value - run.hyp_p.value) <= kTol,
              [&] { return "hyp_f differs from hyp_p" + at; });
    rec.check("vertex_hyp", matrices_agree(induced_metric(run.poset.filtered()), run.distances),
              [&] { return "d_f differs from d_l" + at; });
  }
  check_metric_bases(rec, d);
}

void check_metric(Recorder& rec, const FiniteMetricSpace& space) {
  const auto result = tree_approx_metric_space(space);
  rec.check("metric_space", result.report.ok, [&] {
    std::string failed;
    for (const auto& [name, passed] : result.report.checks)
      if (!passed) failed += " " + name;
    return "check failed:" + failed;
  });
  check_metric_bases(rec, space.distances());
}

}  // namespace

VerificationSummary run_verification(std::uint64_t seed, std::size_t count, std::size_t size) {
  VerificationSummary summary;
  std::mt19937_64 rng(seed);
  RandomInstances posets(InstanceKind::poset, size, seed);
  RandomInstances graphs(InstanceKind::graph, size, seed + 1);
  RandomInstances metrics(InstanceKind::metric, std::min<std::size_t>(size, 6), seed + 2);
  for (std::size_t i = 0; i < count; ++i) {
    const std::string tag = "#" + std::to_string(i);
    {
      Recorder rec(summary, "poset " + tag);
      check_poset(rec, std::get<ReebPoset>(posets.next()), rng);
      const auto loose = random_filtered_poset(rng, std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(size, 1))(rng), false);
      if (loose.size() <= 10) check_oracles(rec, loose);
      check_quotients(rec, loose);
    }
    {
      Recorder rec(summary, "graph " + tag);
      check_graph(rec, std::get<MetricGraph>(graphs.next()));
    }
    if (i % 4 == 0) {
      Recorder rec(summary, "metric " + tag);
      check_metric(rec, std::get<FiniteMetricSpace>(metrics.next()));
    }
    summary.instances += 1;
  }
  return summary;
}

}  // namespace reebforest::bench
