#pragma once

// Seeded property suites and family experiments, reported as JSON and CSV.
// Instances run on a worker pool; results are collected by index, so the
// report does not depend on the number of workers.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "sumstab/convex.hpp"
#include "sumstab/fibers.hpp"
#include "sumstab/harness/families.hpp"
#include "sumstab/harness/freiman.hpp"
#include "sumstab/harness/samplers.hpp"
#include "sumstab/harness/stability.hpp"
#include "sumstab/infconv.hpp"
#include "sumstab/simplex_family.hpp"
#include "sumstab/sumset.hpp"

namespace sumstab::harness {

using json = nlohmann::ordered_json;

struct ExperimentConfig {
  std::uint64_t seed = 42;
  std::size_t instances = 1000;          // per observation suite
  std::vector<std::size_t> dims{1, 2, 3};
  Coord max_side = 12;
  double density_lo = 0.1;
  double density_hi = 0.9;
  std::size_t backend_pairs = 1000;
  std::size_t compression_pairs = 1000;
  std::size_t infconv_functions = 500;
  std::size_t functional_functions = 200;
  std::size_t restricted_functions = 100;
  int freiman_n = 13;
  std::vector<Coord> lowerbound_ns{2, 4, 8, 16, 32};
  std::vector<std::int64_t> discretize_ns{1, 2, 4, 8, 16, 64};
  Coord normal_bound = 5;
  unsigned jobs = 1;
};

inline json to_json(const ExperimentConfig& c) {
  return json{{"seed", c.seed},
              {"instances", c.instances},
              {"dims", c.dims},
              {"max_side", c.max_side},
              {"density_lo", c.density_lo},
              {"density_hi", c.density_hi},
              {"backend_pairs", c.backend_pairs},
              {"compression_pairs", c.compression_pairs},
              {"infconv_functions", c.infconv_functions},
              {"functional_functions", c.functional_functions},
              {"restricted_functions", c.restricted_functions},
              {"freiman_n", c.freiman_n},
              {"lowerbound_ns", c.lowerbound_ns},
              {"discretize_ns", c.discretize_ns},
              {"normal_bound", c.normal_bound},
              {"jobs", c.jobs}};
}

inline json rational_json(const Rational& q) { return to_string(q); }
inline json optional_json(const std::optional<Rational>& q) { return q ? json(to_string(*q)) : json(nullptr); }

struct InstanceResult {
  bool ok = true;
  json detail;  // compact description, kept for the first instances and violations
  std::optional<Rational> metric;  // per-suite statistic (maximum reported)
  bool flagged = false;            // per-suite secondary count
};

struct SuiteResult {
  std::string name;
  std::size_t instances = 0;
  std::size_t violations = 0;
  json examples = json::array();
  json stats = json::object();
};

struct SuiteReport {
  json document;
  std::string csv;
  std::size_t violations = 0;
};

namespace detail {

constexpr std::size_t kExampleCount = 3;

inline std::vector<InstanceResult> run_instances(std::size_t count, unsigned jobs,
                                                 const std::function<InstanceResult(std::size_t)>& fn) {
  std::vector<InstanceResult> out(count);
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < jobs; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) out[i] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
        next.store(count);
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

inline SuiteResult summarize(std::string name, std::vector<InstanceResult> rs, const char* metric_name = nullptr,
                             const char* flag_name = nullptr) {
  SuiteResult s;
  s.name = std::move(name);
  s.instances = rs.size();
  std::optional<Rational> best;
  std::size_t flagged = 0;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (!rs[i].ok) ++s.violations;
    if (rs[i].metric && (!best || *rs[i].metric > *best)) best = rs[i].metric;
    flagged += rs[i].flagged;
  }
  // Violations first, then the leading instances.
  for (std::size_t i = 0; i < rs.size() && s.examples.size() < kExampleCount; ++i)
    if (!rs[i].ok) s.examples.push_back(json{{"index", i}, {"ok", false}, {"detail", rs[i].detail}});
  for (std::size_t i = 0; i < rs.size() && s.examples.size() < kExampleCount; ++i)
    if (rs[i].ok) s.examples.push_back(json{{"index", i}, {"ok", true}, {"detail", rs[i].detail}});
  if (metric_name) s.stats[metric_name] = optional_json(best);
  if (flag_name) s.stats[flag_name] = flagged;
  return s;
}

inline json set_json(const LatticeSet& a) {
  json pts = json::array();
  for (std::size_t i = 0; i < a.size(); ++i) pts.push_back(std::vector<Coord>(a.row(i).begin(), a.row(i).end()));
  return pts;
}

inline json box_json(const Gap& box) { return box.lengths(); }

inline json check_json(const BoundCheck& c) { return json{{"lhs", to_string(c.lhs)}, {"rhs", to_string(c.rhs)}}; }

inline std::size_t pick_dim(const std::vector<std::size_t>& dims, std::size_t index) { return dims[index % dims.size()]; }

// Independent O(|A|^2) route for f^□ through an ordered map.
inline std::map<std::vector<Coord>, Rational> inf_convolution_oracle(const LatticeFunction& f) {
  std::map<std::vector<Coord>, Rational> best;
  const auto& a = f.domain();
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < a.size(); ++y) {
      std::vector<Coord> z(a.dim());
      for (std::size_t j = 0; j < a.dim(); ++j) z[j] = a.row(x)[j] + a.row(y)[j];
      const Rational v = f.values()[x] + f.values()[y];
      auto it = best.find(z);
      if (it == best.end())
        best.emplace(std::move(z), v);
      else if (v < it->second)
        it->second = v;
    }
  return best;
}

}  // namespace detail

// Suite tags keep per-suite random streams disjoint.
enum SuiteTag : std::uint32_t {
  kTagNegdk = 1,
  kTagDkobs,
  kTagContdisc,
  kTagCvxsd,
  kTagHypbox,
  kTagSurf,
  kTagCompression,
  kTagBackends,
  kTagInfconv,
  kTagLowerHull,
  kTagFunctional,
  kTagRestricted,
  kTagPlusop,
};

inline SuiteResult suite_negdk(const ExperimentConfig& c) {
  auto rs = detail::run_instances(c.instances, c.jobs, [&](std::size_t i) {
    auto rng = instance_rng(c.seed, kTagNegdk, i);
    const std::size_t k = detail::pick_dim(c.dims, i);
    const Gap box = random_box(rng, k, c.max_side);
    const LatticeSet x1 = mixed_subset(rng, box, c.density_lo, c.density_hi);
    const LatticeSet x2 = mixed_subset(rng, box, c.density_lo, c.density_hi);
    const BoundCheck pair = box_lower_bound_check(x1, x2, box);
    // d_k(X) >= -2^{2k} min{n_i}^{-1} |B|
    const Rational floor_term = -pow2(2 * static_cast<int>(k)) * Rational(box.nominal_size()) /
                                Rational(to_integer(box.min_length()));
    const BoundCheck single = check_ge(Rational(static_cast<long>(doubling_deficit(x1).deficit)), floor_term);
    InstanceResult r;
    r.ok = pair.holds && single.holds;
    r.detail = json{{"k", k}, {"box", detail::box_json(box)}, {"pair", detail::check_json(pair)},
                    {"single", detail::check_json(single)}};
    return r;
  });
  return detail::summarize("negdk", std::move(rs));
}

inline SuiteResult suite_dkobs(const ExperimentConfig& c) {
  auto rs = detail::run_instances(c.instances, c.jobs, [&](std::size_t i) {
    auto rng = instance_rng(c.seed, kTagDkobs, i);
    const std::size_t k = detail::pick_dim(c.dims, i);
    const Gap box = random_box(rng, k, c.max_side);
    const LatticeSet y = mixed_subset(rng, box, c.density_lo, c.density_hi);
    const LatticeSet x = random_subset_of(rng, y, std::uniform_real_distribution<double>(0.5, 1.0)(rng));
    const auto dx = doubling_deficit(x).deficit;
    const auto dy = doubling_deficit(y).deficit;
    const auto missing = static_cast<std::int64_t>(y.size() - x.size());
    const BoundCheck b = check_le(Rational(static_cast<long>(dx)),
                                  Rational(static_cast<long>(dy + (std::int64_t{1} << k) * missing)));
    InstanceResult r;
    r.ok = b.holds;
    r.detail = json{{"k", k}, {"box", detail::box_json(box)}, {"check", detail::check_json(b)}};
    return r;
  });
  return detail::summarize("dkobs", std::move(rs));
}

inline SuiteResult suite_contdisc(const ExperimentConfig& c) {
  auto rs = detail::run_instances(c.instances, c.jobs, [&](std::size_t i) {
    auto rng = instance_rng(c.seed, kTagContdisc, i);
    const std::size_t k = detail::pick_dim(c.dims, i);
    const Gap box = random_box(rng, k, c.max_side);
    std::vector<RationalPoint> pts;
    const int n = static_cast<int>(uniform(rng, 1, static_cast<Coord>(k) + 4));
    for (int p = 0; p < n; ++p) {
      RationalPoint q(k);
      // Half-integer vertices exercise non-lattice polytopes.
      for (std::size_t j = 0; j < k; ++j) q[j] = make_rational(uniform(rng, 2 * box.lower(j), 2 * box.upper(j)), 2);
      pts.push_back(std::move(q));
    }
    Polytope poly = Polytope::hull_of(k, std::move(pts));
    for (std::size_t f = 0; f < poly.facet_count(); ++f)
      if (coin(rng, 0.3)) poly.set_open(f);
    const VolumeCountCheck v = volume_count_check(poly, box);
    InstanceResult r;
    r.ok = v.check.holds;
    r.detail = json{{"k", k}, {"box", detail::box_json(box)}, {"volume", to_string(v.volume)}, {"count", v.count},
                    {"check", detail::check_json(v.check)}};
    return r;
  });
  return detail::summarize("contdisc", std::move(rs));
}

inline SuiteResult suite_cvxsd(const ExperimentConfig& c) {
  auto rs = detail::run_instances(c.instances, c.jobs, [&](std::size_t i) {
    auto rng = instance_rng(c.seed, kTagCvxsd, i);
    const std::size_t k = detail::pick_dim(c.dims, i);
    const Gap box = random_box(rng, k, c.max_side);
    const LatticeSet a = mixed_subset(rng, box, c.density_lo, c.density_hi);
    const BoundCheck b = check_converse(a, box);
    InstanceResult r;
    r.ok = b.holds;
    r.detail = json{{"k", k}, {"box", detail::box_json(box)}, {"check", detail::check_json(b)}};
    return r;
  });
  return detail::summarize("cvxsd", std::move(rs));
}

inline SuiteResult suite_hypboxsmall(const ExperimentConfig& c) {
  auto rs = detail::run_instances(c.instances, c.jobs, [&](std::size_t i) {
    auto rng = instance_rng(c.seed, kTagHypbox, i);
    const std::size_t k = detail::pick_dim(c.dims, i);
    const Gap box = random_box(rng, k, c.max_side);
    std::vector<Coord> nv(k, 0);
    while (std::all_of(nv.begin(), nv.end(), [](Coord x) { return x == 0; }))
      for (auto& x : nv) x = uniform(rng, -3, 3);
    const Point normal(nv);
    const Point through = random_point(rng, box);
    Coord offset = 0;
    for (std::size_t j = 0; j < k; ++j) offset += normal[j] * through[j];
    const HyperplaneBoxCount h = hyperplane_box_count(normal, offset, box);
    InstanceResult r;
    r.ok = h.check.holds && h.count >= 1;
    r.detail = json{{"k", k}, {"box", detail::box_json(box)}, {"normal", nv}, {"offset", offset},
                    {"check", detail::check_json(h.check)}};
    return r;
  });
  return detail::summarize("hypboxsmall", std::move(rs));
}

/// Runs in dimensions >= 2 only; Y lives in the projected box.
inline SuiteResult suite_surfobs(const ExperimentConfig& c) {
  std::vector<std::size_t> dims;
  for (auto k : c.dims)
    if (k >= 2) dims.push_back(k);
  if (dims.empty()) return detail::summarize("Surfobs", {});
  auto rs = detail::run_instances(c.instances, c.jobs, [&](std::size_t i) {
    auto rng = instance_rng(c.seed, kTagSurf, i);
    const std::size_t k = detail::pick_dim(dims, i);
    const Gap box = random_box(rng, k, c.max_side);
    const LatticeSet y = mixed_subset(rng, box.projected_box(), c.density_lo, c.density_hi);
    std::vector<Coord> v(k - 1, 0);
    while (std::all_of(v.begin(), v.end(), [](Coord x) { return x == 0; }))
      for (auto& x : v) x = uniform(rng, 0, 1);
    const StraddleCount s = boundary_straddle_count(y, Point(v), box);
    InstanceResult r;
    r.ok = s.check.holds;
    r.detail = json{{"k", k}, {"box", detail::box_json(box)}, {"v", v}, {"check", detail::check_json(s.check)}};
    return r;
  });
  return detail::summarize("Surfobs", std::move(rs));
}

inline SuiteResult suite_compression(const ExperimentConfig& c) {
  auto rs = detail::run_instances(c.compression_pairs, c.jobs, [&](std::size_t i) {
    auto rng = instance_rng(c.seed, kTagCompression, i);
    const Gap box = random_box(rng, 2, c.max_side);
    const LatticeSet x = mixed_subset(rng, box, c.density_lo, c.density_hi);
    const LatticeSet y = mixed_subset(rng, box, c.density_lo, c.density_hi);
    const auto compressed = minkowski_sum(compress_all(x), compress_all(y)).size();
    const auto plain = minkowski_sum(x, y).size();
    InstanceResult r;
    r.ok = compressed <= plain;
    r.detail = json{{"box", detail::box_json(box)}, {"compressed", compressed}, {"plain", plain}};
    return r;
  });
  return detail::summarize("compression", std::move(rs));
}

inline SuiteResult suite_backends(const ExperimentConfig& c) {
  auto rs = detail::run_instances(c.backend_pairs, c.jobs, [&](std::size_t i) {
    auto rng = instance_rng(c.seed, kTagBackends, i);
    const std::size_t k = detail::pick_dim(c.dims, i);
    const Gap box = random_box(rng, k, c.max_side);
    const LatticeSet x = mixed_subset(rng, box, c.density_lo, c.density_hi);
    LatticeSet y = mixed_subset(rng, box, c.density_lo, c.density_hi);
    std::vector<Coord> shift(k);
    for (auto& s : shift) s = uniform(rng, -20, 20);
    y = y.translated(Point(shift));
    const auto h = minkowski_sum(x, y, SumsetBackend::Hash);
    const auto m = minkowski_sum(x, y, SumsetBackend::SortedMerge);
    const auto b = minkowski_sum(x, y, SumsetBackend::Bitset);
    InstanceResult r;
    r.ok = h == m && m == b;
    r.detail = json{{"k", k}, {"card_x", x.size()}, {"card_y", y.size()}, {"card_sum", h.size()}};
    return r;
  });
  return detail::summarize("sumset-backends", std::move(rs));
}

inline SuiteResult suite_infconv(const ExperimentConfig& c) {
  auto rs = detail::run_instances(c.infconv_functions, c.jobs, [&](std::size_t i) {
    auto rng = instance_rng(c.seed, kTagInfconv, i);
    const std::size_t k = detail::pick_dim(c.dims, i);
    const Gap box = random_box(rng, k, std::min<Coord>(c.max_side, 6));
    const LatticeFunction f = random_function(rng, mixed_subset(rng, box, c.density_lo, c.density_hi));
    const LatticeFunction fast = inf_convolution(f);
    const auto slow = detail::inf_convolution_oracle(f);
    bool same = fast.size() == slow.size();
    std::size_t idx = 0;
    for (auto it = slow.begin(); same && it != slow.end(); ++it, ++idx)
      same = std::equal(it->first.begin(), it->first.end(), fast.domain().row(idx).begin()) &&
             it->second == fast.values()[idx];
    InstanceResult r;
    r.ok = same;
    r.detail = json{{"k", k}, {"card", f.size()}, {"sum_card", fast.size()}, {"sum_values", to_string(fast.sum())}};
    return r;
  });
  return detail::summarize("infconv-oracle", std::move(rs));
}

inline SuiteResult suite_lower_hull(const ExperimentConfig& c) {
  auto rs = detail::run_instances(c.infconv_functions, c.jobs, [&](std::size_t i) {
    auto rng = instance_rng(c.seed, kTagLowerHull, i);
    const std::size_t k = detail::pick_dim(c.dims, i);
    const Gap box = random_box(rng, k, std::min<Coord>(c.max_side, 6));
    const LatticeFunction f = random_function(rng, random_convex_progression(rng, box));
    const LatticeFunction h = lower_convex_hull(f);
    bool below = true, midpoint_convex = true;
    for (std::size_t p = 0; p < f.size(); ++p) below = below && h.values()[p] <= f.values()[p];
    const auto& a = f.domain();
    std::vector<Coord> mid(k);
    for (std::size_t x = 0; x < a.size() && midpoint_convex; ++x)
      for (std::size_t y = x + 1; y < a.size() && midpoint_convex; ++y) {
        bool integral = true;
        for (std::size_t j = 0; j < k; ++j) {
          const Coord s = a.row(x)[j] + a.row(y)[j];
          integral = integral && s % 2 == 0;
          mid[j] = s / 2;
        }
        if (integral && a.contains(mid)) midpoint_convex = 2 * h.at(mid) <= h.values()[x] + h.values()[y];
      }
    const bool idempotent = lower_convex_hull(h) == h;
    InstanceResult r;
    r.ok = below && midpoint_convex && idempotent;
    r.detail = json{{"k", k}, {"card", f.size()}, {"below", below}, {"midpoint_convex", midpoint_convex},
                    {"idempotent", idempotent}};
    return r;
  });
  return detail::summarize("lower-hull", std::move(rs));
}

/// Functional deficits on random functions over convex progressions in
/// dimensions 1 and 2. Instances with convDeficit <= 0 and hullDeficit > 0
/// are counted as error-term instances; they are not violations because the
/// inequality carries an additive error term.
inline SuiteResult suite_functional(const ExperimentConfig& c) {
  auto rs = detail::run_instances(c.functional_functions, c.jobs, [&](std::size_t i) {
    auto rng = instance_rng(c.seed, kTagFunctional, i);
    const std::size_t k = 1 + i % 2;
    const Gap box = random_box(rng, k, std::min<Coord>(c.max_side, 6));
    const LatticeFunction f = random_function(rng, random_convex_progression(rng, box));
    const FunctionalDeficitReport d = functional_deficit(f);
    InstanceResult r;
    r.ok = sgn(d.hull_deficit) >= 0 && (sgn(d.conv_deficit) <= 0 || d.ratio.has_value());
    r.metric = d.ratio;
    r.flagged = sgn(d.conv_deficit) <= 0 && sgn(d.hull_deficit) > 0;
    r.detail = json{{"k", k}, {"card", f.size()}, {"hull_deficit", to_string(d.hull_deficit)},
                    {"conv_deficit", to_string(d.conv_deficit)}, {"ratio", optional_json(d.ratio)}};
    return r;
  });
  return detail::summarize("functional-deficit", std::move(rs), "max_ratio", "error_term_instances");
}

/// Restricted infimum convolution on lattice simplices with g = 0 on V(T),
/// W the witness shifts at levels (1, 1). Asserts the cap
/// sum g^□_W <= 2 max g |T+T| and records the largest sum g^□_W / sum g.
inline SuiteResult suite_restricted(const ExperimentConfig& c) {
  auto rs = detail::run_instances(c.restricted_functions, c.jobs, [&](std::size_t i) {
    auto rng = instance_rng(c.seed, kTagRestricted, i);
    const std::size_t d = 1 + i % 2;
    Simplex t;
    // Integer simplex with vertices 0 and s e_j (a scaled standard simplex).
    const Coord s = uniform(rng, 1, d == 1 ? 8 : 5);
    t.push_back(RationalPoint(d, 0));
    for (std::size_t j = 0; j < d; ++j) {
      RationalPoint v(d, 0);
      v[j] = static_cast<long>(s);
      t.push_back(v);
    }
    std::vector<RationalPoint> verts = t;
    const LatticeSet dom = lattice_points(Polytope::hull_of(d, verts));
    LatticeFunction g = random_function(rng, dom);
    std::vector<Rational> vals = g.values();
    for (const auto& v : t) {
      std::vector<Coord> p(d);
      for (std::size_t j = 0; j < d; ++j) p[j] = to_int64(v[j].get_num());
      vals[g.index_of(p)] = 0;
    }
    g = LatticeFunction(dom, std::move(vals));
    const LatticeSet w = witness_shifts(t, 1, 1);
    const LatticeFunction gw = restricted_inf_convolution(g, w);
    const Rational cap = 2 * g.max() * Rational(static_cast<unsigned long>(gw.size()));
    const BoundCheck b = check_le(gw.sum(), cap);
    InstanceResult r;
    r.ok = b.holds;
    if (sgn(g.sum()) > 0) r.metric = gw.sum() / g.sum();
    r.detail = json{{"d", d}, {"scale", s}, {"check", detail::check_json(b)}};
    return r;
  });
  return detail::summarize("restricted-infconv", std::move(rs), "max_ratio");
}

inline SuiteResult suite_plusop(const ExperimentConfig& c) {
  std::vector<std::size_t> dims;
  for (auto k : c.dims)
    if (k >= 2) dims.push_back(k);
  if (dims.empty()) return detail::summarize("plusop", {});
  auto rs = detail::run_instances(c.instances, c.jobs, [&](std::size_t i) {
    auto rng = instance_rng(c.seed, kTagPlusop, i);
    const std::size_t k = detail::pick_dim(dims, i);
    const Gap box = random_box(rng, k, c.max_side);
    const LatticeSet a = mixed_subset(rng, box, c.density_lo, c.density_hi);
    const LatticeSet p = plus_structured(a);
    InstanceResult r;
    r.ok = p.is_subset_of(minkowski_sum(a, a));
    r.detail = json{{"k", k}, {"card", a.size()}, {"plus_card", p.size()}};
    return r;
  });
  return detail::summarize("plusop-subset", std::move(rs));
}

inline SuiteResult suite_freiman(const ExperimentConfig& c) {
  SuiteResult s;
  s.name = "freiman-enumeration";
  const FreimanEnumeration e = enumerate_freiman(c.freiman_n, std::max(16, c.freiman_n));
  s.instances = static_cast<std::size_t>(e.sets);
  s.violations = static_cast<std::size_t>(e.violations);
  for (const auto& a : e.violating)
    if (s.examples.size() < detail::kExampleCount) s.examples.push_back(json{{"set", detail::set_json(a)}});
  s.stats["n"] = c.freiman_n;
  s.stats["canonical_sets"] = e.canonical_sets;
  s.stats["hypothesis_sets"] = e.hypothesis_sets;
  return s;
}

struct FamilyParams {
  std::size_t k;
  Coord n0;
  Coord n;
};

inline const std::vector<FamilyParams>& degenerate_params() {
  static const std::vector<FamilyParams> p{{2, 1, 3}, {2, 2, 4}, {2, 1, 10}, {3, 1, 2}};
  return p;
}

inline SuiteResult suite_degenerate(json& experiments) {
  SuiteResult s;
  s.name = "degenerate-identities";
  for (const auto& p : degenerate_params()) {
    const DegenerateIdentities d = check_degenerate_family(p.k, p.n0, p.n);
    ++s.instances;
    const bool ok = d.deficit_negative && d.gap_matches;
    if (!ok) ++s.violations;
    json params{{"k", p.k}, {"n0", p.n0}, {"n", p.n}};
    if (s.examples.size() < detail::kExampleCount || !ok)
      s.examples.push_back(json{{"params", params}, {"ok", ok}, {"card", d.card},
                                {"predicted_gap", to_string(d.predicted_gap)}});
    experiments.push_back(json{{"family", "degenerate"}, {"params", params}, {"deficit", d.deficit},
                               {"gap", d.co_gap}, {"ratio", nullptr}});
  }
  return s;
}

inline SuiteResult suite_discretize(const ExperimentConfig& c) {
  SuiteResult s;
  s.name = "discretize-convergence";
  const Polytope square = Polytope::hull_of(
      2, {{Rational(0), Rational(0)}, {Rational(1), Rational(0)}, {Rational(0), Rational(1)}, {Rational(1), Rational(1)}});
  for (auto n : c.discretize_ns) {
    const auto a = discretize({square}, n);
    const Rational excess = Rational(static_cast<unsigned long>(a.size())) / Rational(to_integer(n * n)) - 1;
    const BoundCheck b = check_le(excess, make_rational(3, static_cast<long>(n)));
    ++s.instances;
    if (!b.holds) ++s.violations;
    if (s.examples.size() < detail::kExampleCount || !b.holds)
      s.examples.push_back(json{{"N", n}, {"card", a.size()}, {"check", detail::check_json(b)}});
  }
  return s;
}

inline void lowerbound_experiments(const ExperimentConfig& c, json& experiments) {
  for (auto n : c.lowerbound_ns) {
    const StabilityReport r = check_stability(gen_lowerbound_family(2, n), c.normal_bound);
    experiments.push_back(json{{"family", "lowerbound"}, {"params", json{{"k", 2}, {"n", n}}}, {"deficit", r.deficit},
                               {"gap", r.gap}, {"ratio", optional_json(r.ratio)}});
  }
}

inline void functional_experiments(json& experiments) {
  const std::vector<std::pair<std::size_t, Coord>> params{{2, 1}, {2, 2}, {2, 4}, {2, 8}, {3, 2}, {3, 4}};
  for (const auto& [k, n] : params) {
    const FunctionalDeficitReport d = functional_deficit(gen_functional_example(k, n));
    experiments.push_back(json{{"family", "functional"}, {"params", json{{"k", k}, {"n", n}}},
                               {"deficit", to_string(d.conv_deficit)}, {"gap", to_string(d.hull_deficit)},
                               {"ratio", optional_json(d.ratio)}});
  }
}

inline json suite_json(const SuiteResult& s) {
  json j{{"name", s.name}, {"instances", s.instances}, {"violations", s.violations}, {"examples", s.examples}};
  if (!s.stats.empty()) j["stats"] = s.stats;
  return j;
}

inline std::string experiments_csv(const json& experiments) {
  std::ostringstream os;
  os << "family,params,deficit,gap,ratio\n";
  for (const auto& e : experiments) {
    std::string params;
    for (const auto& [key, v] : e["params"].items()) params += (params.empty() ? "" : ";") + key + "=" + v.dump();
    auto cell = [](const json& v) { return v.is_null() ? std::string() : v.is_string() ? v.get<std::string>() : v.dump(); };
    os << e["family"].get<std::string>() << ',' << params << ',' << cell(e["deficit"]) << ',' << cell(e["gap"]) << ','
       << cell(e["ratio"]) << '\n';
  }
  return os.str();
}

inline SuiteReport run_suite(const ExperimentConfig& c) {
  if (c.dims.empty()) throw std::invalid_argument("suite needs at least one dimension");
  for (auto k : c.dims)
    if (k < 1 || k > 3) throw std::invalid_argument("suite dimensions must lie in 1..3");
  if (c.max_side < 1) throw std::invalid_argument("max_side must be positive");
  if (!(0.0 <= c.density_lo && c.density_lo <= c.density_hi && c.density_hi <= 1.0))
    throw std::invalid_argument("density range must satisfy 0 <= lo <= hi <= 1");

  json experiments = json::array();
  std::vector<SuiteResult> suites;
  suites.push_back(suite_negdk(c));
  suites.push_back(suite_dkobs(c));
  suites.push_back(suite_contdisc(c));
  suites.push_back(suite_cvxsd(c));
  suites.push_back(suite_hypboxsmall(c));
  suites.push_back(suite_surfobs(c));
  suites.push_back(suite_compression(c));
  suites.push_back(suite_backends(c));
  suites.push_back(suite_infconv(c));
  suites.push_back(suite_lower_hull(c));
  suites.push_back(suite_plusop(c));
  suites.push_back(suite_functional(c));
  suites.push_back(suite_restricted(c));
  suites.push_back(suite_freiman(c));
  suites.push_back(suite_degenerate(experiments));
  suites.push_back(suite_discretize(c));
  lowerbound_experiments(c, experiments);
  functional_experiments(experiments);

  SuiteReport r;
  json sj = json::array();
  for (const auto& s : suites) {
    r.violations += s.violations;
    sj.push_back(suite_json(s));
  }
  r.document = json{{"config", to_json(c)}, {"suites", sj}, {"experiments", experiments}};
  r.csv = experiments_csv(experiments);
  return r;
}

}  // namespace sumstab::harness
