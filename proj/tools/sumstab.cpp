// Command-line front end. Exit status: 0 ok, 1 usage, 2 data, 3 violation.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sumstab.hpp"

namespace {

using namespace sumstab;
using json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kData = 2;
constexpr int kViolation = 3;

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::optional<std::size_t> dim;
  std::string out;
  bool json = false;
};

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw DataError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool looks_like_json(const std::string& text) {
  const auto p = text.find_first_not_of(" \t\r\n");
  return p != std::string::npos && (text[p] == '{' || text[p] == '[');
}

LatticeSet load_set(const std::string& path, const Common& c) {
  const std::string text = slurp(path);
  if (looks_like_json(text)) {
    LatticeSet a = io::set_from_json(json::parse(text));
    if (c.dim && a.dim() != *c.dim) throw DataError("dimension mismatch in '" + path + "'");
    return a;
  }
  std::istringstream is(text);
  return io::read_set(is, c.dim);
}

LatticeFunction load_function(const std::string& path, const Common& c) {
  const std::string text = slurp(path);
  if (looks_like_json(text)) {
    LatticeFunction f = io::function_from_json(json::parse(text));
    if (c.dim && f.dim() != *c.dim) throw DataError("dimension mismatch in '" + path + "'");
    return f;
  }
  std::istringstream is(text);
  return io::read_function(is, c.dim);
}

// Writes to --out when given, else stdout.
void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(c.out);
  if (!os) throw DataError("cannot write '" + c.out + "'");
  os << text;
}

std::string render_set(const Common& c, const LatticeSet& a, const std::string& comment, json extra = json::object()) {
  if (c.json) {
    json j = io::set_to_json(a);
    for (auto& [k, v] : extra.items()) j[k] = v;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  io::write_set(os, a, comment);
  return os.str();
}

std::string render_function(const Common& c, const LatticeFunction& f, const std::string& comment) {
  if (c.json) return io::function_to_json(f).dump(2) + "\n";
  std::ostringstream os;
  io::write_function(os, f, comment);
  return os.str();
}

std::string render_fields(const Common& c, const json& fields) {
  if (c.json) return fields.dump(2) + "\n";
  std::string line;
  for (const auto& [k, v] : fields.items()) {
    if (!line.empty()) line += ' ';
    line += k + "=";
    if (v.is_string())
      line += v.get<std::string>();
    else if (v.is_boolean())
      line += v.get<bool>() ? "1" : "0";
    else if (v.is_null())
      line += "none";
    else if (v.is_array()) {
      std::string parts;
      for (const auto& e : v) parts += (parts.empty() ? "" : ",") + e.dump();
      line += parts;
    } else
      line += v.dump();
  }
  return line + "\n";
}

std::vector<Coord> parse_box(const std::string& text) {
  std::vector<Coord> sides;
  std::istringstream is(text);
  for (std::string tok; std::getline(is, tok, ',');) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(tok, &used);
      if (used != tok.size() || v < 1) throw std::invalid_argument("");
      sides.push_back(v);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--box", "expected positive integers n1,n2,...");
    }
  }
  if (sides.empty()) throw CLI::ValidationError("--box", "expected positive integers n1,n2,...");
  return sides;
}

void add_common(CLI::App* sub, Common& c, bool with_dim = true) {
  if (with_dim) sub->add_option("--dim", c.dim, "Expected point dimension (default: inferred)")->check(CLI::PositiveNumber);
  sub->add_option("--out", c.out, "Output path (default: stdout)");
  sub->add_flag("--json", c.json, "JSON output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact sumset, convex-progression and doubling-deficit tools"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every verb");

  Common c;
  std::function<int()> action;
  std::string in1, in2;

  // sum
  std::string backend = "auto";
  auto* sum = app.add_subcommand("sum", "Minkowski sum A+B (B defaults to A)");
  sum->add_option("input", in1, "Set file ('-' for stdin)")->required();
  sum->add_option("second", in2, "Second set file");
  sum->add_option("--backend", backend, "auto|hash|merge|bitset")
      ->check(CLI::IsMember({"auto", "hash", "merge", "bitset"}))
      ->capture_default_str();
  add_common(sum, c);
  sum->callback([&] {
    action = [&] {
      const LatticeSet a = load_set(in1, c);
      const LatticeSet b = in2.empty() ? a : load_set(in2, c);
      const SumsetBackend be = backend == "hash"    ? SumsetBackend::Hash
                               : backend == "merge" ? SumsetBackend::SortedMerge
                               : backend == "bitset" ? SumsetBackend::Bitset
                                                     : SumsetBackend::Auto;
      const LatticeSet s = minkowski_sum(a, b, be);
      emit(c, render_set(c, s, "card=" + std::to_string(s.size())));
      return kOk;
    };
  });

  // doubling
  auto* doubling = app.add_subcommand("doubling", "Doubling deficit d_k(A) = |A+A| - 2^k |A|");
  doubling->add_option("input", in1, "Set file")->required();
  add_common(doubling, c);
  doubling->callback([&] {
    action = [&] {
      const auto r = doubling_deficit(load_set(in1, c));
      emit(c, render_fields(c, json{{"card", r.card_a}, {"sum", r.card_sum}, {"deficit", r.deficit}}));
      return kOk;
    };
  });

  // chull
  std::string box_text;
  auto* chull = app.add_subcommand("chull", "Exact convex hull, volume and lattice-point count");
  chull->add_option("input", in1, "Set file")->required();
  chull->add_option("--box", box_text, "Box n1,n2,... (base 1) for the volume/count check");
  add_common(chull, c);
  chull->callback([&] {
    action = [&] {
      const LatticeSet a = load_set(in1, c);
      if (a.empty()) throw DataError("hull of an empty set");
      const Polytope p = convex_hull(a);
      const auto count = lattice_points(p).size();
      json j{{"vertices", p.vertices().size()}, {"facets", p.facet_count()}, {"affine_dim", p.affine_dim()},
             {"volume", to_string(p.volume())}, {"lattice_points", count}};
      int status = kOk;
      if (!box_text.empty()) {
        const auto sides = parse_box(box_text);
        if (sides.size() != a.dim()) throw DataError("--box dimension does not match the set");
        const auto v = volume_count_check(p, Gap::box(sides));
        j["bound"] = to_string(v.check.rhs);
        j["holds"] = v.check.holds;
        if (!v.check.holds) status = kViolation;
      }
      if (c.json) {
        json full = io::polytope_to_json(p);
        for (auto& [k, v] : j.items()) full[k] = v;
        emit(c, full.dump(2) + "\n");
      } else {
        std::ostringstream os;
        os << render_fields(c, j);
        for (const auto& v : p.vertices()) {
          for (std::size_t k = 0; k < v.size(); ++k) os << (k ? " " : "") << to_string(v[k]);
          os << '\n';
        }
        emit(c, os.str());
      }
      return status;
    };
  });

  // covprog
  auto* covprog = app.add_subcommand("covprog", "Convex progression co^(A) and |co^(A) \\ A|");
  covprog->add_option("input", in1, "Set file")->required();
  add_common(covprog, c);
  covprog->callback([&] {
    action = [&] {
      const LatticeSet a = load_set(in1, c);
      if (a.empty()) throw DataError("convex progression of an empty set");
      const auto r = convex_progression(a);
      emit(c, render_set(c, r.co_hat, "co=" + std::to_string(r.co.size()) + " gap=" + std::to_string(r.gap),
                         json{{"co", r.co.size()}, {"gap", r.gap}}));
      return kOk;
    };
  });

  // rows
  auto* rows_cmd = app.add_subcommand("rows", "Rows R_x: fibres along the first coordinate");
  rows_cmd->add_option("input", in1, "Set file")->required();
  add_common(rows_cmd, c);
  rows_cmd->callback([&] {
    action = [&] {
      const auto rs = rows(load_set(in1, c));
      if (c.json) {
        json arr = json::array();
        for (const auto& [x, ys] : rs) arr.push_back(json{{"x", x.vec()}, {"row", ys}});
        emit(c, arr.dump(2) + "\n");
      } else {
        std::ostringstream os;
        for (const auto& [x, ys] : rs) {
          for (std::size_t j = 0; j < x.dim(); ++j) os << (j ? " " : "") << x[j];
          os << ':';
          for (auto y : ys) os << ' ' << y;
          os << '\n';
        }
        emit(c, os.str());
      }
      return kOk;
    };
  });

  // plusop
  auto* plusop = app.add_subcommand("plusop", "Structured subset A(+)A of A+A");
  plusop->add_option("input", in1, "Set file")->required();
  add_common(plusop, c);
  plusop->callback([&] {
    action = [&] {
      const LatticeSet a = load_set(in1, c);
      const LatticeSet p = plus_structured(a);
      emit(c, render_set(c, p, "card=" + std::to_string(p.size()), json{{"card", p.size()}}));
      return kOk;
    };
  });

  // compress
  std::optional<std::size_t> axis;
  auto* compress_cmd = app.add_subcommand("compress", "Down-compression along one axis or all axes");
  compress_cmd->add_option("input", in1, "Set file")->required();
  compress_cmd->add_option("--axis", axis, "Axis index (default: all axes to a fixpoint)");
  add_common(compress_cmd, c);
  compress_cmd->callback([&] {
    action = [&] {
      const LatticeSet a = load_set(in1, c);
      if (axis && *axis >= a.dim()) throw DataError("--axis out of range");
      const LatticeSet r = axis ? compress(a, *axis) : compress_all(a);
      emit(c, render_set(c, r, "card=" + std::to_string(r.size())));
      return kOk;
    };
  });

  // thickness
  Coord normal_bound = 5;
  auto* thickness = app.add_subcommand("thickness", "Upper bound on lattice thickness via bounded normals");
  thickness->add_option("input", in1, "Set file")->required();
  thickness->add_option("--normal-bound", normal_bound, "Largest normal coordinate searched")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common(thickness, c);
  thickness->callback([&] {
    action = [&] {
      const LatticeSet a = load_set(in1, c);
      if (a.empty()) throw DataError("thickness of an empty set");
      const auto t = thickness_upper(a, normal_bound);
      emit(c, render_fields(c, json{{"count", t.count}, {"normal", t.normal.vec()},
                                    {"exhaustive_up_to", t.exhaustive_up_to}}));
      return kOk;
    };
  });

  // infconv
  std::string witness_path;
  auto* infconv = app.add_subcommand("infconv", "Infimum convolution f^□ (or g^□_W with --witness)");
  infconv->add_option("input", in1, "Function file")->required();
  infconv->add_option("--witness", witness_path, "Shift set W for the restricted convolution");
  add_common(infconv, c);
  infconv->callback([&] {
    action = [&] {
      const LatticeFunction f = load_function(in1, c);
      if (f.size() == 0) throw DataError("function with empty domain");
      const LatticeFunction r =
          witness_path.empty() ? inf_convolution(f) : restricted_inf_convolution(f, load_set(witness_path, c));
      emit(c, render_function(c, r, "sum=" + to_string(r.sum())));
      return kOk;
    };
  });

  // lowerhull
  bool report_deficit = false;
  auto* lowerhull = app.add_subcommand("lowerhull", "Lower convex hull f^ at the domain points");
  lowerhull->add_option("input", in1, "Function file")->required();
  lowerhull->add_flag("--deficit", report_deficit, "Print the functional deficit report instead");
  add_common(lowerhull, c);
  lowerhull->callback([&] {
    action = [&] {
      const LatticeFunction f = load_function(in1, c);
      if (f.size() == 0) throw DataError("function with empty domain");
      if (report_deficit) {
        const auto d = functional_deficit(f);
        emit(c, render_fields(c, json{{"hull_deficit", to_string(d.hull_deficit)},
                                      {"conv_deficit", to_string(d.conv_deficit)},
                                      {"ratio", harness::optional_json(d.ratio)}}));
      } else {
        emit(c, render_function(c, lower_convex_hull(f), ""));
      }
      return kOk;
    };
  });

  // epigraph
  std::int64_t scale = 1, top = 0;
  auto* epigraph = app.add_subcommand("epigraph", "Epigraph lift {(a, x) : ceil(N f(a)) <= x <= M}");
  epigraph->add_option("input", in1, "Function file")->required();
  epigraph->add_option("--scale", scale, "N")->check(CLI::PositiveNumber)->capture_default_str();
  epigraph->add_option("--top", top, "M")->required();
  add_common(epigraph, c);
  epigraph->callback([&] {
    action = [&] {
      const LatticeSet e = epigraph_lift(load_function(in1, c), scale, top);
      emit(c, render_set(c, e, "card=" + std::to_string(e.size())));
      return kOk;
    };
  });

  // freiman
  auto* freiman = app.add_subcommand("freiman", "Check the 3|A|-4 statement on a 1-D set");
  freiman->add_option("input", in1, "Set file")->required();
  add_common(freiman, c);
  freiman->callback([&] {
    action = [&] {
      Common one = c;
      one.dim = 1;
      const auto r = harness::check_freiman(load_set(in1, one));
      emit(c, render_fields(c, json{{"hypothesis", r.hypothesis}, {"d1", r.d1}, {"gap", r.gap},
                                    {"holds", r.conclusion_holds}}));
      return r.conclusion_holds ? kOk : kViolation;
    };
  });

  // enumerate
  int enum_n = 13, enum_cap = 16;
  auto* enumerate = app.add_subcommand("enumerate", "Exhaustive 3|A|-4 sweep over {0,N} ⊆ A ⊆ {0..N}");
  enumerate->add_option("--n", enum_n, "N")->check(CLI::NonNegativeNumber)->capture_default_str();
  enumerate->add_option("--cap", enum_cap, "Largest N accepted")->capture_default_str();
  add_common(enumerate, c, false);
  enumerate->callback([&] {
    action = [&] {
      const auto r = harness::enumerate_freiman(enum_n, enum_cap);
      emit(c, render_fields(c, json{{"sets", r.sets}, {"canonical", r.canonical_sets},
                                    {"hypothesis", r.hypothesis_sets}, {"violations", r.violations}}));
      return r.violations == 0 ? kOk : kViolation;
    };
  });

  // family
  std::string family_name;
  Coord fam_n0 = 1, fam_n = 3;
  std::size_t fam_k = 2;
  auto* family = app.add_subcommand("family", "Extremal families: degenerate, lowerbound, functional");
  family->add_option("name", family_name, "Family")
      ->required()
      ->check(CLI::IsMember({"degenerate", "lowerbound", "functional"}));
  family->add_option("--k", fam_k, "Dimension k")->check(CLI::Range(2, 6))->capture_default_str();
  family->add_option("--n0", fam_n0, "n0 (degenerate family)")->capture_default_str();
  family->add_option("--n", fam_n, "n")->capture_default_str();
  add_common(family, c, false);
  family->callback([&] {
    action = [&] {
      if (family_name == "degenerate") {
        const auto d = harness::check_degenerate_family(fam_k, fam_n0, fam_n);
        const LatticeSet a = harness::gen_degenerate_family(fam_k, fam_n0, fam_n);
        const std::string note = "card=" + std::to_string(d.card) + " deficit=" + std::to_string(d.deficit) +
                                 " co_gap=" + std::to_string(d.co_gap) + " predicted=" + to_string(d.predicted_gap);
        emit(c, render_set(c, a, note,
                           json{{"deficit", d.deficit}, {"co_gap", d.co_gap},
                                {"predicted_gap", to_string(d.predicted_gap)}}));
        return d.deficit_negative && d.gap_matches ? kOk : kViolation;
      }
      if (family_name == "lowerbound") {
        const LatticeSet a = harness::gen_lowerbound_family(fam_k, fam_n);
        const auto r = harness::check_stability(a);
        const std::string ratio = r.ratio ? to_string(*r.ratio) : "none";
        emit(c, render_set(c, a,
                           "card=" + std::to_string(r.card) + " deficit=" + std::to_string(r.deficit) +
                               " gap=" + std::to_string(r.gap) + " ratio=" + ratio,
                           json{{"deficit", r.deficit}, {"gap", r.gap}, {"ratio", harness::optional_json(r.ratio)}}));
        return kOk;
      }
      const LatticeFunction f = harness::gen_functional_example(fam_k, fam_n);
      const auto d = functional_deficit(f);
      emit(c, render_function(c, f,
                              "hull_deficit=" + to_string(d.hull_deficit) + " conv_deficit=" +
                                  to_string(d.conv_deficit) + " ratio=" + (d.ratio ? to_string(*d.ratio) : "none")));
      return kOk;
    };
  });

  // discretize
  std::int64_t disc_n = 1;
  auto* discretize = app.add_subcommand("discretize", "N * (union of regions ∩ (Z/N)^k)");
  discretize->add_option("input", in1, "JSON list of regions {\"dim\", \"vertices\"}")->required();
  discretize->add_option("--n", disc_n, "N")->check(CLI::PositiveNumber)->capture_default_str();
  add_common(discretize, c, false);
  discretize->callback([&] {
    action = [&] {
      const json doc = json::parse(slurp(in1));
      std::vector<Polytope> regions;
      if (doc.is_array())
        for (const auto& r : doc) regions.push_back(io::polytope_from_json(r));
      else
        regions.push_back(io::polytope_from_json(doc));
      const LatticeSet a = harness::discretize(regions, disc_n);
      emit(c, render_set(c, a, "card=" + std::to_string(a.size())));
      return kOk;
    };
  });

  // suite
  harness::ExperimentConfig cfg;
  std::optional<std::size_t> count_all;
  std::string csv_path;
  auto* suite = app.add_subcommand("suite", "Seeded property suites and family experiments");
  suite->add_option("--seed", cfg.seed, "Seed")->capture_default_str();
  suite->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  suite->add_option("--instances", cfg.instances, "Instances per observation suite")->capture_default_str();
  suite->add_option("--count", count_all, "Set every random instance count at once");
  suite->add_option("--max-side", cfg.max_side, "Largest box side")->check(CLI::PositiveNumber)->capture_default_str();
  suite->add_option("--dims", cfg.dims, "Dimensions to sample")->delimiter(',')->capture_default_str();
  suite->add_option("--density-lo", cfg.density_lo, "Lowest uniform density")->capture_default_str();
  suite->add_option("--density-hi", cfg.density_hi, "Highest uniform density")->capture_default_str();
  suite->add_option("--freiman-n", cfg.freiman_n, "N for the exhaustive sweep")->capture_default_str();
  suite->add_option("--normal-bound", cfg.normal_bound, "Thickness normal bound")->capture_default_str();
  suite->add_option("--csv", csv_path, "Experiments CSV path");
  add_common(suite, c, false);
  suite->callback([&] {
    action = [&] {
      if (count_all) {
        cfg.instances = cfg.backend_pairs = cfg.compression_pairs = *count_all;
        cfg.infconv_functions = cfg.functional_functions = cfg.restricted_functions = *count_all;
      }
      const auto r = harness::run_suite(cfg);
      emit(c, r.document.dump(2) + "\n");
      if (!csv_path.empty()) {
        std::ofstream os(csv_path);
        if (!os) throw DataError("cannot write '" + csv_path + "'");
        os << r.csv;
      }
      std::cerr << "suites=" << r.document["suites"].size() << " violations=" << r.violations << '\n';
      return r.violations == 0 ? kOk : kViolation;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    return action();
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  }
}
