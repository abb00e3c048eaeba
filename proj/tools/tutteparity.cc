// Command-line front end. Exit codes: 0 all checks pass, 1 a check failed,
// 2 usage, parse, domain or size error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "tutteparity/corpus.hpp"
#include "tutteparity/embedding.hpp"
#include "tutteparity/enumerators.hpp"
#include "tutteparity/flows.hpp"
#include "tutteparity/parity_bias.hpp"
#include "tutteparity/tutte.hpp"

namespace tp = tutteparity;
using json = nlohmann::json;

namespace {

struct Common {
  std::string graph, corpus, rot, tri;
  bool json = false;
  bool no_timing = false;
  int threads = 1;
};

struct Input {
  std::string name;
  tp::MultiGraph graph;
  std::string text;  // file contents, empty for corpus graphs
  std::optional<tp::NamedGraph> entry;
};

struct TimedCheck {
  tp::CheckResult check;
  double ms = 0;
};

struct Report {
  std::vector<std::string> command;
  std::optional<Input> input;
  json result = json::object();
  std::vector<std::string> lines;  // text-mode result
  std::vector<std::string> notices;
  std::vector<TimedCheck> checks;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tp::DomainError("cannot read file '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// --graph takes a file (edge list or JSON) or, failing that, a corpus name.
Input load_input(const Common& c) {
  if (!c.graph.empty() && !c.corpus.empty()) throw tp::DomainError("give either --graph or --corpus, not both");
  Input in;
  std::string name = c.corpus;
  if (!c.graph.empty()) {
    if (std::filesystem::exists(c.graph)) {
      in.text = read_file(c.graph);
      in.graph = tp::parse_graph(in.text);
      in.name = c.graph;
      return in;
    }
    if (!tp::corpus_entry(c.graph)) throw tp::DomainError("no file or corpus graph named '" + c.graph + "'");
    name = c.graph;
  }
  if (name.empty()) throw tp::DomainError("a graph is required: --graph FILE or --corpus NAME");
  in.entry = tp::corpus_entry(name);
  if (!in.entry) throw tp::DomainError("unknown corpus graph '" + name + "'");
  in.graph = in.entry->graph;
  in.name = name;
  return in;
}

bool has_section(const std::string& text, const std::string& tag) {
  for (auto& line : tp::detail::split_lines(text)) {
    std::istringstream s(line);
    std::string w;
    if (s >> w && w == tag) return true;
  }
  return false;
}

// --rot, then rot lines in the graph file, then the corpus drawing.
std::optional<tp::RotationSystem> load_rotation(const Common& c, const Input& in, Report& r) {
  if (!c.rot.empty()) return tp::parse_rotation(in.graph, read_file(c.rot));
  if (has_section(in.text, "rot")) return tp::parse_rotation(in.graph, in.text);
  if (in.entry && in.entry->drawing) {
    r.notices.push_back("rotation derived from the corpus drawing of " + in.name);
    return tp::rotation_from_drawing(in.graph, *in.entry->drawing);
  }
  return std::nullopt;
}

// --tri, then tri lines in the graph file, then the facial triangles of the
// rotation when every face is a triangle.
std::optional<tp::TriangleCover> load_cover(const Common& c, const Input& in, Report& r) {
  if (!c.tri.empty()) return tp::parse_triangles(in.graph, read_file(c.tri));
  if (has_section(in.text, "tri")) return tp::parse_triangles(in.graph, in.text);
  auto rot = load_rotation(c, in, r);
  if (!rot) return std::nullopt;
  auto faces = tp::trace_faces(in.graph, *rot);
  if (faces.empty() || !std::all_of(faces.begin(), faces.end(), [](auto& f) { return f.size() == 3; }))
    return std::nullopt;
  r.notices.push_back("triangle cover taken from the faces of the rotation");
  return tp::facial_triangles(in.graph, *rot);
}

template <class F>
void timed(Report& r, F&& f) {
  auto start = std::chrono::steady_clock::now();
  auto out = f();
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if constexpr (std::is_same_v<decltype(out), tp::CheckResult>) {
    r.checks.push_back({out, ms});
  } else {
    for (auto& c : out) r.checks.push_back({c, ms});
  }
}

// Runs a suite; size and domain errors become a skipped check naming the cause.
template <class F>
void suite(Report& r, const std::string& name, F&& f) {
  try {
    f();
  } catch (const tp::SizeError& e) {
    r.checks.push_back({tp::skipped_check(name, std::string("size bound: ") + e.what()), 0});
  } catch (const tp::DomainError& e) {
    r.checks.push_back({tp::skipped_check(name, std::string("precondition: ") + e.what()), 0});
  }
}

json graph_summary(const Input& in) {
  auto p = tp::rank_profile(in.graph);
  return {{"name", in.name}, {"vertices", in.graph.vertex_count}, {"edges", in.graph.edge_count()},
          {"k", p.k}, {"r", p.r}, {"n", p.n}};
}

int emit(const Report& r, const Common& c) {
  for (auto& n : r.notices) std::cerr << "notice: " << n << "\n";
  int passed = 0, failed = 0, skipped = 0;
  for (auto& t : r.checks) (t.check.skipped ? skipped : t.check.pass ? passed : failed) += 1;
  if (c.json) {
    json j = {{"schema", 1}, {"command", r.command}, {"result", r.result}};
    if (r.input) j["graph"] = graph_summary(*r.input);
    json checks = json::array();
    for (auto& t : r.checks) {
      auto cj = tp::to_json(t.check);
      if (!c.no_timing) cj["ms"] = t.ms;
      checks.push_back(cj);
    }
    j["checks"] = checks;
    j["notices"] = r.notices;
    j["summary"] = {{"passed", passed}, {"failed", failed}, {"skipped", skipped}};
    std::cout << j.dump(2) << "\n";
  } else {
    for (auto& l : r.lines) std::cout << l << "\n";
    for (auto& t : r.checks) {
      const auto& k = t.check;
      std::cout << (k.skipped ? "SKIP " : k.pass ? "PASS " : "FAIL ") << k.identity;
      if (!k.parameters.empty()) {
        std::cout << " [";
        for (std::size_t i = 0; i < k.parameters.size(); ++i)
          std::cout << (i ? " " : "") << k.parameters[i].first << "=" << k.parameters[i].second;
        std::cout << "]";
      }
      if (k.skipped) {
        std::cout << " " << k.note;
      } else {
        std::cout << " lhs=" << k.lhs << " rhs=" << k.rhs;
        if (!k.note.empty()) std::cout << " (" << k.note << ")";
      }
      if (!c.no_timing) std::cout << " " << std::fixed << std::setprecision(2) << t.ms << " ms";
      std::cout << "\n";
    }
    if (!r.checks.empty())
      std::cout << "checks: " << passed << " passed, " << failed << " failed, " << skipped << " skipped\n";
  }
  return failed ? 1 : 0;
}

std::vector<int> parse_ids(const std::string& s, const std::string& what) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw tp::DomainError("bad entry '" + tok + "' in " + what);
    }
  }
  return out;
}

tp::QAssignment parse_vector(const std::string& s, tp::Ring ring, int m) {
  tp::QAssignment y{ring, {}};
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    int v = -1;
    if (ring == tp::Ring::F4 && (tok == "w" || tok == "w2"))
      v = tok == "w" ? 2 : 3;
    else if (tok.size() == 1 && std::isdigit(static_cast<unsigned char>(tok[0])))
      v = tok[0] - '0';
    if (v < 0 || v >= tp::ring_order(ring)) throw tp::DomainError("bad entry '" + tok + "' for " + tp::to_string(ring));
    y.values.push_back(v);
  }
  if (static_cast<int>(y.values.size()) != m)
    throw tp::DomainError("vector has " + std::to_string(y.values.size()) + " entries, graph has " +
                          std::to_string(m) + " edges");
  return y;
}

std::vector<tp::Ring> rings_from(const std::string& s) {
  if (s.empty() || s == "all") return {tp::Ring::Z3, tp::Ring::Z4, tp::Ring::F4};
  return {tp::parse_ring(s)};
}

// Verification suites.

const std::vector<std::string> kSuites = {"tutte", "specializations", "enumerators", "theorems", "flows",
                                          "tripart", "psi", "triang", "medial", "orient-pairs"};

tp::CheckResult poly_check(const std::string& id, const tp::BivariatePoly& a, const tp::BivariatePoly& b) {
  tp::CheckResult c;
  c.identity = id;
  c.lhs = a.to_string();
  c.rhs = b.to_string();
  c.pass = a == b;
  return c;
}

void run_suite(const std::string& s, const Common& c, const Input& in, const tp::TutteData& d, Report& r) {
  const auto& g = in.graph;
  const int m = g.edge_count();
  if (s == "tutte") {
    suite(r, "tutte pair", [&] {
      tp::require_size(m <= tp::kMaxSubsetExpansionEdges, "subset expansion supports at most 20 edges");
      timed(r, [&] {
        return poly_check("tutte pair", tp::tutte_deletion_contraction(g), tp::tutte_subset_expansion(g));
      });
    });
  } else if (s == "specializations") {
    for (auto ring : rings_from("all")) {
      const int q = tp::ring_order(ring);
      suite(r, "flow count", [&] {
        timed(r, [&] {
          return tp::compare("flow count", tp::BigRational(tp::count_nowhere_zero(g, ring, tp::Space::flows)),
                             tp::flow_value(g, d.poly, q))
              .param("ring", tp::to_string(ring));
        });
      });
      suite(r, "tension count", [&] {
        timed(r, [&] {
          auto t = tp::BigRational(tp::count_nowhere_zero(g, ring, tp::Space::tensions));
          return tp::compare("tension count", t * tp::power(tp::BigRational(q), d.profile.k),
                             tp::chromatic_value(g, d.poly, q))
              .param("ring", tp::to_string(ring));
        });
      });
    }
  } else if (s == "enumerators") {
    for (int q : {2, 4})
      for (int t : {2, 3}) {
        suite(r, "flow hwe", [&] { timed(r, [&] { return tp::verify_flow_hwe(d, q, t); }); });
        suite(r, "macwilliams", [&] { timed(r, [&] { return tp::verify_macwilliams(d, q, t); }); });
      }
    std::vector<tp::Cyc12> ts = {tp::Cyc12(-2), tp::Cyc12(2), tp::Cyc12(3), tp::Cyc12(tp::make_rational(1, 2))};
    for (int q : {2, 3, 4, 6}) ts.push_back(tp::root_of_unity(q, 1));
    for (auto& t : ts) suite(r, "sum cubes", [&] { timed(r, [&] { return tp::verify_sum_cubes(d, t); }); });
    for (int q : {2, 3, 4, 6})
      for (int k = 1; k < q; ++k)
        suite(r, "real sums", [&] { timed(r, [&] { return tp::verify_real_sums(d, q, k); }); });
    for (int t : {2, 3}) suite(r, "fourth power", [&] { timed(r, [&] { return tp::verify_fourth_power(d, t); }); });
    if (tp::is_eulerian_graph(g))
      suite(r, "eulerian reciprocal", [&] { timed(r, [&] { return tp::verify_eulerian_reciprocal(d, 3); }); });
    else
      r.checks.push_back({tp::skipped_check("eulerian reciprocal", "precondition: graph is not eulerian"), 0});
  } else if (s == "theorems") {
    suite(r, "named theorems", [&] { timed(r, [&] { return tp::verify_named_theorems(d); }); });
  } else if (s == "flows") {
    for (auto ring : rings_from("all")) {
      suite(r, "mobius aggregate", [&] { timed(r, [&] { return tp::mobius_aggregate_check(g, ring); }); });
      suite(r, "onn existence", [&] {
        timed(r, [&] {
          bool found = tp::onn_criterion(g, ring).has_value();
          bool colourable = tp::chromatic_value(g, d.poly, tp::ring_order(ring)) != 0;
          return tp::compare("onn existence", tp::BigRational(found), tp::BigRational(colourable))
              .param("ring", tp::to_string(ring));
        });
      });
    }
  } else if (s == "tripart") {
    suite(r, "tripartition scan", [&] {
      timed(r, [&] {
        auto scan = tp::tripartition_scan(g);
        bool colourable = tp::chromatic_value(g, d.poly, 4) != 0;
        auto k = tp::compare("tripartition scan", tp::BigRational(scan.nonzero > 0), tp::BigRational(colourable));
        k.note = std::to_string(scan.nonzero) + " of " + std::to_string(scan.partitions) + " partitions nonzero";
        return k;
      });
      timed(r, [&] {
        return tp::compare("tripartition unconditional", tp::tripartition_unconditional_bias(g),
                           tp::BigRational(m == 0 ? 1 : 0));
      });
    });
  } else if (s == "psi") {
    suite(r, "psi sums", [&] {
      timed(r, [&] { return tp::psi_sums(d).checks; });
      timed(r, [&] { return tp::psi_sums(d, true).checks; });
    });
  } else if (s == "triang") {
    suite(r, "triangulation", [&] {
      auto cover = load_cover(c, in, r);
      if (!cover) throw tp::DomainError("no triangle cover supplied (--tri) or derivable from a rotation");
      timed(r, [&] { return tp::triangulation_bias(d, *cover).checks; });
    });
  } else if (s == "medial") {
    suite(r, "penrose", [&] {
      if (!tp::is_regular(g, 3)) throw tp::DomainError("graph is not cubic");
      auto rot = load_rotation(c, in, r);
      if (!rot) throw tp::DomainError("no rotation supplied (--rot)");
      auto md = tp::medial(g, *rot);
      if (!md.plane) throw tp::DomainError("rotation is not plane, so the penrose identity does not apply");
      timed(r, [&] { return *tp::penrose_bias(md.graph, md.gamma, true).check; });
    });
  } else if (s == "orient-pairs") {
    suite(r, "orientation pairs", [&] { timed(r, [&] { return tp::orientation_pair_stats(d).checks; }); });
  } else {
    throw tp::DomainError("unknown suite '" + s + "'");
  }
}

// Subcommands.

void cmd_tutte(const Common& c, Report& r) {
  r.input = load_input(c);
  tp::TutteData d(r.input->graph);
  r.result["polynomial"] = d.poly.to_string();
  json terms = json::array();
  for (auto& [k, v] : d.poly.terms()) terms.push_back({k.first, k.second, v.str()});
  r.result["terms"] = terms;
  r.lines.push_back(d.poly.to_string());
}

void cmd_eval(const Common& c, const std::string& x, const std::string& y, Report& r) {
  r.input = load_input(c);
  auto v = tp::evaluate(tp::tutte_polynomial(r.input->graph), tp::parse_rational(x), tp::parse_rational(y));
  r.result = {{"x", x}, {"y", y}, {"value", tp::to_string(v)}};
  r.lines.push_back(tp::to_string(v));
}

struct BiasArgs {
  int arity = 2;
  std::string combiner = "sum";
  int q = 2;
  std::string set;
  bool exact = false;
  std::uint64_t mc = 0;
  std::uint64_t seed = 1;
};

void cmd_bias(const Common& c, const BiasArgs& a, Report& r) {
  r.input = load_input(c);
  const auto& g = r.input->graph;
  tp::EventSpec ev;
  ev.arity = a.arity;
  if (a.combiner != "sum" && a.combiner != "diff") throw tp::DomainError("combiner must be sum or diff");
  ev.combiner = a.combiner == "diff" ? tp::Combiner::difference : tp::Combiner::sum;
  ev.q = a.q;
  for (int l : parse_ids(a.set, "--set")) ev.residues.insert(l);
  ev.validate();
  if (a.mc > 0) {
    auto mc = tp::monte_carlo_bias(g, ev, a.mc, a.seed, c.threads);
    r.result = {{"event", {{"arity", ev.arity}, {"combiner", a.combiner}, {"q", ev.q},
                           {"residues", std::vector<int>(ev.residues.begin(), ev.residues.end())}}},
                {"monte_carlo", tp::to_json(mc)},
                {"seed", a.seed},
                {"bias_unconditional", tp::to_string(tp::unconditional_bias(g.edge_count(), ev))}};
    std::ostringstream s;
    s << std::setprecision(6);
    if (mc.estimate)
      s << "conditional bias estimate " << *mc.estimate << " +- " << mc.stderr_estimate;
    else
      s << "conditional bias estimate: no sample satisfied the eulerian condition";
    s << " (accepted " << mc.accepted << " of " << mc.samples << ", seed " << a.seed << ")";
    r.lines.push_back(s.str());
    return;
  }
  auto rep = tp::bias_report(g, ev);
  r.result = tp::to_json(rep);
  r.lines.push_back("conditional bias " + tp::to_string(rep.bias_conditional));
  r.lines.push_back("unconditional bias " + tp::to_string(rep.bias_unconditional));
  r.lines.push_back("correlation " + tp::to_string(rep.correlation));
  r.lines.push_back("ratio " + (rep.ratio ? tp::to_string(*rep.ratio) : std::string("undefined")));
  timed(r, [&] {
    return tp::compare("tutte route", rep.bias_conditional, tp::bias_from_tutte(g, ev))
        .param("q", std::to_string(ev.q))
        .param("kind", tp::to_string(ev.kind()))
        .param("S", tp::to_string(ev.residues));
  });
}

void cmd_verify(const Common& c, bool all, const std::vector<std::string>& suites, Report& r) {
  r.input = load_input(c);
  tp::TutteData d(r.input->graph);
  std::vector<std::string> run = (all || suites.empty()) ? kSuites : suites;
  for (auto& s : run) {
    if (std::find(kSuites.begin(), kSuites.end(), s) == kSuites.end())
      throw tp::DomainError("unknown suite '" + s + "'");
    run_suite(s, c, *r.input, d, r);
  }
  for (auto& t : r.checks) t.check.graph = r.input->name;
  r.result["suites"] = run;
}

void cmd_flows(const Common& c, const std::string& ring, Report& r) {
  r.input = load_input(c);
  const auto& g = r.input->graph;
  tp::TutteData d(g);
  for (auto rg : rings_from(ring)) {
    const int q = tp::ring_order(rg);
    long long f = tp::count_nowhere_zero(g, rg, tp::Space::flows);
    long long t = tp::count_nowhere_zero(g, rg, tp::Space::tensions);
    r.result[tp::to_string(rg)] = {{"nowhere_zero_flows", f}, {"nowhere_zero_tensions", t}};
    r.lines.push_back(tp::to_string(rg) + ": nowhere-zero flows " + std::to_string(f) + ", nowhere-zero tensions " +
                      std::to_string(t));
    timed(r, [&] {
      return tp::compare("flow count", tp::BigRational(f), tp::flow_value(g, d.poly, q)).param("ring", tp::to_string(rg));
    });
    timed(r, [&] {
      return tp::compare("tension count", tp::BigRational(t) * tp::power(tp::BigRational(q), d.profile.k),
                         tp::chromatic_value(g, d.poly, q))
          .param("ring", tp::to_string(rg));
    });
  }
}

void cmd_onn(const Common& c, const std::string& ring_name, const std::string& y, bool aggregate, Report& r) {
  r.input = load_input(c);
  const auto& g = r.input->graph;
  auto ring = tp::parse_ring(ring_name);
  r.result["ring"] = tp::to_string(ring);
  if (!y.empty()) {
    auto v = parse_vector(y, ring, g.edge_count());
    auto s = tp::mobius_flow_sum(g, ring, v);
    r.result["y"] = v.to_string();
    r.result["mobius_flow_sum"] = s;
    r.lines.push_back("mobius flow sum at " + v.to_string() + " = " + std::to_string(s));
  } else {
    auto w = tp::onn_criterion(g, ring);
    r.result["witness"] = w ? json(w->to_string()) : json(nullptr);
    r.lines.push_back("witness " + (w ? w->to_string() : std::string("none")));
    bool colourable = tp::chromatic_value(g, ring == tp::Ring::Z3 ? 3 : 4) != 0;
    timed(r, [&] {
      return tp::compare("onn existence", tp::BigRational(w.has_value()), tp::BigRational(colourable))
          .param("ring", tp::to_string(ring));
    });
  }
  if (aggregate) timed(r, [&] { return tp::mobius_aggregate_check(g, ring); });
}

void cmd_tripart(const Common& c, const std::string& x, const std::string& y, const std::string& z, bool scan,
                 Report& r) {
  r.input = load_input(c);
  const auto& g = r.input->graph;
  const int m = g.edge_count();
  if (scan) {
    auto s = tp::tripartition_scan(g);
    r.result = {{"partitions", s.partitions}, {"nonzero", s.nonzero}};
    std::string first = "none";
    if (s.first_nonzero) {
      auto parts = tp::tripartition_sets(*s.first_nonzero, m);
      first = "X=" + parts[0].to_string() + " Y=" + parts[1].to_string() + " Z=" + parts[2].to_string();
    }
    r.result["first_nonzero"] = first;
    r.lines.push_back(std::to_string(s.nonzero) + " of " + std::to_string(s.partitions) +
                      " tripartitions have nonzero bias; first: " + first);
    timed(r, [&] {
      return tp::compare("tripartition scan", tp::BigRational(s.nonzero > 0),
                         tp::BigRational(tp::chromatic_value(g, 4) != 0));
    });
    return;
  }
  auto rep = tp::tripartition_bias(g, tp::EdgeSubset::from_ids(m, parse_ids(x, "--X")),
                                   tp::EdgeSubset::from_ids(m, parse_ids(y, "--Y")),
                                   tp::EdgeSubset::from_ids(m, parse_ids(z, "--Z")));
  r.result = {{"joint", tp::to_string(rep.joint)},
              {"p_gamma", tp::to_string(rep.p_gamma)},
              {"bias_conditional", tp::to_string(rep.bias_conditional)},
              {"bias_unconditional", tp::to_string(rep.bias_unconditional)},
              {"signed_sum", rep.signed_sum},
              {"gamma_count", rep.gamma_count}};
  r.lines.push_back("P(Sigma and Gamma) - P(not Sigma and Gamma) = " + tp::to_string(rep.joint));
  r.lines.push_back("P(Gamma) = " + tp::to_string(rep.p_gamma));
  r.lines.push_back("conditional bias " + tp::to_string(rep.bias_conditional));
  r.lines.push_back("unconditional bias " + tp::to_string(rep.bias_unconditional));
}

void cmd_psi(const Common& c, Report& r) {
  r.input = load_input(c);
  auto rep = tp::psi_sums(r.input->graph);
  r.result = {{"flow_sum", rep.flow_sum.to_string()}, {"tension_sum", rep.tension_sum.to_string()}};
  r.lines.push_back("flow sum " + rep.flow_sum.to_string());
  r.lines.push_back("tension sum " + rep.tension_sum.to_string());
  for (auto& k : rep.checks) r.checks.push_back({k, 0});
}

void cmd_triang(const Common& c, Report& r) {
  r.input = load_input(c);
  auto cover = load_cover(c, *r.input, r);
  if (!cover) throw tp::DomainError("no triangle cover: pass --tri FILE or a rotation whose faces are triangles");
  auto rep = tp::triangulation_bias(r.input->graph, *cover);
  json biases = json::array();
  for (int k = 0; k < 3; ++k) {
    biases.push_back({{"shift", k}, {"count", rep.counts[k]}, {"conditional", tp::to_string(rep.bias_conditional[k])},
                      {"unconditional", tp::to_string(rep.bias_unconditional[k])}});
    r.lines.push_back("|A| - |B| = " + std::to_string(k) + " mod 3: conditional bias " +
                      tp::to_string(rep.bias_conditional[k]) + ", unconditional " +
                      tp::to_string(rep.bias_unconditional[k]));
  }
  r.result = {{"biases", biases}, {"p_gamma", tp::to_string(rep.p_gamma)}, {"ratio", tp::to_string(rep.ratio)}};
  r.lines.push_back("P(Gamma) = " + tp::to_string(rep.p_gamma));
  r.lines.push_back("ratio " + tp::to_string(rep.ratio));
  for (auto& k : rep.checks) r.checks.push_back({k, 0});
}

tp::Medial medial_of(const Common& c, Report& r) {
  auto rot = load_rotation(c, *r.input, r);
  if (!rot) throw tp::DomainError("no rotation: pass --rot FILE or rot lines after the edge list");
  return tp::medial(r.input->graph, *rot);
}

void cmd_medial(const Common& c, Report& r) {
  r.input = load_input(c);
  auto md = medial_of(c, r);
  json black = json::array();
  for (auto& t : md.black) black.push_back(t);
  r.result = {{"graph", tp::to_json(md.graph)}, {"black", black}, {"gamma", md.gamma.sign}, {"plane", md.plane}};
  std::istringstream el(tp::to_edge_list(md.graph));
  for (std::string line; std::getline(el, line);) r.lines.push_back(line);
  for (auto& t : md.black)
    r.lines.push_back("black " + std::to_string(t[0]) + " " + std::to_string(t[1]) + " " + std::to_string(t[2]));
}

void cmd_penrose(const Common& c, const std::string& gamma, Report& r) {
  r.input = load_input(c);
  const auto& g = r.input->graph;
  tp::PenroseReport rep;
  if (tp::is_regular(g, 3)) {
    auto md = medial_of(c, r);
    if (!md.plane) r.notices.push_back("rotation is not plane; no identity asserted");
    rep = tp::penrose_bias(md.graph, md.gamma, md.plane);
    r.result["source"] = "medial";
  } else {
    tp::Orientation o{std::vector<int>(g.edge_count(), 1)};
    if (!gamma.empty()) {
      if (static_cast<int>(gamma.size()) != g.edge_count())
        throw tp::DomainError("--gamma needs one + or - per edge");
      for (int e = 0; e < g.edge_count(); ++e) {
        if (gamma[e] != '+' && gamma[e] != '-') throw tp::DomainError("--gamma entries must be + or -");
        o.sign[e] = gamma[e] == '+' ? 1 : -1;
      }
    }
    rep = tp::penrose_bias(g, o, false);
    r.result["source"] = "graph";
  }
  r.result["bias"] = tp::to_string(rep.bias);
  r.result["signed_sum"] = rep.signed_sum;
  r.result["eulerian_orientations"] = rep.nowhere_zero;
  r.lines.push_back("bias " + tp::to_string(rep.bias) + " over " + std::to_string(rep.nowhere_zero) +
                    " eulerian orientations");
  if (rep.check) r.checks.push_back({*rep.check, 0});
}

void cmd_orient_pairs(const Common& c, bool direct, Report& r) {
  r.input = load_input(c);
  const auto& g = r.input->graph;
  tp::TutteData d(g);
  auto rep = tp::orientation_pair_stats(d);
  auto rev = tp::orientation_pair_stats(d, tp::ForestOrder::reverse);
  r.result = {{"p_gamma", tp::to_string(rep.p_gamma)}, {"bias", tp::to_string(rep.bias)}};
  r.lines.push_back("P(Gamma) = " + tp::to_string(rep.p_gamma));
  r.lines.push_back("bias " + tp::to_string(rep.bias));
  for (auto& k : rep.checks) r.checks.push_back({k, 0});
  r.checks.push_back({tp::compare("transversal invariance", rep.sum_signed_squares, rev.sum_signed_squares), 0});
  if (direct) {
    auto dc = tp::orientation_pairs_direct(g);
    r.checks.push_back({tp::compare("direct gamma count", tp::BigRational(dc.f3_flow), rep.sum_count_squares), 0});
    r.checks.push_back({tp::compare("direct signed sum", tp::BigRational(dc.signed_sum), rep.sum_signed_squares), 0});
    r.result["balanced_pairs"] = dc.balanced;
    r.lines.push_back("pairs whose common orientation is balanced at every vertex: " + std::to_string(dc.balanced) +
                      " (F3-flow pairs: " + std::to_string(dc.f3_flow) + ")");
  }
}

void cmd_corpus(const Common& c, const std::string& name, Report& r) {
  if (name.empty()) {
    json list = json::array();
    for (auto& ng : tp::corpus()) {
      auto p = tp::rank_profile(ng.graph);
      list.push_back({{"name", ng.name}, {"vertices", ng.graph.vertex_count}, {"edges", ng.graph.edge_count()},
                      {"k", p.k}, {"r", p.r}, {"n", p.n}});
      r.lines.push_back(ng.name + " |V|=" + std::to_string(ng.graph.vertex_count) +
                        " |E|=" + std::to_string(ng.graph.edge_count()) + " k=" + std::to_string(p.k) +
                        " r=" + std::to_string(p.r) + " n=" + std::to_string(p.n));
    }
    r.result["graphs"] = list;
    return;
  }
  Common cc = c;
  cc.corpus = name;
  r.input = load_input(cc);
  std::string text = tp::to_edge_list(r.input->graph);
  if (r.input->entry->drawing) {
    auto rot = tp::rotation_from_drawing(r.input->graph, *r.input->entry->drawing);
    text += tp::to_string(rot);
    auto faces = tp::trace_faces(r.input->graph, rot);
    if (std::all_of(faces.begin(), faces.end(), [](auto& f) { return f.size() == 3; }))
      text += tp::to_string(tp::facial_triangles(r.input->graph, rot));
  }
  r.result = {{"graph", tp::to_json(r.input->graph)}, {"text", text}};
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) r.lines.push_back(line);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tutte polynomial and parity bias toolkit"};
  app.require_subcommand(1);
  Common c;
  auto common = [&](CLI::App* s, bool graph = true) {
    if (graph) {
      s->add_option("--graph", c.graph, "graph file (edge list or JSON) or corpus name");
      s->add_option("--corpus", c.corpus, "corpus graph name");
      s->add_option("--rot", c.rot, "rotation system file");
      s->add_option("--tri", c.tri, "triangle cover file");
    }
    s->add_flag("--json", c.json, "emit JSON (schema 1)");
    s->add_flag("--no-timing", c.no_timing, "omit timings");
    s->add_option("--threads", c.threads, "worker threads for Monte Carlo")->check(CLI::Range(1, 256));
  };

  auto* tutte = app.add_subcommand("tutte", "Tutte polynomial");
  common(tutte);
  std::string x, y;
  auto* eval = app.add_subcommand("eval", "evaluate T(G;x,y) at rationals");
  common(eval);
  eval->add_option("--x", x, "x as p/q")->required()->allow_extra_args(false);
  eval->add_option("--y", y, "y as p/q")->required();

  BiasArgs ba;
  auto* bias = app.add_subcommand("bias", "parity bias of an event, exact or Monte Carlo");
  common(bias);
  bias->add_option("--arity", ba.arity, "2 or 3")->check(CLI::IsMember({2, 3}));
  bias->add_option("--combiner", ba.combiner, "sum or diff")->check(CLI::IsMember({"sum", "diff"}));
  bias->add_option("--mod", ba.q, "modulus q")->required();
  bias->add_option("--set", ba.set, "residues, comma separated")->required();
  auto* exact = bias->add_flag("--exact", ba.exact, "exact enumeration (default)");
  auto* mc = bias->add_option("--mc", ba.mc, "Monte Carlo with N samples")->check(CLI::PositiveNumber);
  bias->add_option("--seed", ba.seed, "Monte Carlo seed")->needs(mc);
  exact->excludes(mc);

  bool all = false;
  std::vector<std::string> suites;
  auto* verify = app.add_subcommand("verify", "run verification suites");
  common(verify);
  verify->add_flag("--all", all, "every applicable suite");
  verify->add_option("--suite", suites, "suites to run")->delimiter(',')->check(CLI::IsMember(kSuites));

  std::string ring = "all";
  auto* flows = app.add_subcommand("flows", "nowhere-zero flow and tension counts");
  common(flows);
  flows->add_option("--ring", ring, "Z3, Z4, F4 or all");

  std::string onn_ring = "F4", onn_y;
  bool aggregate = false;
  auto* onn = app.add_subcommand("onn", "Mobius flow sums and the colouring criterion");
  common(onn);
  onn->add_option("--ring", onn_ring, "Z3, Z4 or F4");
  onn->add_option("--y", onn_y, "evaluate the Mobius flow sum at y, e.g. 1,w,w2");
  onn->add_flag("--aggregate", aggregate, "check the aggregate identity over all nowhere-zero y");

  std::string px, py, pz;
  bool scan = false;
  auto* tripart = app.add_subcommand("tripart", "tripartition bias");
  common(tripart);
  tripart->add_option("--X", px, "edge ids of X");
  tripart->add_option("--Y", py, "edge ids of Y");
  tripart->add_option("--Z", pz, "edge ids of Z");
  tripart->add_flag("--scan", scan, "every tripartition");

  auto* psi = app.add_subcommand("psi", "character sums over F4 flows and tensions");
  common(psi);
  auto* triang = app.add_subcommand("triang", "eulerian pair biases for a triangle double cover");
  common(triang);
  auto* med = app.add_subcommand("medial", "medial graph of an embedded cubic graph");
  common(med);
  std::string gamma;
  auto* penrose = app.add_subcommand("penrose", "eulerian orientation parity bias");
  common(penrose);
  penrose->add_option("--gamma", gamma, "reference orientation as + and - per edge (4-regular input)");
  bool direct = false;
  auto* pairs = app.add_subcommand("orient-pairs", "orientation pair statistics of a 4-regular graph");
  common(pairs);
  pairs->add_flag("--direct", direct, "also enumerate all pairs of orientations");
  std::string corpus_name;
  auto* corpus = app.add_subcommand("corpus", "list the corpus or print one member");
  common(corpus, false);
  corpus->add_option("name", corpus_name, "corpus graph");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Report r;
  for (int i = 1; i < argc; ++i) r.command.push_back(argv[i]);
  try {
    if (*tutte) cmd_tutte(c, r);
    else if (*eval) cmd_eval(c, x, y, r);
    else if (*bias) cmd_bias(c, ba, r);
    else if (*verify) cmd_verify(c, all, suites, r);
    else if (*flows) cmd_flows(c, ring, r);
    else if (*onn) cmd_onn(c, onn_ring, onn_y, aggregate, r);
    else if (*tripart) cmd_tripart(c, px, py, pz, scan, r);
    else if (*psi) cmd_psi(c, r);
    else if (*triang) cmd_triang(c, r);
    else if (*med) cmd_medial(c, r);
    else if (*penrose) cmd_penrose(c, gamma, r);
    else if (*pairs) cmd_orient_pairs(c, direct, r);
    else if (*corpus) cmd_corpus(c, corpus_name, r);
  } catch (const tp::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const tp::SizeError& e) {
    std::cerr << "size error: " << e.what() << "\n";
    return 2;
  } catch (const tp::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return emit(r, c);
}
