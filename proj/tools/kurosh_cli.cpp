#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kurosh/acceptance.hpp"
#include "kurosh/export.hpp"
#include "kurosh/kurosh.hpp"
#include "kurosh/spec_document.hpp"

namespace {

using namespace kurosh;

struct Flags {
  std::string spec;
  std::optional<std::size_t> radius;
  std::optional<std::size_t> window;
  std::optional<std::string> relative;
  std::optional<std::string> g0;
  std::optional<std::string> h0;
  std::optional<std::string> dot;
  std::optional<std::string> json;
  std::optional<std::uint64_t> seed;
  bool trace = false;
  bool count = false;
  std::vector<std::string> words;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path);
  out << text;
}

std::string join(const FreeProduct& g, const std::vector<Word>& ws) {
  std::string s;
  for (std::size_t i = 0; i < ws.size(); ++i) s += (i ? ", " : "") + g.format(ws[i]);
  return s;
}

std::string lifts(const FreeProduct& g, const std::vector<StabilizedLift>& ls) {
  std::vector<Word> ws;
  for (const auto& l : ls) ws.push_back(l.conjugator);
  return join(g, ws);
}

struct Context {
  SpecDocument doc;
  SubgroupRef c;
  std::size_t radius;
  std::size_t window;
  std::uint64_t seed;
};

Context load(const Flags& f) {
  auto doc = load_spec(f.spec);
  auto gens = f.relative ? parse_generator_text(doc.group, *f.relative) : doc.subgroup;
  auto c = build_core_graph(doc.group, gens);
  return {doc, c, f.radius.value_or(doc.options.radius), f.window.value_or(doc.options.window),
          f.seed.value_or(doc.options.seed)};
}

SubfactorPair pair_from(const Flags& f, const FreeProduct& g) {
  return {f.g0 ? parse_factor_subgroup(g, Side::left, *f.g0) : FactorSubgroup::whole(g.factor(Side::left)),
          f.h0 ? parse_factor_subgroup(g, Side::right, *f.h0) : FactorSubgroup::whole(g.factor(Side::right))};
}

int cmd_rank(const Flags& f) {
  auto ctx = load(f);
  auto k = kurosh_rank(*ctx.c);
  std::cout << "t=" << k.t << " graph_rank=" << k.graph_rank << " total=" << k.total << "\n";
  return 0;
}

int cmd_core(const Flags& f) {
  auto ctx = load(f);
  const auto& g = *ctx.c;
  auto core = fundamental_core(g);
  std::cout << "vertices: " << g.vertices().size() << " (core " << core.vertices.size() << ")\n";
  std::cout << "edges: " << g.edges().size() << " (core " << core.edges.size() << ")\n";
  for (auto v : core.vertices) {
    const auto& vert = g.vertices()[v];
    std::cout << "v" << v << " " << vertex_type_name(vert.type) << " lift=" << g.group().format(g.vertex_word(v));
    if (vert.type != VertexType::zero) std::cout << " stab=" << vert.stab.describe();
    std::cout << "\n";
  }
  if (f.dot) write_file(*f.dot, to_dot(g));
  if (f.json) write_file(*f.json, to_json(g).dump(2) + "\n");
  return 0;
}

int cmd_xi(const Flags& f) {
  auto ctx = load(f);
  const auto& grp = ctx.doc.group;
  auto comp = xi_complement(*ctx.c);
  std::cout << "xi_complement: " << join(grp, comp) << "\n";
  std::cout << "count: " << comp.size() << "\n";
  if (f.radius) {
    std::size_t checked = 0;
    for (const auto& w : grp.ball(*f.radius)) {
      bool listed = std::any_of(comp.begin(), comp.end(), [&](const Word& x) { return ctx.c->same_coset(w, x); });
      if (listed == in_xi(*ctx.c, w)) throw DomainError("direct test disagrees at " + grp.format(w));
      ++checked;
    }
    std::cout << "consistent on " << checked << " ball elements\n";
  }
  return 0;
}

int cmd_intersect(const Flags& f) {
  auto ctx = load(f);
  const auto& grp = ctx.doc.group;
  auto p = pair_from(f, grp);
  auto d = theorem_data(*ctx.c);
  auto gens = intersection_generators(d, *ctx.c, p);
  auto inter = build_core_graph(grp, gens.words);
  bool ok = kurosh_bound_check(*ctx.c, *inter);
  std::cout << "f0: " << join(grp, d.f0) << "\n";
  std::cout << "zetas: " << join(grp, d.zetas) << "\n";
  std::cout << "alphas: " << lifts(grp, d.alphas) << "\n";
  std::cout << "betas: " << lifts(grp, d.betas) << "\n";
  std::cout << "generators: " << join(grp, gens.words) << "\n";
  std::cout << "rank_C: " << ctx.c->kurosh().total << "\n";
  std::cout << "rank_intersection: " << inter->kurosh().total << "\n";
  std::cout << "bound_ok: " << (ok ? "true" : "false") << "\n";
  if (f.json) {
    nlohmann::json j;
    j["f0"] = words_json(grp, d.f0);
    j["zetas"] = words_json(grp, d.zetas);
    std::vector<Word> a, b;
    for (const auto& l : d.alphas) a.push_back(l.conjugator);
    for (const auto& l : d.betas) b.push_back(l.conjugator);
    j["alphas"] = words_json(grp, a);
    j["betas"] = words_json(grp, b);
    j["generators"] = words_json(grp, gens.words);
    j["rank_C"] = ctx.c->kurosh().total;
    j["rank_intersection"] = inter->kurosh().total;
    j["bound_ok"] = ok;
    write_file(*f.json, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_rewrite(const Flags& f) {
  auto ctx = load(f);
  const auto& grp = ctx.doc.group;
  auto p = pair_from(f, grp);
  auto d = theorem_data(*ctx.c);
  auto gens = intersection_generators(d, *ctx.c, p);
  for (std::size_t i = 0; i < gens.words.size(); ++i)
    std::cout << "x" << i << " = " << grp.format(gens.words[i]) << "\n";
  for (const auto& lit : f.words) {
    Word x = grp.parse(lit);
    auto r = rewrite_in_generators(*ctx.c, d, gens, p, x);
    std::string prod;
    for (const auto& [i, e] : r.product)
      prod += (prod.empty() ? "" : " ") + ("x" + std::to_string(i)) + (e == 1 ? "" : "^" + e.str());
    std::cout << grp.format(x) << " = " << (prod.empty() ? "1" : prod) << "\n";
    if (f.trace) {
      std::cout << "  critical:";
      for (auto k : r.critical_trace) std::cout << " " << k;
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_cones(const Flags& f) {
  auto ctx = load(f);
  auto cones = enumerate_cones(ConeDomain::ball(ctx.doc.group, ctx.radius), ctx.c);
  std::cout << "cones: " << cones.size() << "\n";
  if (!f.count)
    for (std::size_t i = 0; i < cones.size(); ++i) std::cout << "cone " << i << ": " << format_cone(cones[i]) << "\n";
  if (f.json) {
    auto j = nlohmann::json::array();
    for (const auto& c : cones) j.push_back(cone_json(c));
    write_file(*f.json, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_perturb(const Flags& f) {
  auto ctx = load(f);
  const auto& grp = ctx.doc.group;
  auto domain = ball_domain(grp, ctx.radius);
  auto cones = enumerate_cones(domain, ctx.c);
  if (cones.empty()) throw DomainError("no cones on the radius-" + std::to_string(ctx.radius) + " ball");
  const auto& c = cones[ctx.seed % cones.size()];
  auto w = nonisolation_witness(c, grp.ball(ctx.window), ctx.window);
  const auto& r = w.detail;
  std::cout << "c: " << format_cone(c) << "\n";
  std::cout << "c': " << format_cone(restrict_cone(w.c_prime, domain)) << "\n";
  std::cout << "gamma: " << grp.format(w.gamma) << " c=" << w.c.at(w.gamma) << " c'=" << w.c_prime.at(w.gamma) << "\n";
  std::cout << "phi: " << r.phi.format() << "\n";
  if (f.trace) {
    std::cout << "lambda_n+: " << grp.format(r.lambda_n_plus) << " at " << format_rational(w.realization.orbit(r.lambda_n_plus)) << "\n";
    std::cout << "lambda_n-: " << grp.format(r.lambda_n_minus) << " at " << format_rational(w.realization.orbit(r.lambda_n_minus)) << "\n";
    std::cout << "lambda_n+1+: " << grp.format(r.lambda) << " at " << format_rational(r.at_lambda) << "\n";
    std::cout << "g: " << grp.format(r.g) << " h: " << grp.format(r.h) << (r.swapped ? " (factors swapped)" : "") << "\n";
    std::cout << "chain: " << format_rational(r.at_lambda) << " < " << format_rational(r.x0) << " < "
              << format_rational(r.x1) << " < " << format_rational(r.at_h_lambda) << " < "
              << format_rational(r.at_g_lambda) << " < " << format_rational(r.y1) << " < " << format_rational(r.y0)
              << "\n";
  }
  if (f.json) {
    nlohmann::json j;
    j["c"] = cone_json(c);
    j["c_prime"] = cone_json(w.c_prime);
    j["gamma"] = grp.format(w.gamma);
    auto pts = nlohmann::json::array();
    for (const auto& [x, y] : r.phi.breakpoints()) pts.push_back({format_rational(x), format_rational(y)});
    j["phi"] = pts;
    write_file(*f.json, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_check(const Flags& f) {
  auto results = acceptance::run_all(f.seed.value_or(0));
  bool ok = true;
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << r.number << " (" << r.title << "): " << r.detail
              << "\n";
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subgroups of free products: Kurosh rank, intersections and left-preorders"};
  app.require_subcommand(1);
  Flags f;
  auto add = [&](const std::string& name, const std::string& help, bool spec = true) {
    auto* sub = app.add_subcommand(name, help);
    if (spec) sub->add_option("--spec", f.spec, "spec JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--radius", f.radius, "ball radius");
    sub->add_option("--window", f.window, "agreement radius");
    sub->add_option("--relative", f.relative, "comma-separated subgroup generators");
    sub->add_option("--g0", f.g0, "comma-separated generators of G0");
    sub->add_option("--h0", f.h0, "comma-separated generators of H0");
    sub->add_option("--dot", f.dot, "DOT output file");
    sub->add_option("--json", f.json, "JSON output file");
    sub->add_option("--seed", f.seed, "random seed");
    sub->add_flag("--trace", f.trace, "print intermediate values");
    sub->add_flag("--count", f.count, "print counts only");
    return sub;
  };
  add("rank", "Kurosh rank of the subgroup");
  add("core", "fundamental core of the quotient graph");
  add("xi", "cosets outside Xi");
  add("intersect", "generators of the intersection with <G0,H0>");
  add("rewrite", "express words in the intersection generators")->add_option("words", f.words, "word literals");
  add("cones", "enumerate truncated positive cones");
  add("perturb", "non-isolation witness for an enumerated cone");
  add("check", "run the acceptance suite", false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "rank") return cmd_rank(f);
    if (name == "core") return cmd_core(f);
    if (name == "xi") return cmd_xi(f);
    if (name == "intersect") return cmd_intersect(f);
    if (name == "rewrite") return cmd_rewrite(f);
    if (name == "cones") return cmd_cones(f);
    if (name == "perturb") return cmd_perturb(f);
    return cmd_check(f);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
