// Variety subcommands: points, largeness and the genericity probe.

#include "commands.hpp"

namespace acfo::cli {

namespace {

nlohmann::json point_json(const Point& pt) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& x : pt) a.push_back(x.to_string());
  return a;
}

}  // namespace

void add_points(CLI::App& app, const RunConfig& cfg) {
  auto* c = app.add_subcommand("points", "Points of a quasi-affine variety V over F_{q^k}, or of its torus part V^x");
  auto file = std::make_shared<std::string>();
  auto k = std::make_shared<unsigned>(1);
  auto torus = std::make_shared<bool>(false);
  auto count_only = std::make_shared<bool>(false);
  c->add_option("--variety", *file, "variety JSON file")->required();
  c->add_option("--k", *k, "level")->check(CLI::PositiveNumber);
  c->add_flag("--torus", *torus, "only points with every coordinate nonzero");
  c->add_flag("--count", *count_only, "print the count only");
  c->callback([&cfg, file, k, torus, count_only] {
    const VarietySpec v = load_variety(*file, cfg);
    EnumOptions o;
    o.torus_only = *torus;
    o.threads = cfg.threads;
    o.budget = cfg.enum_budget;
    const LevelContext lc = level_context(v, *k);
    if (*count_only) {
      emit_json(cfg, {{"schema", "acfo.points/1"}, {"k", *k}, {"torus", *torus}, {"count", count_points(v, lc, o)}});
      return;
    }
    const auto pts = enumerate_points(v, lc, o);
    Sink s(cfg);
    if (cfg.format == "csv") {
      for (unsigned j = 1; j <= v.m; ++j) s.out() << (j > 1 ? "," : "") << 'x' << j;
      s.out() << "\n";
      for (const auto& pt : pts) {
        for (std::size_t j = 0; j < pt.size(); ++j) s.out() << (j ? "," : "") << '"' << pt[j].to_string() << '"';
        s.out() << "\n";
      }
    } else {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& pt : pts) arr.push_back(point_json(pt));
      nlohmann::json j = {{"schema", "acfo.points/1"}, {"k", *k}, {"torus", *torus}, {"count", pts.size()}, {"points", arr}};
      s.out() << j.dump(2) << "\n";
    }
    s.flush();
  });
}

void add_largeness(CLI::App& app, const RunConfig& cfg) {
  auto* c = app.add_subcommand("largeness",
                               "Multiplicative largeness of V: no monomial identity x^l = c on the torus part "
                               "(Large is certain, NotLarge is checked at two levels)");
  auto file = std::make_shared<std::string>();
  auto kmax = std::make_shared<unsigned>(4);
  c->add_option("--variety", *file, "variety JSON file")->required();
  c->add_option("--kmax", *kmax, "largest level searched")->check(CLI::PositiveNumber);
  c->callback([&cfg, file, kmax] {
    const VarietySpec v = load_variety(*file, cfg);
    const LargenessVerdict r = largeness_verdict(v, *kmax, cfg.threads);
    const char* kind = r.kind == LargenessVerdict::Kind::Large      ? "Large"
                       : r.kind == LargenessVerdict::Kind::NotLarge ? "NotLarge"
                                                                    : "Unknown";
    nlohmann::json j = {{"schema", "acfo.largeness/1"}, {"verdict", kind}, {"level", r.level}, {"heuristic", r.heuristic},
                        {"text", r.to_string()}};
    if (r.kind == LargenessVerdict::Kind::NotLarge) {
      nlohmann::json l = nlohmann::json::array();
      for (const auto& x : r.relation) l.push_back(x.get_str());
      j["relation"] = l;
      j["constant"] = r.constant;
      j["constant_chi"] = r.constant_chi.to_string();
    }
    emit_json(cfg, j);
  });
}

void add_probe(CLI::App& app, const RunConfig& cfg) {
  auto* c = app.add_subcommand("probe",
                               "Genericity probe: search V^x(F_{q^k}) for a point whose chi-values lie in an open "
                               "hyper-arc, k = 1..kmax");
  auto file = std::make_shared<std::string>();
  auto lo = std::make_shared<std::string>();
  auto hi = std::make_shared<std::string>();
  auto e = std::make_shared<std::string>();
  auto q = std::make_shared<u64>(1);
  auto kmax = std::make_shared<unsigned>(8);
  auto path = std::make_shared<std::string>("direct");
  c->add_option("--variety", *file, "variety JSON file")->required();
  c->add_option("--lo", *lo, "lower corner, comma separated circle points")->required();
  c->add_option("--hi", *hi, "upper corner")->required();
  c->add_option("--e", *e, "shift e of a q-arc (default all 0)");
  c->add_option("--q", *q, "arc modulus q (1 for a plain arc, or a power of p)");
  c->add_option("--kmax", *kmax, "largest level")->check(CLI::PositiveNumber);
  c->add_option("--path", *path, "direct | frobenius")->check(CLI::IsMember({"direct", "frobenius"}));
  c->callback([&cfg, file, lo, hi, e, q, kmax, path] {
    const VarietySpec v = load_variety(*file, cfg);
    const u64 p = v.base.p();
    const HyperArc h = HyperArc::make(*q, parse_points(*lo, p), parse_points(*hi, p),
                                      e->empty() ? std::vector<CirclePoint>{} : parse_points(*e, p));
    const ProbePath pp = *path == "direct" ? ProbePath::Direct : ProbePath::FrobeniusPullback;
    const ProbeResult r = genericity_probe(v, h, *kmax, pp, cfg.threads);
    nlohmann::json j = {{"schema", "acfo.probe/1"}, {"found", r.found}, {"k", r.k}, {"path", *path}};
    if (r.found) {
      j["point"] = point_json(r.point);
      nlohmann::json t = nlohmann::json::array();
      for (const auto& x : r.chi_values) t.push_back(x.to_string());
      j["chi"] = t;
      j["verified"] = r.ctx && hyperarc_contains(h, r.point, *r.ctx);
    }
    emit_json(cfg, j);
  });
}

}  // namespace acfo::cli
