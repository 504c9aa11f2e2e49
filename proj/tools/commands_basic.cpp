// Field, character and circle subcommands.

#include "commands.hpp"

#include "acfo/chi.hpp"
#include "acfo/circle.hpp"

namespace acfo::cli {

void add_field_info(CLI::App& app, const RunConfig& cfg) {
  auto* c = app.add_subcommand("field-info", "Finite field F_{p^L}: modulus, generator and unit group order of the ambient standard model");
  auto p = std::make_shared<u64>(0);
  auto L = std::make_shared<unsigned>(1);
  c->add_option("--p", *p, "characteristic")->required();
  c->add_option("--L", *L, "extension degree")->check(CLI::PositiveNumber);
  c->callback([&cfg, p, L] {
    const Field f = Field::create(*p, *L, cfg.field_limits());
    nlohmann::json j = field_to_json(f);
    j["schema"] = "acfo.field/1";
    j["order"] = f.order();
    nlohmann::json fac = nlohmann::json::array();
    for (const auto& [q, e] : f.order_factorization()) fac.push_back({q, e});
    j["order_factorization"] = fac;
    j["generator_text"] = f.generator().to_string();
    emit_json(cfg, j);
  });
}

void add_chi_table(CLI::App& app, const RunConfig& cfg) {
  auto* c = app.add_subcommand("chi-table", "The character chi(a) = dlog(a)/(p^L-1) on F_{p^L}^x, one row per unit");
  auto p = std::make_shared<u64>(0);
  auto L = std::make_shared<unsigned>(1);
  c->add_option("--p", *p, "characteristic")->required();
  c->add_option("--L", *L, "extension degree")->check(CLI::PositiveNumber);
  c->callback([&cfg, p, L] {
    const Field f = Field::create(*p, *L, cfg.field_limits());
    const CharacterContext ctx(f);
    if (f.order() > (u64{1} << 20)) throw Error(ErrorCode::SizeCapExceeded, "chi-table lists at most 2^20 units");
    Sink s(cfg);
    nlohmann::json rows = nlohmann::json::array();
    if (cfg.format == "csv") s.out() << "element,dlog,fraction\n";
    for (const auto& a : f.elements()) {
      if (a.is_zero()) continue;
      const u64 d = dlog(a);
      const std::string frac = chi(ctx, a).to_string();
      if (cfg.format == "csv") {
        s.out() << '"' << a.to_string() << "\"," << d << ',' << frac << "\n";
      } else {
        rows.push_back({{"element", a.to_string()}, {"dlog", d}, {"fraction", frac}});
      }
    }
    if (cfg.format != "csv") {
      nlohmann::json j = {{"schema", "acfo.chi_table/1"}, {"p", *p}, {"L", *L}, {"rows", rows}};
      s.out() << j.dump(2) << "\n";
    }
    s.flush();
  });
}

void add_invariants(CLI::App& app, const RunConfig& cfg) {
  auto* c = app.add_subcommand("invariants",
                               "Cyclotomic invariants Psi_n pinning the standard model at each level n | L; "
                               "with --verify, checks a coherent sequence read from a file");
  auto p = std::make_shared<u64>(0);
  auto L = std::make_shared<unsigned>(1);
  auto verify = std::make_shared<std::string>();
  c->add_option("--p", *p, "characteristic");
  c->add_option("--L", *L, "largest level")->check(CLI::PositiveNumber);
  c->add_option("--verify", *verify, "invariant file to check instead of emitting one");
  c->callback([&cfg, p, L, verify] {
    if (!verify->empty()) {
      const auto inv = invariants_from_json(read_json(*verify));
      const CoherenceReport r = verify_coherent_sequence(inv);
      nlohmann::json entries = nlohmann::json::array();
      for (const auto& e : r.entries) entries.push_back({{"n", e.n}, {"n2", e.n2}, {"ok", e.ok}, {"message", e.message}});
      emit_json(cfg, {{"schema", "acfo.coherence/1"}, {"ok", r.ok()}, {"entries", entries}});
      if (!r.ok()) throw Error(ErrorCode::IncoherentSequence, "invariant file is not coherent");
      return;
    }
    if (*p == 0) throw CLI::RequiredError("--p");
    const CharacterContext ctx(Field::create(*p, *L, cfg.field_limits()));
    std::vector<CyclotomicInvariant> inv;
    for (unsigned n = 1; n <= *L; ++n) {
      if (*L % n == 0) inv.push_back(cyclotomic_invariant(ctx, n));
    }
    nlohmann::json j = invariants_to_json(inv);
    emit_json(cfg, j);
  });
}

void add_order(CLI::App& app, const RunConfig& cfg) {
  auto* c = app.add_subcommand("order", "The chi-order a <_chi b on F_{p^L}^x; elements are polynomials in x");
  auto p = std::make_shared<u64>(0);
  auto L = std::make_shared<unsigned>(1);
  auto a = std::make_shared<std::string>();
  auto b = std::make_shared<std::string>();
  c->add_option("--p", *p, "characteristic")->required();
  c->add_option("--L", *L, "extension degree")->check(CLI::PositiveNumber);
  c->add_option("--a", *a, "first element")->required();
  c->add_option("--b", *b, "second element")->required();
  c->callback([&cfg, p, L, a, b] {
    const CharacterContext ctx(Field::create(*p, *L, cfg.field_limits()));
    const FieldElement x = parse_element(ctx.field(), *a), y = parse_element(ctx.field(), *b);
    if (x.is_zero() || y.is_zero()) throw Error(ErrorCode::ZeroArgument, "the order lives on F^x");
    emit_json(cfg, {{"schema", "acfo.order/1"},
                    {"a", x.to_string()},
                    {"b", y.to_string()},
                    {"chi_a", chi(ctx, x).to_string()},
                    {"chi_b", chi(ctx, y).to_string()},
                    {"less", order_lt(ctx, x, y)}});
  });
}

void add_wn(CLI::App& app, const RunConfig& cfg) {
  auto* c = app.add_subcommand("wn", "Winding number wn(c, n): descents in c^0, c^1, ..., c^n on the circle");
  auto p = std::make_shared<u64>(0);
  auto t = std::make_shared<std::string>();
  auto n = std::make_shared<u64>(1);
  c->add_option("--p", *p, "characteristic (0 allowed)")->required();
  c->add_option("--t", *t, "circle point num/den")->required();
  c->add_option("--n", *n, "n >= 1")->check(CLI::PositiveNumber);
  c->callback([&cfg, p, t, n] {
    const CirclePoint c = CirclePoint::parse(*t, *p);
    emit_json(cfg, {{"schema", "acfo.wn/1"}, {"t", c.to_string()}, {"n", *n}, {"wn", winding_number(c, *n)}});
  });
}

void add_predp(CLI::App& app, const RunConfig& cfg) {
  auto* c = app.add_subcommand("predP", "The predicate P^r_n: a has an n-th root of winding number r");
  auto p = std::make_shared<u64>(0);
  auto t = std::make_shared<std::string>();
  auto n = std::make_shared<u64>(1);
  auto r = std::make_shared<u64>(0);
  c->add_option("--p", *p, "characteristic (0 allowed)")->required();
  c->add_option("--t", *t, "circle point num/den")->required();
  c->add_option("--n", *n, "n >= 1")->check(CLI::PositiveNumber);
  c->add_option("--r", *r, "0 <= r < n");
  c->callback([&cfg, p, t, n, r] {
    const CirclePoint a = CirclePoint::parse(*t, *p);
    const bool h = pred_P(a, *n, *r);
    nlohmann::json j = {{"schema", "acfo.predP/1"}, {"t", a.to_string()}, {"n", *n}, {"r", *r}, {"holds", h}};
    j["root"] = h ? nlohmann::json(nth_root(a, *n, *r).to_string()) : nlohmann::json(nullptr);
    emit_json(cfg, j);
  });
}

}  // namespace acfo::cli
