// Dependence patterns, the decision procedure and a quick self test.

#include <chrono>

#include "commands.hpp"

#include "acfo/chi.hpp"
#include "acfo/decide.hpp"

namespace acfo::cli {

void add_theta(CLI::App& app, const RunConfig& cfg) {
  auto* c = app.add_subcommand("theta",
                               "Theta_P: the dependence patterns of the nonzero roots of P over all orderings "
                               "(p = 0 for roots of unity and rationals in characteristic 0)");
  auto P = std::make_shared<std::string>();
  auto p = std::make_shared<u64>(0);
  c->add_option("--P", *P, "polynomial in t")->required();
  c->add_option("--p", *p, "characteristic, or 0")->required();
  c->callback([&cfg, P, p] {
    const auto coeffs = parse_univariate(*P, "t");
    const ThetaSet t = *p == 0 ? theta_char0_restricted(coeffs) : theta_charp(coeffs, *p, cfg.field_limits());
    emit_json(cfg, to_json(t));
  });
}

void add_decide(CLI::App& app, const RunConfig& cfg) {
  auto* c = app.add_subcommand("decide",
                               "Satisfiability of a special sentence in some model of ACFO_p: field side by exact "
                               "root evaluation, circle side by the ordered group solver");
  auto p = std::make_shared<u64>(0);
  auto file = std::make_shared<std::string>();
  auto text = std::make_shared<std::string>();
  auto branches = std::make_shared<u64>(u64{1} << 22);
  c->add_option("--p", *p, "characteristic, or 0")->required();
  auto* f = c->add_option("--file", *file, "sentence file");
  auto* s = c->add_option("--sentence", *text, "sentence text");
  f->excludes(s);
  c->add_option("--max-branches", *branches, "solver branch cap")->check(CLI::PositiveNumber);
  c->callback([&cfg, p, file, text, branches] {
    if (file->empty() && text->empty()) throw CLI::RequiredError("--file or --sentence");
    const SpecialSentence sen = parse_sentence(file->empty() ? *text : read_file(*file));
    DecideOptions o;
    o.threads = cfg.threads;
    o.field_limits = cfg.field_limits();
    o.limits.max_branches = *branches;
    nlohmann::json j = decide_special(sen, *p, o).to_json();
    j["sentence"] = sen.to_string();
    emit_json(cfg, j);
  });
}

namespace {

struct Check {
  std::string name;
  bool ok;
};

std::vector<Check> run_selftest() {
  std::vector<Check> out;
  {
    const Field f = Field::create(3, 2);
    const CharacterContext ctx(f);
    bool ok = true;
    for (const auto& a : f.elements()) {
      for (const auto& b : f.elements()) {
        if (!a.is_zero() && !b.is_zero()) ok = ok && chi(ctx, a * b) == cp_mul(chi(ctx, a), chi(ctx, b));
      }
    }
    out.push_back({"chi is a homomorphism on F_9^x", ok});
  }
  {
    bool ok = true;
    for (u64 den = 1; den <= 16; ++den) {
      if (den % 5 == 0) continue;
      for (u64 num = 0; num < den; ++num) {
        const CirclePoint t(num, den, 5);
        for (u64 n = 1; n <= 8; ++n) {
          u64 descents = 0;
          for (u64 k = 0; k < n; ++k) descents += cp_pow(t, k + 1).value() < cp_pow(t, k).value();
          ok = ok && descents == winding_number(t, n);
        }
      }
    }
    out.push_back({"winding number equals descent count", ok});
  }
  {
    bool ok = true;
    for (u64 num = 1; num < 24; ++num) {
      const CirclePoint a(num, 24, 5);
      unsigned hits = 0;
      for (u64 r = 0; r < 25; ++r) hits += pred_P(a, 25, r);
      ok = ok && hits == 1;
    }
    out.push_back({"P^r_25 has a unique r at p = 5", ok});
  }
  {
    const auto v1 = decide_special(parse_sentence("exists z1 z2 : roots(t^2+t+1) ; ring: true ; mult: z2 = z1*z1"), 7);
    const auto v2 = decide_special(parse_sentence("exists z1 z2 : roots(t^2+t+1) ; ring: true ; mult: z1 < z2 and z2 < z1"), 7);
    out.push_back({"decide on two small sentences", v1.satisfiable && !v2.satisfiable});
  }
  return out;
}

}  // namespace

void add_selftest(CLI::App& app, const RunConfig& cfg) {
  auto* c = app.add_subcommand("selftest", "Quick exact checks of chi, winding numbers, P^r_n and decide");
  c->callback([&cfg] {
    const auto checks = run_selftest();
    bool all = true;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& ch : checks) {
      all = all && ch.ok;
      arr.push_back({{"name", ch.name}, {"ok", ch.ok}});
    }
    if (cfg.format == "text") {
      Sink s(cfg);
      for (const auto& ch : checks) s.out() << (ch.ok ? "PASS " : "FAIL ") << ch.name << "\n";
      s.flush();
    } else {
      emit_json(cfg, {{"schema", "acfo.selftest/1"}, {"ok", all}, {"checks", arr}});
    }
    if (!all) throw Error(ErrorCode::InvalidArgument, "self test failed");
  });
}

}  // namespace acfo::cli
