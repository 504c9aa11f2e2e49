// Character sums, point-count tables and box discrepancies.

#include "commands.hpp"

#include "acfo/sums.hpp"

namespace acfo::cli {

namespace {

SumOptions sum_options(const RunConfig& cfg) {
  SumOptions o;
  o.threads = cfg.threads;
  o.angle_cap = cfg.angle_cap;
  return o;
}

void emit_table(const RunConfig& cfg, const SumTable& t) {
  Sink s(cfg);
  if (cfg.format == "csv") {
    s.out() << t.to_csv();
  } else {
    s.out() << t.to_json().dump(2) << "\n";
  }
  s.flush();
}

}  // namespace

void add_charsum(CLI::App& app, const RunConfig& cfg) {
  auto* c = app.add_subcommand("charsum", "Character sum S_k = sum over V(F_{q^k}) of chi(P(a)), exact when the angle histogram fits");
  auto file = std::make_shared<std::string>();
  auto P = std::make_shared<std::string>();
  auto k = std::make_shared<unsigned>(1);
  auto restrict_nonzero = std::make_shared<bool>(false);
  c->add_option("--variety", *file, "variety JSON file")->required();
  c->add_option("--P", *P, "polynomial in x1..xm")->required();
  c->add_option("--k", *k, "level")->check(CLI::PositiveNumber);
  c->add_flag("--restrict", *restrict_nonzero, "sum over P != 0 instead of skipping zeros");
  c->callback([&cfg, file, P, k, restrict_nonzero] {
    const VarietySpec v = load_variety(*file, cfg);
    SumOptions o = sum_options(cfg);
    o.restrict_nonzero = *restrict_nonzero;
    const SumResult r = char_sum(v, *k, IntPoly::parse(*P, v.m), o);
    emit_json(cfg, {{"schema", "acfo.charsum/1"},
                    {"k", r.k},
                    {"n_points", r.n_points},
                    {"skipped_zero_arg", r.skipped_zero_arg},
                    {"modulus", r.modulus},
                    {"exact", r.exact},
                    {"exact_zero", r.exact_zero},
                    {"constant", r.constant},
                    {"re", format_double(r.value.real())},
                    {"im", format_double(r.value.imag())},
                    {"magnitude", format_double(r.magnitude)}});
  });
}

void add_langweil(CLI::App& app, const RunConfig& cfg) {
  auto* c = app.add_subcommand("langweil", "Lang-Weil table: |N_k - q^{kd}| against q^{k(d-1/2)} for k in a range");
  auto file = std::make_shared<std::string>();
  auto d = std::make_shared<unsigned>(1);
  auto ks = std::make_shared<std::string>("1..4");
  c->add_option("--variety", *file, "variety JSON file")->required();
  c->add_option("--d", *d, "dimension (defaults to claimed_dim)");
  c->add_option("--ks", *ks, "levels, e.g. 1..5 or 1,2,4");
  c->callback([&cfg, file, d, ks, c] {
    const VarietySpec v = load_variety(*file, cfg);
    unsigned dim = *d;
    if (c->count("--d") == 0 && v.claimed_dim) dim = *v.claimed_dim;
    emit_table(cfg, lang_weil_table(v, dim, parse_levels(*ks), sum_options(cfg)));
  });
}

void add_weil(CLI::App& app, const RunConfig& cfg) {
  auto* c = app.add_subcommand("weil", "Weil-type ratio |S_k| / q^{k(d-1/2)} of the character sum of P over V");
  auto file = std::make_shared<std::string>();
  auto P = std::make_shared<std::string>();
  auto d = std::make_shared<unsigned>(1);
  auto ks = std::make_shared<std::string>("1..4");
  c->add_option("--variety", *file, "variety JSON file")->required();
  c->add_option("--P", *P, "polynomial in x1..xm")->required();
  c->add_option("--d", *d, "dimension (defaults to claimed_dim)");
  c->add_option("--ks", *ks, "levels");
  c->callback([&cfg, file, P, d, ks, c] {
    const VarietySpec v = load_variety(*file, cfg);
    unsigned dim = *d;
    if (c->count("--d") == 0 && v.claimed_dim) dim = *v.claimed_dim;
    emit_table(cfg, weil_ratio_table(v, dim, IntPoly::parse(*P, v.m), parse_levels(*ks), sum_options(cfg)));
  });
}

void add_weyl(CLI::App& app, const RunConfig& cfg) {
  auto* c = app.add_subcommand("weyl", "Weyl sums of the monomial characters chi(x^l) over V^x, normalized by N_k (equidistribution)");
  auto file = std::make_shared<std::string>();
  auto ks = std::make_shared<std::string>("1..4");
  auto ls = std::make_shared<std::vector<std::string>>();
  c->add_option("--variety", *file, "variety JSON file")->required();
  c->add_option("--ks", *ks, "levels");
  c->add_option("--l", *ls, "exponent vector, e.g. 1,-1 (repeatable)")->required();
  c->callback([&cfg, file, ks, ls] {
    const VarietySpec v = load_variety(*file, cfg);
    std::vector<IVec> vecs;
    for (const auto& s : *ls) vecs.push_back(parse_ivec(s));
    emit_table(cfg, weyl_sums(v, parse_levels(*ks), vecs, sum_options(cfg)));
  });
}

void add_boxes(CLI::App& app, const RunConfig& cfg) {
  auto* c = app.add_subcommand("boxes", "Box discrepancy of chi(V^x(F_{q^k})) in the torus (U_(p))^m against box volume");
  auto file = std::make_shared<std::string>();
  auto k = std::make_shared<unsigned>(1);
  auto boxes = std::make_shared<std::vector<std::string>>();
  c->add_option("--variety", *file, "variety JSON file")->required();
  c->add_option("--k", *k, "level")->check(CLI::PositiveNumber);
  c->add_option("--box", *boxes, "open box lo:hi, e.g. 0,0:1/2,1/2 (repeatable)")->required();
  c->callback([&cfg, file, k, boxes] {
    const VarietySpec v = load_variety(*file, cfg);
    const u64 p = v.base.p();
    std::vector<Box> bs;
    for (const auto& s : *boxes) {
      const auto colon = s.find(':');
      if (colon == std::string::npos) throw Error(ErrorCode::SyntaxError, "box needs lo:hi, got '" + s + "'");
      bs.push_back({parse_points(s.substr(0, colon), p), parse_points(s.substr(colon + 1), p)});
    }
    const auto res = box_discrepancy(v, *k, bs, sum_options(cfg));
    Sink out(cfg);
    if (cfg.format == "csv") {
      out.out() << "box,count,N_k,fraction,volume,deviation\n";
      for (std::size_t i = 0; i < res.size(); ++i) {
        out.out() << '"' << (*boxes)[i] << "\"," << res[i].count << ',' << res[i].n_k << ',' << res[i].fraction.get_str() << ','
                  << res[i].volume.get_str() << ',' << format_double(res[i].deviation_d) << "\n";
      }
    } else {
      nlohmann::json rows = nlohmann::json::array();
      for (std::size_t i = 0; i < res.size(); ++i) {
        rows.push_back({{"box", (*boxes)[i]},
                        {"count", res[i].count},
                        {"N_k", res[i].n_k},
                        {"fraction", res[i].fraction.get_str()},
                        {"volume", res[i].volume.get_str()},
                        {"deviation", res[i].deviation.get_str()},
                        {"deviation_d", format_double(res[i].deviation_d)}});
      }
      out.out() << nlohmann::json({{"schema", "acfo.boxes/1"}, {"k", *k}, {"rows", rows}}).dump(2) << "\n";
    }
    out.flush();
  });
}

}  // namespace acfo::cli
