#include "ffm/cli/run.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "ffm/core/errors.hpp"
#include "ffm/core/parallel.hpp"
#include "ffm/family/family.hpp"
#include "ffm/li/li.hpp"
#include "ffm/mertens/growth.hpp"
#include "ffm/mertens/residue.hpp"
#include "ffm/mertens/series.hpp"
#include "ffm/rmt/probe.hpp"
#include "ffm/rmt/special.hpp"
#include "ffm/rmt/weyl.hpp"
#include "ffm/zeta/curve.hpp"
#include "ffm/zeta/zeros.hpp"

namespace ffm::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

long long parse_int(const std::string& s) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw InvalidArgument("not an integer: '" + s + "'");
  }
  if (pos != s.size()) throw InvalidArgument("not an integer: '" + s + "'");
  return v;
}

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw InvalidArgument("not a number: '" + s + "'");
  }
  if (pos != s.size()) throw InvalidArgument("not a number: '" + s + "'");
  return v;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  for (const auto& t : split(s, ',')) out.push_back(parse_double(t));
  return out;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  for (const auto& t : split(s, ',')) out.push_back(static_cast<int>(parse_int(t)));
  return out;
}

json big(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return v.convert_to<std::int64_t>();
  return v.str();
}

json big_list(const std::vector<BigInt>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(big(v));
  return a;
}

BigInt unbig(const json& j) {
  if (j.is_string()) return BigInt(j.get<std::string>());
  return BigInt(j.get<std::int64_t>());
}

json opt_num(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

struct Sink {
  fs::path dir;
  std::string name;

  fs::path path(const std::string& ext) const { return dir / (name + ext); }

  void write(const std::string& ext, const std::string& content) const {
    fs::create_directories(dir);
    std::ofstream f(path(ext), std::ios::binary);
    if (!f) throw Refusal("cannot open " + path(ext).string() + " for writing");
    f << content;
  }
};

json envelope(const json& cfg) { return json{{"run_config", cfg}, {"version", kVersion}}; }

// Curve given by flags.
struct CurveArgs {
  std::uint32_t p = 0;
  std::uint32_t k = 1;
  int g = -1;
  std::string f;

  void add(CLI::App* app) {
    app->add_option("--p", p, "characteristic")->required();
    app->add_option("--k", k, "base field degree, q = p^k")->capture_default_str();
    app->add_option("--g", g, "genus (checked against deg f = 2g+1)");
    app->add_option("--f", f, "coefficients a_0,...,a_{2g+1}; k-tuples joined by ':' when k > 1")->required();
  }

  json config() const { return {{"p", p}, {"k", k}, {"g", g}, {"f", f}}; }

  zeta::HyperellipticCurve curve() const {
    const ff::FieldSpec spec = ff::make_field(p, k);
    ff::Field field(spec);
    ff::Poly poly;
    for (const auto& tok : split(f, ',')) {
      if (k == 1) {
        poly.push_back(field.from_int(parse_int(tok)));
        continue;
      }
      auto parts = split(tok, ':');
      if (parts.size() != k) throw InvalidArgument("coefficient '" + tok + "' needs " + std::to_string(k) + " parts");
      std::vector<std::uint32_t> cs;
      for (const auto& part : parts) {
        long long v = parse_int(part);
        if (v < 0 || v >= p) throw InvalidArgument("coefficient part out of range: " + part);
        cs.push_back(static_cast<std::uint32_t>(v));
      }
      poly.push_back(field.from_coeffs(cs));
    }
    if (poly.size() % 2 != 0 || !(poly.back() == field.one()))
      throw InvalidArgument("f must be monic of odd degree 2g+1 (an even number of coefficients, the last one 1)");
    auto c = zeta::make_curve(spec, std::move(poly));
    if (g >= 0 && c.genus != g)
      throw InvalidArgument("f has genus " + std::to_string(c.genus) + ", --g says " + std::to_string(g));
    return c;
  }
};

json zeros_json(const zeta::ZeroData& zd) {
  json zs = json::array();
  for (const auto& z : zd.zeros)
    zs.push_back({{"re", z.gamma.real()}, {"im", z.gamma.imag()}, {"modulus", std::abs(z.gamma)},
                  {"arg", std::arg(z.gamma)}, {"order", z.order}});
  return zs;
}

// ---- zeta

struct ZetaArgs {
  CurveArgs curve;
  unsigned nmax = 0;
  std::uint64_t budget = std::uint64_t{1} << 16;
};

json cmd_zeta(const ZetaArgs& a, const Sink& sink) {
  json cfg = {{"command", "zeta"}, {"curve", a.curve.config()}, {"nmax", a.nmax}, {"brute_budget", a.budget}};
  auto curve = a.curve.curve();
  auto P = zeta::l_polynomial(curve);
  auto zd = zeta::zero_data(P);
  const unsigned nmax = a.nmax ? a.nmax : static_cast<unsigned>(2 * curve.genus + 2);
  auto pred = zeta::predicted_counts(P, nmax);
  ff::Tower tower(curve.base);
  std::string csv = "n,predicted,enumerated\n";
  json counts = json::array();
  for (unsigned n = 1; n <= nmax; ++n) {
    std::optional<std::uint64_t> e;
    if (std::pow(double(P.q), double(n)) <= double(a.budget)) e = zeta::count_points(curve, n, tower, a.budget);
    counts.push_back({{"n", n}, {"predicted", big(pred[n - 1])}, {"enumerated", e ? json(*e) : json(nullptr)}});
    csv += fmt::format("{},{},{}\n", n, pred[n - 1].str(), e ? std::to_string(*e) : std::string());
  }
  json out = envelope(cfg);
  out["q"] = P.q;
  out["genus"] = curve.genus;
  out["P"] = big_list(P.a);
  out["P_string"] = zeta::to_string(P);
  out["zeros"] = zeros_json(zd);
  out["eigenangles"] = zd.eigenangles;
  out["r_max"] = zd.r_max;
  out["counts"] = counts;
  sink.write(".json", out.dump(2) + "\n");
  sink.write(".csv", csv);
  return out;
}

// ---- mertens

struct MertensArgs {
  CurveArgs curve;
  long xmax = 200;
  long window_start = mertens::kDefaultWindowStart;
  long window_end = mertens::kDefaultWindowEnd;
  long cf_Y = 0;
  double cf_xi_max = 10;
  int cf_points = 101;
};

json cmd_mertens(const MertensArgs& a, const Sink& sink) {
  json cfg = {{"command", "mertens"},        {"curve", a.curve.config()},   {"xmax", a.xmax},
              {"window_start", a.window_start}, {"window_end", a.window_end}, {"cf_Y", a.cf_Y},
              {"cf_xi_max", a.cf_xi_max},     {"cf_points", a.cf_points}};
  if (a.xmax < 0) throw InvalidArgument("--xmax must be nonnegative");
  auto curve = a.curve.curve();
  auto P = zeta::l_polynomial(curve);
  auto zd = zeta::zero_data(P);
  const int r = std::max(zd.r_max, 1);
  const double lq = std::log(double(P.q));
  auto series = mertens::c_mu_rational(P, static_cast<std::size_t>(a.xmax));
  // both columns are M(X) / (X^{r-1} q^{(X+1)/2}), measured and predicted
  std::string csv = "X,c,M,M_normalized,main_term\n";
  double worst_defect = 0;
  for (long X = 0; X <= a.xmax; ++X) {
    const double lx = X > 0 ? std::log(double(X)) : 0.0;
    const double norm = mertens::scaled(series.M[X], (r - 1) * lx + 0.5 * (X + 1) * lq);
    csv += fmt::format("{},{},{},{},{}\n", X, series.c[X].str(), series.M[X].str(), norm,
                       mertens::asymptotic_main_term(P, zd, X) / std::sqrt(double(P.q)));
    if (X >= 1 && X <= 200 && curve.genus >= 1)
      worst_defect = std::max(worst_defect, mertens::residue_defect(P, zd, series.c[X], X));
  }
  auto rep = mertens::growth_report(P, zd, a.window_start, a.window_end);
  json out = envelope(cfg);
  out["q"] = P.q;
  out["genus"] = curve.genus;
  out["P"] = big_list(P.a);
  out["r_max"] = zd.r_max;
  out["D"] = rep.D;
  out["growth"] = {{"B_hat_plus", rep.B_hat_plus}, {"B_hat_minus", rep.B_hat_minus},  {"argmax_X", rep.argmax_X},
                   {"X_start", rep.X_start},       {"X_end", rep.X_end},              {"sharp", rep.sharp},
                   {"strictly_below", rep.strictly_below}, {"window_too_small", rep.window_too_small}};
  if (curve.genus >= 1) {
    out["residue_check"] = {{"max_defect", worst_defect}, {"bound", mertens::residue_bound(P)},
                            {"N_max", std::min<long>(a.xmax, 200)}};
  }
  if (zd.all_simple() && curve.genus >= 1) {
    json terms = json::array();
    for (const auto& t : mertens::cosine_terms(P, zd))
      terms.push_back({{"amplitude", t.amplitude}, {"phase", t.phase}, {"theta", t.theta}});
    out["cosine_terms"] = terms;
  }
  if (a.cf_Y > 0) {
    auto hist = mertens::limiting_histogram(P, zd, a.cf_Y);
    std::string cf = "xi,empirical_re,empirical_im,bessel_product\n";
    double sup = 0;
    for (int i = 0; i < a.cf_points; ++i) {
      const double xi = a.cf_points > 1 ? a.cf_xi_max * i / (a.cf_points - 1) : 0.0;
      const auto e = mertens::empirical_cf(hist.values, xi);
      const double b = mertens::bessel_mu_hat(P, zd, xi);
      sup = std::max(sup, std::abs(e - b));
      cf += fmt::format("{},{},{},{}\n", xi, e.real(), e.imag(), b);
    }
    Sink{sink.dir, sink.name + "_cf"}.write(".csv", cf);
    json h = {{"lo", hist.lo}, {"hi", hist.hi}, {"counts", hist.counts}};
    out["limiting_distribution"] = {{"Y", a.cf_Y}, {"cf_sup_deviation", sup}, {"histogram", h}};
  }
  sink.write(".json", out.dump(2) + "\n");
  sink.write(".csv", csv);
  return out;
}

// ---- li

struct LiArgs {
  CurveArgs curve;
  long H = li::kDefaultHeight;
  unsigned d = li::kDefaultDigits;
};

json li_json(const li::LIReport& rep) {
  json j = {{"verdict", li::to_string(rep.verdict)},
            {"label", rep.label},
            {"H", rep.H},
            {"d", rep.d},
            {"flags",
             {{"repeated_zero", rep.flags.repeated_zero},
              {"angle_zero_or_pi", rep.flags.angle_zero_or_pi},
              {"trace_zero", rep.flags.trace_zero}}}};
  if (rep.certificate)
    j["certificate"] = {{"coeffs", rep.certificate->coeffs},
                        {"residual", rep.certificate->residual},
                        {"verify_residual", rep.certificate->verify_residual}};
  else
    j["certificate"] = nullptr;
  return j;
}

json cmd_li(const LiArgs& a, const Sink& sink) {
  json cfg = {{"command", "li"}, {"curve", a.curve.config()}, {"H", a.H}, {"d", a.d}};
  auto curve = a.curve.curve();
  auto P = zeta::l_polynomial(curve);
  auto zd = zeta::zero_data(P);
  json out = envelope(cfg);
  out["P"] = big_list(P.a);
  out["eigenangles"] = zd.eigenangles;
  out["li"] = li_json(li::li_report(P, zd, a.H, a.d));
  sink.write(".json", out.dump(2) + "\n");
  return out;
}

// ---- family-sweep

struct SweepArgs {
  family::FamilySweepConfig cfg;
  std::string mode = "exhaustive";
  std::string li = "full";
  std::optional<std::uint64_t> seed;
  bool resume = false;
};

json sweep_config(const family::FamilySweepConfig& c) {
  return {{"command", "family-sweep"},
          {"g", c.genus},
          {"p", c.p},
          {"k", c.k},
          {"n", c.n},
          {"mode", family::to_string(c.mode)},
          {"samples", c.samples},
          {"seed", c.seed},
          {"T", c.T},
          {"exhaustive_cap", c.exhaustive_cap},
          {"window_start", c.window_start},
          {"window_end", c.window_end},
          {"li", family::to_string(c.li)},
          {"H", c.H},
          {"d", c.d}};
}

json record_json(const family::SweepRecord& r) {
  return {{"f", r.f},         {"q", r.q},    {"n", r.n},           {"L", big_list(r.L)},
          {"theta", r.theta}, {"D", r.D},    {"phi", opt_num(r.phi)}, {"li", r.li}};
}

family::SweepRecord record_from(const json& j) {
  family::SweepRecord r;
  r.f = j.at("f").get<std::vector<std::uint64_t>>();
  r.q = j.at("q").get<std::uint64_t>();
  r.n = j.at("n").get<std::uint32_t>();
  for (const auto& v : j.at("L")) r.L.push_back(unbig(v));
  r.theta = j.at("theta").get<std::vector<double>>();
  r.D = j.at("D").get<double>();
  if (!j.at("phi").is_null()) r.phi = j.at("phi").get<double>();
  r.li = j.at("li").get<std::string>();
  return r;
}

struct SweepFile {
  json header;
  std::vector<family::SweepRecord> records;
  std::uintmax_t valid_bytes = 0;  // prefix ending after the last complete line
};

SweepFile read_sweep(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Refusal("cannot read " + path.string());
  SweepFile sf;
  std::string line;
  std::uintmax_t offset = 0;
  bool first = true;
  while (std::getline(in, line)) {
    const bool complete = !in.eof();
    if (!complete) break;  // a trailing partial line from an interrupted run
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception&) {
      break;
    }
    if (first) {
      if (!j.contains("run_config")) throw Refusal(path.string() + " has no header line");
      sf.header = j;
      first = false;
    } else {
      sf.records.push_back(record_from(j));
    }
    offset += line.size() + 1;
    sf.valid_bytes = offset;
  }
  if (first) throw Refusal(path.string() + " is empty");
  return sf;
}

json summary_json(const family::SweepSummary& s) {
  return {{"raw_seen", s.raw_seen},
          {"members", s.members},
          {"mean_truncated_D", s.mean_truncated_D},
          {"standard_error", s.standard_error},
          {"li_counts", s.li_counts},
          {"supersingular", s.supersingular},
          {"relation_fraction", s.relation_fraction},
          {"relation_fraction_ordinary", s.relation_fraction_ordinary}};
}

json cmd_sweep(SweepArgs a, const Sink& sink) {
  auto& c = a.cfg;
  if (a.mode == "exhaustive") {
    c.mode = family::Mode::exhaustive;
  } else if (a.mode == "sample") {
    c.mode = family::Mode::sample;
    if (!a.seed) throw InvalidArgument("--seed is required in sample mode");
  } else {
    throw InvalidArgument("--mode must be exhaustive or sample");
  }
  if (a.li == "full") c.li = family::LiMode::full;
  else if (a.li == "structural") c.li = family::LiMode::structural;
  else if (a.li == "none") c.li = family::LiMode::none;
  else throw InvalidArgument("--li must be full, structural or none");
  c.seed = a.seed.value_or(0);

  const json cfg = sweep_config(c);
  const json header = envelope(cfg);
  const fs::path jsonl = sink.path(".jsonl");
  family::SweepAccumulator acc(c.T, c.p);
  family::FamilyEnumerator en(c);
  std::uint64_t start = 0;
  std::ofstream out;
  fs::create_directories(sink.dir);
  if (a.resume && fs::exists(jsonl)) {
    SweepFile sf = read_sweep(jsonl);
    if (sf.header != header) throw Refusal("existing " + jsonl.string() + " was written with a different configuration");
    fs::resize_file(jsonl, sf.valid_bytes);
    for (const auto& r : sf.records) acc.add(r);
    if (!sf.records.empty())
      start = c.mode == family::Mode::sample ? sf.records.size() : en.raw_index_of(sf.records.back().f) + 1;
    out.open(jsonl, std::ios::binary | std::ios::app);
  } else {
    out.open(jsonl, std::ios::binary | std::ios::trunc);
    out << header.dump() << "\n";
  }
  if (!out) throw Refusal("cannot open " + jsonl.string() + " for writing");
  std::uint64_t since_flush = 0;
  const std::uint64_t raw =
      family::run_sweep(c, acc, [&](const family::SweepRecord& r) {
        out << record_json(r).dump() << "\n";
        if (++since_flush % 2048 == 0) out.flush();
      }, start);
  out.close();

  auto s = family::summarize(c, acc, raw);
  json res = envelope(cfg);
  res["summary"] = summary_json(s);
  if (c.genus == 1) res["haar_target"] = rmt::haar_truncated_phi_usp2(c.T);
  sink.write(".json", res.dump(2) + "\n");
  sink.write(".csv", fmt::format("g,q,n,mode,T,members,mean_truncated_D,standard_error,relation_fraction,"
                                 "relation_fraction_ordinary\n{},{},{},{},{},{},{},{},{},{}\n",
                                 c.genus, ff::make_field(c.p, c.k).order(), c.n,
                                 family::to_string(c.mode), c.T, s.members, s.mean_truncated_D, s.standard_error,
                                 s.relation_fraction, s.relation_fraction_ordinary));
  return res;
}

// ---- rmt

struct MomentArgs {
  int N = 1;
  double s = 1;
  std::string theta;
  unsigned workers = 1;
};

json cmd_moment(const MomentArgs& a, const Sink& sink) {
  json cfg = {{"command", "rmt-moment"}, {"N", a.N}, {"s", a.s}, {"theta", a.theta}};
  const auto thetas = parse_doubles(a.theta);
  auto rows = parallel_map<json>(thetas.size(), a.workers, [&](std::size_t i) {
    const double th = thetas[i];
    if (th == 0.0) {
      const double v = rmt::hankel_moment_endpoint(a.N, a.s);
      return json{{"theta", th}, {"exact", v}, {"asymptotic", nullptr}, {"ratio", nullptr}};
    }
    const auto m = rmt::hankel_moment(a.N, a.s, th);
    return json{{"theta", th},       {"exact", m.exact}, {"asymptotic", m.asymptotic}, {"ratio", m.ratio},
                {"nodes", m.nodes},  {"digits", m.digits}, {"condition", m.condition}};
  });
  std::string csv = "N,s,theta,exact,asymptotic,ratio\n";
  for (const auto& r : rows) {
    auto num = [](const json& v) { return v.is_null() ? std::string() : fmt::format("{}", v.get<double>()); };
    csv += fmt::format("{},{},{},{},{},{}\n", a.N, a.s, r["theta"].get<double>(), r["exact"].get<double>(),
                       num(r["asymptotic"]), num(r["ratio"]));
  }
  json out = envelope(cfg);
  out["moments"] = rows;
  sink.write(".json", out.dump(2) + "\n");
  sink.write(".csv", csv);
  return out;
}

struct PhiArgs {
  std::string N = "1";
  double T = 4;
  std::uint64_t samples = 0;
  std::optional<std::uint64_t> seed;
  std::uint64_t burn_in = rmt::ChainParams{}.burn_in;
  std::uint64_t thin = rmt::ChainParams{}.thin;
  bool integral = true;
};

json cmd_phi(const PhiArgs& a, const Sink& sink) {
  json cfg = {{"command", "rmt-phi"}, {"N", a.N},         {"T", a.T},      {"samples", a.samples},
              {"seed", a.seed ? json(*a.seed) : json(nullptr)}, {"burn_in", a.burn_in}, {"thin", a.thin},
              {"integral", a.integral}};
  if (a.samples > 0 && !a.seed) throw InvalidArgument("--seed is required when --samples > 0");
  const double C = rmt::phi_average_constant();
  json rows = json::array();
  std::string csv = "N,I,I_over_N_quarter,constant,mc_truncated,mc_standard_error,truncated_target\n";
  for (int N : parse_ints(a.N)) {
    json r = {{"N", N}};
    std::string I_s, In_s, mc_s, se_s, tgt_s;
    if (a.integral) {
      const double I = rmt::i_of_n(N);
      r["I"] = I;
      r["I_over_N_quarter"] = I / std::pow(N, 0.25);
      I_s = fmt::format("{}", I);
      In_s = fmt::format("{}", I / std::pow(N, 0.25));
    }
    if (a.samples > 0) {
      rmt::ChainParams cp;
      cp.burn_in = a.burn_in;
      cp.thin = a.thin;
      auto e = rmt::mc_phi_truncated(N, a.T, a.samples, *a.seed, cp);
      r["mc"] = {{"mean", e.mean},
                 {"standard_error", e.standard_error},
                 {"samples", e.samples},
                 {"diagnostics",
                  {{"mean_trace", e.diagnostics.mean_trace},
                   {"se_trace", e.diagnostics.se_trace},
                   {"mean_trace_sq", e.diagnostics.mean_trace_sq},
                   {"se_trace_sq", e.diagnostics.se_trace_sq},
                   {"mean_trace_u2", e.diagnostics.mean_trace_u2},
                   {"se_trace_u2", e.diagnostics.se_trace_u2},
                   {"acceptance", e.diagnostics.acceptance},
                   {"warnings", e.diagnostics.warnings}}}};
      mc_s = fmt::format("{}", e.mean);
      se_s = fmt::format("{}", e.standard_error);
      r["truncated_target"] = e.mean;
      r["truncated_target_error"] = e.standard_error;
    }
    if (N == 1) {
      r["truncated_target"] = rmt::haar_truncated_phi_usp2(a.T);
      r["truncated_target_error"] = 0.0;
    }
    if (r.contains("truncated_target")) tgt_s = fmt::format("{}", r["truncated_target"].get<double>());
    csv += fmt::format("{},{},{},{},{},{},{}\n", N, I_s, In_s, C, mc_s, se_s, tgt_s);
    rows.push_back(r);
  }
  json out = envelope(cfg);
  out["constant"] = C;
  out["T"] = a.T;
  out["rows"] = rows;
  sink.write(".json", out.dump(2) + "\n");
  sink.write(".csv", csv);
  return out;
}

struct ProbeArgs {
  std::string N = "4,8,16,24";
  std::string thetas = "0.02,0.05,0.1,0.2,0.5,1,1.5707963267948966,2,2.5,3";
  unsigned workers = 1;
};

json cmd_probe(const ProbeArgs& a, const Sink& sink) {
  json cfg = {{"command", "rmt-probe"}, {"N", a.N}, {"thetas", a.thetas}};
  const auto thetas = parse_doubles(a.thetas);
  json tables = json::array();
  std::string csv = "N,theta,exact,asymptotic,epsilon\n";
  for (int N : parse_ints(a.N)) {
    auto pr = rmt::error_probe(N, thetas, a.workers);
    json rows = json::array();
    csv += fmt::format("{},0,{},,\n", N, pr.f0);
    for (const auto& r : pr.rows) {
      rows.push_back({{"theta", r.theta}, {"exact", r.exact}, {"asymptotic", r.asymptotic}, {"epsilon", r.epsilon}});
      csv += fmt::format("{},{},{},{},{}\n", N, r.theta, r.exact, r.asymptotic, r.epsilon);
    }
    tables.push_back({{"N", N}, {"f0", pr.f0}, {"f0_over_N", pr.f0_over_N}, {"rows", rows}});
  }
  json out = envelope(cfg);
  out["probes"] = tables;
  sink.write(".json", out.dump(2) + "\n");
  sink.write(".csv", csv);
  return out;
}

// ---- compare

struct CompareArgs {
  std::vector<std::string> sweeps;
  std::string rmt;
};

json cmd_compare(const CompareArgs& a, const Sink& sink) {
  json cfg = {{"command", "compare"}, {"sweeps", a.sweeps}, {"rmt", a.rmt}};
  std::ifstream rin(a.rmt, std::ios::binary);
  if (!rin) throw Refusal("cannot read " + a.rmt);
  json rj;
  try {
    rj = json::parse(rin);
  } catch (const json::exception&) {
    throw Refusal(a.rmt + " is not a JSON document");
  }
  if (!rj.contains("rows") || !rj.contains("T")) throw Refusal(a.rmt + " is not rmt-phi output");
  const double T = rj["T"].get<double>();

  struct Row {
    std::uint32_t n;
    double value, se, target, diff;
  };
  std::vector<Row> rows;
  int genus = -1;
  for (const auto& path : a.sweeps) {
    SweepFile sf = read_sweep(path);
    const json& sc = sf.header["run_config"];
    const int g = sc["g"].get<int>();
    if (genus >= 0 && g != genus) throw Refusal("sweeps disagree on g");
    genus = g;
    if (sc["T"].get<double>() != T)
      throw Refusal("T mismatch: sweep " + path + " has T = " + fmt::format("{}", sc["T"].get<double>()) +
                    ", rmt output has T = " + fmt::format("{}", T));
    if (sf.records.empty()) throw Refusal(path + " holds no records");
    std::optional<double> target;
    for (const auto& r : rj["rows"])
      if (r["N"].get<int>() == g && r.contains("truncated_target")) target = r["truncated_target"].get<double>();
    if (!target) throw Refusal("rmt output has no truncated target for N = g = " + std::to_string(g));
    double sum = 0, sq = 0;
    for (const auto& r : sf.records) {
      const double v = r.truncated_D(T);
      sum += v;
      sq += v * v;
    }
    const double m = double(sf.records.size());
    const double mean = sum / m;
    const double se = sc["mode"] == "sample" && m > 1 ? std::sqrt(std::max(0.0, (sq / m - mean * mean) / (m - 1))) : 0.0;
    rows.push_back({sc["n"].get<std::uint32_t>(), mean, se, *target, mean - *target});
  }
  if (rows.empty()) throw Refusal("no sweep files given");
  std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) { return x.n < y.n; });
  bool shrinks = rows.size() > 1;
  for (std::size_t i = 1; i < rows.size(); ++i) shrinks &= std::abs(rows[i].diff) < std::abs(rows[i - 1].diff);
  std::string csv = "n,T,D_bar_T,standard_error,haar_target,difference\n";
  json table = json::array();
  for (const auto& r : rows) {
    csv += fmt::format("{},{},{},{},{},{}\n", r.n, T, r.value, r.se, r.target, r.diff);
    table.push_back({{"n", r.n}, {"T", T}, {"D_bar_T", r.value}, {"standard_error", r.se},
                     {"haar_target", r.target}, {"difference", r.diff}});
  }
  json out = envelope(cfg);
  out["g"] = genus;
  out["table"] = table;
  out["trend"] = shrinks ? "difference-shrinks" : "difference-does-not-shrink";
  sink.write(".json", out.dump(2) + "\n");
  sink.write(".csv", csv);
  return out;
}

std::string default_out_dir() {
  const char* v = std::getenv("FFM_OUT_DIR");
  return v && *v ? v : ".";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Function-field Mertens and random-matrix numerics", "ffm"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  std::string out_dir = default_out_dir();
  std::string name;
  app.add_option("--out", out_dir, "output directory (default $FFM_OUT_DIR or .)");
  app.add_option("--name", name, "base name of output files (default: the subcommand)");

  ZetaArgs za;
  auto* zeta = app.add_subcommand("zeta", "L-polynomial, zeros and point counts of one curve");
  za.curve.add(zeta);
  zeta->add_option("--nmax", za.nmax, "point counts for n = 1..nmax (default 2g+2)");
  zeta->add_option("--brute-budget", za.budget, "enumerate counts while q^n is at most this")->capture_default_str();

  MertensArgs ma;
  auto* mer = app.add_subcommand("mertens", "Moebius coefficients, M(X), growth and limiting distribution");
  ma.curve.add(mer);
  mer->add_option("--xmax", ma.xmax, "last X in the table")->capture_default_str();
  mer->add_option("--window-start", ma.window_start)->capture_default_str();
  mer->add_option("--window-end", ma.window_end)->capture_default_str();
  mer->add_option("--cf-Y", ma.cf_Y, "sample length for the characteristic function (0 skips)")->capture_default_str();
  mer->add_option("--cf-xi-max", ma.cf_xi_max)->capture_default_str();
  mer->add_option("--cf-points", ma.cf_points)->capture_default_str();

  LiArgs la;
  auto* lic = app.add_subcommand("li", "linear independence screen of the zero angles");
  la.curve.add(lic);
  lic->add_option("--H", la.H, "height bound")->capture_default_str();
  lic->add_option("--d", la.d, "digits")->capture_default_str();

  SweepArgs sa;
  unsigned workers = 1;
  auto* sw = app.add_subcommand("family-sweep", "sweep y^2 = f(x) over F_{q^n}");
  sw->add_option("--g", sa.cfg.genus)->capture_default_str();
  sw->add_option("--p", sa.cfg.p)->capture_default_str();
  sw->add_option("--k", sa.cfg.k)->capture_default_str();
  sw->add_option("--n", sa.cfg.n)->capture_default_str();
  sw->add_option("--mode", sa.mode, "exhaustive or sample")->capture_default_str();
  sw->add_option("--samples", sa.cfg.samples)->capture_default_str();
  sw->add_option("--seed", sa.seed);
  sw->add_option("--T", sa.cfg.T)->capture_default_str();
  sw->add_option("--exhaustive-cap", sa.cfg.exhaustive_cap)->capture_default_str();
  sw->add_option("--window-start", sa.cfg.window_start)->capture_default_str();
  sw->add_option("--window-end", sa.cfg.window_end)->capture_default_str();
  sw->add_option("--li", sa.li, "full, structural or none")->capture_default_str();
  sw->add_option("--H", sa.cfg.H)->capture_default_str();
  sw->add_option("--d", sa.cfg.d)->capture_default_str();
  sw->add_flag("--resume", sa.resume, "continue an interrupted sweep file");

  MomentArgs mo;
  auto* rm = app.add_subcommand("rmt-moment", "exact and asymptotic <|Z_U(theta)|^{2s}> on USp(2N)");
  rm->add_option("--N", mo.N)->required();
  rm->add_option("--s", mo.s)->required();
  rm->add_option("--theta", mo.theta, "comma-separated angles; 0 uses the merged endpoint weight")->required();

  PhiArgs pa;
  auto* rp = app.add_subcommand("rmt-phi", "I(N) and Monte Carlo truncated phi averages");
  rp->add_option("--N", pa.N, "comma-separated")->capture_default_str();
  rp->add_option("--T", pa.T)->capture_default_str();
  rp->add_option("--samples", pa.samples, "Monte Carlo samples (0 skips)")->capture_default_str();
  rp->add_option("--seed", pa.seed);
  rp->add_option("--burn-in", pa.burn_in)->capture_default_str();
  rp->add_option("--thin", pa.thin)->capture_default_str();
  rp->add_option("--integral", pa.integral, "evaluate I(N)")->capture_default_str();

  ProbeArgs pr;
  auto* rpr = app.add_subcommand("rmt-probe", "error term of the moment asymptotic and f_N(0)");
  rpr->add_option("--N", pr.N)->capture_default_str();
  rpr->add_option("--thetas", pr.thetas)->capture_default_str();

  CompareArgs ca;
  auto* cmp = app.add_subcommand("compare", "family sweeps against the Haar target");
  cmp->add_option("--sweep", ca.sweeps, "family-sweep .jsonl files")->required();
  cmp->add_option("--rmt", ca.rmt, "rmt-phi .json file")->required();

  for (auto* sc : {sw, rm, rpr}) sc->add_option("--workers", workers, "worker threads")->capture_default_str();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (dynamic_cast<const CLI::CallForVersion*>(&e) ? std::string(kVersion) + "\n" : app.help());
      return kExitOk;
    }
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    json result;
    auto sink = [&](const std::string& cmd) { return Sink{out_dir, name.empty() ? cmd : name}; };
    if (zeta->parsed()) result = cmd_zeta(za, sink("zeta"));
    else if (mer->parsed()) result = cmd_mertens(ma, sink("mertens"));
    else if (lic->parsed()) result = cmd_li(la, sink("li"));
    else if (sw->parsed()) {
      sa.cfg.workers = workers;
      result = cmd_sweep(sa, sink("family-sweep"));
    } else if (rm->parsed()) {
      mo.workers = workers;
      result = cmd_moment(mo, sink("rmt-moment"));
    } else if (rp->parsed()) result = cmd_phi(pa, sink("rmt-phi"));
    else if (rpr->parsed()) {
      pr.workers = workers;
      result = cmd_probe(pr, sink("rmt-probe"));
    } else if (cmp->parsed()) result = cmd_compare(ca, sink("compare"));
    out << result.dump(2) << "\n";
    return kExitOk;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Refusal& e) {
    err << "refused: " << e.what() << "\n";
    return kExitRefusal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace ffm::cli
