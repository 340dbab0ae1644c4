#include "ffm/li/li.hpp"

namespace ffm::li {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::fails_structural: return "fails-structural";
    case Verdict::relation_found: return "relation-found";
    case Verdict::no_relation_found: return "no-relation-found";
  }
  return "unknown";
}

StructuralFlags structural_li_screen(const zeta::LPolynomial& P, const zeta::ZeroData& zd) {
  StructuralFlags f;
  f.repeated_zero = zd.r_max > 1;
  f.angle_zero_or_pi = zd.has_real_zero();
  f.trace_zero = P.a.size() > 1 && P.a[1] == 0;
  return f;
}

LIReport li_screen_report(const zeta::LPolynomial& P, const zeta::ZeroData& zd) {
  LIReport rep;
  rep.flags = structural_li_screen(P, zd);
  rep.verdict = rep.flags.fails() ? Verdict::fails_structural : Verdict::no_relation_found;
  rep.H = 0;
  rep.d = 0;
  rep.label = rep.flags.fails() ? "LI fails (exact structural check)" : "passes structural screen; no search run";
  return rep;
}

LIReport li_report(const zeta::LPolynomial& P, const zeta::ZeroData& zd, long H, unsigned d) {
  LIReport rep;
  rep.H = H;
  rep.d = d;
  rep.flags = structural_li_screen(P, zd);
  if (rep.flags.fails()) {
    rep.verdict = Verdict::fails_structural;
    rep.label = rep.flags.repeated_zero ? "LI fails: repeated inverse zero" : "LI fails: eigenangle 0 or pi";
    return rep;
  }
  if (!zd.eigenangles.empty()) rep.certificate = find_relation(CurveAngles{&zd}, H, d);
  if (rep.certificate) {
    rep.verdict = Verdict::relation_found;
    rep.label = "LI fails: integer relation found";
  } else {
    rep.verdict = Verdict::no_relation_found;
    rep.label = "LI plausible up to (H=" + std::to_string(H) + ", d=" + std::to_string(d) + ")";
  }
  return rep;
}

}  // namespace ffm::li
