#include "lembed/report.hpp"

#include <openssl/evp.h>

#include <iomanip>
#include <sstream>

namespace lembed::report {

json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw std::invalid_argument("expected a rational string, got " + j.dump());
}

namespace {

json rationals(std::span<const Rational> xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(to_json(x));
  return a;
}

json point_list(const std::map<Rational, PointRecord>& pts) {
  json a = json::array();
  for (const auto& [x, rec] : pts) {
    json p = to_json(rec.witness);
    p["x"] = to_json(x);
    p["depth"] = rec.depth;
    a.push_back(std::move(p));
  }
  return a;
}

const char* cmp_symbol(Cmp c) { return c == Cmp::Lt ? "<" : (c == Cmp::Le ? "<=" : "="); }

}  // namespace

json to_json(const Witness& w) {
  json steps = json::array();
  for (const auto& s : w.steps) steps.push_back(s.name());
  return {{"witness", steps}, {"signature", w.signature}};
}

json to_json(const ConstrainedSets& s) {
  json co = json::array();
  for (const auto& c : s.coincidences) {
    co.push_back({{"set", c.set == Seed::Zero ? "P" : "Q"},
                  {"x", to_json(c.point)},
                  {"canonical", to_json(c.canonical)},
                  {"other", to_json(c.other)}});
  }
  return {{"P", point_list(s.p_points)},
          {"Q", point_list(s.q_points)},
          {"coincidences", co},
          {"relation", to_string(s.relation)},
          {"exceptionFlag", s.exception_flag},
          {"maxDepth", s.max_depth},
          {"depthReached", s.depth_reached},
          {"complete", s.complete},
          {"boundaryStarts", rationals(s.boundary_starts)}};
}

json to_json(const Constraint& c) {
  return {{"origin", to_string(c.origin)},
          {"points", rationals(c.points)},
          {"coeffs", {{"d", c.lhs.d_coeffs}, {"a", c.lhs.a_coeff}, {"constant", to_json(c.lhs.constant)}}},
          {"relation", cmp_symbol(c.cmp)}};
}

json to_json(const ConstraintSystem& s) {
  json nec = json::array(), con = json::array();
  for (const auto& c : s.necessary) nec.push_back(to_json(c));
  for (const auto& c : s.construction) con.push_back(to_json(c));
  return {{"necessary", nec}, {"construction", con}};
}

json to_json(const FeasibilityOutcome& o) {
  json j = {{"status", to_string(o.status)}, {"tier", to_string(o.tier)}};
  if (o.witness_d) j["witness"]["d"] = rationals(*o.witness_d);
  if (o.witness_a) j["witness"]["a"] = to_json(*o.witness_a);
  if (!o.certificate.empty()) {
    json cert = json::array();
    for (const auto& e : o.certificate)
      cert.push_back({{"constraint", e.constraint}, {"origin", to_string(e.origin)}, {"multiplier", to_json(e.multiplier)}});
    j["certificate"] = cert;
  }
  return j;
}

json to_json(const ValidationReport& v) {
  json viol = json::array();
  for (const auto& x : v.violations) {
    json e = {{"message", x.message}};
    if (x.x) e["x"] = to_json(*x.x);
    viol.push_back(std::move(e));
  }
  json j = {{"ok", v.ok}, {"violations", viol}};
  if (v.ok) j["epsilon"] = to_json(v.epsilon);
  return j;
}

json to_json(const VerificationReport& v) {
  json mm = json::array();
  for (const auto& m : v.mismatches)
    mm.push_back({{"x", to_json(m.x)}, {"y", to_json(m.y)}, {"wLevel", m.w_level}, {"piLevel", m.pi_level}});
  return {{"gridResolution", v.grid_resolution},
          {"pairsChecked", v.pairs_checked},
          {"mismatchCount", v.mismatch_count},
          {"mismatchRate", to_json(v.mismatch_rate)},
          {"mismatches", mm}};
}

json to_json(const GraphStats& s) {
  json j = {{"edgeDensity", s.edge_density}, {"degreeHistogram", s.degree_histogram}};
  if (s.triangle_density) {
    j["triangleDensity"] = *s.triangle_density;
    j["triangles"] = s.triangles;
  }
  return j;
}

json to_json(const Embedding& e) {
  json bps = json::array();
  json prov = json::array();
  for (std::size_t i = 0; i < e.breakpoints.size(); ++i) {
    bps.push_back({to_json(e.breakpoints[i].x), to_json(e.breakpoints[i].y)});
    prov.push_back(to_string(e.provenance[i]));
  }
  return {{"thresholds", rationals(e.thresholds)},
          {"pi1", to_json(e.pi1)},
          {"breakpoints", bps},
          {"provenance", prov},
          {"approximate", e.approximate}};
}

Embedding embedding_from_json(const json& j) {
  try {
    std::vector<Rational> thresholds;
    for (const auto& t : j.at("thresholds")) thresholds.push_back(rational_from_json(t));
    std::vector<Breakpoint> bps;
    for (const auto& b : j.at("breakpoints")) {
      if (!b.is_array() || b.size() != 2) throw std::invalid_argument("breakpoint must be an [x, y] pair");
      bps.push_back({rational_from_json(b[0]), rational_from_json(b[1])});
    }
    std::vector<BreakpointKind> prov;
    if (j.contains("provenance")) {
      for (const auto& p : j.at("provenance")) {
        const auto s = p.get<std::string>();
        if (s == "CONSTRAINED_P") prov.push_back(BreakpointKind::ConstrainedP);
        else if (s == "CONSTRAINED_Q") prov.push_back(BreakpointKind::ConstrainedQ);
        else if (s == "INTERPOLATED") prov.push_back(BreakpointKind::Interpolated);
        else throw std::invalid_argument("unknown provenance tag " + s);
      }
    }
    Embedding e = make_embedding(std::move(thresholds), std::move(bps), std::move(prov));
    if (j.contains("pi1") && rational_from_json(j.at("pi1")) != e.pi1)
      throw std::invalid_argument("pi1 does not match the last breakpoint");
    e.approximate = j.value("approximate", false);
    return e;
  } catch (const json::exception& ex) {
    throw std::invalid_argument(std::string("malformed embedding: ") + ex.what());
  }
}

std::string format(const Constraint& c) {
  std::string out;
  auto term = [&](std::int64_t k, const std::string& var) {
    if (k == 0) return;
    if (out.empty()) out += k < 0 ? "-" : "";
    else out += k < 0 ? " - " : " + ";
    const auto mag = k < 0 ? -k : k;
    if (mag != 1) out += std::to_string(mag) + " ";
    out += var;
  };
  for (std::size_t i = 0; i < c.lhs.d_coeffs.size(); ++i) term(c.lhs.d_coeffs[i], "d" + std::to_string(i + 1));
  term(c.lhs.a_coeff, "a");
  if (!c.lhs.constant.is_zero() || out.empty()) {
    const Rational& k = c.lhs.constant;
    if (out.empty()) out = k.str();
    else out += (k.sign() < 0 ? " - " : " + ") + abs(k).str();
  }
  return out + " " + cmp_symbol(c.cmp) + " 0";
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return os.str();
}

}  // namespace lembed::report
