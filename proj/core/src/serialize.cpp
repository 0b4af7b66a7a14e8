#include "limset/serialize.hpp"

#include <cstdio>
#include <sstream>

#include "limset/errors.hpp"

namespace limset {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Json rat_to_json(const Rat& x) { return rat_str(x); }

Rat rat_from_json(const Json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long long>());
  throw DomainError("expected a rational as \"num/den\" or integer");
}

Json family_to_json(const TargetFamily& f) {
  Json j;
  j["kind"] = f.kind_name();
  j["m"] = f.m;
  switch (f.kind) {
    case TargetFamily::Kind::Inhomogeneous: {
      Json y = Json::array();
      for (const Rat& c : f.shift) y.push_back(rat_to_json(c));
      j["y"] = y;
      break;
    }
    case TargetFamily::Kind::Congruence:
      j["residues"] = f.residues;
      j["modulus"] = f.modulus;
      break;
    case TargetFamily::Kind::Custom: {
      Json table = Json::object();
      for (const auto& [d, pts] : f.table) {
        Json rows = Json::array();
        for (const Point& p : pts) {
          Json row = Json::array();
          for (const Rat& c : p) row.push_back(rat_to_json(c));
          rows.push_back(row);
        }
        table[std::to_string(d)] = rows;
      }
      j["table"] = table;
      break;
    }
    default:
      break;
  }
  return j;
}

TargetFamily family_from_json(const Json& j) {
  if (!j.is_object()) throw DomainError("family: expected an object");
  std::string kind = j.contains("kind") ? j.at("kind").get<std::string>()
                                        : (j.contains("table") ? "custom" : "full_lattice");
  int m = j.contains("m") ? j.at("m").get<int>() : 1;
  if (kind == "full_lattice") return TargetFamily::full_lattice(m);
  if (kind == "reduced") return TargetFamily::reduced(m);
  if (kind == "half_cube") return TargetFamily::half_cube(m);
  if (kind == "alternating_half") return TargetFamily::alternating_half();
  if (kind == "inhomogeneous") {
    std::vector<Rat> y;
    for (const Json& c : j.at("y")) y.push_back(rat_from_json(c));
    return TargetFamily::inhomogeneous(std::move(y));
  }
  if (kind == "congruence") {
    IntVec residues = j.at("residues").get<IntVec>();
    long long modulus = j.at("modulus").get<long long>();
    return TargetFamily::congruence(std::move(residues), modulus);
  }
  if (kind == "custom") {
    std::map<long long, std::vector<Point>> table;
    for (const auto& [key, rows] : j.at("table").items()) {
      long long d = std::stoll(key);
      std::vector<Point> pts;
      for (const Json& row : rows) {
        Point p;
        for (const Json& c : row) p.push_back(rat_from_json(c));
        pts.push_back(std::move(p));
      }
      table[d] = std::move(pts);
    }
    return TargetFamily::custom(m, std::move(table));
  }
  throw DomainError("family: unknown kind '" + kind + "'");
}

namespace {

Json power_law_to_json(const PowerLaw& g) {
  Json j;
  j["coeff"] = rat_to_json(g.coeff);
  j["tau"] = g.tau;
  return j;
}

PowerLaw power_law_from_json(const Json& j) {
  PowerLaw g;
  g.coeff = rat_from_json(j.at("coeff"));
  g.tau = j.contains("tau") ? j.at("tau").get<unsigned>() : 0u;
  return g;
}

}  // namespace

Json psi_to_json(const ApproxFunction& f) {
  Json j;
  j["kind"] = f.kind_name();
  j["n"] = f.dim();
  using K = ApproxFunction::Kind;
  switch (f.kind()) {
    case K::FiniteSupport: {
      Json entries = Json::array();
      for (const auto& [q, v] : f.table()) {
        Json e;
        e["q"] = q;
        e["value"] = rat_to_json(v);
        entries.push_back(e);
      }
      j["entries"] = entries;
      break;
    }
    case K::Univariate:
      j.update(power_law_to_json(f.rule()));
      break;
    case K::Ray:
      j["direction"] = f.direction();
      j.update(power_law_to_json(f.rule()));
      break;
    case K::AlternatingAxes:
      j.update(power_law_to_json(f.rule()));
      break;
    case K::EntrywiseMask:
      j["base"] = psi_to_json(f.base());
      j["residues"] = f.mask_residues();
      j["moduli"] = f.mask_moduli();
      j["scale"] = rat_to_json(f.factor());
      break;
    case K::GcdClassMask:
      j["base"] = psi_to_json(f.base());
      j["modulus"] = f.gcd_modulus();
      j["residue"] = f.gcd_residue();
      break;
    case K::ChowTechnau: {
      Json alphas = Json::array(), gammas = Json::array();
      for (const Rat& a : f.alphas()) alphas.push_back(rat_to_json(a));
      for (const Rat& g : f.gammas()) gammas.push_back(rat_to_json(g));
      j["alphas"] = alphas;
      j["gammas"] = gammas;
      j.update(power_law_to_json(f.rule()));
      break;
    }
    case K::Scaled:
      j["base"] = psi_to_json(f.base());
      j["factor"] = rat_to_json(f.factor());
      break;
  }
  return j;
}

ApproxFunction psi_from_json(const Json& j) {
  if (!j.is_object()) throw DomainError("psi: expected an object");
  std::string kind = j.contains("kind")
                         ? j.at("kind").get<std::string>()
                         : (j.contains("entries") ? "finite_support" : "univariate");
  if (kind == "finite_support") {
    int n = j.at("n").get<int>();
    std::map<IntVec, Rat> table;
    for (const Json& e : j.at("entries")) {
      table[e.at("q").get<IntVec>()] = rat_from_json(e.at("value"));
    }
    return ApproxFunction::finite_support(n, std::move(table));
  }
  if (kind == "univariate" || kind == "power_law") {
    return ApproxFunction::univariate(j.at("n").get<int>(), power_law_from_json(j));
  }
  if (kind == "supported_on_ray" || kind == "ray") {
    return ApproxFunction::ray(j.at("direction").get<IntVec>(), power_law_from_json(j));
  }
  if (kind == "alternating_axes") {
    return ApproxFunction::alternating_axes(power_law_from_json(j));
  }
  if (kind == "entrywise_mask") {
    Rat scale = j.contains("scale") ? rat_from_json(j.at("scale")) : Rat(1);
    return ApproxFunction::entrywise_mask(psi_from_json(j.at("base")),
                                          j.at("residues").get<IntVec>(),
                                          j.at("moduli").get<IntVec>(), scale);
  }
  if (kind == "nrs_masked") {
    return ApproxFunction::gcd_class_mask(psi_from_json(j.at("base")),
                                          j.at("modulus").get<long long>(),
                                          j.at("residue").get<long long>());
  }
  if (kind == "chow_technau") {
    std::vector<Rat> alphas, gammas;
    for (const Json& a : j.at("alphas")) alphas.push_back(rat_from_json(a));
    for (const Json& g : j.at("gammas")) gammas.push_back(rat_from_json(g));
    return ApproxFunction::chow_technau(j.at("n").get<int>(), std::move(alphas),
                                        std::move(gammas), power_law_from_json(j));
  }
  if (kind == "scaled") {
    return ApproxFunction::scaled(psi_from_json(j.at("base")),
                                  rat_from_json(j.at("factor")));
  }
  throw DomainError("psi: unknown kind '" + kind + "'");
}

ApproxFunction psi_from_json_text(const std::string& text) {
  return psi_from_json(Json::parse(text));
}

Json mc_to_json(const McEstimate& e) {
  Json j;
  j["estimate"] = e.estimate;
  j["half_width"] = e.half_width;
  j["samples"] = e.samples;
  j["seed"] = e.seed;
  return j;
}

Json profile_to_json(const TailProfile& p) {
  Json stages = Json::array();
  for (const TailStage& s : p.stages) {
    Json j = mc_to_json(s.estimate);
    j["Q0"] = s.window.q0;
    j["Q1"] = s.window.q1;
    stages.push_back(j);
  }
  Json j;
  j["stages"] = stages;
  j["plateau"] = p.plateau();
  return j;
}

std::string profile_to_csv(const TailProfile& p) {
  std::ostringstream out;
  out << "Q0,Q1,estimate,half_width,samples,seed\n";
  for (const TailStage& s : p.stages) {
    out << s.window.q0 << ',' << s.window.q1 << ',' << format_double(s.estimate.estimate)
        << ',' << format_double(s.estimate.half_width) << ',' << s.estimate.samples << ','
        << s.estimate.seed << '\n';
  }
  return out.str();
}

Json transform_to_json(const TransformResult& t) {
  Json rows = Json::array();
  for (const auto& [d, e] : t.values) {
    Json r;
    r["d"] = d;
    r["value_pow_m"] = rat_to_json(e.sum_pow_m);
    r["status"] = transform_status_name(e.status);
    if (e.status == TransformStatus::TailBounded) r["tail_bound"] = rat_to_json(e.tail_bound);
    rows.push_back(r);
  }
  Json j;
  j["Q"] = t.Q;
  j["m"] = t.m;
  j["values"] = rows;
  return j;
}

std::string transform_to_csv(const TransformResult& t) {
  std::ostringstream out;
  out << "d,value_pow_m,status\n";
  for (const auto& [d, e] : t.values) {
    out << d << ',' << rat_str(e.sum_pow_m) << ',' << transform_status_name(e.status)
        << '\n';
  }
  return out.str();
}

Json series_to_json(const SeriesResult& s, SeriesKind kind) {
  Json j;
  j["kind"] = series_kind_name(kind);
  j["partial"] = rat_to_json(s.partial);
  j["partial_approx"] = to_double(s.partial);
  j["limit"] = s.limit;
  j["tag"] = convergence_tag_name(s.tag);
  return j;
}

Json qia_to_json(const QiaReport& r) {
  Json rows = Json::array();
  for (const QiaRow& row : r.rows) {
    Json j;
    j["D"] = row.D;
    j["S"] = rat_to_json(row.sum_measures);
    j["nonpar"] = rat_to_json(row.non_parallel);
    j["par"] = rat_to_json(row.parallel);
    if (row.ratio_exact) j["ratio_exact"] = rat_to_json(*row.ratio_exact);
    j["ratio"] = row.ratio;
    if (row.fallback_pairs > 0) {
      j["fallback_pairs"] = row.fallback_pairs;
      j["fallback_sum"] = row.fallback_sum;
    }
    rows.push_back(j);
  }
  Json j;
  j["H"] = r.H;
  j["truncated"] = r.truncated;
  j["rows"] = rows;
  if (r.c_min) j["C_min"] = *r.c_min;
  return j;
}

std::string qia_to_csv(const QiaReport& r) {
  std::ostringstream out;
  out << "D,S,nonpar,par,ratio\n";
  for (const QiaRow& row : r.rows) {
    out << row.D << ',' << rat_str(row.sum_measures) << ',' << rat_str(row.non_parallel)
        << ',' << rat_str(row.parallel) << ',' << format_double(row.ratio) << '\n';
  }
  return out.str();
}

Json spread_to_json(const SpreadReport& r) {
  Json verdicts = Json::array();
  for (const SpreadVerdict& v : r.verdicts) {
    Json j;
    j["d"] = v.d;
    j["count"] = v.count;
    j["gap"] = v.gap ? rat_to_json(*v.gap) : Json("inf");
    j["verdict"] = v.gap ? (v.uniformly_discrete ? "uniformly_discrete" : "degenerate")
                         : "singleton";
    verdicts.push_back(j);
  }
  Json j;
  j["m"] = r.m;
  j["b_min"] = r.b_min ? rat_to_json(*r.b_min) : Json("inf");
  j["a_max_pow_m"] = r.a_max_pow_m ? rat_to_json(*r.a_max_pow_m) : Json("inf");
  j["a_max_approx"] = r.a_max_approx();
  j["c_used"] = rat_to_json(r.c_used);
  j["verdicts"] = verdicts;
  return j;
}

Json cassels_to_json(const CasselsReport& r) {
  Json profiles = Json::array();
  for (const auto& [factor, profile] : r.profiles) {
    Json j;
    j["factor"] = rat_to_json(factor);
    j["profile"] = profile_to_json(profile);
    profiles.push_back(j);
  }
  Json j;
  j["profiles"] = profiles;
  j["max_plateau_gap"] = r.max_plateau_gap;
  return j;
}

Json bootstrap_to_json(const BootstrapReport& r) {
  Json j;
  j["Q_list"] = r.Q_list;
  j["truncated_radii"] = r.truncated_radii;
  Json transforms = Json::object();
  for (const auto& [Q, t] : r.transforms) transforms[std::to_string(Q)] = transform_to_json(t);
  j["transforms"] = transforms;
  Json one = Json::object();
  for (const auto& [Q, p] : r.one_by_m) one[std::to_string(Q)] = profile_to_json(p);
  j["one_by_m"] = one;
  j["n_by_m"] = profile_to_json(r.n_by_m);
  j["qia"] = qia_to_json(r.qia);
  return j;
}

}  // namespace limset
