#pragma once

#include <json.hpp>

#include "horokit/certificate.hpp"
#include "horokit/parabolic.hpp"
#include "horokit/schedule.hpp"

namespace horokit {

using nlohmann::json;

inline json qvec_to_json(const QVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rational_to_string(x));
  return a;
}

inline QVec qvec_from_json(const json& a) {
  QVec v;
  for (const auto& x : a) v.push_back(rational_from_string(x.get<std::string>()));
  return v;
}

inline json pbw_to_json(const PbwElement& e) {
  json terms = json::array();
  for (const auto& [m, c] : e.terms) {
    json t;
    t["e"] = std::vector<int>(m.begin(), m.end());
    t["c"] = rational_to_string(c);
    terms.push_back(t);
  }
  return json{{"terms", terms}};
}

inline PbwElement pbw_from_json(const json& j, int dim) {
  PbwElement e{dim, {}};
  for (const auto& t : j.at("terms")) {
    auto exps = t.at("e").get<std::vector<int>>();
    if (static_cast<int>(exps.size()) != dim)
      throw argument_error("pbw_from_json: exponent vector has wrong length");
    Monomial m(exps.begin(), exps.end());
    e.add_term(m, rational_from_string(t.at("c").get<std::string>()));
  }
  return e;
}

inline json algebra_to_json(const LieAlgebraData& g) {
  json j;
  j["type"] = "sl";
  j["n"] = g.n;
  j["dim"] = g.dim;
  j["basis"] = g.basis_labels;
  json brackets = json::array();
  for (int a = 0; a < g.dim; ++a)
    for (int b = 0; b < g.dim; ++b)
      for (const auto& [c, v] : g.bracket(a, b))
        brackets.push_back(json{{"a", a}, {"b", b}, {"c", c}, {"v", rational_to_string(v)}});
  j["structure_constants"] = brackets;
  json theta = json::array(), killing = json::array();
  for (int a = 0; a < g.dim; ++a) {
    theta.push_back(qvec_to_json(g.theta[a]));
    killing.push_back(qvec_to_json(g.killing[a]));
  }
  j["theta"] = theta;
  j["killing"] = killing;
  return j;
}

/// Round-trip import: rebuilds the algebra from n and checks every table in
/// the file against the reconstruction, so a tampered export cannot load.
inline LieAlgebraData algebra_from_json(const json& j) {
  if (j.at("type").get<std::string>() != "sl")
    throw argument_error("algebra_from_json: unsupported type");
  LieAlgebraData g = build_split_sl(j.at("n").get<int>());
  if (j.at("dim").get<int>() != g.dim) throw argument_error("algebra_from_json: dim mismatch");
  if (j.at("basis").get<std::vector<std::string>>() != g.basis_labels)
    throw argument_error("algebra_from_json: basis labels mismatch");
  std::size_t nnz = 0;
  for (const auto& e : j.at("structure_constants")) {
    int a = e.at("a").get<int>(), b = e.at("b").get<int>(), c = e.at("c").get<int>();
    Rational v = rational_from_string(e.at("v").get<std::string>());
    bool found = false;
    for (const auto& [cc, vv] : g.bracket(a, b)) found = found || (cc == c && vv == v);
    if (!found) throw argument_error("algebra_from_json: structure constant mismatch");
    ++nnz;
  }
  std::size_t expected = 0;
  for (int a = 0; a < g.dim; ++a)
    for (int b = 0; b < g.dim; ++b) expected += g.bracket(a, b).size();
  if (nnz != expected) throw argument_error("algebra_from_json: structure constants missing");
  for (int a = 0; a < g.dim; ++a) {
    if (qvec_from_json(j.at("theta").at(a)) != g.theta[a])
      throw argument_error("algebra_from_json: theta mismatch");
    if (qvec_from_json(j.at("killing").at(a)) != g.killing[a])
      throw argument_error("algebra_from_json: killing form mismatch");
  }
  return g;
}

inline json parabolic_to_json(const ParabolicData& p, const RestrictedRootSystem& rs) {
  json j;
  j["subset_F"] = p.subset_F;
  json ab = json::array();
  for (const auto& v : p.a_basis_diag) ab.push_back(qvec_to_json(v));
  j["a_basis_diag"] = ab;
  json nb = json::array();
  for (int k : p.n_basis) nb.push_back(rs.alg.basis_labels[k]);
  j["n_basis"] = nb;
  json mb = json::array();
  for (const auto& v : p.m_basis) mb.push_back(qvec_to_json(v));
  j["m_basis"] = mb;
  j["rho"] = qvec_to_json(p.rho);
  json w = json::array();
  for (const auto& v : p.weights) w.push_back(qvec_to_json(v));
  j["weights"] = w;
  return j;
}

inline json certificate_to_json(const LieIdentityCertificate& cert) {
  json j;
  j["version"] = 1;
  j["algebra"] = json{{"type", "sl"}, {"n", cert.n}};
  j["H"] = qvec_to_json(cert.H.diag);
  j["W_H"] = cert.W_H;
  j["weyl_order"] = cert.weyl_order;
  j["wall_set"] = cert.wall_set;
  json jj = json::array(), zz = json::array(), uu = json::array();
  for (const auto& e : cert.J) jj.push_back(pbw_to_json(e));
  for (const auto& e : cert.Z) zz.push_back(pbw_to_json(e));
  for (const auto& e : cert.U) uu.push_back(pbw_to_json(e));
  j["J"] = jj;
  j["Z"] = zz;
  j["U"] = uu;
  json coords = json::array();
  for (const auto& v : cert.z_center_coords) coords.push_back(qvec_to_json(v));
  j["z_center_coords"] = coords;
  j["casimir_exponents"] = cert.casimir_exponents;
  j["P"] = pbw_to_json(cert.P);
  j["verified"] = cert.verified;
  return j;
}

inline LieIdentityCertificate certificate_from_json(const json& j) {
  LieIdentityCertificate cert;
  cert.n = j.at("algebra").at("n").get<int>();
  int dim = cert.n * cert.n - 1;
  cert.H = ChamberVector::from_diag(qvec_from_json(j.at("H")));
  cert.W_H = j.at("W_H").get<int>();
  cert.weyl_order = j.at("weyl_order").get<int>();
  cert.wall_set = j.at("wall_set").get<std::vector<int>>();
  for (const auto& e : j.at("J")) cert.J.push_back(pbw_from_json(e, dim));
  for (const auto& e : j.at("Z")) cert.Z.push_back(pbw_from_json(e, dim));
  for (const auto& e : j.at("U")) cert.U.push_back(pbw_from_json(e, dim));
  for (const auto& v : j.at("z_center_coords")) cert.z_center_coords.push_back(qvec_from_json(v));
  cert.casimir_exponents = j.at("casimir_exponents").get<std::vector<std::vector<int>>>();
  cert.P = pbw_from_json(j.at("P"), dim);
  cert.verified = j.at("verified").get<bool>();
  return cert;
}

inline json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

inline json exp_poly_to_json(const ExpPoly& p) {
  json terms = json::array();
  for (const auto& t : p.terms())
    terms.push_back(json{{"k", t.k}, {"mu", complex_to_json(t.mu)}, {"c", complex_to_json(t.c)}});
  return json{{"terms", terms}};
}

inline json exp_poly2_to_json(const ExpPoly2& p) {
  json terms = json::array();
  for (const auto& t : p.terms())
    terms.push_back(json{{"a", t.a},
                         {"b", t.b},
                         {"mu", complex_to_json(t.mu)},
                         {"nu", complex_to_json(t.nu)},
                         {"c", complex_to_json(t.c)}});
  return json{{"terms", terms}};
}

inline json kernel_to_json(const PiecewiseKernel2& k) {
  return json{{"lower", exp_poly2_to_json(k.lower)}, {"upper", exp_poly2_to_json(k.upper)}};
}

inline json burger2_to_json(const Burger2Kernels& ker) {
  json j;
  j["alpha"] = rational_to_string(ker.schedule.alpha);
  j["eta"] = rational_to_string(ker.schedule.eta);
  j["case"] = ker.schedule.case_id;
  j["k0"] = ker.schedule.k0;
  json lam = json::array();
  for (const auto& l : ker.lambda) lam.push_back(complex_to_json(l));
  j["lambda"] = lam;
  j["weights"] = ker.weights;
  json cs = json::array();
  for (std::size_t k = 0; k < ker.C.size(); ++k)
    cs.push_back(json{{"word", ker.c_words[k]}, {"kernel", kernel_to_json(ker.C[k])}});
  j["C"] = cs;
  json ds = json::array();
  for (std::size_t w = 0; w < ker.D.size(); ++w) {
    json di = json::array();
    for (const auto& d : ker.D[w]) di.push_back(exp_poly_to_json(d));
    ds.push_back(json{{"word", ker.d_words[w]}, {"boundary", di}});
  }
  j["D"] = ds;
  return j;
}

inline json burger1_to_json(const LambdaSpec& spec, const Burger1Kernels& ker) {
  json j;
  json lm = json::array(), lp = json::array();
  for (const auto& l : spec.lambda_minus) lm.push_back(complex_to_json(l));
  for (const auto& l : spec.lambda_plus) lp.push_back(complex_to_json(l));
  j["lambda_minus"] = lm;
  j["lambda_plus"] = lp;
  j["beta"] = spec.beta;
  j["F"] = kernel_to_json(ker.F);
  json fi = json::array();
  for (const auto& f : ker.Fi) fi.push_back(exp_poly_to_json(f));
  j["Fi"] = fi;
  return j;
}

}  // namespace horokit
