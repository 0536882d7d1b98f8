#include "zpreal/verify.hpp"

#include <algorithm>
#include <cmath>

namespace zpreal {

Report check_projectors(const ZeroPoleData& d, double tol) {
  const LogDerivativeResidues res = log_derivative_residues(d);
  double trace_p = 0.0, trace_n = 0.0, idem_p = 0.0, idem_n = 0.0;
  Matrix sum(d.k, d.k);
  auto trace = [](const Matrix& m) {
    Complex t = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
  };
  for (const auto& P : res.at_poles) {
    trace_p = std::max(trace_p, std::abs(trace(P) + 1.0));
    idem_p = std::max(idem_p, frobenius_norm(P * P + P) / std::max(1.0, frobenius_norm(P)));
    sum += P;
  }
  for (const auto& P : res.at_zeros) {
    trace_n = std::max(trace_n, std::abs(trace(P) - 1.0));
    idem_n = std::max(idem_n, frobenius_norm(P * P - P) / std::max(1.0, frobenius_norm(P)));
    sum += P;
  }
  Report r;
  r.add("pole_projector_trace", trace_p, tol);
  r.add("zero_projector_trace", trace_n, tol);
  r.add("pole_projector_idempotent", idem_p, tol);
  r.add("zero_projector_idempotent", idem_n, tol);
  r.add("projector_sum", frobenius_norm(sum), tol);
  return r;
}

Report check_representations(const RealizationBundle& b, std::size_t count, double tol) {
  const ZeroPoleData& d = b.data;
  const auto pts = sample_points(d, 2 * count);
  double indiv = 0.0, joint_r = 0.0, joint_l = 0.0, hyb_r = 0.0, hyb_l = 0.0;
  for (const auto& z : pts) {
    const Matrix R = additive_eval_R(d, z), Ri = additive_eval_Rinv(d, z);
    indiv = std::max({indiv, relative_residual(eval_R(b, z), R), relative_residual(eval_R_left(b, z), R),
                      relative_residual(eval_Rinv(b, z), Ri), relative_residual(eval_Rinv_left(b, z), Ri)});
  }
  for (std::size_t i = 0; i < count; ++i) {
    const Complex x = pts[i], y = pts[count + i];
    const Matrix jr = eval_joint_right(b, x, y), jl = eval_joint_left(b, x, y);
    joint_r = std::max(joint_r, relative_residual(jr, eval_R(b, x) * eval_Rinv(b, y)));
    joint_l = std::max(joint_l, relative_residual(jl, eval_Rinv(b, x) * eval_R(b, y)));
    hyb_r = std::max(hyb_r, relative_residual(eval_hybrid_right(b, x, y), jr));
    hyb_l = std::max(hyb_l, relative_residual(eval_hybrid_left(b, x, y), jl));
  }
  Report r;
  r.add("individual_representations", indiv, tol);
  r.add("joint_right", joint_r, tol);
  r.add("joint_left", joint_l, tol);
  r.add("hybrid_right", hyb_r, tol);
  r.add("hybrid_left", hyb_l, tol);
  return r;
}

Report verify_instance(const ZeroPoleData& d, const Tolerances& tol) {
  validate(d, tol.sep_min);
  Report r;
  r.merge(check_consistency(d, tol.report_tol), "model.");
  r.merge(check_projectors(d, tol.report_tol), "model.");
  const RealizationBundle b = assemble_bundle(d, tol);
  r.merge(b.diagnostics, "realization.");
  r.merge(check_representations(b, 10, tol.report_tol), "realization.");
  if (b.n() > 0) {
    const auto pts = sample_points(d, 12);
    std::vector<Triple> triples;
    for (std::size_t i = 0; i + 2 < pts.size(); i += 3) triples.emplace_back(pts[i], pts[i + 1], pts[i + 2]);
    triples.emplace_back(pts[0], std::nullopt, pts[1]);
    triples.emplace_back(std::nullopt, pts[2], std::nullopt);
    r.merge(chain_identity_check(chain_function(b), triples, tol.report_tol), "chain.");
    r.values["obstrollable_pole_pair"] = obstrollable(d.F_P, d.poles, tol.rank_eps) ? 1.0 : 0.0;
    r.values["obstrollable_zero_pair"] = obstrollable_columns(d.zeros, d.G_N, tol.rank_eps) ? 1.0 : 0.0;
  }
  return r;
}

}  // namespace zpreal
