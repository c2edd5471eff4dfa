#include "pqw/io.hpp"

#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace pqw {

json matrix_to_json(const Mat2 &m) {
  return json::array({m.a11.real(), m.a11.imag(), m.a12.real(), m.a12.imag(), m.a21.real(),
                      m.a21.imag(), m.a22.real(), m.a22.imag()});
}

Mat2 matrix_from_json(const json &j) {
  if (!j.is_array() || j.size() != 8) {
    throw std::invalid_argument("matrix must be an array of 8 reals");
  }
  auto c = [&j](int i) { return cplx(j[i].get<double>(), j[i + 1].get<double>()); };
  return {c(0), c(2), c(4), c(6)};
}

json to_json(const ConditionRecord &c) {
  json w = json::object();
  for (const auto &[k, v] : c.witnesses) {
    w[k] = v;
  }
  return {{"name", c.name}, {"satisfied", c.satisfied}, {"residual", c.residual}, {"witnesses", w}};
}

json to_json(const ConstraintReport &r) {
  json conds = json::array();
  for (const auto &c : r.conditions) {
    conds.push_back(to_json(c));
  }
  return {{"schema_version", kSchemaVersion}, {"passed", r.passed}, {"conditions", conds}};
}

json to_json(const HamiltonianTerm &t) {
  return {{"px", t.px}, {"py", t.py}, {"matrix", matrix_to_json(t.coeff)}};
}

json to_json(const PdeTerm &t) {
  return {{"dx_power", t.dx_power},
          {"dy_power", t.dy_power},
          {"thx_power", t.thx_power},
          {"thy_power", t.thy_power},
          {"matrix", matrix_to_json(t.coeff)}};
}

json to_json(const TermGroup &g) {
  return {{"order", g.order.str()}, {"dx_power", g.dx},   {"dy_power", g.dy},
          {"thx_power", g.thx},     {"thy_power", g.thy}, {"count", g.count},
          {"norm", op_norm(g.matrix)}, {"matrix", matrix_to_json(g.matrix)}};
}

json to_json(const ConvergenceResult &r) {
  json s = json::array();
  for (const auto &x : r.samples) {
    s.push_back({{"eps", x.eps}, {"error", x.error}});
  }
  json out = {{"schema_version", kSchemaVersion}, {"samples", s}, {"exact", r.exact}};
  if (!r.exact) {
    out["slope"] = r.fit.slope;
    out["intercept"] = r.fit.intercept;
    out["r_squared"] = r.fit.r_squared;
  }
  out["strictly_decreasing"] = r.strictly_decreasing();
  return out;
}

json to_json(const std::vector<DispersionPoint> &pts) {
  json rows = json::array();
  for (const auto &p : pts) {
    rows.push_back({{"kx", p.kx}, {"ky", p.ky}, {"phase1", p.phase1}, {"phase2", p.phase2}});
  }
  return {{"schema_version", kSchemaVersion}, {"points", rows}};
}

json hamiltonian_to_json(const std::vector<HamiltonianTerm> &terms) {
  json arr = json::array();
  for (const auto &t : terms) {
    arr.push_back(to_json(t));
  }
  return arr;
}

json pde_to_json(const std::vector<PdeTerm> &terms) {
  json arr = json::array();
  for (const auto &t : terms) {
    arr.push_back(to_json(t));
  }
  return arr;
}

void write_convergence_csv(const ConvergenceResult &r, std::ostream &out) {
  const auto prec = out.precision();
  out << "eps,error\n" << std::setprecision(17);
  for (const auto &s : r.samples) {
    out << s.eps << ',' << s.error << '\n';
  }
  out.precision(prec);
}

void write_dispersion_csv(const std::vector<DispersionPoint> &pts, std::ostream &out) {
  const auto prec = out.precision();
  out << "kx,ky,phase1,phase2\n" << std::setprecision(17);
  for (const auto &p : pts) {
    out << p.kx << ',' << p.ky << ',' << p.phase1 << ',' << p.phase2 << '\n';
  }
  out.precision(prec);
}

} // namespace pqw
