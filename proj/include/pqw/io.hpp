#pragma once

#include "pqw/algebra.hpp"
#include "pqw/limits.hpp"
#include "pqw/plastic.hpp"
#include "pqw/verify.hpp"

#include <json.hpp>

#include <iosfwd>
#include <vector>

namespace pqw {

inline constexpr int kSchemaVersion = 1;

using json = nlohmann::ordered_json;

/// [re a11, im a11, re a12, im a12, re a21, im a21, re a22, im a22]
json matrix_to_json(const Mat2 &m);
Mat2 matrix_from_json(const json &j);

json to_json(const ConditionRecord &c);
json to_json(const ConstraintReport &r);
json to_json(const HamiltonianTerm &t);
json to_json(const PdeTerm &t);
json to_json(const TermGroup &g);
json to_json(const ConvergenceResult &r);
json to_json(const std::vector<DispersionPoint> &pts);

json hamiltonian_to_json(const std::vector<HamiltonianTerm> &terms);
json pde_to_json(const std::vector<PdeTerm> &terms);

/// eps,error rows with 17 significant digits.
void write_convergence_csv(const ConvergenceResult &r, std::ostream &out);
/// kx,ky,phase1,phase2 rows with 17 significant digits.
void write_dispersion_csv(const std::vector<DispersionPoint> &pts, std::ostream &out);

} // namespace pqw
