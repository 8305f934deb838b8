#pragma once

#include <vector>

#include "nanopteron/model.hpp"
#include "nanopteron/run_record.hpp"

namespace nanopteron {

/// Numbered acceptance gates. Each runs at fixed tolerances; parameters default to the reference dimer.
GateResult gate_dispersion_identities(const std::vector<double>& kappas = {1.5, 2.0, 5.0});
GateResult gate_derivative_bounds(const std::vector<double>& kappas = {1.5, 2.0, 5.0});
GateResult gate_resonance(double kappa = 2.0, double beta = 1.0);
GateResult gate_kdv_core(const std::vector<std::pair<double, double>>& params = {{2.0, 1.0}, {3.0, -1.0}});
GateResult gate_fp_kernel(const DimerParams& p);
GateResult gate_conjugation(const DimerParams& p);
GateResult gate_weighted_norms(const DimerParams& p);
GateResult gate_periodic(const DimerParams& p);
GateResult gate_nanopteron(const DimerParams& p);
GateResult gate_lattice(const DimerParams& p);
GateResult gate_fixed_point_forms(const DimerParams& p);

/// Runs the gates in order. `full` includes the nanopteron, lattice and fixed-point-form gates.
std::vector<GateResult> run_validation(const DimerParams& p, bool full);

} // namespace nanopteron
