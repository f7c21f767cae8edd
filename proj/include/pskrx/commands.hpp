#pragma once

// Table builders behind the command-line subcommands. Each returns the rows the
// tool prints; states are reported 1-based.

#include "pskrx/optimize.hpp"
#include "pskrx/report.hpp"
#include "pskrx/run_spec.hpp"

namespace pskrx {

// alpha_sq,beta_sq,p_err,std_err,sql,helstrom,trials,seed
// sql is the heterodyne limit at the spec's thermal noise level.
Table sweep_table(const RunSpec& spec, unsigned workers = 0);

// time,event,probe,next_probe,p1..pM,map_state
Table trace_table(const RunSpec& spec);

// alpha_sq,sql,helstrom
Table bench_table(const RunSpec& spec);

// alpha_sq,beta_opt_sq,p_err,beta_opt
Table optimize_table(const RunSpec& spec, unsigned workers = 0);

// trial,true_state,hypothesis,correct,clicks,click_times,probe_sequence
Table simulate_table(const RunSpec& spec);

// Cyclic receiver whose only imperfection is efficiency eta: optimise the ideal
// receiver at power eta |alpha|^2 and rescale beta by 1/sqrt(eta).
OptimizationResult optimize_beta_cyclic_efficiency(const Alphabet& alphabet, double efficiency);

// Displacement amplitude chosen by the spec's beta policy at power alpha_sq.
double policy_beta(const RunSpec& spec, double alpha_sq, unsigned workers = 0);

// Seed used for the Monte Carlo beta scan; the final estimate uses the master
// seed itself so the selected minimum is re-evaluated on fresh trials.
std::uint64_t scan_seed(std::uint64_t master_seed);

}  // namespace pskrx
