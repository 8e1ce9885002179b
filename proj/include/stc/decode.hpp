#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "stc/outcome_code.hpp"
#include "stc/rng.hpp"
#include "stc/spacetime.hpp"

namespace stc {

// Independent fault probability per location class; every operation and every
// idle (level, qubit) slot is a location.
struct NoiseModel {
    double p_unitary = 0.0;
    double p_meas = 0.0;
    double p_idle = 0.0;
    // Overrides keyed by index into Circuit::operations().
    std::map<size_t, double> op_overrides;

    static NoiseModel uniform(double p) { return {p, p, p, {}}; }
};

enum class LocationKind { Unitary, Measurement, Idle };

struct FaultLocation {
    LocationKind kind = LocationKind::Idle;
    uint32_t level = 0;           // 1-based
    std::vector<uint32_t> qubits; // operation support, or the single idle qubit
    uint32_t meas_index = 0;      // measurements only
    double p = 0.0;
    // Elementary events: the 4^w - 1 support Paulis, with the outcome flip
    // doubling (and the bare flip) for measurements: 2*4^w - 1.
    uint64_t num_events = 0;
};

// All fault locations in deterministic order: per level, operations in
// circuit order, then idle qubits ascending. Validates probabilities.
std::vector<FaultLocation> fault_locations(const Circuit &c, const NoiseModel &nm);

// Fault operator of elementary event 1..num_events at a location. A faulty
// operation places a support Pauli after its level; a flipped measurement
// additionally places the flip partner Q on both sides of the level.
FaultOperator location_event_fault(const Circuit &c, const FaultLocation &loc, uint64_t event);

// Each location is faulty independently with its probability; faulty
// locations draw one elementary event uniformly.
FaultOperator sample_fault(const Circuit &c, const NoiseModel &nm, Rng &rng);

// Uniform outcome-code codeword xored with the fault's outcome effect
// (maximally mixed input). Requires a linear code.
BitVec simulate_outcomes(const Circuit &c, const OutcomeCode &oc, const FaultOperator &F,
                         Rng &rng);

struct LookupEntry {
    FaultOperator fault;
    Effect est;              // cached effect(fault)
    double probability = 0;  // aggregated over all producing configurations
    uint32_t events = 0;     // fewest events among producing configurations
};

struct LookupDecoder {
    uint32_t n = 0, depth = 0, m = 0, r = 0;
    uint32_t max_faults = 0;
    std::vector<FaultLocation> locations;
    std::map<BitVec, LookupEntry> table; // syndrome -> most likely fault
};

struct BuildOptions {
    uint64_t config_budget = 10'000'000;
};

// Enumerate every configuration of at most max_faults faulty locations (one
// event each), aggregate configuration probabilities per fault operator, and
// keep the most likely operator per syndrome. Ties: fewest events, then
// smallest serialization. The zero syndrome always maps to the empty fault.
LookupDecoder build_lookup_decoder(const Circuit &c, const SpacetimeCode &code,
                                   const NoiseModel &nm, uint32_t max_faults,
                                   const BuildOptions &opt = {});

struct Decoded {
    Effect est;          // effect of the stored fault; identity on a miss
    FaultOperator fault;
    bool miss = false;   // syndrome not present in the table
};

Decoded decode(const LookupDecoder &d, const OutcomeCode &oc, const BitVec &o);

// Minimum-weight Pauli with the given syndrome, deterministic: smallest
// weight, then lexicographic support, then X < Y < Z per qubit.
Pauli min_weight_error(const OutputStabilizerGroup &g, const BitVec &syndrome);

// Strict success: the decoded outcome effect matches exactly, and the
// residual est.E * E is corrected by the minimum-weight decoder of the
// output group (the corrected residual is a stabilizer up to phase).
bool is_success(const Circuit &c, const OutputStabilizerGroup &g, const FaultOperator &F,
                const Effect &est);

// Success up to an undetectable input-layer error: some Pauli P placed
// before level 1 has est.f = f + f_P and residual est.E * E * E_P
// correctable. Input errors commute with every check, so no decoder can
// distinguish the gauge representatives.
bool is_success_up_to_input(const Circuit &c, const OutputStabilizerGroup &g,
                            const FaultOperator &F, const Effect &est);

struct TrialReport {
    uint64_t trials = 0;
    uint64_t outcome_failures = 0;  // decoded f differs from the true f
    uint64_t residual_failures = 0; // f matched, residual not correctable
    uint64_t successes = 0;         // the three counts sum to trials
    uint64_t seed = 0;
    uint64_t misses = 0;                // syndromes outside the table
    uint64_t input_gauge_successes = 0; // not part of the strict sum
};

// sample_fault -> simulate_outcomes -> decode -> is_success per trial, with
// the per-trial stream Rng(seed, trial).
TrialReport monte_carlo(const Circuit &c, const OutcomeAnalysis &a, const NoiseModel &nm,
                        const LookupDecoder &d, uint64_t trials, uint64_t seed);

// Versioned binary serialization of the table (self-contained: load needs no
// circuit). Locations are not stored; a loaded decoder only decodes.
std::string dump_lookup_table(const LookupDecoder &d);
LookupDecoder load_lookup_table(const std::string &bytes);

} // namespace stc
