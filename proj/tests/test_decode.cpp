#include "doctest.h"

#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "stc/decode.hpp"
#include "stc/errors.hpp"
#include "test_support.hpp"

using namespace stc;

namespace {

Circuit two_z() { return Circuit::parse("QUBITS 1\nM Z0\nTICK\nM Z0\n"); }

// Independent configuration walk used to cross-check the lookup build:
// aggregate probability per produced fault operator.
std::map<FaultOperator, double> brute_aggregates(const Circuit &c,
                                                 const std::vector<FaultLocation> &locs,
                                                 uint32_t max_faults) {
    std::map<FaultOperator, double> agg;
    std::function<void(size_t, uint32_t, double, FaultOperator)> go =
        [&](size_t i, uint32_t left, double prob, FaultOperator acc) {
            if (i == locs.size()) {
                agg[acc] += prob;
                return;
            }
            go(i + 1, left, prob * (1.0 - locs[i].p), acc);
            if (left == 0) return;
            for (uint64_t e = 1; e <= locs[i].num_events; e++)
                go(i + 1, left - 1, prob * locs[i].p / double(locs[i].num_events),
                   acc * location_event_fault(c, locs[i], e));
        };
    go(0, max_faults, 1.0, FaultOperator::identity(c.num_qubits(), c.depth()));
    return agg;
}

} // namespace

TEST_CASE("fault locations cover operations and idles in order") {
    Circuit c = two_z();
    auto locs = fault_locations(c, NoiseModel::uniform(0.1));
    REQUIRE(locs.size() == 2);
    CHECK(locs[0].kind == LocationKind::Measurement);
    CHECK(locs[0].level == 1);
    CHECK(locs[0].meas_index == 0);
    CHECK(locs[0].num_events == 7);
    CHECK(locs[1].level == 2);
    CHECK(locs[1].meas_index == 1);

    Circuit d = Circuit::parse("QUBITS 3\nM Z0\nCX 1 2\nTICK\nH 1\n");
    NoiseModel nm;
    nm.p_unitary = 0.02;
    nm.p_meas = 0.05;
    nm.p_idle = 0.01;
    auto dl = fault_locations(d, nm);
    // Level 1: measurement, CX, no idles; level 2: H, idles q0 and q2.
    REQUIRE(dl.size() == 5);
    CHECK(dl[0].kind == LocationKind::Measurement);
    CHECK(dl[0].p == 0.05);
    CHECK(dl[1].kind == LocationKind::Unitary);
    CHECK(dl[1].qubits == std::vector<uint32_t>{1, 2});
    CHECK(dl[1].num_events == 15);
    CHECK(dl[1].p == 0.02);
    CHECK(dl[2].kind == LocationKind::Unitary);
    CHECK(dl[2].level == 2);
    CHECK(dl[3].kind == LocationKind::Idle);
    CHECK(dl[3].qubits == std::vector<uint32_t>{0});
    CHECK(dl[3].p == 0.01);
    CHECK(dl[3].num_events == 3);
    CHECK(dl[4].qubits == std::vector<uint32_t>{2});

    // Per-operation override: operation index 1 is the CX.
    nm.op_overrides[1] = 0.5;
    CHECK(fault_locations(d, nm)[1].p == 0.5);

    nm.op_overrides[1] = 1.5;
    CHECK_THROWS_AS(fault_locations(d, nm), ValidationError);
    CHECK_THROWS_AS(fault_locations(d, NoiseModel::uniform(-0.1)), ValidationError);
}

TEST_CASE("elementary events map to the documented fault shapes") {
    Circuit c = two_z();
    auto locs = fault_locations(c, NoiseModel::uniform(0.1));
    const FaultLocation &meas1 = locs[0];

    auto F = [&](const char *text) { return FaultOperator::parse(1, 2, text); };
    // Event 1 is the bare outcome flip: the partner on both sides of the level.
    CHECK(location_event_fault(c, meas1, 1) == F("0.5:X0;1.5:X0"));
    CHECK(location_event_fault(c, meas1, 2) == F("1.5:X0"));
    CHECK(location_event_fault(c, meas1, 3) == F("0.5:X0")); // X error + flip cancel above
    CHECK(location_event_fault(c, meas1, 4) == F("1.5:Y0"));
    CHECK(location_event_fault(c, meas1, 5) == F("0.5:X0;1.5:Z0"));
    CHECK(location_event_fault(c, meas1, 6) == F("1.5:Z0"));
    CHECK(location_event_fault(c, meas1, 7) == F("0.5:X0;1.5:Y0"));
    CHECK_THROWS_AS(location_event_fault(c, meas1, 0), DimensionError);
    CHECK_THROWS_AS(location_event_fault(c, meas1, 8), DimensionError);

    // Unitary events are plain support Paulis after the level.
    Circuit h = Circuit::parse("QUBITS 1\nH 0\n");
    auto hl = fault_locations(h, NoiseModel::uniform(0.1));
    REQUIRE(hl.size() == 1);
    CHECK(hl[0].num_events == 3);
    CHECK(location_event_fault(h, hl[0], 1) == FaultOperator::parse(1, 1, "1.5:X0"));
    CHECK(location_event_fault(h, hl[0], 2) == FaultOperator::parse(1, 1, "1.5:Y0"));
    CHECK(location_event_fault(h, hl[0], 3) == FaultOperator::parse(1, 1, "1.5:Z0"));

    // A measurement whose operator anticommutes with X gets partner Z.
    Circuit mx = Circuit::parse("QUBITS 1\nM X0\n");
    auto xl = fault_locations(mx, NoiseModel::uniform(0.1));
    CHECK(location_event_fault(mx, xl[0], 1) == FaultOperator::parse(1, 1, "0.5:Z0;1.5:Z0"));
}

TEST_CASE("fault sampling honours the location probabilities") {
    Circuit c = two_z();
    Rng rng(12);
    for (int t = 0; t < 10; t++)
        CHECK(sample_fault(c, NoiseModel::uniform(0.0), rng).is_identity());

    // Forced faulty measurement: every event shape appears across seeds, and
    // the bare-flip branch yields the two-sided partner fault.
    Circuit one = Circuit::parse("QUBITS 1\nM Z0\n");
    NoiseModel sure;
    sure.p_meas = 1.0;
    std::set<FaultOperator> seen;
    for (uint64_t seed = 0; seed < 200; seed++) {
        Rng r(seed);
        FaultOperator F = sample_fault(one, sure, r);
        CHECK(!F.is_identity());
        seen.insert(F);
    }
    CHECK(seen.size() == 7);
    CHECK(seen.count(FaultOperator::parse(1, 1, "0.5:X0;1.5:X0")) == 1);

    // Binomial check: empirical per-location fault frequency within 3 sigma.
    Circuit two = Circuit::parse("QUBITS 2\nM Z0\n");
    NoiseModel nm;
    nm.p_meas = 0.3;
    nm.p_idle = 0.2;
    int meas_faulty = 0, idle_faulty = 0;
    const int trials = 10000;
    Rng r(99);
    for (int t = 0; t < trials; t++) {
        FaultOperator F = sample_fault(two, nm, r);
        bool q0 = false, q1 = false;
        for (const auto &[layer, q] : F.support()) (q == 0 ? q0 : q1) = true;
        meas_faulty += q0;
        idle_faulty += q1;
    }
    CHECK(std::abs(meas_faulty - trials * 0.3) <= 3 * std::sqrt(trials * 0.3 * 0.7));
    CHECK(std::abs(idle_faulty - trials * 0.2) <= 3 * std::sqrt(trials * 0.2 * 0.8));
}

TEST_CASE("outcome simulation draws uniform codewords plus the fault effect") {
    Circuit c = two_z();
    OutcomeCode oc = compute_outcome_code(c).code;
    Rng rng(5);
    std::set<std::pair<bool, bool>> seen;
    for (int t = 0; t < 200; t++) {
        BitVec o = simulate_outcomes(c, oc, FaultOperator(1, 2), rng);
        CHECK(!oc.syndrome(o).any());
        seen.insert({o.get(0), o.get(1)});
    }
    CHECK(seen == std::set<std::pair<bool, bool>>{{false, false}, {true, true}});

    FaultOperator X_mid = FaultOperator::parse(1, 2, "1.5:X0");
    for (int t = 0; t < 50; t++) {
        BitVec o = simulate_outcomes(c, oc, X_mid, rng);
        CHECK(o.get(0) != o.get(1)); // codeword with the second outcome flipped
    }

    // An affine record set cannot be frame-simulated directly.
    Circuit affine = Circuit::parse("QUBITS 1\nM X0\nTICK\nZ 0\nTICK\nM X0\n");
    OutcomeCode aoc = compute_outcome_code(affine).code;
    REQUIRE(!aoc.is_linear());
    CHECK_THROWS_AS(simulate_outcomes(affine, aoc, FaultOperator(1, 3), rng), ValidationError);
}

TEST_CASE("outcome simulation is uniform over the codeword set") {
    auto chisq = [](const std::map<uint32_t, int> &counts, int trials, int bins) {
        double expect = double(trials) / bins;
        double stat = 0;
        for (int b = 0; b < bins; b++) {
            double obs = counts.count(b) ? counts.at(b) : 0.0;
            stat += (obs - expect) * (obs - expect) / expect;
        }
        return stat;
    };

    // k = 1: two codewords, threshold chi2(df=1, p=0.001).
    Circuit c1 = two_z();
    OutcomeCode oc1 = compute_outcome_code(c1).code;
    Rng r1(2024);
    std::map<uint32_t, int> counts1;
    for (int t = 0; t < 10000; t++)
        counts1[simulate_outcomes(c1, oc1, FaultOperator(1, 2), r1).get(0)]++;
    CHECK(chisq(counts1, 10000, 2) < 10.83);

    // k = 2: four codewords, threshold chi2(df=3, p=0.001).
    Circuit c2 = Circuit::parse("QUBITS 2\nM Z0\nM Z1\n");
    OutcomeCode oc2 = compute_outcome_code(c2).code;
    Rng r2(2025);
    std::map<uint32_t, int> counts2;
    for (int t = 0; t < 10000; t++) {
        BitVec o = simulate_outcomes(c2, oc2, FaultOperator(2, 1), r2);
        counts2[uint32_t(o.get(0)) | (uint32_t(o.get(1)) << 1)]++;
    }
    CHECK(chisq(counts2, 10000, 4) < 16.27);

    // k = 3: eight codewords, threshold chi2(df=7, p=0.001).
    Circuit c3 = Circuit::parse("QUBITS 3\nM Z0\nM Z1\nM Z2\n");
    OutcomeCode oc3 = compute_outcome_code(c3).code;
    Rng r3(2026);
    std::map<uint32_t, int> counts3;
    for (int t = 0; t < 10000; t++) {
        BitVec o = simulate_outcomes(c3, oc3, FaultOperator(3, 1), r3);
        counts3[uint32_t(o.get(0)) | (uint32_t(o.get(1)) << 1) | (uint32_t(o.get(2)) << 2)]++;
    }
    CHECK(chisq(counts3, 10000, 8) < 24.32);
}

TEST_CASE("lookup construction keeps the most likely fault per syndrome") {
    Circuit c = two_z();
    OutcomeAnalysis a = compute_outcome_code(c);
    SpacetimeCode code = build_spacetime_code(c, a.code);
    double p = 0.01;
    LookupDecoder d = build_lookup_decoder(c, code, NoiseModel::uniform(p), 1);

    REQUIRE(d.table.size() == 2);
    BitVec zero(1), one(1);
    one.set(0, true);
    CHECK(d.table.at(zero).fault.is_identity());
    CHECK(d.table.at(zero).events == 0);

    // Syndrome 1: the middle X is produced by two distinct single-event
    // configurations (an X error on the first measurement, and an X error
    // plus flip on the second), so it aggregates twice the per-event mass
    // and beats every other candidate.
    const LookupEntry &e = d.table.at(one);
    CHECK(e.fault == FaultOperator::parse(1, 2, "1.5:X0"));
    CHECK(e.events == 1);
    CHECK(e.probability == doctest::Approx(2 * (p / 7) * (1 - p)).epsilon(1e-12));
    BitVec f01(2);
    f01.set(1, true);
    CHECK(e.est.f == f01);

    // M_f = 0: only the trivial entry.
    LookupDecoder d0 = build_lookup_decoder(c, code, NoiseModel::uniform(p), 0);
    REQUIRE(d0.table.size() == 1);
    CHECK(d0.table.at(zero).fault.is_identity());

    // Growing M_f only adds candidate mass, so stored probabilities never drop.
    LookupDecoder d2 = build_lookup_decoder(c, code, NoiseModel::uniform(p), 2);
    for (const auto &[syn, entry] : d.table)
        CHECK(d2.table.at(syn).probability >= entry.probability - 1e-15);

    BuildOptions tight;
    tight.config_budget = 5;
    CHECK_THROWS_WITH_AS(build_lookup_decoder(c, code, NoiseModel::uniform(p), 1, tight),
                         doctest::Contains("fault locations"), BudgetError);
}

TEST_CASE("lookup table is optimal against brute-force enumeration") {
    Rng rng(31337);
    int checked = 0;
    for (int t = 0; t < 16; t++) {
        testing::CircuitOptions opt;
        opt.n = 2;
        opt.levels = 2 + rng.below(2);
        opt.meas_frac = 0.5;
        Circuit c = linearize(testing::with_echo(testing::random_measured_circuit(rng, opt)));
        OutcomeAnalysis a = compute_outcome_code(c);
        SpacetimeCode code = build_spacetime_code(c, a.code);
        NoiseModel nm = NoiseModel::uniform(0.02);
        auto locs = fault_locations(c, nm);
        uint64_t single_events = 0;
        for (const auto &l : locs) single_events += l.num_events;
        if (locs.size() > 10 || single_events > 100) continue;
        checked++;

        for (uint32_t mf : {1u, 2u}) {
            LookupDecoder d = build_lookup_decoder(c, code, nm, mf);
            auto agg = brute_aggregates(c, locs, mf);
            std::map<BitVec, double> best;
            for (const auto &[F, prob] : agg) {
                BitVec syn = code.syndrome(F);
                auto [it, fresh] = best.try_emplace(syn, prob);
                if (!fresh) it->second = std::max(it->second, prob);
            }
            REQUIRE(d.table.size() == best.size());
            for (const auto &[syn, maxp] : best) {
                const LookupEntry &e = d.table.at(syn);
                CHECK(e.probability == doctest::Approx(maxp).epsilon(1e-9));
                CHECK(agg.at(e.fault) == doctest::Approx(maxp).epsilon(1e-9));
            }
            CHECK(d.table.at(BitVec(code.r)).fault.is_identity());
        }
    }
    CHECK(checked >= 4);
}

TEST_CASE("decoding closes the loop on stored faults") {
    Circuit c = two_z();
    OutcomeAnalysis a = compute_outcome_code(c);
    SpacetimeCode code = build_spacetime_code(c, a.code);
    LookupDecoder d = build_lookup_decoder(c, code, NoiseModel::uniform(0.01), 1);

    // A valid record decodes to "no fault".
    Decoded trivial = decode(d, a.code, BitVec(2));
    CHECK(!trivial.miss);
    CHECK(trivial.fault.is_identity());
    CHECK(!trivial.est.f.any());
    CHECK(trivial.est.E.is_identity());

    // Injecting a stored fault and decoding its simulated record recovers
    // exactly that fault's outcome effect.
    Rng rng(3);
    for (const auto &[syn, entry] : d.table) {
        for (int t = 0; t < 5; t++) {
            BitVec o = simulate_outcomes(c, a.code, entry.fault, rng);
            Decoded dec = decode(d, a.code, o);
            CHECK(!dec.miss);
            CHECK(dec.est.f == entry.est.f);
        }
    }

    CHECK_THROWS_AS(decode(d, a.code, BitVec(3)), DimensionError);

    // With M_f = 0 every invalid record misses and yields the identity effect.
    LookupDecoder d0 = build_lookup_decoder(c, code, NoiseModel::uniform(0.01), 0);
    BitVec invalid(2);
    invalid.set(0, true);
    Decoded miss = decode(d0, a.code, invalid);
    CHECK(miss.miss);
    CHECK(miss.fault.is_identity());
    CHECK(!miss.est.f.any());
}

TEST_CASE("decoded effects differ from the truth by a codeword") {
    Rng rng(606);
    int checked = 0;
    for (int t = 0; t < 10; t++) {
        testing::CircuitOptions opt;
        opt.n = 2;
        opt.levels = 2 + rng.below(2);
        opt.meas_frac = 0.5;
        Circuit c = linearize(testing::with_echo(testing::random_measured_circuit(rng, opt)));
        OutcomeAnalysis a = compute_outcome_code(c);
        SpacetimeCode code = build_spacetime_code(c, a.code);
        NoiseModel nm = NoiseModel::uniform(0.02);
        auto locs = fault_locations(c, nm);
        if (locs.size() > 8) continue;
        checked++;
        LookupDecoder d = build_lookup_decoder(c, code, nm, 1);

        for (const auto &loc : locs) {
            for (uint64_t e = 1; e <= loc.num_events; e++) {
                FaultOperator F = location_event_fault(c, loc, e);
                BitVec o = simulate_outcomes(c, a.code, F, rng);
                Decoded dec = decode(d, a.code, o);
                CHECK(!dec.miss);
                // The decoder saw syndrome sigma(F), so its estimate can
                // differ from the truth only by a zero-syndrome fault, whose
                // outcome effect is a codeword.
                CHECK(!a.code.syndrome(dec.est.f ^ effect(c, F).f).any());
                if (dec.fault == F) CHECK(dec.est.f == effect(c, F).f);
            }
        }
    }
    CHECK(checked >= 4);
}

TEST_CASE("minimum-weight errors and strict success") {
    // One Z0*Z1 measurement: the output group is generated by +Z0Z1 with one
    // logical pair left over.
    Circuit c = Circuit::parse("QUBITS 2\nM Z0*Z1\n");
    OutcomeAnalysis a = compute_outcome_code(c);
    REQUIRE(a.group.generators.size() == 1);
    REQUIRE(a.group.logicals.size() == 1);

    CHECK(min_weight_error(a.group, BitVec(1)).is_identity());
    BitVec one(1);
    one.set(0, true);
    Pauli mw = min_weight_error(a.group, one);
    CHECK(mw.weight() == 1);
    CHECK(a.group.syndrome(mw) == one);

    FaultOperator none(2, 1);
    Effect truth = effect(c, none);
    CHECK(is_success(c, a.group, none, truth));

    // Wrong outcome estimate fails regardless of the error part.
    Effect bad_f = truth;
    bad_f.f.set(0, !bad_f.f.get(0));
    CHECK(!is_success(c, a.group, none, bad_f));

    // Residual equal to the stabilizer generator: correctable by identity.
    Pauli zz(2), z0(2);
    zz.set_letter(0, 'Z');
    zz.set_letter(1, 'Z');
    z0.set_letter(0, 'Z');
    Effect stab = truth;
    stab.E = truth.E * zz;
    CHECK(is_success(c, a.group, none, stab));

    // Residual acting as a logical operator: zero syndrome but not a
    // stabilizer, hence a failure.
    Effect logical = truth;
    logical.E = truth.E * z0;
    CHECK(!a.group.contains_projectively(z0));
    CHECK(!is_success(c, a.group, none, logical));
}

TEST_CASE("success up to an input-layer error") {
    Circuit c = two_z();
    OutcomeAnalysis a = compute_outcome_code(c);
    SpacetimeCode code = build_spacetime_code(c, a.code);
    LookupDecoder d = build_lookup_decoder(c, code, NoiseModel::uniform(0.01), 1);

    // The bare flip of the first measurement and an X error before it have
    // the same syndrome but different outcome effects, so one of them must
    // fail strictly; both are recovered once input errors are factored out.
    FaultOperator flip1 = FaultOperator::parse(1, 2, "0.5:X0;1.5:X0");
    BitVec syn = code.syndrome(flip1);
    REQUIRE(syn.any());
    const LookupEntry &entry = d.table.at(syn);
    REQUIRE(entry.fault != flip1);

    Effect est = entry.est;
    Effect truth = effect(c, flip1);
    CHECK(est.f != truth.f);
    CHECK(!is_success(c, a.group, flip1, est));
    CHECK(is_success_up_to_input(c, a.group, flip1, est));

    // The stored representative itself succeeds strictly, and strict success
    // implies gauge success.
    CHECK(is_success(c, a.group, entry.fault, est));
    CHECK(is_success_up_to_input(c, a.group, entry.fault, est));

    // An unrelated outcome discrepancy is not explained by input errors.
    Effect wrong = est;
    wrong.f = est.f ^ a.code.codeword_basis()[0];
    wrong.f.set(0, !wrong.f.get(0));
    CHECK(!is_success_up_to_input(c, a.group, flip1, wrong));
}

TEST_CASE("monte carlo accounting") {
    Circuit c = two_z();
    OutcomeAnalysis a = compute_outcome_code(c);
    SpacetimeCode code = build_spacetime_code(c, a.code);
    LookupDecoder d = build_lookup_decoder(c, code, NoiseModel::uniform(0.01), 1);

    TrialReport clean = monte_carlo(c, a, NoiseModel::uniform(0.0), d, 50, 7);
    CHECK(clean.trials == 50);
    CHECK(clean.successes == 50);
    CHECK(clean.outcome_failures == 0);
    CHECK(clean.residual_failures == 0);
    CHECK(clean.input_gauge_successes == 50);
    CHECK(clean.misses == 0);

    TrialReport r1 = monte_carlo(c, a, NoiseModel::uniform(0.05), d, 200, 11);
    TrialReport r2 = monte_carlo(c, a, NoiseModel::uniform(0.05), d, 200, 11);
    CHECK(r1.successes == r2.successes);
    CHECK(r1.outcome_failures == r2.outcome_failures);
    CHECK(r1.residual_failures == r2.residual_failures);
    CHECK(r1.input_gauge_successes == r2.input_gauge_successes);
    CHECK(r1.misses == r2.misses);
    CHECK(r1.successes + r1.outcome_failures + r1.residual_failures == r1.trials);
    CHECK(r1.input_gauge_successes >= r1.successes);

    TrialReport r3 = monte_carlo(c, a, NoiseModel::uniform(0.05), d, 200, 12);
    CHECK(r3.successes + r3.outcome_failures + r3.residual_failures == r3.trials);
    CHECK(r3.input_gauge_successes >= r3.successes);
}

TEST_CASE("lookup table dump and load round-trip") {
    Circuit c = two_z();
    OutcomeAnalysis a = compute_outcome_code(c);
    SpacetimeCode code = build_spacetime_code(c, a.code);
    LookupDecoder d = build_lookup_decoder(c, code, NoiseModel::uniform(0.01), 2);

    std::string bytes = dump_lookup_table(d);
    LookupDecoder back = load_lookup_table(bytes);
    CHECK(back.n == d.n);
    CHECK(back.depth == d.depth);
    CHECK(back.m == d.m);
    CHECK(back.r == d.r);
    CHECK(back.max_faults == d.max_faults);
    REQUIRE(back.table.size() == d.table.size());
    for (const auto &[syn, e] : d.table) {
        const LookupEntry &b = back.table.at(syn);
        CHECK(b.fault == e.fault);
        CHECK(b.est.f == e.est.f);
        CHECK(b.est.E == e.est.E);
        CHECK(b.probability == e.probability);
        CHECK(b.events == e.events);
    }

    // A loaded decoder decodes identically.
    BitVec o(2);
    o.set(0, true);
    Decoded lhs = decode(d, a.code, o), rhs = decode(back, a.code, o);
    CHECK(lhs.fault == rhs.fault);
    CHECK(lhs.est.f == rhs.est.f);
    CHECK(lhs.miss == rhs.miss);

    std::string bad = bytes;
    bad[0] = 'X';
    CHECK_THROWS_AS(load_lookup_table(bad), ParseError);
    CHECK_THROWS_AS(load_lookup_table(bytes.substr(0, bytes.size() - 3)), ParseError);
    CHECK_THROWS_AS(load_lookup_table(bytes + "junk"), ParseError);
}
