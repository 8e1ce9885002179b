#include "stc/decode.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <variant>

#include "stc/errors.hpp"

namespace stc {

namespace {

uint64_t pow4(size_t w) { return uint64_t(1) << (2 * w); }

// Support Pauli number idx (base-4 digits per qubit, 0=I 1=X 2=Y 3=Z).
Pauli indexed_pauli(uint32_t n, const std::vector<uint32_t> &qubits, uint64_t idx) {
    static const char L[4] = {'I', 'X', 'Y', 'Z'};
    Pauli p(n);
    for (size_t i = 0; i < qubits.size(); i++) {
        uint64_t d = (idx >> (2 * i)) & 3;
        if (d) p.set_letter(qubits[i], L[d]);
    }
    return p;
}

void check_probability(double p, const std::string &what) {
    if (!(p >= 0.0 && p <= 1.0))
        throw ValidationError(what + " probability " + std::to_string(p) + " outside [0, 1]");
}

} // namespace

std::vector<FaultLocation> fault_locations(const Circuit &c, const NoiseModel &nm) {
    check_probability(nm.p_unitary, "unitary");
    check_probability(nm.p_meas, "measurement");
    check_probability(nm.p_idle, "idle");
    std::vector<FaultLocation> locs;
    for (uint32_t level = 1; level <= c.depth(); level++) {
        std::vector<bool> busy(c.num_qubits(), false);
        for (size_t i = 0; i < c.operations().size(); i++) {
            const Operation &op = c.operations()[i];
            if (op.level != level) continue;
            FaultLocation loc;
            loc.level = level;
            loc.qubits = op.support();
            bool meas = std::holds_alternative<MeasureOp>(op.body);
            loc.kind = meas ? LocationKind::Measurement : LocationKind::Unitary;
            if (meas) loc.meas_index = std::get<MeasureOp>(op.body).index;
            loc.p = meas ? nm.p_meas : nm.p_unitary;
            if (auto it = nm.op_overrides.find(i); it != nm.op_overrides.end()) {
                check_probability(it->second, "override");
                loc.p = it->second;
            }
            size_t w = loc.qubits.size();
            loc.num_events = meas ? 2 * pow4(w) - 1 : pow4(w) - 1;
            for (uint32_t q : loc.qubits) busy[q] = true;
            locs.push_back(std::move(loc));
        }
        for (uint32_t q = 0; q < c.num_qubits(); q++) {
            if (busy[q]) continue;
            FaultLocation loc;
            loc.kind = LocationKind::Idle;
            loc.level = level;
            loc.qubits = {q};
            loc.p = nm.p_idle;
            loc.num_events = 3;
            locs.push_back(std::move(loc));
        }
    }
    return locs;
}

FaultOperator location_event_fault(const Circuit &c, const FaultLocation &loc, uint64_t event) {
    if (event < 1 || event > loc.num_events)
        throw DimensionError("event index " + std::to_string(event) + " outside 1.." +
                             std::to_string(loc.num_events));
    FaultOperator F(c.num_qubits(), c.depth());
    if (loc.kind != LocationKind::Measurement) {
        F.layer(loc.level) *= indexed_pauli(c.num_qubits(), loc.qubits, event);
    } else {
        F.layer(loc.level) *= indexed_pauli(c.num_qubits(), loc.qubits, event >> 1);
        if (event & 1) {
            Pauli Q = flip_partner(c.measurement(loc.meas_index).op);
            F.layer(loc.level - 1) *= Q;
            F.layer(loc.level) *= Q;
        }
    }
    return F;
}

FaultOperator sample_fault(const Circuit &c, const NoiseModel &nm, Rng &rng) {
    FaultOperator F(c.num_qubits(), c.depth());
    for (const FaultLocation &loc : fault_locations(c, nm)) {
        if (loc.p <= 0.0) continue;
        if (rng.uniform() >= loc.p) continue;
        F *= location_event_fault(c, loc, 1 + rng.below(loc.num_events));
    }
    return F;
}

BitVec simulate_outcomes(const Circuit &c, const OutcomeCode &oc, const FaultOperator &F,
                         Rng &rng) {
    if (!oc.is_linear())
        throw ValidationError("simulate_outcomes requires a linear outcome code; "
                              "rewrite the circuit with linearize first");
    BitVec o(oc.m);
    for (const BitVec &b : oc.codeword_basis())
        if (rng.below(2)) o ^= b;
    return o ^ effect(c, F).f;
}

namespace {

struct Aggregate {
    double probability = 0;
    uint32_t events = 0;
};

// Depth-first walk over configurations of at most max_faults faulty
// locations. suffix[i] collapses an all-healthy tail in one step.
struct ConfigEnumerator {
    const Circuit &c;
    const std::vector<FaultLocation> &locs;
    std::vector<double> suffix;
    uint32_t max_faults;
    uint64_t budget, seen = 0;
    std::map<FaultOperator, Aggregate> agg;

    ConfigEnumerator(const Circuit &c_, const std::vector<FaultLocation> &locs_,
                     uint32_t max_faults_, uint64_t budget_)
        : c(c_), locs(locs_), suffix(locs_.size() + 1, 1.0), max_faults(max_faults_),
          budget(budget_) {
        for (size_t i = locs.size(); i-- > 0;) suffix[i] = suffix[i + 1] * (1.0 - locs[i].p);
    }

    void record(const FaultOperator &F, double prob, uint32_t used) {
        if (++seen > budget)
            throw BudgetError("lookup construction exceeded " + std::to_string(budget) +
                              " configurations over " + std::to_string(locs.size()) +
                              " fault locations");
        auto [it, fresh] = agg.try_emplace(F, Aggregate{0.0, used});
        it->second.probability += prob;
        if (!fresh) it->second.events = std::min(it->second.events, used);
    }

    void walk(size_t i, uint32_t used, double prob, const FaultOperator &acc) {
        if (i == locs.size() || used == max_faults) {
            record(acc, prob * suffix[i], used);
            return;
        }
        walk(i + 1, used, prob * (1.0 - locs[i].p), acc);
        double per_event = locs[i].p / double(locs[i].num_events);
        for (uint64_t e = 1; e <= locs[i].num_events; e++)
            walk(i + 1, used + 1, prob * per_event, acc * location_event_fault(c, locs[i], e));
    }
};

bool entry_beats(const LookupEntry &a, const LookupEntry &b) {
    if (a.probability != b.probability) return a.probability > b.probability;
    if (a.events != b.events) return a.events < b.events;
    return a.fault.to_string() < b.fault.to_string();
}

} // namespace

LookupDecoder build_lookup_decoder(const Circuit &c, const SpacetimeCode &code,
                                   const NoiseModel &nm, uint32_t max_faults,
                                   const BuildOptions &opt) {
    LookupDecoder d;
    d.n = c.num_qubits();
    d.depth = c.depth();
    d.m = c.num_measurements();
    d.r = code.r;
    d.max_faults = max_faults;
    d.locations = fault_locations(c, nm);

    ConfigEnumerator en(c, d.locations, max_faults, opt.config_budget);
    en.walk(0, 0, 1.0, FaultOperator::identity(d.n, d.depth));

    for (const auto &[F, a] : en.agg) {
        LookupEntry cand;
        cand.fault = F;
        cand.probability = a.probability;
        cand.events = a.events;
        BitVec syn = code.syndrome(F);
        auto [it, fresh] = d.table.try_emplace(syn, cand);
        if (!fresh && entry_beats(cand, it->second)) it->second = cand;
    }
    // Valid outcomes decode to "nothing happened" regardless of probabilities.
    LookupEntry clean;
    clean.fault = FaultOperator::identity(d.n, d.depth);
    const Aggregate &id_agg = en.agg.at(clean.fault);
    clean.probability = id_agg.probability;
    clean.events = id_agg.events;
    d.table[BitVec(d.r)] = clean;

    for (auto &[syn, entry] : d.table) entry.est = effect(c, entry.fault);
    return d;
}

Decoded decode(const LookupDecoder &d, const OutcomeCode &oc, const BitVec &o) {
    BitVec syn = oc.syndrome(o);
    Decoded out;
    auto it = d.table.find(syn);
    if (it == d.table.end()) {
        out.miss = true;
        out.fault = FaultOperator::identity(d.n, d.depth);
        out.est = Effect{BitVec(d.m), Pauli(d.n)};
    } else {
        out.fault = it->second.fault;
        out.est = it->second.est;
    }
    return out;
}

Pauli min_weight_error(const OutputStabilizerGroup &g, const BitVec &syndrome) {
    uint32_t n = g.n;
    Pauli cand(n);
    if (!syndrome.any()) return cand;
    for (uint32_t w = 1; w <= n; w++) {
        std::vector<uint32_t> sel(w);
        for (uint32_t i = 0; i < w; i++) sel[i] = i;
        while (true) {
            uint64_t combos = 1;
            for (uint32_t i = 0; i < w; i++) combos *= 3;
            for (uint64_t t = 0; t < combos; t++) {
                Pauli p(n);
                uint64_t rest = t;
                for (uint32_t i = w; i-- > 0;) {
                    p.set_letter(sel[i], "XYZ"[rest % 3]);
                    rest /= 3;
                }
                if (g.syndrome(p) == syndrome) return p;
            }
            // Next lexicographic support set.
            uint32_t i = w;
            while (i-- > 0) {
                if (sel[i] + (w - i) < n) {
                    sel[i]++;
                    for (uint32_t j = i + 1; j < w; j++) sel[j] = sel[j - 1] + 1;
                    break;
                }
                if (i == 0) goto next_weight;
            }
        }
    next_weight:;
    }
    throw InternalError("no Pauli matches the requested output-group syndrome");
}

namespace {

bool residual_correctable(const OutputStabilizerGroup &g, const Pauli &R) {
    Pauli C = min_weight_error(g, g.syndrome(R));
    return g.contains_projectively(C * R);
}

} // namespace

bool is_success(const Circuit &c, const OutputStabilizerGroup &g, const FaultOperator &F,
                const Effect &est) {
    Effect truth = effect(c, F);
    if (est.f != truth.f) return false;
    return residual_correctable(g, est.E * truth.E);
}

bool is_success_up_to_input(const Circuit &c, const OutputStabilizerGroup &g,
                            const FaultOperator &F, const Effect &est) {
    uint32_t n = c.num_qubits();
    uint32_t m = c.num_measurements();
    Effect truth = effect(c, F);

    // Effects of the 2n elementary input errors (X_0..X_{n-1}, Z_0..Z_{n-1}).
    std::vector<BitVec> rows;
    std::vector<Pauli> ends;
    rows.reserve(2 * n);
    for (uint32_t i = 0; i < 2 * n; i++) {
        BitVec v(2 * n);
        v.set(i, true);
        Effect e = effect(c, eta(c, 0, pauli_from_symplectic(v)));
        rows.push_back(e.f);
        ends.push_back(e.E);
    }

    // Solve sum_i v_i rows[i] = est.f + truth.f, then scan the solution coset.
    BitVec delta = est.f ^ truth.f;
    auto particular = gf2::decompose(delta, rows);
    if (!particular) return false;
    std::vector<BitVec> tr(m, BitVec(2 * n));
    for (uint32_t i = 0; i < 2 * n; i++)
        for (uint32_t j = 0; j < m; j++)
            if (rows[i].get(j)) tr[j].set(i, true);
    std::vector<BitVec> kernel = gf2::nullspace(tr, 2 * n);
    if (kernel.size() > 20)
        throw BudgetError("input-gauge search over a " + std::to_string(kernel.size()) +
                          "-dimensional kernel");

    Pauli base = est.E * truth.E;
    for (uint64_t mask = 0; mask < (uint64_t(1) << kernel.size()); mask++) {
        BitVec v = *particular;
        for (size_t i = 0; i < kernel.size(); i++)
            if ((mask >> i) & 1) v ^= kernel[i];
        Pauli r = base;
        for (uint32_t i = 0; i < 2 * n; i++)
            if (v.get(i)) r *= ends[i];
        if (residual_correctable(g, r)) return true;
    }
    return false;
}

TrialReport monte_carlo(const Circuit &c, const OutcomeAnalysis &a, const NoiseModel &nm,
                        const LookupDecoder &d, uint64_t trials, uint64_t seed) {
    TrialReport rep;
    rep.trials = trials;
    rep.seed = seed;
    for (uint64_t t = 0; t < trials; t++) {
        Rng rng(seed, t);
        FaultOperator F = sample_fault(c, nm, rng);
        BitVec o = simulate_outcomes(c, a.code, F, rng);
        Decoded dec = decode(d, a.code, o);
        if (dec.miss) rep.misses++;
        Effect truth = effect(c, F);
        bool strict = false;
        if (dec.est.f != truth.f) {
            rep.outcome_failures++;
        } else if (!residual_correctable(a.group, dec.est.E * truth.E)) {
            rep.residual_failures++;
        } else {
            rep.successes++;
            strict = true;
        }
        if (strict || is_success_up_to_input(c, a.group, F, dec.est))
            rep.input_gauge_successes++;
    }
    return rep;
}

namespace {

void put_u32(std::string &s, uint32_t v) {
    for (int i = 0; i < 4; i++) s.push_back(char((v >> (8 * i)) & 0xff));
}

void put_u64(std::string &s, uint64_t v) {
    for (int i = 0; i < 8; i++) s.push_back(char((v >> (8 * i)) & 0xff));
}

void put_double(std::string &s, double d) {
    uint64_t u;
    std::memcpy(&u, &d, 8);
    put_u64(s, u);
}

void put_bits(std::string &s, const BitVec &v) {
    for (size_t base = 0; base < v.size(); base += 8) {
        unsigned char byte = 0;
        for (size_t b = 0; b < 8 && base + b < v.size(); b++)
            if (v.get(base + b)) byte |= (unsigned char)(1u << b);
        s.push_back(char(byte));
    }
}

struct Cursor {
    const std::string &s;
    size_t pos = 0;

    void need(size_t k) const {
        if (pos + k > s.size()) throw ParseError(0, "lookup table: truncated input");
    }
    uint32_t u32() {
        need(4);
        uint32_t v = 0;
        for (int i = 0; i < 4; i++) v |= uint32_t((unsigned char)s[pos++]) << (8 * i);
        return v;
    }
    uint64_t u64() {
        need(8);
        uint64_t v = 0;
        for (int i = 0; i < 8; i++) v |= uint64_t((unsigned char)s[pos++]) << (8 * i);
        return v;
    }
    double f64() {
        uint64_t u = u64();
        double d;
        std::memcpy(&d, &u, 8);
        return d;
    }
    BitVec bits(size_t nbits) {
        need((nbits + 7) / 8);
        BitVec v(nbits);
        for (size_t i = 0; i < nbits; i++)
            if ((s[pos + i / 8] >> (i % 8)) & 1) v.set(i, true);
        pos += (nbits + 7) / 8;
        return v;
    }
};

const char MAGIC[8] = {'S', 'T', 'C', 'L', 'U', 'T', '0', '1'};

} // namespace

std::string dump_lookup_table(const LookupDecoder &d) {
    std::string s(MAGIC, sizeof MAGIC);
    put_u32(s, d.n);
    put_u32(s, d.depth);
    put_u32(s, d.m);
    put_u32(s, d.r);
    put_u32(s, d.max_faults);
    put_u64(s, d.table.size());
    for (const auto &[syn, e] : d.table) {
        put_bits(s, syn);
        put_bits(s, e.fault.symplectic());
        put_bits(s, e.est.f);
        put_bits(s, symplectic_vector(e.est.E));
        put_double(s, e.probability);
        put_u32(s, e.events);
    }
    return s;
}

LookupDecoder load_lookup_table(const std::string &bytes) {
    Cursor cur{bytes};
    cur.need(sizeof MAGIC);
    if (std::memcmp(bytes.data(), MAGIC, sizeof MAGIC) != 0)
        throw ParseError(0, "lookup table: bad magic or unsupported version");
    cur.pos = sizeof MAGIC;
    LookupDecoder d;
    d.n = cur.u32();
    d.depth = cur.u32();
    d.m = cur.u32();
    d.r = cur.u32();
    d.max_faults = cur.u32();
    uint64_t count = cur.u64();
    size_t N = size_t(d.n) * (d.depth + 1);
    for (uint64_t i = 0; i < count; i++) {
        BitVec syn = cur.bits(d.r);
        LookupEntry e;
        e.fault = FaultOperator::from_symplectic(d.n, d.depth, cur.bits(2 * N));
        e.est.f = cur.bits(d.m);
        e.est.E = pauli_from_symplectic(cur.bits(2 * d.n));
        e.probability = cur.f64();
        e.events = cur.u32();
        d.table[syn] = std::move(e);
    }
    if (cur.pos != bytes.size()) throw ParseError(0, "lookup table: trailing bytes");
    return d;
}

} // namespace stc
