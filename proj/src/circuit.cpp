#include "stc/circuit.hpp"

#include <algorithm>
#include <sstream>

#include "stc/errors.hpp"

namespace stc {

std::vector<uint32_t> Operation::support() const {
    if (is_measurement()) {
        std::vector<uint32_t> s;
        for (size_t q : measurement().op.proj.support()) s.push_back(uint32_t(q));
        return s;
    }
    std::vector<uint32_t> s = unitary().qubits;
    std::sort(s.begin(), s.end());
    return s;
}

Circuit::Circuit(uint32_t n, uint32_t depth, std::vector<Operation> ops)
    : n_(n), depth_(depth), ops_(std::move(ops)), memo_(std::make_unique<Memo>()) {
    index_measurements();
}

Circuit::Circuit(const Circuit &o)
    : n_(o.n_), depth_(o.depth_), ops_(o.ops_), meas_ops_(o.meas_ops_),
      memo_(std::make_unique<Memo>()) {}

Circuit &Circuit::operator=(const Circuit &o) {
    if (this != &o) {
        n_ = o.n_;
        depth_ = o.depth_;
        ops_ = o.ops_;
        meas_ops_ = o.meas_ops_;
        memo_ = std::make_unique<Memo>();
    }
    return *this;
}

void Circuit::index_measurements() {
    meas_ops_.clear();
    uint32_t j = 0;
    for (size_t i = 0; i < ops_.size(); i++) {
        if (ops_[i].is_measurement()) {
            if (ops_[i].measurement().index != j)
                throw InternalError("measurement indices must follow circuit order");
            meas_ops_.push_back(i);
            j++;
        }
    }
}

namespace {

std::vector<std::string> tokenize(const std::string &line) {
    std::vector<std::string> toks;
    std::istringstream in(line);
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

uint32_t parse_qubit(const std::string &tok, uint32_t n, size_t line_no) {
    size_t pos = 0;
    unsigned long long q = 0;
    try {
        q = std::stoull(tok, &pos);
    } catch (const std::exception &) {
        throw ParseError(line_no, "expected qubit index, got '" + tok + "'");
    }
    if (pos != tok.size()) throw ParseError(line_no, "expected qubit index, got '" + tok + "'");
    if (q >= n)
        throw ParseError(line_no, "qubit index " + tok + " out of range (QUBITS " +
                                      std::to_string(n) + ")");
    return uint32_t(q);
}

UnitaryOp parse_tableau_literal(const std::vector<std::string> &toks, uint32_t n,
                                size_t line_no) {
    // TABLEAU q0 q1 ... { X0:<pauli> Z0:<pauli> ... }
    size_t brace = 0;
    for (size_t i = 1; i < toks.size(); i++) {
        if (toks[i] == "{") {
            brace = i;
            break;
        }
    }
    if (brace == 0) throw ParseError(line_no, "TABLEAU: missing '{'");
    if (toks.back() != "}") throw ParseError(line_no, "TABLEAU: missing '}'");
    if (brace == 1) throw ParseError(line_no, "TABLEAU: needs at least one qubit");

    UnitaryOp op;
    for (size_t i = 1; i < brace; i++) op.qubits.push_back(parse_qubit(toks[i], n, line_no));
    size_t w = op.qubits.size();
    op.local.img_x.assign(w, PhasedPauli(w));
    op.local.img_z.assign(w, PhasedPauli(w));
    std::vector<bool> seen(2 * w, false);
    for (size_t i = brace + 1; i + 1 < toks.size(); i++) {
        const std::string &tok = toks[i];
        size_t colon = tok.find(':');
        if (colon == std::string::npos)
            throw ParseError(line_no, "TABLEAU: expected LABEL:PAULI, got '" + tok + "'");
        std::string label = tok.substr(0, colon);
        if (label.size() < 2 || (label[0] != 'X' && label[0] != 'Z'))
            throw ParseError(line_no, "TABLEAU: bad image label '" + label + "'");
        size_t idx = 0;
        try {
            idx = std::stoull(label.substr(1));
        } catch (const std::exception &) {
            throw ParseError(line_no, "TABLEAU: bad image label '" + label + "'");
        }
        if (idx >= w) throw ParseError(line_no, "TABLEAU: image label index out of range");
        size_t slot = (label[0] == 'X' ? 0 : w) + idx;
        if (seen[slot]) throw ParseError(line_no, "TABLEAU: duplicate image for " + label);
        seen[slot] = true;
        PhasedPauli img;
        try {
            img = PhasedPauli::parse(w, tok.substr(colon + 1));
        } catch (const ParseError &e) {
            throw ParseError(line_no, std::string("TABLEAU: ") + e.what());
        }
        (label[0] == 'X' ? op.local.img_x : op.local.img_z)[idx] = img;
    }
    for (size_t i = 0; i < 2 * w; i++)
        if (!seen[i])
            throw ParseError(line_no, "TABLEAU: missing image for " +
                                          std::string(i < w ? "X" : "Z") +
                                          std::to_string(i < w ? i : i - w));
    return op;
}

} // namespace

Circuit Circuit::parse_unvalidated(const std::string &text) {
    std::istringstream in(text);
    std::string raw;
    size_t line_no = 0;
    bool have_qubits = false;
    uint32_t n = 0, level = 1, meas_index = 0;
    std::vector<Operation> ops;

    while (std::getline(in, raw)) {
        line_no++;
        std::string line = raw.substr(0, raw.find('#'));
        std::vector<std::string> toks = tokenize(line);
        if (toks.empty()) continue;
        const std::string &head = toks[0];

        if (head == "QUBITS") {
            if (have_qubits) throw ParseError(line_no, "duplicate QUBITS line");
            if (!ops.empty() || level != 1)
                throw ParseError(line_no, "QUBITS must come before operations");
            if (toks.size() != 2) throw ParseError(line_no, "usage: QUBITS <n>");
            try {
                n = uint32_t(std::stoul(toks[1]));
            } catch (const std::exception &) {
                throw ParseError(line_no, "bad qubit count '" + toks[1] + "'");
            }
            if (n == 0) throw ParseError(line_no, "QUBITS must be positive");
            have_qubits = true;
            continue;
        }
        if (!have_qubits) throw ParseError(line_no, "QUBITS must be the first directive");

        if (head == "TICK") {
            if (toks.size() != 1) throw ParseError(line_no, "TICK takes no arguments");
            level++;
            continue;
        }
        if (head == "M") {
            if (toks.size() != 2) throw ParseError(line_no, "usage: M <pauli-string>");
            PhasedPauli p;
            try {
                p = PhasedPauli::parse(n, toks[1]);
            } catch (const ParseError &e) {
                throw ParseError(line_no, e.what());
            }
            ops.push_back({level, MeasureOp{p, meas_index++}});
            continue;
        }
        if (head == "TABLEAU") {
            ops.push_back({level, parse_tableau_literal(toks, n, line_no)});
            continue;
        }
        std::optional<Gate> g = gate_from_name(head);
        if (!g) throw ParseError(line_no, "unknown directive '" + head + "'");
        size_t arity = gate_arity(*g);
        if (toks.size() != 1 + arity)
            throw ParseError(line_no, head + " expects " + std::to_string(arity) + " qubit(s)");
        UnitaryOp op;
        op.gate = g;
        op.local = LocalClifford::of(*g);
        for (size_t i = 1; i < toks.size(); i++) op.qubits.push_back(parse_qubit(toks[i], n, line_no));
        for (size_t i = 0; i < op.qubits.size(); i++)
            for (size_t k = i + 1; k < op.qubits.size(); k++)
                if (op.qubits[i] == op.qubits[k])
                    throw ParseError(line_no, head + ": repeated qubit argument");
        ops.push_back({level, std::move(op)});
    }
    if (!have_qubits) throw ParseError(line_no, "missing QUBITS directive");
    return Circuit(n, level, std::move(ops));
}

Circuit Circuit::parse(const std::string &text) {
    Circuit c = parse_unvalidated(text);
    std::vector<Diagnostic> diags = c.validate();
    if (!diags.empty()) {
        std::string msg = "invalid circuit:";
        for (const auto &d : diags)
            msg += "\n  level " + std::to_string(d.level) + ": " + d.message;
        throw ValidationError(msg);
    }
    return c;
}

std::vector<Diagnostic> Circuit::validate() const {
    std::vector<Diagnostic> diags;
    std::vector<uint32_t> claimed_at(n_, UINT32_MAX);

    for (const Operation &op : ops_) {
        std::vector<uint32_t> sup = op.support();
        for (uint32_t q : sup) {
            if (claimed_at[q] == op.level)
                diags.push_back({op.level, "qubit " + std::to_string(q) +
                                               " used by two operations in one level"});
            claimed_at[q] = op.level;
        }
        if (op.is_measurement()) {
            const MeasureOp &m = op.measurement();
            if (m.op.proj.is_identity())
                diags.push_back({op.level, "measurement of the identity operator"});
            if (!m.op.is_hermitian())
                diags.push_back({op.level, "measured operator is not Hermitian"});
        } else {
            const UnitaryOp &u = op.unitary();
            if (u.local.num_qubits() != u.qubits.size()) {
                diags.push_back({op.level, "tableau image count does not match qubit count"});
                continue;
            }
            if (auto err = u.local.check())
                diags.push_back({op.level, "invalid tableau: " + *err});
        }
    }
    return diags;
}

std::string Circuit::serialize() const {
    std::ostringstream out;
    out << "QUBITS " << n_ << "\n";
    size_t next = 0;
    for (uint32_t level = 1; level <= depth_; level++) {
        if (level > 1) out << "TICK\n";
        while (next < ops_.size() && ops_[next].level == level) {
            const Operation &op = ops_[next++];
            if (op.is_measurement()) {
                out << "M " << op.measurement().op.to_string() << "\n";
            } else {
                const UnitaryOp &u = op.unitary();
                if (u.gate) {
                    out << gate_name(*u.gate);
                    for (uint32_t q : u.qubits) out << " " << q;
                    out << "\n";
                } else {
                    out << "TABLEAU";
                    for (uint32_t q : u.qubits) out << " " << q;
                    out << " {";
                    for (size_t i = 0; i < u.local.num_qubits(); i++) {
                        out << " X" << i << ":" << u.local.img_x[i].to_string();
                        out << " Z" << i << ":" << u.local.img_z[i].to_string();
                    }
                    out << " }\n";
                }
            }
        }
    }
    return out.str();
}

Tableau Circuit::level_unitary(uint32_t level) const {
    std::lock_guard<std::mutex> lock(memo_->mutex);
    auto it = memo_->level.find(level);
    if (it != memo_->level.end()) return it->second;
    Tableau t = Tableau::identity(n_);
    for (const Operation &op : ops_) {
        if (op.level != level || op.is_measurement()) continue;
        const UnitaryOp &u = op.unitary();
        t.install(u.local, u.qubits);
    }
    memo_->level.emplace(level, t);
    return t;
}

Tableau Circuit::level_unitary_inverse(uint32_t level) const {
    {
        std::lock_guard<std::mutex> lock(memo_->mutex);
        auto it = memo_->level_inv.find(level);
        if (it != memo_->level_inv.end()) return it->second;
    }
    Tableau inv = level_unitary(level).inverse();
    std::lock_guard<std::mutex> lock(memo_->mutex);
    memo_->level_inv.emplace(level, inv);
    return inv;
}

Tableau Circuit::window_unitary(uint32_t i, uint32_t j) const {
    if (j <= i) return Tableau::identity(n_);
    uint64_t key = (uint64_t(i) << 32) | j;
    {
        std::lock_guard<std::mutex> lock(memo_->mutex);
        auto it = memo_->window.find(key);
        if (it != memo_->window.end()) return it->second;
    }
    Tableau t = window_unitary(i, j - 1).then(level_unitary(j));
    std::lock_guard<std::mutex> lock(memo_->mutex);
    memo_->window.emplace(key, t);
    return t;
}

BitVec Circuit::busy_mask(uint32_t level) const {
    BitVec mask(n_);
    for (const Operation &op : ops_) {
        if (op.level != level) continue;
        for (uint32_t q : op.support()) mask.set(q, true);
    }
    return mask;
}

} // namespace stc
