#include "stc/fault.hpp"

#include <sstream>

#include "stc/errors.hpp"

namespace stc {

bool FaultOperator::is_identity() const {
    for (const auto &l : layers_)
        if (!l.is_identity()) return false;
    return true;
}

size_t FaultOperator::weight() const {
    size_t w = 0;
    for (const auto &l : layers_) w += l.weight();
    return w;
}

std::vector<std::pair<uint32_t, uint32_t>> FaultOperator::support() const {
    std::vector<std::pair<uint32_t, uint32_t>> s;
    for (uint32_t l = 0; l < layers_.size(); l++)
        for (size_t q : layers_[l].support()) s.emplace_back(l, uint32_t(q));
    return s;
}

FaultOperator &FaultOperator::operator*=(const FaultOperator &o) {
    if (n_ != o.n_ || depth_ != o.depth_)
        throw DimensionError("fault operator dimensions do not match");
    for (size_t l = 0; l < layers_.size(); l++) layers_[l] *= o.layers_[l];
    return *this;
}

bool FaultOperator::operator==(const FaultOperator &o) const {
    return n_ == o.n_ && depth_ == o.depth_ && layers_ == o.layers_;
}

bool FaultOperator::operator<(const FaultOperator &o) const {
    if (n_ != o.n_) return n_ < o.n_;
    if (depth_ != o.depth_) return depth_ < o.depth_;
    for (size_t l = 0; l < layers_.size(); l++)
        if (layers_[l] != o.layers_[l]) return layers_[l] < o.layers_[l];
    return false;
}

uint64_t FaultOperator::hash() const {
    uint64_t h = 0x243f6a8885a308d3ULL ^ (uint64_t(n_) << 32 | depth_);
    for (const auto &l : layers_) h = (h * 0x100000001b3ULL) ^ l.hash();
    return h;
}

BitVec FaultOperator::symplectic() const {
    size_t N = size_t(n_) * layers_.size();
    BitVec v(2 * N);
    for (size_t l = 0; l < layers_.size(); l++)
        for (uint32_t q = 0; q < n_; q++) {
            if (layers_[l].x.get(q)) v.set(l * n_ + q, true);
            if (layers_[l].z.get(q)) v.set(N + l * n_ + q, true);
        }
    return v;
}

FaultOperator FaultOperator::from_symplectic(uint32_t n, uint32_t depth, const BitVec &v) {
    FaultOperator F(n, depth);
    size_t N = size_t(n) * (depth + 1);
    if (v.size() != 2 * N) throw DimensionError("symplectic vector has the wrong length");
    for (size_t l = 0; l <= depth; l++)
        for (uint32_t q = 0; q < n; q++) {
            if (v.get(l * n + q)) F.layers_[l].x.set(q, true);
            if (v.get(N + l * n + q)) F.layers_[l].z.set(q, true);
        }
    return F;
}

std::string FaultOperator::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (size_t l = 0; l < layers_.size(); l++) {
        if (layers_[l].is_identity()) continue;
        if (!first) out << ";";
        out << l << ".5:" << layers_[l].to_string();
        first = false;
    }
    return out.str();
}

FaultOperator FaultOperator::parse(uint32_t n, uint32_t depth, const std::string &text) {
    FaultOperator F(n, depth);
    if (text.empty()) return F;
    std::istringstream in(text);
    std::string entry;
    while (std::getline(in, entry, ';')) {
        size_t colon = entry.find(':');
        if (colon == std::string::npos)
            throw ParseError(0, "fault entry '" + entry + "' is missing ':'");
        std::string lvl = entry.substr(0, colon);
        if (lvl.size() < 3 || lvl.substr(lvl.size() - 2) != ".5")
            throw ParseError(0, "fault half-level '" + lvl + "' must end in .5");
        size_t l = 0;
        try {
            l = std::stoull(lvl.substr(0, lvl.size() - 2));
        } catch (const std::exception &) {
            throw ParseError(0, "bad fault half-level '" + lvl + "'");
        }
        if (l > depth) throw ParseError(0, "fault half-level '" + lvl + "' out of range");
        Pauli p = Pauli::parse(n, entry.substr(colon + 1));
        if (p.is_identity()) throw ParseError(0, "fault layers must be non-identity");
        if (!F.layers_[l].is_identity())
            throw ParseError(0, "duplicate fault layer '" + lvl + "'");
        F.layers_[l] = p;
    }
    return F;
}

int commutator(const FaultOperator &a, const FaultOperator &b) {
    if (a.num_qubits() != b.num_qubits() || a.depth() != b.depth())
        throw DimensionError("fault operator dimensions do not match");
    int c = 0;
    for (size_t l = 0; l < a.num_layers(); l++) c ^= commutator(a.layer(l), b.layer(l));
    return c;
}

FaultOperator eta(const Circuit &c, uint32_t layer, const Pauli &P) {
    if (layer > c.depth()) throw DimensionError("fault layer beyond circuit depth");
    if (P.num_qubits() != c.num_qubits()) throw DimensionError("Pauli width mismatch");
    FaultOperator F(c.num_qubits(), c.depth());
    F.layer(layer) = P;
    return F;
}

FaultOperator cumulant(const Circuit &c, const FaultOperator &F) {
    if (F.num_qubits() != c.num_qubits() || F.depth() != c.depth())
        throw DimensionError("fault operator does not match circuit dimensions");
    FaultOperator out = F;
    for (uint32_t l = 1; l <= c.depth(); l++)
        out.layer(l) = c.level_unitary(l).conjugate(out.layer(l - 1)) * F.layer(l);
    return out;
}

FaultOperator back_cumulant(const Circuit &c, const FaultOperator &F) {
    if (F.num_qubits() != c.num_qubits() || F.depth() != c.depth())
        throw DimensionError("fault operator does not match circuit dimensions");
    FaultOperator out = F;
    for (uint32_t l = c.depth(); l >= 1; l--)
        out.layer(l - 1) = c.level_unitary_inverse(l).conjugate(out.layer(l)) * F.layer(l - 1);
    return out;
}

Effect effect(const Circuit &c, const FaultOperator &F) {
    FaultOperator P = cumulant(c, F);
    Effect e;
    e.f = BitVec(c.num_measurements());
    for (uint32_t j = 0; j < c.num_measurements(); j++) {
        uint32_t lvl = c.measurement_level(j);
        e.f.set(j, commutator(P.layer(lvl - 1), c.measurement(j).op.proj));
    }
    e.E = P.layer(c.depth());
    return e;
}

FaultOperator measured_fault(const Circuit &c, const BitVec &u) {
    if (u.size() != c.num_measurements()) throw DimensionError("check vector length mismatch");
    FaultOperator F(c.num_qubits(), c.depth());
    for (uint32_t j = 0; j < u.size(); j++)
        if (u.get(j)) F.layer(c.measurement_level(j) - 1) *= c.measurement(j).op.proj;
    return F;
}

FaultOperator measured_fault_forward(const Circuit &c, const BitVec &u) {
    if (u.size() != c.num_measurements()) throw DimensionError("check vector length mismatch");
    FaultOperator F(c.num_qubits(), c.depth());
    for (uint32_t j = 0; j < u.size(); j++)
        if (u.get(j)) F.layer(c.measurement_level(j)) *= c.measurement(j).op.proj;
    return F;
}

FaultOperator check_operator(const Circuit &c, const BitVec &u) {
    return back_cumulant(c, measured_fault(c, u));
}

FaultOperator check_operator_forward(const Circuit &c, const BitVec &u) {
    return cumulant(c, measured_fault_forward(c, u));
}

Pauli flip_partner(const PhasedPauli &s) {
    auto sup = s.proj.support();
    if (sup.empty()) throw ValidationError("cannot build a flip partner for the identity");
    size_t q = sup.front();
    char partner = s.proj.letter(q) == 'X' ? 'Z' : 'X';
    return Pauli::single(s.num_qubits(), q, partner);
}

} // namespace stc
