#include "stc/tableau.hpp"

#include <array>

#include "stc/errors.hpp"

namespace stc {

namespace {

struct GateInfo {
    Gate gate;
    const char *name;
    size_t arity;
};

constexpr std::array<GateInfo, 12> kGates{{
    {Gate::I, "I", 1},
    {Gate::X, "X", 1},
    {Gate::Y, "Y", 1},
    {Gate::Z, "Z", 1},
    {Gate::H, "H", 1},
    {Gate::S, "S", 1},
    {Gate::S_DAG, "S_DAG", 1},
    {Gate::SQRT_X, "SQRT_X", 1},
    {Gate::SQRT_X_DAG, "SQRT_X_DAG", 1},
    {Gate::CX, "CX", 2},
    {Gate::CZ, "CZ", 2},
    {Gate::SWAP, "SWAP", 2},
}};

LocalClifford make_local(size_t w, std::initializer_list<const char *> x_images,
                         std::initializer_list<const char *> z_images) {
    LocalClifford c;
    for (const char *s : x_images) c.img_x.push_back(PhasedPauli::parse(w, s));
    for (const char *s : z_images) c.img_z.push_back(PhasedPauli::parse(w, s));
    return c;
}

} // namespace

const char *gate_name(Gate g) { return kGates[static_cast<size_t>(g)].name; }

std::optional<Gate> gate_from_name(const std::string &name) {
    for (const auto &info : kGates)
        if (name == info.name) return info.gate;
    return std::nullopt;
}

size_t gate_arity(Gate g) { return kGates[static_cast<size_t>(g)].arity; }

const LocalClifford &LocalClifford::of(Gate g) {
    static const std::array<LocalClifford, 12> table = {
        make_local(1, {"+X0"}, {"+Z0"}),                     // I
        make_local(1, {"+X0"}, {"-Z0"}),                     // X
        make_local(1, {"-X0"}, {"-Z0"}),                     // Y
        make_local(1, {"-X0"}, {"+Z0"}),                     // Z
        make_local(1, {"+Z0"}, {"+X0"}),                     // H
        make_local(1, {"+Y0"}, {"+Z0"}),                     // S
        make_local(1, {"-Y0"}, {"+Z0"}),                     // S_DAG
        make_local(1, {"+X0"}, {"-Y0"}),                     // SQRT_X
        make_local(1, {"+X0"}, {"+Y0"}),                     // SQRT_X_DAG
        make_local(2, {"+X0*X1", "+X1"}, {"+Z0", "+Z0*Z1"}), // CX (control, target)
        make_local(2, {"+X0*Z1", "+Z0*X1"}, {"+Z0", "+Z1"}), // CZ
        make_local(2, {"+X1", "+X0"}, {"+Z1", "+Z0"}),       // SWAP
    };
    return table[static_cast<size_t>(g)];
}

std::optional<std::string> LocalClifford::check() const {
    size_t w = img_x.size();
    if (img_z.size() != w) return "tableau must have matching X/Z image counts";
    for (size_t i = 0; i < w; i++) {
        if (img_x[i].num_qubits() != w || img_z[i].num_qubits() != w)
            return "tableau image has wrong qubit count";
        if (!img_x[i].is_hermitian() || !img_z[i].is_hermitian())
            return "tableau image is not Hermitian";
    }
    for (size_t i = 0; i < w; i++) {
        for (size_t j = 0; j < w; j++) {
            if (commutator(img_x[i], img_x[j]) != 0) return "X images must commute";
            if (commutator(img_z[i], img_z[j]) != 0) return "Z images must commute";
            int expect = i == j ? 1 : 0;
            if (commutator(img_x[i], img_z[j]) != expect)
                return "tableau images break the X/Z commutation relations";
        }
    }
    return std::nullopt;
}

PhasedPauli embed(const PhasedPauli &local, const std::vector<uint32_t> &qubits, size_t n) {
    PhasedPauli out(n);
    out.phase_exp = local.phase_exp;
    for (size_t i = 0; i < local.num_qubits(); i++) {
        out.proj.x.set(qubits[i], local.proj.x.get(i));
        out.proj.z.set(qubits[i], local.proj.z.get(i));
    }
    return out;
}

Tableau::Tableau(size_t n) : n_(n) {
    img_x_.reserve(n);
    img_z_.reserve(n);
    for (size_t q = 0; q < n; q++) {
        img_x_.push_back(PhasedPauli(Pauli::single(n, q, 'X'), 0));
        img_z_.push_back(PhasedPauli(Pauli::single(n, q, 'Z'), 0));
    }
}

void Tableau::install(const LocalClifford &local, const std::vector<uint32_t> &qubits) {
    if (local.num_qubits() != qubits.size()) throw DimensionError("install: qubit count mismatch");
    for (size_t i = 0; i < qubits.size(); i++) {
        img_x_[qubits[i]] = embed(local.img_x[i], qubits, n_);
        img_z_[qubits[i]] = embed(local.img_z[i], qubits, n_);
    }
}

PhasedPauli Tableau::conjugate(const PhasedPauli &p) const {
    if (p.num_qubits() != n_) throw DimensionError("conjugate: qubit count mismatch");
    // The operator factorizes as i^phase * prod_q X_q^x Z_q^z with cross-qubit
    // factors commuting, so conjugation maps each factor to its image.
    PhasedPauli out(n_);
    out.phase_exp = p.phase_exp;
    for (size_t q = 0; q < n_; q++) {
        if (p.proj.x.get(q)) out *= img_x_[q];
        if (p.proj.z.get(q)) out *= img_z_[q];
    }
    return out;
}

Pauli Tableau::conjugate(const Pauli &p) const {
    if (p.num_qubits() != n_) throw DimensionError("conjugate: qubit count mismatch");
    Pauli out(n_);
    for (size_t q = 0; q < n_; q++) {
        if (p.x.get(q)) out *= img_x_[q].proj;
        if (p.z.get(q)) out *= img_z_[q].proj;
    }
    return out;
}

Tableau Tableau::then(const Tableau &other) const {
    if (other.n_ != n_) throw DimensionError("then: qubit count mismatch");
    Tableau r(n_);
    for (size_t q = 0; q < n_; q++) {
        r.img_x_[q] = other.conjugate(img_x_[q]);
        r.img_z_[q] = other.conjugate(img_z_[q]);
    }
    return r;
}

Tableau Tableau::inverse() const {
    // The projective action is a symplectic 2n x 2n matrix M over GF(2) whose
    // column g is the image of generator g (X_0..X_{n-1}, Z_0..Z_{n-1}).
    // Gauss-Jordan on [M | I] yields M^-1; the phase of each preimage is then
    // fixed by one forward conjugation.
    size_t dim = 2 * n_;
    std::vector<BitVec> rows(dim, BitVec(2 * dim));
    for (size_t g = 0; g < dim; g++) {
        const Pauli &img = (g < n_ ? img_x_[g] : img_z_[g - n_]).proj;
        for (size_t q = 0; q < n_; q++) {
            if (img.x.get(q)) rows[q].set(g, true);
            if (img.z.get(q)) rows[n_ + q].set(g, true);
        }
    }
    for (size_t r = 0; r < dim; r++) rows[r].set(dim + r, true);

    size_t done = 0;
    for (size_t col = 0; col < dim; col++) {
        size_t pivot = dim;
        for (size_t r = done; r < dim; r++) {
            if (rows[r].get(col)) {
                pivot = r;
                break;
            }
        }
        if (pivot == dim) throw InternalError("tableau matrix is singular");
        std::swap(rows[done], rows[pivot]);
        for (size_t r = 0; r < dim; r++)
            if (r != done && rows[r].get(col)) rows[r] ^= rows[done];
        done++;
    }

    Tableau inv(n_);
    for (size_t g = 0; g < dim; g++) {
        Pauli pre(n_);
        for (size_t r = 0; r < dim; r++) {
            if (rows[r].get(dim + g)) {
                // Row r of M^-1 corresponds to generator component r.
                if (r < n_)
                    pre.x.set(r, true);
                else
                    pre.z.set(r - n_, true);
            }
        }
        PhasedPauli candidate(pre, 0);
        PhasedPauli image = conjugate(candidate);
        PhasedPauli result(pre, uint8_t(4 - image.phase_exp));
        size_t q = g < n_ ? g : g - n_;
        Pauli target = Pauli::single(n_, q, g < n_ ? 'X' : 'Z');
        if (image.proj != target) throw InternalError("tableau inverse image mismatch");
        if (g < n_)
            inv.img_x_[q] = result;
        else
            inv.img_z_[q] = result;
    }
    return inv;
}

bool Tableau::is_identity() const {
    for (size_t q = 0; q < n_; q++) {
        if (img_x_[q] != PhasedPauli(Pauli::single(n_, q, 'X'), 0)) return false;
        if (img_z_[q] != PhasedPauli(Pauli::single(n_, q, 'Z'), 0)) return false;
    }
    return true;
}

} // namespace stc
