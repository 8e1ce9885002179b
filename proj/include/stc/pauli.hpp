#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stc/bitvec.hpp"

namespace stc {

// n-qubit Pauli operator modulo phase: product over qubits of X^x_q Z^z_q.
struct Pauli {
    BitVec x, z;

    Pauli() = default;
    explicit Pauli(size_t n) : x(n), z(n) {}

    static Pauli identity(size_t n) { return Pauli(n); }
    // letter in {'X','Y','Z'}.
    static Pauli single(size_t n, size_t q, char letter);

    size_t num_qubits() const { return x.size(); }
    bool is_identity() const { return !x.any() && !z.any(); }
    size_t weight() const;
    std::vector<size_t> support() const;
    size_t y_count() const { return (x & z).count(); }

    // 'I','X','Y','Z' at qubit q.
    char letter(size_t q) const;
    void set_letter(size_t q, char letter);

    Pauli &operator*=(const Pauli &o) {
        x ^= o.x;
        z ^= o.z;
        return *this;
    }
    Pauli operator*(const Pauli &o) const {
        Pauli r = *this;
        r *= o;
        return r;
    }

    // Keep only the components at qubits where mask is set.
    Pauli restricted(const BitVec &mask) const { return Pauli{x & mask, z & mask}; }

    bool operator==(const Pauli &o) const { return x == o.x && z == o.z; }
    bool operator!=(const Pauli &o) const { return !(*this == o); }
    bool operator<(const Pauli &o) const { return x != o.x ? x < o.x : z < o.z; }
    uint64_t hash() const { return x.hash() * 0x9e3779b97f4a7c15ULL ^ z.hash(); }

    // Canonical text: factors in ascending qubit order, e.g. "X0*Z3*Y7"; "I" if empty.
    std::string to_string() const;
    static Pauli parse(size_t n, const std::string &text);

    Pauli(BitVec x_, BitVec z_) : x(std::move(x_)), z(std::move(z_)) {}
};

// Symplectic commutator: 0 if the operators commute, 1 if they anticommute.
inline int commutator(const Pauli &a, const Pauli &b) {
    return (a.x.dot(b.z) ^ a.z.dot(b.x)) ? 1 : 0;
}

// Concatenated (x || z) bit representation, length 2n.
BitVec symplectic_vector(const Pauli &p);
Pauli pauli_from_symplectic(const BitVec &v);

// n-qubit Pauli with phase: i^phase_exp * prod_q X^x_q Z^z_q, phase_exp mod 4.
struct PhasedPauli {
    Pauli proj;
    uint8_t phase_exp = 0;

    PhasedPauli() = default;
    explicit PhasedPauli(size_t n) : proj(n) {}
    PhasedPauli(Pauli p, uint8_t phase) : proj(std::move(p)), phase_exp(phase & 3) {}

    static PhasedPauli identity(size_t n) { return PhasedPauli(n); }

    size_t num_qubits() const { return proj.num_qubits(); }

    // Hermitian iff phase_exp and the number of Y factors have equal parity.
    bool is_hermitian() const { return ((phase_exp + proj.y_count()) & 1) == 0; }
    // +1 or -1; requires a Hermitian operator.
    int sign() const;
    // Same projective content, opposite sign.
    PhasedPauli negated() const { return PhasedPauli(proj, uint8_t(phase_exp + 2)); }

    PhasedPauli &operator*=(const PhasedPauli &o) {
        phase_exp = uint8_t((phase_exp + o.phase_exp + 2 * proj.z.dot(o.proj.x)) & 3);
        proj *= o.proj;
        return *this;
    }
    PhasedPauli operator*(const PhasedPauli &o) const {
        PhasedPauli r = *this;
        r *= o;
        return r;
    }

    bool operator==(const PhasedPauli &o) const {
        return phase_exp == o.phase_exp && proj == o.proj;
    }
    bool operator!=(const PhasedPauli &o) const { return !(*this == o); }

    // Canonical text: explicit sign then factors, e.g. "+X0*Z3", "-Y2", "+I".
    // Requires a Hermitian operator.
    std::string to_string() const;
    // Sign optional on input. Rejects duplicate qubit indices.
    static PhasedPauli parse(size_t n, const std::string &text);

    // Hermitian operator from a sign and per-qubit letters.
    static PhasedPauli from_sign_letters(size_t n, bool negative,
                                         const std::vector<std::pair<size_t, char>> &factors);
};

inline int commutator(const PhasedPauli &a, const PhasedPauli &b) {
    return commutator(a.proj, b.proj);
}

} // namespace stc
