#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stc/pauli.hpp"

namespace stc {

enum class Gate : uint8_t { I, X, Y, Z, H, S, S_DAG, SQRT_X, SQRT_X_DAG, CX, CZ, SWAP };

const char *gate_name(Gate g);
std::optional<Gate> gate_from_name(const std::string &name);
size_t gate_arity(Gate g);

// Clifford unitary on w qubits, represented by the conjugation images of the
// generators X_0..X_{w-1}, Z_0..Z_{w-1}.
struct LocalClifford {
    std::vector<PhasedPauli> img_x, img_z;

    size_t num_qubits() const { return img_x.size(); }
    static const LocalClifford &of(Gate g);

    // Images must be Hermitian and preserve the commutation relations.
    // Returns an explanation of the first violation, or nullopt if valid.
    std::optional<std::string> check() const;
};

// Conjugation action of an n-qubit Clifford unitary U: stores U X_q U^-1 and
// U Z_q U^-1 for every qubit.
class Tableau {
  public:
    explicit Tableau(size_t n);
    static Tableau identity(size_t n) { return Tableau(n); }

    size_t num_qubits() const { return n_; }
    const PhasedPauli &image_x(size_t q) const { return img_x_[q]; }
    const PhasedPauli &image_z(size_t q) const { return img_z_[q]; }

    // Overwrite the images of the listed qubits with the embedded local
    // Clifford (local qubit i at position qubits[i]). Used to assemble the
    // tableau of one circuit level from its disjoint operations.
    void install(const LocalClifford &local, const std::vector<uint32_t> &qubits);

    PhasedPauli conjugate(const PhasedPauli &p) const;
    // Phase-free fast path: the projective action is GF(2)-linear.
    Pauli conjugate(const Pauli &p) const;

    // Conjugation by (this, then other), i.e. by the unitary U_other * U_this.
    Tableau then(const Tableau &other) const;
    Tableau inverse() const;

    bool is_identity() const;
    bool operator==(const Tableau &o) const { return img_x_ == o.img_x_ && img_z_ == o.img_z_; }

  private:
    size_t n_;
    std::vector<PhasedPauli> img_x_, img_z_;
};

// Embed a Pauli on w qubits into n qubits with local qubit i at qubits[i].
PhasedPauli embed(const PhasedPauli &local, const std::vector<uint32_t> &qubits, size_t n);

} // namespace stc
