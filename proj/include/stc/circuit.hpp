#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <variant>
#include <vector>

#include "stc/tableau.hpp"

namespace stc {

struct UnitaryOp {
    // Set for named gates; TABLEAU literals leave it empty and carry images only.
    std::optional<Gate> gate;
    LocalClifford local;
    std::vector<uint32_t> qubits;

    bool operator==(const UnitaryOp &o) const {
        return gate == o.gate && qubits == o.qubits && local.img_x == o.local.img_x &&
               local.img_z == o.local.img_z;
    }
};

struct MeasureOp {
    PhasedPauli op;  // Hermitian, sign included
    uint32_t index;  // 0-based position among the circuit's measurements

    bool operator==(const MeasureOp &o) const { return op == o.op && index == o.index; }
};

struct Operation {
    uint32_t level; // 1-based
    std::variant<UnitaryOp, MeasureOp> body;

    bool is_measurement() const { return std::holds_alternative<MeasureOp>(body); }
    const UnitaryOp &unitary() const { return std::get<UnitaryOp>(body); }
    const MeasureOp &measurement() const { return std::get<MeasureOp>(body); }
    std::vector<uint32_t> support() const;

    bool operator==(const Operation &o) const { return level == o.level && body == o.body; }
};

struct Diagnostic {
    uint32_t level;
    std::string message;
};

// Leveled Clifford circuit: levels 1..depth separated by TICK, each level a set
// of support-disjoint Clifford unitaries and Pauli-product measurements.
class Circuit {
  public:
    Circuit() : memo_(std::make_unique<Memo>()) {}
    Circuit(uint32_t n, uint32_t depth, std::vector<Operation> ops);
    Circuit(const Circuit &o);
    Circuit &operator=(const Circuit &o);
    Circuit(Circuit &&) = default;
    Circuit &operator=(Circuit &&) = default;

    // Throws ParseError for syntax, ValidationError if diagnostics are found.
    static Circuit parse(const std::string &text);
    // Syntax only; semantic problems are left for validate().
    static Circuit parse_unvalidated(const std::string &text);

    std::vector<Diagnostic> validate() const;
    std::string serialize() const;

    uint32_t num_qubits() const { return n_; }
    uint32_t depth() const { return depth_; }
    uint32_t num_measurements() const { return uint32_t(meas_ops_.size()); }
    const std::vector<Operation> &operations() const { return ops_; }

    const MeasureOp &measurement(uint32_t j) const { return ops_[meas_ops_[j]].measurement(); }
    uint32_t measurement_level(uint32_t j) const { return ops_[meas_ops_[j]].level; }

    // Product of the unitaries at one level (identity if none). Memoized.
    Tableau level_unitary(uint32_t level) const;
    Tableau level_unitary_inverse(uint32_t level) const;
    // U_{i,j} = U_j * ... * U_{i+1}; identity when j <= i. Memoized.
    Tableau window_unitary(uint32_t i, uint32_t j) const;

    // Qubits touched by any operation at the given level.
    BitVec busy_mask(uint32_t level) const;

    bool operator==(const Circuit &o) const {
        return n_ == o.n_ && depth_ == o.depth_ && ops_ == o.ops_;
    }

  private:
    struct Memo {
        std::mutex mutex;
        std::map<uint32_t, Tableau> level, level_inv;
        std::map<uint64_t, Tableau> window;
    };

    void index_measurements();

    uint32_t n_ = 0;
    uint32_t depth_ = 1;
    std::vector<Operation> ops_;
    std::vector<size_t> meas_ops_;
    mutable std::unique_ptr<Memo> memo_;
};

} // namespace stc
