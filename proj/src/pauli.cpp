#include "stc/pauli.hpp"

#include <bit>

#include "stc/errors.hpp"

namespace stc {

Pauli Pauli::single(size_t n, size_t q, char letter) {
    Pauli p(n);
    p.set_letter(q, letter);
    return p;
}

size_t Pauli::weight() const {
    size_t c = 0;
    for (size_t i = 0; i < x.words().size(); i++) c += std::popcount(x.words()[i] | z.words()[i]);
    return c;
}

std::vector<size_t> Pauli::support() const {
    std::vector<size_t> out;
    for (size_t q = 0; q < num_qubits(); q++)
        if (x.get(q) || z.get(q)) out.push_back(q);
    return out;
}

char Pauli::letter(size_t q) const {
    bool xb = x.get(q), zb = z.get(q);
    if (xb && zb) return 'Y';
    if (xb) return 'X';
    if (zb) return 'Z';
    return 'I';
}

void Pauli::set_letter(size_t q, char letter) {
    switch (letter) {
        case 'I': x.set(q, false); z.set(q, false); break;
        case 'X': x.set(q, true); z.set(q, false); break;
        case 'Y': x.set(q, true); z.set(q, true); break;
        case 'Z': x.set(q, false); z.set(q, true); break;
        default: throw ParseError(std::string("invalid pauli letter '") + letter + "'");
    }
}

std::string Pauli::to_string() const {
    if (is_identity()) return "I";
    std::string s;
    for (size_t q = 0; q < num_qubits(); q++) {
        char c = letter(q);
        if (c == 'I') continue;
        if (!s.empty()) s += '*';
        s += c;
        s += std::to_string(q);
    }
    return s;
}

namespace {

// Shared factor parser for "X0*Z3*Y7" (no sign). Rejects duplicate qubits.
std::vector<std::pair<size_t, char>> parse_factors(size_t n, const std::string &body) {
    std::vector<std::pair<size_t, char>> factors;
    if (body == "I") return factors;
    if (body.empty()) throw ParseError("empty pauli string");
    size_t pos = 0;
    std::vector<bool> seen(n, false);
    while (pos < body.size()) {
        char c = body[pos];
        if (c != 'X' && c != 'Y' && c != 'Z')
            throw ParseError("expected pauli letter in '" + body + "'");
        pos++;
        size_t start = pos;
        while (pos < body.size() && body[pos] >= '0' && body[pos] <= '9') pos++;
        if (pos == start) throw ParseError("missing qubit index in '" + body + "'");
        size_t q = std::stoull(body.substr(start, pos - start));
        if (q >= n)
            throw ParseError("qubit index " + std::to_string(q) + " out of range (n=" +
                             std::to_string(n) + ")");
        if (seen[q]) throw ParseError("duplicate qubit " + std::to_string(q) + " in pauli string");
        seen[q] = true;
        factors.emplace_back(q, c);
        if (pos < body.size()) {
            if (body[pos] != '*') throw ParseError("expected '*' in '" + body + "'");
            pos++;
            if (pos == body.size()) throw ParseError("trailing '*' in '" + body + "'");
        }
    }
    return factors;
}

} // namespace

Pauli Pauli::parse(size_t n, const std::string &text) {
    Pauli p(n);
    for (auto &[q, c] : parse_factors(n, text)) p.set_letter(q, c);
    return p;
}

int PhasedPauli::sign() const {
    if (!is_hermitian()) throw InternalError("sign() on non-Hermitian pauli");
    // Operator = sign * prod of per-qubit letters, and letters contribute i^y_count.
    return ((phase_exp - proj.y_count()) & 3) == 0 ? +1 : -1;
}

std::string PhasedPauli::to_string() const {
    if (!is_hermitian()) throw InternalError("to_string() on non-Hermitian pauli");
    return (sign() > 0 ? "+" : "-") + proj.to_string();
}

PhasedPauli PhasedPauli::parse(size_t n, const std::string &text) {
    bool negative = false;
    std::string body = text;
    if (!body.empty() && (body[0] == '+' || body[0] == '-')) {
        negative = body[0] == '-';
        body = body.substr(1);
    }
    return from_sign_letters(n, negative, parse_factors(n, body));
}

PhasedPauli PhasedPauli::from_sign_letters(size_t n, bool negative,
                                           const std::vector<std::pair<size_t, char>> &factors) {
    PhasedPauli p(n);
    size_t ys = 0;
    for (auto &[q, c] : factors) {
        p.proj.set_letter(q, c);
        if (c == 'Y') ys++;
    }
    p.phase_exp = uint8_t((ys + (negative ? 2 : 0)) & 3);
    return p;
}

BitVec symplectic_vector(const Pauli &p) {
    size_t n = p.num_qubits();
    BitVec v(2 * n);
    for (size_t q = 0; q < n; q++) {
        if (p.x.get(q)) v.set(q, true);
        if (p.z.get(q)) v.set(n + q, true);
    }
    return v;
}

Pauli pauli_from_symplectic(const BitVec &v) {
    size_t n = v.size() / 2;
    Pauli p(n);
    for (size_t q = 0; q < n; q++) {
        if (v.get(q)) p.x.set(q, true);
        if (v.get(n + q)) p.z.set(q, true);
    }
    return p;
}

} // namespace stc
