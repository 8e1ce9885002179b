#include "doctest.h"
#include "stc/errors.hpp"
#include "stc/rng.hpp"
#include "stc/tableau.hpp"

using namespace stc;

namespace {

PhasedPauli pp(size_t n, const std::string &s) { return PhasedPauli::parse(n, s); }

Tableau from_word(size_t n, const std::vector<std::pair<Gate, std::vector<uint32_t>>> &word) {
    Tableau t = Tableau::identity(n);
    for (const auto &[g, qs] : word) {
        Tableau lvl = Tableau::identity(n);
        lvl.install(LocalClifford::of(g), qs);
        t = t.then(lvl); // chronological order: later gates conjugate later
    }
    return t;
}

Tableau random_tableau(size_t n, Rng &rng, size_t len = 20) {
    std::vector<std::pair<Gate, std::vector<uint32_t>>> word;
    for (size_t i = 0; i < len; i++) {
        switch (rng.below(4)) {
        case 0: word.push_back({Gate::H, {uint32_t(rng.below(n))}}); break;
        case 1: word.push_back({Gate::S, {uint32_t(rng.below(n))}}); break;
        case 2: word.push_back({Gate::SQRT_X, {uint32_t(rng.below(n))}}); break;
        default: {
            if (n < 2) {
                word.push_back({Gate::H, {0}});
                break;
            }
            uint32_t a = uint32_t(rng.below(n)), b = uint32_t(rng.below(n));
            if (a == b) b = (b + 1) % n;
            word.push_back({Gate::CX, {a, b}});
        }
        }
    }
    return from_word(n, word);
}

PhasedPauli random_phased(size_t n, Rng &rng) {
    Pauli p(n);
    for (size_t q = 0; q < n; q++) {
        const char L[4] = {'I', 'X', 'Y', 'Z'};
        char c = L[rng.below(4)];
        if (c != 'I') p.set_letter(q, c);
    }
    return PhasedPauli(p, uint8_t((p.y_count() + 2 * rng.below(2)) & 3)); // Hermitian
}

} // namespace

TEST_CASE("gate metadata") {
    CHECK(gate_name(Gate::SQRT_X_DAG) == std::string("SQRT_X_DAG"));
    CHECK(gate_from_name("CX") == Gate::CX);
    CHECK(gate_from_name("BOGUS") == std::nullopt);
    CHECK(gate_arity(Gate::CZ) == 2);
    CHECK(gate_arity(Gate::H) == 1);
}

TEST_CASE("named gate images") {
    for (Gate g : {Gate::I, Gate::X, Gate::Y, Gate::Z, Gate::H, Gate::S, Gate::S_DAG,
                   Gate::SQRT_X, Gate::SQRT_X_DAG, Gate::CX, Gate::CZ, Gate::SWAP})
        CHECK(LocalClifford::of(g).check() == std::nullopt);

    Tableau h = from_word(1, {{Gate::H, {0}}});
    CHECK(h.conjugate(pp(1, "X0")) == pp(1, "Z0"));
    CHECK(h.conjugate(pp(1, "Z0")) == pp(1, "X0"));
    CHECK(h.conjugate(pp(1, "Y0")) == pp(1, "-Y0"));

    Tableau s = from_word(1, {{Gate::S, {0}}});
    CHECK(s.conjugate(pp(1, "X0")) == pp(1, "Y0"));
    CHECK(s.conjugate(pp(1, "Y0")) == pp(1, "-X0"));
    CHECK(s.conjugate(pp(1, "Z0")) == pp(1, "Z0"));

    Tableau sdag = from_word(1, {{Gate::S_DAG, {0}}});
    CHECK(sdag.conjugate(pp(1, "X0")) == pp(1, "-Y0"));

    Tableau sx = from_word(1, {{Gate::SQRT_X, {0}}});
    CHECK(sx.conjugate(pp(1, "Z0")) == pp(1, "-Y0"));
    CHECK(sx.conjugate(pp(1, "Y0")) == pp(1, "Z0"));
    CHECK(from_word(1, {{Gate::SQRT_X_DAG, {0}}}).conjugate(pp(1, "Z0")) == pp(1, "Y0"));

    Tableau x = from_word(1, {{Gate::X, {0}}});
    CHECK(x.conjugate(pp(1, "Z0")) == pp(1, "-Z0"));
    CHECK(x.conjugate(pp(1, "X0")) == pp(1, "X0"));

    Tableau cx = from_word(2, {{Gate::CX, {0, 1}}});
    CHECK(cx.conjugate(pp(2, "X0")) == pp(2, "X0*X1"));
    CHECK(cx.conjugate(pp(2, "X1")) == pp(2, "X1"));
    CHECK(cx.conjugate(pp(2, "Z0")) == pp(2, "Z0"));
    CHECK(cx.conjugate(pp(2, "Z1")) == pp(2, "Z0*Z1"));

    Tableau cz = from_word(2, {{Gate::CZ, {0, 1}}});
    CHECK(cz.conjugate(pp(2, "X0")) == pp(2, "X0*Z1"));
    CHECK(cz.conjugate(pp(2, "X1")) == pp(2, "Z0*X1"));
    CHECK(cz.conjugate(pp(2, "Z0")) == pp(2, "Z0"));

    Tableau swap = from_word(2, {{Gate::SWAP, {0, 1}}});
    CHECK(swap.conjugate(pp(2, "X0*Z1")) == pp(2, "Z0*X1"));
}

TEST_CASE("install with permuted qubit list") {
    Tableau t = Tableau::identity(3);
    t.install(LocalClifford::of(Gate::CX), {2, 0}); // control 2, target 0
    CHECK(t.conjugate(pp(3, "X2")) == pp(3, "X0*X2"));
    CHECK(t.conjugate(pp(3, "Z0")) == pp(3, "Z0*Z2"));
    CHECK(t.conjugate(pp(3, "X1")) == pp(3, "X1"));
}

TEST_CASE("embed") {
    PhasedPauli local = pp(1, "-Y0");
    CHECK(embed(local, {2}, 4) == pp(4, "-Y2"));
    CHECK(embed(pp(2, "X0*Z1"), {3, 1}, 4) == pp(4, "Z1*X3"));
}

TEST_CASE("then composes chronologically") {
    // Apply S first, then H: the combined conjugation sends X -> H(S X S^-1)H^-1
    // = H Y H^-1 = -Y.
    Tableau t = from_word(1, {{Gate::S, {0}}, {Gate::H, {0}}});
    CHECK(t.conjugate(pp(1, "X0")) == pp(1, "-Y0"));
    // Other order: H first then S sends X -> S Z S^-1 = Z.
    Tableau u = from_word(1, {{Gate::H, {0}}, {Gate::S, {0}}});
    CHECK(u.conjugate(pp(1, "X0")) == pp(1, "Z0"));
}

TEST_CASE("conjugation is a group homomorphism") {
    Rng rng(99);
    for (int trial = 0; trial < 40; trial++) {
        size_t n = 1 + rng.below(5);
        Tableau t = random_tableau(n, rng);
        PhasedPauli a = random_phased(n, rng), b = random_phased(n, rng);
        CHECK(t.conjugate(a * b) == t.conjugate(a) * t.conjugate(b));
        // preserves commutators and hermiticity
        CHECK(commutator(t.conjugate(a), t.conjugate(b)) == commutator(a, b));
        CHECK(t.conjugate(a).is_hermitian());
        // phase-free path agrees projectively
        CHECK(t.conjugate(a.proj) == t.conjugate(a).proj);
    }
}

TEST_CASE("inverse") {
    CHECK(from_word(1, {{Gate::S, {0}}}).inverse() == from_word(1, {{Gate::S_DAG, {0}}}));
    CHECK(from_word(1, {{Gate::H, {0}}}).inverse() == from_word(1, {{Gate::H, {0}}}));
    Rng rng(4242);
    for (int trial = 0; trial < 30; trial++) {
        size_t n = 1 + rng.below(5);
        Tableau t = random_tableau(n, rng);
        Tableau ti = t.inverse();
        CHECK(t.then(ti).is_identity());
        CHECK(ti.then(t).is_identity());
        PhasedPauli a = random_phased(n, rng);
        CHECK(ti.conjugate(t.conjugate(a)) == a);
    }
}

TEST_CASE("local clifford check rejects bad images") {
    LocalClifford bad;
    bad.img_x = {pp(1, "X0")};
    bad.img_z = {pp(1, "X0")}; // images must anticommute
    CHECK(bad.check().has_value());

    LocalClifford nonherm;
    nonherm.img_x = {PhasedPauli(Pauli::single(1, 0, 'X'), 1)}; // iX
    nonherm.img_z = {pp(1, "Z0")};
    CHECK(nonherm.check().has_value());

    LocalClifford two;
    two.img_x = {pp(2, "X0"), pp(2, "X0*X1")};
    two.img_z = {pp(2, "Z0*Z1"), pp(2, "Z1")}; // valid CX-like tableau
    CHECK(two.check() == std::nullopt);
}
