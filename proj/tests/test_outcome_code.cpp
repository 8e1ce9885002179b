#include "doctest.h"
#include "stc/errors.hpp"
#include "stc/outcome_code.hpp"

using namespace stc;

static PhasedPauli pp(size_t n, const std::string &s) { return PhasedPauli::parse(n, s); }
static BitVec bits(const std::string &s) { return BitVec::from_string(s); }

TEST_CASE("repeated Z measurement gives one check and output group Z") {
    Circuit c = Circuit::parse("QUBITS 1\nM Z0\nTICK\nM Z0\n");
    OutcomeAnalysis a = compute_outcome_code(c);
    REQUIRE(a.code.checks.size() == 1);
    CHECK(a.code.checks[0].u == bits("11"));
    CHECK(a.code.checks[0].b == false);
    CHECK(a.code.dimension() == 1);
    REQUIRE(a.group.generators.size() == 1);
    CHECK(a.group.generators[0] == pp(1, "+Z0"));
    CHECK(a.group.logicals.empty());
    CHECK(a.code.is_linear());
}

TEST_CASE("a Z gate between X measurements flips the check constant") {
    Circuit c = Circuit::parse("QUBITS 1\nM X0\nTICK\nZ 0\nTICK\nM X0\n");
    OutcomeAnalysis a = compute_outcome_code(c);
    REQUIRE(a.code.checks.size() == 1);
    CHECK(a.code.checks[0].u == bits("11"));
    CHECK(a.code.checks[0].b == true);
    CHECK(!a.code.is_linear());
}

TEST_CASE("Bell-type measurement sequence") {
    Circuit c = Circuit::parse("QUBITS 2\nM Z0*Z1\nTICK\nM X0*X1\nTICK\nM Z0*Z1\n");
    OutcomeAnalysis a = compute_outcome_code(c);
    REQUIRE(a.code.checks.size() == 1);
    CHECK(a.code.checks[0].u == bits("101"));
    CHECK(a.code.checks[0].b == false);
    CHECK(a.code.dimension() == 2);
    CHECK(a.group.generators.size() == 2); // ZZ and XX stabilize the output
    CHECK(a.group.logicals.empty());
}

TEST_CASE("membership_and_decompose") {
    size_t n = 2;
    AugmentedSet S = {{pp(n, "Z0"), BitVec::unit(3, 0)}, {pp(n, "Z1"), BitVec::unit(3, 1)}};
    auto d = membership_and_decompose(S, pp(n, "Z0*Z1"));
    REQUIRE(d.has_value());
    CHECK(!d->negative);
    CHECK(d->rows == bits("11"));

    CHECK(!membership_and_decompose({{pp(n, "Z0"), BitVec(1)}}, pp(n, "X0")).has_value());
    CHECK(!membership_and_decompose({{pp(n, "Z0"), BitVec(1)}}, pp(n, "Z1")).has_value());

    AugmentedSet Sx = {{pp(1, "+X0"), BitVec::unit(1, 0)}};
    auto neg = membership_and_decompose(Sx, pp(1, "-X0"));
    REQUIRE(neg.has_value());
    CHECK(neg->negative);
    CHECK(neg->rows == bits("1"));
}

TEST_CASE("anticommuting_update") {
    AugmentedSet S = {{pp(1, "Z0"), BitVec::unit(2, 0)}};
    anticommuting_update(S, {pp(1, "X0"), BitVec::unit(2, 1)});
    REQUIRE(S.size() == 1);
    CHECK(S[0].op == pp(1, "X0"));

    AugmentedSet S2 = {{pp(2, "Z0"), BitVec::unit(3, 0)}, {pp(2, "Z1"), BitVec::unit(3, 1)}};
    anticommuting_update(S2, {pp(2, "X0*X1"), BitVec::unit(3, 2)});
    REQUIRE(S2.size() == 2);
    CHECK(S2[0].op == pp(2, "Z0*Z1"));
    CHECK(S2[0].prov == bits("110"));
    CHECK(S2[1].op == pp(2, "X0*X1"));

    AugmentedSet S3 = {{pp(2, "Z0*Z1"), BitVec::unit(2, 0)}};
    anticommuting_update(S3, {pp(2, "X0"), BitVec::unit(2, 1)});
    REQUIRE(S3.size() == 1);
    CHECK(S3[0].op == pp(2, "X0"));

    AugmentedSet S4 = {{pp(1, "Z0"), BitVec::unit(1, 0)}};
    CHECK_THROWS_AS(anticommuting_update(S4, {pp(1, "Z0"), BitVec::unit(1, 0)}), InternalError);
}

TEST_CASE("linearize flips exactly the firing measurement") {
    Circuit c = Circuit::parse("QUBITS 1\nM X0\nTICK\nZ 0\nTICK\nM X0\n");
    Circuit lin = linearize(c);
    CHECK(lin.measurement(0).op == pp(1, "+X0"));
    CHECK(lin.measurement(1).op == pp(1, "-X0"));
    OutcomeAnalysis a = compute_outcome_code(lin);
    REQUIRE(a.code.checks.size() == 1);
    CHECK(a.code.checks[0].b == false);
    CHECK(a.code.checks[0].u == bits("11"));

    // projective parts unchanged, idempotent, fixed point on linear circuits
    for (uint32_t j = 0; j < 2; j++)
        CHECK(lin.measurement(j).op.proj == c.measurement(j).op.proj);
    CHECK(linearize(lin) == lin);
    Circuit simple = Circuit::parse("QUBITS 1\nM Z0\nTICK\nM Z0\n");
    CHECK(linearize(simple) == simple);
}

TEST_CASE("syndrome_O") {
    OutcomeCode code;
    code.m = 2;
    code.checks = {{bits("11"), false}};
    CHECK(syndrome_O(code, bits("11")) == bits("0"));
    CHECK(syndrome_O(code, bits("00")) == bits("0"));
    CHECK(syndrome_O(code, bits("10")) == bits("1"));
    CHECK_THROWS_AS(syndrome_O(code, bits("101")), DimensionError);

    OutcomeCode affine;
    affine.m = 2;
    affine.checks = {{bits("11"), true}};
    CHECK(syndrome_O(affine, bits("10")) == bits("0"));
    CHECK(affine.particular_solution() == bits("01"));
    CHECK(syndrome_O(affine, affine.particular_solution()) == bits("0"));
}

TEST_CASE("codeword basis spans the check nullspace") {
    Circuit c = Circuit::parse("QUBITS 2\nM Z0*Z1\nTICK\nM X0*X1\nTICK\nM Z0*Z1\n");
    OutcomeCode code = compute_outcome_code(c).code;
    auto basis = code.codeword_basis();
    CHECK(basis.size() == code.dimension());
    for (const auto &v : basis) CHECK(!code.syndrome(v).any());
}

TEST_CASE("measurements through unitaries: GHZ-style parity") {
    // Prepare-measure-repeat across a CX: M Z0, CX 0 1, then M Z0*Z1 twice.
    Circuit c = Circuit::parse("QUBITS 2\nM Z0\nTICK\nCX 0 1\nTICK\nM Z0*Z1\nTICK\nM Z0*Z1\n");
    OutcomeAnalysis a = compute_outcome_code(c);
    // Second parity repeats the first: one check on measurements 2,3.
    REQUIRE(a.code.checks.size() == 1);
    CHECK(a.code.checks[0].u == bits("011"));
    CHECK(a.code.checks[0].b == false);
}

TEST_CASE("output group logicals complete the group") {
    Circuit c = Circuit::parse("QUBITS 3\nM Z0\nTICK\nM X1\n");
    OutcomeAnalysis a = compute_outcome_code(c);
    CHECK(a.group.generators.size() == 2);
    CHECK(a.group.logicals.size() == 1);
    for (const auto &[x, z] : a.group.logicals) {
        CHECK(commutator(x, z) == 1);
        for (const auto &g : a.group.generators) {
            CHECK(commutator(g.proj, x) == 0);
            CHECK(commutator(g.proj, z) == 0);
        }
    }
    CHECK(a.group.contains_projectively(Pauli::parse(3, "Z0")));
    CHECK(!a.group.contains_projectively(Pauli::parse(3, "Z1")));
    CHECK(a.group.syndrome(Pauli::parse(3, "X0")) == bits("10"));

    // no measurements: trivial group, n logical pairs
    Circuit idle = Circuit::parse("QUBITS 2\nH 0\n");
    OutcomeAnalysis b = compute_outcome_code(idle);
    CHECK(b.group.generators.empty());
    CHECK(b.group.logicals.size() == 2);
    CHECK(b.code.m == 0);
    CHECK(b.code.dimension() == 0);
}

TEST_CASE("checks are independent with distinct leading bits") {
    Circuit c = Circuit::parse(
        "QUBITS 2\nM Z0\nM Z1\nTICK\nM Z0\nM Z1\nTICK\nM Z0*Z1\n");
    OutcomeAnalysis a = compute_outcome_code(c);
    CHECK(a.code.checks.size() == 3);
    std::vector<BitVec> us;
    for (const auto &ch : a.code.checks) us.push_back(ch.u);
    CHECK(gf2::rank(us) == us.size());
    CHECK(a.code.dimension() == 2);
}

TEST_CASE("json export") {
    Circuit c = Circuit::parse("QUBITS 1\nM Z0\nTICK\nM Z0\n");
    std::string j = outcome_analysis_json(compute_outcome_code(c));
    CHECK(j.find("\"m\": 2") != std::string::npos);
    CHECK(j.find("\"k\": 1") != std::string::npos);
    CHECK(j.find("\"u\": \"11\"") != std::string::npos);
    CHECK(j.find("+Z0") != std::string::npos);
}
