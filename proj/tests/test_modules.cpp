#include <doctest.h>

#include "cohomforge/modules.hpp"

using namespace cohomforge;

namespace {

IntMat from_rows(std::vector<std::vector<i64>> rows) {
    IntMat M(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    for (int i = 0; i < M.rows; ++i)
        for (int j = 0; j < M.cols; ++j) M.at(i, j) = rows[i][j];
    return M;
}

}  // namespace

TEST_CASE("presentation canonicalization") {
    // Z^2 / <(2,0),(0,3)> = Z/6
    auto P = AbelianGroupPresentation::from_relations(2, from_rows({{2, 0}, {0, 3}}));
    CHECK(P.invariant_factors() == std::vector<i64>{6});
    CHECK(P.free_rank() == 0);
    CHECK(P.element_count() == i64{6});

    auto C = AbelianGroupPresentation::cyclic(5);
    CHECK(C.invariant_factors() == std::vector<i64>{5});

    auto F = AbelianGroupPresentation::free_group(2);
    CHECK(F.free_rank() == 2);
    CHECK_FALSE(F.element_count().has_value());

    auto M = AbelianGroupPresentation::from_moduli({2, 4});
    CHECK(M.element_count() == i64{8});
}

TEST_CASE("reduce / equal / element enumeration") {
    auto P = AbelianGroupPresentation::from_relations(2, from_rows({{2, 0}, {0, 3}}));
    std::vector<i64> a{1, 1}, b{3, 4};  // differ by (2,3) = relation combination
    CHECK(P.equal(a, b));
    CHECK(P.is_zero(std::vector<i64>{2, 3}));
    CHECK_FALSE(P.is_zero(a));

    // reduce and lift round-trip through the canonical coordinates
    auto y = P.reduce(a);
    auto back = P.lift_canonical(y);
    CHECK(P.equal(a, back));

    // enumeration covers all 6 elements exactly once
    std::vector<std::vector<i64>> seen;
    for (i64 i = 0; i < 6; ++i) {
        auto e = P.element_by_index(i);
        CHECK(P.index_of(e) == i);
        for (auto& s : seen) CHECK_FALSE(P.equal(s, e));
        seen.push_back(e);
    }
    CHECK(P.element_by_index(0) == std::vector<i64>(2, 0));

    auto F = AbelianGroupPresentation::free_group(1);
    CHECK_THROWS_AS(F.element_by_index(0), Error);
}

TEST_CASE("power presentation matches blockwise structure") {
    auto P = AbelianGroupPresentation::from_moduli({2, 0});
    auto P3 = AbelianGroupPresentation::power(P, 3);
    CHECK(P3.gens == 6);
    CHECK(P3.free_rank() == 3);
    CHECK(P3.invariant_factors() == std::vector<i64>{2, 2, 2});
    // coordinates reduce per block
    std::vector<i64> x{3, 5, 2, 0, 1, -1};
    auto y = P3.reduce(x);
    CHECK(y[0] == 1);  // first block's torsion coordinate
}

TEST_CASE("module validation catches non-actions") {
    FiniteGroup z2 = make_standard(StandardKind::Cyclic, 2);
    auto carrier = AbelianGroupPresentation::free_group(2);
    IntMat id = IntMat::identity(2);
    IntMat bad = from_rows({{1, 1}, {0, 1}});  // bad^2 != id
    CHECK_THROWS_AS(make_module(z2, carrier, {id, bad}), Error);

    IntMat swap = from_rows({{0, 1}, {1, 0}});
    auto A = make_module(z2, carrier, {id, swap});
    CHECK(A->act(1, std::vector<i64>{3, 7}) == std::vector<i64>{7, 3});
    CHECK_FALSE(A->trivial_on({0, 1}));
    CHECK(A->trivial_on({0}));
}

TEST_CASE("trivial module and restriction") {
    FiniteGroup s3 = make_standard(StandardKind::Symmetric, 3);
    auto A = trivial_module(s3, AbelianGroupPresentation::cyclic(4));
    CHECK(A->trivial_on({0, 1, 2, 3, 4, 5}));

    Subgroup a3 = commutator_subgroup(s3, make_subgroup(s3, {0, 1, 2, 3, 4, 5}));
    FiniteGroup a3g = subgroup_group(a3);
    auto R = restrict_module(*A, a3, a3g);
    CHECK(R->group.order == 3);
    CHECK(R->carrier.invariant_factors() == std::vector<i64>{4});
}

TEST_CASE("quotient module requires trivial kernel action") {
    FiniteGroup z4 = make_standard(StandardKind::Cyclic, 4);
    Subgroup N = subgroup_closure(z4, {2});
    QuotientData qd = quotient(z4, N);

    // sign action of Z/4 on Z through the quotient: 1 acts by -1, kernel acts trivially
    auto carrier = AbelianGroupPresentation::free_group(1);
    IntMat id = IntMat::identity(1);
    IntMat neg = from_rows({{-1}});
    auto A = make_module(z4, carrier, {id, neg, id, neg});
    auto Q = quotient_module(*A, qd);
    CHECK(Q->group.order == 2);
    CHECK(Q->act(1, std::vector<i64>{5}) == std::vector<i64>{-5});

    // genuine kernel action is rejected: rotation by 90 degrees on Z^2
    auto carrier2 = AbelianGroupPresentation::free_group(2);
    IntMat rot(2, 2);
    rot.at(0, 1) = -1;
    rot.at(1, 0) = 1;
    IntMat rot2 = mat_mul(rot, rot);
    IntMat rot3 = mat_mul(rot2, rot);
    auto B = make_module(z4, carrier2, {IntMat::identity(2), rot, rot2, rot3});
    CHECK_THROWS_AS(quotient_module(*B, qd), Error);
}

TEST_CASE("subquotient Z^2 / 2Z^2") {
    auto ambient = AbelianGroupPresentation::free_group(2);
    IntMat Z = IntMat::identity(2);
    IntMat B(2, 2);
    B.at(0, 0) = 2;
    B.at(1, 1) = 2;
    Subquotient sq = subquotient(Z, B, ambient);
    CHECK(sq.group.invariant_factors() == std::vector<i64>{2, 2});
    CHECK(sq.group.element_count() == i64{4});
    // reduce is a homomorphism killing B
    CHECK(sq.group.is_zero(sq.reduce(std::vector<i64>{2, 0})));
    CHECK_FALSE(sq.group.is_zero(sq.reduce(std::vector<i64>{1, 0})));
}

TEST_CASE("subquotient rejects elements outside the numerator") {
    auto ambient = AbelianGroupPresentation::free_group(2);
    IntMat Z(2, 1);
    Z.at(0, 0) = 1;  // span of e0
    IntMat B(2, 0);
    Subquotient sq = subquotient(Z, B, ambient);
    CHECK(sq.group.free_rank() == 1);
    CHECK_THROWS_AS(sq.reduce(std::vector<i64>{0, 1}), Error);
}

TEST_CASE("invariants of the swap action") {
    FiniteGroup z2 = make_standard(StandardKind::Cyclic, 2);
    auto carrier = AbelianGroupPresentation::free_group(2);
    IntMat id = IntMat::identity(2);
    IntMat swap(2, 2);
    swap.at(0, 1) = 1;
    swap.at(1, 0) = 1;
    auto A = make_module(z2, carrier, {id, swap});

    Subquotient inv = invariant_subquotient(*A, {0, 1});
    // fixed lattice is the diagonal: free of rank 1
    CHECK(inv.group.free_rank() == 1);
    CHECK(inv.group.invariant_factors().empty());

    // induced module over the trivial group acting trivially
    FiniteGroup triv = make_standard(StandardKind::Cyclic, 1);
    InvariantModule im = invariant_module(*A, {0, 1}, triv, {0});
    CHECK(im.mod->carrier.free_rank() == 1);
}

TEST_CASE("abelianized kernels") {
    FiniteGroup s3 = make_standard(StandardKind::Symmetric, 3);
    Subgroup whole = make_subgroup(s3, {0, 1, 2, 3, 4, 5});
    AbelianizedKernel ab = abelianization_module(s3, whole);
    CHECK(ab.pres.invariant_factors() == std::vector<i64>{2});

    FiniteGroup s4 = make_standard(StandardKind::Symmetric, 4);
    Subgroup a4 = commutator_subgroup(s4, make_subgroup(s4, [&] {
                                         std::vector<int> all(24);
                                         for (int i = 0; i < 24; ++i) all[i] = i;
                                         return all;
                                     }()));
    CHECK(a4.size() == 12);
    AbelianizedKernel ab4 = abelianization_module(s4, a4);
    CHECK(ab4.pres.invariant_factors() == std::vector<i64>{3});

    FiniteGroup q8 = make_standard(StandardKind::Quaternion8, 8);
    Subgroup q8full = make_subgroup(q8, {0, 1, 2, 3, 4, 5, 6, 7});
    AbelianizedKernel abq = abelianization_module(q8, q8full);
    CHECK(abq.pres.invariant_factors() == std::vector<i64>{2, 2});

    // product in the abelianization: e_g + e_h = e_{gh}
    auto sum = abq.coords_of(2);
    auto other = abq.coords_of(3);
    for (size_t i = 0; i < sum.size(); ++i) sum[i] += other[i];
    CHECK(abq.pres.equal(sum, abq.coords_of(q8.mul(2, 3))));
}

TEST_CASE("abelianization as a quotient-group module") {
    // center of the Heisenberg group: G/N acts trivially by conjugation on Z(G)
    FiniteGroup h3 = make_standard(StandardKind::Heisenberg, 3);
    Subgroup N = make_subgroup(h3, center(h3));
    QuotientData qd = quotient(h3, N);
    AbelianizedKernel ab = abelianization_module(h3, N);
    CHECK(ab.pres.invariant_factors() == std::vector<i64>{3});
    auto Q = abelianization_as_quotient_module(ab, qd);
    CHECK(Q->group.order == 9);
    std::vector<int> all9(9);
    for (int i = 0; i < 9; ++i) all9[i] = i;
    CHECK(Q->trivial_on(all9));
}

TEST_CASE("kernel homs and their validation") {
    FiniteGroup z4 = make_standard(StandardKind::Cyclic, 4);
    Subgroup whole = make_subgroup(z4, {0, 1, 2, 3});
    auto A = trivial_module(z4, AbelianGroupPresentation::cyclic(4));

    // n -> n mod 4: the identity hom
    KernelHom f = kernel_hom_from_values(whole, A, {{0}, {1}, {2}, {3}});
    CHECK(f.eval(3) == std::vector<i64>{3});
    CHECK(f.is_equivariant(z4));
    CHECK_FALSE(f.is_zero());

    // not a homomorphism
    CHECK_THROWS_AS(kernel_hom_from_values(whole, A, {{0}, {1}, {1}, {1}}), Error);
}

TEST_CASE("hom group counts follow gcds") {
    FiniteGroup z4 = make_standard(StandardKind::Cyclic, 4);
    Subgroup whole = make_subgroup(z4, {0, 1, 2, 3});

    auto A6 = trivial_module(z4, AbelianGroupPresentation::cyclic(6));
    HomGroupResult h = hom_group(z4, whole, A6);
    CHECK(h.homs.size() == 2);  // gcd(4,6)
    for (char inv : h.invariant) CHECK(inv);

    auto A8 = trivial_module(z4, AbelianGroupPresentation::cyclic(8));
    CHECK(hom_group(z4, whole, A8).homs.size() == 4);

    auto AZ = trivial_module(z4, AbelianGroupPresentation::free_group(1));
    CHECK(hom_group(z4, whole, AZ).homs.size() == 1);  // only the zero hom

    // nonabelian kernel: homs factor through N/N' = Z/2 x Z/2
    FiniteGroup q8 = make_standard(StandardKind::Quaternion8, 8);
    Subgroup q8full = make_subgroup(q8, {0, 1, 2, 3, 4, 5, 6, 7});
    auto A2 = trivial_module(q8, AbelianGroupPresentation::cyclic(2));
    CHECK(hom_group(q8, q8full, A2).homs.size() == 4);

    // free target with a free kernel side is impossible here (N finite), but a
    // free *source of infinitely many homs* can't happen; infinite target with
    // torsion kernel is fine and was covered above.
}

TEST_CASE("equivariance detection under conjugation") {
    // N = A3 inside S3, A = Z/3 trivial S3-module. Hom(A3, Z/3) has 3 elements
    // but conjugation by a transposition inverts A3, so only 0 is equivariant.
    FiniteGroup s3 = make_standard(StandardKind::Symmetric, 3);
    Subgroup a3 = commutator_subgroup(s3, make_subgroup(s3, {0, 1, 2, 3, 4, 5}));
    auto A = trivial_module(s3, AbelianGroupPresentation::cyclic(3));
    HomGroupResult h = hom_group(s3, a3, A);
    CHECK(h.homs.size() == 3);
    int inv_count = 0;
    for (size_t i = 0; i < h.homs.size(); ++i)
        if (h.invariant[i]) {
            ++inv_count;
            CHECK(h.homs[i].is_zero());
        }
    CHECK(inv_count == 1);
}
