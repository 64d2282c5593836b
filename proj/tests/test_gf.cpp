#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "ranklab/enumerate.hpp"
#include "ranklab/qcomb.hpp"

using namespace ranklab;

namespace {

MatrixGF from_rows(const Field& f, std::vector<std::vector<int>> rows) {
    MatrixGF A(f, static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i) {
        for (size_t j = 0; j < rows[i].size(); ++j) {
            A.set(static_cast<int>(i), static_cast<int>(j), static_cast<uint16_t>(rows[i][j]));
        }
    }
    return A;
}

MatrixGF random_matrix(const Field& f, int m, int n, std::mt19937_64& rng) {
    MatrixGF A(f, m, n);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            A.set(i, j, static_cast<uint16_t>(rng() % f->q()));
        }
    }
    return A;
}

MatrixGF random_nonsingular(const Field& f, int n, std::mt19937_64& rng) {
    for (;;) {
        MatrixGF G = random_matrix(f, n, n, rng);
        if (mat_rank(G) == n) return G;
    }
}

}  // namespace

TEST_CASE("field construction") {
    Field f2 = field_create(2, 1);
    CHECK(f2->q() == 2);
    CHECK(f2->reduction().empty());

    Field f4 = field_create(2, 2);
    CHECK(f4->q() == 4);
    // x^2 + x + 1 is the only irreducible quadratic over GF(2).
    CHECK(f4->reduction() == std::vector<int>{1, 1, 1});

    CHECK_THROWS_AS(field_create(4, 1), NonPrimeCharacteristic);
    CHECK_THROWS_AS(field_create(2, 17), UnsupportedOrder);
    CHECK(field_from_order(9)->p() == 3);
    CHECK(field_from_order(9)->e() == 2);
    CHECK_THROWS_AS(field_from_order(12), NonPrimeCharacteristic);
}

TEST_CASE("field axioms hold exhaustively for small orders") {
    for (long q : {2L, 3L, 4L, 5L, 8L, 9L, 16L}) {
        Field f = field_from_order(q);
        for (int a = 0; a < q; ++a) {
            CHECK(f->add(static_cast<uint16_t>(a), 0) == a);
            CHECK(f->mul(static_cast<uint16_t>(a), 1) == a);
            CHECK(f->add(static_cast<uint16_t>(a), f->neg(static_cast<uint16_t>(a))) == 0);
            if (a != 0) {
                CHECK(f->mul(static_cast<uint16_t>(a), f->inv(static_cast<uint16_t>(a))) == 1);
            }
            for (int b = 0; b < q; ++b) {
                CHECK(f->add(a, b) == f->add(b, a));
                CHECK(f->mul(a, b) == f->mul(b, a));
                for (int c = 0; c < q; ++c) {
                    CHECK(f->add(f->add(a, b), c) == f->add(a, f->add(b, c)));
                    CHECK(f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c)));
                    CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
                }
            }
        }
    }
}

TEST_CASE("matrix rank basics") {
    Field f = field_create(2, 1);
    CHECK(mat_rank(MatrixGF(f, 3, 3)) == 0);
    CHECK(mat_rank(MatrixGF::identity(f, 3)) == 3);
    CHECK(mat_rank(from_rows(f, {{1, 1}, {1, 1}})) == 1);
    CHECK_THROWS_AS(rank_distance(MatrixGF(f, 2, 2), MatrixGF(f, 2, 3)), DimensionMismatch);
}

TEST_CASE("rank is invariant under transposition (exhaustive 2x3 over GF(2))") {
    Field f = field_create(2, 1);
    for_each_matrix(f, 2, 3, [&](const MatrixGF& A) {
        CHECK(mat_rank(A) == mat_rank(A.transposed()));
    });
}

TEST_CASE("row space canonicity") {
    Field f = field_create(2, 1);
    CHECK(row_space(MatrixGF(f, 2, 3)).dim() == 0);

    Subspace S = row_space(from_rows(f, {{1, 0}, {1, 0}}));
    CHECK(S.dim() == 1);
    CHECK(S.basis_at(0, 0) == 1);
    CHECK(S.basis_at(0, 1) == 0);

    std::mt19937_64 rng(7);
    for (long q : {2L, 3L, 4L}) {
        Field fq = field_from_order(q);
        for (int m = 1; m <= 4; ++m) {
            for (int n = 1; n <= 4; ++n) {
                for (int rep = 0; rep < 10; ++rep) {
                    MatrixGF A = random_matrix(fq, m, n, rng);
                    MatrixGF G = random_nonsingular(fq, m, rng);
                    CHECK(row_space(A) == row_space(G * A));
                    CHECK(row_space(A).dim() == mat_rank(A));
                }
            }
        }
    }
}

TEST_CASE("sum, intersection, and the modular law") {
    Field f = field_create(2, 1);
    Subspace e1 = unit_span(f, 4, {0});
    Subspace e2 = unit_span(f, 4, {1});
    auto [su, in] = subspace_sum_intersect(e1, e2);
    CHECK(su.dim() == 2);
    CHECK(in.dim() == 0);

    auto [su2, in2] = subspace_sum_intersect(e1, e1);
    CHECK(su2 == e1);
    CHECK(in2 == e1);

    Subspace U = unit_span(f, 4, {0, 1});
    Subspace V = unit_span(f, 4, {1, 2});
    auto [su3, in3] = subspace_sum_intersect(U, V);
    CHECK(su3.dim() == 3);
    CHECK(in3 == unit_span(f, 4, {1}));

    CHECK_THROWS_AS(subspace_sum_intersect(e1, unit_span(f, 3, {0})), AmbientMismatch);

    for (long q : {2L, 3L}) {
        Field fq = field_from_order(q);
        for (int n = 1; n <= 4; ++n) {
            const auto& all = all_subspaces(fq, n);
            for (const Subspace& A : all) {
                for (const Subspace& B : all) {
                    auto [s, i] = subspace_sum_intersect(A, B);
                    CHECK(s.dim() + i.dim() == A.dim() + B.dim());
                    auto [ds, di] = subspace_distances(A, B);
                    CHECK(ds == s.dim() - i.dim());
                    CHECK(di == std::max(A.dim(), B.dim()) - i.dim());
                }
            }
        }
    }
}

TEST_CASE("equal dimensions make the subspace distance twice the injection distance") {
    for (long q : {2L, 3L}) {
        Field f = field_from_order(q);
        const auto& all = all_subspaces(f, 4);
        for (const Subspace& U : all) {
            for (const Subspace& V : all) {
                if (U.dim() != V.dim()) continue;
                auto [ds, di] = subspace_distances(U, V);
                CHECK(ds == 2 * di);
            }
        }
    }
}

TEST_CASE("subspace distance examples") {
    Field f = field_create(2, 1);
    Subspace e1 = unit_span(f, 4, {0});
    Subspace e2 = unit_span(f, 4, {1});
    CHECK(subspace_distances(e1, e2) == std::pair<int, int>{2, 1});
    CHECK(subspace_distances(e1, e1) == std::pair<int, int>{0, 0});
    CHECK(subspace_distances(unit_span(f, 4, {0, 1}), unit_span(f, 4, {1, 2})) ==
          std::pair<int, int>{2, 1});
}

TEST_CASE("both metrics satisfy the metric axioms on E(2,4)") {
    Field f = field_create(2, 1);
    const auto& all = all_subspaces(f, 4);
    const size_t k = all.size();
    std::vector<std::vector<int>> ds(k, std::vector<int>(k));
    std::vector<std::vector<int>> di(k, std::vector<int>(k));
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j < k; ++j) {
            auto [s, inj] = subspace_distances(all[i], all[j]);
            ds[i][j] = s;
            di[i][j] = inj;
        }
    }
    for (size_t i = 0; i < k; ++i) {
        CHECK(ds[i][i] == 0);
        for (size_t j = 0; j < k; ++j) {
            CHECK(ds[i][j] == ds[j][i]);
            CHECK(di[i][j] == di[j][i]);
            CHECK((ds[i][j] == 0) == (i == j));
            for (size_t l = 0; l < k; ++l) {
                CHECK(ds[i][l] <= ds[i][j] + ds[j][l]);
                CHECK(di[i][l] <= di[i][j] + di[j][l]);
            }
        }
    }
}

TEST_CASE("lifting is a scaled isometry") {
    Field f = field_create(2, 1);
    MatrixGF zero(f, 2, 2);
    Subspace lifted = lift(zero);
    CHECK(lifted == unit_span(f, 4, {0, 1}));

    MatrixGF eye = MatrixGF::identity(f, 2);
    CHECK(subspace_distance(lift(zero), lift(eye)) == 4);
    CHECK(injection_distance(lift(zero), lift(eye)) == 2);

    // Exhaustive over all pairs of 2x2 binary matrices.
    std::vector<MatrixGF> mats;
    for_each_matrix(f, 2, 2, [&](const MatrixGF& A) { mats.push_back(A); });
    for (const MatrixGF& A : mats) {
        for (const MatrixGF& B : mats) {
            CHECK(subspace_distance(lift(A), lift(B)) == 2 * rank_distance(A, B));
            CHECK(injection_distance(lift(A), lift(B)) == rank_distance(A, B));
        }
    }

    // Injectivity spot check on random distinct pairs.
    std::mt19937_64 rng(11);
    Field f3 = field_create(3, 1);
    for (int rep = 0; rep < 100; ++rep) {
        MatrixGF A = random_matrix(f3, 2, 3, rng);
        MatrixGF B = random_matrix(f3, 2, 3, rng);
        if (A == B) continue;
        CHECK(lift(A) != lift(B));
    }
}

TEST_CASE("subspace membership") {
    Field f = field_create(2, 1);
    Subspace U = unit_span(f, 4, {0, 2});
    CHECK(U.contains({1, 0, 1, 0}));
    CHECK(!U.contains({0, 1, 0, 0}));
    CHECK(U.contains({0, 0, 0, 0}));
}

TEST_CASE("subspace enumeration matches an independent brute force") {
    Field f = field_create(2, 1);
    // Independent oracle: collect distinct row spaces of all 2x4 matrices.
    std::set<Subspace> oracle;
    for_each_matrix(f, 2, 4, [&](const MatrixGF& A) {
        if (mat_rank(A) == 2) oracle.insert(row_space(A));
    });
    CHECK(oracle.size() == 35);

    std::set<Subspace> enumerated;
    long long count = 0;
    for_each_subspace(f, 4, 2, [&](const Subspace& S) {
        ++count;
        CHECK(S.dim() == 2);
        enumerated.insert(S);
    });
    CHECK(count == 35);  // each element exactly once
    CHECK(enumerated == oracle);
    CHECK(Int(count) == qcomb::gaussian(2, 4, 2));
}

TEST_CASE("matrix class enumerations") {
    Field f = field_create(2, 1);

    long long total = 0;
    for_each_matrix(f, 2, 2, [&](const MatrixGF&) { ++total; });
    CHECK(total == 16);

    Subspace U = row_space(from_rows(f, {{0, 1}}));
    std::set<MatrixGF> cls;
    for_each_matrix_with_row_space(U, 2, [&](const MatrixGF& E) {
        CHECK(row_space(E) == U);
        cls.insert(E);
    });
    CHECK(cls.size() == 3);

    long long full = 0;
    for_each_full_rank_matrix(f, 3, 2, [&](const MatrixGF& F) {
        CHECK(mat_rank(F) == 2);
        ++full;
    });
    CHECK(full == 42);
    CHECK(Int(full) == qcomb::alpha(2, 3, 2));

    CHECK_THROWS_AS(for_each_matrix(f, 5, 6, [](const MatrixGF&) {}, 1000), BudgetExceeded);
}

TEST_CASE("projective space cardinality") {
    for (long q : {2L, 3L}) {
        Field f = field_from_order(q);
        for (int n = 1; n <= 4; ++n) {
            Int expected = 0;
            for (int r = 0; r <= n; ++r) expected += qcomb::gaussian(q, n, r);
            CHECK(Int(all_subspaces(f, n).size()) == expected);
        }
    }
}

TEST_CASE("matrix text format round trip") {
    Field f = field_create(3, 1);
    MatrixGF A = from_rows(f, {{0, 1, 2}, {2, 2, 0}});
    std::istringstream in(A.to_text());
    MatrixGF B = MatrixGF::from_text(f, 2, 3, in);
    CHECK(A == B);
}
