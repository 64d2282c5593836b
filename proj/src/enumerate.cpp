#include "ranklab/enumerate.hpp"

#include <cstdlib>
#include <map>
#include <mutex>

#include "ranklab/qcomb.hpp"

namespace ranklab {

long long default_budget() {
    static long long budget = [] {
        if (const char* env = std::getenv("RANKLAB_BUDGET")) {
            long long v = std::atoll(env);
            if (v > 0) return v;
        }
        return 1LL << 24;
    }();
    return budget;
}

static void check_budget(const Int& size, long long budget, const char* what) {
    if (size > budget) {
        throw BudgetExceeded(std::string(what) + " enumeration of " + size.str() +
                             " items exceeds budget " + std::to_string(budget));
    }
}

void for_each_matrix(const Field& f, int m, int n,
                     const std::function<void(const MatrixGF&)>& fn, long long budget) {
    check_budget(ipow(f->q(), static_cast<long>(m) * n), budget, "matrix space");
    MatrixGF buf(f, m, n);
    std::vector<uint16_t>& e = buf.data();
    const int q = f->q();
    const size_t total = e.size();
    for (;;) {
        fn(buf);
        // Odometer increment on the entry string, least significant last.
        size_t i = total;
        while (i > 0) {
            --i;
            if (++e[i] < q) break;
            e[i] = 0;
            if (i == 0) return;
        }
        if (total == 0) return;
    }
}

void for_each_full_rank_matrix(const Field& f, int m, int u,
                               const std::function<void(const MatrixGF&)>& fn,
                               long long budget) {
    if (u == 0) {
        MatrixGF empty(f, m, 0);
        fn(empty);
        return;
    }
    for_each_matrix(
        f, m, u,
        [&](const MatrixGF& F) {
            if (mat_rank(F) == u) fn(F);
        },
        budget);
}

void for_each_matrix_with_row_space(const Subspace& U, int m,
                                    const std::function<void(const MatrixGF&)>& fn,
                                    long long budget) {
    const int u = U.dim();
    if (u > m) return;  // no m-row matrix can have a row space of dimension > m
    MatrixGF B = U.basis_matrix();
    for_each_full_rank_matrix(
        U.field(), m, u, [&](const MatrixGF& F) { fn(F * B); }, budget);
}

void for_each_subspace(const Field& f, int n, int r,
                       const std::function<void(const Subspace&)>& fn, long long budget) {
    if (r < 0 || r > n) return;
    check_budget(qcomb::gaussian(f->q(), n, r), budget, "subspace");
    if (r == 0) {
        fn(Subspace::zero(f, n));
        return;
    }
    const int q = f->q();

    std::vector<int> piv(r);
    for (int i = 0; i < r; ++i) piv[i] = i;

    for (;;) {
        // Free positions: (i, j) with j > piv[i] and j not a pivot column.
        std::vector<bool> is_piv(n, false);
        for (int c : piv) is_piv[c] = true;
        std::vector<std::pair<int, int>> free_pos;
        for (int i = 0; i < r; ++i) {
            for (int j = piv[i] + 1; j < n; ++j) {
                if (!is_piv[j]) free_pos.emplace_back(i, j);
            }
        }

        std::vector<uint16_t> base(static_cast<size_t>(r) * n, 0);
        for (int i = 0; i < r; ++i) base[static_cast<size_t>(i) * n + piv[i]] = 1;

        std::vector<uint16_t> vals(free_pos.size(), 0);
        for (;;) {
            std::vector<uint16_t> rows = base;
            for (size_t k = 0; k < free_pos.size(); ++k) {
                rows[static_cast<size_t>(free_pos[k].first) * n + free_pos[k].second] = vals[k];
            }
            fn(Subspace::from_rref_unchecked(f, n, std::move(rows), piv));
            size_t i = vals.size();
            bool carry = true;
            while (i > 0) {
                --i;
                if (++vals[i] < q) {
                    carry = false;
                    break;
                }
                vals[i] = 0;
            }
            if (carry) break;
        }

        // Next pivot-column combination in lexicographic order.
        int i = r - 1;
        while (i >= 0 && piv[i] == n - r + i) --i;
        if (i < 0) break;
        ++piv[i];
        for (int j = i + 1; j < r; ++j) piv[j] = piv[j - 1] + 1;
    }
}

const std::vector<Subspace>& all_subspaces(const Field& f, int n, long long budget) {
    static std::map<std::pair<int, int>, std::vector<Subspace>> cache;
    static std::mutex cache_mutex;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto key = std::make_pair(f->q(), n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    Int total = 0;
    for (int r = 0; r <= n; ++r) total += qcomb::gaussian(f->q(), n, r);
    check_budget(total, budget, "projective space");

    std::vector<Subspace> out;
    for (int r = 0; r <= n; ++r) {
        for_each_subspace(f, n, r, [&](const Subspace& S) { out.push_back(S); }, budget);
    }
    return cache.emplace(key, std::move(out)).first->second;
}

}  // namespace ranklab
