#ifndef SPARSECUT_SIMPLEX_HPP
#define SPARSECUT_SIMPLEX_HPP

#include <optional>
#include <vector>

#include "sparsecut/errors.hpp"
#include "sparsecut/rational.hpp"

namespace sparsecut {

// Equality-form LP: minimize c.x subject to A x = b, x >= 0. All data exact
// rationals; rows may be redundant (phase 1 drops them).
struct LinearProgram {
    int num_vars = 0;
    std::vector<Rat> objective;

    struct Row {
        std::vector<std::pair<int, Rat>> terms;
        Rat rhs = 0;
    };
    std::vector<Row> rows;

    int add_var(const Rat& cost = Rat(0)) {
        objective.push_back(cost);
        return num_vars++;
    }
};

struct LpSolution {
    Rat objective;
    std::vector<Rat> x;
    std::vector<int> basis; // reusable as a warm start for a new objective
};

// Dense two-phase primal simplex over exact rationals. Dantzig pricing with
// a permanent switch to Bland's rule after a degeneracy stall, so
// termination is guaranteed.
class SimplexSolver {
public:
    explicit SimplexSolver(const LinearProgram& lp)
        : n_(lp.num_vars), m_((int)lp.rows.size()) {
        a_.assign(m_, std::vector<Rat>(n_, Rat(0)));
        b_.assign(m_, Rat(0));
        for (int i = 0; i < m_; ++i) {
            for (const auto& [j, v] : lp.rows[i].terms) a_[i][j] += v;
            b_[i] = lp.rows[i].rhs;
        }
    }

    LpSolution solve(const std::vector<Rat>& cost,
                     const std::vector<int>* warm_basis = nullptr) {
        if ((int)cost.size() != n_) throw InvalidParams("objective size mismatch");
        if (warm_basis)
            build_from_basis(*warm_basis);
        else
            phase_one();
        run(cost, /*phase1=*/false);

        LpSolution sol;
        sol.x.assign(n_, Rat(0));
        for (int i = 0; i < rows_; ++i)
            if (basis_[i] < n_) sol.x[basis_[i]] = tab_[i][cols_];
        sol.objective = 0;
        for (int j = 0; j < n_; ++j) sol.objective += cost[j] * sol.x[j];
        sol.basis.assign(basis_.begin(), basis_.begin() + rows_);
        return sol;
    }

private:
    int n_, m_;
    std::vector<std::vector<Rat>> a_;
    std::vector<Rat> b_;

    // Tableau state: rows_ live rows, cols_ columns (structural + maybe
    // artificial), column cols_ holds the rhs, row rows_ holds reduced costs.
    std::vector<std::vector<Rat>> tab_;
    std::vector<int> basis_;
    int rows_ = 0, cols_ = 0;

    void pivot(int r, int c) {
        Rat p = tab_[r][c];
        for (int j = 0; j <= cols_; ++j) tab_[r][j] /= p;
        for (int i = 0; i <= rows_; ++i) {
            if (i == r || tab_[i][c] == 0) continue;
            Rat f = tab_[i][c];
            for (int j = 0; j <= cols_; ++j) tab_[i][j] -= f * tab_[r][j];
        }
        basis_[r] = c;
    }

    // Pivots until the cost row (row rows_) is non-negative.
    void run_pivots() {
        int stall = 0;
        bool bland = false;
        while (true) {
            int enter = -1;
            if (!bland) {
                Rat best = 0;
                for (int j = 0; j < cols_; ++j)
                    if (tab_[rows_][j] < best) {
                        best = tab_[rows_][j];
                        enter = j;
                    }
            } else {
                for (int j = 0; j < cols_; ++j)
                    if (tab_[rows_][j] < 0) {
                        enter = j;
                        break;
                    }
            }
            if (enter < 0) return;

            int leave = -1;
            Rat best_ratio = 0;
            for (int i = 0; i < rows_; ++i) {
                if (tab_[i][enter] <= 0) continue;
                Rat ratio = tab_[i][cols_] / tab_[i][enter];
                if (leave < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave < 0) throw Unbounded("LP is unbounded below");
            if (best_ratio == 0) {
                if (++stall > 64) bland = true;
            } else {
                stall = 0;
            }
            pivot(leave, enter);
        }
    }

    void run(const std::vector<Rat>& cost, bool phase1) {
        // Reduced cost row: c - c_B B^-1 A.
        for (int j = 0; j <= cols_; ++j) tab_[rows_][j] = 0;
        for (int j = 0; j < std::min((int)cost.size(), cols_); ++j)
            tab_[rows_][j] = cost[j];
        for (int i = 0; i < rows_; ++i) {
            int bj = basis_[i];
            if (bj >= (int)cost.size()) continue;
            Rat cb = cost[bj];
            if (cb == 0) continue;
            for (int j = 0; j <= cols_; ++j) tab_[rows_][j] -= cb * tab_[i][j];
        }
        (void)phase1;
        run_pivots();
    }

    void phase_one() {
        rows_ = m_;
        cols_ = n_ + m_;
        tab_.assign(rows_ + 1, std::vector<Rat>(cols_ + 1, Rat(0)));
        basis_.assign(rows_, 0);
        for (int i = 0; i < m_; ++i) {
            int sign = (b_[i] < 0) ? -1 : 1;
            for (int j = 0; j < n_; ++j) tab_[i][j] = sign * a_[i][j];
            tab_[i][cols_] = sign * b_[i];
            tab_[i][n_ + i] = 1;
            basis_[i] = n_ + i;
        }
        std::vector<Rat> art_cost(cols_, Rat(0));
        for (int j = n_; j < cols_; ++j) art_cost[j] = 1;
        run(art_cost, /*phase1=*/true);

        Rat infeas = 0;
        for (int i = 0; i < rows_; ++i)
            if (basis_[i] >= n_) infeas += tab_[i][cols_];
        if (infeas != 0) throw Infeasible("LP has no feasible point");

        // Drive remaining artificials out; drop rows that are redundant.
        std::vector<int> keep;
        for (int i = 0; i < rows_; ++i) {
            if (basis_[i] < n_) {
                keep.push_back(i);
                continue;
            }
            int c = -1;
            for (int j = 0; j < n_; ++j)
                if (tab_[i][j] != 0) {
                    c = j;
                    break;
                }
            if (c >= 0) {
                pivot(i, c);
                keep.push_back(i);
            }
            // else: all-zero structural row, redundant constraint
        }
        // Compact: keep only surviving rows and structural columns.
        std::vector<std::vector<Rat>> nt;
        std::vector<int> nb;
        for (int i : keep) {
            std::vector<Rat> row(tab_[i].begin(), tab_[i].begin() + n_);
            row.push_back(tab_[i][cols_]);
            nt.push_back(std::move(row));
            nb.push_back(basis_[i]);
        }
        rows_ = (int)nt.size();
        cols_ = n_;
        nt.push_back(std::vector<Rat>(cols_ + 1, Rat(0)));
        tab_ = std::move(nt);
        basis_ = std::move(nb);
    }

    // Rebuilds the tableau for a known feasible basis by Gaussian
    // elimination on [A | b] with the basic columns as pivots.
    void build_from_basis(const std::vector<int>& warm) {
        rows_ = (int)warm.size();
        cols_ = n_;
        // The warm basis came from a prior solve on the same constraints, so
        // its rows correspond to the surviving (independent) constraints.
        // Re-derive them by eliminating over the full row set.
        std::vector<std::vector<Rat>> work(m_, std::vector<Rat>(n_ + 1, Rat(0)));
        for (int i = 0; i < m_; ++i) {
            for (int j = 0; j < n_; ++j) work[i][j] = a_[i][j];
            work[i][n_] = b_[i];
        }
        std::vector<int> pivot_rows;
        for (int c : warm) {
            int r = -1;
            for (int i = 0; i < m_; ++i) {
                bool used = false;
                for (int pr : pivot_rows)
                    if (pr == i) used = true;
                if (!used && work[i][c] != 0) {
                    r = i;
                    break;
                }
            }
            if (r < 0) throw InvalidParams("warm basis is singular");
            Rat p = work[r][c];
            for (int j = 0; j <= n_; ++j) work[r][j] /= p;
            for (int i = 0; i < m_; ++i) {
                if (i == r || work[i][c] == 0) continue;
                Rat f = work[i][c];
                for (int j = 0; j <= n_; ++j) work[i][j] -= f * work[r][j];
            }
            pivot_rows.push_back(r);
        }
        tab_.assign(rows_ + 1, std::vector<Rat>(cols_ + 1, Rat(0)));
        basis_.assign(rows_, 0);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < n_; ++j) tab_[i][j] = work[pivot_rows[i]][j];
            tab_[i][cols_] = work[pivot_rows[i]][n_];
            basis_[i] = warm[i];
            if (tab_[i][cols_] < 0) throw InvalidParams("warm basis is infeasible");
        }
    }
};

inline LpSolution solve_lp(const LinearProgram& lp) {
    SimplexSolver solver(lp);
    return solver.solve(lp.objective);
}

} // namespace sparsecut

#endif
