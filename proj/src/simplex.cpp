#include "kamrfp/simplex.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kamrfp {

namespace {

using Entry = std::pair<int, Rat>;

struct SparseRow {
    std::vector<Entry> e;  // sorted by column index

    const Rat* find(int col) const {
        auto it = std::lower_bound(e.begin(), e.end(), col,
                                   [](const Entry& a, int c) { return a.first < c; });
        return (it != e.end() && it->first == col) ? &it->second : nullptr;
    }
};

class Tableau {
public:
    explicit Tableau(const LinearProgram& lp);
    LPOutcome run();

private:
    int num_structural_;
    int first_artificial_;
    int total_cols_;
    std::vector<SparseRow> rows_;
    std::vector<Rat> rhs_;
    std::vector<int> basis_;
    std::vector<bool> active_;
    std::vector<std::vector<int>> col_rows_;  // lazy index: rows that may hit a column
    std::vector<unsigned> stamp_;
    unsigned token_ = 0;
    std::vector<Rat> cost_;  // reduced costs of the current phase
    Rat zval_;
    const LinearProgram& lp_;
    std::vector<Entry> scratch_;

    const std::vector<int>& clean_column(int col);
    void pivot(int prow, int ecol, const std::vector<int>& col_list);
    /// Runs Bland iterations; returns false on Unbounded (phase 2 only).
    /// In phase 1 stops as soon as the artificial sum reaches zero.
    bool iterate(bool phase1);
    void drive_out_artificials();
    void install_phase2_costs();
};

Tableau::Tableau(const LinearProgram& lp) : lp_(lp) {
    num_structural_ = lp.num_vars;

    // Collect rows: user constraints plus upper-bound rows, rhs made >= 0.
    struct Raw {
        std::vector<Entry> coeffs;
        Relation rel;
        Rat rhs;
    };
    std::vector<Raw> raw;
    raw.reserve(lp.rows.size() + lp.upper_bounds.size());
    for (const auto& row : lp.rows) {
        Raw r{{}, row.rel, row.rhs};
        std::vector<Entry> c(row.coeffs);
        std::sort(c.begin(), c.end(),
                  [](const Entry& a, const Entry& b) { return a.first < b.first; });
        for (auto& [j, v] : c) {
            if (j < 0 || j >= num_structural_) {
                throw std::invalid_argument("constraint references variable " +
                                            std::to_string(j) + " out of range");
            }
            if (!r.coeffs.empty() && r.coeffs.back().first == j) {
                r.coeffs.back().second += v;
                if (r.coeffs.back().second == 0) r.coeffs.pop_back();
            } else if (v != 0) {
                r.coeffs.push_back({j, std::move(v)});
            }
        }
        raw.push_back(std::move(r));
    }
    for (std::size_t j = 0; j < lp.upper_bounds.size(); ++j) {
        if (lp.upper_bounds[j]) {
            raw.push_back(Raw{{{static_cast<int>(j), Rat(1)}}, Relation::LessEq,
                              *lp.upper_bounds[j]});
        }
    }
    for (auto& r : raw) {
        if (r.rhs < 0) {
            r.rhs = -r.rhs;
            for (auto& [j, v] : r.coeffs) v = -v;
            if (r.rel == Relation::LessEq) r.rel = Relation::GreaterEq;
            else if (r.rel == Relation::GreaterEq) r.rel = Relation::LessEq;
        }
    }

    // Column layout: structural | slack/surplus | artificial.
    int num_slack = 0, num_art = 0;
    for (const auto& r : raw) {
        if (r.rel != Relation::Eq) ++num_slack;
        if (r.rel != Relation::LessEq) ++num_art;
    }
    first_artificial_ = num_structural_ + num_slack;
    total_cols_ = first_artificial_ + num_art;

    const int nrows = static_cast<int>(raw.size());
    rows_.resize(nrows);
    rhs_.resize(nrows);
    basis_.resize(nrows);
    active_.assign(nrows, true);
    col_rows_.assign(total_cols_, {});
    stamp_.assign(nrows, 0);
    cost_.assign(total_cols_, Rat(0));
    zval_ = 0;

    int next_slack = num_structural_;
    int next_art = first_artificial_;
    for (int i = 0; i < nrows; ++i) {
        Raw& r = raw[i];
        rows_[i].e = std::move(r.coeffs);
        rhs_[i] = std::move(r.rhs);
        switch (r.rel) {
            case Relation::LessEq:
                rows_[i].e.push_back({next_slack, Rat(1)});
                basis_[i] = next_slack++;
                break;
            case Relation::GreaterEq:
                rows_[i].e.push_back({next_slack++, Rat(-1)});
                rows_[i].e.push_back({next_art, Rat(1)});
                basis_[i] = next_art++;
                break;
            case Relation::Eq:
                rows_[i].e.push_back({next_art, Rat(1)});
                basis_[i] = next_art++;
                break;
        }
        for (const auto& [j, v] : rows_[i].e) col_rows_[j].push_back(i);
    }

    // Phase-1 reduced costs: maximize minus the artificial sum. Canonical
    // form w.r.t. the all-slack/artificial start: cbar_j = sum of a_ij over
    // artificial-basic rows, zero on the artificial columns themselves.
    for (int i = 0; i < nrows; ++i) {
        if (basis_[i] >= first_artificial_) {
            for (const auto& [j, v] : rows_[i].e) cost_[j] += v;
            zval_ -= rhs_[i];
        }
    }
    for (int j = first_artificial_; j < total_cols_; ++j) cost_[j] = 0;
}

const std::vector<int>& Tableau::clean_column(int col) {
    auto& list = col_rows_[col];
    ++token_;
    std::size_t keep = 0;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const int r = list[i];
        if (stamp_[r] == token_) continue;
        stamp_[r] = token_;
        if (active_[r] && rows_[r].find(col)) list[keep++] = r;
    }
    list.resize(keep);
    return list;
}

void Tableau::pivot(int prow, int ecol, const std::vector<int>& col_list) {
    SparseRow& prowref = rows_[prow];
    const Rat pv = *prowref.find(ecol);
    if (pv != 1) {
        for (auto& [j, v] : prowref.e) v /= pv;
        rhs_[prow] /= pv;
    }
    for (const int r : col_list) {
        if (r == prow) continue;
        const Rat* ap = rows_[r].find(ecol);
        if (!ap || *ap == 0) continue;
        const Rat factor = *ap;
        // rows_[r] -= factor * rows_[prow], registering fill in the column index.
        scratch_.clear();
        const auto& a = rows_[r].e;
        const auto& b = prowref.e;
        scratch_.reserve(a.size() + b.size());
        std::size_t ia = 0, ib = 0;
        while (ia < a.size() || ib < b.size()) {
            if (ib == b.size() || (ia < a.size() && a[ia].first < b[ib].first)) {
                scratch_.push_back(a[ia++]);
            } else if (ia == a.size() || b[ib].first < a[ia].first) {
                Rat nv = -factor * b[ib].second;
                if (nv != 0) {
                    col_rows_[b[ib].first].push_back(r);
                    scratch_.push_back({b[ib].first, std::move(nv)});
                }
                ++ib;
            } else {
                Rat nv = a[ia].second - factor * b[ib].second;
                if (nv != 0) scratch_.push_back({a[ia].first, std::move(nv)});
                ++ia;
                ++ib;
            }
        }
        rows_[r].e.swap(scratch_);
        rhs_[r] -= factor * rhs_[prow];
    }
    if (cost_[ecol] != 0) {
        const Rat f = cost_[ecol];
        for (const auto& [j, v] : prowref.e) cost_[j] -= f * v;
        zval_ += f * rhs_[prow];
    }
    basis_[prow] = ecol;
}

bool Tableau::iterate(bool phase1) {
    const int col_limit = phase1 ? total_cols_ : first_artificial_;
    for (;;) {
        if (phase1 && zval_ == 0) return true;
        int ecol = -1;
        for (int j = 0; j < col_limit; ++j) {
            if (cost_[j] > 0) {
                ecol = j;
                break;
            }
        }
        if (ecol < 0) return true;  // optimal for this phase
        const auto& col_list = clean_column(ecol);
        int prow = -1;
        Rat best_ratio;
        for (const int r : col_list) {
            const Rat& a = *rows_[r].find(ecol);
            if (a <= 0) continue;
            Rat ratio = rhs_[r] / a;
            if (prow < 0 || ratio < best_ratio ||
                (ratio == best_ratio && basis_[r] < basis_[prow])) {
                prow = r;
                best_ratio = std::move(ratio);
            }
        }
        if (prow < 0) {
            if (phase1) throw std::logic_error("phase-1 objective cannot be unbounded");
            return false;  // Unbounded
        }
        pivot(prow, ecol, col_list);
    }
}

void Tableau::drive_out_artificials() {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (!active_[i] || basis_[i] < first_artificial_) continue;
        // Basic artificial sits at zero; replace it by any structural/slack
        // column of the row (a degenerate pivot), else the row is redundant.
        int ecol = -1;
        for (const auto& [j, v] : rows_[i].e) {
            if (j < first_artificial_ && v != 0) {
                ecol = j;
                break;
            }
        }
        if (ecol < 0) {
            active_[i] = false;
            continue;
        }
        pivot(static_cast<int>(i), ecol, clean_column(ecol));
    }
}

void Tableau::install_phase2_costs() {
    std::fill(cost_.begin(), cost_.end(), Rat(0));
    for (int j = 0; j < num_structural_; ++j) cost_[j] = lp_.objective[j];
    zval_ = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (!active_[i]) continue;
        const Rat f = cost_[basis_[i]];
        if (f == 0) continue;
        zval_ += f * rhs_[i];
        for (const auto& [j, v] : rows_[i].e) cost_[j] -= f * v;
    }
}

LPOutcome Tableau::run() {
    iterate(/*phase1=*/true);
    if (zval_ < 0) return {LPStatus::Infeasible, {}, Rat(0)};
    drive_out_artificials();
    install_phase2_costs();
    if (!iterate(/*phase1=*/false)) return {LPStatus::Unbounded, {}, Rat(0)};

    LPOutcome out;
    out.status = LPStatus::Optimal;
    out.values.assign(num_structural_, Rat(0));
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (active_[i] && basis_[i] < num_structural_) out.values[basis_[i]] = rhs_[i];
    }
    out.objective = 0;
    for (int j = 0; j < num_structural_; ++j) out.objective += lp_.objective[j] * out.values[j];
    return out;
}

}  // namespace

LPOutcome solve_lp(const LinearProgram& lp) {
    if (static_cast<int>(lp.objective.size()) != lp.num_vars) {
        throw std::invalid_argument("objective size does not match variable count");
    }
    if (!lp.upper_bounds.empty() &&
        static_cast<int>(lp.upper_bounds.size()) != lp.num_vars) {
        throw std::invalid_argument("upper_bounds size does not match variable count");
    }
    return Tableau(lp).run();
}

std::string export_lp_text(const LinearProgram& lp) {
    auto name = [&](int j) {
        return (j < static_cast<int>(lp.var_names.size()) && !lp.var_names[j].empty())
                   ? lp.var_names[j]
                   : "x" + std::to_string(j);
    };
    std::ostringstream out;
    out << "max:";
    for (int j = 0; j < lp.num_vars; ++j) {
        if (lp.objective[j] != 0) {
            out << ' ' << rat_to_string(lp.objective[j]) << '*' << name(j);
        }
    }
    out << '\n';
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        const auto& row = lp.rows[i];
        out << "row" << i << ':';
        for (const auto& [j, v] : row.coeffs) {
            out << ' ' << rat_to_string(v) << '*' << name(j);
        }
        const char* rel = row.rel == Relation::LessEq  ? "<="
                          : row.rel == Relation::Eq    ? "="
                                                       : ">=";
        out << ' ' << rel << ' ' << rat_to_string(row.rhs) << '\n';
    }
    for (std::size_t j = 0; j < lp.upper_bounds.size(); ++j) {
        if (lp.upper_bounds[j]) {
            out << "bound: " << name(static_cast<int>(j)) << " <= "
                << rat_to_string(*lp.upper_bounds[j]) << '\n';
        }
    }
    return out.str();
}

}  // namespace kamrfp
