#pragma once

#include "kamrfp/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kamrfp {

enum class Relation { LessEq, Eq, GreaterEq };

/// Maximization LP over variables x >= 0 with optional upper bounds.
struct LinearProgram {
    struct Row {
        std::vector<std::pair<int, Rat>> coeffs;  // (variable index, coefficient)
        Relation rel = Relation::LessEq;
        Rat rhs;
    };

    int num_vars = 0;
    std::vector<Rat> objective;                     // size num_vars, maximize
    std::vector<Row> rows;
    std::vector<std::optional<Rat>> upper_bounds;   // per variable, may be empty
    std::vector<std::string> var_names;             // optional, for export/debug
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPOutcome {
    LPStatus status = LPStatus::Infeasible;
    std::vector<Rat> values;  // size num_vars when Optimal
    Rat objective;
};

/// Two-phase simplex with exact rational pivots and Bland's rule (lowest
/// eligible index for both entering and leaving variables), so it terminates
/// on every input and is deterministic.
LPOutcome solve_lp(const LinearProgram& lp);

/// One line per constraint: "row<i>: c1*x_a + c2*x_b REL rhs".
std::string export_lp_text(const LinearProgram& lp);

}  // namespace kamrfp
