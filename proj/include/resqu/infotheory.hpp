#pragma once

// Entropies over the 2x2 joint law of the human action X and the system
// indication Y, and the responsibility ratio H(X|Y)/H(X).
//
// All entropies are in bits. Cells below kZeroMass count as exact zeros.

#include <array>

#include "resqu/types.hpp"

namespace resqu::info {

inline constexpr double kZeroMass = 1e-15;
inline constexpr double kSumTolerance = 1e-12;

/// Joint distribution p(x, y), x = human action (reject, accept),
/// y = indication (red, green). Construction validates the invariants.
class JointPmf2x2 {
public:
    using Cells = std::array<std::array<double, 2>, 2>;  // [x][y]

    /// Throws Error(validation) on negative cells or a total off 1 by more
    /// than kSumTolerance.
    explicit JointPmf2x2(const Cells& cells);

    /// Plug-in estimate from counts. Throws Error(validation) on an empty table.
    static JointPmf2x2 from_counts(const std::array<std::array<long long, 2>, 2>& counts);

    double operator()(Response x, Indication y) const noexcept { return cells_[index(x)][index(y)]; }
    double cell(int x, int y) const noexcept { return cells_[x][y]; }
    double px(Response x) const noexcept { return cells_[index(x)][0] + cells_[index(x)][1]; }
    double py(Indication y) const noexcept { return cells_[0][index(y)] + cells_[1][index(y)]; }
    const Cells& cells() const noexcept { return cells_; }

    /// Swaps the two indication columns.
    JointPmf2x2 swapped_indications() const;

private:
    Cells cells_;
};

struct EntropyBundle {
    double h_x = 0.0;
    double h_y = 0.0;
    double h_xy = 0.0;
    double h_x_given_y = 0.0;
    double h_y_given_x = 0.0;
};

/// -p log2 p - (1-p) log2 (1-p). Throws Error(domain) outside [0,1].
double binary_entropy(double p);

EntropyBundle entropy_bundle(const JointPmf2x2& joint);

/// Mutual information I(X;Y) in bits, summed directly over the cells so
/// weak dependence is not lost to cancellation.
double mutual_information(const JointPmf2x2& joint);

/// True when every cell equals the product of its marginals within kSumTolerance.
bool is_independent(const JointPmf2x2& joint) noexcept;

/// True when each indication column carries at most one nonzero cell,
/// i.e. the indication fully determines the action.
bool is_determined_by_indication(const JointPmf2x2& joint) noexcept;

/// H(X|Y)/H(X) in [0,1]. Exactly 1 for independent joints and exactly 0
/// when Y determines X. Throws Error(degenerate_human_distribution) when
/// H(X) = 0. Below H(X) ~ 1e-9 bits the ratio is numerically fragile.
double responsibility(const JointPmf2x2& joint);

}  // namespace resqu::info
